//! graph6 text encoding (short header form, `n <= 62`; this crate caps at 16).
//!
//! Header byte `n + 63`, then the upper triangle in column-major order
//! `x(0,1) x(0,2) x(1,2) x(0,3) ...`, packed big-endian into 6-bit groups,
//! each group offset by 63 and the last one zero-padded.

use crate::graph::{Graph, MAX_VERTICES};
use std::io::{self, BufRead, Write};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("header byte {0:#04x} is not a short-form vertex count")]
    BadHeader(u8),
    #[error("graph6 line declares {0} vertices, at most {MAX_VERTICES} are supported")]
    TooLarge(usize),
    #[error("payload has {found} bytes, expected {expected} for {n} vertices")]
    WrongLength {
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {byte:#04x} at offset {offset} is outside the graph6 range 63..=126")]
    BadByte { byte: u8, offset: usize },
    #[error("nonzero padding bits in the last payload byte")]
    DirtyPadding,
}

fn payload_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::with_capacity(1 + payload_len(n));
    out.push((n as u8 + 63) as char);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
    out
}

/// Decodes one graph6 line. Trailing `\n` / `\r\n` is tolerated, an optional
/// `>>graph6<<` prefix is not.
pub fn from_graph6(line: &str) -> Result<Graph, Graph6Error> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    let (&head, payload) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    if !(63..=125).contains(&head) {
        return Err(Graph6Error::BadHeader(head));
    }
    let n = (head - 63) as usize;
    if n > MAX_VERTICES {
        return Err(Graph6Error::TooLarge(n));
    }
    let expected = payload_len(n);
    if payload.len() != expected {
        return Err(Graph6Error::WrongLength {
            n,
            expected,
            found: payload.len(),
        });
    }
    for (offset, &byte) in payload.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadByte {
                byte,
                offset: offset + 1,
            });
        }
    }
    let mut g = Graph::empty(n).expect("n checked above");
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j).expect("indices in range");
            }
            k += 1;
        }
    }
    if k % 6 != 0 {
        let last = payload[k / 6] - 63;
        if last & ((1 << (6 - k % 6)) - 1) != 0 {
            return Err(Graph6Error::DirtyPadding);
        }
    }
    Ok(g)
}

#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error("line {line}: {source}")]
    Parse { line: usize, source: Graph6Error },
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads a graph6 file, skipping blank lines.
pub fn read_graphs<R: BufRead>(reader: R) -> Result<Vec<Graph>, ReadError> {
    let mut out = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        out.push(from_graph6(&line).map_err(|source| ReadError::Parse {
            line: i + 1,
            source,
        })?);
    }
    Ok(out)
}

pub fn write_graphs<'a, W, I>(mut writer: W, graphs: I) -> io::Result<()>
where
    W: Write,
    I: IntoIterator<Item = &'a Graph>,
{
    for g in graphs {
        writeln!(writer, "{}", to_graph6(g))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, [(0, 1)]).unwrap();
        assert_eq!(to_graph6(&g), "A_");
        assert_eq!(from_graph6("A_").unwrap(), g);
        assert_eq!(from_graph6("A_\n").unwrap(), g);
    }

    #[test]
    fn header_only() {
        let one = Graph::empty(1).unwrap();
        assert_eq!(to_graph6(&one), "@");
        assert_eq!(from_graph6("@").unwrap(), one);
        assert_eq!(from_graph6("?").unwrap().order(), 0);
        assert_eq!(from_graph6("A?").unwrap(), Graph::empty(2).unwrap());
        assert_eq!(
            from_graph6("B"),
            Err(Graph6Error::WrongLength {
                n: 3,
                expected: 1,
                found: 0
            })
        );
    }

    #[test]
    fn edgeless_five() {
        assert_eq!(to_graph6(&Graph::empty(5).unwrap()), "D??");
    }

    #[test]
    fn known_strings() {
        // the 5-vertex example used by petgraph: edges a-c, a-e, b-d, d-e
        let g = Graph::from_edges(5, [(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g), "DQc");
        assert_eq!(to_graph6(&Graph::complete(4).unwrap()), "C~");
    }

    #[test]
    fn rejects_malformed() {
        assert_eq!(from_graph6(""), Err(Graph6Error::Empty));
        assert_eq!(from_graph6("~"), Err(Graph6Error::BadHeader(b'~')));
        assert_eq!(from_graph6(" "), Err(Graph6Error::BadHeader(b' ')));
        assert_eq!(from_graph6("R"), Err(Graph6Error::TooLarge(19)));
        assert!(matches!(
            from_graph6("D?"),
            Err(Graph6Error::WrongLength { .. })
        ));
        assert!(matches!(
            from_graph6("D???"),
            Err(Graph6Error::WrongLength { .. })
        ));
        assert_eq!(
            from_graph6("D? "),
            Err(Graph6Error::BadByte {
                byte: b' ',
                offset: 2
            })
        );
        // n = 2 has one data bit; any of the five padding bits set is an error
        assert_eq!(from_graph6("A@"), Err(Graph6Error::DirtyPadding));
    }

    #[test]
    fn all_four_vertex_graphs_round_trip() {
        for bits in 0u32..64 {
            let mut g = Graph::empty(4).unwrap();
            let mut k = 0;
            for j in 1..4 {
                for i in 0..j {
                    if bits >> k & 1 == 1 {
                        g.add_edge(i, j).unwrap();
                    }
                    k += 1;
                }
            }
            assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
        }
    }

    #[test]
    fn file_round_trip() {
        let gs = vec![Graph::cycle(5).unwrap(), Graph::complete(7).unwrap()];
        let mut buf = Vec::new();
        write_graphs(&mut buf, &gs).unwrap();
        assert_eq!(String::from_utf8(buf.clone()).unwrap(), "Dhc\nF~~~w\n");
        let back = read_graphs(&buf[..]).unwrap();
        assert_eq!(back, gs);
        let err = read_graphs(&b"A_\nA@\n"[..]).unwrap_err();
        assert!(matches!(err, ReadError::Parse { line: 2, .. }));
    }

    pub(crate) fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (1..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let mut g = Graph::empty(n).unwrap();
                let mut k = 0;
                for j in 1..n {
                    for i in 0..j {
                        if bits[k] {
                            g.add_edge(i, j).unwrap();
                        }
                        k += 1;
                    }
                }
                g
            })
        })
    }

    proptest! {
        #[test]
        fn round_trip(g in arb_graph(16)) {
            let s = to_graph6(&g);
            prop_assert_eq!(s.len(), 1 + payload_len(g.order()));
            prop_assert_eq!(from_graph6(&s).unwrap(), g);
        }
    }
}
