//! Smith normal form of small dense integer matrices.
//!
//! The reduction runs in `i64` with checked arithmetic. If any step would
//! overflow, the whole reduction restarts on the original matrix in `BigInt`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    /// Panics if the rows have different lengths.
    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        IntMatrix {
            rows: rows.len(),
            cols,
            data: rows.concat(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> Self {
        let k = entries.len();
        let mut m = IntMatrix::zeros(k, k);
        for (i, &d) in entries.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    /// Exact product, `None` on `i64` overflow.
    pub fn checked_mul(&self, other: &IntMatrix) -> Option<IntMatrix> {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).checked_add(a.checked_mul(other.get(k, j))?)?;
                    out.set(i, j, v);
                }
            }
        }
        Some(out)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<i64> = (0..self.cols).map(|c| self.get(r, c)).collect();
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

/// Rank over the rationals and the invariant factors `d1 | d2 | ... | d_rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    pub factors: Vec<BigUint>,
}

impl SmithForm {
    /// Invariant factors greater than one.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.factors
            .iter()
            .filter(|d| !d.is_one())
            .cloned()
            .collect()
    }

    pub fn factors_u64(&self) -> Vec<u64> {
        self.factors
            .iter()
            .map(|d| u64::try_from(d).expect("factor fits in u64"))
            .collect()
    }
}

struct Overflow;

trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn cmp_abs(&self, other: &Self) -> Ordering;
    /// Truncated quotient.
    fn quot(&self, d: &Self) -> Self;
    /// `self - q * b`.
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow>;
    fn add(&self, b: &Self) -> Result<Self, Overflow>;
    fn divides(&self, x: &Self) -> bool;
    fn to_biguint(&self) -> BigUint;
}

impl Scalar for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.unsigned_abs().cmp(&other.unsigned_abs())
    }
    fn quot(&self, d: &Self) -> Self {
        // |self| >= |d| > 0 at call sites; i64::MIN / -1 is excluded by checked_div
        self.checked_div(*d).unwrap_or(0)
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        q.checked_mul(*b)
            .and_then(|p| self.checked_sub(p))
            .ok_or(Overflow)
    }
    fn add(&self, b: &Self) -> Result<Self, Overflow> {
        self.checked_add(*b).ok_or(Overflow)
    }
    fn divides(&self, x: &Self) -> bool {
        x.checked_rem(*self).is_none_or(|r| r == 0)
    }
    fn to_biguint(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cmp_abs(&self, other: &Self) -> Ordering {
        self.magnitude().cmp(other.magnitude())
    }
    fn quot(&self, d: &Self) -> Self {
        self / d
    }
    fn sub_mul(&self, q: &Self, b: &Self) -> Result<Self, Overflow> {
        Ok(self - q * b)
    }
    fn add(&self, b: &Self) -> Result<Self, Overflow> {
        Ok(self + b)
    }
    fn divides(&self, x: &Self) -> bool {
        x.is_multiple_of(self)
    }
    fn to_biguint(&self) -> BigUint {
        self.abs().to_biguint().expect("absolute value")
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Scalar> Work<T> {
    #[inline]
    fn at(&self, r: usize, c: usize) -> &T {
        &self.a[r * self.cols + c]
    }

    fn swap_rows(&mut self, r1: usize, r2: usize) {
        if r1 != r2 {
            for c in 0..self.cols {
                self.a.swap(r1 * self.cols + c, r2 * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, c1: usize, c2: usize) {
        if c1 != c2 {
            for r in 0..self.rows {
                self.a.swap(r * self.cols + c1, r * self.cols + c2);
            }
        }
    }

    /// row[dst] -= q * row[src], from column `from` on.
    fn row_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        for c in from..self.cols {
            let s = self.a[src * self.cols + c].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.a[dst * self.cols + c];
            *d = d.sub_mul(q, &s)?;
        }
        Ok(())
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &T, from: usize) -> Result<(), Overflow> {
        for r in from..self.rows {
            let s = self.a[r * self.cols + src].clone();
            if s.is_zero() {
                continue;
            }
            let d = &mut self.a[r * self.cols + dst];
            *d = d.sub_mul(q, &s)?;
        }
        Ok(())
    }

    /// Smallest nonzero |entry| in the block starting at (t, t); ties go to the
    /// lowest row, then the lowest column.
    fn min_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let x = self.at(r, c);
                if x.is_zero() {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((br, bc)) => x.cmp_abs(self.at(br, bc)) == Ordering::Less,
                };
                if better {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    fn reduce(mut self) -> Result<SmithForm, Overflow> {
        let mut t = 0;
        let limit = self.rows.min(self.cols);
        while t < limit {
            let Some((pr, pc)) = self.min_pivot(t) else {
                break;
            };
            self.swap_rows(t, pr);
            self.swap_cols(t, pc);
            loop {
                let p = self.at(t, t).clone();
                for r in t + 1..self.rows {
                    if !self.at(r, t).is_zero() {
                        let q = self.at(r, t).quot(&p);
                        if !q.is_zero() {
                            self.row_sub(r, t, &q, t)?;
                        }
                    }
                }
                for c in t + 1..self.cols {
                    if !self.at(t, c).is_zero() {
                        let q = self.at(t, c).quot(&p);
                        if !q.is_zero() {
                            self.col_sub(c, t, &q, t)?;
                        }
                    }
                }
                // a nonzero remainder in row or column t becomes the next pivot
                let mut smaller: Option<(usize, usize)> = None;
                for r in t + 1..self.rows {
                    if !self.at(r, t).is_zero() {
                        smaller = Some((r, t));
                        break;
                    }
                }
                if smaller.is_none() {
                    for c in t + 1..self.cols {
                        if !self.at(t, c).is_zero() {
                            smaller = Some((t, c));
                            break;
                        }
                    }
                }
                if let Some((r, c)) = smaller {
                    self.swap_rows(t, r);
                    self.swap_cols(t, c);
                    continue;
                }
                // pivot row and column are clear; enforce divisibility on the rest
                let mut offender = None;
                'scan: for r in t + 1..self.rows {
                    for c in t + 1..self.cols {
                        if !p.divides(self.at(r, c)) {
                            offender = Some(r);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(r) => {
                        for c in t..self.cols {
                            let v = self.at(t, c).add(self.at(r, c))?;
                            self.a[t * self.cols + c] = v;
                        }
                    }
                    None => break,
                }
            }
            t += 1;
        }
        let factors = (0..t).map(|i| self.at(i, i).to_biguint()).collect();
        Ok(SmithForm { rank: t, factors })
    }
}

/// Rank and invariant factors of `m`.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let fast = Work {
        rows: m.rows,
        cols: m.cols,
        a: m.data.clone(),
    };
    match fast.reduce() {
        Ok(f) => f,
        Err(Overflow) => smith_normal_form_big(m),
    }
}

/// Same as [`smith_normal_form`] but always in arbitrary precision.
pub fn smith_normal_form_big(m: &IntMatrix) -> SmithForm {
    let big = Work {
        rows: m.rows,
        cols: m.cols,
        a: m.data.iter().map(|&x| BigInt::from(x)).collect(),
    };
    match big.reduce() {
        Ok(f) => f,
        Err(Overflow) => unreachable!("BigInt arithmetic does not overflow"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    /// gcd of all k x k minors, k = 1.., via cofactor expansion on small matrices.
    fn determinantal_divisors(m: &IntMatrix) -> (usize, Vec<u64>) {
        fn det(rows: &[usize], cols: &[usize], m: &IntMatrix) -> i128 {
            if rows.len() == 1 {
                return m.get(rows[0], cols[0]) as i128;
            }
            let mut total = 0i128;
            for (j, &c) in cols.iter().enumerate() {
                let a = m.get(rows[0], c) as i128;
                if a == 0 {
                    continue;
                }
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                total += sign * a * det(&rows[1..], &rest, m);
            }
            total
        }
        fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
            (0u32..1 << n)
                .filter(|s| s.count_ones() as usize == k)
                .map(|s| (0..n).filter(|i| s >> i & 1 == 1).collect())
                .collect()
        }
        let mut divisors = vec![1i128];
        for k in 1..=m.rows().min(m.cols()) {
            let mut g = 0i128;
            for rs in subsets(m.rows(), k) {
                for cs in subsets(m.cols(), k) {
                    g = g.gcd(&det(&rs, &cs, m));
                }
            }
            if g == 0 {
                break;
            }
            divisors.push(g);
        }
        let rank = divisors.len() - 1;
        let factors = (1..=rank)
            .map(|k| (divisors[k] / divisors[k - 1]) as u64)
            .collect();
        (rank, factors)
    }

    #[test]
    fn zero_matrix() {
        let f = smith_normal_form(&IntMatrix::zeros(3, 4));
        assert_eq!(f.rank, 0);
        assert!(f.factors.is_empty());
        assert_eq!(smith_normal_form(&IntMatrix::zeros(0, 5)).rank, 0);
    }

    #[test]
    fn diag_two_three() {
        let f = smith_normal_form(&IntMatrix::diagonal(&[2, 3]));
        assert_eq!(f.rank, 2);
        assert_eq!(f.factors_u64(), vec![1, 6]);
        assert_eq!(f.torsion(), vec![BigUint::from(6u8)]);
    }

    #[test]
    fn known_forms() {
        let m = IntMatrix::from_rows(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(smith_normal_form(&m).factors_u64(), vec![2, 6, 12]);
        let m = IntMatrix::diagonal(&[4, 6, 0]);
        let f = smith_normal_form(&m);
        assert_eq!((f.rank, f.factors_u64()), (2, vec![2, 12]));
    }

    #[test]
    fn overflow_escalates_to_bigint() {
        let big = i64::MAX / 3;
        let m = IntMatrix::from_rows(&[vec![big, big - 1], vec![big - 7, big + 5]]);
        let f = smith_normal_form(&m);
        assert_eq!(f, smith_normal_form_big(&m));
        assert_eq!(f.rank, 2);
        let m = IntMatrix::from_rows(&[vec![i64::MIN, 0], vec![0, i64::MIN]]);
        let f = smith_normal_form(&m);
        assert_eq!(f.factors, vec![BigUint::from(1u64 << 63); 2]);
    }

    #[test]
    fn agrees_with_determinantal_divisors() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(42);
        for _ in 0..1500 {
            let r = rng.gen_range(1..=5);
            let c = rng.gen_range(1..=5);
            let sparse = rng.gen_bool(0.5);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| {
                            if sparse && rng.gen_bool(0.6) {
                                0
                            } else {
                                rng.gen_range(-9..=9)
                            }
                        })
                        .collect()
                })
                .collect();
            let m = IntMatrix::from_rows(&rows);
            let f = smith_normal_form(&m);
            let (rank, factors) = determinantal_divisors(&m);
            assert_eq!(f.rank, rank, "{m:?}");
            assert_eq!(f.factors_u64(), factors, "{m:?}");
        }
    }

    #[test]
    fn divisibility_chain() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(9);
        for _ in 0..500 {
            let r = rng.gen_range(1..=8);
            let c = rng.gen_range(1..=8);
            let rows: Vec<Vec<i64>> = (0..r)
                .map(|_| {
                    (0..c)
                        .map(|_| 2 * rng.gen_range(-5..=5) * rng.gen_range(1..=3))
                        .collect()
                })
                .collect();
            let f = smith_normal_form(&IntMatrix::from_rows(&rows));
            for w in f.factors.windows(2) {
                assert!((&w[1] % &w[0]).is_zero());
            }
            assert!(f.factors.iter().all(|d| !d.is_zero()));
        }
    }
}
