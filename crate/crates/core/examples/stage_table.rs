//! Run the filtering cascade for small n and print the count table.
//!
//!     cargo run --release --example stage_table -- 8 10

use flag_torsion::pipeline::{run_stage_table, PipelineStats, RunOptions};

fn main() {
    let mut args = std::env::args()
        .skip(1)
        .map(|s| s.parse::<usize>().expect("integer"));
    let lo = args.next().unwrap_or(8);
    let hi = args.next().unwrap_or(lo.max(9));
    let dir = std::env::temp_dir().join(format!("flagtor-example-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let opts = RunOptions {
        workers: std::thread::available_parallelism().map_or(1, |p| p.get()),
        ..RunOptions::default()
    };
    println!("{}", PipelineStats::TSV_HEADER);
    for n in lo..=hi {
        match run_stage_table(n, &dir, &opts) {
            Ok(stats) => println!("{}", stats.tsv_row()),
            Err(e) => eprintln!("n={n}: {e}"),
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
}
