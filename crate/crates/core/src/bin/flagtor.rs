use clap::Parser;
use flag_torsion::cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let code = run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr());
    std::process::exit(code);
}
