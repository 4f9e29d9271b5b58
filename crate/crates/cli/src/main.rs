mod args;
mod data;
mod run;
mod svg;

use clap::Parser;

fn main() {
    let cli = args::Cli::parse();
    if let Err(err) = run::execute(cli) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}
