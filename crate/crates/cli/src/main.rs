use ameforge_cli::{run, Cli, ExitStatus};
use clap::Parser;

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli);
    if outcome.status == ExitStatus::Success && !cli.json_to_stdout() {
        println!("{}", outcome.summary);
    } else {
        eprintln!("{}", outcome.summary);
    }
    std::process::exit(outcome.code());
}
