use clap::Parser;

fn main() -> std::process::ExitCode {
    nijenhuis::cli::run(nijenhuis::cli::Cli::parse())
}
