use clap::Parser;

fn main() -> std::process::ExitCode {
    let cli = flexrx_cli::Cli::parse();
    flexrx_cli::run(&cli)
}
