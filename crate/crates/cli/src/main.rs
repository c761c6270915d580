use clap::Parser;

fn main() {
    let cli = pseudospec_cli::Cli::parse();
    if let Err(err) = pseudospec_cli::run(cli) {
        eprintln!("pseudospec: {}", err.message);
        std::process::exit(err.code);
    }
}
