use clap::Parser;

fn main() {
    let cli = trilie_cli::Cli::parse();
    std::process::exit(trilie_cli::run::execute(&cli));
}
