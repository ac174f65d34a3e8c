use clap::Parser;

fn main() {
    let cli = infperm::cli::Cli::parse();
    std::process::exit(infperm::cli::run(&cli));
}
