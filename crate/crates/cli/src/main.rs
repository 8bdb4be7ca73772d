use clap::Parser;

fn main() {
    let cli = jetlab::Cli::parse();
    std::process::exit(jetlab::run(&cli));
}
