use clap::Parser;

fn main() {
    let cli = satset::Cli::parse();
    std::process::exit(satset::run(cli));
}
