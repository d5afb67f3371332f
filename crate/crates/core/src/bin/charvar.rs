use clap::Parser;

fn main() {
    let cli = charvar::cli::Cli::parse();
    std::process::exit(charvar::cli::run(cli));
}
