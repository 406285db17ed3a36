use clap::Parser;

fn main() {
    let cli = quiver_bps::cli::Cli::parse();
    std::process::exit(quiver_bps::cli::run(cli));
}
