use clap::Parser;

fn main() {
    let cli = finlat::cli::Cli::parse();
    std::process::exit(finlat::cli::run(cli));
}
