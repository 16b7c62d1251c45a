use clap::Parser;

fn main() {
    env_logger::init();
    let cli = geomcut::cli::Cli::parse();
    std::process::exit(geomcut::cli::run(cli));
}
