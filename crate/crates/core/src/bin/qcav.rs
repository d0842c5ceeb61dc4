use clap::Parser;

fn main() {
    std::process::exit(qcav::cli::main_with(qcav::cli::Cli::parse()));
}
