fn main() { std::process::exit(twinsgd::cli::run(std::env::args_os())) }
