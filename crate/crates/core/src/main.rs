fn main() {
    std::process::exit(symmpow::cli::run(std::env::args_os()));
}
