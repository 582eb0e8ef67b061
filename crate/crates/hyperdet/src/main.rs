fn main() {
    std::process::exit(hyperdet::cli::run());
}
