fn main() {
    std::process::exit(qmargulis::cli::run());
}
