fn main() {
    std::process::exit(cyclolat::cli::run());
}
