fn main() {
    std::process::exit(renorm::cli::run());
}
