fn main() {
    std::process::exit(rigidkit::cli::run());
}
