fn main() {
    std::process::exit(wittkit::cli::main());
}
