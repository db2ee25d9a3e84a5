fn main() {
    std::process::exit(anglekit::cli::main())
}
