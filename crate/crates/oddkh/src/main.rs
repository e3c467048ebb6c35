fn main() {
    std::process::exit(oddkh::cli::main());
}
