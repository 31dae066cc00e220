fn main() {
    std::process::exit(b3lab::cli::main());
}
