fn main() {
    std::process::exit(tesc::cli::main());
}
