fn main() {
    std::process::exit(schur_core::cli::main());
}
