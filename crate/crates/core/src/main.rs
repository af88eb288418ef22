fn main() {
    std::process::exit(vermadiff::cli::main_with_args(std::env::args()));
}
