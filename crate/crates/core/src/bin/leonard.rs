fn main() {
    std::process::exit(leonard::cli::main_with_args(std::env::args_os()));
}
