fn main() {
    std::process::exit(multiphoton::cli::main_with_args(std::env::args_os()));
}
