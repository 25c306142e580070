fn main() {
    std::process::exit(monad_slice::cli::main_with_args(std::env::args_os()));
}
