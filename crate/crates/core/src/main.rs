fn main() {
    std::process::exit(relwell::cli::run_args(std::env::args_os()));
}
