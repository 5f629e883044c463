fn main() {
    std::process::exit(thzq::sweep::cli::main_with_args(std::env::args_os()));
}
