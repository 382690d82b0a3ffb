fn main() {
    std::process::exit(knill2d::cli::main_with_args(std::env::args_os()));
}
