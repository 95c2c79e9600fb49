fn main() {
    std::process::exit(sepscope::cli::main_with_args(std::env::args_os()));
}
