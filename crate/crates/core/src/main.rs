fn main() {
    std::process::exit(splitdrift::cli::main_with_args(std::env::args_os()));
}
