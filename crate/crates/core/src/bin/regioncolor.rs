fn main() {
    std::process::exit(regioncolor::cli::main_with_args(std::env::args_os()));
}
