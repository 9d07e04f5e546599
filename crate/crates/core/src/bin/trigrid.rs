fn main() {
    std::process::exit(trigrid::cli::main_with_args(std::env::args_os()));
}
