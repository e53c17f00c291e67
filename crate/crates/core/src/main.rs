fn main() {
    std::process::exit(quickpick::cli::main_with_args(std::env::args_os()));
}
