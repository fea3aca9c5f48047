fn main() {
    std::process::exit(tnd_core::cli::main_with_args(std::env::args_os()));
}
