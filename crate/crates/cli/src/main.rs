fn main() {
    std::process::exit(facto_cli::main_with(std::env::args_os()));
}
