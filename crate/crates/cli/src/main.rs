fn main() {
    std::process::exit(rescue_cli::cli::main_with_std());
}
