fn main() {
    std::process::exit(einstein_stability::cli::main_with_env());
}
