fn main() {
    std::process::exit(meritlab::cli::main_from_env());
}
