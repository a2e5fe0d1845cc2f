fn main() {
    std::process::exit(piii_tau::cli::main_with_args(std::env::args_os()));
}
