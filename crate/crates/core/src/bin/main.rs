fn main() {
    std::process::exit(sset_dybm::cli::main_with_args(std::env::args_os()));
}
