fn main() {
    std::process::exit(reflexlab::cli::main_with_args(std::env::args_os()));
}
