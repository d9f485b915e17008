fn main() {
    std::process::exit(relhyp::cli::main_with_args(std::env::args_os()));
}
