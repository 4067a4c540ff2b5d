fn main() {
    std::process::exit(quatrec::cli::main_with_args(std::env::args_os()));
}
