fn main() {
    std::process::exit(mckay_chambers::cli::main_with_args(std::env::args_os()));
}
