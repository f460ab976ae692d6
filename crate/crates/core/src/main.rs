fn main() {
    std::process::exit(sphfun::cli::main_with_args(std::env::args_os()));
}
