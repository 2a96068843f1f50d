fn main() {
    std::process::exit(koebe_poly::cli::main_impl(std::env::args_os()));
}
