fn main() {
    std::process::exit(greenchain::cli::run(std::env::args_os()));
}
