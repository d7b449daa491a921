fn main() {
    std::process::exit(betafull::cli::run(std::env::args_os()));
}
