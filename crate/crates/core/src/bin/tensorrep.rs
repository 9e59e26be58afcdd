fn main() {
    std::process::exit(tensorrep::cli::run(std::env::args_os()));
}
