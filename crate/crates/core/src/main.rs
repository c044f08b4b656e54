fn main() {
    std::process::exit(holokit::cli::run(std::env::args_os()));
}
