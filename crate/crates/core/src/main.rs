fn main() {
    std::process::exit(orlicz_maxima::cli::run(std::env::args_os()));
}
