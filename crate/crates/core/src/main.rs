fn main() {
    std::process::exit(randmono::cli::run(std::env::args_os()));
}
