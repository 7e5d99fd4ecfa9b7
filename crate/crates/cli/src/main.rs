fn main() {
    std::process::exit(klq_cli::run(std::env::args_os()));
}
