fn main() {
    std::process::exit(golodlab::cli::run_cli(std::env::args_os()));
}
