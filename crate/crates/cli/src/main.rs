fn main() {
    std::process::exit(graphnim_cli::run_cli(std::env::args_os()));
}
