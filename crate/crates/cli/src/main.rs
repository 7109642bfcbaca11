fn main() {
    std::process::exit(dualdeg_cli::run(std::env::args_os()));
}
