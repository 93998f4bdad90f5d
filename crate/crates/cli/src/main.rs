fn main() {
    std::process::exit(relroots_cli::run(std::env::args_os()));
}
