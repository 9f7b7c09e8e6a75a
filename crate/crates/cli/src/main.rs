fn main() {
    std::process::exit(filiform_cli::run(std::env::args_os()));
}
