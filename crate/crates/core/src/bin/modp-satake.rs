fn main() {
    std::process::exit(modp_satake::cli::run(std::env::args_os()));
}
