fn main() {
    std::process::exit(zeta_sing::cli::run(std::env::args_os()));
}
