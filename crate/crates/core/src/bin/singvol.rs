fn main() {
    std::process::exit(singvol::cli::run(std::env::args_os()));
}
