fn main() {
    std::process::exit(modlat::cli::run(std::env::args_os()));
}
