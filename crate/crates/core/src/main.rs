fn main() {
    std::process::exit(trivsrc::cli::run(std::env::args_os()));
}
