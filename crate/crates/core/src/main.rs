fn main() {
    std::process::exit(sqfrob::cli::run(std::env::args_os()));
}
