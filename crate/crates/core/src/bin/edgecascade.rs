fn main() {
    std::process::exit(edgecascade::cli::run(std::env::args_os()));
}
