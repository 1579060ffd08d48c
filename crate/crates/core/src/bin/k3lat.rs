fn main() {
    std::process::exit(k3lat::cli::run(std::env::args_os()));
}
