fn main() {
    std::process::exit(koszulctl::run(std::env::args_os()));
}
