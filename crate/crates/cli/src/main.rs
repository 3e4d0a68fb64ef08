fn main() {
    std::process::exit(gulf_cli::run());
}
