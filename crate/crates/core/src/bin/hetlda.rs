fn main() {
    std::process::exit(hetlda::cli::run());
}
