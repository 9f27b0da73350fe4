fn main() {
    std::process::exit(extcat::cli::run());
}
