fn main() {
    std::process::exit(mirrorkit::run_cli());
}
