fn main() {
    std::process::exit(cvgeom_cli::run());
}
