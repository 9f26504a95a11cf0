fn main() {
    std::process::exit(posgeom_cli::run(std::env::args_os()));
}
