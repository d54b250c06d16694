fn main() {
    std::process::exit(wbt_cli::run(std::env::args().collect()));
}
