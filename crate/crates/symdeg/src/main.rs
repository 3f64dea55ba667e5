fn main() {
    std::process::exit(symdeg::cli::run(std::env::args()));
}
