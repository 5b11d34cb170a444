fn main() {
    std::process::exit(lmeasure::run(std::env::args_os()));
}
