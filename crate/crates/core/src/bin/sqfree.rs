fn main() {
    std::process::exit(sqfree::lab::cli::run(std::env::args_os()));
}
