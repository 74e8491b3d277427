fn main() {
    std::process::exit(smt_core::cli::run(std::env::args_os()));
}
