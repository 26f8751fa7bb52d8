fn main() {
    std::process::exit(ucc_decomp::cli::run(std::env::args_os()));
}
