fn main() {
    std::process::exit(lct_joint::cli::run(std::env::args_os()));
}
