fn main() {
    std::process::exit(nfold::cli::run(std::env::args_os()));
}
