fn main() {
    std::process::exit(pathcalc_cli::run(std::env::args_os()));
}
