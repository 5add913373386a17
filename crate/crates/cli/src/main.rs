fn main() {
    std::process::exit(frac_hawkes_cli::execute(std::env::args_os()));
}
