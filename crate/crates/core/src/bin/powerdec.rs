fn main() {
    std::process::exit(powerdec::cli::cli_main());
}
