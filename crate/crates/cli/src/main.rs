fn main() {
    std::process::exit(finprob_cli::run());
}
