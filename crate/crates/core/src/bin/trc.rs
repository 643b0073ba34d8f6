fn main() {
    std::process::exit(trc_core::cli::run());
}
