fn main() {
    std::process::exit(omega_graphs::cli::run());
}
