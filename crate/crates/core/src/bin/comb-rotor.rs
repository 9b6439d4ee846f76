fn main() {
    std::process::exit(comb_rotor::cli::main());
}
