fn main() {
    std::process::exit(colorpat::cli::main_entry());
}
