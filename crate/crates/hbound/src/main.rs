fn main() {
    std::process::exit(hbound::cli::main_entry());
}
