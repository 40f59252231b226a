fn main() {
    std::process::exit(field_entangle::cli::run(std::env::args_os()));
}
