fn main() {
    std::process::exit(qtangle::cli::main_with_args(std::env::args_os()));
}
