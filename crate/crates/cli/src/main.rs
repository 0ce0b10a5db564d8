fn main() {
    std::process::exit(nl_cli::main_with_args(std::env::args_os()).code());
}
