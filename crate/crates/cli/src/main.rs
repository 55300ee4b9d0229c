fn main() {
    std::process::exit(algebroid_lab::main_with_args(std::env::args_os()));
}
