fn main() {
    std::process::exit(jcfrob::cli::main_with_args(std::env::args_os()));
}
