fn main() {
    std::process::exit(kb_soliton::cli::run(std::env::args_os()));
}
