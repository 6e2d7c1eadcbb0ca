fn main() {
    std::process::exit(hardyscope::cli::run(std::env::args_os()));
}
