fn main() {
    env_logger::init();
    std::process::exit(rmlab::cli::run(std::env::args_os()));
}
