fn main() {
    std::process::exit(umemura::harness::run_command(std::env::args_os()));
}
