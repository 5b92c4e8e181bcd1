fn main() -> std::process::ExitCode {
    bergman::cli::main_with_args(std::env::args().collect())
}
