fn main() -> std::process::ExitCode {
    gnl_cli::app::main_with(std::env::args_os())
}
