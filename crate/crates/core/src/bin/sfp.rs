fn main() -> std::process::ExitCode {
    smooth_fano::cli::main_with_args(std::env::args_os())
}
