fn main() -> std::process::ExitCode {
    fpknot::cli::main()
}
