fn main() -> std::process::ExitCode {
    solenoid::cli::main()
}
