fn main() {
    let args: Vec<String> = std::env::args().collect();
    let code = quintic_dt::cli::run(&args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
