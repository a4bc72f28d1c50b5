fn main() {
    let args: Vec<String> = std::env::args().collect();
    let outcome = starimage::cli::run(&args);
    print!("{}", outcome.stdout);
    std::process::exit(outcome.code);
}
