use std::io;

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().filter_or("PUREFIELD_LOG", "warn")).init();
    let code = purefield_cli::run(std::env::args_os(), &mut io::stdout().lock(), &mut io::stderr().lock());
    std::process::exit(code);
}
