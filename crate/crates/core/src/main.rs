use std::io::{self, Read};
use std::process::ExitCode;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let read_stdin = || -> io::Result<String> {
        let mut text = String::new();
        io::stdin().read_to_string(&mut text)?;
        Ok(text)
    };
    let code = chordline::cli::run(&args, read_stdin, &mut io::stdout(), &mut io::stderr());
    ExitCode::from(code)
}
