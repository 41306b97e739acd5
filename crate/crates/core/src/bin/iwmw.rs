use std::io;

fn main() {
    let code = iwasawa_mw::cli::run(std::env::args_os(), &mut io::stdout(), &mut io::stderr());
    std::process::exit(code);
}
