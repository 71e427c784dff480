use clap::Parser;
use rcyclo_cli::{exit_code, run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            print!("{}", out.text);
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &out.text) {
                    eprintln!("error: writing {}: {e}", path.display());
                    std::process::exit(1);
                }
            }
            std::process::exit(out.code);
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            std::process::exit(exit_code(&e));
        }
    }
}
