use clap::Parser;
use dqfilter::app::{run, Cli};

fn main() {
    match run(Cli::parse()) {
        Ok(msg) => println!("{}", msg.trim_end()),
        Err(e) => {
            eprintln!("dqfilter: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
