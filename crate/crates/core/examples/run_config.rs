//! Load a JSON analysis config, run its default analysis and print the report.
//!
//! `cargo run --example run_config -- crates/core/examples/configs/qk_three_equal.json md`

use einstein_stability::cli::{load_config, run, validate, Format, Task};

fn main() {
    let mut args = std::env::args().skip(1);
    let path = args.next().unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/examples/configs/torus_two_factor.json").into());
    let format = match args.next().as_deref() {
        Some("md") => Format::Md,
        _ => Format::Json,
    };
    let report = load_config(path).and_then(|config| {
        validate(&config, Task::Check)?;
        run(&config, Task::Check)
    });
    match report {
        Ok(r) => {
            print!("{}", r.render(format));
            std::process::exit(r.exit_code());
        }
        Err(err) => {
            eprintln!("error: {err}");
            std::process::exit(1);
        }
    }
}
