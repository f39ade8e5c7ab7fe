use einstein_stability::verify::{default_cases, run_suite, SUITES};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(42);
    for name in SUITES {
        let cases = default_cases(name).min(200);
        let r = run_suite(name, seed, cases).expect("known suite");
        println!("{:<26} {:>5} checks  {}", r.name, r.cases, if r.passed() { "ok" } else { "FAILED" });
        if let Some(f) = r.first_failure {
            println!("    {f}");
        }
    }
}
