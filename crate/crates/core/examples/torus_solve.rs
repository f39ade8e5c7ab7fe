//! Solve the Einstein system of a torus bundle over a product of Kähler–Einstein
//! factors in the gauge `E = 1`.

use einstein_stability::torus_bundle::{einstein_system_residual, solve_einstein, SolveOptions, TorusTopology};

fn main() -> einstein_stability::Result<()> {
    let topology = TorusTopology::new(vec![2, 2], vec![2.0, 2.0], vec![vec![1, 1]])?;
    let solutions = solve_einstein(&topology, &SolveOptions::default())?;
    for s in &solutions {
        let res = einstein_system_residual(&s.config);
        println!(
            "x = {:?}, ĝ = {:?}, E = {}, residual {:.2e} (max entry {:.2e})",
            s.config.x,
            s.config.ghat.matrix().to_rows(),
            s.einstein,
            s.residual_norm,
            res.max_abs()
        );
    }

    let three = TorusTopology::new(vec![2, 4, 2], vec![2.0, 3.0, 1.0], vec![vec![1, 2, 0], vec![0, 1, 1]])?;
    let opts = SolveOptions { gauge_einstein: 2.0, starts: 16, ..SolveOptions::default() };
    println!("three factors, r = 2: {} solution(s)", solve_einstein(&three, &opts)?.len());
    Ok(())
}
