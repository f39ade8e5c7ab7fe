//! Normal homogeneous fibrations of the Sp family and the threshold scan.

use einstein_stability::homogeneous_sp::{sp_invariants, sp_quantity, sp_scan, SpFamilyParams, SIBLING_THRESHOLDS};

fn main() -> einstein_stability::Result<()> {
    let p = SpFamilyParams::new(3, 1, 2)?;
    let inv = sp_invariants(p);
    let q = sp_quantity(p);
    println!("(3,1,2): ŝ = {}, š = {}, value {} = prefactor × {}, {}", inv.fiber_scal, inv.base_scal, q.value, q.bracket, q.verdict);

    let scan = sp_scan(12, 8)?;
    let unstable = scan.rows.iter().filter(|r| r.verdict == einstein_stability::Verdict::Unstable).count();
    println!("{} of {} rows unstable; claims hold: {}", unstable, scan.rows.len(), scan.all_hold());
    for row in scan.rows.iter().filter(|r| r.params.k + 4 == r.params.m && r.params.q == 8) {
        println!("  m={:2} k={:2}: {} {}", row.params.m, row.params.k, row.value, row.verdict);
    }
    for t in &SIBLING_THRESHOLDS {
        println!("{t:?}");
    }
    Ok(())
}
