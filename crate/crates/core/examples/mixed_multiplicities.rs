//! Samuel and mixed multiplicities of monomial ideals, checked against
//! lattice-point counting.

use singvol::oracle;
use singvol::toric::{mixed_multiplicity, samuel_multiplicity, MonomialIdeal, ToricCone};

fn main() -> singvol::Result<()> {
    let plane = ToricCone::orthant(2);
    let a = MonomialIdeal::new(&plane, vec![vec![1, 0], vec![0, 2]])?;
    let b = MonomialIdeal::new(&plane, vec![vec![2, 0], vec![0, 1]])?;
    let eab = mixed_multiplicity(&plane, &[a.clone(), b.clone()])?;
    println!(
        "e(a) = {}, e(b) = {}",
        samuel_multiplicity(&plane, &a)?,
        samuel_multiplicity(&plane, &b)?
    );
    println!(
        "e(a,b) = {eab}, counted: {}",
        oracle::mixed_multiplicity_by_counting(&plane, &[a, b], 3)?
    );

    let q = ToricCone::quadric();
    let m = MonomialIdeal::maximal(&q);
    println!("quadric cone: e(m) = {}", samuel_multiplicity(&q, &m)?);
    let report = oracle::count_report(&q, &m, &[5, 10, 15])?;
    for ((k, len), fit) in report.ks.iter().zip(&report.colengths).zip(&report.fitted) {
        println!("  k = {k:>2}: dim O/m^k = {len:>4}, 3! dim / k^3 = {fit}");
    }
    Ok(())
}
