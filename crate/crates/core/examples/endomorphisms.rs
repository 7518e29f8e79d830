//! Finite toric endomorphisms: degrees, pull-backs and the identities they
//! satisfy, plus volume monotonicity under étale covers of cones over curves.

use singvol::endo::{self, MonotonicityCase, ToricEndo};
use singvol::toric::{MonomialIdeal, ToricCone, ToricDivisor};

fn main() -> singvol::Result<()> {
    let plane = ToricCone::orthant(2);
    let m = MonomialIdeal::new(&plane, vec![vec![1, 0], vec![0, 1]])?;
    let d = ToricDivisor::from_ints(&[1, 2]);
    for matrix in [
        vec![vec![2, 0], vec![0, 2]],
        vec![vec![2, 0], vec![0, 3]],
        vec![vec![0, 1], vec![1, 0]],
    ] {
        let e = ToricEndo::new(&plane, matrix.clone())?;
        let r = endo::check_push_pull(&e, &plane.sample_points(), &d, std::slice::from_ref(&m))?;
        println!(
            "A = {matrix:?}: degree {}, pulled-back ideal {:?}, identities hold: {}",
            endo::degree(&e),
            endo::pullback_ideal(&e, &m)?.gens(),
            r.passed()
        );
    }
    for cover in 1..=3 {
        let r = endo::volume_monotonicity_report(&MonotonicityCase::SurfaceCover {
            genus: 2,
            degree: 1,
            cover,
        })?;
        println!(
            "degree-{cover} cover: Vol = {} vs {cover} * {}",
            r.source_volume, r.target_volume
        );
    }
    let q = ToricCone::quadric();
    let r = endo::volume_monotonicity_report(&MonotonicityCase::Toric {
        endo: ToricEndo::scalar(&q, 2)?,
    })?;
    println!(
        "quadric cone, A = 2I: Vol = {} (A >= 0 certified at {} points)",
        r.source_volume, r.certified_points
    );
    Ok(())
}
