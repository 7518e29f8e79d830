//! Defect ideals `O(mD)·O(-mD)` of a non-Cartier divisor and the normalized
//! values `(1/m) Z(d(mD))(v)` against the bound `Env(D)(v) + Env(-D)(v)`.

use singvol::exactmath::rat;
use singvol::toric::{defect_ideal, envelope_value, z_value, ToricCone, ToricDivisor};

fn main() -> singvol::Result<()> {
    let q = ToricCone::quadric();
    let d = ToricDivisor::from_ints(&[1, 1, 1, 0]);
    let v = [1, 1, 0];
    let bound = envelope_value(&q, &d, &v)? + envelope_value(&q, &-&d, &v)?;
    println!("Env(D)(v) + Env(-D)(v) = {bound}");
    for m in [1, 2, 4] {
        let ideal = defect_ideal(&q, &d, m)?;
        let z = z_value(&q, &ideal, &v)? / rat(m);
        println!("m = {m}: {} generators, (1/m) Z = {z}", ideal.gens().len());
    }
    Ok(())
}
