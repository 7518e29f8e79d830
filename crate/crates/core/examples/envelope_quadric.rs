//! Nef envelopes on the 3-dimensional quadric cone `xy = zw`.
//!
//! `D1 = (1,1,1,0)` and `D2 = (1,0,1,1)` are Weil but not Cartier; their sum
//! `(2,1,2,1)` is Cartier. At the valuation `v = (1,1,0)` the envelope is
//! strictly superadditive.

use singvol::exactmath::rational::format_qvector;
use singvol::toric::{
    is_numerically_cartier, CartierCheck, EnvelopeFunction, ToricCone, ToricDivisor,
};

fn main() -> singvol::Result<()> {
    let cone = ToricCone::quadric();
    println!("rays          {:?}", cone.rays());
    println!("facet normals {:?}", cone.facet_normals());

    let v = [1, 1, 0];
    for coeffs in [[1, 1, 1, 0], [1, 0, 1, 1], [2, 1, 2, 1]] {
        let d = ToricDivisor::from_ints(&coeffs);
        let env = EnvelopeFunction::new(&cone, d.clone())?.eval(&v)?;
        let cartier = match is_numerically_cartier(&cone, &d)? {
            CartierCheck::Cartier { linear_form } => {
                format!("Cartier, m = {:?}", format_qvector(&linear_form))
            }
            CartierCheck::NotCartier {
                witness,
                env_d,
                env_neg_d,
            } => {
                format!(
                    "not Cartier, Env(D)+Env(-D) = {} at {witness:?}",
                    env_d + env_neg_d
                )
            }
        };
        println!(
            "D = {coeffs:?}: Env(D)({v:?}) = {} with m = {:?}; {cartier}",
            env.value,
            format_qvector(&env.optimal_m)
        );
    }
    Ok(())
}
