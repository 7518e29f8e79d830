//! The exact building blocks: a rational simplex with certificates and
//! convex-hull volumes.

use singvol::exactmath::rational::format_qvector;
use singvol::exactmath::{lp_max, polytope_volume, qvec, rat, LpOutcome, LpProblem};

fn main() -> singvol::Result<()> {
    let bounded = LpProblem::new(qvec(&[1, 1]))
        .with_constraint(qvec(&[2, 1]), rat(4))
        .with_constraint(qvec(&[1, 3]), rat(5))
        .with_constraint(qvec(&[-1, 0]), rat(0))
        .with_constraint(qvec(&[0, -1]), rat(0));
    let open = LpProblem::new(qvec(&[1, 0])).with_constraint(qvec(&[0, 1]), rat(1));
    let empty = LpProblem::new(qvec(&[1]))
        .with_constraint(qvec(&[1]), rat(-1))
        .with_constraint(qvec(&[-1]), rat(0));
    for p in [bounded, open, empty] {
        match lp_max(&p)? {
            LpOutcome::Optimal { value, point } => {
                println!("optimal {value} at {:?}", format_qvector(&point))
            }
            LpOutcome::Unbounded { ray } => println!("unbounded along {:?}", format_qvector(&ray)),
            LpOutcome::Infeasible { farkas } => println!(
                "infeasible, Farkas multipliers {:?}",
                format_qvector(&farkas)
            ),
        }
    }
    let cube: Vec<_> = (0..8)
        .map(|i| qvec(&[i & 1, (i >> 1) & 1, (i >> 2) & 1]))
        .collect();
    println!("unit cube volume {}", polytope_volume(&cube, 3)?);
    Ok(())
}
