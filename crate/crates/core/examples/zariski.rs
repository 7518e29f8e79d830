//! Relative Zariski decomposition of the log-discrepancy divisor on a graph
//! where the nef part is not the whole divisor.

use singvol::exactmath::rational::format_qvector;
use singvol::surface::{self, ResolutionGraph, Vertex};

fn main() -> singvol::Result<()> {
    // genus-2 curve of self-intersection -3 meeting a (-2)-curve
    let g = ResolutionGraph::new(
        vec![
            Vertex {
                self_int: -3,
                genus: 2,
            },
            Vertex {
                self_int: -2,
                genus: 0,
            },
        ],
        vec![(0, 1, 1)],
    )?;
    let a = surface::log_discrepancy_divisor(&g);
    let z = surface::zariski_decompose(&g, &a)?;
    println!("A = {:?}", format_qvector(&a.coeffs));
    println!("P = {:?}", format_qvector(&z.nef_part.coeffs));
    println!("N = {:?}", format_qvector(&z.neg_part.coeffs));
    println!(
        "P.E = {:?}",
        format_qvector(&g.intersections_with_components(&z.nef_part)?)
    );
    println!("volume = -P^2 = {}", surface::volume(&g));
    Ok(())
}
