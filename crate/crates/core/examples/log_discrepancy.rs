//! Log discrepancies of toric valuations and Izumi constants.

use singvol::exactmath::rational::format_qvector;
use singvol::toric::{izumi_constant, log_discrepancy_value, ToricCone};

fn main() -> singvol::Result<()> {
    let q = ToricCone::quadric();
    for v in q
        .sample_points()
        .into_iter()
        .filter(|v| q.contains_in_interior(v))
    {
        let a = log_discrepancy_value(&q, &v)?;
        println!(
            "A({v:?}) = {} with m = {:?}",
            a.value,
            format_qvector(&a.optimal_m)
        );
    }
    println!(
        "c((1,1,1), (1,1,0)) = {}",
        izumi_constant(&q, &[1, 1, 1], &[1, 1, 0])?
    );
    println!(
        "c((1,1,0), (1,1,1)) = {}",
        izumi_constant(&q, &[1, 1, 0], &[1, 1, 1])?
    );
    Ok(())
}
