//! Volumes and classes of surface singularities from their resolution graphs.

use singvol::surface::{self, DuVal, GraphFamily};

fn main() -> singvol::Result<()> {
    let mut families = vec![
        (
            "cone over a genus-2 curve, degree 1".to_string(),
            GraphFamily::Cone {
                genus: 2,
                degree: 1,
            },
        ),
        (
            "cone over a genus-3 curve, degree 2".to_string(),
            GraphFamily::Cone {
                genus: 3,
                degree: 2,
            },
        ),
        (
            "simple elliptic, degree 3".to_string(),
            GraphFamily::Cone {
                genus: 1,
                degree: 3,
            },
        ),
        (
            "cusp (-3,-2,-2)".to_string(),
            GraphFamily::CuspCycle(vec![-3, -2, -2]),
        ),
    ];
    for t in [DuVal::A(3), DuVal::D(4), DuVal::E8] {
        families.push((format!("Du Val {t:?}"), GraphFamily::DuVal(t)));
    }
    for (name, family) in &families {
        let g = surface::standard_graph(family)?;
        let c = surface::classify(&g);
        println!(
            "{name:<38} {:<12} volume {}",
            c.class.to_string(),
            surface::volume(&g)
        );
    }
    Ok(())
}
