//! Cohomology of T_f(-k) for the projection of the cubic Veronese surface
//! from the point dual to xyu.

use verocohom::cohomology::{h1_tangent_intersection_route, table, MapSpec, Sheaf};

fn main() -> verocohom::Result<()> {
    let spec = MapSpec::from_monomials(2, 3, &[vec![1, 1, 1]])?;
    println!("N = {}, s = {}", spec.big_n(), spec.s());

    let t = table(&spec, Sheaf::Tangent, 4, 9)?;
    println!(" k  h0  h1  h2");
    for r in &t.rows {
        println!("{:>2} {:>3} {:>3} {:>3}", r.k, r.h[0], r.h[1], r.h[2]);
    }
    println!("intersection route at k = 6: {}", h1_tangent_intersection_route(&spec, 6)?);
    Ok(())
}
