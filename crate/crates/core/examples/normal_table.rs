//! Cohomology of N_f(-k) for f = (x^3 : y^3 : u^3 : 3x^2y), with the
//! route used for every entry.

use verocohom::cohomology::{table, MapSpec, Sheaf};
use verocohom::exactla::rat;
use verocohom::{MultiIndex, QPoly, Side};

fn main() -> verocohom::Result<()> {
    let x = |e: [u32; 3], c: i64| QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c));
    let forms = [x([3, 0, 0], 1), x([0, 3, 0], 1), x([0, 0, 3], 1), x([2, 1, 0], 3)];
    let spec = MapSpec::from_forms(2, 3, &forms)?;
    println!("dim T = {}", spec.t().dim());

    let t = table(&spec, Sheaf::Normal, 3, 10)?;
    for r in &t.rows {
        let routes: Vec<String> = r.routes[1].iter().map(ToString::to_string).collect();
        println!("k={:>2}  h = {:?}  chi = {:>3}  h1 via {}", r.k, r.h, r.chi, routes.join(", "));
    }
    Ok(())
}
