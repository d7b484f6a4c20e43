//! Divisorial part of the branch locus of maps P^2 -> P^3, computed from
//! the minors of the Jacobian and from the h^2 tail.

use verocohom::branch::report;
use verocohom::cohomology::MapSpec;
use verocohom::exactla::rat;
use verocohom::{MultiIndex, QPoly, Side};

fn main() -> verocohom::Result<()> {
    let x = |e: [u32; 3], c: i64| QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c));
    let maps = [
        ("(x^2 : y^2 : u^2 : 2xy)", 2, vec![x([2, 0, 0], 1), x([0, 2, 0], 1), x([0, 0, 2], 1), x([1, 1, 0], 2)]),
        ("(x^3 : y^3 : u^3 : 3x^2y)", 3, vec![x([3, 0, 0], 1), x([0, 3, 0], 1), x([0, 0, 3], 1), x([2, 1, 0], 3)]),
        ("(x^4 : y^4 : u^4 : xyu^2)", 4, vec![x([4, 0, 0], 1), x([0, 4, 0], 1), x([0, 0, 4], 1), x([1, 1, 2], 1)]),
    ];
    for (name, d, forms) in maps {
        let r = report(&MapSpec::from_forms(2, d, &forms)?)?;
        println!("f = {name}");
        println!("  gcd of minors {}  ->  h_N = {}", r.gcd_poly, r.h_n_gcd);
        println!("  first nonzero h^2 at k = {}  ->  h_N = {}", r.k0, r.h_n_tail);
        println!("  q = {}, h^1 N_f(-q) = {}, deg Z' <= {}", r.q, r.h1_at_q, r.degzprime_upper);
    }
    Ok(())
}
