//! Forms, differential operators and the apolarity pairing.

use verocohom::exactla::rat;
use verocohom::operators::{inv_partial_t, perp, span_of_polys};
use verocohom::symspace::{contract, pairing};
use verocohom::{MultiIndex, QPoly, Side};

fn main() -> verocohom::Result<()> {
    let x = |e: &[u32], c: i64| QPoly::monomial(Side::Primal, MultiIndex::new(e.to_vec()), rat(c));
    let dx = |e: &[u32], c: i64| QPoly::monomial(Side::Dual, MultiIndex::new(e.to_vec()), rat(c));

    let p = &x(&[2, 1, 0], 1) + &x(&[0, 1, 2], 3);
    let g = &dx(&[1, 1, 0], 1) + &dx(&[0, 0, 2], 2);
    println!("p = {p}");
    println!("g = {g}");
    println!("g applied to p = {}", contract(&g, &p)?);

    // <x^I, d^I> = I!
    println!("<x^2y, dx^2dy> = {}", pairing(&x(&[2, 1, 0], 1), &dx(&[2, 1, 0], 1))?);

    let t = span_of_polys(2, 2, Side::Primal, &[x(&[2, 0, 0], 1), x(&[1, 1, 0], 1)])?;
    println!("dim T = {}, dim T^perp = {}", t.dim(), perp(&t)?.dim());
    for s in 0..=2 {
        println!("dim ∂^-{s} T = {}", inv_partial_t(&t, s)?.dim());
    }
    Ok(())
}
