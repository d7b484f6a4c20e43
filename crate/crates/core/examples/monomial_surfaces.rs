//! Monomial projections of Veronese surfaces: the smoothness condition and
//! the closed formulas for dim ∂T and dim ∂^-1 T.

use verocohom::operators::{inv_partial_t, partial_t};
use verocohom::surface::{fast_dim_inv_partial_t, fast_dim_partial_t, smoothness_necessary, TriangleT, Triple};

fn show(t: &TriangleT) -> verocohom::Result<()> {
    let spec = t.to_spec()?;
    let names: Vec<String> = t.triples().iter().map(ToString::to_string).collect();
    println!("d = {}, T = {{{}}}", t.d(), names.join(", "));
    let bad = smoothness_necessary(t);
    let bad: Vec<String> = bad.iter().map(ToString::to_string).collect();
    println!(
        "  smoothness-necessary: {}",
        if bad.is_empty() { "pass".to_string() } else { format!("FAIL {}", bad.join(" ")) }
    );
    println!("  dim ∂T:     fast {:?}, exact {}", fast_dim_partial_t(t), partial_t(spec.t())?.dim());
    println!("  dim ∂^-1 T: fast {:?}, exact {}", fast_dim_inv_partial_t(t), inv_partial_t(spec.t(), 1)?.dim());
    Ok(())
}

fn main() -> verocohom::Result<()> {
    show(&TriangleT::new(3, [Triple(1, 1, 1)])?)?;
    show(&TriangleT::new(5, [Triple(2, 2, 1), Triple(4, 0, 1), Triple(0, 2, 3)])?)?;
    // a triangle of distance-one neighbours below an interior apex
    show(&TriangleT::new(4, [Triple(1, 2, 1), Triple(2, 1, 1), Triple(2, 2, 0)])?)?;
    show(&TriangleT::new(3, [Triple(3, 0, 0), Triple(0, 1, 2)])?)?;
    Ok(())
}
