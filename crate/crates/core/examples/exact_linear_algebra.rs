//! Ranks, kernels and subspace intersections over the rationals.

use verocohom::exactla::{kernel_basis, Ambient};
use verocohom::{QMatrix, Subspace};

fn main() -> verocohom::Result<()> {
    let m = QMatrix::from_i64_rows(4, &[&[1, 2, 0, -1], &[2, 4, 1, 0], &[3, 6, 1, -1]])?;
    println!("rank = {}", m.rank());

    let ker = kernel_basis(&m);
    println!("kernel has dimension {}", ker.dim());
    for v in ker.vectors() {
        let shown: Vec<String> = v.iter().map(ToString::to_string).collect();
        println!("  [{}]", shown.join(", "));
    }

    let a = Subspace::from_matrix_rows(Ambient::Plain, &QMatrix::from_i64_rows(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]])?);
    let b = Subspace::from_matrix_rows(Ambient::Plain, &QMatrix::from_i64_rows(4, &[&[1, 1, 0, 0], &[0, 0, 1, 0]])?);
    let meet = a.intersect(&b)?;
    let join = a.sum(&b)?;
    println!("dim a = {}, dim b = {}, dim (a ∩ b) = {}, dim (a + b) = {}", a.dim(), b.dim(), meet.dim(), join.dim());
    Ok(())
}
