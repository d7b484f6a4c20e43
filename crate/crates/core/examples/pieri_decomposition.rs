//! Splitting S^k U ⊗ S^d U into the summands A_t and checking the kernel
//! descriptions of ker D and ker DD.

use verocohom::operators::{ker_d, ker_dd, pieri_summand, polarization_image, psi_image};

fn main() -> verocohom::Result<()> {
    let n = 2;
    for d in 1..=3 {
        for k in 1..=d {
            let dims: Vec<String> =
                (0..=k).map(|t| pieri_summand(t, k, d, n).map(|a| a.dim().to_string())).collect::<Result<_, _>>()?;
            let kd = ker_d(k, d, n)?;
            let kdd = ker_dd(k, d, n)?;
            println!(
                "k={k} d={d}: A_t dims {:<16} ker D = p_k image: {:<5} ker DD = Im psi: {}",
                dims.join(" + "),
                kd == polarization_image(n, k, d)?,
                kdd == psi_image(n, k, d + k - 1)?
            );
        }
    }
    Ok(())
}
