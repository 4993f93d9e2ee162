//! Kendall's statistic with tied densities, the exact tie-adjusted null
//! variance, and a permutation check of the normal approximation.

use num_rational::Ratio;
use tesc::stats::{kendall_t, null_variance, permutation_null_z, ratio_to_f64, tie_profile, z_and_p, Tail, TieProfile};

fn main() -> tesc::Result<()> {
    // densities as exact fractions; many reference nodes see no event
    let a: Vec<Ratio<i64>> = [0, 0, 0, 1, 1, 2, 3, 0, 1, 2, 4, 0].iter().map(|&c| Ratio::new(c, 6)).collect();
    let b: Vec<Ratio<i64>> = [0, 1, 0, 1, 2, 2, 3, 0, 0, 1, 3, 1].iter().map(|&c| Ratio::new(c, 6)).collect();
    let k = kendall_t(&a, &b)?;
    let ties = TieProfile::new(tie_profile(&a), tie_profile(&b));
    let var = null_variance(a.len() as u64, &ties)?;
    let untied = null_variance(a.len() as u64, &TieProfile::untied(a.len() as u64))?;
    println!("S = {}, t = {}", k.s, k.t());
    println!("tie groups a {:?}, b {:?}", ties.a, ties.b);
    println!(
        "sigma_c^2 = {} ({:.3}); without ties it would be {}",
        var.sigma_c_sq,
        ratio_to_f64(&var.sigma_c_sq),
        untied.sigma_c_sq
    );
    let (z, p) = z_and_p(k.value(), var.sigma(), Tail::One)?;
    println!("z = {z:.3}, one-tailed p = {p:.4}");

    let zs = permutation_null_z(&a, &b, 20_000, 9)?;
    let beyond = zs.iter().filter(|&&x| x >= z).count() as f64 / zs.len() as f64;
    println!("permutation tail P(Z >= z) = {beyond:.4}");

    match null_variance(4, &TieProfile::new(vec![4], vec![1, 1, 1, 1])) {
        Err(e) => println!("all-tied side: {e}"),
        Ok(_) => unreachable!(),
    }
    Ok(())
}
