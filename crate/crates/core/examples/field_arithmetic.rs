// GF(2^κ) arithmetic and polynomial interpolation.

use mvms_icp::{Epsilon, Field, FieldParams, Poly};
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn main() -> anyhow::Result<()> {
    let gf = Field::new(8)?;
    println!("{gf}");
    let a = gf.element(0x57)?;
    let b = gf.element(0x83)?;
    println!("{a} + {b} = {}", a + b);
    println!("{a} * {b} = {}", a * b);
    println!("{a}^-1 = {}  check: {}", a.inv()?, a * a.inv()?);

    // the smallest field that keeps the forgery chance of 5 verifiers under 2^-20
    let eps: Epsilon = "2^-20".parse()?;
    let params = FieldParams::from_error(5, eps)?;
    println!("n = 5, epsilon = {eps} -> kappa = {}", params.kappa());

    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let p = Poly::random(gf, 4, &mut rng);
    let points: Vec<_> =
        gf.sample_distinct_nonzero(4, &mut rng)?.into_iter().map(|x| (x, p.eval(x).unwrap())).collect();
    let q = Poly::interpolate(&points, 4, None)?;
    println!("p = {:?}", p.coeffs().iter().map(|c| c.value()).collect::<Vec<_>>());
    println!("interpolated from 4 points: equal = {}", p == q);
    Ok(())
}
