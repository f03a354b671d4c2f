//! Classifying ideals as φ-fixed, φ-compatible or neither.

use fpure::cartier::CartierMap;
use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::Ring;

fn classify(phi: &CartierMap, gens: &[&str]) -> Result<(), Box<dyn std::error::Error>> {
    let j = Ideal::parse(phi.ring(), gens)?;
    let verdict = if phi.is_fixed(&j)? {
        "fixed"
    } else if phi.is_compatible(&j)? {
        "compatible"
    } else {
        "neither"
    };
    assert_eq!(phi.is_compatible(&j)?, phi.is_compatible_by_colon(&j)?);
    println!("u = {}, J = {j}: φ(J) = {}, {verdict}", phi.u(), phi.apply(&j)?);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x,y")?;
    let phi = CartierMap::new(r.parse("x*y")?, 1)?;
    for gens in [&["x"][..], &["x*y"], &["x^2"], &["x^2*y", "x*y^2"], &["x+1"]] {
        classify(&phi, gens)?;
    }
    let r1 = Ring::from_var_list(GaloisField::prime(2)?, "x")?;
    let cube = CartierMap::new(r1.parse("x^3")?, 1)?;
    for gens in [&["x"][..], &["x^2"]] {
        classify(&cube, gens)?;
    }
    Ok(())
}
