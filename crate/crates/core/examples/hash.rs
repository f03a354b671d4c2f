//! The hash operation: the largest φ-fixed ideal inside a given ideal.

use fpure::cartier::CartierMap;
use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x,y")?;
    let phi = CartierMap::new(r.parse("x*y")?, 1)?;
    println!("u = {}, D_e = {}, box dimension = {}", phi.u(), phi.de(), phi.box_dim());
    for gens in [&["1"][..], &["x^2", "y"], &["x+y"], &["x*y^2", "x^2*y"], &["x"]] {
        let j = Ideal::parse(&r, gens)?;
        let out = phi.hash_with_stats(&j)?;
        assert_eq!(out.ideal, phi.hash_reference(&j)?);
        println!("{j}^# = {} ({} iterations)", out.ideal, out.iterations);
    }
    Ok(())
}
