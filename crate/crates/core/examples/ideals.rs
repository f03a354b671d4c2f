//! Ideal operations: Gröbner bases, membership, intersections, colons,
//! bracket powers, minimal generators and truncation.

use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x,y,z")?;
    let i = Ideal::parse(&r, &["x*y", "y*z + x^2"])?;
    let j = Ideal::parse(&r, &["x + z", "y^2"])?;
    println!("I = {i}");
    println!("reduced Gröbner basis of I: {:?}", i.groebner().iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("x^3 in I: {}", i.contains_poly(&r.parse("x^3")?));
    println!("I + J = {}", i.sum(&j)?);
    println!("I ∩ J = {}", i.intersect(&j)?);
    println!("I : x = {}", i.colon(&r.parse("x")?)?);
    println!("I^[2] = {}", i.bracket_power(2)?);
    let m2 = Ideal::maximal(&r).product(&Ideal::maximal(&r))?;
    let k = i.sum(&Ideal::parse(&r, &["x + y"])?)?;
    println!("minimal generators of {k}: {:?}", k.minimal_generators()?.iter().map(|g| g.to_string()).collect::<Vec<_>>());
    println!("m^2 truncated at norm 1: {}", m2.truncate(1));
    println!("dim of I ∩ S_2 = {}", i.slice(2).dim());
    Ok(())
}
