//! Arithmetic in F_9 = F_3[z]/(z^2 + 2z + 2), including Frobenius and its inverse.

use fpure::ffield::{FieldOp, GaloisField};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k = GaloisField::parse("9:2,2,1")?;
    println!("field of order {} and characteristic {}", k.order(), k.characteristic());

    let z = k.element(k.generator());
    let one = k.element(k.one());
    let w = z.apply(FieldOp::Add, &one)?;
    println!("z + 1 = {w}");
    println!("(z + 1)^-1 = {}", one.apply(FieldOp::Div, &w)?);
    println!("(z + 1)^3 = {}", w.frobenius(1));
    println!("cube root of z + 1 = {}", w.inv_frobenius(1));
    assert_eq!(w.inv_frobenius(1).frobenius(1), w);

    let f3 = GaloisField::prime(3)?;
    let mismatch = f3.element(f3.one()).apply(FieldOp::Add, &one);
    println!("mixing F_3 and F_9: {}", mismatch.unwrap_err());
    Ok(())
}
