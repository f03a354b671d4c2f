//! Parsing, arithmetic and the exponent norm in F_5[x, y].

use fpure::ffield::GaloisField;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(5)?, "x,y")?;
    let f = r.parse("(x + 2*y)^3 - x^3")?;
    let g = r.parse("x*y + 1")?;
    println!("f = {f}");
    println!("f * g = {}", &f * &g);
    println!("norm of f = {}, total degree = {}", f.norm(), f.total_degree());
    println!("f^[5] = {}", f.frobenius_power(1));
    println!("box of norm 1: {:?}", r.box_monomials(1).iter().map(|m| r.format_monomial(m)).collect::<Vec<_>>());
    match r.parse("x + w") {
        Ok(_) => unreachable!(),
        Err(e) => println!("unknown variable: {e}"),
    }
    Ok(())
}
