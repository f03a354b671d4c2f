//! e-th root ideals: the smallest ideal whose p^e-th bracket power contains a
//! given ideal.

use fpure::cartier::{eth_root, eth_root_poly};
use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(3)?, "x,y")?;
    let g = r.parse("x^5*y + x^3*y^4 + 2*y^9")?;
    println!("I_1({g}) = {}", eth_root_poly(&g, 1));
    println!("I_2({g}) = {}", eth_root_poly(&g, 2));

    let j = Ideal::parse(&r, &["x^4", "x*y^7"])?;
    let root = eth_root(&j, 1);
    println!("I_1({j}) = {root}");
    assert!(root.bracket_power(3)?.contains(&j)?);
    assert_eq!(eth_root(&root.bracket_power(3)?, 1), root);

    let k = GaloisField::parse("4:1,1,1")?;
    let r4 = Ring::from_var_list(k, "x")?;
    let h = r4.parse("z*x^2 + x")?;
    println!("over F_4: I_1({h}) = {}", eth_root_poly(&h, 1));
    Ok(())
}
