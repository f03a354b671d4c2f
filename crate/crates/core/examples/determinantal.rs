//! Fixed ideals for the product of two 2x2 minors of a generic 2x3 matrix over F_2.

use fpure::cartier::CartierMap;
use fpure::enumerate::enumerate_fixed;
use fpure::enumerate::Limits;
use fpure::ffield::GaloisField;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x1,x2,x3,y1,y2,y3")?;
    let u = r.parse("(x1*y2 - x2*y1)*(x1*y3 - x3*y1)")?;
    let set = enumerate_fixed(&CartierMap::new(u, 1)?, Limits::default())?;
    for i in set.proper_nonzero() {
        println!("{i}");
    }
    println!("{} proper nonzero fixed ideals; S fixed: {}", set.proper_nonzero().count(), set.ideals().iter().any(|i| i.is_unit()));
    Ok(())
}
