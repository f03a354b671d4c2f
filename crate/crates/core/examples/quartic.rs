//! Fixed ideals of (x^4+y^4+z^4)^4·Φ on F_5[x, y, z]. Takes about half a minute.

use fpure::cartier::CartierMap;
use fpure::enumerate::{enumerate_fixed, Limits};
use fpure::ffield::GaloisField;
use fpure::ideal::Ideal;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(5)?, "x,y,z")?;
    let phi = CartierMap::new(r.parse("(x^4+y^4+z^4)^4")?, 1)?;
    let set = enumerate_fixed(&phi, Limits::default())?;
    let m = Ideal::maximal(&r);
    let m2 = m.product(&m)?;
    let mut by_codim = std::collections::BTreeMap::new();
    for i in set.proper_nonzero() {
        if m.contains(i)? && i.contains(&m2)? {
            *by_codim.entry(i.slice(1).dim() - m2.slice(1).dim()).or_insert(0) += 1;
        } else {
            println!("outside [m^2, m]: {i}");
        }
    }
    println!("ideals between m^2 and m by dim over m^2: {by_codim:?}");
    println!("{} nonzero fixed ideals; {:?}", set.proper_nonzero().count(), set.stats());
    Ok(())
}
