//! All fixed ideals of xy·Φ on F_2[x, y], with the search trace on stderr.

use fpure::cartier::CartierMap;
use fpure::enumerate::Enumerator;
use fpure::ffield::GaloisField;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x,y")?;
    let phi = CartierMap::new(r.parse("x*y")?, 1)?;
    let set = Enumerator::new(phi).trace(Box::new(std::io::stderr())).run()?;
    for i in set.ideals() {
        println!("{i}");
    }
    println!("{:?}", set.stats());
    Ok(())
}
