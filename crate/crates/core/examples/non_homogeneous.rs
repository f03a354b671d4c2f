//! For non-homogeneous u some fixed ideals are not contained in m. The
//! hyperplane search below m misses them; the slice strategy finds them.

use fpure::cartier::CartierMap;
use fpure::enumerate::{Enumerator, Strategy};
use fpure::ffield::GaloisField;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x")?;
    let phi = CartierMap::new(r.parse("x^2 + x")?, 1)?;
    for strategy in [Strategy::Nakayama, Strategy::SliceDescent] {
        let set = Enumerator::new(phi.clone()).strategy(strategy).run()?;
        let shown: Vec<String> = set.ideals().iter().map(|i| i.to_string()).collect();
        println!("{strategy:?}: {}", shown.join(" "));
    }
    Ok(())
}
