//! Cross-checking the enumeration against exhaustive search over all
//! subspaces of the truncation box.

use fpure::cartier::CartierMap;
use fpure::enumerate::{brute_force_fixed, enumerate_fixed, subspace_count, Limits, DEFAULT_BRUTE_FORCE_CAP};
use fpure::ffield::GaloisField;
use fpure::poly::Ring;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for (q, vars, u) in [("2", "x,y", "x*y"), ("3", "x,y", "x^2*y^2"), ("2", "x,y", "x*y + x + y"), ("3", "x", "x^2 + 1")] {
        let r = Ring::from_var_list(GaloisField::parse(q)?, vars)?;
        let phi = CartierMap::new(r.parse(u)?, 1)?;
        let space = subspace_count(r.field().order() as u64, phi.box_dim());
        let fast = enumerate_fixed(&phi, Limits::default())?;
        let slow = brute_force_fixed(&phi, DEFAULT_BRUTE_FORCE_CAP)?;
        assert_eq!(fast.keys(), slow.keys());
        println!("F_{q}[{vars}], u = {u}: {} fixed ideals, {space} subspaces searched", fast.len());
    }
    Ok(())
}
