//! An F-split example in five variables over F_2: 84 proper nonzero fixed
//! ideals. Takes one to two minutes in release mode.

use fpure::cartier::CartierMap;
use fpure::enumerate::{Enumerator, Limits};
use fpure::ffield::GaloisField;
use fpure::poly::Ring;

const U: &str = "x1^3*x2*x3 + x1^3*x2*x4 + x1^2*x3*x4*x5 + x1*x2*x3*x4*x5 \
     + x1*x2*x4^2*x5 + x2^2*x4^2*x5 + x3*x4^2*x5^2 + x4^3*x5^2";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let jobs = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(1);
    let r = Ring::from_var_list(GaloisField::prime(2)?, "x1,x2,x3,x4,x5")?;
    let phi = CartierMap::new(r.parse(U)?, 1)?;
    let set = Enumerator::new(phi).limits(Limits::default()).jobs(jobs).run()?;
    for i in set.proper_nonzero() {
        println!("{i}");
    }
    println!("{} proper nonzero fixed ideals", set.proper_nonzero().count());
    for (gens, n) in set.categories() {
        println!("  {n} with {} Gröbner basis elements", gens.map_or("-".to_string(), |g| g.to_string()));
    }
    println!("{:?}", set.stats());
    Ok(())
}
