//! Lifting Lorentz matrices from every sector back to the two spinor
//! matrices lying over them.

use dirac_pin::dirac::{big_phi, preimage};
use dirac_pin::lorentz::{sample_lorentz_with, SectorTag};
use dirac_pin::numerics::Tolerance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let tol = Tolerance::default();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for tag in SectorTag::ALL {
        let l = sample_lorentz_with(&mut rng, tag);
        let (plus, minus) = preimage(&l, tol).expect("every Lorentz matrix has two lifts");
        let back = big_phi(plus.matrix(), tol).unwrap();
        println!(
            "{tag:>12}: |Phi(lift) - L| = {:.1e}, |L| = {:.1e}, lifts opposite: {}, image sector {}",
            back.matrix().max_abs_diff(l.matrix()),
            l.matrix().max_abs(),
            *minus.matrix() == -*plus.matrix(),
            back.tag()
        );
    }
}
