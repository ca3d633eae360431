//! The four components of O(1,3) and how products move between them.

use dirac_pin::lorentz::{psi, sample_lorentz_with, LorentzElement, SectorTag};
use dirac_pin::numerics::Tolerance;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);

    print!("{:>12}", "");
    for b in SectorTag::ALL {
        print!("{b:>12}");
    }
    println!();
    for a in SectorTag::ALL {
        print!("{a:>12}");
        for b in SectorTag::ALL {
            print!("{:>12}", a.product(b));
        }
        println!();
    }

    let a = sample_lorentz_with(&mut rng, SectorTag::TSector);
    let b = sample_lorentz_with(&mut rng, SectorTag::PSector);
    let ab = a.mul(&b);
    let direct = *a.matrix() * *b.matrix();
    println!("T-sector times P-sector lands in {}", ab.tag());
    println!(
        "table product vs matrix product: {:.1e}",
        ab.matrix().max_abs_diff(&direct)
    );
    println!(
        "proper part is P S1 P S2: {:.1e}",
        ab.proper_part()
            .max_abs_diff(&(psi(a.proper_part()) * *b.proper_part()))
    );

    let split = LorentzElement::decompose(&direct, Tolerance::default()).unwrap();
    println!("decomposed from the bare matrix: {}", split.tag());
}
