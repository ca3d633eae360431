//! Changing frames for a mixed spin-tensor, undoing the change, and the
//! conjugation that swaps barred and unbarred indices.

use dirac_pin::dirac::PinElement;
use dirac_pin::lorentz::SectorTag;
use dirac_pin::sl2c::sample_moderate_sl2_with;
use dirac_pin::spintensor::{
    inverse_transform, sample_spin_tensor_with, tau, transform, FrameTransition, SpinTensorType,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    // one index of every kind
    let ttype = SpinTensorType::new(1, 1, 1, 1, 1, 1).unwrap();
    let x = sample_spin_tensor_with(&mut rng, ttype);
    println!("type {:?}, {} components", ttype.counts(), ttype.len());

    let s = sample_moderate_sl2_with(&mut rng, 1.5);
    let f = FrameTransition::from_pin(&PinElement::from_sector(SectorTag::MinusSector, &s));
    let moved = transform(&x, &f);
    let back = inverse_transform(&moved, &f);
    println!(
        "largest component before {:.3}, after {:.3}",
        x.max_abs(),
        moved.max_abs()
    );
    println!("roundtrip error {:.1e}", back.max_abs_diff(&x).unwrap());

    let other = FrameTransition::chiral(&sample_moderate_sl2_with(&mut rng, 1.5));
    let composed = transform(&x, &f.then(&other));
    let stepwise = transform(&moved, &other);
    println!(
        "two steps vs composed transition: {:.1e}",
        composed.max_abs_diff(&stepwise).unwrap()
    );

    let small = sample_spin_tensor_with(&mut rng, SpinTensorType::new(2, 0, 0, 1, 0, 0).unwrap());
    let conj = tau(&small);
    println!(
        "tau maps type {:?} to {:?}",
        small.ttype().counts(),
        conj.ttype().counts()
    );
    println!("tau twice is the identity: {}", tau(&conj) == small);
}
