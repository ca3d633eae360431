//! Which of the four frame classes a transition leads to, read off from the
//! signs picked up by the spin-metric, the chirality operator and the Dirac
//! form.

use dirac_pin::dirac::{embed_matrix, sector_representative, PinElement, Reversal};
use dirac_pin::frames::{classify_frame, frame_images, make_reversed_frame, FrameClass};
use dirac_pin::lorentz::SectorTag;
use dirac_pin::numerics::Tolerance;
use dirac_pin::sl2c::sample_sl2;
use dirac_pin::spintensor::FrameTransition;

fn main() {
    let tol = Tolerance::default();
    for class in FrameClass::ALL {
        let s = class.signs();
        println!(
            "{class:>20}: d {:+}, H {:+}, D {:+}, over {}",
            s.d,
            s.h,
            s.dirac,
            class.sector()
        );
    }

    for kind in Reversal::ALL {
        let f = make_reversed_frame(kind);
        let cl = classify_frame(&f, tol).unwrap();
        let first = frame_images(&f)[0];
        println!(
            "{kind:>2} reversal -> {} (first new frame vector {:?})",
            cl.class,
            first.map(|z| (z.re, z.im))
        );
    }

    // T^ followed by a random chiral change of frame
    let m = sector_representative(SectorTag::TSector) * embed_matrix(&sample_sl2(1));
    let f = FrameTransition::from_pin(&PinElement::new(m, tol).unwrap());
    println!("{}", serde_json::to_string(&classify_frame(&f, tol).unwrap()).unwrap());
}
