//! The γ-symbols come back unchanged under chiral transitions and under the
//! discrete reversals.

use dirac_pin::dirac::{anticommutator_residual, gamma_set, Reversal, Sign};
use dirac_pin::numerics::Tolerance;
use dirac_pin::sl2c::sample_sl2;
use dirac_pin::spintensor::{
    gamma_symbol_invariance, gamma_symbol_reversal_residual, gamma_symbols, reversal_gamma_sign, transform,
    FrameTransition,
};

fn main() {
    let tol = Tolerance::default();
    println!("anticommutator residual {}", anticommutator_residual(gamma_set()));

    let g = gamma_symbols();
    for seed in 0..3 {
        let f = FrameTransition::chiral(&sample_sl2(seed));
        let moved = transform(&g, &f);
        println!(
            "chiral transition {seed}: residual {:.1e}, engine change {:.1e}",
            gamma_symbol_invariance(&f, Sign::Plus, tol).unwrap(),
            moved.max_abs_diff(&g).unwrap()
        );
    }

    for kind in Reversal::ALL {
        let f = FrameTransition::reversal(kind);
        let sign = reversal_gamma_sign(kind);
        println!(
            "{kind:>2}: residual {} with the inverse, {} with the reversal in both slots and sign {:+}",
            gamma_symbol_invariance(&f, Sign::Plus, tol).unwrap(),
            gamma_symbol_reversal_residual(kind, sign),
            sign.value()
        );
    }
}
