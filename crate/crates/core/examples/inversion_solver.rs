//! Derives the spinor inversions from the linear systems they satisfy
//! instead of writing them down.

use dirac_pin::dirac::{basis16_label, decompose_in_basis16, inversion_nullspace, InversionOps, Sign};
use dirac_pin::lorentz::InversionMatrices;
use dirac_pin::numerics::Mat4C;

fn describe(m: &Mat4C) -> String {
    decompose_in_basis16(m)
        .iter()
        .enumerate()
        .filter(|(_, z)| z.norm() > 1e-12)
        .map(|(a, z)| format!("({:.3}{:+.3}i)·{}", z.re, z.im, basis16_label(a)))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn main() {
    let inv = InversionMatrices::new();
    for (name, target) in [("P", inv.p), ("T", inv.t)] {
        let space = inversion_nullspace(&target);
        println!("{name}: solution space of dimension {}", space.len());
        for v in &space {
            println!("  spanned by {}", describe(v));
        }
    }

    for (sp, st) in [
        (Sign::Plus, Sign::Plus),
        (Sign::Minus, Sign::Plus),
        (Sign::Plus, Sign::Minus),
    ] {
        let ops = InversionOps::derive(sp, st).unwrap();
        let anti = ops.p_hat * ops.t_hat + ops.t_hat * ops.p_hat;
        let q2 = ops.q_hat * ops.q_hat;
        println!(
            "signs ({:+}, {:+}): P^ = {}, T^ = {}, |P^T^ + T^P^| = {}, (P^T^)^2 = -I: {}",
            sp.value(),
            st.value(),
            describe(&ops.p_hat),
            describe(&ops.t_hat),
            anti.max_abs(),
            q2 == -Mat4C::identity()
        );
    }
}
