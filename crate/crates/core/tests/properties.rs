use dirac_pin::dirac::{big_phi, dirac_bar, pin_inverse, preimage, PinElement, Reversal};
use dirac_pin::frames::{apply_h, classify_frame, dirac_form_chiral, pair_d, pair_dirac};
use dirac_pin::lorentz::{lorentz_inverse, psi, LorentzElement, SectorTag};
use dirac_pin::numerics::{c, l_map, Mat2C, Mat4C, Mat4R, Tolerance, Vec4C, C64};
use dirac_pin::sl2c::{phi, su2_from_quaternion, SL2Element};
use dirac_pin::spintensor::{inverse_transform, tau, transform, FrameTransition, SpinTensor, SpinTensorType};
use proptest::prelude::*;

fn cplx() -> impl Strategy<Value = C64> {
    (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(a, b)| c(a, b))
}

fn mat2() -> impl Strategy<Value = Mat2C> {
    [cplx(), cplx(), cplx(), cplx()].prop_map(|[a, b, d, e]| Mat2C::from_rows([[a, b], [d, e]]))
}

fn vec4() -> impl Strategy<Value = Vec4C> {
    [cplx(), cplx(), cplx(), cplx()]
}

/// Unit-determinant matrices of moderate size.
fn sl2() -> impl Strategy<Value = SL2Element> {
    mat2()
        .prop_filter("well-conditioned", |m| {
            let d = m.det().norm();
            d > 0.2 && m.max_abs() / d.sqrt() < 6.0
        })
        .prop_map(|m| SL2Element::new(m.scale(C64::new(1.0, 0.0) / m.det().sqrt()), Tolerance::default()).unwrap())
}

fn sector() -> impl Strategy<Value = SectorTag> {
    prop::sample::select(SectorTag::ALL.to_vec())
}

fn pin() -> impl Strategy<Value = PinElement> {
    (sector(), sl2()).prop_map(|(t, s)| PinElement::from_sector(t, &s))
}

fn small_type() -> impl Strategy<Value = SpinTensorType> {
    prop::array::uniform6(0usize..2)
        .prop_filter("order at most 4", |k| k.iter().sum::<usize>() <= 4)
        .prop_map(|k| SpinTensorType::from_counts(k).unwrap())
}

fn tensor() -> impl Strategy<Value = SpinTensor> {
    small_type().prop_flat_map(|t| {
        prop::collection::vec(cplx(), t.len()).prop_map(move |data| SpinTensor::new(t, data).unwrap())
    })
}

fn tol() -> Tolerance {
    Tolerance::default()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn adjugate_is_linear_and_an_involution(a in mat2(), b in mat2(), k in cplx()) {
        let lhs = l_map(&(a + b.scale(k)));
        let rhs = l_map(&a) + l_map(&b).scale(k);
        prop_assert!(lhs.max_abs_diff(&rhs) < 1e-12);
        prop_assert_eq!(l_map(&l_map(&a)), a);
        prop_assert!((a * l_map(&a)).max_abs_diff(&Mat2C::identity().scale(a.det())) < 1e-12);
    }

    #[test]
    fn phi_is_a_homomorphism_with_kernel_sign(a in sl2(), b in sl2()) {
        let pab = phi(&a.mul(&b)).unwrap();
        let prod = phi(&a).unwrap() * phi(&b).unwrap();
        prop_assert!(pab.max_abs_diff(&prod) < 1e-9 * prod.max_abs().max(1.0));
        prop_assert_eq!(phi(&a.neg()).unwrap(), phi(&a).unwrap());
        let inv = phi(&a.inverse()).unwrap();
        prop_assert!(inv.max_abs_diff(&lorentz_inverse(&phi(&a).unwrap())) < 1e-9 * inv.max_abs().max(1.0));
    }

    #[test]
    fn rotations_fix_the_time_axis(q in prop::array::uniform4(-1.0f64..1.0)) {
        let n = q.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assume!(n > 1e-3);
        let u = su2_from_quaternion(q.map(|x| x / n));
        let r = phi(&u).unwrap();
        prop_assert!((r[(0, 0)] - 1.0).abs() < 1e-12);
        for k in 1..4 {
            prop_assert!(r[(0, k)].abs() < 1e-12 && r[(k, 0)].abs() < 1e-12);
        }
    }

    #[test]
    fn psi_is_an_involution(s in sl2()) {
        let l = phi(&s).unwrap();
        prop_assert_eq!(psi(&psi(&l)), l);
    }

    #[test]
    fn lorentz_decomposition_roundtrips(t in sector(), s in sl2()) {
        let l = LorentzElement::from_parts(t, &phi(&s).unwrap(), tol()).unwrap();
        let back = LorentzElement::decompose(l.matrix(), tol()).unwrap();
        prop_assert_eq!(back.tag(), t);
        prop_assert!(back.proper_part().max_abs_diff(l.proper_part()) < 1e-12);
        prop_assert!((*l.matrix() * *l.inverse().matrix()).max_abs_diff(&Mat4R::identity()) < 1e-9 * l.matrix().max_abs().powi(2));
    }

    #[test]
    fn big_phi_is_multiplicative_and_sign_blind(a in pin(), b in pin()) {
        let ab = a.mul(&b);
        let direct = big_phi(ab.matrix(), tol()).unwrap();
        prop_assert_eq!(direct.tag(), a.sector().product(b.sector()));
        prop_assert!(direct.matrix().max_abs_diff(ab.image().matrix()) < 1e-9 * direct.matrix().max_abs().max(1.0));
        prop_assert_eq!(big_phi(&-*a.matrix(), tol()).unwrap(), big_phi(a.matrix(), tol()).unwrap());
    }

    #[test]
    fn pin_inverse_is_the_scaled_bar(a in pin()) {
        let inv = pin_inverse(a.matrix()).unwrap();
        prop_assert!((*a.matrix() * inv).max_abs_diff(&Mat4C::identity()) < 1e-9 * a.matrix().max_abs().powi(2));
        let bar = dirac_bar(a.matrix());
        // bar equals ±inverse for elements of G
        let plus = bar.max_abs_diff(&inv);
        let minus = bar.max_abs_diff(&-inv);
        prop_assert!(plus.min(minus) < 1e-9 * bar.max_abs().max(1.0));
    }

    #[test]
    fn preimage_covers_every_sector(a in pin()) {
        let (plus, minus) = preimage(a.image(), tol()).unwrap();
        prop_assert_eq!(*minus.matrix(), -*plus.matrix());
        let d1 = plus.matrix().max_abs_diff(a.matrix());
        let d2 = plus.matrix().max_abs_diff(&-*a.matrix());
        prop_assert!(d1.min(d2) < 1e-8 * a.matrix().max_abs().max(1.0));
    }

    #[test]
    fn tau_is_an_involution_and_conjugates_the_type(x in tensor()) {
        let t = tau(&x);
        prop_assert_eq!(t.ttype(), x.ttype().conjugate());
        prop_assert_eq!(tau(&t), x);
    }

    #[test]
    fn transform_roundtrips_and_composes(x in tensor(), a in pin(), b in pin()) {
        let (f, g) = (FrameTransition::from_pin(&a), FrameTransition::from_pin(&b));
        let scale = x.max_abs().max(1.0) * (a.matrix().max_abs() * b.matrix().max_abs()).powi(8).max(1.0);
        let back = inverse_transform(&transform(&x, &f), &f);
        prop_assert!(back.max_abs_diff(&x).unwrap() < 1e-12 * scale);
        let stepwise = transform(&transform(&x, &f), &g);
        let at_once = transform(&x, &f.then(&g));
        prop_assert!(stepwise.max_abs_diff(&at_once).unwrap() < 1e-12 * scale);
        prop_assert!(tau(&transform(&x, &f)).max_abs_diff(&transform(&tau(&x), &f)).unwrap() < 1e-12 * scale);
    }

    #[test]
    fn basic_pairings(x in vec4(), y in vec4(), k in cplx()) {
        prop_assert!((pair_d(&x, &y) + pair_d(&y, &x)).norm() < 1e-12);
        prop_assert!((pair_dirac(&x, &y) - pair_dirac(&y, &x).conj()).norm() < 1e-12);
        let kx = x.map(|z| z * k);
        prop_assert!((pair_dirac(&x, &kx) - k.conj() * pair_dirac(&x, &x)).norm() < 1e-10);
        prop_assert!((dirac_form_chiral(&y, &x) - pair_dirac(&x, &y)).norm() < 1e-12);
        prop_assert_eq!(apply_h(&apply_h(&x)), x);
    }

    #[test]
    fn classification_matches_sector(a in pin()) {
        let cl = classify_frame(&FrameTransition::from_pin(&a), tol()).unwrap();
        prop_assert_eq!(cl.sector, a.sector());
        prop_assert_eq!(cl.class.sector(), a.sector());
        prop_assert_eq!(cl.signs, cl.class.signs());
    }
}

#[test]
fn reversal_squares() {
    for kind in Reversal::ALL {
        let x = kind.hat();
        let sq = x * x;
        let expected = if kind == Reversal::PT {
            -Mat4C::identity()
        } else {
            Mat4C::identity()
        };
        assert_eq!(sq, expected, "{kind}");
    }
}
