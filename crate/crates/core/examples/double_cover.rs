//! The map from SL(2,C) to the proper orthochronous Lorentz group, on a
//! boost, a rotation and a random element.

use dirac_pin::numerics::{c, Mat2C, Tolerance};
use dirac_pin::sl2c::{phi, phi_via_sigma, sample_sl2, su2_from_quaternion, SL2Element};

fn show(label: &str, s: &SL2Element) {
    let l = phi(s).expect("image is real");
    println!("{label}");
    for row in l.rows() {
        println!("  [{:>9.5} {:>9.5} {:>9.5} {:>9.5}]", row[0], row[1], row[2], row[3]);
    }
    println!(
        "  closed form vs trace extraction: {:.1e}",
        l.max_abs_diff(&phi_via_sigma(s))
    );
    println!("  same image for -S: {}", phi(&s.neg()).unwrap() == l);
}

fn main() {
    let boost = SL2Element::new(Mat2C::diag([c(2.0, 0.0), c(0.5, 0.0)]), Tolerance::default()).unwrap();
    show("z-boost diag(2, 1/2)", &boost);

    // quarter turn about z
    let half = std::f64::consts::FRAC_PI_4;
    show(
        "rotation by pi/2 about z",
        &su2_from_quaternion([half.cos(), 0.0, 0.0, half.sin()]),
    );

    let a = sample_sl2(7);
    let b = sample_sl2(8);
    let lhs = phi(&a.mul(&b)).unwrap();
    let rhs = phi(&a).unwrap() * phi(&b).unwrap();
    println!("phi(ab) - phi(a)phi(b) for random a, b: {:.1e}", lhs.max_abs_diff(&rhs));
}
