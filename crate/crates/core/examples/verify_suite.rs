use dirac_pin::verify::{run_suite, VerifyConfig};

fn main() {
    let report = run_suite(&VerifyConfig::default());
    for check in &report.checks {
        println!(
            "{:<28} {:<4} residual {:>10.3e}  samples {:>5}  {:>8.1?}",
            check.name, check.status, check.max_residual, check.samples, check.elapsed
        );
    }
    println!("all passed: {}", report.passed);
}
