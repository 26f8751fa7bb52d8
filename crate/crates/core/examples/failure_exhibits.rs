// Where the shortcuts break: two plain doubles, the scheme without
// controls, and states outside the n-electron active sector.

use std::f64::consts::FRAC_PI_4;

use num_complex::Complex64;
use ucc_decomp::schemes::plan_quadruple;
use ucc_decomp::sim::deviation;
use ucc_decomp::verify::exhibit::*;
use ucc_decomp::verify::{ket_state, naive_exhibit, run_compiled, uncontrolled_exhibit};
use ucc_decomp::{compile, JwConvention};

pub fn run_example() -> ucc_decomp::Result<()> {
    let theta = FRAC_PI_4;
    let e = naive_exhibit(theta, 0.6.into(), 0.8.into())?;
    println!("two doubles on 0.6|abcd> + 0.8|wxyz>:");
    println!("  |abcd> {:.6}  |wxyz> {:.6}  |wxcd> {:.6}  |abyz> {:.6}", e.abcd.re, e.wxyz.re, e.wxcd.re, e.abyz.re);
    println!("  distance from the exact factor {:.3}", deviation(&e.output, &e.exact));

    let u = uncontrolled_exhibit(theta, Complex64::new(1.0, 0.0))?;
    println!("no controls on |acxz>: |acxz> {:.6}  |ac η1 η2> {:.6}  leaked {:.3}", u.acxz.re, u.ac_eta.re, u.leaked);

    // With every virtual filled plus one more electron, the exact factor does
    // nothing but the controlled step still de-excites x z.
    let plan = plan_quadruple(&OCC, &VIRT, [ETA1, ETA2])?;
    let compiled = compile(&plan, 0.7, &JwConvention::identity(plan.total_qubits()))?;
    let input = ket_state(8, &[(&[A, W, X, Y, Z], Complex64::new(1.0, 0.0))])?;
    let (out, leaked) = run_compiled(&compiled, &input)?;
    println!("|a wxyz> through the quadruple plan: deviation {:.3}, leaked {:.3}", deviation(&out, &input), leaked);
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
