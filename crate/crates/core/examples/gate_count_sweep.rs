// Traditional vs decomposed CNOT counts and the crossover points.

use ucc_decomp::resources::{crossover, decomposed_counts, emit_sweep_csv, traditional_counts};
use ucc_decomp::Scheme;

pub fn run_example() -> ucc_decomp::Result<()> {
    for m in [8, 10, 16, 32] {
        let t = traditional_counts(4, m)?;
        let d = decomposed_counts(Scheme::Quadruple, m)?;
        println!(
            "M={m:>2}: traditional {:>6}  decomposed {:>5} (80M+208 = {})  compiled {:>5}",
            t.cnot,
            d.worst_case.cnot,
            80 * m + 208,
            d.synthesized.cnot
        );
    }
    for scheme in Scheme::TABULATED {
        println!("{scheme}: crossover {:?}", crossover(scheme)?);
    }
    let csv = emit_sweep_csv(&[3, 4], 8..=10)?;
    print!("{csv}");
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
