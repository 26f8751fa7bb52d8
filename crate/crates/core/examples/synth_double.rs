// Synthesize a doubles factor and check it against the dense exponential.

use ucc_decomp::dense::max_abs_diff;
use ucc_decomp::sim::matrix_exponential_oracle;
use ucc_decomp::{count_gates, export_text, synth_ucc_factor, unitary, ExcitationOperator, JwConvention};

pub fn run_example() -> ucc_decomp::Result<()> {
    let m = 6;
    let conv = JwConvention::identity(m);
    let op = ExcitationOperator::new(vec![0, 1], vec![2, 5])?;
    let theta = 0.42;

    let c = synth_ucc_factor(&op, theta, &conv)?;
    let n = count_gates(&c);
    println!("{op} on {m} qubits: {} CNOT, {} RZ, {} Clifford", n.cnot, n.single_qubit_rotation, n.single_qubit_clifford);
    assert_eq!(n.cnot, 16 * (m - 1));

    let diff = max_abs_diff(&unitary(&c)?, &matrix_exponential_oracle(&op, theta, &conv)?);
    println!("max |U - exp(θG)| = {diff:.2e}");
    assert!(diff < 1e-11);

    let qasm = export_text(&c)?;
    for line in qasm.lines().take(12) {
        println!("{line}");
    }
    println!("... {} lines", qasm.lines().count());
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
