// Lower multi-controlled RZ gates and a doubly controlled double.

use ucc_decomp::controlled::{mcrz_cnot_cost, mcrz_single_qubit_cost};
use ucc_decomp::{
    count_gates, lower_all, lower_mcrz, synth_controlled_ucc, ControlledFactorSpec, ExcitationOperator, Gate,
    JwConvention,
};

pub fn run_example() -> ucc_decomp::Result<()> {
    for k in 1..=4 {
        let g = Gate::Mcrz { controls: (1..=k).collect(), target: 0, angle: 0.3 };
        let n = count_gates(&lower_mcrz(&g, k + 1)?);
        println!("k={k}: {} CNOT, {} RZ", n.cnot, n.single_qubit_rotation);
        assert_eq!(n.cnot, mcrz_cnot_cost(k));
        assert_eq!(n.single_qubit_rotation, mcrz_single_qubit_cost(k));
    }

    // η₁η₂ → x z, controlled on w and y, as in the quadruple scheme.
    let conv = JwConvention::identity(12);
    let spec = ControlledFactorSpec {
        controls: vec![4, 6],
        op: ExcitationOperator::new(vec![8, 9], vec![5, 7])?,
        theta: 0.8,
        copy_ancillas: vec![10, 11],
    };
    let c = synth_controlled_ucc(&spec, &conv)?;
    let before = count_gates(&c);
    let after = count_gates(&lower_all(&c)?);
    println!(
        "controlled double: {} MCRZ and {} CNOT before lowering, {} CNOT after",
        before.multi_controlled_rotation, before.cnot, after.cnot
    );
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
