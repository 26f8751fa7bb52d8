// Decompose a quadruple into four doubles and one controlled double, then
// compare the compiled plan with the exact rank-4 factor.

use ucc_decomp::verify::verify_plan;
use ucc_decomp::{compile, DecompositionPlan, ExcitationOperator, JwConvention, Scheme};

pub fn run_example() -> ucc_decomp::Result<()> {
    let target: ExcitationOperator = "A[0,1,2,3->4,5,6,7]".parse()?;
    let plan = DecompositionPlan::new(Scheme::Quadruple, &target, 8)?;
    print!("{}", plan.to_text());

    let compiled = compile(&plan, 0.5, &JwConvention::identity(plan.total_qubits()))?;
    let n = compiled.counts();
    println!("{} qubits, {} CNOT, {} RZ", plan.total_qubits(), n.cnot, n.single_qubit_rotation);
    println!("step widths {:?}", compiled.block_widths());

    let report = verify_plan(&plan, 10, 3, 1)?;
    println!(
        "{} cases: max deviation {:.2e}, leakage {:.2e}",
        report.cases, report.max_deviation, report.max_leakage
    );
    assert!(report.passed());
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
