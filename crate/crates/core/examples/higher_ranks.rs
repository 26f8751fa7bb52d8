// Triple, quintuple and the two sextuple schemes.

use ucc_decomp::verify::verify_plan;
use ucc_decomp::{DecompositionPlan, ExcitationOperator, Scheme};

pub fn run_example() -> ucc_decomp::Result<()> {
    for scheme in [Scheme::Triple, Scheme::Quintuple, Scheme::Sextuple24, Scheme::Sextuple33] {
        let n = scheme.rank();
        let target = ExcitationOperator::new((0..n).collect(), (n..2 * n).collect())?;
        let plan = DecompositionPlan::new(scheme, &target, 2 * n)?;
        println!("{}", plan.to_text().lines().next().unwrap_or_default());
        // A couple of states keep the 18-qubit cases quick.
        let report = verify_plan(&plan, 2, 1, 3)?;
        println!("  {} qubits, max deviation {:.2e}", report.n_qubits, report.max_deviation);
        assert!(report.passed());
    }
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
