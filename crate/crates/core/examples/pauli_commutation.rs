// Anticommuting-index counts between the eight strings of a JW double.

use ucc_decomp::fermion::pairwise_commutation_report;
use ucc_decomp::{jw_generator, ExcitationOperator, JwConvention};

pub fn run_example() -> ucc_decomp::Result<()> {
    let op = ExcitationOperator::new(vec![0, 1], vec![3, 2])?;
    let g = jw_generator(&op, &JwConvention::identity(4))?;
    for t in g.terms() {
        println!("{t}");
    }
    let table = pairwise_commutation_report(&g);
    for row in &table {
        let cells: Vec<String> = row.iter().map(|k| k.to_string()).collect();
        println!("{}", cells.join(" "));
    }
    // Every count is even, so all eight rotations commute.
    assert!(table.iter().flatten().all(|k| k % 2 == 0));
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
