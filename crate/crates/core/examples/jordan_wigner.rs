// Jordan-Wigner images of ladder operators and of a spread-out double.

use ucc_decomp::{jw_generator, jw_ladder, ExcitationOperator, JwConvention};

pub fn run_example() -> ucc_decomp::Result<()> {
    let conv = JwConvention::identity(4);
    println!("a_1 = {:?}", jw_ladder(1, false, &conv)?.terms().iter().map(|t| t.to_string()).collect::<Vec<_>>());

    // Gaps between the orbitals fill with Z.
    let op: ExcitationOperator = "A[0,2->6,4]".parse()?;
    let g = jw_generator(&op, &JwConvention::identity(7))?;
    println!("generator of {op}: {} terms", g.len());
    for t in g.terms() {
        println!("  {t}");
    }

    // A permuted orbital-to-qubit map moves the strings and their Z chains.
    let mapped = JwConvention::with_mapping(vec![3, 0, 6, 1, 5, 2, 4])?;
    let g2 = jw_generator(&op, &mapped)?;
    println!("permuted mapping: {} terms, first {}", g2.len(), g2.terms()[0]);
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
