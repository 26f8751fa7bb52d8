// The quadruple scheme under different placements of its eight orbitals.

use ucc_decomp::verify::ordering_sweep;
use ucc_decomp::Scheme;

pub fn run_example() -> ucc_decomp::Result<()> {
    for (o, r) in ordering_sweep(Scheme::Quadruple, 3, 4, 2, 11)? {
        println!(
            "{:<26} occ {:?} virt {:?}: deviation {:.2e}",
            o.label, o.occupied, o.virtual_, r.max_deviation
        );
        assert!(r.passed());
    }
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
