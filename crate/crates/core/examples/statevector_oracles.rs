// The determinant-pair factor against two independent oracles.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use ucc_decomp::sim::{apply_matrix, deviation, expm_action_oracle, matrix_exponential_oracle};
use ucc_decomp::{ExcitationOperator, JwConvention, StateVector};

pub fn run_example() -> ucc_decomp::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);

    let conv = JwConvention::identity(6);
    let op: ExcitationOperator = "A[0,3,4->1,2,5]".parse()?;
    let input = StateVector::random(6, &mut rng)?;
    let mut fast = input.clone();
    fast.apply_ucc_factor_exact(&op, 1.1, &conv)?;
    let dense = apply_matrix(&matrix_exponential_oracle(&op, 1.1, &conv)?, &input);
    println!("6 qubits, dense exponential: {:.2e}", deviation(&fast, &dense));

    // Too large for a dense matrix; the sparse Taylor action stands in.
    let conv = JwConvention::identity(13);
    let op: ExcitationOperator = "A[0,5,9,12->1,2,7,11]".parse()?;
    let input = StateVector::random(13, &mut rng)?;
    let mut fast = input.clone();
    fast.apply_ucc_factor_exact(&op, -0.6, &conv)?;
    let action = expm_action_oracle(&op, -0.6, &conv, &input)?;
    println!("13 qubits, sparse action: {:.2e}", deviation(&fast, &action));

    let mut small = StateVector::from_determinants(4, &[(0b0011, 1.0.into())])?;
    small.apply_ucc_factor_exact(&"A[0,1->2,3]".parse()?, 0.3, &JwConvention::identity(4))?;
    print!("{}", small.dump());
    Ok(())
}

fn main() -> ucc_decomp::Result<()> {
    run_example()
}
