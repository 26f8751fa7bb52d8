use ucc_decomp::resources::{
    crossover, crossover_for_rank, decomposed_cnot_formula, decomposed_counts, emit_sweep_csv, traditional_counts,
    Crossover, SWEEP_HEADER,
};
use ucc_decomp::Scheme;

#[test]
fn traditional_closed_form() {
    for rank in 1..=6 {
        for m in 2 * rank..=40 {
            let n = traditional_counts(rank, m).unwrap();
            assert_eq!(n.cnot, (1 << (2 * rank)) * (m - 1));
            assert_eq!(n.single_qubit_rotation, 1 << (2 * rank - 1));
        }
    }
    assert!(traditional_counts(7, 20).is_err());
}

#[test]
fn quadruple_formula() {
    for m in 8..=64 {
        let d = decomposed_counts(Scheme::Quadruple, m).unwrap();
        assert_eq!(d.worst_case.cnot, 80 * m + 208);
        assert_eq!(decomposed_cnot_formula(Scheme::Quadruple, m).unwrap(), 80 * m + 208);
        assert!(d.synthesized.cnot <= d.worst_case.cnot);
    }
}

#[test]
fn triple_formula_and_crossover() {
    for m in 6..=40 {
        let decomposed = decomposed_cnot_formula(Scheme::Triple, m).unwrap();
        assert_eq!(decomposed, 56 * m + 88);
        let traditional = traditional_counts(3, m).unwrap().cnot;
        if m <= 18 {
            assert!(traditional < decomposed, "M={m}");
        }
    }
    assert_eq!(crossover(Scheme::Triple).unwrap(), Crossover::At(20));
}

#[test]
fn crossovers() {
    assert_eq!(crossover(Scheme::Quadruple).unwrap(), Crossover::At(3));
    assert_eq!(crossover_for_rank(1).unwrap(), Crossover::Never);
    assert_eq!(crossover_for_rank(2).unwrap(), Crossover::Never);
    assert_eq!(crossover_for_rank(4).unwrap(), Crossover::At(3));
    for scheme in [Scheme::Quintuple, Scheme::Sextuple24, Scheme::Sextuple33] {
        assert!(matches!(crossover(scheme).unwrap(), Crossover::Always | Crossover::At(_)));
    }
}

#[test]
fn sextuple_33_is_cheaper() {
    for m in [12, 20, 64] {
        let a = decomposed_cnot_formula(Scheme::Sextuple24, m).unwrap();
        let b = decomposed_cnot_formula(Scheme::Sextuple33, m).unwrap();
        assert!(b < a, "M={m}");
    }
}

#[test]
fn sweep_csv() {
    let csv = emit_sweep_csv(&[3, 4, 5, 6], 8..=20).unwrap();
    assert_eq!(csv, emit_sweep_csv(&[3, 4, 5, 6], 8..=20).unwrap());
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some(SWEEP_HEADER));
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().all(|r| r.len() == 10));
    let quad10 = rows.iter().find(|r| r[0] == "4" && r[1] == "10").unwrap();
    assert_eq!((quad10[2], quad10[3], quad10[4]), ("quadruple", "2304", "1008"));
    // Each (scheme) series grows with M.
    for w in rows.windows(2) {
        if w[0][2] == w[1][2] {
            for col in [3, 4, 5] {
                assert!(w[1][col].parse::<usize>().unwrap() > w[0][col].parse::<usize>().unwrap());
            }
        }
    }
    // Rank 6 only starts at M = 12.
    assert!(rows.iter().filter(|r| r[0] == "6").all(|r| r[1].parse::<usize>().unwrap() >= 12));
    assert!(emit_sweep_csv(&[9], 8..=9).is_err());
}
