macro_rules! example {
    ($module:ident, $file:literal) => {
        #[allow(dead_code)]
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $module() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(pauli_commutation, "pauli_commutation.rs");
example!(jordan_wigner, "jordan_wigner.rs");
example!(synth_double, "synth_double.rs");
example!(controlled_rotation, "controlled_rotation.rs");
example!(quadruple_decomposition, "quadruple_decomposition.rs");
example!(higher_ranks, "higher_ranks.rs");
example!(failure_exhibits, "failure_exhibits.rs");
example!(gate_count_sweep, "gate_count_sweep.rs");
example!(statevector_oracles, "statevector_oracles.rs");
example!(orbital_orderings, "orbital_orderings.rs");
