use ucc_decomp::cli::{run_with_output, EXIT_CAP, EXIT_OK, EXIT_PARSE, EXIT_SEMANTIC, EXIT_VERIFY_FAILED};

fn run(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let mut argv = vec!["uccdecomp"];
    argv.extend_from_slice(args);
    let code = run_with_output(argv, &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn synth_prints_circuit_and_counts() {
    let (code, out) = run(&["synth", "A[0,1->2,3]", "--theta", "-0.5"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("OPENQASM 2.0;"));
    assert!(out.ends_with("cnot=48 rot=8 clifford=64 mcrz=0\n"), "{out}");
}

#[test]
fn decompose_reports_counts() {
    let (code, out) = run(&["decompose", "quad", "A[0,1,2,3->4,5,6,7]", "--orbitals", "10", "--theta", "0.3"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.starts_with("# plan quadruple"));
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("decomposed_cnot=1008 traditional_cnot=2304 synthesized_cnot="), "{last}");
    assert!(last.ends_with("qubits=14"));
}

#[test]
fn verify_outcomes() {
    let (code, out) = run(&["verify", "quad", "--trials", "4", "--thetas", "2", "--seed", "7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("result=pass"));

    let (code, out) = run(&["verify", "naive-quad", "--trials", "4", "--thetas", "2"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("result=fail"));

    let (code, out) = run(&["verify", "uncontrolled-quad", "--trials", "4", "--thetas", "2"]);
    assert_eq!(code, EXIT_VERIFY_FAILED);
    assert!(out.contains("ac_eta1_eta2=-0.707106781187"), "{out}");

    let (code, out) = run(&["verify", "A[0,2->1,4]", "--trials", "3", "--thetas", "2"]);
    assert_eq!(code, EXIT_OK);
    assert!(out.contains("qubits=5"));
}

#[test]
fn verify_orderings() {
    let (code, out) = run(&["verify", "triple", "--trials", "2", "--thetas", "1", "--orderings", "--random-orderings", "1"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(out.lines().filter(|l| l.starts_with("ordering=")).count(), 6);
}

#[test]
fn error_codes() {
    assert_eq!(run(&["verify", "bogus"]).0, EXIT_PARSE);
    assert_eq!(run(&["synth", "A[0,1"]).0, EXIT_PARSE);
    assert_eq!(run(&["synth"]).0, EXIT_PARSE);
    assert_eq!(run(&["frobnicate"]).0, EXIT_PARSE);
    assert_eq!(run(&["synth", "A[0,1->1,2]"]).0, EXIT_SEMANTIC);
    assert_eq!(run(&["decompose", "triple", "A[0,1,2,3->4,5,6,7]"]).0, EXIT_SEMANTIC);
    assert_eq!(run(&["sweep", "--ranks", "9"]).0, EXIT_SEMANTIC);
    assert_eq!(run(&["verify", "quad", "--orbitals", "16"]).0, EXIT_CAP);
    assert_eq!(run(&["verify", "A[0->19]"]).0, EXIT_CAP);
}

#[test]
fn sweep_is_deterministic() {
    let a = run(&["sweep", "--ranks", "4", "--m-min", "8", "--m-max", "12"]);
    let b = run(&["sweep", "--ranks", "4", "--m-min", "8", "--m-max", "12"]);
    assert_eq!(a, b);
    assert_eq!(a.0, EXIT_OK);
    assert_eq!(a.1.lines().count(), 6);
}

#[test]
fn outputs_are_written_to_files() {
    let dir = std::env::temp_dir().join(format!("uccdecomp-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let circuit = dir.join("c.qasm");
    let plan = dir.join("p.txt");
    let (code, out) = run(&[
        "decompose",
        "triple",
        "A[0,1,2->3,4,5]",
        "--out",
        circuit.to_str().unwrap(),
        "--plan",
        plan.to_str().unwrap(),
    ]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(out.lines().count(), 1);
    let text = std::fs::read_to_string(&circuit).unwrap();
    assert!(ucc_decomp::import_text(&text).is_ok());
    let listing = std::fs::read_to_string(&plan).unwrap();
    assert!(ucc_decomp::DecompositionPlan::from_text(&listing).is_ok());
    std::fs::remove_dir_all(&dir).unwrap();
}
