use std::process::Command as Proc;

use mahler_cli::file::ValueEntry;
use mahler_cli::{catalog, parse_system_file, print_system_file, run_command, CliError, Command, Options, Status};

fn bundled(name: &str) -> mahler_cli::SystemFile {
    parse_system_file(catalog::get(name).expect("bundled file")).expect("parses")
}

fn opts(system: &str, point: Option<&str>) -> Options {
    Options { system: Some(system.into()), point: point.map(String::from), ..Options::default() }
}

fn bin() -> Proc {
    Proc::new(env!("CARGO_BIN_EXE_mahler"))
}

#[test]
fn fredholm_file_parses_to_the_expected_system() {
    let f = bundled("fredholm");
    let s = f.system("fredholm").unwrap();
    assert_eq!(s.vars, vec!["z"]);
    assert_eq!(s.t.to_string_rows(), vec![vec!["2"]]);
    let a: Vec<Vec<String>> = (0..2).map(|i| s.a_input.row(i).iter().map(|x| x.to_string()).collect()).collect();
    assert_eq!(a, vec![vec!["1", "0"], vec!["z", "1"]]);
    assert_eq!(f.point("half").unwrap().point.to_strings(), vec!["1/2"]);
    assert_eq!(f.values[0].entries.len(), 3);
    assert!(matches!(&f.values[0].entries[0], ValueEntry::Component { index: 1, .. }));
}

#[test]
fn every_catalog_file_round_trips() {
    for (name, text) in catalog::FILES {
        let f = parse_system_file(text).unwrap_or_else(|e| panic!("{name}: {e}"));
        let printed = print_system_file(&f);
        let again = parse_system_file(&printed).unwrap_or_else(|e| panic!("{name} reprinted: {e}\n{printed}"));
        assert_eq!(f, again, "{name}");
        assert_eq!(printed, print_system_file(&again), "{name}");
    }
}

#[test]
fn ragged_transform_is_a_located_dimension_error() {
    let text = "[system s]\nvars = z1, z2\nT = [[1, 1], [1, 0, 2]]\nA[0][0] = 1\n";
    match parse_system_file(text) {
        Err(CliError::Dimension { line, col, .. }) => {
            assert_eq!(line, 3);
            assert_eq!(col, 15);
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn syntax_and_reference_errors() {
    assert!(matches!(parse_system_file("vars = z\n"), Err(CliError::Parse { line: 1, .. })));
    assert!(matches!(parse_system_file("[system s]\nvars = z\nT = [[2]]\nA[0][0] = 1 +\n"), Err(CliError::Parse { line: 4, .. })));
    assert!(matches!(parse_system_file("[widget w]\n"), Err(CliError::Parse { line: 1, .. })));
    let dangling = "[system s]\nvars = z\nT = [[2]]\nA[0][0] = 1\n[values v]\nentries = s[0]@nowhere\n";
    assert!(matches!(parse_system_file(dangling), Err(CliError::Undefined(_))));
    let bad_f0 = "[system s]\nvars = z\nT = [[2]]\nA[0][0] = 1\nf0 = 1, 2\n";
    assert!(matches!(parse_system_file(bad_f0), Err(CliError::Dimension { line: 5, .. })));
    let singular = "[system s]\nvars = z\nT = [[0]]\nA[0][0] = 1\n";
    assert!(matches!(parse_system_file(singular), Err(CliError::Invalid { line: 1, .. })));
}

#[test]
fn backward_orientation_is_converted_and_printed_as_written() {
    let text = "[system s]\nvars = z\nT = [[2]]\nA[0][0] = 1 - z\norientation = backward\n";
    let f = parse_system_file(text).unwrap();
    let s = f.system("s").unwrap();
    assert!(s.system.converted_from_backward());
    assert_eq!(s.system.a().get(0, 0).to_string(), "-1/(z - 1)");
    assert!(print_system_file(&f).contains("orientation = backward"));
    assert_eq!(parse_system_file(&print_system_file(&f)).unwrap(), f);
}

#[test]
fn class_m_on_fibonacci() {
    let r = run_command(Command::ClassM, &bundled("fib"), &opts("fib", None)).unwrap();
    assert_eq!(r.status, Status::Affirmative);
    assert_eq!(r.verdict, "in-class-m");
}

#[test]
fn diagonal_pair_is_rejected_with_witness() {
    let r = run_command(Command::Admissible, &bundled("diag22"), &opts("diag22", Some("p"))).unwrap();
    assert_eq!(r.status, Status::Negative);
    let ind = &r.evidence["t_independence"];
    assert_eq!(ind["mu"], serde_json::json!(["2", "-1"]));
    assert_eq!(ind["orbit_checks_passed"], 20);
    let ok = run_command(Command::Admissible, &bundled("diag22"), &opts("diag22", Some("q"))).unwrap();
    assert_eq!(ok.status, Status::Affirmative);
}

#[test]
fn eval_reports_value_and_bound() {
    let mut o = opts("fredholm", Some("half"));
    o.digits = Some(30);
    let r = run_command(Command::Eval, &bundled("fredholm"), &o).unwrap();
    assert_eq!(r.status, Status::Affirmative);
    let v = r.evidence["values"][1]["value"].as_str().unwrap();
    assert!(v.starts_with("0.8164215090218931437080797375"), "{v}");
    assert_eq!(r.evidence["values"][0]["exact"], "1");
}

#[test]
fn regularity_verdicts() {
    let f = bundled("pole");
    let bad = run_command(Command::RegularPoint, &f, &opts("pole", Some("minus_one"))).unwrap();
    assert_eq!((bad.status, bad.verdict.as_str()), (Status::Negative, "not-regular(0)"));
    let good = run_command(Command::RegularPoint, &f, &opts("pole", Some("half"))).unwrap();
    assert_eq!(good.status, Status::Affirmative);
}

#[test]
fn relation_lift_and_purity_commands() {
    let f = bundled("fredholm");
    let o = Options { values: Some("fredholm_pair".into()), digits: Some(60), ..Options::default() };
    let r = run_command(Command::Relations, &f, &o).unwrap();
    assert_eq!(r.evidence["relations"][0]["coeffs"], serde_json::json!(["2", "-2", "-1"]));

    let f = bundled("lift");
    let mut o = opts("fredholm_step", Some("half"));
    o.relation = Some("step".into());
    let r = run_command(Command::Lift, &f, &o).unwrap();
    assert_eq!(r.status, Status::Affirmative);
    assert_eq!(r.evidence["z_degree"], 1);

    let f = bundled("purity");
    let yes = run_command(Command::Purity, &f, &Options { purity: Some("product".into()), ..Options::default() }).unwrap();
    assert_eq!(yes.status, Status::Affirmative);
    assert_eq!(yes.evidence["generators_checked_numerically"], true);
    let no = run_command(Command::Purity, &f, &Options { purity: Some("perturbed".into()), ..Options::default() }).unwrap();
    assert_eq!(no.status, Status::Unknown);
}

#[test]
fn lift_bound_exhaustion_is_unknown() {
    let f = bundled("lift");
    let mut o = opts("fredholm_step", Some("half"));
    o.relation = Some("step".into());
    o.degree = Some(0);
    let r = run_command(Command::Lift, &f, &o).unwrap();
    assert_eq!((r.status, r.verdict.as_str()), (Status::Unknown, "not-found"));
}

#[test]
fn multi_system_commands() {
    let f = bundled("multiseq");
    let o = Options { system: Some("fredholm,fredholm3".into()), l_max: Some(200), ..Options::default() };
    assert_eq!(run_command(Command::Theta, &f, &o).unwrap().status, Status::Affirmative);
    let r = run_command(Command::IterateVectors, &f, &o).unwrap();
    assert_eq!((r.status, r.evidence["count"].as_u64()), (Status::Affirmative, Some(200)));
    let p = run_command(Command::Probe, &f, &Options { probe: Some("diagonal".into()), ..Options::default() }).unwrap();
    assert_eq!(p.evidence["zero_set"], serde_json::json!([]));
    let k = run_command(Command::KronPower, &bundled("fredholm"), &Options { degree: Some(2), ..opts("fredholm", None) }).unwrap();
    assert_eq!(k.evidence["det_law"], true);
    assert_eq!(k.evidence["mixed_product_law"], true);
}

#[test]
fn missing_selection_is_a_usage_error() {
    let e = run_command(Command::Eval, &bundled("fredholm"), &Options::default()).unwrap_err();
    assert_eq!(e.status(), Status::InputError);
}

#[test]
fn binary_exit_statuses() {
    let dir = std::env::temp_dir().join(format!("mahler-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cases: &[(&[&str], i32)] = &[
        (&["check", "class-m", "--system", "fib", "catalog:fib"], 0),
        (&["check", "admissible", "--system", "diag22", "--point", "p", "catalog:diag22"], 1),
        (&["lift", "--system", "fredholm_step", "--point", "half", "--relation", "step", "--degree", "0", "catalog:lift"], 2),
        (&["eval", "--system", "nope", "--point", "half", "catalog:fredholm"], 3),
        (&["frobnicate", "catalog:fredholm"], 3),
        (&["eval", "catalog:does-not-exist"], 3),
    ];
    for (args, code) in cases {
        let out = bin().args(*args).output().unwrap();
        assert_eq!(out.status.code(), Some(*code), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let path = dir.join("fredholm.msys");
    std::fs::write(&path, catalog::get("fredholm").unwrap()).unwrap();
    let json = dir.join("eval.json");
    let out = bin()
        .args(["eval", "--system", "fredholm", "--point", "half", "--digits", "30", "--json"])
        .arg(&json)
        .arg(&path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("0.816421509021893143708079737531"));
    let report: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(report["format"], "mahler-report/1");
    assert_eq!(report["status"], 0);
    std::fs::remove_dir_all(&dir).unwrap();
}
