use super::*;
use crate::steenrod::Op;

fn run_on(cat: &Catalog, command: Command, id: &str) -> crate::Result<Report> {
    run(cat, command, id, None, &Options::default())
}

fn value(r: &Report, name: &str) -> String {
    plain(r.get(name).unwrap_or_else(|| panic!("no field {name}")))
}

const SMALL: &str = "
version: 3

entry: pt
prime: 2
source: F_2[x]
[ring]
x 1
[rector]
trivial 0 central :
Z2 1 central : u1
";

#[test]
fn operations_parse_in_both_spellings() {
    assert_eq!(parse_op("Sq3"), Some(Op::Sq(3)));
    assert_eq!(parse_op("Sq^3"), Some(Op::Sq(3)));
    assert_eq!(parse_op("P1"), Some(Op::P(1)));
    assert_eq!(parse_op("beta"), Some(Op::Beta));
    assert_eq!(parse_op("Q1"), None);
}

#[test]
fn small_catalog_parses() {
    let cat = Catalog::parse(SMALL).unwrap();
    assert_eq!(cat.version, 3);
    let e = cat.get("pt").unwrap();
    assert_eq!(e.pairs.len(), 2);
    assert_eq!(e.center_pair().unwrap().rank, 1);
    assert!(matches!(cat.get("nope"), Err(crate::Error::MissingData(_))));
}

#[test]
fn malformed_catalogs_name_the_line() {
    let cases = [
        ("entry: a\nprime: 2\n", "missing version"),
        ("version: 1\n[ring]\n", "section outside an entry"),
        ("version: 1\nentry: a\nprime: 2\n[ring]\nx one\n", "line 5"),
        ("version: 1\nentry: a\nprime: 2\ncolour: red\n", "unknown key"),
        ("version: 1\nentry: a\nprime: 4\n", "line 3"),
        ("version: 1\nentry: a\nprime: 2\n[ring]\nx 1\n[steenrod]\nSq1 y = x^2\n", "unknown generator"),
        ("version: 1\nentry: a\nprime: 2\n[ring]\nx 1\n[rector]\nZ 1 sort-of : u1\n", "central or noncentral"),
        ("version: 1\nentry: a\nprime: 2\n[ring]\nx 1\n[rector]\nZ 1 central : u1, u1\n", "2 images for 1"),
        ("version: 1\nentry: a\nprime: 2\n[relations]\nx\n", "needs a [ring]"),
        ("version: 1\nentry: a\nprime: 2\nentry: a\nprime: 2\n", "duplicate entry"),
    ];
    for (text, needle) in cases {
        let e = Catalog::parse(text).unwrap_err().to_string();
        assert!(e.contains(needle), "{e:?} should mention {needle:?}");
    }
}

#[test]
fn builtin_catalog_validates() {
    let cat = Catalog::builtin();
    let report = validate_catalog(&cat, &Options::default());
    assert!(report.passed(), "{}", report.render_text());
    assert!(cat.entries.iter().all(|e| !e.source.is_empty()));
}

#[test]
fn corrupted_steenrod_table_fails_with_an_instability_witness() {
    let text = format!("{SMALL}\nentry: bad\nprime: 2\nsource: corrupted\n[ring]\nx 1, w 2\n[steenrod]\nSq3 w = x*w\n");
    let cat = Catalog::parse(&text).unwrap();
    let report = validate_catalog(&cat, &Options::default());
    assert!(!report.passed());
    let failures = report.failures();
    let (id, check) = failures.iter().find(|(_, c)| c.name == "steenrod axioms").unwrap();
    assert_eq!(*id, "bad");
    assert!(check.detail.contains("instability violated: sq^3(w)"), "{}", check.detail);
}

#[test]
fn hilbert_series_disagreeing_with_betti_numbers_fails() {
    let text = SMALL.replace("source: F_2[x]", "group: E2^2\nsource: F_2[x]");
    let cat = Catalog::parse(&text).unwrap();
    let report = validate_catalog(&cat, &Options::default());
    let failures = report.failures();
    assert!(failures.iter().any(|(_, c)| c.name == "betti numbers" && c.detail.contains("degree 1")));
    assert!(failures.iter().any(|(_, c)| c.name == "quillen category"));
}

#[test]
fn missing_components_and_bad_flags_fail() {
    let missing = "version: 1\nentry: sq\nprime: 2\n[ring]\nx 1, z 1\n[relations]\nx*z\nz^2\n[rector]\ntrivial 0 central :\nZ2 1 noncentral : u1, 0\n";
    let report = validate_catalog(&Catalog::parse(missing).unwrap(), &Options::default());
    assert!(report.failures().iter().any(|(_, c)| c.name == "components" && c.detail.contains("no component")));

    let unclosed = "version: 1\nentry: v\nprime: 2\n[ring]\nu1 1, u2 1\n[rector]\ntrivial 0 noncentral :\nV 2 central : u1, u2\n";
    let report = validate_catalog(&Catalog::parse(unclosed).unwrap(), &Options::default());
    assert!(report.failures().iter().any(|(_, c)| c.name == "centrality"));
}

#[test]
fn thorough_validation_catches_a_missing_pair() {
    let text = "version: 1\nentry: v\nprime: 2\n[ring]\nu1 1, u2 1\n[rector]\ntrivial 0 central :\nL1 1 central : u1, 0\nV 2 central : u1, u2\n";
    let cat = Catalog::parse(text).unwrap();
    let quick = validate_catalog(&cat, &Options::default());
    assert!(quick.failures().iter().all(|(_, c)| c.name != "rector enumeration"));
    let thorough = validate_catalog(&cat, &Options { thorough: true, ..Options::default() });
    assert!(thorough.failures().iter().any(|(_, c)| c.name == "rector enumeration"));
}

#[test]
fn reports_for_the_documented_examples() {
    let cat = Catalog::builtin();
    let r = run(&cat, Command::D0Bound, "sigma3", Some(2), &Options::default()).unwrap();
    assert_eq!(value(&r, "upper_bound"), "0");
    assert_eq!(value(&r, "certificate"), "defect 0, e=0, reg=0");
    let r = run(&cat, Command::D0Calc, "s2", Some(3), &Options::default()).unwrap();
    assert_eq!(value(&r, "d0_interval"), "[2,2]");
    let r = run(&cat, Command::Defect, "q8", Some(2), &Options::default()).unwrap();
    assert_eq!(value(&r, "defect"), "0");
    assert_eq!(value(&run_on(&cat, Command::Defect, "d8").unwrap(), "defect"), "1");
    assert_eq!(value(&run_on(&cat, Command::D0Calc, "gl2").unwrap(), "d0_interval"), "[1,2]");
    assert_eq!(value(&run_on(&cat, Command::D0Bound, "gl2").unwrap(), "upper_bound"), "2");
    assert_eq!(value(&run_on(&cat, Command::Cess, "s21").unwrap(), "cess"), "0");
    assert_eq!(value(&run_on(&cat, Command::HSpace, "s3_3conn").unwrap(), "upper_bound"), "5");
    assert_eq!(value(&run_on(&cat, Command::Center, "sigma3").unwrap(), "center_rank"), "1");
    let inv = run_on(&cat, Command::Invariants, "inv-swap").unwrap();
    assert_eq!(value(&inv, "generator_degrees"), "[1, 2]");
}

#[test]
fn every_field_has_a_route() {
    let cat = Catalog::builtin();
    for command in Command::ALL {
        let target = match command {
            Command::HSpace => "bs1",
            Command::Invariants => "inv-swap",
            Command::D0Calc => "gl2",
            _ => "q8",
        };
        let r = run_on(&cat, command, target).unwrap();
        assert!(!r.fields.is_empty());
        assert!(r.fields.iter().all(|f| !f.route.is_empty()), "{}", command.name());
        assert_eq!(r.schema, REPORT_SCHEMA);
    }
}

#[test]
fn calculus_accepts_bare_expressions() {
    let cat = Catalog::builtin();
    let r = run_on(&cat, Command::D0Calc, "tensor(h_zp, lambda_e)").unwrap();
    assert_eq!(value(&r, "d0_interval"), "[1,1]");
    assert!(matches!(run_on(&cat, Command::D0Calc, "tensor(nothing)"), Err(crate::Error::MissingData(_))));
}

#[test]
fn errors_map_to_exit_codes() {
    let cat = Catalog::builtin();
    let missing = run(&cat, Command::Defect, "q8", Some(3), &Options::default()).unwrap_err();
    assert_eq!(exit_code(&missing), EXIT_MISSING);
    assert_eq!(exit_code(&run_on(&cat, Command::D0Bound, "inv-swap").unwrap_err()), EXIT_MISSING);
    assert_eq!(exit_code(&crate::Error::CrossCheck("x".into())), EXIT_CROSS_CHECK);
    assert_eq!(exit_code(&crate::Error::Inconsistent("x".into())), EXIT_VALIDATION);
    assert_eq!(exit_code(&run_on(&cat, Command::HSpace, "d8").unwrap_err()), EXIT_VALIDATION);
}

#[test]
fn wrong_declared_center_is_a_cross_check_failure() {
    let text = SMALL.replace("source: F_2[x]", "center: trivial\nsource: F_2[x]");
    let cat = Catalog::parse(&text).unwrap();
    let e = run_on(&cat, Command::Center, "pt").unwrap_err();
    assert_eq!(exit_code(&e), EXIT_CROSS_CHECK);
}

#[test]
fn output_is_deterministic_and_json_round_trips() {
    let cat = Catalog::builtin();
    let a = run_on(&cat, Command::Cess, "d8").unwrap().render_json();
    let b = run_on(&cat, Command::Cess, "d8").unwrap().render_json();
    assert_eq!(a, b);
    let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(parsed["schema"], REPORT_SCHEMA);
    assert_eq!(parsed["catalog_version"], 1);
    assert!(parsed["fields"].as_array().unwrap().iter().all(|f| f["route"].is_string()));
}

#[test]
fn command_line_parsing() {
    let cli = Cli::try_parse_from(["tnd", "d0-bound", "sigma3", "--p", "2", "--json"]).unwrap();
    assert!(cli.json);
    assert_eq!(cli.p, Some(2));
    let out = execute(&cli);
    assert_eq!(out.code, EXIT_OK);
    assert!(out.stdout.contains("\"upper_bound\""));
    let cli = Cli::try_parse_from(["tnd", "hspace", "bs1"]).unwrap();
    assert!(execute(&cli).stdout.contains("poincare_dimension"));
    let cli = Cli::try_parse_from(["tnd", "--catalog", "/nonexistent/catalog.txt", "list"]).unwrap();
    assert_eq!(execute(&cli).code, EXIT_MISSING);
}
