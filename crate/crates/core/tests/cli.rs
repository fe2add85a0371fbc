use std::path::PathBuf;
use std::process::{Command, Output};

use sqfree::lab::report::parse_structured;

fn spec(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "data", "specs", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn sqfree(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sqfree"))
        .args(args)
        .env_remove("SQFREE_SEED")
        .output()
        .expect("binary runs")
}

fn structured(args: &[&str]) -> Vec<(String, String)> {
    let mut all = args.to_vec();
    all.extend(["--format", "structured"]);
    let out = sqfree(&all);
    parse_structured(&String::from_utf8(out.stdout).unwrap()).unwrap()
}

fn get<'a>(kv: &'a [(String, String)], key: &str) -> &'a str {
    kv.iter()
        .find(|(k, _)| k == key)
        .map(|(_, v)| v.as_str())
        .unwrap_or_else(|| panic!("missing key {key}"))
}

fn find_suffix<'a>(kv: &'a [(String, String)], suffix: &str) -> Vec<(&'a str, &'a str)> {
    kv.iter()
        .filter(|(k, _)| k.ends_with(suffix))
        .map(|(k, v)| (k.as_str(), v.as_str()))
        .collect()
}

#[test]
fn separating_submonoid_square_roots() {
    let sep = spec("separation.spec");
    let out = sqfree(&["submonoid", &sep, "--check", "1.4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Refuted"), "{text}");
    let kv = structured(&["submonoid", &sep, "--check", "1.4"]);
    let kinds = find_suffix(&kv, ".kind");
    assert_eq!(kinds.len(), 1);
    let key = kinds[0].0.trim_end_matches(".kind");
    assert_eq!(kinds[0].1, "Refuted");
    assert_eq!(get(&kv, &format!("{key}.witness[0]")), "(1,0,0)");
    assert_eq!(get(&kv, &format!("{key}.witness[1]")), "(0,1,1)");
}

#[test]
fn count_witness() {
    let kv = structured(&["count", "--witness", "4"]);
    let values: Vec<&str> = kv.iter().map(|(_, v)| v.as_str()).collect();
    assert!(values.iter().any(|v| v.contains("count=4")), "{kv:?}");
    assert!(
        values.iter().any(|v| v.contains("shifted_numerical")),
        "{kv:?}"
    );
}

#[test]
fn analyze_nge2() {
    let kv = structured(&["analyze", &spec("nge2.spec"), "--bound", "12"]);
    let atoms: Vec<&str> = kv
        .iter()
        .filter(|(k, _)| k.starts_with("elements.atoms["))
        .map(|(_, v)| v.as_str())
        .collect();
    assert_eq!(atoms, ["2", "3"], "{kv:?}");
    let decomposition: Vec<_> = find_suffix(&kv, "decomposition.kind");
    assert_eq!(decomposition.len(), 1, "{kv:?}");
    assert_eq!(decomposition[0].1, "Refuted");
}

#[test]
fn structured_reports_are_byte_identical() {
    for args in [
        vec![
            "analyze".to_string(),
            spec("bpq12.spec"),
            "--bound".into(),
            "3".into(),
        ],
        vec!["classify".to_string(), spec("free2.spec")],
        vec![
            "search".to_string(),
            "--samples".into(),
            "6".into(),
            "--bound".into(),
            "3".into(),
        ],
    ] {
        let mut args: Vec<&str> = args.iter().map(String::as_str).collect();
        args.extend(["--format", "structured"]);
        let a = sqfree(&args);
        let b = sqfree(&args);
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn text_and_structured_agree_on_verdicts() {
    let args = ["classify", &spec("nge2.spec"), "--bound", "10"];
    let text = String::from_utf8(sqfree(&args).stdout).unwrap();
    let kv = structured(&args);
    for (_, kind) in find_suffix(&kv, ".kind") {
        assert!(text.contains(kind), "{kind} missing from text output");
    }
    let kinds = find_suffix(&kv, ".kind").len();
    let verdict_lines = text
        .lines()
        .filter(|l| {
            [
                "Proven",
                "Refuted",
                "FoundWitness",
                "NotFoundUpTo",
                "UnknownUpTo",
            ]
            .iter()
            .any(|k| l.contains(k))
        })
        .count();
    assert_eq!(kinds, verdict_lines, "{text}");
}

#[test]
fn seed_comes_from_the_environment() {
    let args = [
        "search",
        "--samples",
        "4",
        "--bound",
        "3",
        "--format",
        "structured",
    ];
    let default = sqfree(&args);
    let env = Command::new(env!("CARGO_BIN_EXE_sqfree"))
        .args(args)
        .env("SQFREE_SEED", "77")
        .output()
        .unwrap();
    let flag = sqfree(&[&args[..], &["--seed", "77"]].concat());
    assert_eq!(env.stdout, flag.stdout);
    let seed = |o: &Output| {
        let kv = parse_structured(&String::from_utf8_lossy(&o.stdout)).unwrap();
        get(&kv, "meta.seed").to_string()
    };
    assert_eq!(seed(&env), "77");
    assert_ne!(seed(&default), "77");
}

#[test]
fn factor_and_inline_specs() {
    let out = sqfree(&[
        "factor",
        "family = free_commutative { rank = 2 }",
        "(3,1)",
        "--scheme",
        "iv",
        "--format",
        "structured",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let kv = parse_structured(&String::from_utf8(out.stdout).unwrap()).unwrap();
    assert_eq!(get(&kv, "result.factorization"), "(1,1) * (1,0)^2");
    assert_eq!(get(&kv, "result.parts[0]"), "(1,1)");
    assert_eq!(get(&kv, "result.parts[1]"), "(1,0)");
    assert_eq!(get(&kv, "result.verify.kind"), "Proven");
}

#[test]
fn catalog_is_green_and_reports_to_a_file() {
    let dir = std::env::temp_dir().join(format!("sqfree-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("catalog.report");
    let out = sqfree(&[
        "catalog",
        "--format",
        "structured",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let kv = parse_structured(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(get(&kv, "failures.len"), "0");
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(sqfree(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        sqfree(&["analyze", "family = nope {}"]).status.code(),
        Some(2)
    );
    assert_eq!(
        sqfree(&["submonoid", &spec("nge2.spec"), "--check", "1.1"])
            .status
            .code(),
        Some(2)
    );
}
