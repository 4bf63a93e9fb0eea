use std::process::{Command, Output};

fn aal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_aal"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn excluded_middle() {
    let cpc = aal(&["consequence", "--logic", "cpc", "--phi", "or(x0,neg(x0))"]);
    assert_eq!(code(&cpc), 0);
    assert_eq!(stdout(&cpc).lines().next(), Some("true"));
    let ipc = aal(&["consequence", "--logic", "ipc", "--phi", "or(x0,neg(x0))"]);
    assert_eq!(code(&ipc), 0);
    assert_eq!(stdout(&ipc).lines().next(), Some("false"));
}

#[test]
fn premises_and_json() {
    let o = aal(&["consequence", "--logic", "ipc", "--gamma", "x0; imp(x0,x1)", "--phi", "x1", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["verdict"], true);
    assert_eq!(v["gamma"].as_array().unwrap().len(), 2);
}

#[test]
fn usage_and_parse_errors() {
    assert_eq!(code(&aal(&["consequence", "--logic", "cpc", "--phi", "or(x0,"])), 2);
    assert_eq!(code(&aal(&["consequence", "--logic", "cpc", "--phi", "frob(x0)"])), 2);
    assert_eq!(code(&aal(&["consequence", "--logic", "no_such_logic.json", "--phi", "x0"])), 2);
    assert_eq!(code(&aal(&["check", "unknown"])), 2);
    assert_eq!(code(&aal(&["check", "leibniz", "--algebra", "B2", "--filter", "7"])), 2);
    assert_eq!(code(&aal(&["glivenko", "--vars", "0"])), 2);
}

#[test]
fn peirce_instance() {
    let o = aal(&["glivenko", "--context", "classical_context.json", "--phi", "imp(imp(imp(x0,x1),x0),x0)"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("ρ[Γ′] ⊢ ρ(φ′): true"), "{out}");
    assert!(out.contains("Γ′ ⊢′ φ′: true"), "{out}");
    assert!(out.ends_with("result: agree\n"));
    assert!(out.contains("section equation: holds"), "{out}");
}

#[test]
fn identity_context_agrees() {
    let o = aal(&["glivenko", "--context", "identity_context.json", "--gamma", "x0", "--phi", "or(x0,x1)", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["agree"], true);
}

#[test]
fn sweep_is_exhaustive_and_reproducible() {
    let args = ["glivenko", "--vars", "2", "--depth", "1", "--gamma-size", "2", "--json"];
    let a = aal(&args);
    assert_eq!(code(&a), 0);
    let v: serde_json::Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["mode"], "exhaustive");
    assert_eq!(v["instances"], v["agreements"]);
    assert_eq!(v["bounds"]["depth"], 1);
    assert_eq!(a.stdout, aal(&args).stdout);
}

#[test]
fn bp_passes_and_bad_pair_fails() {
    let o = aal(&["check", "bp", "--logic", "cpc", "--pair", "cpc_pair.json"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).ends_with("overall: pass\n"));
    let bad = aal(&["check", "bp", "--logic", "cpc", "--pair", "bad_pair.json", "--json"]);
    assert_eq!(code(&bad), 1);
    let v: serde_json::Value = serde_json::from_slice(&bad.stdout).unwrap();
    let b = v["conditions"].as_array().unwrap().iter().find(|c| c["label"] == "b").unwrap();
    assert_eq!(b["passed"], false);
    assert!(b["witness"].is_object());
}

#[test]
fn adjoint_report() {
    let o = aal(&["check", "adjoint", "--algebra", "H3.json", "--context", "classical_context.json", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["regular_elements"], serde_json::json!([0, 2]));
    assert_eq!(v["dense_filter"], serde_json::json!([1, 2]));
    assert_eq!(v["section"], true);
    let text = stdout(&aal(&["check", "adjoint", "--algebra", "H3"]));
    assert!(text.contains("H_¬¬ ≅ H/F_H"));
}

#[test]
fn adjoint_rejects_non_heyting() {
    let o = aal(&["check", "adjoint", "--algebra", "L3"]);
    assert_eq!(code(&o), 1, "{}", stdout(&o));
}

#[test]
fn leibniz_on_b2_is_identity() {
    let o = aal(&["check", "leibniz", "--algebra", "B2.json", "--filter", "1", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["identity"], true);
    assert_eq!(v["reduced"], true);
    let h3 = aal(&["check", "leibniz", "--algebra", "H3", "--filter", "1,2", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&h3.stdout).unwrap();
    assert_eq!(v["blocks"], serde_json::json!([[0], [1, 2]]));
    assert_eq!(v["reduced"], false);
}

#[test]
fn institution_reports() {
    let clean = aal(&["check", "institution", "--seed", "7"]);
    assert_eq!(code(&clean), 0);
    let text = stdout(&clean);
    assert!(text.contains("10000 samples, seed 7"), "{text}");
    assert_eq!(text, stdout(&aal(&["check", "institution", "--seed", "7"])));
    let faulty = aal(&["check", "institution", "faulty_corpus.json", "--json"]);
    assert_eq!(code(&faulty), 1);
    let v: serde_json::Value = serde_json::from_slice(&faulty.stdout).unwrap();
    for r in v["reports"].as_array().unwrap() {
        assert!(r["violations"].as_u64().unwrap() > 0, "{}", r["institution"]);
    }
}

#[test]
fn lindenbaum_report_states_bounds() {
    let o = aal(&["check", "lindenbaum", "--logic", "cpc", "--vars", "1", "--depth", "2", "--json"]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["bounds"], serde_json::json!({"vars": 1, "depth": 2}));
    assert_eq!(v["outcome"]["result"], "pass");
}
