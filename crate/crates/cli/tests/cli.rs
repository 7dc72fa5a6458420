mod common;

use assert_cmd::Command;
use common::Fixtures;
use fibalg_core::dsl::CATALOG;
use serde_json::Value;

fn fibalg() -> Command {
    let mut c = Command::cargo_bin("fibalg").expect("binary");
    c.env_remove("FIBALG_SIZE_GUARD");
    c
}

fn json(args: &[&str]) -> (i32, Value) {
    let out = fibalg().args(args).arg("--json").output().expect("runs");
    let v: Value = serde_json::from_slice(&out.stdout).expect("json report");
    (out.status.code().expect("exit code"), v)
}

#[test]
fn check_chain3_has_no_diagnostics() {
    let fx = Fixtures::new();
    fibalg().args(["check", &fx.path("chain3")]).assert().code(0);
    let (code, r) = json(&["check", &fx.path("chain3")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    assert_eq!(r["diagnostics"].as_array().unwrap().len(), 0);
    assert_eq!(r["payload"]["entities"][0]["name"], "chain3");
}

#[test]
fn emitted_examples_check_from_stdin() {
    for e in CATALOG {
        let out = fibalg().args(["examples", "emit", e.name]).output().unwrap();
        assert!(out.status.success(), "emit {}", e.name);
        assert_eq!(String::from_utf8(out.stdout.clone()).unwrap(), e.text);
        fibalg().args(["check", "-"]).write_stdin(out.stdout).assert().code(0);
    }
}

#[test]
fn examples_list_names_the_catalog() {
    let (code, r) = json(&["examples", "list"]);
    assert_eq!(code, 0);
    let names: Vec<&str> = r["payload"]["examples"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    for want in [
        "chain3",
        "bool4",
        "writer_chain3",
        "coreader_bool4",
        "semiauto_m2",
        "codomain2",
        "points_splitepi",
        "groups",
    ] {
        assert!(names.contains(&want), "{want}");
    }
}

#[test]
fn recognize_codomain_is_pruned_but_not_em() {
    let fx = Fixtures::new();
    let (code, r) = json(&["recognize", "--fibration", "codomain2", &fx.path("codomain2")]);
    assert_eq!(code, 0);
    assert_eq!(r["status"], "ok");
    let p = &r["payload"];
    assert_eq!(p["pruned"]["pruned"]["holds"], true);
    assert_eq!(p["is_em"], false);
    assert_eq!(p["witness"]["counts"], serde_json::json!([3, 2]));
    let text = fibalg()
        .args(["recognize", "--fibration", "codomain2", &fx.path("codomain2")])
        .output()
        .unwrap();
    let text = String::from_utf8(text.stdout).unwrap();
    assert!(
        text.contains("pruned report") && text.contains("recognition result"),
        "{text}"
    );
}

#[test]
fn semidirect_inversion_is_s3() {
    let fx = Fixtures::new();
    let out = fibalg()
        .args(["semidirect", "--action", "z2_on_z3_inv", &fx.path("groups")])
        .output()
        .unwrap();
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("order 6"), "{text}");
    // header, rule and six rows
    assert_eq!(text.lines().filter(|l| l.starts_with('(')).count(), 6, "{text}");
    let (_, r) = json(&["semidirect", "--action", "z2_on_z3_inv", &fx.path("groups")]);
    assert_eq!(r["payload"]["iso_to"], "S3");
    assert_eq!(r["payload"]["order"], 6);
}

#[test]
fn total_and_compare_hat_on_writer() {
    let fx = Fixtures::new();
    let (_, r) = json(&[
        "total",
        "--param",
        "writer",
        "--flavor",
        "em",
        &fx.path("writer_chain3"),
    ]);
    assert_eq!(r["payload"]["objects"], 6);
    let (_, r) = json(&["compare-hat", "--param", "writer", &fx.path("writer_chain3")]);
    assert_eq!(r["payload"]["equivalence"]["holds"], true);
    assert_eq!(r["payload"]["hom_pairs_checked"], 36);
    assert_eq!(r["payload"]["hom_mismatches"].as_array().unwrap().len(), 0);
}

#[test]
fn verify_fib_reports_the_split_epi_witness_with_status_ok() {
    let fx = Fixtures::new();
    let (code, r) = json(&["verify-fib", "--total", "eval_1", &fx.path("points_splitepi")]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["verdict"]["holds"], false);
    assert_eq!(r["payload"]["verdict"]["witness"]["kind"], "no_cartesian_lift");
}

#[test]
fn swindle_worked_instance_and_cap() {
    let fx = Fixtures::new();
    let file = fx.path("swindle_chain3");
    let (code, r) = json(&["swindle", "--alpha", "alpha", "--algebra", "0__id_0", &file]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["stabilized_at"], 2);
    assert_eq!(r["payload"]["carrier"], "2");
    assert_eq!(r["payload"]["adjunction"]["holds"], true);
    let (code, r) = json(&[
        "swindle",
        "--alpha",
        "alpha",
        "--algebra",
        "0__id_0",
        "--cap",
        "1",
        &file,
    ]);
    assert_eq!(code, 4);
    assert_eq!(r["status"], "fail");
    assert_eq!(r["witness"]["kind"], "missing");
}

#[test]
fn limits_and_coproducts_agree_with_brute_force() {
    let fx = Fixtures::new();
    let (_, r) = json(&[
        "limits",
        "--total",
        "writer_em",
        "--diagram",
        "D",
        &fx.path("writer_limits"),
    ]);
    assert_eq!(r["payload"]["agrees"], true);
    assert_eq!(r["payload"]["created"]["apex"], "0__1__id_1");
    let (_, r) = json(&[
        "coproduct",
        "--total",
        "writer_em",
        "--left",
        "0__0__id_0",
        "--right",
        "1__1__id_1",
        &fx.path("writer_chain3"),
    ]);
    assert_eq!(r["payload"]["agrees"], true);
    assert_eq!(r["payload"]["linton"]["apex"], "1__1__id_1");
}

#[test]
fn reindex_moves_an_algebra_down() {
    let fx = Fixtures::new();
    let (code, r) = json(&[
        "reindex",
        "--param",
        "writer",
        "--along",
        "le_0_1",
        "--algebra",
        "1__2__id_2",
        &fx.path("writer_chain3"),
    ]);
    assert_eq!(code, 0);
    assert_eq!(r["payload"]["target"], "0__2__id_2");
}

#[test]
fn exit_codes_are_distinct() {
    let fx = Fixtures::new();
    let dir = fx.dir.path();
    let syntax = dir.join("syntax.fib");
    std::fs::write(&syntax, "category x { objects: a ").unwrap();
    let reference = dir.join("reference.fib");
    std::fs::write(&reference, "category x { objects: a; morphisms: f : a -> b; }").unwrap();
    let law = dir.join("law.fib");
    std::fs::write(
        &law,
        "category x { objects: a; morphisms: e : a -> a; compose: e = e . e; }\n\
         category y { objects: a; morphisms: g : a -> a; compose: id_a = g . g; }\n\
         functor F : x -> y { objects: a |-> a; morphisms: e |-> g; }",
    )
    .unwrap();
    // usage: missing flag, unknown subcommand, unknown entity
    fibalg().args(["limits", "--total", "t"]).assert().code(1);
    fibalg().arg("frobnicate").assert().code(1);
    fibalg()
        .args(["total", "--param", "nope", "--flavor", "em", &fx.path("writer_chain3")])
        .assert()
        .code(1);
    // parse
    fibalg().args(["check", syntax.to_str().unwrap()]).assert().code(2);
    // validation: dangling reference, law failure, unmet precondition
    fibalg().args(["check", reference.to_str().unwrap()]).assert().code(3);
    fibalg().args(["check", law.to_str().unwrap()]).assert().code(3);
    fibalg()
        .args([
            "limits",
            "--total",
            "writer_kl",
            "--diagram",
            "Id_chain3",
            &fx.path("writer_chain3"),
        ])
        .assert()
        .code(3);
    // construction: size guard
    fibalg()
        .env("FIBALG_SIZE_GUARD", "10")
        .args([
            "total",
            "--param",
            "writer",
            "--flavor",
            "em",
            &fx.path("writer_chain3"),
        ])
        .assert()
        .code(4);
    fibalg()
        .env("FIBALG_SIZE_GUARD", "zero")
        .args(["check", &fx.path("chain3")])
        .assert()
        .code(1);
    fibalg().arg("--help").assert().code(0);
}

#[test]
fn failure_reports_carry_diagnostics() {
    let fx = Fixtures::new();
    let bad = fx.dir.path().join("bad.fib");
    std::fs::write(&bad, "category x {\n  objects: a;\n  morphisms: f : a -> b;\n}\n").unwrap();
    let (code, r) = json(&["check", bad.to_str().unwrap()]);
    assert_eq!(code, 3);
    assert_eq!(r["status"], "fail");
    let d = &r["diagnostics"][0];
    assert_eq!(d["severity"], "reference");
    assert_eq!(d["line"], 3);
}
