use super::*;
use crate::fixtures::build;

fn diags(src: &str) -> Vec<Diagnostic> {
    parse(src).expect_err("diagnostics expected")
}

fn assert_spans_slice(src: &str, ds: &[Diagnostic]) {
    for d in ds {
        assert!(d.span.offset + d.span.length <= src.len());
        let line_start = src[..d.span.offset].rfind('\n').map_or(0, |i| i + 1);
        assert_eq!(d.span.line, src[..d.span.offset].matches('\n').count() + 1);
        assert_eq!(d.span.column, src[line_start..d.span.offset].chars().count() + 1);
    }
}

#[test]
fn one_object_category_has_its_identity() {
    let ws = parse("category C { objects: a; }").unwrap();
    let c = ws.category("C").unwrap();
    assert_eq!(c.num_objects(), 1);
    assert_eq!(c.morphism_records()[0].id, "id_a");
}

#[test]
fn empty_workspace_serializes_to_nothing() {
    let ws = parse("  // nothing here\n").unwrap();
    assert!(ws.is_empty());
    assert_eq!(serialize(&ws), "");
}

#[test]
fn undeclared_object_is_reported_at_its_token() {
    let src = "category C {\n  objects: a;\n  morphisms:\n    f : a -> b;\n}";
    let ds = diags(src);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].severity, Severity::Reference);
    assert_eq!(ds[0].span.slice(src), "b");
    assert_eq!((ds[0].span.line, ds[0].span.column), (4, 14));
    assert_spans_slice(src, &ds);
}

#[test]
fn incomplete_table_is_reported_at_the_category_name() {
    let src = "category C { objects: a, b, c; morphisms: f : a -> b; g : b -> c; }";
    let ds = diags(src);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].severity, Severity::Validation);
    assert_eq!(ds[0].span.slice(src), "C");
    assert!(ds[0].message.contains("`g . f`"), "{}", ds[0].message);
}

#[test]
fn law_violations_are_validation_diagnostics() {
    // g . f is declared as f: the typing law fails
    let src = "category C { objects: a, b, c; morphisms: f : a -> b; g : b -> c; compose: f = g . f; }";
    let ds = diags(src);
    assert_eq!(ds[0].severity, Severity::Validation);
    assert!(ds[0].message.contains("CompositeTyping"), "{}", ds[0].message);
    // a functor that forgets composites
    let src = "category C { objects: a, b, c; morphisms: f : a -> b; g : b -> c; h : a -> c; compose: h = g . f; }
               category D { objects: x; morphisms: s : x -> x; compose: id_x = s . s; }
               functor F : C -> D { objects: a |-> x; b |-> x; c |-> x; morphisms: f |-> s; g |-> s; h |-> s; }";
    let ds = diags(src);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].span.slice(src), "F");
    assert!(ds[0].message.contains("PreservesComposite"), "{}", ds[0].message);
}

#[test]
fn severities_are_distinct() {
    assert_eq!(diags("category C { objects: a; } $")[0].severity, Severity::Lexical);
    assert_eq!(diags("category C { objects a; }")[0].severity, Severity::Syntax);
    assert_eq!(diags("functor F : C -> C { }")[0].severity, Severity::Reference);
    assert_eq!(
        diags("group G { elements: e, a; row e: e, a; row a: a, a; }")[0].severity,
        Severity::Validation
    );
}

#[test]
fn references_resolve_in_any_order_and_cycles_are_reported() {
    let src = "functor F : C -> C { objects: a |-> a; }\ncategory C { objects: a; }";
    let ws = parse(src).unwrap();
    // dependencies come first
    assert_eq!(ws.entries()[0].name, "C");
    let src = "total T of P as em;\nparammonad P : T * T { }";
    let ds = diags(src);
    assert!(ds.iter().any(|d| d.message.contains("cyclic")), "{ds:?}");
    assert_spans_slice(src, &ds);
}

#[test]
fn duplicate_names_are_reported() {
    let src = "category C { objects: a; }\ncategory C { objects: b; }";
    let ds = diags(src);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].span.line, 2);
    assert_eq!(ds[0].span.slice(src), "C");
}

#[test]
fn wrong_kind_of_reference() {
    let src = "group G { elements: e; row e: e; }\nfunctor F : G -> G { }";
    let ds = diags(src);
    assert!(
        ds[0].message.contains("is a group, expected a category"),
        "{}",
        ds[0].message
    );
    assert_eq!(ds[0].span.slice(src), "G");
}

#[test]
fn identity_functor_and_composites_in_transformations() {
    let src = "category C { objects: a, b; morphisms: f : a -> b; }
               functor K : C -> C { objects: a |-> b; b |-> b; morphisms: f |-> id_b; }
               nat u : Id_C => K { at a: f; at b: id_b; }
               nat m : K . K => K { at a: id_b; at b: id_b; }
               monad M on C { functor: K; unit: u; mult: m; }";
    let ws = parse(src).unwrap();
    assert!(ws.monad("M").unwrap().check().is_empty());
    let again = parse(&serialize(&ws)).unwrap();
    assert!(again == ws);
}

#[test]
fn serialization_is_idempotent_on_the_catalog() {
    for e in CATALOG {
        let ws = parse(e.text).unwrap();
        let once = serialize(&ws);
        assert_eq!(serialize(&parse(&once).unwrap()), once, "{}", e.name);
    }
}

#[test]
fn whitespace_and_comments_do_not_matter() {
    let a = parse("category C{objects:a,b;morphisms:f:a->b;}").unwrap();
    let b = parse("// c\ncategory   C {\n objects: a ,\n b ; // x\n morphisms:\n  f : a\n -> b ;\n}\n").unwrap();
    assert!(a == b);
}

#[test]
fn chain3_file_matches_the_fixture() {
    let ws = parse(entry("chain3").unwrap().text).unwrap();
    assert_eq!(**ws.category("chain3").unwrap(), build::chain(3));
}

#[test]
fn totals_and_actions_load() {
    let ws = parse(entry("writer_chain3").unwrap().text).unwrap();
    assert_eq!(ws.total("writer_em").unwrap().cat.num_objects(), 6);
    let ws = parse(entry("groups").unwrap().text).unwrap();
    let a = ws.action("z2_on_z3_inv").unwrap();
    assert_eq!(crate::algkit::semidirect(a).unwrap().order(), 6);
}

#[test]
fn broken_action_reports_the_law() {
    // psi(1, -) is not an endomorphism of Z3
    let src = "group Z2 { elements: 0, 1; row 0: 0, 1; row 1: 1, 0; }
               group Z3 { elements: 0, 1, 2; row 0: 0, 1, 2; row 1: 1, 2, 0; row 2: 2, 0, 1; }
               action bad : Z2 on Z3 { act 0: 0, 1, 2; act 1: 0, 0, 2; }";
    let ds = diags(src);
    assert_eq!(ds.len(), 1);
    assert_eq!(ds[0].span.slice(src), "bad");
    assert!(ds[0].message.contains("Action"), "{}", ds[0].message);
}

#[test]
fn spans_slice_to_offending_tokens_on_mutations() {
    let base = entry("codomain2").unwrap().text;
    let mutations = [
        base.replacen("chain1;", "chain9;", 1),
        base.replacen("le_0_1 |-> id_0", "le_0_1 |-> id_7", 1),
        base.replacen("1 |-> 0;", "1 |-> q;", 1),
        base.replacen("pb_le_0_1;", "pb_missing;", 1),
        base.replacen("0 |-> 0;", "0 |-> 0 |;", 1),
    ];
    for src in &mutations {
        let ds = diags(src);
        assert!(!ds.is_empty());
        assert_spans_slice(src, &ds);
        for d in &ds {
            let tok = d.span.slice(src);
            assert!(
                ["chain9", "id_7", "q", "pb_missing", "|"].contains(&tok),
                "{tok:?} for {}",
                d.message
            );
        }
    }
}
