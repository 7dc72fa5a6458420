use std::fmt::Write as _;

use super::workspace::{Entity, Workspace};
use crate::fincat::{FinCategory, FunctorData, Mor};

fn non_identities(c: &FinCategory) -> impl Iterator<Item = Mor> + '_ {
    c.morphisms().filter(move |&f| !c.is_identity(f))
}

fn category(out: &mut String, name: &str, c: &FinCategory) {
    let _ = writeln!(out, "category {name} {{");
    if c.num_objects() > 0 {
        let _ = writeln!(out, "  objects: {};", c.object_ids().join(", "));
    }
    if non_identities(c).next().is_some() {
        out.push_str("  morphisms:\n");
        for f in non_identities(c) {
            let _ = writeln!(
                out,
                "    {} : {} -> {};",
                c.mor_id(f),
                c.ob_id(c.src(f)),
                c.ob_id(c.dst(f))
            );
        }
    }
    let mut compose = String::new();
    for g in non_identities(c) {
        for f in non_identities(c) {
            if let Some(h) = c.try_compose(g, f) {
                let _ = writeln!(compose, "    {} = {} . {};", c.mor_id(h), c.mor_id(g), c.mor_id(f));
            }
        }
    }
    if !compose.is_empty() {
        out.push_str("  compose:\n");
        out.push_str(&compose);
    }
    out.push_str("}\n");
}

fn functor(out: &mut String, name: &str, dom: &str, cod: &str, f: &FunctorData) {
    let (c, e) = (&f.dom, &f.cod);
    let _ = writeln!(out, "functor {name} : {dom} -> {cod} {{");
    if c.num_objects() > 0 {
        out.push_str("  objects:\n");
        for o in c.objects() {
            let _ = writeln!(out, "    {} |-> {};", c.ob_id(o), e.ob_id(f.ob(o)));
        }
    }
    if non_identities(c).next().is_some() {
        out.push_str("  morphisms:\n");
        for m in non_identities(c) {
            let _ = writeln!(out, "    {} |-> {};", c.mor_id(m), e.mor_id(f.mor(m)));
        }
    }
    out.push_str("}\n");
}

fn indexed(out: &mut String, c: &FinCategory, at: &[String], along: &[Option<String>]) {
    for o in c.objects() {
        let _ = writeln!(out, "  at {}: {};", c.ob_id(o), at[o.0]);
    }
    for f in c.morphisms() {
        if let Some(n) = &along[f.0] {
            let _ = writeln!(out, "  along {}: {n};", c.mor_id(f));
        }
    }
}

fn table(out: &mut String, word: &str, keys: &[String], vals: &[String], entry: impl Fn(usize, usize) -> usize) {
    for (i, k) in keys.iter().enumerate() {
        let row: Vec<&str> = (0..vals.len()).map(|j| vals[entry(i, j)].as_str()).collect();
        let _ = writeln!(out, "  {word} {k}: {};", row.join(", "));
    }
}

/// Canonical text: entities in workspace (dependency) order separated by a
/// blank line, one member per line.
pub fn serialize(w: &Workspace) -> String {
    let mut out = String::new();
    for (i, e) in w.entries().iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let name = e.name.as_str();
        match &e.entity {
            Entity::Category(c) => category(&mut out, name, c),
            Entity::Functor { dom, cod, data } => functor(&mut out, name, dom, cod, data),
            Entity::Nat { source, target, data } => {
                let _ = writeln!(out, "nat {name} : {} => {} {{", source.join(" . "), target.join(" . "));
                let (c, d) = (&data.source.dom, &data.source.cod);
                for o in c.objects() {
                    let _ = writeln!(out, "  at {}: {};", c.ob_id(o), d.mor_id(data.at(o)));
                }
                out.push_str("}\n");
            }
            Entity::Monad {
                on,
                functor,
                unit,
                mult,
                ..
            } => {
                let _ = write!(
                    out,
                    "monad {name} on {on} {{\n  functor: {functor};\n  unit: {unit};\n  mult: {mult};\n}}\n"
                );
            }
            Entity::Comonad {
                on,
                functor,
                counit,
                comult,
                ..
            } => {
                let _ = write!(
                    out,
                    "comonad {name} on {on} {{\n  functor: {functor};\n  counit: {counit};\n  comult: {comult};\n}}\n"
                );
            }
            Entity::Param {
                params,
                carriers,
                at,
                along,
                data,
            } => {
                let _ = writeln!(out, "{} {name} : {params} * {carriers} {{", data.kind().keyword());
                indexed(&mut out, data.params(), at, along);
                out.push_str("}\n");
            }
            Entity::Fibration { base, at, along, data } => {
                let _ = writeln!(out, "fibration {name} over {base} {{");
                indexed(&mut out, &data.base, at, along);
                out.push_str("}\n");
            }
            Entity::Total { of, flavor, .. } => {
                let _ = writeln!(out, "total {name} of {of} as {};", flavor.as_str());
            }
            Entity::Monoid(_) | Entity::Group(_) => {
                let m = e.entity.as_monoid().expect("monoid");
                let _ = writeln!(out, "{} {name} {{", e.entity.keyword());
                let _ = writeln!(out, "  elements: {};", m.elements.join(", "));
                table(&mut out, "row", &m.elements, &m.elements, |i, j| m.mul(i, j));
                out.push_str("}\n");
            }
            Entity::Action { acting, on, data } => {
                let _ = writeln!(out, "action {name} : {acting} on {on} {{");
                table(&mut out, "act", &data.g.elements, &data.h.elements, |i, j| {
                    data.act(i, j)
                });
                out.push_str("}\n");
            }
        }
    }
    out
}
