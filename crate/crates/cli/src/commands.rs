//! Subcommand implementations: each returns a typed payload and a readable
//! rendering.

use std::fmt::Write as _;

use fibalg_core::algkit::{check_semidirect_adjunction, find_isomorphism, monoid_semidirect, FinGroup};
use fibalg_core::dsl::{self, Entity, ParamData, Workspace};
use fibalg_core::fincat::construct::pair_id;
use fibalg_core::fincat::{colimit, limit, shapes, Cone, FinCategory, FunctorData, Mor, Ob};
use fibalg_core::grothfib::{
    em_hat_comparison, reindex as reindex_algebra, verify_fibration, Fibration, Flavor, Variance,
};
use fibalg_core::limcolim::{limit_in_total, linton_coproduct, swindle_left_adjoint, verify_swindle};
use fibalg_core::monadkit::{algebra_id, AlgebraObject, ParamMonadData};
use fibalg_core::recognize::{AsFibration, Pipeline};
use fibalg_core::WitnessKind;
use serde::Serialize;

use crate::payload::*;
use crate::{Code, Done, Failure};

fn done<P: Serialize>(payload: &P, human: String) -> Result<Done, Failure> {
    Ok(Done {
        payload: serde_json::to_value(payload).expect("payload serializes"),
        human,
        fail: None,
    })
}

fn verdict_line(v: &VerdictOut) -> String {
    match &v.witness {
        None if v.holds => "holds".into(),
        None => "fails".into(),
        Some(w) => format!("fails ({}: {})", w.kind, w.detail),
    }
}

/// Source text and workspace of a file, or of stdin for `-`.
pub fn load(file: &str, stdin: &mut dyn FnMut() -> std::io::Result<String>) -> Result<(String, Workspace), Failure> {
    let src = if file == "-" {
        stdin().map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?
    } else {
        std::fs::read_to_string(file).map_err(|e| Failure::usage(format!("cannot read `{file}`: {e}")))?
    };
    let ws = dsl::parse(&src).map_err(|d| Failure::parse(&d))?;
    Ok((src, ws))
}

fn param_monad<'a>(ws: &'a Workspace, name: &str) -> Result<&'a ParamMonadData, Failure> {
    match ws.param(name).map_err(Failure::usage)? {
        ParamData::Monad(p) => Ok(p),
        other => Err(Failure::message(
            Code::Validation,
            "validation",
            format!("`{name}` is a {}, expected a parammonad", other.kind().keyword()),
        )),
    }
}

fn object(c: &FinCategory, id: &str, what: &str) -> Result<Ob, Failure> {
    c.ob(id)
        .ok_or_else(|| Failure::usage(format!("`{id}` is not an object of {what} `{}`", c.name())))
}

fn cone_out(shape: &FinCategory, c: &FinCategory, cone: &Cone) -> ConeOut {
    let ids = cone.ids(shape, c);
    ConeOut {
        apex: ids.apex,
        legs: ids
            .legs
            .into_iter()
            .map(|(node, morphism)| Leg { node, morphism })
            .collect(),
    }
}

/// Both absent, or an invertible `u` between apexes with `leg_b . u = leg_a`
/// (cones) or `u . leg_a = leg_b` (cocones).
fn agree(c: &FinCategory, a: &Option<Cone>, b: &Option<Cone>, cocone: bool) -> bool {
    match (a, b) {
        (None, None) => true,
        (Some(x), Some(y)) => c.hom(x.apex, y.apex).iter().any(|&u| {
            c.is_iso(u).is_some()
                && x.legs.iter().zip(&y.legs).all(|(&l1, &l2)| {
                    if cocone {
                        c.compose(u, l1) == l2
                    } else {
                        c.compose(l2, u) == l1
                    }
                })
        }),
        _ => false,
    }
}

fn describe(e: &Entity) -> String {
    match e {
        Entity::Category(c) => format!("{} objects, {} morphisms", c.num_objects(), c.num_morphisms()),
        Entity::Functor { dom, cod, .. } => format!("{dom} -> {cod}"),
        Entity::Nat { source, target, .. } => format!("{} => {}", source.join(" . "), target.join(" . ")),
        Entity::Monad { on, functor, .. } | Entity::Comonad { on, functor, .. } => format!("{functor} on {on}"),
        Entity::Param { params, carriers, .. } => format!("{params} * {carriers}"),
        Entity::Fibration { base, at, .. } => format!("over {base}, {} fibres", at.len()),
        Entity::Total { of, flavor, data } => format!(
            "{} of {of}: {} objects, {} morphisms",
            flavor.as_str(),
            data.cat.num_objects(),
            data.cat.num_morphisms()
        ),
        Entity::Monoid(m) => format!("order {}", m.order()),
        Entity::Group(g) => format!("order {}", g.order()),
        Entity::Action { acting, on, .. } => format!("{acting} on {on}"),
    }
}

pub fn check(loaded: &(String, Workspace), file: &str) -> Result<Done, Failure> {
    let ws = &loaded.1;
    let entities: Vec<EntitySummary> = ws
        .entries()
        .iter()
        .map(|e| EntitySummary {
            name: e.name.clone(),
            kind: e.entity.keyword().to_string(),
            summary: describe(&e.entity),
        })
        .collect();
    let mut human = format!("{file}: ok, {} declarations\n", entities.len());
    for e in &entities {
        let _ = writeln!(human, "  {} {}: {}", e.kind, e.name, e.summary);
    }
    done(
        &CheckPayload {
            file: file.to_string(),
            entities,
        },
        human,
    )
}

pub fn total(ws: &Workspace, param: &str, flavor: &str) -> Result<Done, Failure> {
    let p = ws.param(param).map_err(Failure::usage)?;
    let flavor = Flavor::parse(flavor).ok_or_else(|| Failure::usage(format!("unknown flavor `{flavor}`")))?;
    let t = p.total(flavor)?;
    let a = &t.params;
    let payload = TotalPayload {
        param: param.to_string(),
        flavor: flavor.as_str().to_string(),
        variance: format!("{:?}", flavor.variance()).to_lowercase(),
        objects: t.cat.num_objects(),
        morphisms: t.cat.num_morphisms(),
        object_ids: t.cat.object_ids().to_vec(),
        fibres: a
            .objects()
            .map(|o| FibreCount {
                param: a.ob_id(o).to_string(),
                objects: t.over(o).len(),
            })
            .collect(),
    };
    let mut human = format!(
        "{} total of {param}: {} objects, {} morphisms ({})\n",
        payload.flavor, payload.objects, payload.morphisms, payload.variance
    );
    for f in &payload.fibres {
        let _ = writeln!(human, "  over {}: {} objects", f.param, f.objects);
    }
    let _ = writeln!(human, "  objects: {}", payload.object_ids.join(", "));
    done(&payload, human)
}

pub fn reindex(ws: &Workspace, param: &str, along: &str, algebra: &str) -> Result<Done, Failure> {
    let p = param_monad(ws, param)?;
    let (a, x) = (&p.params, &p.carriers);
    let f = a
        .mor(along)
        .ok_or_else(|| Failure::usage(format!("`{along}` is not a morphism of `{}`", a.name())))?;
    let t = ws.param(param).map_err(Failure::usage)?.total(Flavor::Em)?;
    let prefixed = pair_id(a.ob_id(a.dst(f)), algebra);
    let src = t
        .cat
        .ob(algebra)
        .filter(|&o| t.payload(o).param == a.dst(f))
        .or_else(|| t.cat.ob(&prefixed))
        .ok_or_else(|| {
            Failure::usage(format!(
                "`{algebra}` is not an algebra over `{}`, the codomain of `{along}`",
                a.ob_id(a.dst(f))
            ))
        })?;
    let o = t.payload(src);
    let alg = AlgebraObject {
        param: o.param,
        carrier: o.carrier,
        xi: o.xi.expect("EM object"),
    };
    let r = reindex_algebra(p, f, &alg)?;
    let target = t.algebra(r.param, r.carrier, r.xi).ok_or_else(|| {
        Failure::from(fibalg_core::Error::Construction(
            "reindexed algebra is not in the total".into(),
        ))
    })?;
    let payload = ReindexPayload {
        param: param.to_string(),
        along: along.to_string(),
        source: t.cat.ob_id(src).to_string(),
        target: t.cat.ob_id(target).to_string(),
        target_param: a.ob_id(r.param).to_string(),
        target_carrier: x.ob_id(r.carrier).to_string(),
        target_structure: x.mor_id(r.xi).to_string(),
    };
    let human = format!("{along}^* {} = {}\n", payload.source, payload.target);
    done(&payload, human)
}

/// A fibration candidate named by a total, a split fibration or a functor,
/// with its kind and default variance.
fn candidate(ws: &Workspace, name: &str) -> Result<(Fibration, &'static str, Variance), Failure> {
    let e = ws.get(name).map(|e| &e.entity);
    match e {
        Some(Entity::Total { data, flavor, .. }) => Ok((data.fibration(), "total", flavor.variance())),
        Some(Entity::Fibration { data, .. }) => Ok((data.as_fibration()?, "fibration", Variance::Fibration)),
        _ => {
            let f = ws.functor(name).map_err(|m| {
                Failure::usage(match e {
                    Some(other) => format!(
                        "`{name}` is a {}, expected a total, fibration or functor",
                        other.keyword()
                    ),
                    None => m,
                })
            })?;
            Ok((Fibration::new(name, f), "functor", Variance::Fibration))
        }
    }
}

pub fn verify_fib(ws: &Workspace, name: &str, variance: Option<&str>) -> Result<Done, Failure> {
    let (fib, kind, default) = candidate(ws, name)?;
    let variance = match variance {
        Some("opfibration") => Variance::Opfibration,
        Some(_) => Variance::Fibration,
        None => default,
    };
    let check = verify_fibration(&fib, variance);
    let payload = VerifyFibPayload {
        entity: name.to_string(),
        kind: kind.to_string(),
        variance: format!("{variance:?}").to_lowercase(),
        total_objects: fib.total().num_objects(),
        base_objects: fib.base().num_objects(),
        verdict: VerdictOut::from(&check.verdict),
        lifts: check.cleavage.len(),
    };
    let human = format!(
        "{kind} {name} as {}: {}\n  {} lifts over {} base objects\n",
        payload.variance,
        verdict_line(&payload.verdict),
        payload.lifts,
        payload.base_objects
    );
    done(&payload, human)
}

pub fn compare_hat(ws: &Workspace, param: &str) -> Result<Done, Failure> {
    let p = param_monad(ws, param)?;
    let hc = em_hat_comparison(p)?;
    let (e, em) = (&hc.total.cat, &hc.em.cat);
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for s in e.objects() {
        for t in e.objects() {
            checked += 1;
            let (n, m) = (e.hom(s, t).len(), em.hom(hc.functor.ob(s), hc.functor.ob(t)).len());
            if n != m {
                mismatches.push(HomCount {
                    source: e.ob_id(s).to_string(),
                    target: e.ob_id(t).to_string(),
                    total: n,
                    em: m,
                });
            }
        }
    }
    let payload = CompareHatPayload {
        param: param.to_string(),
        total_objects: e.num_objects(),
        em_objects: em.num_objects(),
        equivalence: VerdictOut::from(&hc.verdict),
        hom_pairs_checked: checked,
        hom_mismatches: mismatches,
    };
    let human = format!(
        "EM total of {param} ({} objects) vs EM of the product monad ({} objects): {}\n  hom-set cardinalities: {} pairs, {} mismatches\n",
        payload.total_objects,
        payload.em_objects,
        verdict_line(&payload.equivalence),
        checked,
        payload.hom_mismatches.len()
    );
    done(&payload, human)
}

fn cone_line(c: &Option<ConeOut>) -> String {
    match c {
        None => "none".into(),
        Some(c) => {
            let legs: Vec<String> = c.legs.iter().map(|l| format!("{}: {}", l.node, l.morphism)).collect();
            format!("{} [{}]", c.apex, legs.join(", "))
        }
    }
}

pub fn limits(ws: &Workspace, total: &str, diagram: &str) -> Result<Done, Failure> {
    let t = ws.total(total).map_err(Failure::usage)?;
    let d: FunctorData = ws.functor(diagram).map_err(Failure::usage)?;
    let created = limit_in_total(t, &d)?;
    let brute = limit(&d)?;
    let payload = LimitsPayload {
        total: total.to_string(),
        diagram: diagram.to_string(),
        nodes: d.dom.num_objects(),
        created: created.as_ref().map(|c| cone_out(&d.dom, &t.cat, c)),
        brute_force: brute.as_ref().map(|c| cone_out(&d.dom, &t.cat, c)),
        agrees: agree(&t.cat, &created, &brute, false),
    };
    let human = format!(
        "limit of {diagram} in {total}\n  created:     {}\n  brute force: {}\n  agree: {}\n",
        cone_line(&payload.created),
        cone_line(&payload.brute_force),
        payload.agrees
    );
    done(&payload, human)
}

pub fn coproduct(ws: &Workspace, total: &str, left: &str, right: &str) -> Result<Done, Failure> {
    let t = ws.total(total).map_err(Failure::usage)?;
    let Some(Entity::Total { of, .. }) = ws.get(total).map(|e| &e.entity) else {
        return Err(Failure::usage(format!("`{total}` is not a total")));
    };
    let p = param_monad(ws, of)?;
    let (e1, e2) = (object(&t.cat, left, "total")?, object(&t.cat, right, "total")?);
    let linton = linton_coproduct(p, t, e1, e2)?;
    let d = shapes::diagram(&shapes::discrete(2), &t.cat, &[e1, e2], &[])?;
    let brute = colimit(&d)?;
    let out = |c: &Cone| ConeOut {
        apex: t.cat.ob_id(c.apex).to_string(),
        legs: [left, right]
            .iter()
            .zip(&c.legs)
            .map(|(n, &m)| Leg {
                node: n.to_string(),
                morphism: t.cat.mor_id(m).to_string(),
            })
            .collect(),
    };
    let payload = CoproductPayload {
        total: total.to_string(),
        left: left.to_string(),
        right: right.to_string(),
        linton: linton.as_ref().map(out),
        brute_force: brute.as_ref().map(out),
        agrees: agree(&t.cat, &linton, &brute, true),
    };
    let human = format!(
        "{left} + {right} in {total}\n  linton:      {}\n  brute force: {}\n  agree: {}\n",
        cone_line(&payload.linton),
        cone_line(&payload.brute_force),
        payload.agrees
    );
    done(&payload, human)
}

pub fn swindle(ws: &Workspace, alpha_name: &str, algebra: &str, cap: usize) -> Result<Done, Failure> {
    let alpha = ws.nat(alpha_name).map_err(Failure::usage)?;
    let f = &alpha.source;
    let x = &f.cod;
    let found: Option<(Ob, Mor)> = x.objects().find_map(|c| {
        x.hom(f.ob(c), c)
            .iter()
            .find(|&&m| algebra_id(x, c, m) == algebra)
            .map(|&m| (c, m))
    });
    let (carrier, xi) =
        found.ok_or_else(|| Failure::usage(format!("`{algebra}` is not an algebra `X__xi` of `{}`", f.name)))?;
    let trace = swindle_left_adjoint(alpha, carrier, xi, cap)?;
    let verdict = verify_swindle(alpha, carrier, xi, &trace);
    let lines = trace.lines(x);
    let payload = SwindlePayload {
        alpha: alpha_name.to_string(),
        algebra: algebra.to_string(),
        cap,
        steps: trace
            .chain
            .iter()
            .map(|s| SwindleStepOut {
                object: x.ob_id(s.object).to_string(),
                link: x.mor_id(s.link).to_string(),
                leg: x.mor_id(s.leg).to_string(),
            })
            .collect(),
        stabilized_at: trace.stabilized_at,
        carrier: trace.result.map(|(p, _)| x.ob_id(p).to_string()),
        structure: trace.result.map(|(_, z)| x.mor_id(z).to_string()),
        unit: trace.unit.map(|u| x.mor_id(u).to_string()),
        adjunction: VerdictOut::from(&verdict),
        lines,
    };
    let mut human = String::new();
    for l in &payload.lines {
        let _ = writeln!(human, "{l}");
    }
    let _ = writeln!(human, "adjunction: {}", verdict_line(&payload.adjunction));
    let fail = trace.stabilized_at.is_none().then(|| {
        let w = fibalg_core::Witness::new(WitnessKind::Missing, format!("no invertible link within cap {cap}"));
        (Code::Construction, WitnessOut::from(&w))
    });
    Ok(Done {
        payload: serde_json::to_value(&payload).expect("payload serializes"),
        human,
        fail,
    })
}

fn pruned_out(s: &fibalg_core::recognize::PrunedSummary) -> PrunedOut {
    PrunedOut {
        has_initial_base: (&s.has_initial_base).into(),
        fibrewise_initials: s
            .fibrewise_initials
            .iter()
            .map(|(n, v)| NamedVerdict {
                name: n.clone(),
                verdict: v.into(),
            })
            .collect(),
        p_left_adjoint: (&s.p_left_adjoint).into(),
        required_coproducts: s
            .required_coproducts
            .iter()
            .map(|c| RequiredCoproductOut {
                param: c.param.clone(),
                initial_fibre_object: c.initial_fibre_object.clone(),
                apex: c.apex.clone(),
                base_iso: c.base_iso.clone(),
                verdict: (&c.verdict).into(),
            })
            .collect(),
        p_preserves_them: (&s.p_preserves_them).into(),
        fibrewise_terminals_preserved: (&s.fibrewise_terminals_preserved).into(),
        pruned: (&s.pruned).into(),
    }
}

pub fn recognize(ws: &Workspace, name: &str, dual: bool) -> Result<Done, Failure> {
    let (fib, _, variance) = candidate(ws, name)?;
    let dual = dual || variance == Variance::Opfibration;
    let pipe = if dual {
        Pipeline::dual(&fib)?
    } else {
        Pipeline::primal(&fib)?
    };
    let report = pipe.check_pruned()?;
    let pruned = report.pruned();
    let payload = if pruned.holds() {
        let res = pipe.comparison_unit()?;
        let s = res.summary();
        RecognizePayload {
            fibration: name.to_string(),
            dual: s.dual,
            pruned: pruned_out(&s.pruned),
            t_p: s.t_p,
            trivial_at_initial: Some((&res.trivial_at_initial()).into()),
            triangle: Some((&s.triangle).into()),
            is_em: s.is_em,
            witness: s.witness.as_ref().map(WitnessOut::from),
        }
    } else {
        RecognizePayload {
            fibration: name.to_string(),
            dual,
            pruned: pruned_out(&report.summary()),
            t_p: Vec::new(),
            trivial_at_initial: None,
            triangle: None,
            is_em: false,
            witness: pruned.witness().map(WitnessOut::from),
        }
    };
    let p = &payload.pruned;
    let mut human = format!("recognize {name}{}\n", if dual { " (dual)" } else { "" });
    let _ = writeln!(human, "pruned report");
    let _ = writeln!(
        human,
        "  initial base:             {}",
        verdict_line(&p.has_initial_base)
    );
    for n in &p.fibrewise_initials {
        let _ = writeln!(
            human,
            "  initial in fibre {:<8} {}",
            format!("{}:", n.name),
            verdict_line(&n.verdict)
        );
    }
    let _ = writeln!(human, "  p_L full and faithful:    {}", verdict_line(&p.p_left_adjoint));
    for c in &p.required_coproducts {
        let _ = writeln!(
            human,
            "  empty_{} + {}: {} ({})",
            c.param,
            c.initial_fibre_object,
            c.apex.as_deref().unwrap_or("none"),
            verdict_line(&c.verdict)
        );
    }
    let _ = writeln!(
        human,
        "  p preserves them:         {}",
        verdict_line(&p.p_preserves_them)
    );
    let _ = writeln!(
        human,
        "  fibrewise terminals:      {}",
        verdict_line(&p.fibrewise_terminals_preserved)
    );
    let _ = writeln!(human, "  pruned:                   {}", verdict_line(&p.pruned));
    if !payload.t_p.is_empty() {
        let _ = writeln!(human, "recognition result");
        for row in &payload.t_p {
            let _ = writeln!(human, "  T^p {row}");
        }
        if let Some(t) = &payload.triangle {
            let _ = writeln!(human, "  triangle:                 {}", verdict_line(t));
        }
    }
    let _ = writeln!(human, "  is_em:                    {}", payload.is_em);
    if let Some(w) = &payload.witness {
        let _ = writeln!(human, "  witness ({}): {}", w.kind, w.detail);
    }
    done(&payload, human)
}

pub fn semidirect(ws: &Workspace, name: &str) -> Result<Done, Failure> {
    let a = ws.action(name).map_err(Failure::usage)?;
    let Some(Entity::Action { acting, on, .. }) = ws.get(name).map(|e| &e.entity) else {
        unreachable!("an action entity");
    };
    let m = monoid_semidirect(a)?;
    let is_group = [&a.g, &a.h].iter().all(|x| FinGroup::new((*x).clone()).is_ok());
    let iso_to = ws
        .entries()
        .iter()
        .find(|e| e.entity.as_monoid().is_some_and(|n| find_isomorphism(&m, n).is_some()))
        .map(|e| e.name.clone());
    let mut adjunction = Vec::new();
    if is_group {
        for g in ws.names_of("group") {
            let target = ws.group(g).map_err(Failure::usage)?;
            let r = check_semidirect_adjunction(a, target)?;
            adjunction.push(SemidirectAdjunctionOut {
                target: g.to_string(),
                homs_from_semidirect: r.homs_from_semidirect,
                action_morphisms: r.action_morphisms,
                verdict: (&r.verdict).into(),
            });
        }
    }
    let n = m.order();
    let table: Vec<Vec<String>> = (0..n)
        .map(|i| (0..n).map(|j| m.elements[m.mul(i, j)].clone()).collect())
        .collect();
    let payload = SemidirectPayload {
        action: name.to_string(),
        acting: acting.clone(),
        on: on.clone(),
        order: n,
        is_group,
        elements: m.elements.clone(),
        table,
        iso_to,
        adjunction,
    };
    let mut human = format!(
        "{acting} |x {on} via {name}: order {n}, {}\n",
        if is_group { "group" } else { "monoid" }
    );
    let w = payload.elements.iter().map(String::len).max().unwrap_or(1);
    let _ = writeln!(
        human,
        "{:w$} | {}",
        "*",
        payload
            .elements
            .iter()
            .map(|e| format!("{e:w$}"))
            .collect::<Vec<_>>()
            .join(" ")
    );
    let _ = writeln!(human, "{}", "-".repeat((w + 1) * (n + 1) + 1));
    for (e, row) in payload.elements.iter().zip(&payload.table) {
        let _ = writeln!(
            human,
            "{e:w$} | {}",
            row.iter().map(|x| format!("{x:w$}")).collect::<Vec<_>>().join(" ")
        );
    }
    let _ = writeln!(
        human,
        "isomorphic to: {}",
        payload.iso_to.as_deref().unwrap_or("none in file")
    );
    for r in &payload.adjunction {
        let _ = writeln!(
            human,
            "adjunction into {}: {} vs {} ({})",
            r.target,
            r.homs_from_semidirect,
            r.action_morphisms,
            verdict_line(&r.verdict)
        );
    }
    done(&payload, human)
}

pub fn examples_list() -> Result<Done, Failure> {
    let payload = ExamplesListPayload {
        examples: dsl::CATALOG
            .iter()
            .map(|e| ExampleOut {
                name: e.name.to_string(),
                description: e.description.to_string(),
            })
            .collect(),
    };
    let w = payload.examples.iter().map(|e| e.name.len()).max().unwrap_or(0);
    let human = payload
        .examples
        .iter()
        .map(|e| format!("{:w$}  {}\n", e.name, e.description))
        .collect();
    done(&payload, human)
}

pub fn examples_emit(name: &str) -> Result<Done, Failure> {
    let e = dsl::entry(name).ok_or_else(|| {
        let names: Vec<&str> = dsl::CATALOG.iter().map(|e| e.name).collect();
        Failure::usage(format!("unknown example `{name}` (available: {})", names.join(", ")))
    })?;
    done(
        &ExamplesEmitPayload {
            name: name.to_string(),
            text: e.text.to_string(),
        },
        e.text.to_string(),
    )
}
