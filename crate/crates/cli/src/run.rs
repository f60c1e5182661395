//! Command handlers: each produces the results payload, its checks, and
//! (for the poset/tree commands) a DOT rendering.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use kmkit::davis::{check_combin, check_pullback_davis_l, davis_poset};
use kmkit::graded::{koszul_tor, series_of};
use kmkit::rank2::{bk_finite_field_case, levi_and_torus_fixed, rank2_compare, Verdict};
use kmkit::treecoho::{
    group_cohomology_spec, telescope_limit, tree_hilbert_tower, w3_presentation,
};
use kmkit::unipotent::{
    build_tree, gp_inverse, gp_multiply, gp_normalize, in_uw, orbit_poset, FieldParams, HasseTree,
};
use kmkit::{gcm_to_coxeter, theta, CoxeterSystem, Gen, Result};

use crate::args::*;
use crate::{Check, Command, GpOp, Outcome};

const BALL_CAP: usize = 200_000;

pub fn dispatch(cmd: &Command) -> Result<Outcome> {
    match cmd {
        Command::Nf(a) => nf(a),
        Command::Theta(a) => theta_cmd(a),
        Command::FiniteType(a) => finite_type(a),
        Command::Davis(a) => davis(a),
        Command::CheckCombin(a) => check_combin_cmd(a),
        Command::CheckPullback(a) => check_pullback_cmd(a),
        Command::Gp(GpOp::Mul(a)) => gp_mul(a),
        Command::Gp(GpOp::Inv(a)) => gp_inv(a),
        Command::Gp(GpOp::Member(a)) => gp_member(a),
        Command::OrbitPoset(a) => orbit(a),
        Command::Tor(a) => tor(a),
        Command::Rank2Report(a) => rank2_report(a),
        Command::LeviFixed(a) => levi_fixed(a),
        Command::Bkfq(a) => bkfq(a),
        Command::TreeHilbert(a) => tree_hilbert_cmd(a),
        Command::Telescope(a) => telescope(a),
        Command::W3(a) => w3(a),
        Command::HasseDot(a) => hasse_dot(a),
    }
}

fn ok(results: Value, checks: Vec<Check>) -> Result<Outcome> {
    Ok(Outcome {
        results,
        checks,
        dot: None,
    })
}

fn val<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report value")
}

fn nf(a: &NfArgs) -> Result<Outcome> {
    let sys = a.matrix.system()?;
    let w = sys.normal_form(&a.word.0)?;
    ok(
        json!({
            "normal_form": w.word(),
            "length": w.length(),
            "is_identity": w.is_identity(),
        }),
        vec![],
    )
}

fn theta_cmd(a: &ThetaArgs) -> Result<Outcome> {
    let sys = CoxeterSystem::new(gcm_to_coxeter(&a.gcm))?;
    let w = sys.normal_form(&a.word.0)?;
    let inv = theta(&a.gcm, &w)?;
    let check = Check::new(
        "inversion_count_is_length",
        inv.len() == w.length(),
        format!("{} roots, length {}", inv.len(), w.length()),
    );
    ok(
        json!({
            "normal_form": w.word(),
            "length": w.length(),
            "inversions": inv,
        }),
        vec![check],
    )
}

fn finite_type(a: &FiniteTypeArgs) -> Result<Outcome> {
    let sys = a.matrix.system()?;
    let all: BTreeSet<Gen> = (1..=sys.rank()).collect();
    let full = sys.is_finite_type(&all)?;
    let poset = sys.finite_type_subsets()?;
    let subsets: Vec<Vec<Gen>> = poset
        .items()
        .iter()
        .map(|s| s.iter().copied().collect())
        .collect();
    ok(
        json!({
            "rank": sys.rank(),
            "full_set_finite_type": full,
            "finite_type_subsets": subsets,
            "covers": poset.covers(),
        }),
        vec![],
    )
}

fn davis(a: &DavisArgs) -> Result<Outcome> {
    let sys = a.matrix.system()?;
    let poset = davis_poset(&sys, a.radius)?;
    let nodes: Vec<String> = poset.items().iter().map(|n| n.to_string()).collect();
    Ok(Outcome {
        results: json!({
            "size": poset.len(),
            "nodes": nodes,
            "covers": poset.covers(),
        }),
        checks: vec![],
        dot: Some(poset.to_dot(|_, n| n.to_string())),
    })
}

fn check_combin_cmd(a: &CheckCombinArgs) -> Result<Outcome> {
    let sys = a.matrix.system()?;
    let ball = sys.weak_ball(a.radius, BALL_CAP)?;
    let mut pairs = 0usize;
    let mut failures = vec![];
    for j in 0..ball.len() {
        for i in ball.downset(j) {
            pairs += 1;
            let rep = check_combin(&sys, &ball.elems[i], &ball.elems[j])?;
            if !rep.pass {
                failures.push(rep);
            }
        }
    }
    let check = Check::new(
        "interval_preimages_contractible",
        failures.is_empty(),
        format!(
            "{} pairs through length {}, {} failures",
            pairs,
            a.radius,
            failures.len()
        ),
    );
    ok(
        json!({
            "ball_size": ball.len(),
            "pairs": pairs,
            "failures": failures,
        }),
        vec![check],
    )
}

fn check_pullback_cmd(a: &CheckPullbackArgs) -> Result<Outcome> {
    let sys = a.matrix.system()?;
    let rep = check_pullback_davis_l(&sys, a.radius)?;
    let check = Check::new(
        "fibers_contractible",
        rep.pass,
        format!("{} fibers", rep.fibers.len()),
    );
    ok(val(&rep), vec![check])
}

fn field_and_tree(t: &TreeArgs) -> Result<(HasseTree, FieldParams)> {
    Ok((build_tree(&t.gcm, t.depth)?, FieldParams::new(t.p, t.k)?))
}

fn gp_mul(a: &GpMulArgs) -> Result<Outcome> {
    let (t, f) = field_and_tree(&a.tree)?;
    let x = gp_normalize(&t, &f, &a.a.0)?;
    let y = gp_normalize(&t, &f, &a.b.0)?;
    let xy = gp_multiply(&t, &f, &x, &y)?;
    ok(json!({ "a": x, "b": y, "product": xy }), vec![])
}

fn gp_inv(a: &GpInvArgs) -> Result<Outcome> {
    let (t, f) = field_and_tree(&a.tree)?;
    let x = gp_normalize(&t, &f, &a.a.0)?;
    let inv = gp_inverse(&t, &f, &x)?;
    let check = Check::new(
        "product_with_inverse_is_identity",
        gp_multiply(&t, &f, &x, &inv)?.syllables.is_empty(),
        "x * x^-1 reduces to the empty word".into(),
    );
    ok(json!({ "a": x, "inverse": inv }), vec![check])
}

fn gp_member(a: &GpMemberArgs) -> Result<Outcome> {
    let (t, f) = field_and_tree(&a.tree)?;
    let x = gp_normalize(&t, &f, &a.a.0)?;
    let member = in_uw(&t, &f, &x, &a.word.0)?;
    ok(
        json!({ "element": x, "word": a.word.0, "member": member }),
        vec![],
    )
}

fn orbit(a: &OrbitArgs) -> Result<Outcome> {
    let (t, f) = field_and_tree(&a.tree)?;
    let poset = orbit_poset(&t, &f, a.generator, a.mode.into(), a.radius)?;
    let elements: Vec<Value> = poset
        .items()
        .iter()
        .map(|(base, coset)| json!({ "base": base, "coset": coset }))
        .collect();
    Ok(Outcome {
        results: json!({
            "size": poset.len(),
            "elements": elements,
            "covers": poset.covers(),
        }),
        checks: vec![],
        dot: Some(poset.to_dot(|_, (b, c)| format!("{b}:{c}"))),
    })
}

fn tor(a: &TorArgs) -> Result<Outcome> {
    // twice the window so the totalization is exact through maxdeg
    let (spec, big) = koszul_tor(&a.x, &a.over, 2 * a.maxdeg)?;
    let total = big.to_total(a.maxdeg)?;
    let direct = series_of(&spec, a.maxdeg)?;
    let check = Check::new(
        "total_matches_generator_form",
        total == direct,
        format!("series agree through degree {}", a.maxdeg),
    );
    ok(
        json!({ "tor": spec, "bigraded": big, "total": total }),
        vec![check],
    )
}

fn rank2_report(a: &Rank2Args) -> Result<Outcome> {
    let rep = rank2_compare(a.p, a.k, a.l, a.q)?;
    let details = match &rep.verdict {
        Verdict::Distinct {
            witness_degree,
            colimit_dim,
            fixed_dim,
        } => format!(
            "degree {witness_degree}: fixed {} vs colimit {}",
            fixed_dim.0, colimit_dim.0
        ),
        Verdict::AgreeTrivially => "both sides trivial in the window".into(),
    };
    let check = Check::new("models_compared", true, details);
    ok(val(&rep), vec![check])
}

fn levi_fixed(a: &LeviArgs) -> Result<Outcome> {
    let ((lspec, lser), (tspec, tser)) = levi_and_torus_fixed(a.p, a.k, a.q, a.maxdeg)?;
    ok(
        json!({
            "levi": { "fixed_ring": lspec, "series": lser },
            "torus": { "fixed_ring": tspec, "series": tser },
        }),
        vec![],
    )
}

fn bkfq(a: &BkfqArgs) -> Result<Outcome> {
    let rep = bk_finite_field_case(a.p, a.k, a.q, a.l, a.maxdeg)?;
    ok(val(&rep), vec![])
}

fn tree_hilbert_cmd(a: &TreeHilbertArgs) -> Result<Outcome> {
    let coeff = group_cohomology_spec(a.p, a.k, a.q)?;
    let rep = tree_hilbert_tower(&a.gcm, a.depth, &coeff, a.maxdeg)?;
    ok(json!({ "coefficients": coeff, "tower": rep }), vec![])
}

fn telescope(a: &TelescopeArgs) -> Result<Outcome> {
    let rep = telescope_limit(&a.depths.0, a.p, a.k, a.q, a.maxdeg)?;
    let mut checks = vec![Check::new(
        "restrictions_surjective",
        rep.lim1_zero,
        "every stage-to-stage restriction onto in the window".into(),
    )];
    if a.q != a.p {
        checks.push(Check::new(
            "positive_degrees_vanish",
            rep.vanishing_positive,
            "coefficient characteristic coprime to the group order".into(),
        ));
    }
    ok(val(&rep), checks)
}

fn w3(a: &W3Args) -> Result<Outcome> {
    let rep = w3_presentation(a.maxdeg)?;
    let check = Check::new(
        "series_matches_tree_count",
        rep.matches_tree_count,
        format!("checked through degree {}", a.maxdeg),
    );
    ok(val(&rep), vec![check])
}

fn hasse_dot(a: &HasseDotArgs) -> Result<Outcome> {
    let t = build_tree(&a.gcm, a.depth)?;
    Ok(Outcome {
        results: json!({ "nodes": t.len(), "edges": t.len().saturating_sub(1) }),
        checks: vec![],
        dot: Some(t.to_dot()),
    })
}
