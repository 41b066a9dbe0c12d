//! JSON encodings shared by the subcommands.

use serde_json::{json, Value};
use weyl_lie::chains::{Chain, ChainElement};
use weyl_lie::closure::{ClosureReport, ClosureStatus};
use weyl_lie::decider::{Verdict, Violation, Witness};
use weyl_lie::{Degree, Rational, SkewPolynomial};

pub fn rational(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn degree(d: Degree) -> Value {
    match d.finite() {
        Some(d) => json!(d),
        None => Value::Null,
    }
}

/// Terms highest degree first, matching the text rendering.
pub fn skew(p: &SkewPolynomial) -> Value {
    Value::Array(
        p.terms()
            .rev()
            .map(|(e, c)| {
                json!({
                    "sigma": e.sigma().symbol().to_string(),
                    "alpha": e.gamma().alpha(),
                    "beta": e.gamma().beta(),
                    "coeff": rational(c),
                })
            })
            .collect(),
    )
}

fn element(el: &ChainElement) -> Value {
    json!({
        "level": el.level,
        "degree": degree(el.degree()),
        "predicted_degree": el.predicted_bound,
        "plus": skew(&el.plus),
        "minus": skew(&el.minus),
    })
}

pub fn chain(c: &Chain, leading_only: bool) -> Value {
    json!({
        "type": match c.kind { weyl_lie::chains::ChainKind::I => "I", _ => "II" },
        "seed": { "alpha": c.seed.alpha(), "beta": c.seed.beta() },
        "partner": c.partner.as_ref().map(|p| json!({ "alpha": p.alpha(), "beta": p.beta() })),
        "leading_only": leading_only,
        "died_at": c.died_at,
        "levels": c.elements.iter().map(element).collect::<Vec<_>>(),
    })
}

fn witness(w: &Witness) -> Value {
    json!({ "labels": w.labels, "offending": skew(&w.offending) })
}

pub fn verdict(v: &Verdict) -> Value {
    json!({
        "verdict": if v.finite { "finite" } else { "infinite" },
        "condition": v.violated.map(|c| c.numeral()),
        "witness": v.witness.as_ref().map(witness),
        "outcomes": v.outcomes.iter().map(|o| json!({
            "condition": o.condition.numeral(),
            "holds": o.holds(),
            "witness": o.witness.as_ref().map(witness),
        })).collect::<Vec<_>>(),
    })
}

pub fn violation_kind(v: &Violation) -> &'static str {
    match v {
        Violation::MissingFreeOperator { .. } => "MissingFreeOperator",
        Violation::A1GeneratorExcluded { .. } => "A1GeneratorExcluded",
        Violation::LinearCombinationOutOfScope { .. } => "LinearCombinationOutOfScope",
        Violation::ZeroGenerator { .. } => "ZeroGenerator",
        Violation::ModeMismatch { .. } => "ModeMismatch",
    }
}

pub fn status(s: ClosureStatus) -> &'static str {
    match s {
        ClosureStatus::Closed => "Closed",
        ClosureStatus::DegreeCapHit => "DegreeCapHit",
        ClosureStatus::DimCapHit => "DimCapHit",
        ClosureStatus::IterCapHit => "IterCapHit",
    }
}

pub fn closure(r: &ClosureReport) -> Value {
    json!({
        "status": status(r.status),
        "dimension": r.dimension(),
        "dimension_mod_constants": r.dimension_mod_constants(),
        "identity_generated": r.identity_generated,
        "trace": r.trace,
        "max_degree_seen": degree(r.max_degree_seen),
        "discarded": r.discarded,
        "basis": r.basis.iter().map(skew).collect::<Vec<_>>(),
    })
}
