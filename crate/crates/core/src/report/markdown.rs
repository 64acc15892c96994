use std::fmt::Write as _;

use super::{AuditReport, CosetReport, Envelope, FindActionOutcome, Report};
use crate::exclusivity::{Certificate, EmbeddingResult, ExclusivityVerdict, Outcome};
use crate::perm::AbsenceReason;
use crate::rh::{ActionRecord, VerificationReport};

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let cell = |s: &str| s.replace('|', "\\|");
    writeln!(out, "| {} |", header.join(" | ")).unwrap();
    writeln!(out, "|{}", "---|".repeat(header.len())).unwrap();
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| cell(c)).collect();
        writeln!(out, "| {} |", cells.join(" | ")).unwrap();
    }
}

fn list<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join(", ")
}

pub(super) fn render(env: &Envelope) -> String {
    let mut out = String::new();
    match &env.report {
        Report::Measure(m) => writeln!(out, "{}", m.measure).unwrap(),
        Report::Trichotomy(t) => writeln!(out, "{}", t.outcome).unwrap(),
        Report::Embed(e) => {
            let line = match (e.result, e.reason) {
                (EmbeddingResult::Found, _) => format!(
                    "monomorphism {} -> {}: {}",
                    e.subgroup.id,
                    e.group.id,
                    e.subgroup
                        .generators
                        .iter()
                        .zip(&e.images)
                        .map(|(g, i)| format!("{g} -> {i}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                ),
                (EmbeddingResult::Absent, r) => format!(
                    "no monomorphism (definitive: {})",
                    match r {
                        Some(AbsenceReason::Lagrange) => "Lagrange",
                        Some(AbsenceReason::ElementOrders) => "element orders",
                        _ => "brute force",
                    }
                ),
                (EmbeddingResult::Inconclusive, _) => {
                    format!(
                        "no monomorphism found (inconclusive: {} node budget exhausted)",
                        e.budget
                    )
                }
            };
            writeln!(out, "{line}").unwrap();
        }
        Report::Signatures(s) => {
            writeln!(
                out,
                "## Signatures for order {} on genus {}\n",
                s.order, s.genus
            )
            .unwrap();
            let rows: Vec<Vec<String>> = s
                .signatures
                .iter()
                .map(|r| vec![r.signature.to_string(), r.measure.clone()])
                .collect();
            table(&mut out, &["signature", "measure"], &rows);
        }
        Report::FindAction(f) => {
            writeln!(
                out,
                "## {} (order {}) on genus {}\n",
                f.group, f.order, f.genus
            )
            .unwrap();
            match &f.result {
                FindActionOutcome::Found { record } => record_table(&mut out, record),
                FindActionOutcome::Absent {
                    signatures_searched,
                } => writeln!(
                    out,
                    "no action: {signatures_searched} candidate signatures searched exhaustively"
                )
                .unwrap(),
                FindActionOutcome::Inconclusive { unresolved } => writeln!(
                    out,
                    "inconclusive: node budget {} exhausted for {}",
                    f.node_budget,
                    list(unresolved)
                )
                .unwrap(),
            }
        }
        Report::VerifyVector(v) => {
            writeln!(out, "## Vector in {}\n", v.group).unwrap();
            verification_table(&mut out, &v.report);
        }
        Report::ToddCoxeter(c) => coset_table(&mut out, c),
        Report::GenusReport(v) => verdict(&mut out, v),
        Report::AuditPaper(a) => audit(&mut out, a),
    }
    if !env.warnings.is_empty() {
        out.push('\n');
        for w in &env.warnings {
            writeln!(out, "warning: {w}").unwrap();
        }
    }
    out
}

fn record_table(out: &mut String, r: &ActionRecord) {
    let mut rows = vec![
        vec!["group".into(), r.group.id.clone()],
        vec!["order".into(), r.group.order.to_string()],
        vec!["genus".into(), r.genus.to_string()],
        vec!["signature".into(), r.signature.to_string()],
        vec![
            "provenance".into(),
            format!("{:?}", r.provenance).to_lowercase(),
        ],
    ];
    for (i, (a, b)) in r.vector.hyperbolic.iter().enumerate() {
        rows.push(vec![format!("a{}", i + 1), a.to_string()]);
        rows.push(vec![format!("b{}", i + 1), b.to_string()]);
    }
    for (i, c) in r.vector.elliptic.iter().enumerate() {
        rows.push(vec![format!("c{}", i + 1), c.to_string()]);
    }
    table(out, &["field", "value"], &rows);
}

fn verification_table(out: &mut String, r: &VerificationReport) {
    let opt = |g: Option<u64>| g.map_or("none".to_string(), |g| g.to_string());
    let rows = vec![
        vec!["declared".into(), r.declared.to_string()],
        vec!["measured orders".into(), list(&r.measured_orders)],
        vec![
            "measured signature".into(),
            r.measured_signature.to_string(),
        ],
        vec!["in group".into(), r.in_group.to_string()],
        vec![
            "product is identity".into(),
            r.product_is_identity.to_string(),
        ],
        vec!["generates".into(), r.generates.to_string()],
        vec!["declared genus".into(), opt(r.declared_genus)],
        vec!["measured genus".into(), opt(r.measured_genus)],
        vec![
            "verdict".into(),
            serde_json::to_value(r.verdict)
                .unwrap()
                .as_str()
                .unwrap()
                .to_string(),
        ],
    ];
    table(out, &["check", "value"], &rows);
}

fn coset_table(out: &mut String, c: &CosetReport) {
    writeln!(out, "## Coset enumeration of {}\n", c.presentation).unwrap();
    let mut rows = vec![
        vec!["complete".into(), c.complete.to_string()],
        vec![
            "order".into(),
            if c.complete {
                c.cosets.to_string()
            } else {
                "unknown".into()
            },
        ],
        vec!["cosets defined".into(), c.defined.to_string()],
        vec!["coset budget".into(), c.max_cosets.to_string()],
    ];
    for (i, g) in c.generators.iter().enumerate() {
        rows.push(vec![format!("generator {}", i + 1), g.clone()]);
    }
    table(out, &["field", "value"], &rows);
}

fn outcome_line(o: &Outcome) -> String {
    match o {
        Outcome::Impossible => "impossible".into(),
        Outcome::Conditional { assumptions } => {
            format!("conditional on: {}", assumptions.join("; "))
        }
        Outcome::Inconclusive { missing } => {
            format!("inconclusive, missing: {}", missing.join("; "))
        }
    }
}

fn certificate_summary(c: &Certificate) -> String {
    match c {
        Certificate::Generic(g) => format!("lcm {} ≥ {} > {}", g.lcm, g.cubic_lower, g.bound),
        Certificate::Lcm(l) => format!(
            "lcm({}) = {} {} {}",
            list(&l.orders),
            l.lcm,
            if l.is_contradiction() { ">" } else { "≤" },
            l.bound
        ),
        Certificate::Sylow(s) => format!(
            "{} of order {} and Klein four-group in {}: |G| ≥ {} {} {}",
            s.cyclic_element,
            s.cyclic_element_order,
            s.klein_witness.id,
            s.lower_bound,
            if s.contradiction { ">" } else { "≤" },
            s.bound
        ),
        Certificate::Divisibility(d) => format!(
            "{} | |G|, Hurwitz {} {}, fallback {}: candidates [{}]",
            d.lcm,
            d.hurwitz_bound,
            if d.hurwitz_divisible {
                "divisible"
            } else {
                "not divisible"
            },
            d.fallback_bound,
            list(&d.candidates)
        ),
        Certificate::WitnessAudit(w) => format!(
            "{}: declared periods {}, measured {} ({})",
            w.group.id,
            list(&w.declared_periods),
            list(&w.measured_orders),
            serde_json::to_value(w.verdict).unwrap().as_str().unwrap()
        ),
        Certificate::Embedding(e) => format!(
            "{} in {}: {}",
            e.subgroup.id,
            e.group.id,
            serde_json::to_value(e.result).unwrap().as_str().unwrap()
        ),
        Certificate::SubgroupCount(s) => format!(
            "{} subgroups of order {} in {}",
            s.count, s.order, s.group.id
        ),
        Certificate::CatalogCheck(c) => format!(
            "{} groups examined, covered={}, survivors [{}]",
            c.examined.len(),
            c.covered,
            c.survivors.join(", ")
        ),
        Certificate::Supplementary(s) => format!(
            "{} acts with {}; candidates [{}]",
            s.record.group.id,
            s.record.signature,
            list(&s.divisibility.candidates)
        ),
    }
}

fn verdict(out: &mut String, v: &ExclusivityVerdict) {
    writeln!(out, "## Genus {}: {}\n", v.genus, outcome_line(&v.outcome)).unwrap();
    let rows: Vec<Vec<String>> = v
        .certificates
        .iter()
        .enumerate()
        .map(|(i, c)| {
            vec![
                (i + 1).to_string(),
                c.step().to_string(),
                certificate_summary(c),
                c.is_decisive().to_string(),
            ]
        })
        .collect();
    table(out, &["#", "step", "certificate", "decisive"], &rows);
    if !v.notes.is_empty() {
        out.push('\n');
        notes(out, &v.notes);
    }
}

fn notes(out: &mut String, notes: &[crate::exclusivity::ArithmeticNote]) {
    let rows: Vec<Vec<String>> = notes
        .iter()
        .map(|n| {
            vec![
                n.expression.clone(),
                n.printed.clone(),
                n.recomputed.clone(),
            ]
        })
        .collect();
    table(out, &["expression", "printed", "recomputed"], &rows);
}

fn audit(out: &mut String, a: &AuditReport) {
    writeln!(out, "## Audit\n").unwrap();
    let rows: Vec<Vec<String>> = a
        .checks
        .iter()
        .map(|c| {
            vec![
                c.status.to_string(),
                c.id.clone(),
                c.claim.clone(),
                c.printed.clone().unwrap_or_default(),
                c.recomputed.clone(),
            ]
        })
        .collect();
    table(
        out,
        &["status", "check", "claim", "printed", "recomputed"],
        &rows,
    );
    if !a.notes.is_empty() {
        out.push('\n');
        notes(out, &a.notes);
    }
}
