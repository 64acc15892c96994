//! The fixed reproducibility script, one line per check.

use surface_actions::report::{audit_paper, AuditStatus, RunConfig};

fn main() {
    let report = audit_paper(&RunConfig::default());
    for c in &report.checks {
        println!("{:22} {:26} {}", c.status.to_string(), c.id, c.recomputed);
    }
    for n in &report.notes {
        println!(
            "note: {} printed {} recomputed {}",
            n.expression, n.printed, n.recomputed
        );
    }
    println!(
        "{} pass, {} expected discrepancies, {} fail",
        report.count(AuditStatus::Pass),
        report.count(AuditStatus::Discrepancy),
        report.count(AuditStatus::Fail)
    );
}
