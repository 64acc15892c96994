//! Certificate chains for genera 2 to 14, then the full JSON report for one
//! genus (default 8).

use surface_actions::exclusivity::{weakly_exclusive_verdict, Outcome, VerdictOptions};
use surface_actions::report::{emit_report, Envelope, OutputFormat, Report};

fn main() -> surface_actions::Result<()> {
    let opts = VerdictOptions::default();
    for genus in 2..=14 {
        let v = weakly_exclusive_verdict(genus, &opts)?;
        v.verify().expect("certificates recompute");
        let steps: Vec<&str> = v.certificates.iter().map(|c| c.step()).collect();
        let outcome = match &v.outcome {
            Outcome::Impossible => "impossible".to_string(),
            other => format!("{other:?}"),
        };
        println!("genus {genus:>2}: {outcome:10} via {}", steps.join(" -> "));
    }

    let genus = std::env::args()
        .nth(1)
        .and_then(|s| s.parse().ok())
        .unwrap_or(8);
    let v = weakly_exclusive_verdict(genus, &opts)?;
    print!(
        "\n{}",
        emit_report(
            &Envelope::new(Report::GenusReport(v), vec![]),
            OutputFormat::Json
        )
    );
    Ok(())
}
