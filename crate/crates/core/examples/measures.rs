//! Riemann–Hurwitz measures: the smallest positive values and the
//! signatures a group of given order can use on a given genus.

use surface_actions::exclusivity::minimal_positive_measures;
use surface_actions::rh::{enumerate_signatures, rh_genus, rh_measure, Signature};

fn main() -> surface_actions::Result<()> {
    let scan = minimal_positive_measures(6, 2)?;
    println!(
        "smallest positive measures (periods scanned up to {}):",
        scan.max_period
    );
    for v in &scan.values {
        let sigs: Vec<String> = v.signatures.iter().map(Signature::to_string).collect();
        println!("  {:>6}  {}", v.measure.to_string(), sigs.join(" "));
    }

    let s: Signature = "(0;2,3,7)".parse()?;
    println!(
        "\n{s}: measure {}, order 168 gives genus {:?}",
        rh_measure(&s),
        rh_genus(168, &s)
    );

    println!("\nsignatures for order 120 on genus 4:");
    for s in enumerate_signatures(4, 120) {
        println!("  {s}");
    }
    Ok(())
}
