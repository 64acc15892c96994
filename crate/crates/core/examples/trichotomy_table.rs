//! The singular-set classifier over a range of dimensions.

use surface_actions::exclusivity::{trichotomy_classify, GeometryProfile, Singular};

fn main() {
    let kinds = [
        ("empty", Singular::Empty),
        ("zero_dim", Singular::ZeroDim),
        ("positive", Singular::PositiveDim(None)),
    ];
    println!("{:>3} {:9} {:5} outcome", "n", "singular", "inv");
    for n in 2..=10 {
        for (label, s) in kinds {
            for inv in [false, true] {
                let outcome = match trichotomy_classify(&GeometryProfile::new(n, s, inv)) {
                    Ok(o) => o.to_string(),
                    Err(e) => format!("rejected: {e}"),
                };
                println!("{n:>3} {label:9} {inv:5} {outcome}");
            }
        }
    }
}
