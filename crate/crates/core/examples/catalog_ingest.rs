//! Load a catalog file, check that its groups are pairwise non-isomorphic,
//! and report which are 2-generated.
//!
//! ```text
//! cargo run --example catalog_ingest -- crates/core/tests/fixtures/order40.cat
//! ```

use surface_actions::catalog::{is_two_generated, load_catalog};
use surface_actions::perm::is_isomorphic;

fn main() -> surface_actions::Result<()> {
    let path = std::env::args().nth(1).unwrap_or_else(|| {
        concat!(env!("CARGO_MANIFEST_DIR"), "/tests/fixtures/order40.cat").to_string()
    });
    let cat = load_catalog(&path)?;
    println!("{} entries, coverage {:?}", cat.len(), cat.coverage());

    let entries = cat.entries();
    for (i, a) in entries.iter().enumerate() {
        for b in &entries[i + 1..] {
            if is_isomorphic(&a.group, &b.group)? != Some(false) {
                println!("warning: {} and {} may be isomorphic", a.id, b.id);
            }
        }
    }

    let mut two = 0;
    for e in entries {
        let stats = e.group.order_statistics()?;
        let gen2 = is_two_generated(&e.group)?.is_some();
        two += gen2 as usize;
        let tags: Vec<&str> = e.tags.iter().map(String::as_str).collect();
        println!(
            "{:8} order {:>3} 2-generated {:5} orders {:?} [{}]",
            e.id,
            e.order(),
            gen2,
            stats,
            tags.join(",")
        );
    }
    println!("{two} of {} are 2-generated", entries.len());
    Ok(())
}
