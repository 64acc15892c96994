//! Monomorphism search and subgroup counts.

use surface_actions::catalog::Family;
use surface_actions::fp::accola_maclachlan_group;
use surface_actions::perm::{
    find_monomorphism, find_monomorphism_exhaustive, subgroups_of_order, EmbeddingSearch,
};

fn show(name: &str, r: &EmbeddingSearch) {
    match r {
        EmbeddingSearch::Found(m) => {
            let images: Vec<String> = m.images.iter().map(ToString::to_string).collect();
            println!("{name}: embeds, generators map to {}", images.join(" "));
        }
        EmbeddingSearch::Absent(why) => println!("{name}: no monomorphism ({why:?})"),
        EmbeddingSearch::Inconclusive { nodes } => {
            println!("{name}: undecided after {nodes} nodes")
        }
    }
}

fn main() -> surface_actions::Result<()> {
    let s5 = Family::Symmetric { n: 5 }.realize()?;
    let a5 = Family::Alternating { n: 5 }.realize()?;
    let sl27 = Family::Sl2 { p: 7 }.realize()?;
    let h4 = accola_maclachlan_group(4)?.group;
    let h5 = accola_maclachlan_group(5)?.group;

    show("A5 -> Sym(5)", &find_monomorphism(&a5, &s5)?);
    show("H4 -> Sym(5)", &find_monomorphism(&h4, &s5)?);
    show(
        "H4 -> Sym(5), no shortcuts",
        &find_monomorphism_exhaustive(&h4, &s5, 10_000_000)?,
    );
    show(
        "H5 -> SL2(7)",
        &find_monomorphism_exhaustive(&h5, &sl27, 10_000_000)?,
    );

    for k in [20, 24, 40, 60] {
        println!(
            "Sym(5) has {} subgroups of order {k}",
            subgroups_of_order(&s5, k)?.len()
        );
    }
    Ok(())
}
