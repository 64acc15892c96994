//! Coset enumeration of H(σ) = <x, y | x^4, y^(2σ+2), (xy)^2, (x^-1 y)^2>
//! and its action on the genus-σ surface.

use surface_actions::fp::{accola_maclachlan_group, todd_coxeter, Presentation};
use surface_actions::rh::accola_maclachlan_action;

fn main() -> surface_actions::Result<()> {
    let p: Presentation = "<x,y | x^4, y^6, (x*y)^2, (x^-1*y)^2>".parse()?;
    let t = todd_coxeter(&p, 1000);
    println!("{p}: {} cosets ({} defined)", t.cosets, t.defined);

    println!("\n genus  |H|  8(σ+1)  signature");
    for genus in 2..=12 {
        let h = accola_maclachlan_group(genus)?;
        let r = accola_maclachlan_action(genus)?;
        assert!(r.verify()?.is_valid());
        println!(
            "{genus:>6} {:>4} {:>7}  {}",
            h.group.order(),
            8 * (genus + 1),
            r.signature
        );
    }
    Ok(())
}
