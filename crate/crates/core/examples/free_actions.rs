//! Every 2-generated group G acts freely on the surface of genus |G| + 1
//! through the vector (x, y, y, x) with signature (2;).

use surface_actions::catalog::Family;
use surface_actions::rh::free_action_auto;

fn main() -> surface_actions::Result<()> {
    for name in [
        "C6", "D5", "A4", "Sym(4)", "C2xC4", "SL2(3)", "A5", "PSL2(7)",
    ] {
        let f = Family::parse(name).expect("builtin name");
        let g = f.realize()?;
        match free_action_auto(f.to_string(), &g)? {
            Some(r) => {
                let rep = r.verify()?;
                println!(
                    "{:8} |G| = {:>3}  genus {:>4}  {}  {:?}",
                    f.to_string(),
                    g.order(),
                    r.genus,
                    r.signature,
                    rep.verdict
                );
            }
            None => println!("{:8} is not 2-generated", f.to_string()),
        }
    }
    Ok(())
}
