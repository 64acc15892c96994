//! Sym(5) on the genus-4 surface: check a hand-written generating vector,
//! then let the search find one.

use surface_actions::catalog::Family;
use surface_actions::perm::Permutation;
use surface_actions::rh::{acts_on, verify_vector, ActionSearch, GeneratingVector, Signature};

fn main() -> surface_actions::Result<()> {
    let g = Family::Symmetric { n: 5 }.realize()?;
    let c1: Permutation = "(1,2,3,4,5)".parse()?;
    let c2 = Permutation::parse_with_degree("(1,2)", Some(5))?;
    // products compose right to left: (c1 c2)(x) = c1(c2(x))
    let c3 = c1.compose(&c2)?.inverse();
    println!("c3 = (c1 c2)^-1 = {c3}");

    let v = GeneratingVector::new(vec![], vec![c1, c2, c3]);
    let rep = verify_vector(&g, &Signature::new(0, vec![5, 2, 4])?, &v)?;
    println!(
        "measured orders {:?}, signature {}, genus {:?}, {:?}",
        rep.measured_orders, rep.measured_signature, rep.declared_genus, rep.verdict
    );

    match acts_on("Sym(5)", &g, 4, 1_000_000)? {
        ActionSearch::Found(r) => {
            let v: Vec<String> = r.vector.elliptic.iter().map(ToString::to_string).collect();
            println!("search found {} with vector {}", r.signature, v.join(" "));
            println!("{}", serde_json::to_string_pretty(&r).unwrap());
        }
        other => println!("no action: {other:?}"),
    }
    Ok(())
}
