mod common;

use proptest::prelude::*;

use surface_actions::exclusivity::{
    generic_bound, lcm_certificate, trichotomy_classify, GeometryProfile, Singular,
};
use surface_actions::perm::{find_monomorphism, EmbeddingSearch, PermGroup, Permutation};
use surface_actions::report::{
    emit_report, parse_report, Envelope, MeasureReport, OutputFormat, Report,
};
use surface_actions::rh::{
    enumerate_signatures, find_generating_vector, rh_genus, rh_measure, verify_vector,
    ActionRecord, Provenance, Signature, VectorSearch,
};

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<u32>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

fn gens(max_degree: usize, max_gens: usize) -> impl Strategy<Value = Vec<Permutation>> {
    (1..=max_degree).prop_flat_map(move |d| prop::collection::vec(perm(d), 1..=max_gens))
}

/// Groups of order at most `max_order` from random generators.
fn small_group(max_degree: usize, max_order: u128) -> impl Strategy<Value = PermGroup> {
    gens(max_degree, 2)
        .prop_map(|g| PermGroup::new(g).unwrap())
        .prop_filter("order", move |g| g.order() <= max_order)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permutation_axioms(p in (1usize..10).prop_flat_map(|d| (perm(d), perm(d), perm(d)))) {
        let (a, b, c) = p;
        let id = Permutation::identity(a.degree());
        prop_assert_eq!(a.compose(&b).unwrap().compose(&c).unwrap(), a.compose(&b.compose(&c).unwrap()).unwrap());
        prop_assert_eq!(a.compose(&a.inverse()).unwrap(), id.clone());
        prop_assert_eq!(a.inverse().compose(&a).unwrap(), id.clone());
        prop_assert_eq!(a.compose(&id).unwrap(), a.clone());
        prop_assert!(a.pow(a.order() as i64).is_identity());
        // rightmost first
        let ab = a.compose(&b).unwrap();
        for x in 0..a.degree() {
            prop_assert_eq!(ab.apply(x), a.apply(b.apply(x)));
        }
        let round: Permutation = Permutation::parse_with_degree(&a.to_string(), Some(a.degree())).unwrap();
        prop_assert_eq!(round, a);
    }

    #[test]
    fn group_order_matches_closure(g in gens(7, 3)) {
        let d = g[0].degree();
        let oracle = common::closure(&g.iter().map(common::images).collect::<Vec<_>>(), d).len() as u128;
        prop_assert_eq!(PermGroup::new(g).unwrap().order(), oracle);
    }

    #[test]
    fn lcm_bounds(genus in 2u64..=1000) {
        let s = genus as u128;
        let l = common::lcm(common::lcm(s - 1, s), 8 * (s + 1));
        let b = generic_bound(genus).unwrap();
        prop_assert_eq!(b.lcm, l);
        prop_assert!(l >= (s - 1) * s * (s + 1) / 2);
        if genus >= 13 {
            prop_assert!(l > 84 * (s - 1));
            prop_assert!(b.contradiction);
        }
        prop_assert_eq!(lcm_certificate(genus).unwrap().is_contradiction(), l > 84 * (s - 1));
    }

    #[test]
    fn hurwitz_signature_identity(genus in 2u64..=100) {
        let s: Signature = "(0;2,3,7)".parse().unwrap();
        prop_assert_eq!(rh_genus(84 * (genus as u128 - 1), &s), Some(genus));
        let t: Signature = "(0;2,3,8)".parse().unwrap();
        prop_assert_eq!(rh_genus(48 * (genus as u128 - 1), &t), Some(genus));
    }

    #[test]
    fn measure_report_round_trip(rho in 0u64..3, periods in prop::collection::vec(2u64..50, 0..6), warn in prop::collection::vec("[a-z ]{0,12}", 0..3)) {
        let s = Signature::new(rho, periods).unwrap();
        let env = Envelope::new(
            Report::Measure(MeasureReport { measure: rh_measure(&s).to_string(), signature: s, dropped_unit_periods: 0 }),
            warn,
        );
        let json = emit_report(&env, OutputFormat::Json);
        prop_assert_eq!(parse_report(&json).unwrap(), env);
    }

    #[test]
    fn trichotomy_validity_and_rigidity(n in 2u32..24, kind in 0u8..4, d in 1u32..24, inv in any::<bool>()) {
        let s = match kind {
            0 => Singular::Empty,
            1 => Singular::ZeroDim,
            2 => Singular::PositiveDim(None),
            _ => Singular::PositiveDim(Some(d)),
        };
        let valid = match s {
            Singular::Empty => !inv,
            Singular::ZeroDim => n % 2 == 0,
            Singular::PositiveDim(None) => n > 2,
            Singular::PositiveDim(Some(d)) => n > 2 && d < n && (n - d) % 2 == 0,
        };
        let r = trichotomy_classify(&GeometryProfile::new(n, s, inv));
        prop_assert_eq!(r.is_ok(), valid);
        if let Ok(o) = r {
            prop_assert_eq!(o.locally_rigid, matches!(s, Singular::Empty | Singular::ZeroDim));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn signatures_match_naive_enumeration(genus in 2u64..=5, order in 2u128..=120) {
        let mut oracle: Vec<(u64, Vec<u64>)> = Vec::new();
        let divs: Vec<u64> = (2..=order as u64).filter(|d| order % *d as u128 == 0).collect();
        let target = 2 * genus as i128 - 2;
        for rho in 0..=6u64 {
            naive(&divs, order, rho, target, &mut Vec::new(), 0, &mut oracle);
        }
        oracle.sort_by(|a, b| (a.0, a.1.len(), &a.1).cmp(&(b.0, b.1.len(), &b.1)));
        let got: Vec<(u64, Vec<u64>)> = enumerate_signatures(genus, order)
            .iter()
            .map(|s| (s.orbit_genus(), s.periods().to_vec()))
            .collect();
        prop_assert_eq!(got, oracle);
    }

    #[test]
    fn monomorphism_matches_brute_force(h in small_group(5, 24), g in small_group(5, 60)) {
        let oracle = embeds_brute(&h, &g);
        match find_monomorphism(&h, &g).unwrap() {
            EmbeddingSearch::Found(m) => {
                prop_assert!(m.verify());
                prop_assert!(oracle);
            }
            EmbeddingSearch::Absent(_) => prop_assert!(!oracle),
            EmbeddingSearch::Inconclusive { .. } => prop_assert!(false, "budget"),
        }
    }

    #[test]
    fn vector_search_matches_tuples(g in small_group(6, 16), pick in any::<prop::sample::Index>()) {
        let sigs = common::short_signatures(g.order(), 4);
        prop_assume!(!sigs.is_empty());
        let (rho, periods) = &sigs[pick.index(sigs.len())];
        let s = Signature::new(*rho, periods.clone()).unwrap();
        let t = common::Table::new(&g.generators().iter().map(common::images).collect::<Vec<_>>(), g.degree());
        let oracle = common::vector_exists(&t, *rho as usize, periods);
        match find_generating_vector(&g, &s).unwrap() {
            VectorSearch::Found(v) => {
                prop_assert!(oracle);
                prop_assert!(verify_vector(&g, &s, &v).unwrap().is_valid());
            }
            VectorSearch::Absent => prop_assert!(!oracle),
            VectorSearch::BudgetExceeded { .. } => prop_assert!(false, "budget"),
        }
    }

    #[test]
    fn found_vectors_round_trip(g in small_group(6, 24), pick in any::<prop::sample::Index>()) {
        let sigs = common::short_signatures(g.order(), 5);
        prop_assume!(!sigs.is_empty());
        let (rho, periods) = &sigs[pick.index(sigs.len())];
        let s = Signature::new(*rho, periods.clone()).unwrap();
        if let VectorSearch::Found(v) = find_generating_vector(&g, &s).unwrap() {
            let genus = rh_genus(g.order(), &s).unwrap();
            let rec = ActionRecord::new("G", &g, genus, s, v, Provenance::Search).unwrap();
            let json = serde_json::to_string(&rec).unwrap();
            let back: ActionRecord = serde_json::from_str(&json).unwrap();
            prop_assert!(back.verify().unwrap().is_valid());
            prop_assert_eq!(back, rec);
        }
    }
}

/// Nondecreasing period lists with `|G|(2ρ − 2) + Σ(|G| − |G|/m) = 2σ − 2`,
/// at most 12 periods. Terms are at least `|G|/2`, which bounds the search.
fn naive(
    divs: &[u64],
    order: u128,
    rho: u64,
    target: i128,
    acc: &mut Vec<u64>,
    start: usize,
    out: &mut Vec<(u64, Vec<u64>)>,
) {
    let n = order as i128;
    let sum: i128 =
        n * (2 * rho as i128 - 2) + acc.iter().map(|&m| n - n / m as i128).sum::<i128>();
    if sum == target {
        out.push((rho, acc.clone()));
    }
    if acc.len() == 12 || sum + n / 2 > target {
        return;
    }
    for i in start..divs.len() {
        acc.push(divs[i]);
        naive(divs, order, rho, target, acc, i, out);
        acc.pop();
    }
}

/// Tries every image of the generators of `h` and checks that the induced
/// map on all of `h` is a well-defined injective homomorphism.
fn embeds_brute(h: &PermGroup, g: &PermGroup) -> bool {
    let hg: Vec<common::Img> = h.generators().iter().map(common::images).collect();
    let h_elems = common::closure(&hg, h.degree());
    let gt = common::closure(
        &g.generators()
            .iter()
            .map(common::images)
            .collect::<Vec<_>>(),
        g.degree(),
    );
    if gt.len() % h_elems.len() != 0 {
        return false;
    }
    let k = hg.len();
    let mut choice = vec![0usize; k];
    loop {
        if extends(
            &hg,
            &h_elems,
            h.degree(),
            &choice.iter().map(|&i| gt[i].clone()).collect::<Vec<_>>(),
            g.degree(),
        ) {
            return true;
        }
        let mut i = 0;
        while i < k {
            choice[i] += 1;
            if choice[i] < gt.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
        if i == k {
            return false;
        }
    }
}

fn extends(
    hg: &[common::Img],
    h_elems: &[common::Img],
    hd: usize,
    imgs: &[common::Img],
    gd: usize,
) -> bool {
    use std::collections::{HashMap, HashSet, VecDeque};
    let id_h: common::Img = (0..hd as u32).collect();
    let id_g: common::Img = (0..gd as u32).collect();
    let mut map: HashMap<common::Img, common::Img> = HashMap::from([(id_h.clone(), id_g)]);
    let mut queue = VecDeque::from([id_h]);
    while let Some(x) = queue.pop_front() {
        let fx = map[&x].clone();
        for (s, t) in hg.iter().zip(imgs) {
            let y = common::mul(s, &x);
            let fy = common::mul(t, &fx);
            match map.get(&y) {
                Some(prev) if *prev != fy => return false,
                Some(_) => {}
                None => {
                    map.insert(y.clone(), fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let image: HashSet<&common::Img> = map.values().collect();
    map.len() == h_elems.len() && image.len() == h_elems.len()
}
