use std::sync::OnceLock;

use proptest::prelude::*;

use torslab_core::brick;
use torslab_core::nakayama::AlgebraSpec;
use torslab_core::subcat::{is_subset, ClassKind, Mask, ModCategory, Side};

const SPECS: [&str; 5] = [
    "linA:4",
    "nakayama:linear:2,2,1",
    "nakayama:linear:3,3,2,1",
    "nakayama:cyclic:3,3",
    "nakayama:cyclic:2,2,2",
];

/// Categories are shared between cases so their map tables are built once.
fn cat(k: usize) -> &'static ModCategory {
    static CATS: OnceLock<Vec<ModCategory>> = OnceLock::new();
    &CATS.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| ModCategory::new(s.parse::<AlgebraSpec>().unwrap(), 2).unwrap())
            .collect()
    })[k]
}

/// An algebra index and a subset of its indecomposables.
fn algebra_and_mask() -> impl Strategy<Value = (usize, Mask)> {
    (0..SPECS.len()).prop_flat_map(|k| {
        let n = cat(k).len();
        (Just(k), 0..(1u64 << n))
    })
}

type Closure<'a> = Box<dyn Fn(Mask) -> Mask + 'a>;

fn closures(c: &ModCategory) -> [(&'static str, Closure<'_>); 5] {
    [
        ("gen", Box::new(|m| c.gen_closure(m))),
        ("sub", Box::new(|m| c.sub_closure(m))),
        ("filt", Box::new(|m| c.filt_closure(m))),
        ("tors", Box::new(|m| c.tors_closure(m))),
        ("torf", Box::new(|m| c.torf_closure(m))),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn closures_are_extensive_and_idempotent((k, m) in algebra_and_mask()) {
        let c = cat(k);
        for (name, close) in closures(c) {
            let once = close(m);
            prop_assert!(is_subset(m, once), "{name} not extensive");
            prop_assert_eq!(close(once), once, "{} not idempotent", name);
        }
    }

    #[test]
    fn closures_are_monotone((k, a) in algebra_and_mask(), b in any::<u64>()) {
        let c = cat(k);
        let b = b & c.full();
        for (name, close) in closures(c) {
            prop_assert!(is_subset(close(a & b), close(a)), "{name} not monotone");
        }
    }

    #[test]
    fn torsion_closure_lands_in_torsion_classes((k, m) in algebra_and_mask()) {
        let c = cat(k);
        prop_assert!(c.is_torsion_class(c.tors_closure(m)));
        prop_assert!(c.is_torsion_free_class(c.torf_closure(m)));
        prop_assert!(c.is_extension_closed(c.filt_closure(m)));
    }

    #[test]
    fn perp_is_a_galois_connection((k, m) in algebra_and_mask()) {
        let c = cat(k);
        let right = c.perp(m, Side::Right);
        let left = c.perp(m, Side::Left);
        prop_assert!(c.is_torsion_free_class(right));
        prop_assert!(c.is_torsion_class(left));
        prop_assert_eq!(c.perp(c.perp(right, Side::Left), Side::Right), right);
        prop_assert_eq!(c.perp(c.tors_closure(m), Side::Right), right);
        prop_assert_eq!(c.perp(right, Side::Left), c.tors_closure(m));
    }

    #[test]
    fn filt_of_a_semibrick_recovers_it(k in 0..SPECS.len(), pick in any::<prop::sample::Index>()) {
        let c = cat(k);
        let sb = brick::enumerate_semibricks(c, 22).unwrap();
        let s = sb[pick.index(sb.len())];
        let w = c.filt_closure(s);
        prop_assert_eq!(c.sim_in(w).unwrap(), s);
        prop_assert!(c.is_wide(w).unwrap());
    }
}

#[test]
fn meets_are_intersections_and_joins_are_closures() {
    for k in 0..SPECS.len() {
        let c = cat(k);
        let tors = c.enumerate(ClassKind::Tors, 22).unwrap();
        for &a in &tors {
            for &b in &tors {
                assert!(c.is_torsion_class(a & b));
                assert!(tors.contains(&c.tors_closure(a | b)));
            }
        }
    }
}
