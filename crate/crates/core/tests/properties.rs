use std::collections::BTreeSet;

use gamma_hyperlab::bridge::{image_fuzzy, phi, psi, CarrierMap};
use gamma_hyperlab::cuts::{cut_structure, distinct_grades};
use gamma_hyperlab::format::{emit_crisp, emit_structure, parse_crisp, parse_structure};
use gamma_hyperlab::grade::common_denominator;
use gamma_hyperlab::relations::{
    is_fuzzy_regular, is_fuzzy_strongly_regular, quotient_crisp, quotient_fuzzy, rel_extends, EquivRelation,
};
use gamma_hyperlab::search::random::{self, seeded};
use gamma_hyperlab::search::{enumerate_structures, scan_structures, EnumSpec, GradeGrid, Scan, StructureFilter};
use gamma_hyperlab::{Carrier, Grade};
use proptest::prelude::*;
use rand::Rng;

fn grid(d: u64) -> GradeGrid {
    GradeGrid::new(d).unwrap()
}

fn relation(carrier: &std::sync::Arc<Carrier>, labels: &[usize]) -> EquivRelation {
    let labels: Vec<usize> = labels.iter().take(carrier.len()).copied().collect();
    EquivRelation::from_class_of(carrier.clone(), &labels).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn support_of_characteristic_is_identity(seed: u64, m in 1usize..=4, g in 1usize..=2, empty: bool) {
        let k = random::crisp_table(&mut seeded(seed), m, g, empty);
        if empty && k.is_partial() {
            prop_assert!(phi(&k).is_err());
        } else {
            prop_assert_eq!(psi(&phi(&k).unwrap()).unwrap(), k);
        }
    }

    #[test]
    fn occurring_grades_suffice_for_cuts(seed: u64, m in 1usize..=3, g in 1usize..=2, d in 1u64..=6) {
        let h = random::table(&mut seeded(seed), m, g, grid(d), true);
        let grades = distinct_grades(&h);
        let fine = 2 * common_denominator(grades.iter().copied());
        for n in 1..=fine {
            let p = Grade::new(n, fine).unwrap();
            let next = *grades.iter().find(|&&q| q >= p).unwrap();
            prop_assert_eq!(cut_structure(&h, p.into()), cut_structure(&h, next.into()));
        }
    }

    #[test]
    fn image_is_functorial(seed: u64, f in prop::collection::vec(0usize..3, 4), g in prop::collection::vec(0usize..2, 3)) {
        let (a, b, c) = (
            Carrier::numbered(4, 1).unwrap(),
            Carrier::numbered(3, 1).unwrap(),
            Carrier::numbered(2, 1).unwrap(),
        );
        let f = CarrierMap::new(a.clone(), b.clone(), f).unwrap();
        let g = CarrierMap::new(b, c, g).unwrap();
        let mu = random::fuzzy_subset(&mut seeded(seed), &a, grid(4));
        let composed = image_fuzzy(&f.then(&g).unwrap(), &mu).unwrap();
        prop_assert_eq!(composed, image_fuzzy(&g, &image_fuzzy(&f, &mu).unwrap()).unwrap());
        prop_assert_eq!(image_fuzzy(&CarrierMap::identity(a), &mu).unwrap(), mu);
    }

    #[test]
    fn extension_compares_classes_met(seed: u64, labels in prop::collection::vec(0usize..4, 4)) {
        let c = Carrier::numbered(4, 1).unwrap();
        let rho = relation(&c, &labels);
        let mut rng = seeded(seed);
        let mu = random::fuzzy_subset(&mut rng, &c, grid(3));
        let nu = random::fuzzy_subset(&mut rng, &c, grid(3));
        let met = |s: &gamma_hyperlab::FuzzySubset| -> BTreeSet<usize> {
            (0..4).filter(|&t| !s.grade(t).is_zero()).map(|t| labels[t]).collect()
        };
        prop_assert_eq!(rel_extends(&rho, &mu, &nu).unwrap(), met(&mu) == met(&nu));
    }

    #[test]
    fn strong_regularity_implies_regularity(seed: u64, m in 1usize..=4, labels in prop::collection::vec(0usize..4, 4)) {
        let mut rng = seeded(seed);
        let g = rng.gen_range(1..=2);
        let h = random::table(&mut rng, m, g, grid(2), true);
        let rho = relation(h.carrier(), &labels);
        if is_fuzzy_strongly_regular(&h, &rho).unwrap().passed() {
            prop_assert!(is_fuzzy_regular(&h, &rho).unwrap().passed());
        }
    }

    #[test]
    fn quotient_support_matches_crisp_quotient(seed: u64, labels in prop::collection::vec(0usize..4, 4)) {
        let mut rng = seeded(seed);
        let m = rng.gen_range(1..=4);
        let h = random::associative(&mut rng, m, 1, grid(3));
        let rho = relation(h.carrier(), &labels);
        if is_fuzzy_strongly_regular(&h, &rho).unwrap().passed() {
            let q = quotient_fuzzy(&h, &rho).unwrap();
            prop_assert!(q.strongly_regular);
            prop_assert_eq!(psi(&q.structure).unwrap(), quotient_crisp(&h, &rho).unwrap());
        }
    }

    #[test]
    fn emit_then_parse_round_trips(seed: u64, m in 1usize..=4, g in 1usize..=3, d in 1u64..=12, proper: bool) {
        let mut rng = seeded(seed);
        let h = random::table(&mut rng, m, g, grid(d), proper);
        let text = emit_structure(&h);
        prop_assert_eq!(parse_structure(&text).unwrap(), h);
        let k = random::crisp_table(&mut rng, m, g, !proper);
        prop_assert_eq!(parse_crisp(&emit_crisp(&k)).unwrap(), k);
    }

    #[test]
    fn parallel_scan_matches_serial_enumeration(cursor in 0u128..256, limit in 1usize..40) {
        let spec = EnumSpec::new(2, 1, grid(1), StructureFilter::Proper).unwrap();
        let serial: Vec<u128> = enumerate_structures(&spec, 1 << 20)
            .unwrap()
            .from_cursor(cursor)
            .take(limit)
            .map(|(i, _)| i)
            .collect();
        let page = scan_structures(&spec, 1 << 20, &Scan { cursor, limit: Some(limit), iso: false }).unwrap();
        let parallel: Vec<u128> = page.items.iter().map(|(i, _)| *i).collect();
        prop_assert_eq!(serial, parallel);
    }
}
