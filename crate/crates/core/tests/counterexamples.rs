use gamma_hyperlab::bridge::phi;
use gamma_hyperlab::ideals::{generate_left_ideal, generate_left_ideal_single_sort, is_left_ideal};
use gamma_hyperlab::relations::{is_fuzzy_strongly_regular, quotient_crisp, quotient_fuzzy, EquivRelation};
use gamma_hyperlab::search::{oracle_min_left_ideal, GradeGrid};
use gamma_hyperlab::{Carrier, CrispSubset, FuzzyGammaHyperop, GammaOperation, Grade};

fn half() -> Grade {
    Grade::new(1, 2).unwrap()
}

/// Every product lands on 2; the grade there is 1 on three cells and 1/2
/// elsewhere.
fn graded_null() -> FuzzyGammaHyperop {
    let c = Carrier::numbered(3, 1).unwrap();
    FuzzyGammaHyperop::from_fn(c, |a, _, b| {
        let top = if matches!((a, b), (0, 0) | (1, 0) | (1, 1)) { Grade::ONE } else { half() };
        vec![Grade::ZERO, Grade::ZERO, top]
    })
    .unwrap()
}

#[test]
fn strongly_regular_fuzzy_quotient_can_fail_associativity() {
    let h = graded_null();
    assert!(h.is_associative().passed());
    let rho = EquivRelation::parse(h.carrier().clone(), "0|1,2").unwrap();
    assert!(is_fuzzy_strongly_regular(&h, &rho).unwrap().passed());
    let q = quotient_fuzzy(&h, &rho).unwrap().structure;
    // classes A = {0}, B = {1, 2}; ((A∗A)∗A)(B) = 1 but (A∗(A∗A))(B) = 1/2
    let w = q.is_associative();
    let w = w.witness().expect("quotient is not associative");
    assert_eq!(w.elements, vec![0, 0, 0]);
    assert_eq!(w.grades, Some((Grade::ONE, half())));
    // the support level is fine
    assert!(quotient_crisp(&h, &rho).unwrap().is_associative().passed());
}

#[test]
fn single_sort_generated_ideal_misses_other_sorts() {
    let c = Carrier::new(["0", "1", "2"], ["g0", "g1"]).unwrap();
    let h = FuzzyGammaHyperop::from_fn(c.clone(), |a, gamma, b| {
        let mut cell = vec![Grade::ZERO, Grade::ZERO, Grade::ONE];
        if gamma == 0 && b == 0 && a != 2 {
            cell[a] = Grade::ONE;
        }
        cell
    })
    .unwrap();
    assert!(h.is_associative().passed());
    let mu = CrispSubset::new(c.clone(), [0, 2]).unwrap().characteristic();
    let single = generate_left_ideal_single_sort(&h, &mu, 1).unwrap();
    assert_eq!(single, mu);
    assert!(!is_left_ideal(&h, &single).unwrap().passed());
    let all = generate_left_ideal(&h, &mu).unwrap();
    assert_eq!(all, CrispSubset::full(c).characteristic());
    assert_eq!(all, oracle_min_left_ideal(&h, &mu, GradeGrid::new(1).unwrap(), 1 << 20).unwrap());
}

#[test]
fn max_quotient_is_two_element_max() {
    let c = Carrier::numbered(3, 1).unwrap();
    let max = phi(&GammaOperation::from_fn(c, |a, _, b| a.max(b)).unwrap().to_hyperop()).unwrap();
    let rho = EquivRelation::parse(max.carrier().clone(), "{0,1}|{2}").unwrap();
    let q = quotient_crisp(&max, &rho).unwrap();
    assert_eq!(q.carrier().elements().collect::<Vec<_>>(), ["0+1", "2"]);
    let expected = GammaOperation::from_fn(q.carrier().clone(), |a, _, b| a.max(b)).unwrap().to_hyperop();
    assert_eq!(q, expected);
    assert_eq!(quotient_fuzzy(&max, &rho).unwrap().structure, phi(&expected).unwrap());
}
