//! Crisp Γ-hyperoperations and the p-cut reduction from fuzzy ones.
//!
//! Cutting every cell of a fuzzy table at `p` gives a crisp table whose
//! products are unions of cells. A fuzzy structure is associative exactly when
//! all of its cuts are, and the cuts only change at grades that occur in the
//! table, so the continuum of thresholds reduces to [`distinct_grades`].

use std::collections::BTreeSet;
use std::str::FromStr;
use std::sync::Arc;

use crate::carrier::{Carrier, CrispSubset, FuzzySubset};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::report::{CheckReport, Witness};

/// A crisp table `(a, γ, b) ↦ a∗γ∗b ⊆ M`.
///
/// Cells may be empty; such tables are flagged partial.
#[derive(Clone, Debug)]
pub struct CrispGammaHyperop {
    carrier: Arc<Carrier>,
    cells: Vec<BTreeSet<usize>>,
}

impl PartialEq for CrispGammaHyperop {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.same_as(&other.carrier) && self.cells == other.cells
    }
}

impl Eq for CrispGammaHyperop {}

impl CrispGammaHyperop {
    /// Builds a table whose cells are all nonempty.
    pub fn from_fn<F, I>(carrier: Arc<Carrier>, f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> I,
        I: IntoIterator<Item = usize>,
    {
        let k = Self::from_fn_partial(carrier, f)?;
        if let Some((a, gamma, b)) = k.first_empty_cell() {
            return Err(Error::EmptyCell { a, gamma, b });
        }
        Ok(k)
    }

    /// Builds a table that may have empty cells.
    pub fn from_fn_partial<F, I>(carrier: Arc<Carrier>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> I,
        I: IntoIterator<Item = usize>,
    {
        let (m, g) = (carrier.len(), carrier.sort_count());
        let mut cells = Vec::with_capacity(m * g * m);
        for a in 0..m {
            for gamma in 0..g {
                for b in 0..m {
                    let cell: BTreeSet<usize> = f(a, gamma, b).into_iter().collect();
                    if let Some(&bad) = cell.iter().find(|&&t| t >= m) {
                        carrier.check_element(bad)?;
                    }
                    cells.push(cell);
                }
            }
        }
        Ok(CrispGammaHyperop { carrier, cells })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    pub fn sorts(&self) -> usize {
        self.carrier.sort_count()
    }

    #[inline]
    pub fn cell(&self, a: usize, gamma: usize, b: usize) -> &BTreeSet<usize> {
        let (m, g) = (self.size(), self.sorts());
        &self.cells[(a * g + gamma) * m + b]
    }

    pub fn cell_subset(&self, a: usize, gamma: usize, b: usize) -> Result<CrispSubset> {
        self.carrier.check_element(a)?;
        self.carrier.check_element(b)?;
        self.carrier.check_sort(gamma)?;
        Ok(CrispSubset::from_set(self.carrier.clone(), self.cell(a, gamma, b).clone()))
    }

    /// True when some cell is empty.
    pub fn is_partial(&self) -> bool {
        self.cells.iter().any(BTreeSet::is_empty)
    }

    pub fn first_empty_cell(&self) -> Option<(usize, usize, usize)> {
        let (m, g) = (self.size(), self.sorts());
        let i = self.cells.iter().position(BTreeSet::is_empty)?;
        Some((i / (g * m), (i / m) % g, i % m))
    }

    /// Every cell is a singleton.
    pub fn is_single_valued(&self) -> bool {
        self.cells.iter().all(|c| c.len() == 1)
    }

    /// Same table over a carrier with different labels (same shape).
    pub fn relabel(&self, carrier: Arc<Carrier>) -> Result<Self> {
        if carrier.len() != self.size() || carrier.sort_count() != self.sorts() {
            return Err(Error::CarrierMismatch);
        }
        Ok(CrispGammaHyperop {
            carrier,
            cells: self.cells.clone(),
        })
    }

    pub(crate) fn product_sets(&self, a: &BTreeSet<usize>, gamma: usize, b: &BTreeSet<usize>) -> BTreeSet<usize> {
        let mut out = BTreeSet::new();
        for &x in a {
            for &y in b {
                out.extend(self.cell(x, gamma, y));
            }
        }
        out
    }

    /// `AγB = ⋃ { aγb | a ∈ A, b ∈ B }`.
    pub fn crisp_product(&self, a: &CrispSubset, gamma: usize, b: &CrispSubset) -> Result<CrispSubset> {
        if !self.carrier.same_as(a.carrier()) || !self.carrier.same_as(b.carrier()) {
            return Err(Error::CarrierMismatch);
        }
        self.carrier.check_sort(gamma)?;
        Ok(CrispSubset::from_set(
            self.carrier.clone(),
            self.product_sets(a.members(), gamma, b.members()),
        ))
    }

    /// `⋃_{u∈xαy} uβz = ⋃_{v∈yβz} xαv` for all `x, y, z, α, β`.
    pub fn is_associative(&self) -> CheckReport {
        let (m, g) = (self.size(), self.sorts());
        for x in 0..m {
            for alpha in 0..g {
                for y in 0..m {
                    for beta in 0..g {
                        for z in 0..m {
                            let mut lhs = BTreeSet::new();
                            for &u in self.cell(x, alpha, y) {
                                lhs.extend(self.cell(u, beta, z));
                            }
                            let mut rhs = BTreeSet::new();
                            for &v in self.cell(y, beta, z) {
                                rhs.extend(self.cell(x, alpha, v));
                            }
                            if lhs != rhs {
                                let r = *lhs.symmetric_difference(&rhs).next().expect("sets differ");
                                return CheckReport::fail(
                                    Witness::new("(x∗α∗y)∗β∗z ≠ x∗α∗(y∗β∗z)")
                                        .elements([x, y, z])
                                        .sorts([alpha, beta])
                                        .point(r),
                                );
                            }
                        }
                    }
                }
            }
        }
        CheckReport::pass()
    }
}

/// Free-function form of [`CrispGammaHyperop::is_associative`].
pub fn crisp_is_associative(k: &CrispGammaHyperop) -> CheckReport {
    k.is_associative()
}

/// A single-valued Γ-operation `M × Γ × M → M`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaOperation {
    carrier: Arc<Carrier>,
    products: Vec<usize>,
}

impl GammaOperation {
    pub fn from_fn<F>(carrier: Arc<Carrier>, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> usize,
    {
        let (m, g) = (carrier.len(), carrier.sort_count());
        let mut products = Vec::with_capacity(m * g * m);
        for a in 0..m {
            for gamma in 0..g {
                for b in 0..m {
                    let t = f(a, gamma, b);
                    carrier.check_element(t)?;
                    products.push(t);
                }
            }
        }
        Ok(GammaOperation { carrier, products })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    #[inline]
    pub fn apply(&self, a: usize, gamma: usize, b: usize) -> usize {
        let (m, g) = (self.carrier.len(), self.carrier.sort_count());
        self.products[(a * g + gamma) * m + b]
    }

    /// `(aαb)βc = aα(bβc)`, reporting the first violation as an error.
    pub fn check_associative(&self) -> Result<()> {
        let (m, g) = (self.carrier.len(), self.carrier.sort_count());
        for a in 0..m {
            for alpha in 0..g {
                for b in 0..m {
                    for beta in 0..g {
                        for c in 0..m {
                            let lhs = self.apply(self.apply(a, alpha, b), beta, c);
                            let rhs = self.apply(a, alpha, self.apply(b, beta, c));
                            if lhs != rhs {
                                return Err(Error::NotAssociative {
                                    a,
                                    alpha,
                                    b,
                                    beta,
                                    c,
                                });
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// The singleton-valued crisp table `a∗γ∗b = {aγb}`.
    pub fn to_hyperop(&self) -> CrispGammaHyperop {
        CrispGammaHyperop::from_fn(self.carrier.clone(), |a, gamma, b| [self.apply(a, gamma, b)])
            .expect("singleton cells are nonempty")
    }
}

/// A threshold `p ∈ [0,1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CutThreshold(Grade);

impl CutThreshold {
    pub fn new(p: Grade) -> CutThreshold {
        CutThreshold(p)
    }

    pub fn grade(self) -> Grade {
        self.0
    }
}

impl From<Grade> for CutThreshold {
    fn from(p: Grade) -> Self {
        CutThreshold(p)
    }
}

impl FromStr for CutThreshold {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse().map(CutThreshold)
    }
}

/// `μ_p = {t : μ(t) ≥ p}`.
pub fn cut_subset(mu: &FuzzySubset, p: CutThreshold) -> CrispSubset {
    let members = mu
        .grades()
        .iter()
        .enumerate()
        .filter(|(_, &g)| g >= p.0)
        .map(|(i, _)| i)
        .collect();
    CrispSubset::from_set(mu.carrier().clone(), members)
}

/// Cellwise cut `a ∘_p γ ∘_p b = (a∘γ∘b)_p`.
pub fn cut_structure(h: &FuzzyGammaHyperop, p: CutThreshold) -> CrispGammaHyperop {
    CrispGammaHyperop::from_fn_partial(h.carrier().clone(), |a, gamma, b| {
        h.cell(a, gamma, b)
            .iter()
            .enumerate()
            .filter(|(_, &g)| g >= p.0)
            .map(|(t, _)| t)
            .collect::<Vec<_>>()
    })
    .expect("indices come from the same carrier")
}

/// Sorted positive grades occurring in the table, with `1` appended when it
/// does not occur.
pub fn distinct_grades(h: &FuzzyGammaHyperop) -> Vec<Grade> {
    let mut grades: Vec<Grade> = h.occurring_grades().into_iter().filter(|g| !g.is_zero()).collect();
    if grades.last() != Some(&Grade::ONE) {
        grades.push(Grade::ONE);
    }
    grades
}

/// Fuzzy associativity agrees with associativity of every cut.
///
/// Both sides are computed independently: the fuzzy side with sup-min grade
/// arithmetic, the crisp side with set unions. A negative verdict means the
/// two disagree, which can only come from a defect in one of them.
pub fn verify_cut_equivalence(h: &FuzzyGammaHyperop) -> CheckReport {
    let fuzzy = h.is_associative().passed();
    let failing_cut = distinct_grades(h)
        .into_iter()
        .find(|&p| !cut_structure(h, p.into()).is_associative().passed());
    match (fuzzy, failing_cut) {
        (true, None) | (false, Some(_)) => CheckReport::pass(),
        (true, Some(p)) => CheckReport::fail(Witness::new("fuzzy associative but a cut is not").threshold(p)),
        (false, None) => CheckReport::fail(Witness::new("fuzzy non-associative but every cut is associative")),
    }
}

/// `x∘γ∘M = χ_M ⟺ x ∘_p γ ∘_p M = M` for every threshold, and the mirrored
/// statement for `M∘γ∘x`.
pub fn verify_reproduction_cut(h: &FuzzyGammaHyperop, x: usize, gamma: usize) -> Result<CheckReport> {
    let full = FuzzySubset::full(h.carrier().clone());
    let everything = CrispSubset::full(h.carrier().clone());
    let point = CrispSubset::new(h.carrier().clone(), [x])?;
    let fuzzy_left = h.compose_left(x, gamma, &full)? == full;
    let fuzzy_right = h.compose_right(&full, gamma, x)? == full;
    let mut crisp_left = true;
    let mut crisp_right = true;
    for p in distinct_grades(h) {
        let k = cut_structure(h, p.into());
        crisp_left &= k.crisp_product(&point, gamma, &everything)? == everything;
        crisp_right &= k.crisp_product(&everything, gamma, &point)? == everything;
    }
    let mut report = CheckReport::pass();
    if fuzzy_left != crisp_left {
        report = CheckReport::fail(
            Witness::new(format!("x∘γ∘M = χ_M is {fuzzy_left} but all cuts reproduce: {crisp_left}"))
                .elements([x])
                .sorts([gamma]),
        );
    } else if fuzzy_right != crisp_right {
        report = CheckReport::fail(
            Witness::new(format!("M∘γ∘x = χ_M is {fuzzy_right} but all cuts reproduce: {crisp_right}"))
                .elements([x])
                .sorts([gamma]),
        );
    }
    Ok(report)
}

/// `(a∘α∘(b∘β∘c))(u) ≥ p ⟺ u ∈ a ∘_p α ∘_p (b ∘_p β ∘_p c)` for every
/// tuple and every occurring grade `p`.
pub fn verify_pointwise_cut(h: &FuzzyGammaHyperop) -> CheckReport {
    let (m, g) = (h.size(), h.sorts());
    for p in distinct_grades(h) {
        let k = cut_structure(h, p.into());
        for a in 0..m {
            for alpha in 0..g {
                for b in 0..m {
                    for beta in 0..g {
                        for c in 0..m {
                            let fuzzy = h.left_grades(a, alpha, h.cell(b, beta, c));
                            let crisp = k.product_sets(&BTreeSet::from([a]), alpha, k.cell(b, beta, c));
                            if let Some(u) = (0..m).find(|&u| (fuzzy[u] >= p) != crisp.contains(&u)) {
                                return CheckReport::fail(
                                    Witness::new("grade threshold and cut membership disagree")
                                        .elements([a, b, c])
                                        .sorts([alpha, beta])
                                        .point(u)
                                        .threshold(p),
                                );
                            }
                        }
                    }
                }
            }
        }
    }
    CheckReport::pass()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperop::families::{cyclic_group, max_chain, pair_union, truncated_sum, NegInfinity};

    fn g(n: u64, d: u64) -> Grade {
        Grade::new(n, d).unwrap()
    }

    fn set(c: &Arc<Carrier>, items: &[usize]) -> CrispSubset {
        CrispSubset::new(c.clone(), items.iter().copied()).unwrap()
    }

    fn broken() -> FuzzyGammaHyperop {
        let c = Carrier::numbered(2, 1).unwrap();
        FuzzyGammaHyperop::from_fn(c, |a, _, b| {
            if (a, b) == (0, 0) {
                vec![Grade::ZERO, Grade::ONE]
            } else {
                vec![Grade::ONE, Grade::ZERO]
            }
        })
        .unwrap()
    }

    #[test]
    fn cut_subset_examples() {
        let c = Carrier::numbered(3, 1).unwrap();
        let mu = FuzzySubset::new(c.clone(), vec![g(1, 2), g(1, 3), Grade::ZERO]).unwrap();
        assert_eq!(cut_subset(&mu, g(1, 3).into()), set(&c, &[0, 1]));
        assert_eq!(cut_subset(&mu, Grade::ZERO.into()), CrispSubset::full(c.clone()));
        let s = set(&c, &[0, 2]);
        assert_eq!(cut_subset(&s.characteristic(), Grade::ONE.into()), s);
    }

    #[test]
    fn cut_structure_examples() {
        let h = truncated_sum(3, 1, false).unwrap();
        let k = cut_structure(&h, g(1, 2).into());
        assert!(!k.is_partial());
        for a in 0..4 {
            for b in 0..4 {
                assert_eq!(k.cell(a, 0, b), &BTreeSet::from([(a + b).min(3)]));
            }
        }
        let k = cut_structure(&h, g(3, 4).into());
        assert!(k.is_partial());
        assert!((0..4).all(|a| (0..4).all(|b| k.cell(a, 0, b).is_empty())));
        let k = cut_structure(&h, Grade::ZERO.into());
        assert!((0..4).all(|a| (0..4).all(|b| k.cell(a, 0, b).len() == 4)));
    }

    #[test]
    fn crisp_product_examples() {
        let k = cut_structure(&max_chain(2, 1, NegInfinity::Omit).unwrap(), Grade::ONE.into());
        let c = k.carrier().clone();
        assert_eq!(k.crisp_product(&set(&c, &[1]), 0, &set(&c, &[2])).unwrap(), set(&c, &[2]));
        assert!(k.crisp_product(&set(&c, &[]), 0, &set(&c, &[2])).unwrap().is_empty());
        assert_eq!(k.crisp_product(&set(&c, &[0, 1]), 0, &set(&c, &[1, 2])).unwrap(), set(&c, &[1, 2]));
    }

    #[test]
    fn crisp_associativity_examples() {
        let h = pair_union(Carrier::numbered(3, 2).unwrap()).unwrap();
        for p in distinct_grades(&h) {
            assert!(cut_structure(&h, p.into()).is_associative().passed());
        }
        let c = Carrier::numbered(3, 1).unwrap();
        let op = GammaOperation::from_fn(c, |a, _, b| a.min(b)).unwrap();
        assert!(op.to_hyperop().is_associative().passed());

        let k = cut_structure(&broken(), Grade::ONE.into());
        let report = crisp_is_associative(&k);
        assert!(!report.passed());
        assert_eq!(report.witness().unwrap().elements, vec![0, 0, 1]);
    }

    #[test]
    fn distinct_grades_examples() {
        assert_eq!(distinct_grades(&truncated_sum(2, 1, false).unwrap()), vec![g(1, 2), Grade::ONE]);
        assert_eq!(distinct_grades(&max_chain(2, 1, NegInfinity::Omit).unwrap()), vec![Grade::ONE]);
        let c = Carrier::numbered(2, 1).unwrap();
        let h = FuzzyGammaHyperop::from_fn(c, |a, _, _| {
            if a == 0 {
                vec![g(1, 3), Grade::ZERO]
            } else {
                vec![Grade::ZERO, g(1, 2)]
            }
        })
        .unwrap();
        assert_eq!(distinct_grades(&h), vec![g(1, 3), g(1, 2), Grade::ONE]);
    }

    #[test]
    fn cut_equivalence_examples() {
        let h = pair_union(Carrier::numbered(3, 1).unwrap()).unwrap();
        assert!(h.is_associative().passed());
        assert!(verify_cut_equivalence(&h).passed());
        let b = broken();
        assert!(!b.is_associative().passed());
        assert!(verify_cut_equivalence(&b).passed());
        assert!(verify_pointwise_cut(&b).passed());
        assert!(verify_pointwise_cut(&truncated_sum(3, 2, true).unwrap()).passed());
    }

    #[test]
    fn reproduction_examples() {
        let grp = cyclic_group(4, 1).unwrap();
        for x in 0..4 {
            assert!(verify_reproduction_cut(&grp, x, 0).unwrap().passed());
            assert_eq!(grp.compose_left(x, 0, &FuzzySubset::full(grp.carrier().clone())).unwrap(), FuzzySubset::full(grp.carrier().clone()));
        }
        let h = max_chain(2, 1, NegInfinity::Omit).unwrap();
        assert!(verify_reproduction_cut(&h, 1, 0).unwrap().passed());
        let k = cut_structure(&h, Grade::ONE.into());
        let c = h.carrier().clone();
        assert_ne!(k.crisp_product(&set(&c, &[1]), 0, &CrispSubset::full(c.clone())).unwrap(), CrispSubset::full(c));
        let one = FuzzyGammaHyperop::from_fn(Carrier::numbered(1, 1).unwrap(), |_, _, _| vec![Grade::ONE]).unwrap();
        assert!(verify_reproduction_cut(&one, 0, 0).unwrap().passed());
    }

    proptest::proptest! {
        #[test]
        fn cuts_are_monotone(v in proptest::collection::vec(0u64..=6, 5), p in 0u64..=6, q in 0u64..=6) {
            let c = Carrier::numbered(5, 1).unwrap();
            let mu = FuzzySubset::new(c, v.iter().map(|&n| g(n, 6)).collect()).unwrap();
            let (lo, hi) = (p.min(q), p.max(q));
            proptest::prop_assert!(cut_subset(&mu, g(hi, 6).into()).is_subset(&cut_subset(&mu, g(lo, 6).into())));
        }

        #[test]
        fn characteristic_cut_round_trip(members in proptest::collection::btree_set(0usize..5, 0..5), p in 1u64..=6) {
            let c = Carrier::numbered(5, 1).unwrap();
            let s = CrispSubset::new(c, members).unwrap();
            proptest::prop_assert_eq!(cut_subset(&s.characteristic(), g(p, 6).into()), s);
        }
    }
}
