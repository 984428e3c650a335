//! Fuzzy Γ-hyperoperations and the sup-min composition calculus.
//!
//! A structure is a dense table `(a, γ, b) ↦ a∘γ∘b ∈ F(M)`. Products of an
//! element with a fuzzy subset use
//!
//! ```text
//! (a∘γ∘μ)(r) = ∨_t (a∘γ∘t)(r) ∧ μ(t)        (0 when μ = 0)
//! (μ∘γ∘a)(r) = ∨_t μ(t) ∧ (t∘γ∘a)(r)        (0 when μ = 0)
//! ```
//!
//! and products of two fuzzy subsets use
//! `(μ∘γ∘ν)(t) = ∨_{p,q} μ(p) ∧ (p∘γ∘q)(t) ∧ ν(q)`.

pub mod families;

use std::sync::Arc;

use crate::carrier::{first_excess, Carrier, FuzzySubset};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::report::{CheckReport, Witness};

/// The table `(a, γ, b) ↦ a∘γ∘b`.
#[derive(Clone, Debug)]
pub struct FuzzyGammaHyperop {
    carrier: Arc<Carrier>,
    grades: Vec<Grade>,
    proper: bool,
}

impl PartialEq for FuzzyGammaHyperop {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.same_as(&other.carrier) && self.grades == other.grades
    }
}

impl Eq for FuzzyGammaHyperop {}

/// One entry of a product sequence `μ₁ γ₁ μ₂ γ₂ … μₙ`.
#[derive(Clone, Copy, Debug)]
pub enum Factor<'a> {
    Subset(&'a FuzzySubset),
    Sort(usize),
}

impl FuzzyGammaHyperop {
    /// Builds a proper structure from a flat table laid out as
    /// `[a][γ][b][t]`. Zero cells are rejected.
    pub fn from_table(carrier: Arc<Carrier>, grades: Vec<Grade>) -> Result<Self> {
        Self::build(carrier, grades, true)
    }

    /// Like [`from_table`](Self::from_table) but zero cells are allowed.
    pub fn from_table_improper(carrier: Arc<Carrier>, grades: Vec<Grade>) -> Result<Self> {
        Self::build(carrier, grades, false)
    }

    /// Builds a proper structure cell by cell.
    pub fn from_fn<F>(carrier: Arc<Carrier>, f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> Vec<Grade>,
    {
        let grades = Self::collect(&carrier, f)?;
        Self::build(carrier, grades, true)
    }

    pub fn from_fn_improper<F>(carrier: Arc<Carrier>, f: F) -> Result<Self>
    where
        F: FnMut(usize, usize, usize) -> Vec<Grade>,
    {
        let grades = Self::collect(&carrier, f)?;
        Self::build(carrier, grades, false)
    }

    fn collect<F>(carrier: &Carrier, mut f: F) -> Result<Vec<Grade>>
    where
        F: FnMut(usize, usize, usize) -> Vec<Grade>,
    {
        let (m, g) = (carrier.len(), carrier.sort_count());
        let mut grades = Vec::with_capacity(m * g * m * m);
        for a in 0..m {
            for gamma in 0..g {
                for b in 0..m {
                    let cell = f(a, gamma, b);
                    if cell.len() != m {
                        return Err(Error::LengthMismatch {
                            expected: m,
                            found: cell.len(),
                        });
                    }
                    grades.extend(cell);
                }
            }
        }
        Ok(grades)
    }

    fn build(carrier: Arc<Carrier>, grades: Vec<Grade>, proper: bool) -> Result<Self> {
        let (m, g) = (carrier.len(), carrier.sort_count());
        let expected = m * g * m * m;
        if grades.len() != expected {
            return Err(Error::LengthMismatch {
                expected,
                found: grades.len(),
            });
        }
        let h = FuzzyGammaHyperop {
            carrier,
            grades,
            proper,
        };
        if proper {
            if let Some((a, gamma, b)) = h.first_zero_cell() {
                return Err(Error::ZeroCell { a, gamma, b });
            }
        }
        Ok(h)
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    /// Number of elements `|M|`.
    pub fn size(&self) -> usize {
        self.carrier.len()
    }

    /// Number of sorts `|Γ|`.
    pub fn sorts(&self) -> usize {
        self.carrier.sort_count()
    }

    /// Whether the structure was built with the no-zero-cell guarantee.
    pub fn is_proper(&self) -> bool {
        self.proper
    }

    /// The flat `[a][γ][b][t]` grade table.
    pub fn table(&self) -> &[Grade] {
        &self.grades
    }

    pub fn first_zero_cell(&self) -> Option<(usize, usize, usize)> {
        let (m, g) = (self.size(), self.sorts());
        for a in 0..m {
            for gamma in 0..g {
                for b in 0..m {
                    if self.cell(a, gamma, b).iter().all(|x| x.is_zero()) {
                        return Some((a, gamma, b));
                    }
                }
            }
        }
        None
    }

    #[inline]
    fn offset(&self, a: usize, gamma: usize, b: usize) -> usize {
        let (m, g) = (self.size(), self.sorts());
        ((a * g + gamma) * m + b) * m
    }

    /// Grades of `a∘γ∘b`, indexed by element. Indices must be in range.
    #[inline]
    pub fn cell(&self, a: usize, gamma: usize, b: usize) -> &[Grade] {
        let o = self.offset(a, gamma, b);
        &self.grades[o..o + self.size()]
    }

    fn check_indices(&self, elements: &[usize], gamma: usize) -> Result<()> {
        for &e in elements {
            self.carrier.check_element(e)?;
        }
        self.carrier.check_sort(gamma)
    }

    fn check_subset(&self, mu: &FuzzySubset) -> Result<()> {
        if self.carrier.same_as(mu.carrier()) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    fn subset(&self, grades: Vec<Grade>) -> FuzzySubset {
        FuzzySubset::from_parts(self.carrier.clone(), grades)
    }

    /// `a∘γ∘b`.
    pub fn compose_elem(&self, a: usize, gamma: usize, b: usize) -> Result<FuzzySubset> {
        self.check_indices(&[a, b], gamma)?;
        Ok(self.subset(self.cell(a, gamma, b).to_vec()))
    }

    /// `a∘γ∘μ`.
    pub fn compose_left(&self, a: usize, gamma: usize, mu: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_indices(&[a], gamma)?;
        self.check_subset(mu)?;
        Ok(self.subset(self.left_grades(a, gamma, mu.grades())))
    }

    /// `μ∘γ∘a`.
    pub fn compose_right(&self, mu: &FuzzySubset, gamma: usize, a: usize) -> Result<FuzzySubset> {
        self.check_indices(&[a], gamma)?;
        self.check_subset(mu)?;
        Ok(self.subset(self.right_grades(mu.grades(), gamma, a)))
    }

    /// `μ∘γ∘ν`.
    pub fn compose_fuzzy(&self, mu: &FuzzySubset, gamma: usize, nu: &FuzzySubset) -> Result<FuzzySubset> {
        self.check_indices(&[], gamma)?;
        self.check_subset(mu)?;
        self.check_subset(nu)?;
        Ok(self.subset(self.fuzzy_grades(mu.grades(), gamma, nu.grades())))
    }

    /// Left fold of [`compose_fuzzy`](Self::compose_fuzzy) over a sequence
    /// `μ₁ γ₁ μ₂ … γₙ₋₁ μₙ`. On an associative structure the bracketing does
    /// not matter.
    pub fn compose_many(&self, factors: &[Factor<'_>]) -> Result<FuzzySubset> {
        let (subsets, sorts) = self.split_factors(factors)?;
        let mut acc = subsets[0].grades().to_vec();
        for (gamma, nu) in sorts.iter().zip(&subsets[1..]) {
            acc = self.fuzzy_grades(&acc, *gamma, nu.grades());
        }
        Ok(self.subset(acc))
    }

    /// Right fold `μ₁ γ₁ (μ₂ γ₂ (… μₙ))`.
    pub fn compose_many_right(&self, factors: &[Factor<'_>]) -> Result<FuzzySubset> {
        let (subsets, sorts) = self.split_factors(factors)?;
        let n = subsets.len();
        let mut acc = subsets[n - 1].grades().to_vec();
        for i in (0..n - 1).rev() {
            acc = self.fuzzy_grades(subsets[i].grades(), sorts[i], &acc);
        }
        Ok(self.subset(acc))
    }

    fn split_factors<'a>(&self, factors: &[Factor<'a>]) -> Result<(Vec<&'a FuzzySubset>, Vec<usize>)> {
        if factors.len() < 3 || factors.len().is_multiple_of(2) {
            return Err(Error::MalformedProduct);
        }
        let mut subsets = Vec::new();
        let mut sorts = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            match (i % 2, f) {
                (0, Factor::Subset(mu)) => {
                    self.check_subset(mu)?;
                    subsets.push(*mu);
                }
                (1, Factor::Sort(gamma)) => {
                    self.carrier.check_sort(*gamma)?;
                    sorts.push(*gamma);
                }
                _ => return Err(Error::MalformedProduct),
            }
        }
        Ok((subsets, sorts))
    }

    pub(crate) fn left_grades(&self, a: usize, gamma: usize, mu: &[Grade]) -> Vec<Grade> {
        let m = self.size();
        let mut out = vec![Grade::ZERO; m];
        if mu.iter().all(|g| g.is_zero()) {
            return out;
        }
        for (t, &mu_t) in mu.iter().enumerate() {
            if mu_t.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.cell(a, gamma, t)) {
                *o = (*o).join(x.meet(mu_t));
            }
        }
        out
    }

    pub(crate) fn right_grades(&self, mu: &[Grade], gamma: usize, a: usize) -> Vec<Grade> {
        let m = self.size();
        let mut out = vec![Grade::ZERO; m];
        if mu.iter().all(|g| g.is_zero()) {
            return out;
        }
        for (t, &mu_t) in mu.iter().enumerate() {
            if mu_t.is_zero() {
                continue;
            }
            for (o, &x) in out.iter_mut().zip(self.cell(t, gamma, a)) {
                *o = (*o).join(mu_t.meet(x));
            }
        }
        out
    }

    pub(crate) fn fuzzy_grades(&self, mu: &[Grade], gamma: usize, nu: &[Grade]) -> Vec<Grade> {
        let m = self.size();
        let mut out = vec![Grade::ZERO; m];
        for (p, &mu_p) in mu.iter().enumerate() {
            if mu_p.is_zero() {
                continue;
            }
            for (q, &nu_q) in nu.iter().enumerate() {
                let w = mu_p.meet(nu_q);
                if w.is_zero() {
                    continue;
                }
                for (o, &x) in out.iter_mut().zip(self.cell(p, gamma, q)) {
                    *o = (*o).join(w.meet(x));
                }
            }
        }
        out
    }

    /// `(a∘α∘b)∘β∘c = a∘α∘(b∘β∘c)` for all `a, b, c, α, β`.
    ///
    /// Both sides are computed with the element-level formulas; the witness is
    /// the lexicographically first violating `(a, α, b, β, c, r)`.
    pub fn is_associative(&self) -> CheckReport {
        let (m, g) = (self.size(), self.sorts());
        for a in 0..m {
            for alpha in 0..g {
                for b in 0..m {
                    let ab = self.cell(a, alpha, b);
                    for beta in 0..g {
                        for c in 0..m {
                            let lhs = self.right_grades(ab, beta, c);
                            let rhs = self.left_grades(a, alpha, self.cell(b, beta, c));
                            if let Some(r) = (0..m).find(|&r| lhs[r] != rhs[r]) {
                                return CheckReport::fail(
                                    Witness::new("(a∘α∘b)∘β∘c ≠ a∘α∘(b∘β∘c)")
                                        .elements([a, b, c])
                                        .sorts([alpha, beta])
                                        .point(r)
                                        .grades(lhs[r], rhs[r]),
                                );
                            }
                        }
                    }
                }
            }
        }
        CheckReport::pass()
    }

    /// Associativity plus `x∘γ∘M = M∘γ∘x = χ_M` for every `x, γ`.
    pub fn is_hypergroup(&self) -> CheckReport {
        self.is_associative().and_then(|| self.reproduction())
    }

    fn reproduction(&self) -> CheckReport {
        let (m, g) = (self.size(), self.sorts());
        let full = vec![Grade::ONE; m];
        for x in 0..m {
            for gamma in 0..g {
                let left = self.left_grades(x, gamma, &full);
                if let Some((r, got, want)) = first_excess(&full, &left).map(|(r, w, g)| (r, g, w)) {
                    return CheckReport::fail(
                        Witness::new("x∘γ∘M ≠ χ_M")
                            .elements([x])
                            .sorts([gamma])
                            .point(r)
                            .grades(got, want),
                    );
                }
                let right = self.right_grades(&full, gamma, x);
                if let Some((r, got, want)) = first_excess(&full, &right).map(|(r, w, g)| (r, g, w)) {
                    return CheckReport::fail(
                        Witness::new("M∘γ∘x ≠ χ_M")
                            .elements([x])
                            .sorts([gamma])
                            .point(r)
                            .grades(got, want),
                    );
                }
            }
        }
        CheckReport::pass()
    }

    /// Every grade that occurs anywhere in the table.
    pub fn occurring_grades(&self) -> Vec<Grade> {
        let mut all: Vec<Grade> = self.grades.clone();
        all.sort();
        all.dedup();
        all
    }

    /// Same table over a carrier with different labels (same shape).
    pub fn relabel(&self, carrier: Arc<Carrier>) -> Result<Self> {
        if carrier.len() != self.size() || carrier.sort_count() != self.sorts() {
            return Err(Error::CarrierMismatch);
        }
        Ok(FuzzyGammaHyperop {
            carrier,
            grades: self.grades.clone(),
            proper: self.proper,
        })
    }
}
