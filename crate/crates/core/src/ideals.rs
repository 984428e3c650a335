//! Fuzzy sub-Γ-hypersemigroups, left/right hyperideals, bi-ideals and
//! interior ideals.
//!
//! Every predicate takes the structure explicitly, so one fuzzy subset can be
//! tested against several structures. Inclusion `μ ⊆ ν` of fuzzy subsets is
//! the pointwise order. The predicates do not re-check associativity of the
//! structure; the equivalences between the two forms of each predicate rely
//! on it.

use crate::carrier::{first_excess, FuzzySubset};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::report::{CheckReport, Witness};

fn same_carrier(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<()> {
    if h.carrier().same_as(mu.carrier()) {
        Ok(())
    } else {
        Err(Error::CarrierMismatch)
    }
}

fn excess(note: &str, lhs: &[Grade], mu: &[Grade]) -> Option<Witness> {
    first_excess(lhs, mu).map(|(r, l, m)| Witness::new(note).point(r).grades(l, m))
}

fn point(m: usize, x: usize) -> Vec<Grade> {
    let mut v = vec![Grade::ZERO; m];
    v[x] = Grade::ONE;
    v
}

/// `μ∘γ∘μ ⊆ μ` for every sort `γ`.
pub fn is_sub_hypersemigroup(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let mu = mu.grades();
    for gamma in 0..h.sorts() {
        let lhs = h.fuzzy_grades(mu, gamma, mu);
        if let Some(w) = excess("μ∘γ∘μ ⊄ μ", &lhs, mu) {
            return Ok(CheckReport::fail(w.sorts([gamma])));
        }
    }
    Ok(CheckReport::pass())
}

/// `a∘γ∘μ ⊆ μ` for every `a ∈ M`, `γ ∈ Γ`.
pub fn is_left_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let mu = mu.grades();
    for a in 0..h.size() {
        for gamma in 0..h.sorts() {
            let lhs = h.left_grades(a, gamma, mu);
            if let Some(w) = excess("a∘γ∘μ ⊄ μ", &lhs, mu) {
                return Ok(CheckReport::fail(w.elements([a]).sorts([gamma])));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// `μ∘γ∘a ⊆ μ` for every `a ∈ M`, `γ ∈ Γ`.
pub fn is_right_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let mu = mu.grades();
    for a in 0..h.size() {
        for gamma in 0..h.sorts() {
            let lhs = h.right_grades(mu, gamma, a);
            if let Some(w) = excess("μ∘γ∘a ⊄ μ", &lhs, mu) {
                return Ok(CheckReport::fail(w.elements([a]).sorts([gamma])));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Left ideal test in the form `M∘γ∘μ ⊆ μ` for every `γ`, with `M` read as
/// `χ_M`.
pub fn left_ideal_via_m(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let full = vec![Grade::ONE; h.size()];
    let mu = mu.grades();
    for gamma in 0..h.sorts() {
        let lhs = h.fuzzy_grades(&full, gamma, mu);
        if let Some(w) = excess("M∘γ∘μ ⊄ μ", &lhs, mu) {
            return Ok(CheckReport::fail(w.sorts([gamma])));
        }
    }
    Ok(CheckReport::pass())
}

/// Right ideal test in the form `μ∘γ∘M ⊆ μ`.
pub fn right_ideal_via_m(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let full = vec![Grade::ONE; h.size()];
    let mu = mu.grades();
    for gamma in 0..h.sorts() {
        let lhs = h.fuzzy_grades(mu, gamma, &full);
        if let Some(w) = excess("μ∘γ∘M ⊄ μ", &lhs, mu) {
            return Ok(CheckReport::fail(w.sorts([gamma])));
        }
    }
    Ok(CheckReport::pass())
}

fn join_into(acc: &mut [Grade], other: &[Grade]) {
    for (a, &b) in acc.iter_mut().zip(other) {
        *a = (*a).join(b);
    }
}

/// Smallest left hyperideal containing `μ`: `μ ∪ ⋃_{γ∈Γ} (M∘γ∘μ)`.
///
/// The union runs over all sorts; with a single fixed sort the result need
/// not be closed under the other sorts (see
/// [`generate_left_ideal_single_sort`]).
pub fn generate_left_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    if mu.is_zero() {
        return Err(Error::ZeroSubset);
    }
    let full = vec![Grade::ONE; h.size()];
    let mut out = mu.grades().to_vec();
    for gamma in 0..h.sorts() {
        join_into(&mut out, &h.fuzzy_grades(&full, gamma, mu.grades()));
    }
    FuzzySubset::new(mu.carrier().clone(), out)
}

/// `μ ∪ (M∘γ∘μ)` for one fixed sort `γ`. Equal to
/// [`generate_left_ideal`] when `|Γ| = 1`.
pub fn generate_left_ideal_single_sort(h: &FuzzyGammaHyperop, mu: &FuzzySubset, gamma: usize) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    if mu.is_zero() {
        return Err(Error::ZeroSubset);
    }
    let full = FuzzySubset::full(h.carrier().clone());
    mu.union(&h.compose_fuzzy(&full, gamma, mu)?)
}

/// Smallest right hyperideal containing `μ`: `μ ∪ ⋃_{γ∈Γ} (μ∘γ∘M)`.
pub fn generate_right_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    if mu.is_zero() {
        return Err(Error::ZeroSubset);
    }
    let full = vec![Grade::ONE; h.size()];
    let mut out = mu.grades().to_vec();
    for gamma in 0..h.sorts() {
        join_into(&mut out, &h.fuzzy_grades(mu.grades(), gamma, &full));
    }
    FuzzySubset::new(mu.carrier().clone(), out)
}

/// `μ ∪ (μ∘γ∘M)` for one fixed sort `γ`.
pub fn generate_right_ideal_single_sort(h: &FuzzyGammaHyperop, mu: &FuzzySubset, gamma: usize) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    if mu.is_zero() {
        return Err(Error::ZeroSubset);
    }
    let full = FuzzySubset::full(h.carrier().clone());
    mu.union(&h.compose_fuzzy(mu, gamma, &full)?)
}

/// `μ∘α∘y∘β∘μ ⊆ μ` for all `y, α, β` (only this half of the bi-ideal test).
fn bi_condition(h: &FuzzyGammaHyperop, mu: &[Grade]) -> Option<Witness> {
    let m = h.size();
    for y in 0..m {
        let chi_y = point(m, y);
        for alpha in 0..h.sorts() {
            let left = h.fuzzy_grades(mu, alpha, &chi_y);
            for beta in 0..h.sorts() {
                let lhs = h.fuzzy_grades(&left, beta, mu);
                if let Some(w) = excess("μ∘α∘y∘β∘μ ⊄ μ", &lhs, mu) {
                    return Some(w.elements([y]).sorts([alpha, beta]));
                }
            }
        }
    }
    None
}

/// Sub-hypersemigroup with `μ∘α∘y∘β∘μ ⊆ μ` for all `y ∈ M`, `α, β ∈ Γ`.
pub fn is_bi_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    let sub = is_sub_hypersemigroup(h, mu)?;
    Ok(sub.and_then(|| CheckReport::from_witness(bi_condition(h, mu.grades()))))
}

/// `μ∘α∘M∘β∘μ ⊆ μ` for all `α, β`. For sub-hypersemigroups this agrees
/// with [`is_bi_ideal`].
pub fn bi_ideal_via_m(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let full = vec![Grade::ONE; h.size()];
    let mu = mu.grades();
    for alpha in 0..h.sorts() {
        let left = h.fuzzy_grades(mu, alpha, &full);
        for beta in 0..h.sorts() {
            let lhs = h.fuzzy_grades(&left, beta, mu);
            if let Some(w) = excess("μ∘α∘M∘β∘μ ⊄ μ", &lhs, mu) {
                return Ok(CheckReport::fail(w.sorts([alpha, beta])));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// `x∘α∘μ∘β∘y ⊆ μ` for all `x, y ∈ M`, `α, β ∈ Γ`.
pub fn is_interior_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let m = h.size();
    let mu = mu.grades();
    for x in 0..m {
        let chi_x = point(m, x);
        for alpha in 0..h.sorts() {
            let left = h.fuzzy_grades(&chi_x, alpha, mu);
            for beta in 0..h.sorts() {
                for y in 0..m {
                    let lhs = h.fuzzy_grades(&left, beta, &point(m, y));
                    if let Some(w) = excess("x∘α∘μ∘β∘y ⊄ μ", &lhs, mu) {
                        return Ok(CheckReport::fail(w.elements([x, y]).sorts([alpha, beta])));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// `M∘α∘μ∘β∘M ⊆ μ` for all `α, β`.
pub fn interior_ideal_via_m(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<CheckReport> {
    same_carrier(h, mu)?;
    let full = vec![Grade::ONE; h.size()];
    let mu = mu.grades();
    for alpha in 0..h.sorts() {
        let left = h.fuzzy_grades(&full, alpha, mu);
        for beta in 0..h.sorts() {
            let lhs = h.fuzzy_grades(&left, beta, &full);
            if let Some(w) = excess("M∘α∘μ∘β∘M ⊄ μ", &lhs, mu) {
                return Ok(CheckReport::fail(w.sorts([alpha, beta])));
            }
        }
    }
    Ok(CheckReport::pass())
}

/// For a bi-ideal `ν` and any `μ`, both `μ∘γ∘ν` and `ν∘γ∘μ` are bi-ideals
/// for every `γ`. A negative verdict names the failing product.
pub fn ideal_products_are_bi_ideals(h: &FuzzyGammaHyperop, mu: &FuzzySubset, nu: &FuzzySubset) -> Result<CheckReport> {
    for gamma in 0..h.sorts() {
        for (note, product) in [
            ("μ∘γ∘ν is not a bi-ideal", h.compose_fuzzy(mu, gamma, nu)?),
            ("ν∘γ∘μ is not a bi-ideal", h.compose_fuzzy(nu, gamma, mu)?),
        ] {
            let report = is_bi_ideal(h, &product)?;
            if let Some(inner) = report.witness() {
                let mut w = inner.clone();
                w.note = format!("{note} ({})", inner.note);
                w.sorts.insert(0, gamma);
                return Ok(CheckReport::fail(w));
            }
        }
    }
    Ok(CheckReport::pass())
}

fn close(mu: &FuzzySubset, mut step: impl FnMut(&[Grade]) -> Vec<Grade>) -> FuzzySubset {
    let mut current = mu.grades().to_vec();
    loop {
        let mut next = current.clone();
        join_into(&mut next, &step(&current));
        if next == current {
            return FuzzySubset::new(mu.carrier().clone(), current).expect("same length");
        }
        current = next;
    }
}

/// Smallest fuzzy sub-hypersemigroup containing `μ`, by iterating
/// `μ ← μ ∪ ⋃_γ μ∘γ∘μ` to a fixed point.
pub fn sub_hypersemigroup_closure(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    Ok(close(mu, |cur| {
        let mut acc = vec![Grade::ZERO; cur.len()];
        for gamma in 0..h.sorts() {
            join_into(&mut acc, &h.fuzzy_grades(cur, gamma, cur));
        }
        acc
    }))
}

/// Smallest bi-ideal containing `μ`, by iterating
/// `μ ← μ ∪ ⋃ μ∘γ∘μ ∪ ⋃ μ∘α∘M∘β∘μ` to a fixed point.
pub fn bi_ideal_closure(h: &FuzzyGammaHyperop, mu: &FuzzySubset) -> Result<FuzzySubset> {
    same_carrier(h, mu)?;
    let full = vec![Grade::ONE; h.size()];
    Ok(close(mu, |cur| {
        let mut acc = vec![Grade::ZERO; cur.len()];
        for alpha in 0..h.sorts() {
            join_into(&mut acc, &h.fuzzy_grades(cur, alpha, cur));
            let left = h.fuzzy_grades(cur, alpha, &full);
            for beta in 0..h.sorts() {
                join_into(&mut acc, &h.fuzzy_grades(&left, beta, cur));
            }
        }
        acc
    }))
}
