//! Named families of fuzzy Γ-hypersemigroups.

use std::sync::Arc;

use crate::carrier::{Carrier, FuzzySubset};
use crate::cuts::GammaOperation;
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;

fn sort_labels(sorts: usize) -> Vec<String> {
    if sorts == 1 {
        vec!["g".to_string()]
    } else {
        (0..sorts).map(|i| format!("g{i}")).collect()
    }
}

fn indicator(m: usize, hits: impl IntoIterator<Item = usize>, grade: Grade) -> Vec<Grade> {
    let mut cell = vec![Grade::ZERO; m];
    for t in hits {
        cell[t] = grade;
    }
    cell
}

/// `a∘γ∘b = χ_{{a,b}}` on any carrier.
pub fn pair_union(carrier: Arc<Carrier>) -> Result<FuzzyGammaHyperop> {
    let m = carrier.len();
    FuzzyGammaHyperop::from_fn(carrier, |a, _, b| indicator(m, [a, b], Grade::ONE))
}

/// `a∘γ∘b = χ_{{a,γ,b}}` where every sort label is also an element label.
pub fn triple_union(carrier: Arc<Carrier>) -> Result<FuzzyGammaHyperop> {
    let m = carrier.len();
    let sort_elements = carrier
        .sorts()
        .map(|s| carrier.element_index(s))
        .collect::<Result<Vec<_>>>()?;
    FuzzyGammaHyperop::from_fn(carrier, |a, gamma, b| indicator(m, [a, sort_elements[gamma], b], Grade::ONE))
}

/// How the bottom element `-inf` of the chain `{-inf, 0, …, n}` behaves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NegInfinity {
    /// Carrier is `{0, …, n}` only.
    Omit,
    /// `-inf` is the least element of the chain, so `max` treats it as an
    /// identity.
    Identity,
    /// `-inf∘γ∘a = a∘γ∘-inf = χ_{-inf}`.
    Absorbing,
}

fn chain_carrier(n: usize, sorts: usize, bottom: bool) -> Result<Arc<Carrier>> {
    let mut labels = Vec::with_capacity(n + 2);
    if bottom {
        labels.push("-inf".to_string());
    }
    labels.extend((0..=n).map(|i| i.to_string()));
    Carrier::new(labels, sort_labels(sorts))
}

/// `a∘γ∘b = χ_{max{a,b}}` on the chain `0 < 1 < … < n`, optionally with a
/// bottom element `-inf` at index 0.
pub fn max_chain(n: usize, sorts: usize, neg_inf: NegInfinity) -> Result<FuzzyGammaHyperop> {
    let bottom = neg_inf != NegInfinity::Omit;
    let carrier = chain_carrier(n, sorts, bottom)?;
    let m = carrier.len();
    FuzzyGammaHyperop::from_fn(carrier, |a, _, b| {
        let t = match neg_inf {
            NegInfinity::Absorbing if a == 0 || b == 0 => 0,
            _ => a.max(b),
        };
        indicator(m, [t], Grade::ONE)
    })
}

/// `(a∘γ∘b)(t) = 1/2` exactly at `t = min{a+b, n}` on `{0, …, n}`, with an
/// optional absorbing `-inf` (`-inf + a = -inf`).
pub fn truncated_sum(n: usize, sorts: usize, with_neg_inf: bool) -> Result<FuzzyGammaHyperop> {
    let carrier = chain_carrier(n, sorts, with_neg_inf)?;
    let m = carrier.len();
    let half = Grade::new(1, 2)?;
    let shift = usize::from(with_neg_inf);
    FuzzyGammaHyperop::from_fn(carrier, |a, _, b| {
        let t = if with_neg_inf && (a == 0 || b == 0) {
            0
        } else {
            ((a - shift) + (b - shift)).min(n) + shift
        };
        indicator(m, [t], half)
    })
}

/// Label of a nonempty subset of `{0, …, base-1}` encoded as a bitmask,
/// e.g. `0.2` for `{0, 2}`.
pub fn subset_label(mask: usize) -> String {
    let items: Vec<String> = (0..usize::BITS as usize)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i.to_string())
        .collect();
    items.join(".")
}

/// The structure on the nonempty subsets of a `base`-element set with
/// `(A∘γ∘B)(C) = 1/3` when `C ⊆ A ∪ B` and `0` otherwise. The empty set
/// is not an element of the carrier.
pub fn subset_union(base: usize, sorts: usize) -> Result<FuzzyGammaHyperop> {
    if base == 0 || base > 10 {
        return Err(Error::Format(format!("subset_union base must be in 1..=10, got {base}")));
    }
    let masks: Vec<usize> = (1..1usize << base).collect();
    let carrier = Carrier::new(masks.iter().map(|&s| subset_label(s)), sort_labels(sorts))?;
    let third = Grade::new(1, 3)?;
    FuzzyGammaHyperop::from_fn(carrier, |a, _, b| {
        let union = masks[a] | masks[b];
        masks
            .iter()
            .map(|&c| if c & !union == 0 { third } else { Grade::ZERO })
            .collect()
    })
}

/// Fuzzy image `a∘γ∘b = χ_{a+b+γ mod n}` of the cyclic Γ-group on
/// `Z_n` where sort `k` acts as translation by `k`.
pub fn cyclic_group(n: usize, sorts: usize) -> Result<FuzzyGammaHyperop> {
    let carrier = Carrier::new((0..n).map(|i| i.to_string()), sort_labels(sorts))?;
    FuzzyGammaHyperop::from_fn(carrier, |a, gamma, b| indicator(n, [(a + b + gamma) % n], Grade::ONE))
}

/// `(a∘γ∘b)(t) = μ(a) ∧ μ(b)` when `t = aγb`, and `0` otherwise.
///
/// `op` must be associative and `μ` a nonzero fuzzy Γ-subsemigroup of it,
/// i.e. `μ(aγb) ≥ μ(a) ∧ μ(b)`. Cells where `μ(a) ∧ μ(b) = 0` are zero, so
/// the result is proper only when `μ` is strictly positive.
pub fn from_gamma_semigroup_and_fuzzy_sub(op: &GammaOperation, mu: &FuzzySubset) -> Result<FuzzyGammaHyperop> {
    if !op.carrier().same_as(mu.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    if mu.is_zero() {
        return Err(Error::ZeroSubset);
    }
    op.check_associative()?;
    let (m, g) = (op.carrier().len(), op.carrier().sort_count());
    for a in 0..m {
        for gamma in 0..g {
            for b in 0..m {
                if mu.grade(op.apply(a, gamma, b)) < mu.grade(a).meet(mu.grade(b)) {
                    return Err(Error::NotSubsemigroup { a, gamma, b });
                }
            }
        }
    }
    let cell = |a: usize, gamma: usize, b: usize| indicator(m, [op.apply(a, gamma, b)], mu.grade(a).meet(mu.grade(b)));
    if mu.grades().iter().all(|g| !g.is_zero()) {
        FuzzyGammaHyperop::from_fn(op.carrier().clone(), cell)
    } else {
        FuzzyGammaHyperop::from_fn_improper(op.carrier().clone(), cell)
    }
}
