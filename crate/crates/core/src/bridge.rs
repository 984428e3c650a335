//! Passing between crisp and fuzzy Γ-hypersemigroups, images of fuzzy
//! subsets along maps, and homomorphism checks.
//!
//! `psi` keeps the support of each cell, `phi` replaces each crisp cell by its
//! characteristic function. `psi ∘ phi` is the identity; `phi ∘ psi` is the
//! identity exactly on tables whose grades are all 0 or 1.

use std::sync::Arc;

use crate::carrier::{Carrier, FuzzySubset};
use crate::cuts::CrispGammaHyperop;
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::report::{CheckReport, Witness};

/// A total map `f: M₁ → M₂` between carriers that share the same sorts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CarrierMap {
    source: Arc<Carrier>,
    target: Arc<Carrier>,
    assignment: Vec<usize>,
}

impl CarrierMap {
    pub fn new(source: Arc<Carrier>, target: Arc<Carrier>, assignment: Vec<usize>) -> Result<CarrierMap> {
        if !source.same_sorts(&target) {
            return Err(Error::SortMismatch);
        }
        if assignment.len() != source.len() {
            return Err(Error::LengthMismatch {
                expected: source.len(),
                found: assignment.len(),
            });
        }
        for &t in &assignment {
            target.check_element(t)?;
        }
        Ok(CarrierMap {
            source,
            target,
            assignment,
        })
    }

    /// Builds a map from `(source label, target label)` pairs; every source
    /// label must appear exactly once.
    pub fn from_labels<'a, I>(source: Arc<Carrier>, target: Arc<Carrier>, pairs: I) -> Result<CarrierMap>
    where
        I: IntoIterator<Item = (&'a str, &'a str)>,
    {
        let mut assignment = vec![None; source.len()];
        for (from, to) in pairs {
            let i = source.element_index(from)?;
            if assignment[i].is_some() {
                return Err(Error::DuplicateLabel {
                    what: "map source",
                    label: from.to_string(),
                });
            }
            assignment[i] = Some(target.element_index(to)?);
        }
        let assignment = assignment
            .into_iter()
            .enumerate()
            .map(|(i, t)| {
                t.ok_or_else(|| Error::Format(format!("map has no image for element {:?}", source.element(i))))
            })
            .collect::<Result<Vec<_>>>()?;
        CarrierMap::new(source, target, assignment)
    }

    pub fn identity(carrier: Arc<Carrier>) -> CarrierMap {
        let assignment = (0..carrier.len()).collect();
        CarrierMap {
            source: carrier.clone(),
            target: carrier,
            assignment,
        }
    }

    pub fn source(&self) -> &Arc<Carrier> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Carrier> {
        &self.target
    }

    pub fn apply(&self, m: usize) -> usize {
        self.assignment[m]
    }

    pub fn assignment(&self) -> &[usize] {
        &self.assignment
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &CarrierMap) -> Result<CarrierMap> {
        if !self.target.same_as(&next.source) {
            return Err(Error::CarrierMismatch);
        }
        let assignment = self.assignment.iter().map(|&t| next.assignment[t]).collect();
        Ok(CarrierMap {
            source: self.source.clone(),
            target: next.target.clone(),
            assignment,
        })
    }

    fn image_grades(&self, mu: &[Grade]) -> Vec<Grade> {
        let mut out = vec![Grade::ZERO; self.target.len()];
        for (r, &g) in mu.iter().enumerate() {
            let t = self.assignment[r];
            out[t] = out[t].join(g);
        }
        out
    }
}

/// The support projection `a∗γ∗b = {x | (a∘γ∘b)(x) > 0}`.
pub fn psi(h: &FuzzyGammaHyperop) -> Result<CrispGammaHyperop> {
    if let Some((a, gamma, b)) = h.first_zero_cell() {
        return Err(Error::ZeroCell { a, gamma, b });
    }
    CrispGammaHyperop::from_fn(h.carrier().clone(), |a, gamma, b| {
        h.cell(a, gamma, b)
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(x, _)| x)
            .collect::<Vec<_>>()
    })
}

/// The characteristic embedding `a∘γ∘b = χ_{a∗γ∗b}`.
pub fn phi(k: &CrispGammaHyperop) -> Result<FuzzyGammaHyperop> {
    if let Some((a, gamma, b)) = k.first_empty_cell() {
        return Err(Error::EmptyCell { a, gamma, b });
    }
    let m = k.size();
    FuzzyGammaHyperop::from_fn(k.carrier().clone(), |a, gamma, b| {
        let cell = k.cell(a, gamma, b);
        (0..m)
            .map(|x| if cell.contains(&x) { Grade::ONE } else { Grade::ZERO })
            .collect()
    })
}

/// `f(μ)(t) = ∨_{r ∈ f⁻¹(t)} μ(r)`, and `0` where the preimage is empty.
pub fn image_fuzzy(f: &CarrierMap, mu: &FuzzySubset) -> Result<FuzzySubset> {
    if !f.source.same_as(mu.carrier()) {
        return Err(Error::CarrierMismatch);
    }
    FuzzySubset::new(f.target.clone(), f.image_grades(mu.grades()))
}

fn check_ends(f: &CarrierMap, source: &Arc<Carrier>, target: &Arc<Carrier>) -> Result<()> {
    if f.source.same_as(source) && f.target.same_as(target) {
        Ok(())
    } else {
        Err(Error::CarrierMismatch)
    }
}

/// `f(a∘₁γ∘₁b) ≤ f(a)∘₂γ∘₂f(b)` for all `a, b, γ`.
pub fn is_fuzzy_homomorphism(f: &CarrierMap, h1: &FuzzyGammaHyperop, h2: &FuzzyGammaHyperop) -> Result<CheckReport> {
    check_ends(f, h1.carrier(), h2.carrier())?;
    for a in 0..h1.size() {
        for gamma in 0..h1.sorts() {
            for b in 0..h1.size() {
                let image = f.image_grades(h1.cell(a, gamma, b));
                let target = h2.cell(f.apply(a), gamma, f.apply(b));
                if let Some((t, l, r)) = crate::carrier::first_excess(&image, target) {
                    return Ok(CheckReport::fail(
                        Witness::new("f(a∘γ∘b) ≰ f(a)∘γ∘f(b)")
                            .elements([a, b])
                            .sorts([gamma])
                            .point(t)
                            .grades(l, r),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// `f(a∗₁γ∗₁b) ⊆ f(a)∗₂γ∗₂f(b)` for all `a, b, γ`. The witness point is an
/// element of the target carrier.
pub fn is_crisp_homomorphism(f: &CarrierMap, k1: &CrispGammaHyperop, k2: &CrispGammaHyperop) -> Result<CheckReport> {
    check_ends(f, k1.carrier(), k2.carrier())?;
    for a in 0..k1.size() {
        for gamma in 0..k1.sorts() {
            for b in 0..k1.size() {
                let target = k2.cell(f.apply(a), gamma, f.apply(b));
                if let Some(&x) = k1.cell(a, gamma, b).iter().find(|&&x| !target.contains(&f.apply(x))) {
                    return Ok(CheckReport::fail(
                        Witness::new("f(a∗γ∗b) ⊄ f(a)∗γ∗f(b)")
                            .elements([a, b])
                            .sorts([gamma])
                            .point(f.apply(x)),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cuts::GammaOperation;
    use crate::hyperop::families::{from_gamma_semigroup_and_fuzzy_sub, max_chain, NegInfinity};
    use std::collections::BTreeSet;

    fn max3() -> FuzzyGammaHyperop {
        max_chain(2, 1, NegInfinity::Omit).unwrap()
    }

    #[test]
    fn psi_examples() {
        let k = psi(&max3()).unwrap();
        for a in 0..3 {
            for b in 0..3 {
                assert_eq!(k.cell(a, 0, b), &BTreeSet::from([a.max(b)]));
            }
        }
        let c = Carrier::numbered(3, 1).unwrap();
        let op = GammaOperation::from_fn(c.clone(), |a, _, b| (a + b) % 3).unwrap();
        let mu = FuzzySubset::new(c, vec![Grade::new(1, 2).unwrap(); 3]).unwrap();
        let h = from_gamma_semigroup_and_fuzzy_sub(&op, &mu).unwrap();
        assert_eq!(psi(&h).unwrap(), op.to_hyperop());

        let improper = FuzzyGammaHyperop::from_fn_improper(Carrier::numbered(1, 1).unwrap(), |_, _, _| vec![Grade::ZERO]).unwrap();
        assert_eq!(psi(&improper).unwrap_err(), Error::ZeroCell { a: 0, gamma: 0, b: 0 });
    }

    #[test]
    fn phi_examples() {
        let c = Carrier::numbered(3, 2).unwrap();
        let op = GammaOperation::from_fn(c.clone(), |a, g, b| if g == 0 { a.max(b) } else { a.min(b) }).unwrap();
        let h = phi(&op.to_hyperop()).unwrap();
        assert_eq!(h.compose_elem(2, 1, 1).unwrap(), FuzzySubset::point(c.clone(), 1).unwrap());
        assert_eq!(psi(&h).unwrap(), op.to_hyperop());

        let total = CrispGammaHyperop::from_fn(c.clone(), |_, _, _| 0..3).unwrap();
        let h = phi(&total).unwrap();
        assert!(h.is_hypergroup().passed());

        let partial = CrispGammaHyperop::from_fn_partial(c, |a, _, _| 0..a).unwrap();
        assert_eq!(phi(&partial).unwrap_err(), Error::EmptyCell { a: 0, gamma: 0, b: 0 });
    }

    #[test]
    fn image_examples() {
        let c = Carrier::numbered(3, 1).unwrap();
        let d = Carrier::numbered(2, 1).unwrap();
        let f = CarrierMap::new(c.clone(), d.clone(), vec![1, 0, 1]).unwrap();
        for m in 0..3 {
            let chi = FuzzySubset::point(c.clone(), m).unwrap();
            assert_eq!(image_fuzzy(&f, &chi).unwrap(), FuzzySubset::point(d.clone(), f.apply(m)).unwrap());
        }
        let mu = FuzzySubset::new(c.clone(), vec![Grade::new(1, 3).unwrap(), Grade::ZERO, Grade::new(1, 2).unwrap()]).unwrap();
        let constant = CarrierMap::new(c.clone(), d.clone(), vec![0, 0, 0]).unwrap();
        assert_eq!(image_fuzzy(&constant, &mu).unwrap().grades(), &[Grade::new(1, 2).unwrap(), Grade::ZERO]);
        assert_eq!(image_fuzzy(&CarrierMap::identity(c.clone()), &mu).unwrap(), mu);
        assert_eq!(image_fuzzy(&f, &FuzzySubset::zero(d)).unwrap_err(), Error::CarrierMismatch);
    }

    #[test]
    fn map_validation() {
        let c = Carrier::numbered(2, 1).unwrap();
        let other_sorts = Carrier::numbered(2, 2).unwrap();
        assert_eq!(CarrierMap::new(c.clone(), other_sorts, vec![0, 1]).unwrap_err(), Error::SortMismatch);
        assert!(CarrierMap::new(c.clone(), c.clone(), vec![0, 2]).is_err());
        assert!(CarrierMap::from_labels(c.clone(), c.clone(), [("0", "1")]).is_err());
        let f = CarrierMap::from_labels(c.clone(), c.clone(), [("0", "1"), ("1", "1")]).unwrap();
        assert_eq!(f.assignment(), &[1, 1]);
    }

    #[test]
    fn homomorphism_examples() {
        let h = max3();
        let id = CarrierMap::identity(h.carrier().clone());
        assert!(is_fuzzy_homomorphism(&id, &h, &h).unwrap().passed());
        assert!(is_crisp_homomorphism(&id, &psi(&h).unwrap(), &psi(&h).unwrap()).unwrap().passed());

        let small = max_chain(1, 1, NegInfinity::Omit).unwrap();
        let inclusion = CarrierMap::new(small.carrier().clone(), h.carrier().clone(), vec![0, 1]).unwrap();
        assert!(is_fuzzy_homomorphism(&inclusion, &small, &h).unwrap().passed());

        let squash = CarrierMap::new(h.carrier().clone(), h.carrier().clone(), vec![0, 1, 0]).unwrap();
        let report = is_fuzzy_homomorphism(&squash, &h, &h).unwrap();
        let w = report.witness().unwrap();
        assert_eq!((w.elements.clone(), w.point), (vec![1, 2], Some(0)));
        assert_eq!(w.grades, Some((Grade::ONE, Grade::ZERO)));
        assert!(!is_crisp_homomorphism(&squash, &psi(&h).unwrap(), &psi(&h).unwrap()).unwrap().passed());
    }
}
