//! Equivalence relations, fuzzy (strongly) regular relations and quotients.
//!
//! Two fuzzy subsets `μ, ν` are related by the extension of `ρ` when every
//! support point of each is `ρ`-related to some support point of the other,
//! i.e. when both supports meet exactly the same classes.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::bridge::psi;
use crate::carrier::{Carrier, CrispSubset, FuzzySubset};
use crate::cuts::CrispGammaHyperop;
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::report::{CheckReport, Witness};

/// An equivalence relation stored as a partition of the carrier.
///
/// Classes are numbered in order of their smallest element, so two equal
/// relations always have identical representations.
#[derive(Clone, Debug)]
pub struct EquivRelation {
    carrier: Arc<Carrier>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
}

impl PartialEq for EquivRelation {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.same_as(&other.carrier) && self.class_of == other.class_of
    }
}

impl Eq for EquivRelation {}

impl EquivRelation {
    /// Builds the partition whose blocks are the fibres of `labels`
    /// (`labels[m]` is an arbitrary block id for element `m`).
    pub fn from_class_of(carrier: Arc<Carrier>, labels: &[usize]) -> Result<EquivRelation> {
        if labels.len() != carrier.len() {
            return Err(Error::LengthMismatch {
                expected: carrier.len(),
                found: labels.len(),
            });
        }
        let mut seen: Vec<usize> = Vec::new();
        let mut class_of = Vec::with_capacity(labels.len());
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for (m, l) in labels.iter().enumerate() {
            let k = match seen.iter().position(|x| x == l) {
                Some(k) => k,
                None => {
                    seen.push(*l);
                    classes.push(Vec::new());
                    seen.len() - 1
                }
            };
            class_of.push(k);
            classes[k].push(m);
        }
        Ok(EquivRelation {
            carrier,
            class_of,
            classes,
        })
    }

    /// Builds a relation from disjoint, covering, nonempty blocks.
    pub fn from_blocks(carrier: Arc<Carrier>, blocks: &[Vec<usize>]) -> Result<EquivRelation> {
        let mut labels = vec![usize::MAX; carrier.len()];
        for (k, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Format("relation blocks must be nonempty".into()));
            }
            for &m in block {
                carrier.check_element(m)?;
                if labels[m] != usize::MAX {
                    return Err(Error::DuplicateLabel {
                        what: "relation element",
                        label: carrier.element(m).to_string(),
                    });
                }
                labels[m] = k;
            }
        }
        if let Some(m) = labels.iter().position(|&l| l == usize::MAX) {
            return Err(Error::Format(format!(
                "relation does not cover element {:?}",
                carrier.element(m)
            )));
        }
        EquivRelation::from_class_of(carrier, &labels)
    }

    /// Parses block syntax over element labels: `a,b|c` or `{a,b}|{c}`.
    pub fn parse(carrier: Arc<Carrier>, text: &str) -> Result<EquivRelation> {
        let mut blocks = Vec::new();
        for block in text.split('|') {
            let block = block.trim();
            let inner = block
                .strip_prefix('{')
                .and_then(|b| b.strip_suffix('}'))
                .unwrap_or(block);
            let members = inner
                .split(',')
                .map(|label| carrier.element_index(label.trim()))
                .collect::<Result<Vec<_>>>()?;
            blocks.push(members);
        }
        EquivRelation::from_blocks(carrier, &blocks)
    }

    /// Every element in its own class.
    pub fn discrete(carrier: Arc<Carrier>) -> EquivRelation {
        let labels: Vec<usize> = (0..carrier.len()).collect();
        EquivRelation::from_class_of(carrier, &labels).expect("matching length")
    }

    /// A single class.
    pub fn universal(carrier: Arc<Carrier>) -> EquivRelation {
        let labels = vec![0; carrier.len()];
        EquivRelation::from_class_of(carrier, &labels).expect("matching length")
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn class_of(&self, m: usize) -> usize {
        self.class_of[m]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_subset(&self, k: usize) -> CrispSubset {
        CrispSubset::new(self.carrier.clone(), self.classes[k].iter().copied()).expect("indices in range")
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.class_of[a] == self.class_of[b]
    }

    /// All related ordered pairs `(a, b)`, including `a = b`.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let m = self.carrier.len();
        (0..m).flat_map(move |a| (0..m).filter(move |&b| self.related(a, b)).map(move |b| (a, b)))
    }

    /// Block syntax, e.g. `0,1|2`.
    pub fn to_block_string(&self) -> String {
        self.classes
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|&m| self.carrier.element(m))
                    .collect::<Vec<_>>()
                    .join(",")
            })
            .collect::<Vec<_>>()
            .join("|")
    }

    /// Carrier whose elements are the classes (labelled by joining member
    /// labels with `+`) and whose sorts are those of the original carrier.
    pub fn quotient_carrier(&self) -> Result<Arc<Carrier>> {
        let labels = self.classes.iter().map(|block| {
            block
                .iter()
                .map(|&m| self.carrier.element(m))
                .collect::<Vec<_>>()
                .join("+")
        });
        Carrier::new(labels, self.carrier.sorts().map(str::to_string))
    }

    fn support_classes(&self, grades: &[Grade]) -> BTreeSet<usize> {
        grades
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(m, _)| self.class_of[m])
            .collect()
    }

    fn check_structure(&self, carrier: &Arc<Carrier>) -> Result<()> {
        if self.carrier.same_as(carrier) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }
}

/// `μ ρ̄ ν`: the supports of `μ` and `ν` meet the same classes.
pub fn rel_extends(rho: &EquivRelation, mu: &FuzzySubset, nu: &FuzzySubset) -> Result<bool> {
    rho.check_structure(mu.carrier())?;
    rho.check_structure(nu.carrier())?;
    Ok(rho.support_classes(mu.grades()) == rho.support_classes(nu.grades()))
}

/// For `aρb`: `(a∘γ∘c) ρ̄ (b∘γ∘c)` and `(c∘γ∘a) ρ̄ (c∘γ∘b)` for all `c, γ`.
pub fn is_fuzzy_regular(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    rho.check_structure(h.carrier())?;
    for (a, b) in rho.pairs() {
        for c in 0..h.size() {
            for gamma in 0..h.sorts() {
                if rho.support_classes(h.cell(a, gamma, c)) != rho.support_classes(h.cell(b, gamma, c)) {
                    return Ok(CheckReport::fail(
                        Witness::new("aρb but a∘γ∘c and b∘γ∘c meet different classes")
                            .elements([a, b, c])
                            .sorts([gamma]),
                    ));
                }
                if rho.support_classes(h.cell(c, gamma, a)) != rho.support_classes(h.cell(c, gamma, b)) {
                    return Ok(CheckReport::fail(
                        Witness::new("aρb but c∘γ∘a and c∘γ∘b meet different classes")
                            .elements([a, b, c])
                            .sorts([gamma]),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Two-sided form of regularity: `aρa′, bρb′ ⇒ (a∘γ∘b) ρ̄ (a′∘γ∘b′)`.
pub fn is_fuzzy_regular_two_sided(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    rho.check_structure(h.carrier())?;
    for (a, a2) in rho.pairs() {
        for (b, b2) in rho.pairs() {
            for gamma in 0..h.sorts() {
                if rho.support_classes(h.cell(a, gamma, b)) != rho.support_classes(h.cell(a2, gamma, b2)) {
                    return Ok(CheckReport::fail(
                        Witness::new("a∘γ∘b and a′∘γ∘b′ meet different classes")
                            .elements([a, b, a2, b2])
                            .sorts([gamma]),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// For `aρb`, `cρd` and every `γ`: every support point of `a∘γ∘c` is related
/// to every support point of `b∘γ∘d`.
pub fn is_fuzzy_strongly_regular(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    rho.check_structure(h.carrier())?;
    for (a, b) in rho.pairs() {
        for (c, d) in rho.pairs() {
            for gamma in 0..h.sorts() {
                let left = rho.support_classes(h.cell(a, gamma, c));
                let right = rho.support_classes(h.cell(b, gamma, d));
                let joint: BTreeSet<usize> = left.union(&right).copied().collect();
                if joint.len() > 1 {
                    return Ok(CheckReport::fail(
                        Witness::new("aρb, cρd but supports of a∘γ∘c and b∘γ∘d span several classes")
                            .elements([a, b, c, d])
                            .sorts([gamma]),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Crisp regularity on `(M, ∗)`: `aρb ⇒` the sets `a∗γ∗c`, `b∗γ∗c` (and
/// `c∗γ∗a`, `c∗γ∗b`) each have every point related to some point of the
/// other.
pub fn is_crisp_regular(k: &CrispGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    rho.check_structure(k.carrier())?;
    let covers = |xs: &BTreeSet<usize>, ys: &BTreeSet<usize>| xs.iter().all(|&x| ys.iter().any(|&y| rho.related(x, y)));
    let extends = |xs: &BTreeSet<usize>, ys: &BTreeSet<usize>| covers(xs, ys) && covers(ys, xs);
    for (a, b) in rho.pairs() {
        for c in 0..k.size() {
            for gamma in 0..k.sorts() {
                if !extends(k.cell(a, gamma, c), k.cell(b, gamma, c)) || !extends(k.cell(c, gamma, a), k.cell(c, gamma, b)) {
                    return Ok(CheckReport::fail(
                        Witness::new("aρb but the products with c are not related")
                            .elements([a, b, c])
                            .sorts([gamma]),
                    ));
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Crisp strong regularity on `(M, ∗)`: `aρb, cρd ⇒ xρy` for all
/// `x ∈ a∗γ∗c`, `y ∈ b∗γ∗d`.
pub fn is_crisp_strongly_regular(k: &CrispGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    rho.check_structure(k.carrier())?;
    for (a, b) in rho.pairs() {
        for (c, d) in rho.pairs() {
            for gamma in 0..k.sorts() {
                for &x in k.cell(a, gamma, c) {
                    if let Some(&y) = k.cell(b, gamma, d).iter().find(|&&y| !rho.related(x, y)) {
                        return Ok(CheckReport::fail(
                            Witness::new(format!(
                                "aρb, cρd but {} ∈ a∗γ∗c and {} ∈ b∗γ∗d are unrelated",
                                k.carrier().element(x),
                                k.carrier().element(y)
                            ))
                            .elements([a, b, c, d])
                            .sorts([gamma]),
                        ));
                    }
                }
            }
        }
    }
    Ok(CheckReport::pass())
}

/// The crisp quotient `aρ ⊗ γ ⊗ bρ = {cρ : (a∘γ∘b)(c) > 0}`.
///
/// Independence of representatives is checked for every pair of
/// representatives; a dependence is reported as [`Error::NotRegular`].
pub fn quotient_crisp(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CrispGammaHyperop> {
    rho.check_structure(h.carrier())?;
    let carrier = rho.quotient_carrier()?;
    let classes = rho.classes();
    let mut cells = Vec::with_capacity(classes.len() * h.sorts() * classes.len());
    for block_a in classes {
        for gamma in 0..h.sorts() {
            for block_b in classes {
                let (a, b) = (block_a[0], block_b[0]);
                let expected = rho.support_classes(h.cell(a, gamma, b));
                for &a2 in block_a {
                    for &b2 in block_b {
                        if rho.support_classes(h.cell(a2, gamma, b2)) != expected {
                            return Err(Error::NotRegular { a, b, a2, b2, gamma });
                        }
                    }
                }
                cells.push(expected);
            }
        }
    }
    let n = classes.len();
    let g = h.sorts();
    CrispGammaHyperop::from_fn_partial(carrier, |a, gamma, b| cells[(a * g + gamma) * n + b].clone())
}

/// Result of [`quotient_fuzzy`]: the quotient table and whether the relation
/// met the strong-regularity precondition under which the quotient is
/// guaranteed to be a fuzzy Γ-hypersemigroup.
#[derive(Clone, Debug)]
pub struct FuzzyQuotient {
    pub structure: FuzzyGammaHyperop,
    pub strongly_regular: bool,
}

/// `(aρ ∗ γ ∗ bρ)(cρ) = ∨_{a′∈aρ, b′∈bρ, c′∈cρ} (a′∘γ∘b′)(c′)`.
pub fn quotient_fuzzy(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<FuzzyQuotient> {
    rho.check_structure(h.carrier())?;
    let carrier = rho.quotient_carrier()?;
    let classes = rho.classes();
    let cell = |ka: usize, gamma: usize, kb: usize| {
        let mut out = vec![Grade::ZERO; classes.len()];
        for &a in &classes[ka] {
            for &b in &classes[kb] {
                for (c, &g) in h.cell(a, gamma, b).iter().enumerate() {
                    let kc = rho.class_of(c);
                    out[kc] = out[kc].join(g);
                }
            }
        }
        out
    };
    let structure = if h.is_proper() {
        FuzzyGammaHyperop::from_fn(carrier, cell)?
    } else {
        FuzzyGammaHyperop::from_fn_improper(carrier, cell)?
    };
    Ok(FuzzyQuotient {
        structure,
        strongly_regular: is_fuzzy_strongly_regular(h, rho)?.passed(),
    })
}

/// Fuzzy regularity on `(M, ∘)` agrees with crisp regularity on `ψ(M, ∘)`,
/// and likewise for strong regularity.
pub fn verify_regular_transfer(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    let k = psi(h)?;
    let pairs = [
        ("regular", is_fuzzy_regular(h, rho)?.passed(), is_crisp_regular(&k, rho)?.passed()),
        (
            "strongly regular",
            is_fuzzy_strongly_regular(h, rho)?.passed(),
            is_crisp_strongly_regular(&k, rho)?.passed(),
        ),
    ];
    for (what, fuzzy, crisp) in pairs {
        if fuzzy != crisp {
            return Ok(CheckReport::fail(Witness::new(format!(
                "fuzzy {what} = {fuzzy} but crisp {what} = {crisp} for ρ = {}",
                rho.to_block_string()
            ))));
        }
    }
    Ok(CheckReport::pass())
}

/// `ρ` is strongly regular exactly when the crisp quotient is a Γ-semigroup
/// (single-valued and associative). A relation whose crisp quotient is not
/// well defined counts as not giving a Γ-semigroup.
pub fn verify_strong_quotient_is_semigroup(h: &FuzzyGammaHyperop, rho: &EquivRelation) -> Result<CheckReport> {
    let strong = is_fuzzy_strongly_regular(h, rho)?.passed();
    let semigroup = match quotient_crisp(h, rho) {
        Ok(q) => q.is_single_valued() && q.is_associative().passed(),
        Err(Error::NotRegular { .. }) => false,
        Err(e) => return Err(e),
    };
    if strong == semigroup {
        Ok(CheckReport::pass())
    } else {
        Ok(CheckReport::fail(Witness::new(format!(
            "strongly regular = {strong} but quotient is a Γ-semigroup = {semigroup} for ρ = {}",
            rho.to_block_string()
        ))))
    }
}
