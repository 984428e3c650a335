//! Finite carriers `M` and `Γ`, fuzzy subsets and crisp subsets of `M`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

use crate::error::{Error, Result};
use crate::grade::{join_all, Grade};

/// The element set `M` together with the sort set `Γ`.
///
/// Labels are the external names; every algorithm works on the positional
/// index of a label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Carrier {
    elements: IndexSet<String>,
    sorts: IndexSet<String>,
}

fn check_label(label: &str) -> Result<()> {
    if label.is_empty() || label.contains(['|', ',', '{', '}']) {
        return Err(Error::InvalidLabel(label.to_string()));
    }
    Ok(())
}

fn collect_labels<I, S>(labels: I, what: &'static str) -> Result<IndexSet<String>>
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let mut set = IndexSet::new();
    for label in labels {
        let label = label.into();
        check_label(&label)?;
        if set.contains(&label) {
            return Err(Error::DuplicateLabel { what, label });
        }
        set.insert(label);
    }
    if set.is_empty() {
        return Err(Error::EmptyCarrier { what });
    }
    Ok(set)
}

impl Carrier {
    pub fn new<I, S, J, T>(elements: I, sorts: J) -> Result<Arc<Carrier>>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
        J: IntoIterator<Item = T>,
        T: Into<String>,
    {
        Ok(Arc::new(Carrier {
            elements: collect_labels(elements, "element")?,
            sorts: collect_labels(sorts, "sort")?,
        }))
    }

    /// Carrier with elements `0..m` and sorts `g0..g{k-1}` (or just `g` when
    /// there is a single sort).
    pub fn numbered(m: usize, sorts: usize) -> Result<Arc<Carrier>> {
        let sort_labels: Vec<String> = if sorts == 1 {
            vec!["g".to_string()]
        } else {
            (0..sorts).map(|i| format!("g{i}")).collect()
        };
        Carrier::new((0..m).map(|i| i.to_string()), sort_labels)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sort_count(&self) -> usize {
        self.sorts.len()
    }

    pub fn element(&self, index: usize) -> &str {
        &self.elements[index]
    }

    pub fn sort(&self, index: usize) -> &str {
        &self.sorts[index]
    }

    pub fn elements(&self) -> impl Iterator<Item = &str> {
        self.elements.iter().map(String::as_str)
    }

    pub fn sorts(&self) -> impl Iterator<Item = &str> {
        self.sorts.iter().map(String::as_str)
    }

    pub fn element_index(&self, label: &str) -> Result<usize> {
        self.elements
            .get_index_of(label)
            .ok_or_else(|| Error::UnknownLabel {
                what: "element",
                label: label.to_string(),
            })
    }

    pub fn sort_index(&self, label: &str) -> Result<usize> {
        self.sorts
            .get_index_of(label)
            .ok_or_else(|| Error::UnknownLabel {
                what: "sort",
                label: label.to_string(),
            })
    }

    /// Same element and sort labels as `other`.
    pub fn same_as(self: &Arc<Self>, other: &Arc<Carrier>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    pub fn same_sorts(&self, other: &Carrier) -> bool {
        self.sorts == other.sorts
    }

    pub(crate) fn check_element(&self, index: usize) -> Result<()> {
        if index < self.len() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "element",
                index,
                size: self.len(),
            })
        }
    }

    pub(crate) fn check_sort(&self, index: usize) -> Result<()> {
        if index < self.sort_count() {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                what: "sort",
                index,
                size: self.sort_count(),
            })
        }
    }
}

/// A total grade assignment `M → [0,1]`.
#[derive(Clone, Debug)]
pub struct FuzzySubset {
    carrier: Arc<Carrier>,
    grades: Vec<Grade>,
}

impl PartialEq for FuzzySubset {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.same_as(&other.carrier) && self.grades == other.grades
    }
}

impl Eq for FuzzySubset {}

impl FuzzySubset {
    pub fn new(carrier: Arc<Carrier>, grades: Vec<Grade>) -> Result<FuzzySubset> {
        if grades.len() != carrier.len() {
            return Err(Error::LengthMismatch {
                expected: carrier.len(),
                found: grades.len(),
            });
        }
        Ok(FuzzySubset { carrier, grades })
    }

    pub fn zero(carrier: Arc<Carrier>) -> FuzzySubset {
        let grades = vec![Grade::ZERO; carrier.len()];
        FuzzySubset { carrier, grades }
    }

    /// `χ_M`.
    pub fn full(carrier: Arc<Carrier>) -> FuzzySubset {
        let grades = vec![Grade::ONE; carrier.len()];
        FuzzySubset { carrier, grades }
    }

    /// `χ_{m}`.
    pub fn point(carrier: Arc<Carrier>, m: usize) -> Result<FuzzySubset> {
        carrier.check_element(m)?;
        let mut grades = vec![Grade::ZERO; carrier.len()];
        grades[m] = Grade::ONE;
        Ok(FuzzySubset { carrier, grades })
    }

    pub(crate) fn from_parts(carrier: Arc<Carrier>, grades: Vec<Grade>) -> FuzzySubset {
        debug_assert_eq!(grades.len(), carrier.len());
        FuzzySubset { carrier, grades }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn grades(&self) -> &[Grade] {
        &self.grades
    }

    pub fn grade(&self, m: usize) -> Grade {
        self.grades[m]
    }

    pub fn into_grades(self) -> Vec<Grade> {
        self.grades
    }

    pub fn is_zero(&self) -> bool {
        self.grades.iter().all(|g| g.is_zero())
    }

    /// Largest grade (the height of the fuzzy subset).
    pub fn height(&self) -> Grade {
        join_all(self.grades.iter().copied())
    }

    pub fn support(&self) -> CrispSubset {
        let members = self
            .grades
            .iter()
            .enumerate()
            .filter(|(_, g)| !g.is_zero())
            .map(|(i, _)| i)
            .collect();
        CrispSubset {
            carrier: self.carrier.clone(),
            members,
        }
    }

    fn check_same(&self, other: &FuzzySubset) -> Result<()> {
        if self.carrier.same_as(&other.carrier) {
            Ok(())
        } else {
            Err(Error::CarrierMismatch)
        }
    }

    /// Pointwise `μ ≤ ν`.
    pub fn leq(&self, other: &FuzzySubset) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.grades.iter().zip(&other.grades).all(|(a, b)| a <= b))
    }

    pub fn union(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.zip_with(other, Grade::join)
    }

    pub fn intersection(&self, other: &FuzzySubset) -> Result<FuzzySubset> {
        self.zip_with(other, Grade::meet)
    }

    fn zip_with(&self, other: &FuzzySubset, f: fn(Grade, Grade) -> Grade) -> Result<FuzzySubset> {
        self.check_same(other)?;
        let grades = self
            .grades
            .iter()
            .zip(&other.grades)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(FuzzySubset::from_parts(self.carrier.clone(), grades))
    }
}

pub(crate) fn first_excess(lhs: &[Grade], rhs: &[Grade]) -> Option<(usize, Grade, Grade)> {
    lhs.iter()
        .zip(rhs)
        .position(|(a, b)| a > b)
        .map(|i| (i, lhs[i], rhs[i]))
}

impl fmt::Display for FuzzySubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, g) in self.grades.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}: {}", self.carrier.element(i), g)?;
        }
        write!(f, "}}")
    }
}

/// A plain subset of `M`; may be empty.
#[derive(Clone, Debug)]
pub struct CrispSubset {
    carrier: Arc<Carrier>,
    members: BTreeSet<usize>,
}

impl PartialEq for CrispSubset {
    fn eq(&self, other: &Self) -> bool {
        self.carrier.same_as(&other.carrier) && self.members == other.members
    }
}

impl Eq for CrispSubset {}

impl CrispSubset {
    pub fn new<I: IntoIterator<Item = usize>>(carrier: Arc<Carrier>, members: I) -> Result<CrispSubset> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = members.iter().find(|&&m| m >= carrier.len()) {
            carrier.check_element(bad)?;
        }
        Ok(CrispSubset { carrier, members })
    }

    pub fn empty(carrier: Arc<Carrier>) -> CrispSubset {
        CrispSubset {
            carrier,
            members: BTreeSet::new(),
        }
    }

    pub fn full(carrier: Arc<Carrier>) -> CrispSubset {
        let members = (0..carrier.len()).collect();
        CrispSubset { carrier, members }
    }

    pub(crate) fn from_set(carrier: Arc<Carrier>, members: BTreeSet<usize>) -> CrispSubset {
        CrispSubset { carrier, members }
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, m: usize) -> bool {
        self.members.contains(&m)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &CrispSubset) -> bool {
        self.members.is_subset(&other.members)
    }

    /// `χ_S`.
    pub fn characteristic(&self) -> FuzzySubset {
        let mut grades = vec![Grade::ZERO; self.carrier.len()];
        for &m in &self.members {
            grades[m] = Grade::ONE;
        }
        FuzzySubset::from_parts(self.carrier.clone(), grades)
    }
}

impl fmt::Display for CrispSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.carrier.element(*m))?;
        }
        write!(f, "}}")
    }
}
