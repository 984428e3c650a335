//! Brute-force enumeration of structures, fuzzy subsets and partitions on a
//! finite grade grid, plus the search-based oracles used to cross-check the
//! constructive algorithms.

pub mod random;

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use itertools::Itertools;
use rayon::prelude::*;

use crate::carrier::{Carrier, FuzzySubset};
use crate::cuts::{crisp_is_associative, CrispGammaHyperop};
use crate::error::{Error, Result};
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::ideals::{is_left_ideal, is_right_ideal};
use crate::report::CheckReport;
use crate::relations::EquivRelation;

/// The grades `0, 1/d, …, 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GradeGrid {
    denominator: u64,
}

impl GradeGrid {
    pub fn new(denominator: u64) -> Result<GradeGrid> {
        if denominator == 0 {
            return Err(Error::ZeroDenominator);
        }
        Ok(GradeGrid { denominator })
    }

    pub fn denominator(self) -> u64 {
        self.denominator
    }

    pub fn grades(self) -> Vec<Grade> {
        (0..=self.denominator)
            .map(|k| Grade::new(k, self.denominator).expect("on the grid"))
            .collect()
    }

    pub fn contains(self, g: Grade) -> bool {
        g.scaled_to(self.denominator).is_some()
    }

    pub fn check(self, g: Grade) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::OffGrid {
                grade: g.to_string(),
                denominator: self.denominator,
            })
        }
    }

    fn len(self) -> u128 {
        self.denominator as u128 + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureFilter {
    All,
    /// No zero cells.
    Proper,
    /// Proper and associative.
    Associative,
    /// Proper, associative and reproductive.
    Hypergroup,
}

impl StructureFilter {
    pub fn accepts(self, h: &FuzzyGammaHyperop) -> bool {
        match self {
            StructureFilter::All => true,
            StructureFilter::Proper => h.first_zero_cell().is_none(),
            StructureFilter::Associative => h.first_zero_cell().is_none() && h.is_associative().passed(),
            StructureFilter::Hypergroup => h.first_zero_cell().is_none() && h.is_hypergroup().passed(),
        }
    }
}

impl fmt::Display for StructureFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StructureFilter::All => "all",
            StructureFilter::Proper => "proper",
            StructureFilter::Associative => "associative",
            StructureFilter::Hypergroup => "hypergroup",
        })
    }
}

impl FromStr for StructureFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<StructureFilter> {
        match s {
            "all" => Ok(StructureFilter::All),
            "proper" => Ok(StructureFilter::Proper),
            "associative" => Ok(StructureFilter::Associative),
            "hypergroup" => Ok(StructureFilter::Hypergroup),
            other => Err(Error::Format(format!(
                "unknown filter {other:?} (expected all, proper, associative or hypergroup)"
            ))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumSpec {
    carrier: Arc<Carrier>,
    grid: GradeGrid,
    filter: StructureFilter,
}

impl EnumSpec {
    /// Structures on the numbered carrier with `m_size` elements and
    /// `gamma_size` sorts.
    pub fn new(m_size: usize, gamma_size: usize, grid: GradeGrid, filter: StructureFilter) -> Result<EnumSpec> {
        Ok(EnumSpec {
            carrier: Carrier::numbered(m_size, gamma_size)?,
            grid,
            filter,
        })
    }

    pub fn carrier(&self) -> &Arc<Carrier> {
        &self.carrier
    }

    pub fn grid(&self) -> GradeGrid {
        self.grid
    }

    pub fn filter(&self) -> StructureFilter {
        self.filter
    }

    pub fn table_len(&self) -> usize {
        let m = self.carrier.len();
        m * m * m * self.carrier.sort_count()
    }

    /// `(d+1)^(m²·|Γ|·m)`, or `None` if it does not fit in 128 bits.
    pub fn raw_count(&self) -> Option<u128> {
        let exp = u32::try_from(self.table_len()).ok()?;
        self.grid.len().checked_pow(exp)
    }

    fn checked_count(&self, budget: u128) -> Result<u128> {
        match self.raw_count() {
            Some(n) if n <= budget => Ok(n),
            Some(n) => Err(Error::BudgetExceeded { needed: n, budget }),
            None => Err(Error::BudgetExceeded {
                needed: u128::MAX,
                budget,
            }),
        }
    }

    /// The structure with lexicographic index `index` (first table entry
    /// most significant).
    pub fn structure_at(&self, index: u128) -> FuzzyGammaHyperop {
        let grades = self.grid.grades();
        let base = self.grid.len();
        let len = self.table_len();
        let mut table = vec![Grade::ZERO; len];
        let mut rest = index;
        for slot in table.iter_mut().rev() {
            *slot = grades[(rest % base) as usize];
            rest /= base;
        }
        build(self.carrier.clone(), table)
    }
}

fn build(carrier: Arc<Carrier>, table: Vec<Grade>) -> FuzzyGammaHyperop {
    FuzzyGammaHyperop::from_table(carrier.clone(), table.clone())
        .or_else(|_| FuzzyGammaHyperop::from_table_improper(carrier, table))
        .expect("table length matches carrier")
}

/// Serial lexicographic enumeration; yields `(index, structure)` for every
/// structure accepted by the filter.
pub struct Structures {
    spec: EnumSpec,
    next: u128,
    end: u128,
}

impl Structures {
    /// Restarts the scan at a cursor (a raw lexicographic index).
    pub fn from_cursor(mut self, cursor: u128) -> Structures {
        self.next = cursor.min(self.end);
        self
    }

    /// The next raw index that will be examined.
    pub fn cursor(&self) -> u128 {
        self.next
    }
}

impl Iterator for Structures {
    type Item = (u128, FuzzyGammaHyperop);

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let index = self.next;
            self.next += 1;
            let h = self.spec.structure_at(index);
            if self.spec.filter.accepts(&h) {
                return Some((index, h));
            }
        }
        None
    }
}

pub fn enumerate_structures(spec: &EnumSpec, budget: u128) -> Result<Structures> {
    let end = spec.checked_count(budget)?;
    Ok(Structures {
        spec: spec.clone(),
        next: 0,
        end,
    })
}

/// Options for [`scan_structures`].
#[derive(Clone, Copy, Debug, Default)]
pub struct Scan {
    pub cursor: u128,
    pub limit: Option<usize>,
    /// Keep only the lexicographically least table of each isomorphism class
    /// under permutations of the carrier.
    pub iso: bool,
}

#[derive(Clone, Debug)]
pub struct ScanPage {
    pub items: Vec<(u128, FuzzyGammaHyperop)>,
    /// Where to resume, or `None` when the enumeration is exhausted.
    pub next_cursor: Option<u128>,
}

const CHUNK: u128 = 1 << 12;

/// Parallel scan by index range. The result is identical to the serial
/// enumeration for any thread count.
pub fn scan_structures(spec: &EnumSpec, budget: u128, scan: &Scan) -> Result<ScanPage> {
    let end = spec.checked_count(budget)?;
    let limit = scan.limit.unwrap_or(usize::MAX);
    let mut items = Vec::new();
    let mut start = scan.cursor.min(end);
    while start < end && items.len() < limit {
        let stop = (start + CHUNK).min(end);
        let found: Vec<(u128, FuzzyGammaHyperop)> = (0..(stop - start) as u64)
            .into_par_iter()
            .filter_map(|offset| {
                let index = start + offset as u128;
                let h = spec.structure_at(index);
                let keep = spec.filter.accepts(&h) && (!scan.iso || is_canonical(&h));
                keep.then_some((index, h))
            })
            .collect();
        for (index, h) in found {
            if items.len() == limit {
                return Ok(ScanPage {
                    items,
                    next_cursor: Some(index),
                });
            }
            items.push((index, h));
        }
        start = stop;
    }
    let next_cursor = if start < end {
        Some(start)
    } else {
        None
    };
    Ok(ScanPage { items, next_cursor })
}

/// Number of structures accepted by the filter (and, with `iso`, the number
/// of isomorphism classes among them).
pub fn count_structures(spec: &EnumSpec, budget: u128, iso: bool) -> Result<u128> {
    let end = spec.checked_count(budget)?;
    let mut total = 0u128;
    let mut start = 0u128;
    while start < end {
        let stop = (start + CHUNK).min(end);
        total += (0..(stop - start) as u64)
            .into_par_iter()
            .filter(|&offset| {
                let h = spec.structure_at(start + offset as u128);
                spec.filter.accepts(&h) && (!iso || is_canonical(&h))
            })
            .count() as u128;
        start = stop;
    }
    Ok(total)
}

fn permuted_table(h: &FuzzyGammaHyperop, perm: &[usize]) -> Vec<Grade> {
    let (m, g) = (h.size(), h.sorts());
    let mut out = vec![Grade::ZERO; m * g * m * m];
    for a in 0..m {
        for gamma in 0..g {
            for b in 0..m {
                let base = ((perm[a] * g + gamma) * m + perm[b]) * m;
                for (t, &grade) in h.cell(a, gamma, b).iter().enumerate() {
                    out[base + perm[t]] = grade;
                }
            }
        }
    }
    out
}

/// The lexicographically least table among all relabelings of the carrier
/// (sorts are never permuted).
pub fn canonical_table(h: &FuzzyGammaHyperop) -> Vec<Grade> {
    (0..h.size())
        .permutations(h.size())
        .map(|perm| permuted_table(h, &perm))
        .min()
        .expect("at least the identity permutation")
}

pub fn is_canonical(h: &FuzzyGammaHyperop) -> bool {
    (0..h.size())
        .permutations(h.size())
        .all(|perm| permuted_table(h, &perm).as_slice().cmp(h.table()) != Ordering::Less)
}

/// All fuzzy subsets with grades on the grid, in lexicographic order (first
/// element most significant): the zero subset first and `χ_M` last.
pub fn enumerate_fuzzy_subsets(
    carrier: &Arc<Carrier>,
    grid: GradeGrid,
    budget: u128,
) -> Result<impl Iterator<Item = FuzzySubset>> {
    let ranges = vec![grid.grades(); carrier.len()];
    subsets_over(carrier.clone(), ranges, budget)
}

fn subsets_over(
    carrier: Arc<Carrier>,
    ranges: Vec<Vec<Grade>>,
    budget: u128,
) -> Result<impl Iterator<Item = FuzzySubset>> {
    let needed = ranges
        .iter()
        .try_fold(1u128, |acc, r| acc.checked_mul(r.len() as u128))
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(ranges
        .into_iter()
        .multi_cartesian_product()
        .map(move |grades| FuzzySubset::new(carrier.clone(), grades).expect("length matches carrier")))
}

/// Bell numbers `B(0..=n)`.
pub fn bell_number(n: usize) -> Option<u128> {
    let mut row: Vec<u128> = vec![1];
    for _ in 0..n {
        let mut next = vec![*row.last().expect("nonempty row")];
        for x in &row {
            next.push(next.last().expect("nonempty row").checked_add(*x)?);
        }
        row = next;
    }
    Some(row[0])
}

/// All equivalence relations on the carrier: the discrete relation first and
/// the universal relation last (reverse lexicographic order of restricted
/// growth strings).
pub fn enumerate_equiv_relations(carrier: &Arc<Carrier>, budget: u128) -> Result<Vec<EquivRelation>> {
    let needed = bell_number(carrier.len()).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let m = carrier.len();
    let mut out = Vec::new();
    let mut rgs = vec![0usize; m];
    loop {
        out.push(EquivRelation::from_class_of(carrier.clone(), &rgs)?);
        // advance to the next restricted growth string
        let mut i = m;
        loop {
            if i <= 1 {
                out.reverse();
                return Ok(out);
            }
            i -= 1;
            let ceiling = rgs[..i].iter().max().copied().unwrap_or(0) + 1;
            if rgs[i] < ceiling {
                rgs[i] += 1;
                rgs[i + 1..].iter_mut().for_each(|x| *x = 0);
                break;
            }
        }
    }
}

/// Number of crisp tables on `m` elements and `g` sorts that are
/// associative. Cells range over nonempty subsets, or over all subsets when
/// `allow_empty` is set.
pub fn count_crisp_hypersemigroups(m: usize, g: usize, allow_empty: bool, budget: u128) -> Result<u128> {
    let carrier = Carrier::numbered(m, g)?;
    let first = if allow_empty { 0u32 } else { 1 };
    let masks: Vec<u32> = (first..(1u32 << m)).collect();
    let cells = m * g * m;
    let needed = (masks.len() as u128)
        .checked_pow(cells as u32)
        .unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let base = masks.len() as u128;
    let count = (0..needed as u64)
        .into_par_iter()
        .filter(|&index| {
            let mut digits = vec![0u32; cells];
            let mut rest = index as u128;
            for d in digits.iter_mut().rev() {
                *d = masks[(rest % base) as usize];
                rest /= base;
            }
            let k = CrispGammaHyperop::from_fn_partial(carrier.clone(), |a, gamma, b| {
                let mask = digits[(a * g + gamma) * m + b];
                (0..m).filter(move |t| mask >> t & 1 == 1)
            })
            .expect("cells within carrier");
            crisp_is_associative(&k).passed()
        })
        .count();
    Ok(count as u128)
}

/// The pointwise meet of all grid fuzzy subsets that contain `μ` and are
/// left fuzzy Γ-hyperideals.
pub fn oracle_min_left_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset, grid: GradeGrid, budget: u128) -> Result<FuzzySubset> {
    oracle_min(h, mu, grid, budget, is_left_ideal)
}

/// The right-sided counterpart of [`oracle_min_left_ideal`].
pub fn oracle_min_right_ideal(h: &FuzzyGammaHyperop, mu: &FuzzySubset, grid: GradeGrid, budget: u128) -> Result<FuzzySubset> {
    oracle_min(h, mu, grid, budget, is_right_ideal)
}

fn oracle_min(
    h: &FuzzyGammaHyperop,
    mu: &FuzzySubset,
    grid: GradeGrid,
    budget: u128,
    predicate: fn(&FuzzyGammaHyperop, &FuzzySubset) -> Result<CheckReport>,
) -> Result<FuzzySubset> {
    h.table().iter().try_for_each(|&g| grid.check(g))?;
    mu.grades().iter().try_for_each(|&g| grid.check(g))?;
    let ranges: Vec<Vec<Grade>> = mu
        .grades()
        .iter()
        .map(|&low| grid.grades().into_iter().filter(|&g| g >= low).collect())
        .collect();
    let mut meet = vec![Grade::ONE; h.size()];
    for nu in subsets_over(h.carrier().clone(), ranges, budget)? {
        if predicate(h, &nu)?.passed() {
            for (acc, &g) in meet.iter_mut().zip(nu.grades()) {
                *acc = acc.meet(g);
            }
        }
    }
    FuzzySubset::new(h.carrier().clone(), meet)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperop::families::{max_chain, NegInfinity};
    use crate::ideals::generate_left_ideal;

    fn spec(m: usize, g: usize, d: u64, filter: StructureFilter) -> EnumSpec {
        EnumSpec::new(m, g, GradeGrid::new(d).unwrap(), filter).unwrap()
    }

    #[test]
    fn tiny_counts() {
        let all = spec(1, 1, 1, StructureFilter::All);
        assert_eq!(all.raw_count(), Some(2));
        assert_eq!(enumerate_structures(&all, 10).unwrap().count(), 2);
        let proper = spec(1, 1, 1, StructureFilter::Proper);
        assert_eq!(enumerate_structures(&proper, 10).unwrap().count(), 1);
        assert_eq!(spec(2, 1, 1, StructureFilter::All).raw_count(), Some(256));
        assert!(matches!(
            enumerate_structures(&spec(2, 1, 2, StructureFilter::All), 1000),
            Err(Error::BudgetExceeded { needed: 6561, budget: 1000 })
        ));
        assert!(spec(4, 2, 6, StructureFilter::All).raw_count().is_none());
    }

    #[test]
    fn lexicographic_order_and_cursor() {
        let s = spec(1, 1, 2, StructureFilter::All);
        let grades: Vec<Grade> = enumerate_structures(&s, 10).unwrap().map(|(_, h)| h.table()[0]).collect();
        assert_eq!(grades, GradeGrid::new(2).unwrap().grades());
        let s = spec(2, 1, 1, StructureFilter::Associative);
        let all: Vec<u128> = enumerate_structures(&s, 1000).unwrap().map(|(i, _)| i).collect();
        let resumed: Vec<u128> = enumerate_structures(&s, 1000)
            .unwrap()
            .from_cursor(all[3] + 1)
            .map(|(i, _)| i)
            .collect();
        assert_eq!(resumed, all[4..]);
    }

    #[test]
    fn parallel_scan_matches_serial() {
        let s = spec(2, 1, 1, StructureFilter::Associative);
        let serial: Vec<u128> = enumerate_structures(&s, 1000).unwrap().map(|(i, _)| i).collect();
        let page = scan_structures(&s, 1000, &Scan::default()).unwrap();
        assert_eq!(page.items.iter().map(|(i, _)| *i).collect::<Vec<_>>(), serial);
        assert_eq!(page.next_cursor, None);
        let first = scan_structures(&s, 1000, &Scan { limit: Some(5), ..Scan::default() }).unwrap();
        assert_eq!(first.items.len(), 5);
        let rest = scan_structures(
            &s,
            1000,
            &Scan {
                cursor: first.next_cursor.unwrap(),
                ..Scan::default()
            },
        )
        .unwrap();
        assert_eq!(rest.items.len(), serial.len() - 5);
        assert_eq!(count_structures(&s, 1000, false).unwrap(), serial.len() as u128);
    }

    #[test]
    fn associative_census_matches_crisp_count() {
        let s = spec(2, 1, 1, StructureFilter::Associative);
        let fuzzy = count_structures(&s, 1000, false).unwrap();
        assert_eq!(fuzzy, count_crisp_hypersemigroups(2, 1, false, 1000).unwrap());
        let s = spec(2, 1, 1, StructureFilter::All);
        let any = enumerate_structures(&s, 1000)
            .unwrap()
            .filter(|(_, h)| h.is_associative().passed())
            .count() as u128;
        assert_eq!(any, count_crisp_hypersemigroups(2, 1, true, 1000).unwrap());
    }

    #[test]
    fn canonical_forms() {
        let s = spec(2, 1, 1, StructureFilter::All);
        for (_, h) in enumerate_structures(&s, 1000).unwrap() {
            let canon = canonical_table(&h);
            assert!(canon.as_slice() <= h.table());
            assert_eq!(is_canonical(&h), canon.as_slice() == h.table());
        }
        // every structure on one element is its own class
        assert_eq!(count_structures(&spec(1, 1, 3, StructureFilter::All), 100, true).unwrap(), 4);
        assert!(count_structures(&spec(2, 1, 1, StructureFilter::All), 1000, true).unwrap() < 256);
    }

    #[test]
    fn fuzzy_subset_enumeration() {
        let grid = GradeGrid::new(1).unwrap();
        let c = Carrier::numbered(2, 1).unwrap();
        assert_eq!(enumerate_fuzzy_subsets(&c, grid, 100).unwrap().count(), 4);
        let c3 = Carrier::numbered(3, 1).unwrap();
        let all: Vec<_> = enumerate_fuzzy_subsets(&c3, GradeGrid::new(2).unwrap(), 100).unwrap().collect();
        assert_eq!(all.len(), 27);
        assert!(all[0].is_zero());
        assert_eq!(all[26], FuzzySubset::full(c3.clone()));
        assert!(enumerate_fuzzy_subsets(&c3, GradeGrid::new(2).unwrap(), 26).is_err());
    }

    #[test]
    fn partitions() {
        assert_eq!(bell_number(3), Some(5));
        assert_eq!(bell_number(4), Some(15));
        let c = Carrier::numbered(4, 1).unwrap();
        let all = enumerate_equiv_relations(&c, 100).unwrap();
        assert_eq!(all.len(), 15);
        assert_eq!(all[0], EquivRelation::discrete(c.clone()));
        assert_eq!(all[14], EquivRelation::universal(c.clone()));
        assert!(all.iter().tuple_combinations().all(|(x, y)| x != y));
        assert_eq!(enumerate_equiv_relations(&Carrier::numbered(3, 1).unwrap(), 100).unwrap().len(), 5);
        assert!(enumerate_equiv_relations(&c, 14).is_err());
    }

    #[test]
    fn oracle_examples() {
        let h = max_chain(2, 1, NegInfinity::Omit).unwrap();
        let c = h.carrier().clone();
        let grid = GradeGrid::new(1).unwrap();
        let chi1 = FuzzySubset::point(c.clone(), 1).unwrap();
        let oracle = oracle_min_left_ideal(&h, &chi1, grid, 100).unwrap();
        assert_eq!(oracle.grades(), &[Grade::ZERO, Grade::ONE, Grade::ONE]);
        assert_eq!(oracle, generate_left_ideal(&h, &chi1).unwrap());
        assert_eq!(
            oracle_min_right_ideal(&h, &chi1, grid, 100).unwrap(),
            crate::ideals::generate_right_ideal(&h, &chi1).unwrap()
        );
        let full = FuzzySubset::full(c.clone());
        assert_eq!(oracle_min_left_ideal(&h, &full, grid, 100).unwrap(), full);
        let half = FuzzySubset::new(c.clone(), vec![Grade::new(1, 2).unwrap(); 3]).unwrap();
        assert!(matches!(oracle_min_left_ideal(&h, &half, grid, 100), Err(Error::OffGrid { .. })));
    }
}
