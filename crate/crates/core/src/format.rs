//! JSON documents for structures, crisp tables, fuzzy subsets and maps.
//!
//! A structure document lists the carrier, the sorts, one common
//! denominator and every cell keyed `"a|γ|b"`, each cell an object mapping
//! element labels to integer numerators (absent labels mean 0):
//!
//! ```text
//! {
//!   "carrier": ["0", "1"],
//!   "gamma": ["g"],
//!   "denominator": 2,
//!   "table": {
//!     "0|g|0": {"0": 2},
//!     "0|g|1": {"0": 1, "1": 1},
//!     ...
//!   }
//! }
//! ```
//!
//! Emitted documents are canonical: the denominator is the least common
//! denominator of the table, cells and labels follow carrier order, zero
//! grades are omitted and each cell sits on its own line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::Deserialize;

use crate::bridge::CarrierMap;
use crate::carrier::{Carrier, FuzzySubset};
use crate::cuts::CrispGammaHyperop;
use crate::error::{Error, Result};
use crate::grade::{common_denominator, Grade};
use crate::hyperop::FuzzyGammaHyperop;

/// A JSON object read in document order that rejects repeated keys.
struct Entries<V>(Vec<(String, V)>);

impl<'de, V: Deserialize<'de>> Deserialize<'de> for Entries<V> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct EntriesVisitor<V>(PhantomData<V>);

        impl<'de, V: Deserialize<'de>> Visitor<'de> for EntriesVisitor<V> {
            type Value = Entries<V>;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("an object")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<Entries<V>, A::Error> {
                let mut seen = BTreeSet::new();
                let mut out = Vec::new();
                while let Some(key) = access.next_key::<String>()? {
                    if !seen.insert(key.clone()) {
                        return Err(de::Error::custom(format!("duplicate key {key:?}")));
                    }
                    out.push((key, access.next_value()?));
                }
                Ok(Entries(out))
            }
        }

        deserializer.deserialize_map(EntriesVisitor(PhantomData))
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawStructure {
    carrier: Vec<String>,
    gamma: Vec<String>,
    denominator: u64,
    table: Entries<Entries<u64>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCrisp {
    carrier: Vec<String>,
    gamma: Vec<String>,
    table: Entries<Vec<String>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSubset {
    denominator: u64,
    grades: Entries<u64>,
}

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
}

fn quote(s: &str) -> String {
    serde_json::to_string(s).expect("strings always serialize")
}

fn label_list<'a>(labels: impl Iterator<Item = &'a str>) -> String {
    labels.map(quote).collect::<Vec<_>>().join(", ")
}

fn cell_key(carrier: &Carrier, a: usize, gamma: usize, b: usize) -> String {
    format!("{}|{}|{}", carrier.element(a), carrier.sort(gamma), carrier.element(b))
}

/// Maps every `"a|γ|b"` key to its cell position, rejecting unknown or
/// missing cells.
fn place_cells<V>(carrier: &Carrier, entries: Vec<(String, V)>) -> Result<Vec<V>> {
    let (m, g) = (carrier.len(), carrier.sort_count());
    let mut slots: Vec<Option<V>> = (0..m * g * m).map(|_| None).collect();
    for (key, value) in entries {
        let parts: Vec<&str> = key.split('|').collect();
        let [a, gamma, b] = parts[..] else {
            return Err(Error::Format(format!("table key {key:?} is not of the form \"a|γ|b\"")));
        };
        let position = (|| -> Result<usize> {
            Ok((carrier.element_index(a)? * g + carrier.sort_index(gamma)?) * m + carrier.element_index(b)?)
        })()
        .map_err(|e| Error::Format(format!("table key {key:?}: {e}")))?;
        slots[position] = Some(value);
    }
    let mut out = Vec::with_capacity(slots.len());
    for (i, slot) in slots.into_iter().enumerate() {
        match slot {
            Some(v) => out.push(v),
            None => {
                let (a, rest) = (i / (g * m), i % (g * m));
                return Err(Error::Format(format!(
                    "missing table cell {:?}",
                    cell_key(carrier, a, rest / m, rest % m)
                )));
            }
        }
    }
    Ok(out)
}

fn grades_from_numerators(
    carrier: &Carrier,
    what: &str,
    denominator: u64,
    numerators: Vec<(String, u64)>,
) -> Result<Vec<Grade>> {
    let mut grades = vec![Grade::ZERO; carrier.len()];
    for (label, n) in numerators {
        let t = carrier
            .element_index(&label)
            .map_err(|e| Error::Format(format!("{what}: {e}")))?;
        if n > denominator {
            return Err(Error::Format(format!(
                "{what}: numerator {n} for {label:?} exceeds denominator {denominator}"
            )));
        }
        grades[t] = Grade::new(n, denominator)?;
    }
    Ok(grades)
}

pub fn parse_structure(text: &str) -> Result<FuzzyGammaHyperop> {
    let raw: RawStructure = from_json(text)?;
    if raw.denominator == 0 {
        return Err(Error::Format("denominator must be positive".into()));
    }
    let carrier = Carrier::new(raw.carrier, raw.gamma)?;
    let cells = place_cells(&carrier, raw.table.0)?;
    let (m, g) = (carrier.len(), carrier.sort_count());
    let mut grades = Vec::with_capacity(m * g * m * m);
    for (i, cell) in cells.into_iter().enumerate() {
        let (a, rest) = (i / (g * m), i % (g * m));
        let what = format!("cell {:?}", cell_key(&carrier, a, rest / m, rest % m));
        grades.extend(grades_from_numerators(&carrier, &what, raw.denominator, cell.0)?);
    }
    FuzzyGammaHyperop::from_table(carrier.clone(), grades.clone())
        .or_else(|_| FuzzyGammaHyperop::from_table_improper(carrier, grades))
}

fn numerator_object(carrier: &Carrier, grades: &[Grade], denominator: u64) -> String {
    let entries: Vec<String> = grades
        .iter()
        .enumerate()
        .filter(|(_, g)| !g.is_zero())
        .map(|(t, g)| {
            let n = g.scaled_to(denominator).expect("denominator is a common multiple");
            format!("{}: {}", quote(carrier.element(t)), n)
        })
        .collect();
    format!("{{{}}}", entries.join(", "))
}

pub fn emit_structure(h: &FuzzyGammaHyperop) -> String {
    let carrier = h.carrier();
    let denominator = common_denominator(h.table().iter().copied());
    let mut lines = Vec::new();
    for a in 0..h.size() {
        for gamma in 0..h.sorts() {
            for b in 0..h.size() {
                lines.push(format!(
                    "    {}: {}",
                    quote(&cell_key(carrier, a, gamma, b)),
                    numerator_object(carrier, h.cell(a, gamma, b), denominator)
                ));
            }
        }
    }
    format!(
        "{{\n  \"carrier\": [{}],\n  \"gamma\": [{}],\n  \"denominator\": {},\n  \"table\": {{\n{}\n  }}\n}}\n",
        label_list(carrier.elements()),
        label_list(carrier.sorts()),
        denominator,
        lines.join(",\n")
    )
}

/// Crisp documents use arrays of element labels as cells; an empty array is
/// an empty cell.
pub fn parse_crisp(text: &str) -> Result<CrispGammaHyperop> {
    let raw: RawCrisp = from_json(text)?;
    let carrier = Carrier::new(raw.carrier, raw.gamma)?;
    let cells = place_cells(&carrier, raw.table.0)?;
    let cells = cells
        .into_iter()
        .map(|labels| {
            labels
                .iter()
                .map(|l| carrier.element_index(l).map_err(|e| Error::Format(e.to_string())))
                .collect::<Result<BTreeSet<usize>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let (m, g) = (carrier.len(), carrier.sort_count());
    CrispGammaHyperop::from_fn_partial(carrier, |a, gamma, b| cells[(a * g + gamma) * m + b].clone())
}

pub fn emit_crisp(k: &CrispGammaHyperop) -> String {
    let carrier = k.carrier();
    let mut lines = Vec::new();
    for a in 0..k.size() {
        for gamma in 0..k.sorts() {
            for b in 0..k.size() {
                lines.push(format!(
                    "    {}: [{}]",
                    quote(&cell_key(carrier, a, gamma, b)),
                    label_list(k.cell(a, gamma, b).iter().map(|&t| carrier.element(t)))
                ));
            }
        }
    }
    format!(
        "{{\n  \"carrier\": [{}],\n  \"gamma\": [{}],\n  \"table\": {{\n{}\n  }}\n}}\n",
        label_list(carrier.elements()),
        label_list(carrier.sorts()),
        lines.join(",\n")
    )
}

/// `{"denominator": d, "grades": {"label": n, ...}}` over a given carrier.
pub fn parse_subset(carrier: &Arc<Carrier>, text: &str) -> Result<FuzzySubset> {
    let raw: RawSubset = from_json(text)?;
    if raw.denominator == 0 {
        return Err(Error::Format("denominator must be positive".into()));
    }
    let grades = grades_from_numerators(carrier, "fuzzy subset", raw.denominator, raw.grades.0)?;
    FuzzySubset::new(carrier.clone(), grades)
}

pub fn emit_subset(mu: &FuzzySubset) -> String {
    let denominator = common_denominator(mu.grades().iter().copied());
    format!(
        "{{\"denominator\": {}, \"grades\": {}}}\n",
        denominator,
        numerator_object(mu.carrier(), mu.grades(), denominator)
    )
}

/// A JSON object mapping every source label to a target label.
pub fn parse_map(source: &Arc<Carrier>, target: &Arc<Carrier>, text: &str) -> Result<CarrierMap> {
    let raw: Entries<String> = from_json(text)?;
    let pairs: BTreeMap<&str, &str> = raw.0.iter().map(|(k, v)| (k.as_str(), v.as_str())).collect();
    CarrierMap::from_labels(source.clone(), target.clone(), pairs)
}
