//! Seeded random instances for property sweeps.
//!
//! Arbitrary tables are mostly non-associative. Associative structures are
//! built from random finite semigroups `S` (closures of random
//! transformations): with nonempty `X_γ ⊆ S¹`, the sets `a·X_γ·b` form a
//! crisp Γ-hypersemigroup, and grading a cell by `μ(a) ∧ μ(b) ∧ w(γ)` keeps
//! associativity as long as `μ(t) ≥ μ(a) ∧ μ(b)` on every `a·X_γ·b`. A
//! constant background grade below all others may be added to every point.
//! Arbitrary grades on the same supports are also tried, keeping only the
//! associative outcomes.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::carrier::{Carrier, FuzzySubset};
use crate::cuts::CrispGammaHyperop;
use crate::grade::Grade;
use crate::hyperop::FuzzyGammaHyperop;
use crate::search::GradeGrid;

pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn grade<R: Rng>(rng: &mut R, grid: GradeGrid) -> Grade {
    Grade::new(rng.gen_range(0..=grid.denominator()), grid.denominator()).expect("on the grid")
}

pub fn positive_grade<R: Rng>(rng: &mut R, grid: GradeGrid) -> Grade {
    Grade::new(rng.gen_range(1..=grid.denominator()), grid.denominator()).expect("on the grid")
}

/// Grid grade that is zero with probability `zero`.
fn sparse_grade<R: Rng>(rng: &mut R, grid: GradeGrid, zero: f64) -> Grade {
    if rng.gen_bool(zero) {
        Grade::ZERO
    } else {
        positive_grade(rng, grid)
    }
}

pub fn fuzzy_subset<R: Rng>(rng: &mut R, carrier: &Arc<Carrier>, grid: GradeGrid) -> FuzzySubset {
    let grades = (0..carrier.len()).map(|_| sparse_grade(rng, grid, 0.4)).collect();
    FuzzySubset::new(carrier.clone(), grades).expect("length matches carrier")
}

pub fn nonzero_fuzzy_subset<R: Rng>(rng: &mut R, carrier: &Arc<Carrier>, grid: GradeGrid) -> FuzzySubset {
    loop {
        let mu = fuzzy_subset(rng, carrier, grid);
        if !mu.is_zero() {
            return mu;
        }
    }
}

/// A uniformly random table with sparse cells; proper when `proper` is set.
pub fn table<R: Rng>(rng: &mut R, m: usize, g: usize, grid: GradeGrid, proper: bool) -> FuzzyGammaHyperop {
    let carrier = Carrier::numbered(m, g).expect("nonempty carrier");
    let cell = |rng: &mut R| loop {
        let cell: Vec<Grade> = (0..m).map(|_| sparse_grade(rng, grid, 0.5)).collect();
        if !proper || cell.iter().any(|g| !g.is_zero()) {
            return cell;
        }
    };
    let grades: Vec<Grade> = (0..m * g * m).flat_map(|_| cell(rng)).collect();
    if proper {
        FuzzyGammaHyperop::from_table(carrier, grades).expect("no zero cells")
    } else {
        FuzzyGammaHyperop::from_table_improper(carrier, grades).expect("length matches carrier")
    }
}

/// A random crisp table; cells are nonempty unless `allow_empty` is set.
pub fn crisp_table<R: Rng>(rng: &mut R, m: usize, g: usize, allow_empty: bool) -> CrispGammaHyperop {
    let carrier = Carrier::numbered(m, g).expect("nonempty carrier");
    let low = if allow_empty { 0 } else { 1 };
    CrispGammaHyperop::from_fn_partial(carrier, |_, _, _| {
        let mask: u32 = rng.gen_range(low..(1u32 << m));
        (0..m).filter(move |t| mask >> t & 1 == 1)
    })
    .expect("cells within carrier")
}

/// Multiplication table of a random semigroup with exactly `size`
/// elements, generated by random transformations of a small set.
pub fn semigroup<R: Rng>(rng: &mut R, size: usize) -> Vec<Vec<usize>> {
    loop {
        let points = rng.gen_range(2..=4usize);
        let generators = rng.gen_range(1..=2usize);
        let gens: Vec<Vec<u8>> = (0..generators)
            .map(|_| (0..points).map(|_| rng.gen_range(0..points as u8)).collect())
            .collect();
        if let Some(table) = transformation_closure(&gens, size) {
            if table.len() == size {
                return table;
            }
        }
    }
}

fn transformation_closure(gens: &[Vec<u8>], cap: usize) -> Option<Vec<Vec<usize>>> {
    let compose = |f: &[u8], g: &[u8]| -> Vec<u8> { f.iter().map(|&x| g[x as usize]).collect() };
    let mut elements: Vec<Vec<u8>> = Vec::new();
    let mut index: HashMap<Vec<u8>, usize> = HashMap::new();
    for gen in gens {
        if !index.contains_key(gen) {
            index.insert(gen.clone(), elements.len());
            elements.push(gen.clone());
        }
    }
    let mut frontier = 0;
    while frontier < elements.len() {
        let f = elements[frontier].clone();
        for gen in gens {
            let p = compose(&f, gen);
            if !index.contains_key(&p) {
                if elements.len() == cap {
                    return None;
                }
                index.insert(p.clone(), elements.len());
                elements.push(p);
            }
        }
        frontier += 1;
    }
    let table = elements
        .iter()
        .map(|f| elements.iter().map(|g| index[&compose(f, g)]).collect())
        .collect();
    Some(table)
}

/// The crisp cells `a·X_γ·b` for a random semigroup of the given size and
/// random nonempty `X_γ ⊆ S¹`.
pub fn crisp_hypersemigroup<R: Rng>(rng: &mut R, m: usize, g: usize) -> CrispGammaHyperop {
    let mul = semigroup(rng, m);
    let xs: Vec<Vec<Option<usize>>> = (0..g)
        .map(|_| {
            // None stands for the adjoined identity
            let mut pool: Vec<Option<usize>> = (0..m).map(Some).chain([None]).collect();
            pool.shuffle(rng);
            let take = rng.gen_range(1..=pool.len().min(3));
            pool.truncate(take);
            pool
        })
        .collect();
    let carrier = Carrier::numbered(m, g).expect("nonempty carrier");
    CrispGammaHyperop::from_fn(carrier, |a, gamma, b| {
        xs[gamma]
            .iter()
            .map(|x| match x {
                Some(x) => mul[mul[a][*x]][b],
                None => mul[a][b],
            })
            .collect::<BTreeSet<_>>()
    })
    .expect("nonempty cells")
}

/// A random associative proper structure on exactly `m` elements and `g`
/// sorts with grades on the grid.
pub fn associative<R: Rng>(rng: &mut R, m: usize, g: usize, grid: GradeGrid) -> FuzzyGammaHyperop {
    if m <= 2 && g == 1 && rng.gen_bool(0.3) {
        for _ in 0..200 {
            let h = table(rng, m, g, grid, true);
            if h.is_associative().passed() {
                return h;
            }
        }
    }
    let k = crisp_hypersemigroup(rng, m, g);
    if rng.gen_bool(0.4) {
        for _ in 0..50 {
            let h = FuzzyGammaHyperop::from_fn(k.carrier().clone(), |a, gamma, b| {
                (0..m)
                    .map(|t| {
                        if k.cell(a, gamma, b).contains(&t) {
                            positive_grade(rng, grid)
                        } else {
                            Grade::ZERO
                        }
                    })
                    .collect()
            })
            .expect("nonempty cells");
            if h.is_associative().passed() {
                return h;
            }
        }
    }
    let mut mu: Vec<Grade> = (0..m).map(|_| positive_grade(rng, grid)).collect();
    let w: Vec<Grade> = (0..g).map(|_| positive_grade(rng, grid)).collect();
    loop {
        let mut changed = false;
        for a in 0..m {
            for gamma in 0..g {
                for b in 0..m {
                    let low = mu[a].meet(mu[b]);
                    for &t in k.cell(a, gamma, b) {
                        if mu[t] < low {
                            mu[t] = low;
                            changed = true;
                        }
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    let floor = mu.iter().chain(&w).copied().min().expect("nonempty carrier");
    let background = if rng.gen_bool(0.3) {
        Grade::new(rng.gen_range(1..=floor.scaled_to(grid.denominator()).expect("on grid")), grid.denominator())
            .expect("on the grid")
    } else {
        Grade::ZERO
    };
    FuzzyGammaHyperop::from_fn(k.carrier().clone(), |a, gamma, b| {
        let grade = mu[a].meet(mu[b]).meet(w[gamma]);
        (0..m)
            .map(|t| {
                if k.cell(a, gamma, b).contains(&t) {
                    grade.join(background)
                } else {
                    background
                }
            })
            .collect()
    })
    .expect("nonempty cells")
}
