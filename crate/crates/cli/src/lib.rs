//! Command-line front end: every operation of `gamma_hyperlab` as a
//! scriptable check with exit codes 0 (passed), 1 (failed, witness printed)
//! and 2 (usage or input error).

mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand};
use gamma_hyperlab::bridge::{is_crisp_homomorphism, is_fuzzy_homomorphism, phi, psi};
use gamma_hyperlab::cuts::{crisp_is_associative, cut_structure, distinct_grades, verify_cut_equivalence};
use gamma_hyperlab::format::{
    emit_crisp, emit_structure, emit_subset, parse_crisp, parse_map, parse_structure, parse_subset,
};
use gamma_hyperlab::grade::common_denominator;
use gamma_hyperlab::ideals::{
    generate_left_ideal, generate_left_ideal_single_sort, generate_right_ideal, generate_right_ideal_single_sort,
    is_bi_ideal, is_interior_ideal, is_left_ideal, is_right_ideal, is_sub_hypersemigroup,
};
use gamma_hyperlab::relations::{
    is_fuzzy_regular, is_fuzzy_strongly_regular, quotient_crisp, quotient_fuzzy, EquivRelation,
};
use gamma_hyperlab::search::{
    count_structures, oracle_min_left_ideal, oracle_min_right_ideal, scan_structures, EnumSpec, GradeGrid, Scan,
    StructureFilter,
};
use gamma_hyperlab::{
    Carrier, CheckReport, CrispSubset, CutThreshold, Error, Factor, FuzzyGammaHyperop, FuzzySubset, Witness,
};
use serde_json::{json, Value};

use crate::report::Report;

pub const THREADS_VAR: &str = "GAMMA_HYPERLAB_THREADS";

#[derive(Parser)]
#[command(name = "gamma-hyperlab", version, about = "Exact checks for finite fuzzy Γ-hypersemigroups")]
struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check associativity and the hypergroup axiom, or associativity of every cut.
    Check {
        structure: PathBuf,
        #[arg(long)]
        axioms: bool,
        #[arg(long)]
        cuts: bool,
    },
    /// Compose operands and sorts: `X γ Y` or longer sequences `X γ Y δ Z …`.
    ///
    /// An operand is an element label, `M`, `chi:a,b`, an inline subset
    /// document or a path to one.
    Compose {
        structure: PathBuf,
        #[arg(required = true, num_args = 3..)]
        terms: Vec<String>,
    },
    /// Emit the crisp structure of all cells cut at threshold p.
    Cut {
        structure: PathBuf,
        #[arg(long, short)]
        p: CutThreshold,
    },
    /// Test a fuzzy subset against the sub-structure and ideal predicates.
    #[command(group(ArgGroup::new("kind").required(true).multiple(true)
        .args(["sub", "left", "right", "bi", "interior"])))]
    Ideal {
        structure: PathBuf,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        sub: bool,
        #[arg(long)]
        left: bool,
        #[arg(long)]
        right: bool,
        #[arg(long)]
        bi: bool,
        #[arg(long)]
        interior: bool,
    },
    /// Generate the smallest left (or right) ideal containing a subset.
    Generate {
        structure: PathBuf,
        #[arg(long)]
        subset: String,
        #[arg(long)]
        right: bool,
        /// Use only the given sort in the generating formula.
        #[arg(long, value_name = "SORT")]
        single_gamma: Option<String>,
        /// Compare with the brute-force meet of all containing ideals.
        #[arg(long)]
        oracle: bool,
        /// Grade grid for the oracle (default: common denominator of the inputs).
        #[arg(long)]
        denominator: Option<u64>,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
    },
    /// Convert between fuzzy and crisp structures (support / characteristic functions).
    #[command(group(ArgGroup::new("direction").required(true).args(["to_crisp", "to_fuzzy"])))]
    Convert {
        input: PathBuf,
        #[arg(long)]
        to_crisp: bool,
        #[arg(long)]
        to_fuzzy: bool,
    },
    /// Check whether a map between carriers is a homomorphism.
    Hom {
        source: PathBuf,
        target: PathBuf,
        #[arg(long)]
        map: PathBuf,
        /// Treat both inputs as crisp documents.
        #[arg(long)]
        crisp: bool,
    },
    /// Check whether an equivalence relation (blocks like `a,b|c`) is regular.
    Relation {
        structure: PathBuf,
        #[arg(long)]
        relation: String,
        #[arg(long)]
        strong: bool,
    },
    /// Build the quotient by an equivalence relation.
    Quotient {
        structure: PathBuf,
        #[arg(long)]
        relation: String,
        /// Require strong regularity.
        #[arg(long)]
        strong: bool,
        /// Emit the fuzzy quotient instead of the crisp one.
        #[arg(long)]
        fuzzy: bool,
    },
    /// Enumerate all structures on a grade grid in lexicographic order.
    Enumerate {
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 1)]
        gamma: usize,
        #[arg(long, default_value_t = 1)]
        denominator: u64,
        #[arg(long, default_value = "all")]
        filter: StructureFilter,
        #[arg(long, default_value_t = 10_000_000)]
        budget: u128,
        #[arg(long, default_value_t = 0)]
        cursor: u128,
        #[arg(long)]
        limit: Option<usize>,
        /// Keep one representative per isomorphism class.
        #[arg(long)]
        iso: bool,
        /// Print only the number of matches.
        #[arg(long)]
        count: bool,
    },
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn usage(message: String) -> Outcome {
        Outcome {
            code: 2,
            stdout: String::new(),
            stderr: message,
        }
    }
}

/// Runs one invocation; `argv[0]` is the program name. `threads` is the
/// value of [`THREADS_VAR`], if set.
pub fn run_command<I, S>(argv: I, threads: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome::usage(text)
            };
        }
    };
    let threads = match threads.map(str::parse::<usize>) {
        None => 0,
        Some(Ok(n)) => n,
        Some(Err(_)) => {
            return Outcome::usage(format!("error: {THREADS_VAR} must be a non-negative integer\n"));
        }
    };
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => return Outcome::usage(format!("error: cannot start worker threads: {e}\n")),
    };
    match pool.install(|| execute(cli.command)) {
        Ok(report) => Outcome {
            code: report.exit_code(),
            stdout: if cli.json {
                report.render_json()
            } else {
                report.render_text()
            },
            stderr: report.warnings().iter().map(|w| format!("warning: {w}\n")).collect(),
        },
        Err(message) => Outcome::usage(format!("error: {message}\n")),
    }
}

type CmdResult = std::result::Result<Report, String>;

fn read(path: &Path) -> std::result::Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

fn load_structure(path: &Path) -> std::result::Result<FuzzyGammaHyperop, String> {
    parse_structure(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_crisp(path: &Path) -> std::result::Result<gamma_hyperlab::CrispGammaHyperop, String> {
    parse_crisp(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn msg(e: Error) -> String {
    e.to_string()
}

/// `M`, `chi:a,b`, an inline subset document, or a path to one.
fn load_subset(carrier: &Arc<Carrier>, spec: &str) -> std::result::Result<FuzzySubset, String> {
    let spec = spec.trim();
    if spec == "M" {
        return Ok(FuzzySubset::full(carrier.clone()));
    }
    if let Some(labels) = spec.strip_prefix("chi:") {
        let members = labels
            .split(',')
            .map(str::trim)
            .filter(|l| !l.is_empty())
            .map(|l| carrier.element_index(l))
            .collect::<gamma_hyperlab::Result<Vec<_>>>()
            .map_err(msg)?;
        return Ok(CrispSubset::new(carrier.clone(), members).map_err(msg)?.characteristic());
    }
    if spec.starts_with('{') {
        return parse_subset(carrier, spec).map_err(msg);
    }
    let path = Path::new(spec);
    parse_subset(carrier, &read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn execute(command: Command) -> CmdResult {
    match command {
        Command::Check { structure, axioms, cuts } => check(&structure, axioms || !cuts, cuts),
        Command::Compose { structure, terms } => compose(&structure, &terms),
        Command::Cut { structure, p } => {
            let h = load_structure(&structure)?;
            let mut report = Report::default();
            report.document(emit_crisp(&cut_structure(&h, p)));
            Ok(report)
        }
        Command::Ideal {
            structure,
            subset,
            sub,
            left,
            right,
            bi,
            interior,
        } => ideal(&structure, &subset, [sub, left, right, bi, interior]),
        Command::Generate {
            structure,
            subset,
            right,
            single_gamma,
            oracle,
            denominator,
            budget,
        } => generate(&structure, &subset, right, single_gamma.as_deref(), oracle, denominator, budget),
        Command::Convert { input, to_crisp, .. } => {
            let mut report = Report::default();
            if to_crisp {
                let h = load_structure(&input)?;
                report.document(emit_crisp(&psi(&h).map_err(msg)?));
            } else {
                let k = load_crisp(&input)?;
                report.document(emit_structure(&phi(&k).map_err(msg)?));
            }
            Ok(report)
        }
        Command::Hom {
            source,
            target,
            map,
            crisp,
        } => hom(&source, &target, &map, crisp),
        Command::Relation {
            structure,
            relation,
            strong,
        } => {
            let h = load_structure(&structure)?;
            let rho = EquivRelation::parse(h.carrier().clone(), &relation).map_err(msg)?;
            let mut report = Report::default();
            report.value("classes", rho.to_block_string(), json!(rho.to_block_string()));
            report.verdict("regular", is_fuzzy_regular(&h, &rho).map_err(msg)?, h.carrier(), true);
            if strong {
                let verdict = is_fuzzy_strongly_regular(&h, &rho).map_err(msg)?;
                report.verdict("strongly regular", verdict, h.carrier(), true);
            }
            Ok(report)
        }
        Command::Quotient {
            structure,
            relation,
            strong,
            fuzzy,
        } => quotient(&structure, &relation, strong, fuzzy),
        Command::Enumerate {
            m,
            gamma,
            denominator,
            filter,
            budget,
            cursor,
            limit,
            iso,
            count,
        } => {
            let grid = GradeGrid::new(denominator).map_err(msg)?;
            let spec = EnumSpec::new(m, gamma, grid, filter).map_err(msg)?;
            enumerate(&spec, budget, Scan { cursor, limit, iso }, count)
        }
    }
}

fn check(path: &Path, axioms: bool, cuts: bool) -> CmdResult {
    let h = load_structure(path)?;
    let carrier = h.carrier();
    let mut report = Report::default();
    if axioms {
        report.verdict("associative", h.is_associative(), carrier, true);
        report.verdict("hypergroup", h.is_hypergroup(), carrier, false);
    }
    if cuts {
        for p in distinct_grades(&h) {
            let verdict = crisp_is_associative(&cut_structure(&h, p.into()));
            report.verdict(&format!("cut p={p} associative"), verdict, carrier, false);
        }
        report.verdict("cut equivalence", verify_cut_equivalence(&h), carrier, true);
    }
    Ok(report)
}

fn compose(path: &Path, terms: &[String]) -> CmdResult {
    let h = load_structure(path)?;
    let carrier = h.carrier();
    if terms.len().is_multiple_of(2) {
        return Err("compose expects operands separated by sorts: X γ Y [δ Z …]".into());
    }
    enum Operand {
        Element(usize),
        Subset(FuzzySubset),
    }
    let mut operands = Vec::new();
    let mut sorts = Vec::new();
    for (i, term) in terms.iter().enumerate() {
        if i % 2 == 1 {
            sorts.push(carrier.sort_index(term).map_err(msg)?);
        } else if let Ok(x) = carrier.element_index(term) {
            operands.push(Operand::Element(x));
        } else {
            operands.push(Operand::Subset(load_subset(carrier, term)?));
        }
    }
    let result = match (&operands[..], &sorts[..]) {
        ([Operand::Element(a), Operand::Element(b)], [gamma]) => h.compose_elem(*a, *gamma, *b),
        ([Operand::Element(a), Operand::Subset(mu)], [gamma]) => h.compose_left(*a, *gamma, mu),
        ([Operand::Subset(mu), Operand::Element(a)], [gamma]) => h.compose_right(mu, *gamma, *a),
        ([Operand::Subset(mu), Operand::Subset(nu)], [gamma]) => h.compose_fuzzy(mu, *gamma, nu),
        _ => {
            let subsets: Vec<FuzzySubset> = operands
                .into_iter()
                .map(|op| match op {
                    Operand::Element(x) => FuzzySubset::point(carrier.clone(), x).expect("index from carrier"),
                    Operand::Subset(mu) => mu,
                })
                .collect();
            let mut factors = Vec::new();
            for (i, mu) in subsets.iter().enumerate() {
                if i > 0 {
                    factors.push(Factor::Sort(sorts[i - 1]));
                }
                factors.push(Factor::Subset(mu));
            }
            h.compose_many(&factors)
        }
    }
    .map_err(msg)?;
    let mut report = Report::default();
    report.subset("product", &result);
    Ok(report)
}

fn ideal(path: &Path, spec: &str, kinds: [bool; 5]) -> CmdResult {
    let h = load_structure(path)?;
    let mu = load_subset(h.carrier(), spec)?;
    type Predicate = fn(&FuzzyGammaHyperop, &FuzzySubset) -> gamma_hyperlab::Result<CheckReport>;
    let predicates: [(&str, Predicate); 5] = [
        ("sub-hypersemigroup", is_sub_hypersemigroup),
        ("left ideal", is_left_ideal),
        ("right ideal", is_right_ideal),
        ("bi-ideal", is_bi_ideal),
        ("interior ideal", is_interior_ideal),
    ];
    let mut report = Report::default();
    if !h.is_associative().passed() {
        report.warn("structure is not associative; ideal predicates assume associativity");
    }
    for ((name, predicate), wanted) in predicates.into_iter().zip(kinds) {
        if wanted {
            report.verdict(name, predicate(&h, &mu).map_err(msg)?, h.carrier(), true);
        }
    }
    Ok(report)
}

fn generate(
    path: &Path,
    spec: &str,
    right: bool,
    single_gamma: Option<&str>,
    oracle: bool,
    denominator: Option<u64>,
    budget: u128,
) -> CmdResult {
    let h = load_structure(path)?;
    let carrier = h.carrier();
    let mu = load_subset(carrier, spec)?;
    let generated = match (right, single_gamma) {
        (false, None) => generate_left_ideal(&h, &mu),
        (true, None) => generate_right_ideal(&h, &mu),
        (false, Some(s)) => generate_left_ideal_single_sort(&h, &mu, carrier.sort_index(s).map_err(msg)?),
        (true, Some(s)) => generate_right_ideal_single_sort(&h, &mu, carrier.sort_index(s).map_err(msg)?),
    }
    .map_err(msg)?;
    let mut report = Report::default();
    report.subset("generated", &generated);
    let is_ideal = if right {
        is_right_ideal(&h, &generated)
    } else {
        is_left_ideal(&h, &generated)
    }
    .map_err(msg)?;
    report.verdict(if right { "right ideal" } else { "left ideal" }, is_ideal, carrier, oracle);
    if oracle {
        let d = denominator.unwrap_or_else(|| common_denominator(h.table().iter().chain(mu.grades()).copied()));
        let grid = GradeGrid::new(d).map_err(msg)?;
        let expected = if right {
            oracle_min_right_ideal(&h, &mu, grid, budget)
        } else {
            oracle_min_left_ideal(&h, &mu, grid, budget)
        }
        .map_err(msg)?;
        report.subset("oracle", &expected);
        let agreement = match (0..h.size()).find(|&t| generated.grade(t) != expected.grade(t)) {
            None => CheckReport::pass(),
            Some(t) => CheckReport::fail(
                Witness::new("generated ideal differs from the oracle")
                    .point(t)
                    .grades(generated.grade(t), expected.grade(t)),
            ),
        };
        report.verdict("oracle agrees", agreement, carrier, true);
    }
    report.document(emit_subset(&generated));
    Ok(report)
}

fn hom(source: &Path, target: &Path, map: &Path, crisp: bool) -> CmdResult {
    let mut report = Report::default();
    if crisp {
        let (k1, k2) = (load_crisp(source)?, load_crisp(target)?);
        let f = parse_map(k1.carrier(), k2.carrier(), &read(map)?).map_err(msg)?;
        let verdict = is_crisp_homomorphism(&f, &k1, &k2).map_err(msg)?;
        report.verdict("homomorphism", verdict, k1.carrier(), true);
    } else {
        let (h1, h2) = (load_structure(source)?, load_structure(target)?);
        let f = parse_map(h1.carrier(), h2.carrier(), &read(map)?).map_err(msg)?;
        let verdict = is_fuzzy_homomorphism(&f, &h1, &h2).map_err(msg)?;
        report.verdict("homomorphism", verdict, h1.carrier(), true);
    }
    Ok(report)
}

fn quotient(path: &Path, relation: &str, strong: bool, fuzzy: bool) -> CmdResult {
    let h = load_structure(path)?;
    let carrier = h.carrier();
    let rho = EquivRelation::parse(carrier.clone(), relation).map_err(msg)?;
    let mut report = Report::default();
    let strongly = is_fuzzy_strongly_regular(&h, &rho).map_err(msg)?;
    let strongly_passed = strongly.passed();
    if fuzzy {
        if strong {
            report.verdict("strongly regular", strongly, carrier, true);
        } else if !strongly_passed {
            report.warn("relation is not strongly regular; the quotient need not be associative");
        }
        if strong && !strongly_passed {
            return Ok(report);
        }
        let q = quotient_fuzzy(&h, &rho).map_err(msg)?;
        report.verdict("quotient associative", q.structure.is_associative(), q.structure.carrier(), false);
        report.document(emit_structure(&q.structure));
        return Ok(report);
    }
    match quotient_crisp(&h, &rho) {
        Ok(q) => {
            report.verdict("regular", CheckReport::pass(), carrier, true);
            if strong {
                if !report.verdict("strongly regular", strongly, carrier, true) {
                    return Ok(report);
                }
                let semigroup = q.is_single_valued() && q.is_associative().passed();
                report.value("Γ-semigroup", yes_no(semigroup), json!(semigroup));
            }
            report.document(emit_crisp(&q));
        }
        Err(Error::NotRegular { a, b, a2, b2, gamma }) => {
            let witness = Witness::new("representatives of the same classes give different product classes")
                .elements([a, b, a2, b2])
                .sorts([gamma]);
            report.verdict("regular", CheckReport::fail(witness), carrier, true);
        }
        Err(e) => return Err(msg(e)),
    }
    Ok(report)
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn one_line(document: &str) -> String {
    document.lines().map(str::trim).collect::<Vec<_>>().join(" ")
}

fn enumerate(spec: &EnumSpec, budget: u128, scan: Scan, count_only: bool) -> CmdResult {
    let mut report = Report::default();
    if count_only {
        let n = count_structures(spec, budget, scan.iso).map_err(msg)?;
        report.value("count", n.to_string(), json!(n.to_string()));
        return Ok(report);
    }
    let page = scan_structures(spec, budget, &scan).map_err(msg)?;
    let mut lines = String::new();
    let mut items = Vec::new();
    for (index, h) in &page.items {
        let doc = emit_structure(h);
        lines.push_str(&format!("{index} {}\n", one_line(&doc)));
        items.push(json!({
            "index": index.to_string(),
            "document": serde_json::from_str::<Value>(&doc).expect("emitted documents are JSON"),
        }));
    }
    let mut text = page.items.len().to_string();
    if !lines.is_empty() {
        text = format!("{text}\n{}", lines.trim_end());
    }
    report.value("structures", text, Value::Array(items));
    let next = page.next_cursor.map_or("none".to_string(), |c| c.to_string());
    report.value("next cursor", next.clone(), json!(next));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use gamma_hyperlab::Grade;

    #[test]
    fn subset_specs() {
        let c = Carrier::numbered(3, 1).unwrap();
        assert_eq!(load_subset(&c, "M").unwrap(), FuzzySubset::full(c.clone()));
        let chi = load_subset(&c, " chi:0, 2 ").unwrap();
        assert_eq!(chi.grades(), &[Grade::ONE, Grade::ZERO, Grade::ONE]);
        let inline = load_subset(&c, r#"{"denominator": 2, "grades": {"1": 1}}"#).unwrap();
        assert_eq!(inline.grade(1), Grade::new(1, 2).unwrap());
        assert!(load_subset(&c, "chi:7").is_err());
        assert!(load_subset(&c, "/no/such/subset.json").is_err());
    }

    #[test]
    fn documents_collapse_to_one_line() {
        assert_eq!(one_line("{\n  \"a\": 1,\n  \"b\": 2\n}\n"), "{ \"a\": 1, \"b\": 2 }");
        assert_eq!(yes_no(true), "yes");
    }

    #[test]
    fn malformed_threads_are_usage_errors() {
        let out = run_command(["gamma-hyperlab", "enumerate", "--m", "1"], Some("-3"));
        assert_eq!(out.code, 2);
        assert!(out.stderr.contains(THREADS_VAR));
        assert_eq!(run_command(["gamma-hyperlab", "enumerate", "--m", "1", "--count"], Some("2")).stdout, "count: 2\n");
    }
}
