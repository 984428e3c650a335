use std::fs;
use std::path::PathBuf;

use gamma_hyperlab_cli::run_command;

/// `(golden file stem, arguments, expected exit code)`; fixture paths are
/// relative to the crate root.
pub const GOLDEN: &[(&str, &[&str], i32)] = &[
    ("check_max3", &["check", "fixtures/max3.json", "--axioms"], 0),
    ("check_max3_cuts", &["check", "fixtures/max3.json", "--cuts"], 0),
    ("check_max3_json", &["--json", "check", "fixtures/max3.json"], 0),
    ("check_max3_absorbing", &["check", "fixtures/max3_absorbing.json"], 0),
    ("check_cyclic3", &["check", "fixtures/cyclic3.json"], 0),
    ("check_truncated_sum2", &["check", "fixtures/truncated_sum2.json", "--axioms", "--cuts"], 0),
    ("check_pair_union3", &["check", "fixtures/pair_union3.json"], 0),
    ("ideal_left_chi0", &["ideal", "fixtures/max3.json", "--left", "--subset", "fixtures/chi0.json"], 1),
    (
        "ideal_all_chi2",
        &["ideal", "fixtures/max3.json", "--sub", "--left", "--right", "--bi", "--interior", "--subset", "chi:2"],
        0,
    ),
    ("ideal_interior_chi1", &["ideal", "fixtures/max3.json", "--interior", "--subset", "chi:1"], 1),
    ("generate_chi1_oracle", &["generate", "fixtures/max3.json", "--subset", "chi:1", "--oracle"], 0),
    (
        "generate_single_sort_gap",
        &["generate", "fixtures/single_sort_gap.json", "--subset", "chi:0,2", "--single-gamma", "g1", "--oracle"],
        1,
    ),
    (
        "generate_all_sorts_gap",
        &["generate", "fixtures/single_sort_gap.json", "--subset", "chi:0,2", "--oracle"],
        0,
    ),
    ("compose_element_subset", &["compose", "fixtures/max3.json", "1", "g", "chi:0,2"], 0),
    ("compose_sequence", &["compose", "fixtures/truncated_sum2.json", "M", "g", "1", "g", "M"], 0),
    ("cut_truncated_sum2", &["cut", "fixtures/truncated_sum2.json", "-p", "1/2"], 0),
    ("cut_truncated_sum2_empty", &["cut", "fixtures/truncated_sum2.json", "-p", "3/4"], 0),
    ("convert_to_crisp", &["convert", "fixtures/truncated_sum2.json", "--to-crisp"], 0),
    ("convert_to_fuzzy", &["convert", "fixtures/max3_crisp.json", "--to-fuzzy"], 0),
    (
        "hom_monotone",
        &["hom", "fixtures/max3.json", "fixtures/max3.json", "--map", "fixtures/monotone_map.json"],
        0,
    ),
    (
        "hom_swap",
        &["hom", "fixtures/max3.json", "fixtures/max3.json", "--map", "fixtures/swap_map.json"],
        1,
    ),
    (
        "hom_swap_crisp",
        &["hom", "fixtures/max3_crisp.json", "fixtures/max3_crisp.json", "--map", "fixtures/swap_map.json", "--crisp"],
        1,
    ),
    ("relation_max3", &["relation", "fixtures/max3.json", "--relation", "0,1|2", "--strong"], 0),
    ("relation_pair_union3", &["relation", "fixtures/pair_union3.json", "--relation", "0,1|2", "--strong"], 1),
    ("quotient_max3_strong", &["quotient", "fixtures/max3.json", "--relation", "{0,1}|{2}", "--strong"], 0),
    ("quotient_max3_fuzzy", &["quotient", "fixtures/max3.json", "--relation", "0,1|2", "--fuzzy"], 0),
    ("quotient_max3_not_regular", &["quotient", "fixtures/max3.json", "--relation", "0,2|1"], 1),
    (
        "quotient_null3_graded_fuzzy",
        &["quotient", "fixtures/null3_graded.json", "--relation", "0|1,2", "--strong", "--fuzzy"],
        0,
    ),
    ("enumerate_m1", &["enumerate", "--m", "1"], 0),
    ("enumerate_m2_hypergroup", &["enumerate", "--m", "2", "--filter", "hypergroup", "--limit", "3"], 0),
    ("enumerate_m2_iso_count", &["enumerate", "--m", "2", "--filter", "associative", "--iso", "--count"], 0),
];

pub fn crate_root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn run(args: &[&str]) -> gamma_hyperlab_cli::Outcome {
    let root = crate_root();
    let argv = std::iter::once("gamma-hyperlab".to_string()).chain(args.iter().map(|a| {
        if a.starts_with("fixtures/") {
            root.join(a).display().to_string()
        } else {
            a.to_string()
        }
    }));
    run_command(argv, None)
}

/// Descriptions of every golden case whose exit code or stdout differs.
pub fn golden_mismatches() -> Vec<String> {
    let mut out = Vec::new();
    for (name, args, code) in GOLDEN {
        let outcome = run(args);
        let path = crate_root().join("tests/golden").join(format!("{name}.txt"));
        let expected = fs::read_to_string(&path).unwrap_or_default();
        if outcome.code != *code {
            out.push(format!("{name}: exit {} (expected {code}) {}", outcome.code, outcome.stderr));
        } else if outcome.stdout != expected {
            out.push(format!("{name}: output differs from {}", path.display()));
        }
    }
    out
}
