//! Acceptance criteria 1–10. Prints one PASS/FAIL line per criterion and exits
//! non-zero when any criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use weylrack::cli_harness::cache::canonical_json;
use weylrack::cli_harness::{run_suite, Suite, SuiteParams, SuiteReport, DEFAULT_SEED};
use weylrack::conj_classes::{all_classes, brute_force_classes};
use weylrack::Group;

/// Wall-clock limits per criterion.
const LIMITS: [(u8, u64); 10] =
    [(1, 5), (2, 10), (3, 120), (4, 600), (5, 1800), (6, 300), (7, 300), (8, 1), (9, 900), (10, 3600)];

fn limit(criterion: u8) -> Duration {
    Duration::from_secs(LIMITS.iter().find(|(c, _)| *c == criterion).expect("pinned").1)
}

struct Outcome {
    ok: bool,
    detail: String,
}

fn failing(report: &SuiteReport) -> Vec<String> {
    report.checks.iter().filter(|c| !c.passed()).map(|c| c.tag.clone()).collect()
}

/// Runs a suite with default parameters and judges it on its checks plus `extra`.
fn suite_outcome(
    suite: Suite,
    reports: &mut BTreeMap<&'static str, String>,
    extra: impl Fn(&SuiteReport) -> Option<String>,
) -> Outcome {
    let report = match run_suite(suite, &SuiteParams::default()) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, detail: format!("{suite}: {e}") },
    };
    reports.insert(suite.name(), canonical_json(&report).expect("serialisable"));
    let bad = failing(&report);
    let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
    let mut detail = format!("{suite}: {} checks, {cases} cases", report.checks.len());
    let mut ok = bad.is_empty();
    if !ok {
        detail.push_str(&format!(", failing {}", bad.join(", ")));
    }
    if let Some(problem) = extra(&report) {
        ok = false;
        detail.push_str(&format!(", {problem}"));
    }
    Outcome { ok, detail }
}

fn require_params(report: &SuiteReport, want: &[(&str, u64)]) -> Option<String> {
    want.iter()
        .find(|(k, v)| report.params.get(*k) != Some(v))
        .map(|(k, v)| format!("{k} is {:?}, expected {v}", report.params.get(*k)))
}

fn require_tags(report: &SuiteReport, tags: &[&str]) -> Option<String> {
    tags.iter()
        .find(|t| !report.checks.iter().any(|c| c.tag == **t))
        .map(|t| format!("missing check {t}"))
}

/// Partitions of `k` by the usual recurrence on the largest part.
fn partition_count(k: usize) -> u64 {
    let mut p = vec![0u64; k + 1];
    p[0] = 1;
    for part in 1..=k {
        for total in part..=k {
            p[total] += p[total - part];
        }
    }
    p[k]
}

fn class_counts() -> Outcome {
    let mut rows = Vec::new();
    let mut ok = true;
    for n in 2..=5usize {
        let oracle: u64 = (0..=n).map(|k| partition_count(k) * partition_count(n - k)).sum();
        let orbits = brute_force_classes(Group::b(n)).len() as u64;
        let enumerated = all_classes(Group::b(n)).map(|c| c.len() as u64).unwrap_or(0);
        ok &= orbits == oracle && enumerated == oracle;
        rows.push(format!("n={n}: {orbits}/{enumerated}/{oracle}"));
    }
    let anchors = [5u64, 10, 20, 36];
    ok &= (2..=5usize).zip(anchors).all(|(n, c)| {
        (0..=n).map(|k| partition_count(k) * partition_count(n - k)).sum::<u64>() == c
    });
    Outcome { ok, detail: format!("orbits/classes/pairs of partitions {}", rows.join(", ")) }
}

fn main() -> ExitCode {
    let mut reports: BTreeMap<&'static str, String> = BTreeMap::new();
    let mut all_ok = true;
    let mut report_line = |criterion: u8, name: &str, start: Instant, o: Outcome| {
        let elapsed = start.elapsed();
        let in_time = elapsed <= limit(criterion);
        let ok = o.ok && in_time;
        all_ok &= ok;
        println!(
            "criterion {criterion:>2} {} {name}: {} ({:.1} s, limit {} s{})",
            if ok { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            limit(criterion).as_secs(),
            if in_time { "" } else { ", over time" }
        );
    };

    let t = Instant::now();
    let o = suite_outcome(Suite::GroupLaws, &mut reports, |r| require_params(r, &[("samples", 100_000), ("max_rank", 8)]));
    report_line(1, "group laws and formulas", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::RackAxioms, &mut reports, |r| {
        require_params(r, &[("samples", 100_000)])
            .or_else(|| require_tags(r, &["sq.general_formula", "sq.commuting_formula", "sq.square_commutativity_2_2"]))
    });
    report_line(2, "rack and sq formulas", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::Juxtaposition, &mut reports, |r| require_params(r, &[("max_rank", 6)]));
    report_line(3, "juxtaposition identities", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::TypeDLemmas, &mut reports, |r| {
        require_tags(
            r,
            &[
                "lemma.odd_cycle.p5",
                "lemma.odd_cycle.p7",
                "lemma.type_3_3",
                "lemma.type_2_2_3",
                "lemma.fixed_point.transposition",
                "lemma.fixed_point.three_cycle",
                "lemma.sym_lifting",
                "lemma.juxtaposition_propagation",
            ],
        )
    });
    report_line(4, "type-D witnesses", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::Classification, &mut reports, |r| {
        let groups = ["B5", "B6", "D5", "D6"];
        let tags: Vec<String> = groups
            .iter()
            .flat_map(|g| {
                ["no_undetermined", "exception_list_exact", "witnesses_revalidate"].map(|k| format!("classification.{k}.{g}"))
            })
            .collect();
        require_tags(r, &tags.iter().map(String::as_str).collect::<Vec<_>>())
    });
    report_line(5, "classification of W(B_5), W(B_6), W(D_5), W(D_6)", t, o);

    let t = Instant::now();
    report_line(6, "class counts", t, class_counts());

    let t = Instant::now();
    let o = suite_outcome(Suite::YdBraidings, &mut reports, |r| {
        require_tags(r, &["yd.braid_equation", "yd.symmetrizer_factorization", "yd.nichols_s3_transpositions_sign"])
    });
    report_line(7, "braidings and Nichols dimensions", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::Screens, &mut reports, |r| {
        require_tags(r, &["screens.q_order_arithmetic", "screens.case_table"])
    });
    report_line(8, "scalar screens", t, o);

    let t = Instant::now();
    let o = suite_outcome(Suite::FkDims, &mut reports, |r| {
        require_tags(r, &["fk.e2_total", "fk.e3_total", "fk.e4_total", "fk.engine_agreement"])
    });
    report_line(9, "quadratic algebras", t, o);

    let t = Instant::now();
    let mut differing = Vec::new();
    for suite in Suite::ALL {
        let again = run_suite(suite, &SuiteParams { seed: DEFAULT_SEED, ..SuiteParams::default() })
            .map(|r| canonical_json(&r).expect("serialisable"));
        if again.ok().as_ref() != reports.get(suite.name()) {
            differing.push(suite.name());
        }
    }
    let o = Outcome {
        ok: differing.is_empty() && reports.len() == Suite::ALL.len(),
        detail: if differing.is_empty() {
            format!("{} suite reports byte-identical on rerun", reports.len())
        } else {
            format!("reports differ for {}", differing.join(", "))
        },
    };
    report_line(10, "determinism", t, o);

    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
