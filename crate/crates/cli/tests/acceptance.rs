//! One pass/fail line per acceptance criterion.
//!
//! Each criterion is a set of suite properties plus, where stated, a bound
//! on wall-clock time. Everything is exact except the two runtime bounds.

use std::process::Command;
use std::time::{Duration, Instant};

use facto_core::budget::Budget;
use facto_core::catalogue;
use facto_core::suites::{run_suite, Suite, SuiteReport};

const SEED: u64 = 7;
const AXIOMS_TIME_LIMIT: Duration = Duration::from_secs(60);
const EZ_TIME_LIMIT: Duration = Duration::from_secs(10);

struct Line {
    id: usize,
    title: &'static str,
    passed: bool,
    detail: String,
}

fn props(report: &SuiteReport, names: &[&str]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in names {
        match report.property(n) {
            Some(p) => {
                ok &= p.passed;
                match &p.counterexample {
                    None => parts.push(format!("{n}: {} cases", p.checked)),
                    Some(c) => parts.push(format!("{n}: FAILED ({c})")),
                }
            }
            None => {
                ok = false;
                parts.push(format!("{n}: missing"));
            }
        }
    }
    (ok, parts.join("; "))
}

fn timed(suite: Suite) -> (SuiteReport, Duration) {
    let t = Instant::now();
    let r = run_suite(suite, SEED, &Budget::default()).expect("suite runs within budget");
    (r, t.elapsed())
}

fn facto(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_facto")).args(args).output().expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn acceptance() {
    let mut lines = Vec::new();

    let (axioms, t1) = timed(Suite::Axioms);
    let (ok, detail) = props(
        &axioms,
        &["catalogue-size", "loc-cons-axioms", "surj-mono-axioms", "int-intclo-axioms", "middle-invariant-under-relabelling"],
    );
    lines.push(Line {
        id: 1,
        title: "factorisation-system axioms",
        passed: ok && t1 < AXIOMS_TIME_LIMIT,
        detail: format!("{detail}; {:.2?} (limit {:?})", t1, AXIOMS_TIME_LIMIT),
    });

    let (oracles, _) = timed(Suite::RingOracles);
    let (ok, detail) = props(&oracles, &["prime-ideals-match-brute-force", "points-equal-primes"]);
    lines.push(Line {
        id: 2,
        title: "points = primes",
        passed: ok,
        detail,
    });
    let (ok, detail) = props(&oracles, &["zar-cover-criterion", "dom-cover-criterion"]);
    let enough = ["zar-cover-criterion", "dom-cover-criterion"]
        .iter()
        .all(|n| oracles.property(n).is_some_and(|p| p.checked >= 200));
    lines.push(Line {
        id: 3,
        title: "cover-criterion equivalence",
        passed: ok && enough,
        detail,
    });
    let (ok, detail) = props(&oracles, &["zar-local-objects", "dom-local-objects"]);
    lines.push(Line {
        id: 4,
        title: "local-object theorems",
        passed: ok,
        detail,
    });

    let (duality, _) = timed(Suite::Duality);
    let (ok, detail) = props(&duality, &["duality-catalogue", "duality-named-rings"]);
    lines.push(Line {
        id: 5,
        title: "Zariski/Domain duality",
        passed: ok,
        detail,
    });

    let (ok, detail) = props(&oracles, &["stalks-local-and-domains", "z12-stalks"]);
    lines.push(Line {
        id: 6,
        title: "stalks",
        passed: ok,
        detail,
    });

    let (ez, t7) = timed(Suite::Ez);
    let (ok, detail) = props(&ez, &["ez-unique-decomposition", "ez-corpus-size", "face-poset-of-simplex"]);
    lines.push(Line {
        id: 7,
        title: "Eilenberg-Zilber",
        passed: ok && t7 < EZ_TIME_LIMIT,
        detail: format!("{detail}; {:.2?} (limit {:?})", t7, EZ_TIME_LIMIT),
    });
    let (ok, detail) = props(&ez, &["delta-nis-local-objects"]);
    lines.push(Line {
        id: 8,
        title: "delta-Nisnevich local objects",
        passed: ok,
        detail,
    });

    let (catfib, _) = timed(Suite::Catfib);
    let (ok, detail) = props(&catfib, &["slice-legs", "comprehensive-factorization", "object-case-is-slice"]);
    let small = catalogue::categories().iter().all(|c| c.num_objects() <= 6);
    lines.push(Line {
        id: 9,
        title: "comprehensive factorization",
        passed: ok && small,
        detail,
    });

    let (toposx, _) = timed(Suite::Toposx);
    let (ok, detail) = props(&toposx, &["orbit-counts", "line-counts"]);
    lines.push(Line {
        id: 10,
        title: "topos examples",
        passed: ok,
        detail,
    });

    let again = run_suite(Suite::Axioms, SEED, &Budget::default()).expect("suite runs");
    let in_process = again == axioms;
    let args = ["verify", "--suite", "all", "--seed", "7"];
    let (c1, out1) = facto(&args);
    let (c2, out2) = facto(&args);
    let cli_same = c1 == 0 && c2 == 0 && !out1.is_empty() && out1 == out2;
    lines.push(Line {
        id: 11,
        title: "determinism",
        passed: in_process && cli_same,
        detail: format!("in-process reports equal: {in_process}; two CLI runs byte-identical: {cli_same} ({} bytes)", out1.len()),
    });

    for l in &lines {
        println!("criterion {:>2} {} {}: {}", l.id, if l.passed { "PASS" } else { "FAIL" }, l.title, l.detail);
    }
    let failed: Vec<usize> = lines.iter().filter(|l| !l.passed).map(|l| l.id).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
