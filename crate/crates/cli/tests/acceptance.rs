//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every criterion runs one verification suite and passes when all of its
//! checks pass within the time budget. Criteria in `KNOWN_FAILING` are
//! reported like the others but do not fail the target.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use klein_forge::report::{Report, Status};
use klein_forge::suites::{run, Options, Suite};

struct Criterion {
    id: u32,
    title: &'static str,
    suite: Suite,
    keys: &'static [&'static str],
    budget: Duration,
}

const SECOND: Duration = Duration::from_secs(1);
const MINUTES: Duration = Duration::from_secs(10 * 60);
const TENS_OF_MINUTES: Duration = Duration::from_secs(60 * 60);

const CRITERIA: &[Criterion] = &[
    Criterion {
        id: 1,
        title: "Klein census",
        suite: Suite::Klein,
        keys: &["klein.t4", "klein.t3", "klein.t2", "klein.per_line", "klein.tables"],
        budget: SECOND,
    },
    Criterion {
        id: 2,
        title: "K′ census",
        suite: Suite::Kprime,
        keys: &["kprime.t3", "kprime.t2", "kprime.jacobian_degree", "kprime.per_line", "kprime.type"],
        budget: SECOND,
    },
    Criterion {
        id: 3,
        title: "invariant identities",
        suite: Suite::Invariants,
        keys: &["inv.phi6_closed_form", "inv.deg_phi14", "inv.deg_phi21", "inv.deg_phi42", "inv.phi21_square_span"],
        budget: MINUTES,
    },
    Criterion {
        id: 4,
        title: "numeric Klein pipeline at 50 digits",
        suite: Suite::Numeric,
        keys: &[
            "num.lines",
            "num.t4",
            "num.t3",
            "num.steinerian",
            "num.splits",
            "num.conic_t3",
            "num.conic_t2",
            "num.tangencies",
            "num.pair_identity",
        ],
        budget: MINUTES,
    },
    Criterion {
        id: 5,
        title: "conics through the 28 triple points",
        suite: Suite::Roulleau,
        keys: &["roul.conics", "roul.per_conic", "roul.per_point", "roul.type", "roul.transversal", "roul.t2"],
        budget: MINUTES,
    },
    Criterion { id: 6, title: "Plücker formulas", suite: Suite::Plucker, keys: &["plucker.d4"], budget: SECOND },
    Criterion {
        id: 7,
        title: "GR exact model",
        suite: Suite::Gr,
        keys: &["gr.lines", "gr.t4", "gr.quad_split", "gr.double_orbits", "gr.radii_increasing", "gr.iso_klein"],
        budget: MINUTES,
    },
    Criterion {
        id: 8,
        title: "derived GR configurations",
        suite: Suite::Derived,
        keys: &[
            "derived.d12.type",
            "derived.d12.sum49",
            "derived.d12.self_reciprocal",
            "derived.d23.type",
            "derived.d23.sum49",
            "derived.d23.self_reciprocal",
            "derived.d13.type",
            "derived.d13.sum49",
            "derived.d13.self_reciprocal",
            "derived.half42",
            "derived.midcircle",
        ],
        budget: MINUTES,
    },
    Criterion {
        id: 9,
        title: "point-conic catalog",
        suite: Suite::Catalog,
        keys: &[
            "cat.21_7",
            "cat.21_7_resolvable",
            "cat.28_orbits",
            "cat.28_two_fold",
            "cat.28_deletions",
            "cat.49_orbits",
            "cat.28_4_14_8",
        ],
        budget: TENS_OF_MINUTES,
    },
    Criterion {
        id: 10,
        title: "rigidity and generation",
        suite: Suite::Generation,
        keys: &["gen.four_subsets", "gen.h_generates", "gen.g"],
        budget: TENS_OF_MINUTES,
    },
    Criterion {
        id: 11,
        title: "realization probes",
        suite: Suite::Realize,
        keys: &["real.kprime", "real.kprime_extra", "real.fano", "real.gr_tangent"],
        budget: MINUTES,
    },
    Criterion {
        id: 12,
        title: "conjecture sweep (experimental)",
        suite: Suite::Conjecture,
        keys: &["conj.symmetry", "conj.samples", "conj.reproducible"],
        budget: MINUTES,
    },
];

/// Criteria whose computation disagrees with the stated value. The
/// disagreement is reported, not hidden.
const KNOWN_FAILING: &[u32] = &[9, 11];

fn main() -> ExitCode {
    let opts = Options::default();
    let mut unexpected = Vec::new();
    println!("running {} acceptance criteria", CRITERIA.len());
    for c in CRITERIA {
        let mut r = Report::new("acceptance", &[c.title.as_bytes()]);
        let t = Instant::now();
        run(c.suite, &mut r, &opts);
        let elapsed = t.elapsed();
        let mut problems = Vec::new();
        for key in c.keys {
            match r.checks.iter().find(|k| k.name == *key) {
                None => problems.push(format!("{key} missing")),
                Some(k) if k.status != Status::Pass => problems.push(format!("{key}: expected {}, found {}", k.expected, k.found)),
                Some(_) => {}
            }
        }
        if let Some(e) = r.checks.iter().find(|k| k.name.ends_with(".error")) {
            problems.push(e.found.clone());
        }
        if elapsed > c.budget {
            problems.push(format!("took {:.1} s, budget {} s", elapsed.as_secs_f64(), c.budget.as_secs()));
        }
        let ok = problems.is_empty();
        let tag = if ok { "PASS" } else { "FAIL" };
        let mut line = format!("{tag} criterion {:>2} ({}): {} checks in {:.2} s", c.id, c.title, c.keys.len(), elapsed.as_secs_f64());
        if !ok {
            line.push_str(&format!("; {}", problems.join("; ")));
            if KNOWN_FAILING.contains(&c.id) {
                line.push_str(" [known]");
            } else {
                unexpected.push(c.id);
            }
        }
        println!("{line}");
    }
    if unexpected.is_empty() {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: unexpected failures in criteria {unexpected:?}");
        ExitCode::FAILURE
    }
}
