//! Named suites, seeded runs and JSON reports.
//!
//! A run is a pure function of its [`SuiteConfig`]: the only randomness is a
//! ChaCha8 stream seeded from `seed`, and reports carry no timestamps.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::albert::cubic_identity_suite;
use crate::clifford::clifford_suite;
use crate::composition::{composition_suite, Base, Doubled, Matrix2, Zorn};
use crate::error::{usage, Error, Result};
use crate::freudenthal::freudenthal_suite;
use crate::groups::{Kind, Realization};
use crate::report::{Check, CheckLog};
use crate::ring::{Ring, RingSpec};
use crate::root_data::{table1_instances, table2_instances, TitsIndex};
use crate::weyl;

/// Suite names accepted by [`run_suite`]; `weyl` also takes the form `weyl:<realization>`.
pub const SUITES: &[&str] = &[
    "composition",
    "albert-identities",
    "freudenthal",
    "clifford",
    "weyl",
    "square-formula",
    "lemmas-root-combinatorics",
    "so3-normalizer",
    "bc1-counterexample",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteConfig {
    pub suite: String,
    pub ring: RingSpec,
    pub trials: usize,
    pub seed: u64,
    /// Used by `weyl` when the suite name carries no realization.
    pub realization: Option<String>,
    /// Runs the deliberately broken algebra; only `composition` and
    /// `albert-identities` have one. Used to test the harness itself.
    pub mutation: bool,
}

impl SuiteConfig {
    pub fn new(suite: &str, ring: RingSpec, trials: usize, seed: u64) -> Self {
        SuiteConfig { suite: suite.to_string(), ring, trials, seed, realization: None, mutation: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub ring: String,
    pub seed: u64,
    pub trials: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub realization: Option<String>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub mutation: bool,
    pub checks: Vec<Check>,
    pub summary: Summary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// 0 when every check passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }
}

/// Exit code for an error: 2 for bad input, 1 for a failed consistency check.
pub fn error_exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) | Error::Config(_) | Error::OutOfScope(_) => 2,
        Error::Internal(_) | Error::DataCorruption(_) => 1,
    }
}

fn split_suite(cfg: &SuiteConfig) -> Result<(&str, Option<String>)> {
    let (name, arg) = match cfg.suite.split_once(':') {
        Some((n, a)) => (n, Some(a.to_string())),
        None => (cfg.suite.as_str(), None),
    };
    if !SUITES.contains(&name) {
        return usage(format!("unknown suite `{}` (known: {}, weyl:<realization>)", cfg.suite, SUITES.join(", ")));
    }
    if arg.is_some() && name != "weyl" {
        return usage(format!("suite `{name}` takes no argument"));
    }
    if cfg.mutation && !matches!(name, "composition" | "albert-identities") {
        return usage("mutation injection is only available for composition and albert-identities");
    }
    let realization = match (arg, &cfg.realization) {
        (Some(a), _) => Some(a),
        (None, r) if name == "weyl" => {
            Some(r.clone().ok_or_else(|| Error::Usage("the weyl suite needs a realization, e.g. weyl:sl:1".into()))?)
        }
        _ => None,
    };
    Ok((name, realization))
}

/// Runs a suite. Unknown names and bad ring specs are usage or configuration
/// errors; failed checks are reported, not raised.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    let (name, realization) = split_suite(cfg)?;
    if cfg.trials == 0 {
        return usage("trials must be positive");
    }
    let ring = Ring::new(cfg.ring.clone())?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let trials = cfg.trials;
    let mut details = None;
    let log = match name {
        "composition" => {
            let mut log = CheckLog::new();
            if cfg.mutation {
                log.extend(composition_suite(&Zorn::mutated(ring.clone()), trials, &mut rng).prefixed("zorn"));
            } else {
                log.extend(composition_suite(&Zorn::new(ring.clone()), trials, &mut rng).prefixed("zorn"));
                log.extend(composition_suite(&Base(ring.clone()), trials, &mut rng).prefixed("base"));
                log.extend(composition_suite(&Doubled(ring.clone()), trials, &mut rng).prefixed("doubled"));
                log.extend(composition_suite(&Matrix2(ring.clone()), trials, &mut rng).prefixed("matrix2"));
            }
            log
        }
        "albert-identities" => cubic_identity_suite(&ring, trials, cfg.mutation, &mut rng),
        "freudenthal" => freudenthal_suite(&ring, trials, &mut rng),
        "clifford" => clifford_suite(&ring, trials, &mut rng)?,
        "weyl" => {
            let sel = realization.as_deref().expect("checked above");
            let real = Realization::parse(sel, &ring)?;
            let mut log = weyl::weyl_suite(&real, trials, 3, &mut rng)?;
            if real.kind() == Kind::Sl(1) && ring.elements().is_some_and(|e| e.len() <= 16) {
                log.extend(weyl::unique_extension_bruteforce(&ring)?);
            }
            log
        }
        "square-formula" => {
            let (mut log, verdicts) = weyl::square_formula_check(&ring, trials, &mut rng)?;
            log.extend(weyl::braid_check(&ring, trials, &mut rng));
            details = Some(serde_json::to_value(verdicts).expect("verdicts serialize"));
            log
        }
        "lemmas-root-combinatorics" => {
            let (log, d) = lemma_suite()?;
            details = Some(d);
            log
        }
        "so3-normalizer" => weyl::so3_normalizer_check(&ring, trials, &mut rng)?,
        "bc1-counterexample" => {
            let (log, d) = bc1_suite(&ring, &mut rng)?;
            details = Some(d);
            log
        }
        _ => unreachable!("suite names are checked above"),
    };
    let checks = log.into_checks();
    let passed = checks.iter().filter(|c| c.passed()).count();
    Ok(SuiteReport {
        suite: cfg.suite.clone(),
        ring: cfg.ring.to_string(),
        seed: cfg.seed,
        trials,
        realization: if name == "weyl" { realization } else { None },
        mutation: cfg.mutation,
        summary: Summary { total: checks.len(), passed, failed: checks.len() - passed },
        checks,
        details,
    })
}

/// Largest parameters of the exhaustive lemma sweep.
pub const LEMMA_MAX_D: usize = 4;
pub const LEMMA_MAX_N: usize = 6;
pub const LEMMA_MAX_N_BC: usize = 8;

#[derive(Serialize)]
struct LemmaDetails {
    nondeg3_instances: usize,
    nondeg5_instances: usize,
    nondeg5_outside_hypothesis: Vec<String>,
    table_rows: usize,
    table_rows_not_applicable: Vec<String>,
    e7_layers: Vec<(i64, usize)>,
}

fn row_kind(table: u8) -> &'static str {
    match table {
        3 => "3-grading, degree -1",
        4 => "3-grading, degree 0",
        _ => "5-grading",
    }
}

fn lemma_suite() -> Result<(CheckLog, serde_json::Value)> {
    let mut log = CheckLog::new();
    let mut rows_total = 0;
    let mut not_applicable = Vec::new();
    let mut check_rows = |log: &mut CheckLog, index: &TitsIndex, g: &crate::root_data::GradedRootSystem| -> Result<()> {
        for row in g.table_rows()? {
            rows_total += 1;
            if !row.applicable {
                not_applicable.push(format!("{index}: {} ({}, {})", row_kind(row.table), row.alpha, row.beta));
                continue;
            }
            log.record(&format!("listed witness rows ({}) are admissible", row_kind(row.table)), row.admissible, || {
                vec![("index", index.to_string()), ("alpha", row.alpha.clone()), ("beta", row.beta.clone())]
            });
        }
        Ok(())
    };

    let mut instances = table1_instances(LEMMA_MAX_D, LEMMA_MAX_N);
    instances.push(TitsIndex::E7);
    let mut e7_layers = Vec::new();
    for index in &instances {
        let g = index.graded_system()?;
        let rep = g.check_lemma_nondeg3()?;
        let name = if *index == TitsIndex::E7 { "non-deg-3 holds for E7" } else { "non-deg-3 holds on classical A1 indices" };
        log.record(name, rep.pass, || vec![("index", index.to_string()), ("gaps", rep.gaps.join("; "))]);
        if *index == TitsIndex::E7 {
            let sizes = g.layer_sizes()?;
            e7_layers = sizes.iter().map(|(k, v)| (*k, *v)).collect();
            log.assert("E7 layers are 27/72/27", e7_layers == vec![(-1, 27), (0, 72), (1, 27)]);
        }
        check_rows(&mut log, index, &g)?;
    }

    let mut n5 = 0;
    let mut outside = Vec::new();
    for index in table2_instances(LEMMA_MAX_N_BC) {
        let g = index.graded_system()?;
        match g.check_lemma_nondeg5() {
            Ok(rep) => {
                n5 += 1;
                log.record("non-deg-5 holds on classical BC1 indices", rep.pass, || {
                    vec![("index", index.to_string()), ("gaps", rep.gaps.join("; "))]
                });
            }
            Err(Error::Usage(_)) => outside.push(index.to_string()),
            Err(e) => return Err(e),
        }
        check_rows(&mut log, &index, &g)?;
    }
    let details = LemmaDetails {
        nondeg3_instances: instances.len(),
        nondeg5_instances: n5,
        nondeg5_outside_hypothesis: outside,
        table_rows: rows_total,
        table_rows_not_applicable: not_applicable,
        e7_layers,
    };
    Ok((log, serde_json::to_value(details).expect("details serialize")))
}

fn bc1_suite<R: rand::Rng + ?Sized>(ring: &Ring, rng: &mut R) -> Result<(CheckLog, serde_json::Value)> {
    let mut log = CheckLog::new();
    let i = |k: i64| ring.int(k);
    let frac = |n: i64, d: i64| ring.int(d).try_invert().map(|inv| ring.int(n) * inv);
    let main = weyl::bc1_counterexample(ring, &i(1), &i(2), &i(5), rng)?;
    log.assert("(1,2,5) is constructible", main.constructible);
    log.assert("(1,2,5): w equals the displayed matrix", main.w_matches_display);
    log.assert("(1,2,5): w^2 by multiplication equals the displayed diagonal", main.square_matches_display);
    log.assert("(1,2,5): the triple is Weyl", main.is_weyl);
    let expected = match (frac(2, 3), frac(9, 4)) {
        (Some(a), Some(b)) => Some(crate::matrix::Matrix::diagonal(&[a.clone(), b, a]).to_string()),
        _ => None,
    };
    log.assert("(1,2,5): w^2 = diag(2/3, 9/4, 2/3)", expected.is_some() && main.w_squared == expected);
    log.assert("(1,2,5): w^2 is not central", !main.square_central);
    let degenerate = weyl::bc1_counterexample(ring, &i(1), &i(1), &i(2), rng)?;
    log.assert("(1,1,2): w^2 = I", degenerate.square_matches_display && degenerate.square_central);
    let rejected = weyl::bc1_counterexample(ring, &i(1), &i(1), &i(1), rng)?;
    log.assert("(1,1,1) is rejected since xyz - y^2 = 0", !rejected.constructible);
    let details = serde_json::json!({ "main": main, "degenerate": degenerate, "rejected": rejected });
    Ok((log, details))
}

/// Output of the `weyl` command: `w`, `w²` and the verdicts for one `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylReport {
    pub realization: String,
    pub ring: String,
    pub x: String,
    pub constructible: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub z: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_squared: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coroot_minus_one: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub is_weyl: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_equals_coroot: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_central: Option<bool>,
}

/// Builds the Weyl element through `t₊(x)` and reports on its square.
/// Centrality and the extensional Weyl test use probes drawn from `seed`.
pub fn weyl_report(realization: &str, ring: &RingSpec, x: &str, seed: u64) -> Result<WeylReport> {
    let ring_ = Ring::new(ring.clone())?;
    let real = Realization::parse(realization, &ring_)?;
    let xp = real.parse_param(x)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rep = WeylReport {
        realization: real.kind().to_string(),
        ring: ring.to_string(),
        x: xp.to_string(),
        constructible: false,
        y: None,
        z: None,
        w: None,
        w_squared: None,
        coroot_minus_one: real.coroot_minus_one().map(|c| c.to_string()),
        is_weyl: None,
        square_equals_coroot: None,
        square_central: None,
    };
    let Some(we) = weyl::build_weyl(&real, &xp)? else { return Ok(rep) };
    let params: Vec<_> = (0..weyl::CENTRALITY_PROBES / 2).map(|_| real.sample_param(&mut rng)).collect();
    let check = weyl::is_weyl_triple(&real, &we.triple, &params)?;
    let sq = weyl::weyl_square(&real, &we, &weyl::centrality_probes(&real, &mut rng)?);
    rep.constructible = true;
    rep.y = Some(we.triple.y.to_string());
    rep.z = Some(we.triple.z.to_string());
    rep.w = Some(we.w.to_string());
    rep.w_squared = Some(sq.square.to_string());
    rep.is_weyl = Some(check.weyl);
    rep.square_equals_coroot = sq.equals_coroot;
    rep.square_central = Some(sq.central);
    Ok(rep)
}

/// Output of the `grading` command.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradingReport {
    pub index: String,
    pub params: Vec<usize>,
    pub layers: std::collections::BTreeMap<i64, usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma3: Option<crate::root_data::LemmaReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lemma5: Option<crate::root_data::LemmaReport>,
    pub table_rows: Vec<crate::root_data::TableRow>,
}

/// Layer sizes, the applicable non-degeneracy lemma, and the table rows of an index.
pub fn grading_report(id: &str, params: &[usize]) -> Result<GradingReport> {
    let index = TitsIndex::parse(id, params)?;
    let g = index.graded_system()?;
    let optional = |r: Result<crate::root_data::LemmaReport>| match r {
        Ok(rep) => Ok(Some(rep)),
        Err(Error::Usage(_)) => Ok(None),
        Err(e) => Err(e),
    };
    Ok(GradingReport {
        index: index.id().to_string(),
        params: index.params(),
        layers: g.layer_sizes()?,
        lemma3: optional(g.check_lemma_nondeg3())?,
        lemma5: optional(g.check_lemma_nondeg5())?,
        table_rows: g.table_rows()?,
    })
}

/// Applies a generator word to an element of `W` given as 57 scalars.
pub fn e7_action(ring: &RingSpec, word: &str, vector: &str) -> Result<crate::freudenthal::FVector> {
    let ring = Ring::new(ring.clone())?;
    let f = crate::freudenthal::FAutomorphism::parse_word(&ring, word)?;
    let v = crate::freudenthal::FVector::parse(&ring, vector)?;
    Ok(f.apply(&v))
}

/// Parses a 27×27 matrix in row-major text (rows on lines, entries
/// separated by whitespace or commas) and decides whether it preserves `N`.
pub fn validate_e6(ring: &RingSpec, text: &str) -> Result<crate::albert::Validation> {
    let ring = Ring::new(ring.clone())?;
    let rows: Vec<Vec<_>> = text
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|l| {
            l.split(|c: char| c.is_whitespace() || c == ',')
                .filter(|t| !t.is_empty())
                .map(|t| ring.parse_element(t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    crate::albert::validate_norm_preserving(&crate::matrix::Matrix::from_rows(rows)?)
}
