//! Grid-driven verification of every identity the library implements.
//!
//! A [`SuiteConfig`] selects suites and grid bounds; [`run_suites`] expands
//! them into a canonically ordered list of cases, evaluates the cases
//! (optionally on a worker pool), and folds the outcomes into a
//! [`SuiteReport`]. Failures are data: the report records both sides of the
//! failed comparison as exact decimal strings.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bernoulli::{
    bernoulli_at_negative, bernoulli_at_nonneg, bernoulli_general, bernoulli_number,
    bernoulli_number_harmonic, bernoulli_poly, bernoulli_shift_harmonic, powersum_poly,
};
use crate::calculus::{delta, from_newton_gregory, iterated_delta, newton_gregory};
use crate::error::{Error, Result};
use crate::exact::{binomial_i, factorial, format_rat, rat, ratio, sign_pow, ExactInt, ExactRat};
use crate::poly::Polynomial;
use crate::powersum::{con3_unit_identity, powersum_brute, powersum_r_minus1, FormulaId};
use crate::stirling::{
    dual_r_stirling, eval_stirling_poly, r_stirling, stirling2, stirling_poly, StirlingKind,
    StirlingTable,
};

pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FormulaAgreement,
    StirlingDuality,
    NewtonGregory,
    Bernoulli,
    Con3Identity,
    Symmetry,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::FormulaAgreement,
        Suite::StirlingDuality,
        Suite::NewtonGregory,
        Suite::Bernoulli,
        Suite::Con3Identity,
        Suite::Symmetry,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FormulaAgreement => "formula-agreement",
            Suite::StirlingDuality => "stirling-duality",
            Suite::NewtonGregory => "newton-gregory",
            Suite::Bernoulli => "bernoulli",
            Suite::Con3Identity => "con3-identity",
            Suite::Symmetry => "symmetry",
        }
    }

    /// Parses a comma-separated list; an empty or blank string is the empty set.
    pub fn parse_list(s: &str) -> Result<BTreeSet<Suite>> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub k_max: u32,
    pub n_max: u32,
    pub r_max: u32,
    pub m_max: u32,
    pub suites: BTreeSet<Suite>,
    /// Worker count hint; 0 or 1 evaluates on the calling thread. Never
    /// affects the report.
    #[serde(skip)]
    pub parallelism: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            k_max: 12,
            n_max: 20,
            r_max: 8,
            m_max: 8,
            suites: Suite::ALL.into_iter().collect(),
            parallelism: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Failure {
    pub suite: Suite,
    pub parameters: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub cases_run: u64,
    pub failures: Vec<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub version: u32,
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub overall_pass: bool,
}

impl SuiteReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    pub fn cases_run(&self) -> u64 {
        self.suites.iter().map(|s| s.cases_run).sum()
    }

    pub fn suite(&self, suite: Suite) -> Option<&SuiteResult> {
        self.suites.iter().find(|s| s.suite == suite)
    }

    /// Builds a report from per-case outcomes in any order.
    pub fn from_outcomes(
        config: &SuiteConfig,
        outcomes: impl IntoIterator<Item = (Suite, Option<Failure>)>,
    ) -> Self {
        let mut suites: Vec<SuiteResult> = config
            .suites
            .iter()
            .map(|&suite| SuiteResult {
                suite,
                cases_run: 0,
                failures: Vec::new(),
            })
            .collect();
        for (suite, failure) in outcomes {
            let Some(slot) = suites.iter_mut().find(|s| s.suite == suite) else {
                continue;
            };
            slot.cases_run += 1;
            slot.failures.extend(failure);
        }
        for s in &mut suites {
            s.failures.sort();
        }
        let overall_pass = suites.iter().all(|s| s.failures.is_empty());
        SuiteReport {
            version: REPORT_VERSION,
            config: config.clone(),
            suites,
            overall_pass,
        }
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            let status = if s.failures.is_empty() {
                "PASS"
            } else {
                "FAIL"
            };
            writeln!(
                f,
                "{status} {:<18} cases={} failures={}",
                s.suite.name(),
                s.cases_run,
                s.failures.len()
            )?;
            for fail in &s.failures {
                writeln!(
                    f,
                    "  {}: expected {}, got {}",
                    fail.parameters, fail.expected, fail.actual
                )?;
            }
        }
        write!(
            f,
            "overall: {}",
            if self.overall_pass { "PASS" } else { "FAIL" }
        )
    }
}

/// Result of one comparison: `None` when both sides agree.
type Mismatch = Option<(String, String)>;

struct Case {
    suite: Suite,
    parameters: String,
    check: Box<dyn Fn() -> Mismatch + Send + Sync>,
}

fn compare<T: PartialEq>(expected: T, actual: T, show: impl Fn(&T) -> String) -> Mismatch {
    (expected != actual).then(|| (show(&expected), show(&actual)))
}

fn cmp_int(expected: ExactInt, actual: Result<ExactInt>) -> Mismatch {
    match actual {
        Ok(a) => compare(expected, a, ToString::to_string),
        Err(e) => Some((expected.to_string(), format!("error: {e}"))),
    }
}

fn cmp_rat(expected: ExactRat, actual: Result<ExactRat>) -> Mismatch {
    match actual {
        Ok(a) => compare(expected, a, format_rat),
        Err(e) => Some((format_rat(&expected), format!("error: {e}"))),
    }
}

fn cmp_poly(expected: Polynomial, actual: Polynomial) -> Mismatch {
    compare(expected, actual, |p| {
        format!("[{}]", p.coeff_strings().join(", "))
    })
}

struct Grid<'a> {
    config: &'a SuiteConfig,
    cases: Vec<Case>,
}

impl Grid<'_> {
    fn push<F>(&mut self, suite: Suite, parameters: String, check: F)
    where
        F: Fn() -> Mismatch + Send + Sync + 'static,
    {
        self.cases.push(Case {
            suite,
            parameters,
            check: Box::new(check),
        });
    }

    fn formula_agreement(&mut self) {
        let SuiteConfig {
            k_max,
            n_max,
            r_max,
            m_max,
            ..
        } = *self.config;
        let suite = Suite::FormulaAgreement;
        for k in 0..=k_max {
            for n in 0..=n_max {
                let mut ids = vec![FormulaId::F1, FormulaId::F2];
                ids.extend((0..=r_max).map(FormulaId::Th1));
                ids.extend((0..=r_max).map(FormulaId::Th2));
                ids.extend([FormulaId::Reqn, FormulaId::Reqn1, FormulaId::NegN]);
                ids.extend((0..=m_max).map(FormulaId::Con1));
                ids.extend((0..=m_max.min(n)).map(FormulaId::Con2));
                ids.extend([FormulaId::Con3, FormulaId::Harmonic]);
                for id in ids {
                    self.push(suite, format!("{id} k={k} n={n}"), move || {
                        cmp_int(powersum_brute(k, n), id.evaluate(k, n))
                    });
                }
            }
            for r in 0..=r_max {
                self.push(suite, format!("r-minus-1 k={k} r={r}"), move || {
                    let expected = match r {
                        0 if k == 0 => -BigInt::one(),
                        0 => BigInt::zero(),
                        _ => powersum_brute(k, r - 1),
                    };
                    cmp_int(expected, Ok(powersum_r_minus1(k, r)))
                });
            }
        }
    }

    fn stirling_duality(&mut self) {
        let SuiteConfig { k_max, r_max, .. } = *self.config;
        let suite = Suite::StirlingDuality;
        for k in 0..=k_max {
            for j in 0..=k {
                for r in 0..=r_max {
                    self.push(
                        suite,
                        format!("alt-vs-weighted k={k} j={j} r={r}"),
                        move || {
                            cmp_rat(
                                eval_stirling_poly(k, j, &rat(r)).unwrap(),
                                Ok(rat(r_stirling(k, j, r))),
                            )
                        },
                    );
                    self.push(
                        suite,
                        format!("alt-vs-weighted-dual k={k} j={j} r={r}"),
                        move || {
                            cmp_rat(
                                eval_stirling_poly(k, j, &-rat(r)).unwrap(),
                                Ok(rat(dual_r_stirling(k, j, r))),
                            )
                        },
                    );
                }
                for r in 0..=r_max.max(k_max) {
                    self.push(suite, format!("duality k={k} j={j} r={r}"), move || {
                        let sign = sign_pow(k - j);
                        let rhs = if r >= j {
                            rat(sign * r_stirling(k, j, r - j))
                        } else {
                            let x = rat(i64::from(r) - i64::from(j));
                            rat(sign) * eval_stirling_poly(k, j, &x).unwrap()
                        };
                        cmp_rat(rhs, Ok(rat(dual_r_stirling(k, j, r))))
                    });
                }
                self.push(suite, format!("poly-at-0 k={k} j={j}"), move || {
                    cmp_rat(rat(stirling2(k, j)), eval_stirling_poly(k, j, &rat(0)))
                });
                self.push(suite, format!("poly-at-1 k={k} j={j}"), move || {
                    cmp_rat(
                        rat(stirling2(k + 1, j + 1)),
                        eval_stirling_poly(k, j, &rat(1)),
                    )
                });
            }
            for r in 0..=r_max {
                self.push(suite, format!("table-recurrence k={k} r={r}"), move || {
                    let kinds = [StirlingKind::RShifted(r), StirlingKind::Dual(r)];
                    for kind in kinds {
                        let table = StirlingTable::build(kind, k);
                        for j in 0..=k {
                            let got = table.get(k, j).unwrap();
                            let want = kind.value(k, j);
                            if got != want {
                                return Some((want.to_string(), got.to_string()));
                            }
                        }
                    }
                    None
                });
            }
        }
    }

    fn newton_gregory(&mut self) {
        let k_max = self.config.k_max;
        let suite = Suite::NewtonGregory;
        let anchors = [rat(0), rat(1), rat(-2), ratio(5, 2)];
        for k in 0..=k_max {
            self.push(suite, format!("delta-powersum k={k}"), move || {
                let target = Polynomial::monomial(k as usize).shift(&rat(1));
                cmp_poly(target, delta(&powersum_poly(k)))
            });
            for j in 0..=k {
                self.push(suite, format!("delta-stirling k={k} j={j}"), move || {
                    let r = stirling_poly(k, j).unwrap().scale(&rat(factorial(j)));
                    cmp_poly(
                        r,
                        iterated_delta(&Polynomial::monomial(k as usize), j as usize),
                    )
                });
            }
            for anchor in &anchors {
                let a = anchor.clone();
                self.push(
                    suite,
                    format!("round-trip k={k} a={}", format_rat(&a)),
                    move || {
                        let s = powersum_poly(k);
                        let rebuilt = from_newton_gregory(&newton_gregory(&s, &a), &a);
                        cmp_poly(s, rebuilt)
                    },
                );
                let a = anchor.clone();
                self.push(
                    suite,
                    format!("interpolation k={k} a={}", format_rat(&a)),
                    move || {
                        // S_k(x) = S_k(a-1) + Σ_j j! C(x+1-a, j+1) R_{k,j}(a)
                        let s = powersum_poly(k);
                        let one = ExactRat::one();
                        let mut rebuilt = Polynomial::constant(s.eval(&(&a - &one)));
                        for j in 0..=k {
                            let weight = rat(factorial(j)) * eval_stirling_poly(k, j, &a).unwrap();
                            let basis =
                                crate::calculus::binomial_basis_poly(j as usize + 1, &(&a - &one));
                            rebuilt = &rebuilt + &basis.scale(&weight);
                        }
                        cmp_poly(s, rebuilt)
                    },
                );
            }
        }
    }

    fn bernoulli(&mut self) {
        let SuiteConfig {
            k_max,
            n_max,
            r_max,
            ..
        } = *self.config;
        let suite = Suite::Bernoulli;
        let spots = [ratio(1, 2), ratio(-3, 2), ratio(7, 3)];
        for k in 0..=k_max {
            self.push(suite, format!("harmonic-number k={k}"), move || {
                cmp_rat(bernoulli_number(k), Ok(bernoulli_number_harmonic(k)))
            });
            if k >= 3 && k % 2 == 1 {
                self.push(suite, format!("odd-vanishes k={k}"), move || {
                    cmp_rat(ExactRat::zero(), Ok(bernoulli_number(k)))
                });
            }
            self.push(suite, format!("difference-equation k={k}"), move || {
                let target = Polynomial::monomial(k as usize).scale(&rat(k + 1));
                cmp_poly(target, delta(&bernoulli_poly(k + 1)))
            });
            for n in 0..=n_max {
                self.push(suite, format!("powersum-poly k={k} n={n}"), move || {
                    cmp_rat(
                        rat(powersum_brute(k, n)),
                        Ok(powersum_poly(k).eval(&rat(n))),
                    )
                });
            }
            let kp1 = k + 1;
            let r_max = i64::from(r_max);
            for x in -r_max..=r_max {
                let r = x.unsigned_abs() as u32;
                if x >= 0 {
                    self.push(suite, format!("at-nonneg k+1={kp1} r={r}"), move || {
                        cmp_rat(
                            bernoulli_poly(kp1).eval(&rat(r)),
                            bernoulli_at_nonneg(kp1, r),
                        )
                    });
                }
                if x <= 0 {
                    self.push(suite, format!("at-negative k+1={kp1} r={r}"), move || {
                        cmp_rat(
                            bernoulli_poly(kp1).eval(&-rat(r)),
                            bernoulli_at_negative(kp1, r),
                        )
                    });
                }
            }
            let points: Vec<ExactRat> = (-r_max..=r_max)
                .map(rat)
                .chain(spots.iter().cloned())
                .collect();
            for x in points {
                let label = format_rat(&x);
                let xc = x.clone();
                self.push(suite, format!("general k+1={kp1} x={label}"), move || {
                    cmp_rat(bernoulli_poly(kp1).eval(&xc), bernoulli_general(kp1, &xc))
                });
                self.push(
                    suite,
                    format!("shift-harmonic k={k} x={label}"),
                    move || {
                        let shifted = &x - ExactRat::one();
                        cmp_rat(
                            bernoulli_poly(k).eval(&shifted),
                            bernoulli_shift_harmonic(k, &x),
                        )
                    },
                );
            }
        }
    }

    fn con3_identity(&mut self) {
        for k in 0..=self.config.k_max {
            self.push(Suite::Con3Identity, format!("unit k={k}"), move || {
                cmp_int(BigInt::one(), Ok(con3_unit_identity(k)))
            });
        }
    }

    fn symmetry(&mut self) {
        let SuiteConfig { k_max, n_max, .. } = *self.config;
        let suite = Suite::Symmetry;
        for k in 0..=k_max {
            let delta0 = if k == 0 {
                BigInt::one()
            } else {
                BigInt::zero()
            };
            for r in 0..=n_max {
                let d = delta0.clone();
                self.push(suite, format!("reflection k={k} r={r}"), move || {
                    let s = powersum_poly(k);
                    let rhs = rat(-d.clone()) + rat(sign_pow(k + 1)) * s.eval(&rat(r));
                    cmp_rat(rhs, Ok(s.eval(&rat(-i64::from(r) - 1))))
                });
                let d = delta0.clone();
                self.push(suite, format!("dual-at-zero k={k} r={r}"), move || {
                    // (-1)^k S_k(r) = -δ_{k,0} + Σ_j j! C(r+1, j+1) {k j}_{-r}
                    let rhs = (0..=k).fold(-d.clone(), |acc, j| {
                        acc + factorial(j)
                            * binomial_i(i64::from(r) + 1, j + 1)
                            * dual_r_stirling(k, j, r)
                    });
                    cmp_int(sign_pow(k) * powersum_brute(k, r), Ok(rhs))
                });
            }
            let d = delta0.clone();
            self.push(suite, format!("at-minus-one k={k}"), move || {
                cmp_rat(rat(-d.clone()), Ok(powersum_poly(k).eval(&rat(-1))))
            });
        }
    }
}

fn build_cases(config: &SuiteConfig) -> Vec<Case> {
    let mut grid = Grid {
        config,
        cases: Vec::new(),
    };
    for suite in &config.suites {
        match suite {
            Suite::FormulaAgreement => grid.formula_agreement(),
            Suite::StirlingDuality => grid.stirling_duality(),
            Suite::NewtonGregory => grid.newton_gregory(),
            Suite::Bernoulli => grid.bernoulli(),
            Suite::Con3Identity => grid.con3_identity(),
            Suite::Symmetry => grid.symmetry(),
        }
    }
    grid.cases
}

fn evaluate(case: &Case) -> (Suite, Option<Failure>) {
    let failure = (case.check)().map(|(expected, actual)| Failure {
        suite: case.suite,
        parameters: case.parameters.clone(),
        expected,
        actual,
    });
    (case.suite, failure)
}

pub fn run_suites(config: &SuiteConfig) -> SuiteReport {
    let cases = build_cases(config);
    let outcomes: Vec<_> = if config.parallelism > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.parallelism)
            .build();
        match pool {
            Ok(pool) => pool.install(|| cases.par_iter().map(evaluate).collect()),
            Err(_) => cases.iter().map(evaluate).collect(),
        }
    } else {
        cases.iter().map(evaluate).collect()
    };
    SuiteReport::from_outcomes(config, outcomes)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(suites: &[Suite]) -> SuiteConfig {
        SuiteConfig {
            k_max: 4,
            n_max: 5,
            r_max: 3,
            m_max: 3,
            suites: suites.iter().copied().collect(),
            parallelism: 1,
        }
    }

    #[test]
    fn empty_suite_set_passes_trivially() {
        let report = run_suites(&small(&[]));
        assert!(report.overall_pass);
        assert_eq!(report.cases_run(), 0);
        assert!(report.suites.is_empty());
    }

    #[test]
    fn degenerate_grid_still_runs_cases() {
        let config = SuiteConfig {
            k_max: 0,
            n_max: 0,
            r_max: 0,
            m_max: 0,
            ..SuiteConfig::default()
        };
        let report = run_suites(&config);
        assert!(report.overall_pass, "{report}");
        for s in &report.suites {
            assert!(s.cases_run > 0, "{}", s.suite);
        }
    }

    #[test]
    fn small_grid_passes() {
        let report = run_suites(&small(&Suite::ALL));
        assert!(report.overall_pass, "{report}");
    }

    #[test]
    fn parallel_matches_serial() {
        let serial = run_suites(&small(&Suite::ALL));
        let parallel = run_suites(&SuiteConfig {
            parallelism: 4,
            ..small(&Suite::ALL)
        });
        assert_eq!(serial.to_json(), parallel.to_json());
    }

    #[test]
    fn enlarging_bounds_keeps_cases() {
        let names = |c: &SuiteConfig| -> BTreeSet<String> {
            build_cases(c)
                .into_iter()
                .map(|c| format!("{}/{}", c.suite, c.parameters))
                .collect()
        };
        let a = small(&Suite::ALL);
        let b = SuiteConfig {
            k_max: 5,
            n_max: 7,
            r_max: 4,
            m_max: 4,
            ..a.clone()
        };
        assert!(names(&a).is_subset(&names(&b)));
    }

    #[test]
    fn failures_are_sorted_and_fail_the_report() {
        let config = small(&[Suite::Symmetry, Suite::Bernoulli]);
        let fail = |p: &str| Failure {
            suite: Suite::Bernoulli,
            parameters: p.to_string(),
            expected: "1".into(),
            actual: "2".into(),
        };
        let outcomes = vec![
            (Suite::Bernoulli, Some(fail("z"))),
            (Suite::Symmetry, None),
            (Suite::Bernoulli, Some(fail("a"))),
            (Suite::Bernoulli, None),
        ];
        let report = SuiteReport::from_outcomes(&config, outcomes);
        assert!(!report.overall_pass);
        let b = report.suite(Suite::Bernoulli).unwrap();
        assert_eq!(b.cases_run, 3);
        assert_eq!(b.failures[0].parameters, "a");
        assert_eq!(b.failures[1].parameters, "z");
        assert_eq!(report.suite(Suite::Symmetry).unwrap().cases_run, 1);
        assert!(report.to_string().contains("FAIL bernoulli"));
    }

    #[test]
    fn report_json_round_trip() {
        let report = run_suites(&small(&[Suite::Con3Identity]));
        let json = report.to_json();
        let back = SuiteReport::from_json(&json).unwrap();
        assert_eq!(back.to_json(), json);
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["version"], 1);
        assert_eq!(v["config"]["suites"][0], "con3-identity");
        assert_eq!(v["suites"][0]["cases_run"], 5);
        assert_eq!(v["overall_pass"], true);
    }

    #[test]
    fn suite_list_parsing() {
        assert!(Suite::parse_list("").unwrap().is_empty());
        assert!(Suite::parse_list(" , ").unwrap().is_empty());
        let s = Suite::parse_list("symmetry,con3-identity").unwrap();
        assert_eq!(s.len(), 2);
        assert!(Suite::parse_list("nope").is_err());
    }

    #[test]
    fn mismatch_is_reported_with_both_values() {
        let m = cmp_int(BigInt::from(3), Ok(BigInt::from(4)));
        assert_eq!(m, Some(("3".to_string(), "4".to_string())));
        let m = cmp_rat(ratio(1, 2), Err(Error::Domain("x".into())));
        assert_eq!(m.unwrap().1, "error: domain error: x");
    }
}
