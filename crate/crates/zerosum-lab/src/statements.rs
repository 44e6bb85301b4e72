//! The closed-form registry: every statement the solver is checked against,
//! as a machine-evaluable predicted value plus a hypothesis report. The
//! predictions reproduce the quoted formulas verbatim; comparing them with
//! the exact search is the verify harness's job, and a mismatch there is a
//! finding about the formula, not a tool failure.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::nt;
use crate::solver::ConstantKind;
use crate::weights::{WeightFamily, WeightSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    /// d_{a}(Z_n) = n / gcd(a, n)
    Thm2i { n: u64, a: u64 },
    /// d_{a, n-a}(Z_n) = 1 + floor(log2 n), gcd(a, n) = 1
    Thm2ii { n: u64, a: u64 },
    /// d_units(Z_n) = 1 + Omega(n)
    Thm2iii { n: u64 },
    /// d_{]n-1[}(Z_n) = 2
    Thm2iv { n: u64 },
    /// d_{]p-1[}(Z_p^d) = d + 1
    Cor12a { p: u64, d: u32 },
    /// d_{A_1}(Z_p^d) = 2d + 1 (quadratic residues)
    Cor12b { p: u64, d: u32 },
    /// d_{A_2}(Z_p^d) = 2d + 1 (non-residues)
    Cor12c { p: u64, d: u32 },
    /// d_{A_3}(Z_p^d) = 2d + 1 (primitive roots)
    Cor12d { p: u64, d: u32 },
    /// d_{A_4}(Z_p^d) = 2d + 1 (A_2 \ A_3), p not a Fermat prime
    Cor12e { p: u64, d: u32 },
    /// d_{A_5}(Z_p^d) = 2d + 1 (half-sets), any member of the family
    Cor12f { p: u64, d: u32, seed: Option<u64> },
    /// d_{]r[}(Z_p^d) = ceil((d(p-1)+1)/r), r >= d
    Cor12g { p: u64, d: u32, r: u64 },
    /// ZS_{a}(G) = D(G) + |G| - 1, gcd(a, exp G) = 1
    Result1 { factors: Vec<u64>, a: u64 },
    /// s_{a, n-a}(Z_n) = n + ceil(log2 n), gcd(a, n) = 1
    Result2 { n: u64, a: u64 },
    /// s_units(Z_n) = n + Omega(n)
    Result3 { n: u64 },
    /// s_{]r[}(Z_p) = p + floor(p/r)
    Result4 { p: u64, r: u64 },
    /// s_{A_i}(Z_p^d) = 2d + p for i = 1..4, p >= 2d + 1
    Thm3 { p: u64, d: u32, i: u8 },
    /// ZS_{A_i}(Z_p^d) = p^d + 2d for i = 1..4, p >= 2d + 1
    Cor31 { p: u64, d: u32, i: u8 },
    /// ZS_{A_5}(Z_p^d) = 2d + p^d, p = 3 (mod 4), p >= 2d + 1
    Cor32 { p: u64, d: u32, seed: Option<u64> },
}

#[derive(Debug, Clone, Serialize)]
pub struct Hypothesis {
    pub description: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prediction {
    pub value: u64,
    pub hypotheses: Vec<Hypothesis>,
}

/// The concrete (group, weights, constant) a statement predicts.
#[derive(Debug, Clone)]
pub struct StatementInstance {
    pub group: GroupSpec,
    pub weights: WeightSet,
    pub kind: ConstantKind,
}

struct HypothesisChecker {
    list: Vec<Hypothesis>,
}

impl HypothesisChecker {
    fn new() -> Self {
        HypothesisChecker { list: Vec::new() }
    }

    fn require(&mut self, description: &str, holds: bool) {
        self.list.push(Hypothesis {
            description: description.to_string(),
            holds,
        });
    }

    fn finish(self, value: u64) -> Result<Prediction> {
        if let Some(failed) = self.list.iter().find(|h| !h.holds) {
            return Err(Error::HypothesisViolated(failed.description.clone()));
        }
        Ok(Prediction {
            value,
            hypotheses: self.list,
        })
    }
}

fn floor_log2(n: u64) -> u64 {
    n.ilog2() as u64
}

fn ceil_log2(n: u64) -> u64 {
    if n <= 1 {
        0
    } else {
        (n - 1).ilog2() as u64 + 1
    }
}

fn ai_family(i: u8) -> Result<WeightFamily> {
    match i {
        1 => Ok(WeightFamily::Qr),
        2 => Ok(WeightFamily::Qnr),
        3 => Ok(WeightFamily::PrimRoots),
        4 => Ok(WeightFamily::A4),
        _ => Err(Error::InvalidParam(format!("A_{i} is not one of A_1..A_4"))),
    }
}

impl Statement {
    pub fn id(&self) -> &'static str {
        match self {
            Statement::Thm2i { .. } => "thm2i",
            Statement::Thm2ii { .. } => "thm2ii",
            Statement::Thm2iii { .. } => "thm2iii",
            Statement::Thm2iv { .. } => "thm2iv",
            Statement::Cor12a { .. } => "cor12a",
            Statement::Cor12b { .. } => "cor12b",
            Statement::Cor12c { .. } => "cor12c",
            Statement::Cor12d { .. } => "cor12d",
            Statement::Cor12e { .. } => "cor12e",
            Statement::Cor12f { .. } => "cor12f",
            Statement::Cor12g { .. } => "cor12g",
            Statement::Result1 { .. } => "result1",
            Statement::Result2 { .. } => "result2",
            Statement::Result3 { .. } => "result3",
            Statement::Result4 { .. } => "result4",
            Statement::Thm3 { .. } => "thm3",
            Statement::Cor31 { .. } => "cor31",
            Statement::Cor32 { .. } => "cor32",
        }
    }

    pub fn params(&self) -> String {
        match self {
            Statement::Thm2i { n, a } | Statement::Thm2ii { n, a } => format!("n={n} a={a}"),
            Statement::Thm2iii { n } | Statement::Thm2iv { n } => format!("n={n}"),
            Statement::Cor12a { p, d }
            | Statement::Cor12b { p, d }
            | Statement::Cor12c { p, d }
            | Statement::Cor12d { p, d }
            | Statement::Cor12e { p, d } => format!("p={p} d={d}"),
            Statement::Cor12f { p, d, seed } => match seed {
                None => format!("p={p} d={d} a5=min"),
                Some(s) => format!("p={p} d={d} a5-seed={s}"),
            },
            Statement::Cor12g { p, d, r } => format!("p={p} d={d} r={r}"),
            Statement::Result1 { factors, a } => {
                let g: Vec<String> = factors.iter().map(|f| f.to_string()).collect();
                format!("G={} a={a}", g.join(","))
            }
            Statement::Result2 { n, a } => format!("n={n} a={a}"),
            Statement::Result3 { n } => format!("n={n}"),
            Statement::Result4 { p, r } => format!("p={p} r={r}"),
            Statement::Thm3 { p, d, i } | Statement::Cor31 { p, d, i } => {
                format!("p={p} d={d} i={i}")
            }
            Statement::Cor32 { p, d, seed } => match seed {
                None => format!("p={p} d={d} a5=min"),
                Some(s) => format!("p={p} d={d} a5-seed={s}"),
            },
        }
    }

    /// Predicted value under the statement's hypotheses.
    pub fn closed_form(&self) -> Result<Prediction> {
        let mut h = HypothesisChecker::new();
        match *self {
            Statement::Thm2i { n, a } => {
                h.require("n >= 2", n >= 2);
                h.require("1 <= a <= n", 1 <= a && a <= n);
                h.finish(n / nt::gcd(a.max(1), n))
            }
            Statement::Thm2ii { n, a } => {
                h.require("n >= 2", n >= 2);
                h.require("1 <= a < n", 1 <= a && a < n);
                h.require("gcd(a, n) = 1", nt::gcd(a, n) == 1);
                h.finish(1 + floor_log2(n.max(1)))
            }
            Statement::Thm2iii { n } => {
                h.require("n >= 2", n >= 2);
                h.finish(1 + nt::big_omega(n))
            }
            Statement::Thm2iv { n } => {
                h.require("n >= 2", n >= 2);
                h.finish(2)
            }
            Statement::Cor12a { p, d } => {
                h.require("p prime", nt::is_prime(p));
                h.require("d >= 1", d >= 1);
                h.finish(d as u64 + 1)
            }
            Statement::Cor12b { p, d } | Statement::Cor12c { p, d } | Statement::Cor12d { p, d } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("d >= 1", d >= 1);
                h.finish(2 * d as u64 + 1)
            }
            Statement::Cor12e { p, d } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("d >= 1", d >= 1);
                h.require("p is not a Fermat prime", !nt::is_fermat_prime(p));
                h.finish(2 * d as u64 + 1)
            }
            Statement::Cor12f { p, d, .. } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("d >= 1", d >= 1);
                h.finish(2 * d as u64 + 1)
            }
            Statement::Cor12g { p, d, r } => {
                h.require("p prime", nt::is_prime(p));
                h.require("d >= 1", d >= 1);
                h.require("r >= d", r >= d as u64);
                h.require("r <= p - 1", r <= p.saturating_sub(1));
                h.finish((d as u64 * (p - 1) + 1).div_ceil(r))
            }
            Statement::Result1 { ref factors, a } => {
                let group = GroupSpec::new(factors)?;
                h.require("gcd(a, exp G) = 1", nt::gcd(a, group.exponent()) == 1);
                let d = group.davenport_classical()?;
                h.finish(d + group.order() - 1)
            }
            Statement::Result2 { n, a } => {
                h.require("n >= 2", n >= 2);
                h.require("1 <= a < n", 1 <= a && a < n);
                h.require("gcd(a, n) = 1", nt::gcd(a, n) == 1);
                h.finish(n + ceil_log2(n))
            }
            Statement::Result3 { n } => {
                h.require("n >= 2", n >= 2);
                h.finish(n + nt::big_omega(n))
            }
            Statement::Result4 { p, r } => {
                h.require("p prime", nt::is_prime(p));
                h.require("1 <= r < p", 1 <= r && r < p);
                h.finish(p + p / r)
            }
            Statement::Thm3 { p, d, i } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("1 <= i <= 4", (1..=4).contains(&i));
                h.require("p >= 2d + 1", p > 2 * d as u64);
                if i == 4 {
                    h.require("A_4 nonempty (p not a Fermat prime)", !nt::is_fermat_prime(p));
                }
                h.finish(2 * d as u64 + p)
            }
            Statement::Cor31 { p, d, i } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("1 <= i <= 4", (1..=4).contains(&i));
                h.require("p >= 2d + 1", p > 2 * d as u64);
                if i == 4 {
                    h.require("A_4 nonempty (p not a Fermat prime)", !nt::is_fermat_prime(p));
                }
                h.finish(p.pow(d) + 2 * d as u64)
            }
            Statement::Cor32 { p, d, .. } => {
                h.require("p odd prime", nt::is_prime(p) && p % 2 == 1);
                h.require("p = 3 (mod 4)", p % 4 == 3);
                h.require("p >= 2d + 1", p > 2 * d as u64);
                h.finish(2 * d as u64 + p.pow(d))
            }
        }
    }

    /// The (group, weight set, constant kind) the statement talks about, for
    /// verification against the exact solver.
    pub fn instance(&self) -> Result<StatementInstance> {
        let make = |factors: &[u64], fam: WeightFamily, kind: ConstantKind| -> Result<StatementInstance> {
            let group = GroupSpec::new(factors)?;
            let weights = fam.resolve(group.exponent())?;
            Ok(StatementInstance {
                group,
                weights,
                kind,
            })
        };
        match *self {
            Statement::Thm2i { n, a } => make(&[n], WeightFamily::Single(a), ConstantKind::Da),
            Statement::Thm2ii { n, a } => make(&[n], WeightFamily::Pair(a), ConstantKind::Da),
            Statement::Thm2iii { n } => make(&[n], WeightFamily::Units, ConstantKind::Da),
            Statement::Thm2iv { n } => make(&[n], WeightFamily::All, ConstantKind::Da),
            Statement::Cor12a { p, d } => {
                make(&vec![p; d as usize], WeightFamily::All, ConstantKind::Da)
            }
            Statement::Cor12b { p, d } => {
                make(&vec![p; d as usize], WeightFamily::Qr, ConstantKind::Da)
            }
            Statement::Cor12c { p, d } => {
                make(&vec![p; d as usize], WeightFamily::Qnr, ConstantKind::Da)
            }
            Statement::Cor12d { p, d } => {
                make(&vec![p; d as usize], WeightFamily::PrimRoots, ConstantKind::Da)
            }
            Statement::Cor12e { p, d } => {
                make(&vec![p; d as usize], WeightFamily::A4, ConstantKind::Da)
            }
            Statement::Cor12f { p, d, seed } => {
                make(&vec![p; d as usize], WeightFamily::A5 { seed }, ConstantKind::Da)
            }
            Statement::Cor12g { p, d, r } => {
                make(&vec![p; d as usize], WeightFamily::Initial(r), ConstantKind::Da)
            }
            Statement::Result1 { ref factors, a } => {
                make(factors, WeightFamily::Single(a), ConstantKind::Zs)
            }
            Statement::Result2 { n, a } => make(&[n], WeightFamily::Pair(a), ConstantKind::Sa),
            Statement::Result3 { n } => make(&[n], WeightFamily::Units, ConstantKind::Sa),
            Statement::Result4 { p, r } => make(&[p], WeightFamily::Initial(r), ConstantKind::Sa),
            Statement::Thm3 { p, d, i } => {
                make(&vec![p; d as usize], ai_family(i)?, ConstantKind::Sa)
            }
            Statement::Cor31 { p, d, i } => {
                make(&vec![p; d as usize], ai_family(i)?, ConstantKind::Zs)
            }
            Statement::Cor32 { p, d, seed } => {
                make(&vec![p; d as usize], WeightFamily::A5 { seed }, ConstantKind::Zs)
            }
        }
    }
}

/// Evaluate a statement's closed form.
pub fn closed_form(stmt: &Statement) -> Result<Prediction> {
    stmt.closed_form()
}
