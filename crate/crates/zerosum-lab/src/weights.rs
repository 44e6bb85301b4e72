//! Weight sets A inside ]n[ = {1, ..., n}, the named families built from a
//! prime p, and the incongruence hypothesis checker.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::group::parse_u64_list;
use crate::nt;

/// A nonempty set of weights, each in [1, n] for the modulus n it was built
/// against. Values with gcd(a, n) > 1 are legal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WeightSet {
    values: Vec<u64>,
    modulus: u64,
    family_tag: Option<String>,
}

impl WeightSet {
    pub fn new(values: &[u64], modulus: u64) -> Result<Self> {
        let mut vs: Vec<u64> = values.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.is_empty() {
            return Err(Error::EmptyWeightSet("set".into()));
        }
        if vs[0] < 1 || *vs.last().unwrap() > modulus {
            return Err(Error::InvalidParam(format!(
                "weights must lie in [1, {modulus}]"
            )));
        }
        Ok(WeightSet {
            values: vs,
            modulus,
            family_tag: None,
        })
    }

    fn tagged(values: &[u64], modulus: u64, tag: &str) -> Result<Self> {
        let mut w = Self::new(values, modulus)?;
        w.family_tag = Some(tag.to_string());
        Ok(w)
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn family_tag(&self) -> Option<&str> {
        self.family_tag.as_deref()
    }

    /// r = |A|.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn contains(&self, a: u64) -> bool {
        self.values.binary_search(&a).is_ok()
    }

    pub fn is_subset_of(&self, other: &WeightSet) -> bool {
        self.values.iter().all(|&a| other.contains(a))
    }
}

impl fmt::Display for WeightSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|x| x.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A weight family as written in the CLI grammar, before it is resolved
/// against a concrete exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeightFamily {
    /// `single:a` -> {a}
    Single(u64),
    /// `pair:a` -> {a, n-a}
    Pair(u64),
    /// `units` -> {a : gcd(a, n) = 1}
    Units,
    /// `initial:r` -> ]r[
    Initial(u64),
    /// `all` -> ]n-1[
    All,
    /// `qr` -> A_1, nonzero quadratic residues mod p
    Qr,
    /// `qnr` -> A_2, quadratic non-residues mod p
    Qnr,
    /// `primroots` -> A_3, generators of F_p^*
    PrimRoots,
    /// `a4` -> A_2 \ A_3
    A4,
    /// `a5[:seed]` -> one of each pair {x, p-x}
    A5 { seed: Option<u64> },
    /// `set:v1,v2,...`
    Set(Vec<u64>),
}

impl WeightFamily {
    /// Build the concrete weight set over exponent n. The residue-based
    /// families require n to be an odd prime.
    pub fn resolve(&self, n: u64) -> Result<WeightSet> {
        match self {
            WeightFamily::Single(a) => {
                check_range(*a, n)?;
                WeightSet::tagged(&[*a], n, &format!("single:{a}"))
            }
            WeightFamily::Pair(a) => {
                if !(1 <= *a && *a < n) {
                    return Err(Error::InvalidParam(format!(
                        "pair:{a} needs 1 <= a < n = {n}"
                    )));
                }
                WeightSet::tagged(&[*a, n - *a], n, &format!("pair:{a}"))
            }
            WeightFamily::Units => {
                let vs: Vec<u64> = (1..=n).filter(|&a| nt::gcd(a, n) == 1).collect();
                WeightSet::tagged(&vs, n, "units")
            }
            WeightFamily::Initial(r) => {
                if !(1 <= *r && *r <= n) {
                    return Err(Error::InvalidParam(format!(
                        "initial:{r} needs 1 <= r <= n = {n}"
                    )));
                }
                let vs: Vec<u64> = (1..=*r).collect();
                WeightSet::tagged(&vs, n, &format!("initial:{r}"))
            }
            WeightFamily::All => {
                if n < 2 {
                    return Err(Error::EmptyWeightSet("all".into()));
                }
                let vs: Vec<u64> = (1..n).collect();
                WeightSet::tagged(&vs, n, "all")
            }
            WeightFamily::Qr => WeightSet::tagged(&qr_values(n)?, n, "qr"),
            WeightFamily::Qnr => WeightSet::tagged(&qnr_values(n)?, n, "qnr"),
            WeightFamily::PrimRoots => {
                let vs: Vec<u64> = residue_range(n)?
                    .filter(|&a| nt::is_primitive_root(a, n).unwrap_or(false))
                    .collect();
                WeightSet::tagged(&vs, n, "primroots")
            }
            WeightFamily::A4 => {
                let vs: Vec<u64> = qnr_values(n)?
                    .into_iter()
                    .filter(|&a| !nt::is_primitive_root(a, n).unwrap_or(false))
                    .collect();
                if vs.is_empty() {
                    // happens exactly when p is a Fermat prime
                    return Err(Error::EmptyWeightSet("a4".into()));
                }
                WeightSet::tagged(&vs, n, "a4")
            }
            WeightFamily::A5 { seed } => {
                let half = (require_odd_prime(n)? - 1) / 2;
                let vs: Vec<u64> = match seed {
                    None => (1..=half).collect(),
                    Some(s) => {
                        let mut rng = ChaCha8Rng::seed_from_u64(*s);
                        (1..=half)
                            .map(|x| if rng.gen::<bool>() { x } else { n - x })
                            .collect()
                    }
                };
                let tag = match seed {
                    None => "a5".to_string(),
                    Some(s) => format!("a5:{s}"),
                };
                WeightSet::tagged(&vs, n, &tag)
            }
            WeightFamily::Set(vs) => {
                for &v in vs {
                    check_range(v, n)?;
                }
                let tag = format!(
                    "set:{}",
                    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
                );
                WeightSet::tagged(vs, n, &tag)
            }
        }
    }
}

fn check_range(a: u64, n: u64) -> Result<()> {
    if 1 <= a && a <= n {
        Ok(())
    } else {
        Err(Error::InvalidParam(format!(
            "weight {a} outside [1, {n}]"
        )))
    }
}

fn require_odd_prime(p: u64) -> Result<u64> {
    if nt::is_prime(p) && p % 2 == 1 {
        Ok(p)
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn residue_range(p: u64) -> Result<std::ops::Range<u64>> {
    let p = require_odd_prime(p)?;
    Ok(1..p)
}

fn qr_values(p: u64) -> Result<Vec<u64>> {
    Ok(residue_range(p)?
        .filter(|&a| nt::legendre(a, p).unwrap() == 1)
        .collect())
}

fn qnr_values(p: u64) -> Result<Vec<u64>> {
    Ok(residue_range(p)?
        .filter(|&a| nt::legendre(a, p).unwrap() == -1)
        .collect())
}

impl FromStr for WeightFamily {
    type Err = Error;

    /// Grammar: `single:<a>`, `pair:<a>`, `units`, `initial:<r>`, `all`,
    /// `qr`, `qnr`, `primroots`, `a4`, `a5[:<seed>]`, `set:<v1>,<v2>,...`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (head, arg) = match s.split_once(':') {
            Some((h, a)) => (h, Some(a)),
            None => (s, None),
        };
        let parse_one = |a: Option<&str>, what: &str| -> Result<u64> {
            let a = a.ok_or_else(|| Error::Parse(format!("{what} needs an argument")))?;
            a.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad {what} argument {a:?}: {e}")))
        };
        let no_arg = |a: Option<&str>, what: &str| -> Result<()> {
            if a.is_some() {
                Err(Error::Parse(format!("{what} takes no argument")))
            } else {
                Ok(())
            }
        };
        match head {
            "single" => Ok(WeightFamily::Single(parse_one(arg, "single")?)),
            "pair" => Ok(WeightFamily::Pair(parse_one(arg, "pair")?)),
            "units" => {
                no_arg(arg, "units")?;
                Ok(WeightFamily::Units)
            }
            "initial" => Ok(WeightFamily::Initial(parse_one(arg, "initial")?)),
            "all" => {
                no_arg(arg, "all")?;
                Ok(WeightFamily::All)
            }
            "qr" => {
                no_arg(arg, "qr")?;
                Ok(WeightFamily::Qr)
            }
            "qnr" => {
                no_arg(arg, "qnr")?;
                Ok(WeightFamily::Qnr)
            }
            "primroots" => {
                no_arg(arg, "primroots")?;
                Ok(WeightFamily::PrimRoots)
            }
            "a4" => {
                no_arg(arg, "a4")?;
                Ok(WeightFamily::A4)
            }
            "a5" => Ok(WeightFamily::A5 {
                seed: arg.map(|a| parse_one(Some(a), "a5")).transpose()?,
            }),
            "set" => {
                let arg = arg.ok_or_else(|| Error::Parse("set needs values".into()))?;
                let vs = parse_u64_list(arg)?;
                if vs.is_empty() {
                    return Err(Error::Parse("set needs at least one value".into()));
                }
                Ok(WeightFamily::Set(vs))
            }
            other => Err(Error::Parse(format!("unknown weight family {other:?}"))),
        }
    }
}

/// Outcome of the incongruence hypothesis: all values nonzero mod p and
/// pairwise incongruent mod p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypothesisReport {
    pub holds: bool,
    pub zero_values: Vec<u64>,
    pub congruent_pairs: Vec<(u64, u64)>,
}

impl fmt::Display for HypothesisReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            return write!(f, "hypothesis holds");
        }
        write!(f, "hypothesis fails:")?;
        for v in &self.zero_values {
            write!(f, " {v} = 0 (mod p);")?;
        }
        for (a, b) in &self.congruent_pairs {
            write!(f, " {a} = {b} (mod p);")?;
        }
        Ok(())
    }
}

/// Check that the elements of A are incongruent mod p and nonzero mod p.
/// A passing A automatically has |A| <= p - 1.
pub fn check_theorem1_hypothesis(a: &WeightSet, p: u64) -> HypothesisReport {
    let zero_values: Vec<u64> = a.values().iter().copied().filter(|v| v % p == 0).collect();
    let mut congruent_pairs = Vec::new();
    let vs = a.values();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            if vs[i] % p == vs[j] % p {
                congruent_pairs.push((vs[i], vs[j]));
            }
        }
    }
    HypothesisReport {
        holds: zero_values.is_empty() && congruent_pairs.is_empty(),
        zero_values,
        congruent_pairs,
    }
}
