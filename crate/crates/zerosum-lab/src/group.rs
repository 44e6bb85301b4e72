//! Finite abelian groups given as direct sums of cyclic factors, with
//! mixed-radix element indexing and the classical Davenport closed forms.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::nt;

const MAX_ORDER: u128 = 1 << 31;

/// A finite abelian group `Z_{n_1} + ... + Z_{n_l}`. Factors are kept in the
/// order given by the caller; the primary decomposition is the
/// permutation-invariant normal form used for isomorphism-sensitive work.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    factors: Vec<u64>,
    exponent: u64,
    order: u64,
    primary: Vec<u64>,
}

/// An element as a vector of residues, `residues[i]` in `[0, n_i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

pub fn make_group(factors: &[u64]) -> Result<GroupSpec> {
    GroupSpec::new(factors)
}

impl GroupSpec {
    pub fn new(factors: &[u64]) -> Result<Self> {
        if factors.is_empty() || factors.iter().any(|&f| f < 2) {
            return Err(Error::InvalidFactor);
        }
        let mut order: u128 = 1;
        for &f in factors {
            order *= f as u128;
            if order > MAX_ORDER {
                return Err(Error::GroupTooLarge(order));
            }
        }
        let exponent = factors.iter().fold(1, |acc, &f| nt::lcm(acc, f));
        let mut primary: Vec<u64> = Vec::new();
        for &f in factors {
            let mut fs = nt::factorize(f);
            fs.dedup();
            for p in fs {
                let mut q = 1;
                let mut m = f;
                while m % p == 0 {
                    q *= p;
                    m /= p;
                }
                primary.push(q);
            }
        }
        primary.sort_unstable();
        Ok(GroupSpec {
            factors: factors.to_vec(),
            exponent,
            order: order as u64,
            primary,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Prime-power factors of the primary decomposition, sorted ascending.
    pub fn primary_decomposition(&self) -> &[u64] {
        &self.primary
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }

    pub fn is_cyclic(&self) -> bool {
        self.order == self.exponent
    }

    /// Invariant factors `d_1 | d_2 | ... | d_k`, ascending.
    pub fn invariant_factors(&self) -> Vec<u64> {
        let mut by_prime: Vec<(u64, Vec<u64>)> = Vec::new();
        for &q in &self.primary {
            let p = nt::factorize(q)[0];
            match by_prime.iter_mut().find(|(pp, _)| *pp == p) {
                Some((_, qs)) => qs.push(q),
                None => by_prime.push((p, vec![q])),
            }
        }
        let rank = by_prime.iter().map(|(_, qs)| qs.len()).max().unwrap_or(0);
        let mut inv = vec![1u64; rank];
        for (_, mut qs) in by_prime {
            qs.sort_unstable_by(|a, b| b.cmp(a));
            for (i, q) in qs.into_iter().enumerate() {
                inv[rank - 1 - i] *= q;
            }
        }
        inv
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.factors.len()],
        }
    }

    pub fn element(&self, residues: &[u64]) -> Result<GroupElement> {
        if residues.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                want: self.factors.len(),
                got: residues.len(),
            });
        }
        Ok(GroupElement {
            residues: residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &f)| r % f)
                .collect(),
        })
    }

    fn check(&self, g: &GroupElement) -> Result<()> {
        if g.residues.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                want: self.factors.len(),
                got: g.residues.len(),
            });
        }
        Ok(())
    }

    pub fn add(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        self.check(h)?;
        Ok(GroupElement {
            residues: g
                .residues
                .iter()
                .zip(&h.residues)
                .zip(&self.factors)
                .map(|((&a, &b), &f)| (a + b) % f)
                .collect(),
        })
    }

    pub fn neg(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement {
            residues: g
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&a, &f)| (f - a) % f)
                .collect(),
        })
    }

    /// The Z-module action; `a` may be any integer, reduced per coordinate.
    pub fn scalar_mul(&self, a: i64, g: &GroupElement) -> Result<GroupElement> {
        self.check(g)?;
        Ok(GroupElement {
            residues: g
                .residues
                .iter()
                .zip(&self.factors)
                .map(|(&r, &f)| {
                    let a = a.rem_euclid(f as i64) as u64;
                    a * r % f
                })
                .collect(),
        })
    }

    /// Mixed-radix index; the first factor is the most significant digit, so
    /// index order is lexicographic order on residue vectors.
    pub fn index(&self, g: &GroupElement) -> Result<u64> {
        self.check(g)?;
        let mut idx = 0u64;
        for (&r, &f) in g.residues.iter().zip(&self.factors) {
            idx = idx * f + r % f;
        }
        Ok(idx)
    }

    pub fn element_of_index(&self, i: u64) -> Result<GroupElement> {
        if i >= self.order {
            return Err(Error::IndexOutOfRange {
                index: i,
                order: self.order,
            });
        }
        let mut residues = vec![0u64; self.factors.len()];
        let mut rem = i;
        for (slot, &f) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = rem % f;
            rem /= f;
        }
        Ok(GroupElement { residues })
    }

    pub fn enumerate(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_of_index(i).expect("index in range"))
    }

    /// Some(p) iff the group is a p-group.
    pub fn is_p_group(&self) -> Option<u64> {
        let p = nt::factorize(self.primary[0])[0];
        if self.primary.iter().all(|&q| q % p == 0 && nt::factorize(q).iter().all(|&r| r == p)) {
            Some(p)
        } else {
            None
        }
    }

    /// Classical Davenport constant by the closed forms for cyclic groups,
    /// rank <= 2 groups and p-groups; `NoClosedForm` otherwise.
    pub fn davenport_classical(&self) -> Result<u64> {
        let inv = self.invariant_factors();
        if inv.len() == 1 {
            return Ok(inv[0]);
        }
        if inv.len() == 2 {
            return Ok(inv[0] + inv[1] - 1);
        }
        if self.is_p_group().is_some() {
            return Ok(1 + self.primary.iter().map(|&q| q - 1).sum::<u64>());
        }
        Err(Error::NoClosedForm)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        let residues = parse_u64_list(s)?;
        if residues.len() != self.factors.len() {
            return Err(Error::DimensionMismatch {
                want: self.factors.len(),
                got: residues.len(),
            });
        }
        self.element(&residues)
    }
}

/// Parse a comma-separated list of unsigned integers.
pub fn parse_u64_list(s: &str) -> Result<Vec<u64>> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|e| Error::Parse(format!("bad integer {part:?}: {e}")))
        })
        .collect()
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.factors.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GroupSpec::new(&parse_u64_list(s)?)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}
