//! Generators for the lower-bound sequences behind each closed form, each
//! claim re-validated by the engine rather than trusted.

use crate::engine;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::nt;
use crate::sequence::Sequence;
use crate::weights::{WeightFamily, WeightSet};

/// What a generated sequence claims to be bad for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimedBadness {
    /// no nonempty weighted zero-sum subsequence
    ZeroSumFree,
    /// no weighted zero-sum subsequence of exactly m terms
    NoExactLength { m: u64 },
}

/// A lower-bound certificate candidate: sequence, weight set, and the kind
/// of badness claimed, tagged with the statement it certifies.
#[derive(Debug, Clone)]
pub struct ExtremalClaim {
    pub sequence: Sequence,
    pub weights: WeightSet,
    pub badness: ClaimedBadness,
    pub source: String,
}

impl ExtremalClaim {
    /// Re-check the claim with the engine.
    pub fn validate(&self) -> Result<bool> {
        let group = self.sequence.group();
        match self.badness {
            ClaimedBadness::ZeroSumFree => {
                engine::is_zero_sum_free(group, &self.weights, &self.sequence)
            }
            ClaimedBadness::NoExactLength { m } => {
                if m as usize > self.sequence.len() {
                    return Ok(true);
                }
                Ok(!engine::has_fixed_length_zero_sum(
                    group,
                    &self.weights,
                    &self.sequence,
                    m as usize,
                )?)
            }
        }
    }
}

fn require_prime(p: u64) -> Result<()> {
    if nt::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn require_odd_prime(p: u64) -> Result<()> {
    if nt::is_prime(p) && p % 2 == 1 {
        Ok(())
    } else {
        Err(Error::NotOddPrime(p))
    }
}

fn elementary_group(p: u64, d: u32) -> Result<GroupSpec> {
    if d < 1 {
        return Err(Error::InvalidParam("d must be at least 1".into()));
    }
    GroupSpec::new(&vec![p; d as usize])
}

fn basis_vector(group: &GroupSpec, j: usize, value: u64) -> Result<GroupElement> {
    let mut residues = vec![0u64; group.factors().len()];
    residues[j] = value;
    group.element(&residues)
}

/// (e_1, ..., e_d): zero-sum free for A = ]p-1[.
pub fn basis_sequence(p: u64, d: u32) -> Result<ExtremalClaim> {
    require_prime(p)?;
    let group = elementary_group(p, d)?;
    let elements = (0..d as usize)
        .map(|j| basis_vector(&group, j, 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtremalClaim {
        weights: WeightFamily::All.resolve(p)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "cor12a".into(),
    })
}

/// (e_1, ..., e_d, c e_1, ..., c e_d) with c the residue-class selector:
/// one claim per family A_1..A_4, A_4 skipped when empty.
pub fn qr_lower_sequence(p: u64, d: u32) -> Result<Vec<ExtremalClaim>> {
    require_odd_prime(p)?;
    let group = elementary_group(p, d)?;
    let c = nt::choose_c(p)?;
    let mut elements = Vec::with_capacity(2 * d as usize);
    for j in 0..d as usize {
        elements.push(basis_vector(&group, j, 1)?);
    }
    for j in 0..d as usize {
        elements.push(basis_vector(&group, j, c)?);
    }
    let sequence = Sequence::new(group, elements)?;
    let families = [
        ("cor12b", WeightFamily::Qr),
        ("cor12c", WeightFamily::Qnr),
        ("cor12d", WeightFamily::PrimRoots),
        ("cor12e", WeightFamily::A4),
    ];
    let mut claims = Vec::new();
    for (source, family) in families {
        match family.resolve(p) {
            Ok(weights) => claims.push(ExtremalClaim {
                sequence: sequence.clone(),
                weights,
                badness: ClaimedBadness::ZeroSumFree,
                source: source.into(),
            }),
            Err(Error::EmptyWeightSet(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(claims)
}

/// (e_1, e_1, ..., e_d, e_d): zero-sum free for any A_5 half-set.
pub fn pair_sequence(p: u64, d: u32, seed: Option<u64>) -> Result<ExtremalClaim> {
    require_odd_prime(p)?;
    let group = elementary_group(p, d)?;
    let mut elements = Vec::with_capacity(2 * d as usize);
    for j in 0..d as usize {
        let e = basis_vector(&group, j, 1)?;
        elements.push(e.clone());
        elements.push(e);
    }
    Ok(ExtremalClaim {
        weights: WeightFamily::A5 { seed }.resolve(p)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "cor12f".into(),
    })
}

/// Each e_j repeated ceil(p/r) - 1 times: zero-sum free for A = ]r[.
pub fn repeated_basis_sequence(p: u64, d: u32, r: u64) -> Result<ExtremalClaim> {
    require_prime(p)?;
    if r < 1 {
        return Err(Error::InvalidParam("r must be at least 1".into()));
    }
    let group = elementary_group(p, d)?;
    let m = (p - 1) / r; // = ceil(p/r) - 1
    let mut elements = Vec::with_capacity(d as usize * m as usize);
    for j in 0..d as usize {
        let e = basis_vector(&group, j, 1)?;
        elements.extend(std::iter::repeat_n(e, m as usize));
    }
    Ok(ExtremalClaim {
        weights: WeightFamily::Initial(r.min(p)).resolve(p)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "cor12g".into(),
    })
}

/// The value a repeated n/gcd(a,n) - 1 times, claimed zero-sum free for
/// A = {a}. The claim is quoted as stated; it fails to validate exactly
/// when gcd(a^2, n) > gcd(a, n), where the all-ones sequence of the same
/// length is the certificate instead.
pub fn single_weight_sequence(n: u64, a: u64) -> Result<ExtremalClaim> {
    if n < 2 || a < 1 || a > n {
        return Err(Error::InvalidParam("need n >= 2 and 1 <= a <= n".into()));
    }
    let group = GroupSpec::cyclic(n)?;
    let len = (n / nt::gcd(a, n) - 1) as usize;
    let elements = vec![group.element(&[a % n])?; len];
    Ok(ExtremalClaim {
        weights: WeightFamily::Single(a).resolve(n)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "thm2i".into(),
    })
}

/// (1, 2, 4, ..., 2^(s-1)) with s = floor(log2 n): zero-sum free for
/// A = {a, n-a} with gcd(a, n) = 1.
pub fn powers_of_two_sequence(n: u64, a: u64) -> Result<ExtremalClaim> {
    if n < 2 {
        return Err(Error::InvalidParam("need n >= 2".into()));
    }
    if !(1 <= a && a < n) || nt::gcd(a, n) != 1 {
        return Err(Error::InvalidParam(
            "need 1 <= a < n with gcd(a, n) = 1".into(),
        ));
    }
    let group = GroupSpec::cyclic(n)?;
    let s = n.ilog2() as usize;
    let elements = (0..s)
        .map(|i| group.element(&[(1u64 << i) % n]))
        .collect::<Result<Vec<_>>>()?;
    Ok(ExtremalClaim {
        weights: WeightFamily::Pair(a).resolve(n)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "thm2ii".into(),
    })
}

/// (1, p_1, p_1 p_2, ...): the Omega(n) prefix products of the ascending
/// prime factorization, zero-sum free for the units.
pub fn prime_products_sequence(n: u64) -> Result<ExtremalClaim> {
    if n < 2 {
        return Err(Error::InvalidParam("need n >= 2".into()));
    }
    let group = GroupSpec::cyclic(n)?;
    let primes = nt::factorize(n);
    let mut elements = Vec::with_capacity(primes.len());
    let mut acc = 1u64;
    for p in primes {
        elements.push(group.element(&[acc % n])?);
        acc *= p;
    }
    Ok(ExtremalClaim {
        weights: WeightFamily::Units.resolve(n)?,
        sequence: Sequence::new(group, elements)?,
        badness: ClaimedBadness::ZeroSumFree,
        source: "thm2iii".into(),
    })
}

/// Append `count` zeros; turns a d_A extremal into the ZS lower-bound
/// sequence of length d_A(G) + count - ... as used with count = |G| - 1.
pub fn pad_with_zeros(s: &Sequence, count: usize) -> Result<Sequence> {
    s.pad_with_zeros(count)
}

/// The padded ZS lower-bound claim built from a zero-sum-free sequence.
pub fn zs_padding_claim(claim: &ExtremalClaim) -> Result<ExtremalClaim> {
    if claim.badness != ClaimedBadness::ZeroSumFree {
        return Err(Error::InvalidParam(
            "padding starts from a zero-sum-free claim".into(),
        ));
    }
    let group = claim.sequence.group().clone();
    let order = group.order();
    Ok(ExtremalClaim {
        sequence: claim.sequence.pad_with_zeros(order as usize - 1)?,
        weights: claim.weights.clone(),
        badness: ClaimedBadness::NoExactLength { m: order },
        source: format!("{}+padding", claim.source),
    })
}
