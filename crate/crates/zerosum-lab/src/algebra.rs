//! Arithmetic in `F_p[x]` and in the group algebra `F_p[G]`, the constructive
//! vanishing polynomial on a prescribed support, the vanishing-product
//! check for p-groups, and the sigma product tying both to the engine.
//!
//! The group is written additively throughout: the algebra's multiplicative
//! identity is the basis vector at zero(G), and basis vectors multiply by
//! convolution through group addition.

use std::collections::BTreeMap;
use std::fmt;

use crate::engine;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::nt;
use crate::sequence::{Sequence, Witness};
use crate::weights::{check_theorem1_hypothesis, WeightSet};

/// Dense-order guard for group algebra elements.
const MAX_ALGEBRA_ORDER: u64 = 1 << 20;

/// A sparse polynomial over F_p; no zero coefficients are stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPolynomial {
    p: u64,
    coeffs: BTreeMap<u64, u64>,
}

impl FpPolynomial {
    pub fn zero(p: u64) -> Result<Self> {
        if !nt::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FpPolynomial {
            p,
            coeffs: BTreeMap::new(),
        })
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u64, u64)>>(p: u64, coeffs: I) -> Result<Self> {
        let mut poly = Self::zero(p)?;
        for (e, c) in coeffs {
            poly.add_term(e, c);
        }
        Ok(poly)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn add_term(&mut self, exp: u64, coeff: u64) {
        let c = (self.coeffs.get(&exp).copied().unwrap_or(0) + coeff % self.p) % self.p;
        if c == 0 {
            self.coeffs.remove(&exp);
        } else {
            self.coeffs.insert(exp, c);
        }
    }

    pub fn coeff(&self, exp: u64) -> u64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<u64> {
        self.coeffs.keys().next_back().copied()
    }

    /// Exponents with nonzero coefficient, ascending.
    pub fn support(&self) -> Vec<u64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn eval(&self, x0: u64) -> u64 {
        self.coeffs
            .iter()
            .fold(0, |acc, (&e, &c)| (acc + c * nt::mod_pow(x0, e, self.p)) % self.p)
    }

    /// j-th Hasse derivative: sum of C(e, j) c_e x^(e-j).
    pub fn hasse_derivative(&self, j: u64) -> FpPolynomial {
        let mut out = FpPolynomial {
            p: self.p,
            coeffs: BTreeMap::new(),
        };
        for (&e, &c) in &self.coeffs {
            if e >= j {
                out.add_term(e - j, c * lucas_binom(e, j, self.p) % self.p);
            }
        }
        out
    }

    fn to_dense(&self) -> Vec<u64> {
        let deg = match self.degree() {
            Some(d) => d as usize,
            None => return vec![],
        };
        let mut v = vec![0u64; deg + 1];
        for (&e, &c) in &self.coeffs {
            v[e as usize] = c;
        }
        v
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, &c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{e}")?,
            }
        }
        Ok(())
    }
}

/// C(n, k) mod p by Lucas' theorem. For k < p only n mod p matters.
pub fn lucas_binom(mut n: u64, mut k: u64, p: u64) -> u64 {
    let small = |n: u64, k: u64| -> u64 {
        if k > n {
            return 0;
        }
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..k {
            num = num * ((n - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        num * nt::mod_pow(den, p - 2, p) % p
    };
    let mut acc = 1u64;
    while n > 0 || k > 0 {
        acc = acc * small(n % p, k % p) % p;
        if acc == 0 {
            return 0;
        }
        n /= p;
        k /= p;
    }
    acc
}

/// A polynomial supported on B = {0, b_1, ..., b_r} with f(0) = 1 and
/// (1-x)^r dividing f, built by solving the r x r Hasse-derivative system
/// over F_p. The b_i must be nonzero and pairwise incongruent mod p.
pub fn troi_polynomial(b: &[u64], p: u64) -> Result<FpPolynomial> {
    if !nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if !b.contains(&0) {
        return Err(Error::InvalidParam("B must contain 0".into()));
    }
    let mut bs: Vec<u64> = b.iter().copied().filter(|&x| x != 0).collect();
    bs.sort_unstable();
    bs.dedup();
    let r = bs.len();
    if r == 0 {
        return Err(Error::InvalidParam("B needs at least one nonzero exponent".into()));
    }
    if r as u64 > p - 1 {
        return Err(Error::TooManyExponents { r, max: p - 1 });
    }
    for &x in &bs {
        if x % p == 0 {
            return Err(Error::ZeroExponentModP(x));
        }
    }
    for i in 0..r {
        for j in i + 1..r {
            if bs[i] % p == bs[j] % p {
                return Err(Error::CongruentExponents(bs[i], bs[j]));
            }
        }
    }

    // rows j = 0..r-1: sum_i C(b_i, j) c_i = -C(0, j) = -(j == 0)
    let mut mat: Vec<Vec<u64>> = (0..r)
        .map(|j| {
            let mut row: Vec<u64> = bs.iter().map(|&bi| lucas_binom(bi, j as u64, p)).collect();
            row.push(if j == 0 { p - 1 } else { 0 });
            row
        })
        .collect();

    // Gaussian elimination over F_p
    for col in 0..r {
        let pivot = (col..r)
            .find(|&row| mat[row][col] != 0)
            .expect("matrix is invertible for incongruent exponents");
        mat.swap(col, pivot);
        let inv = nt::mod_pow(mat[col][col], p - 2, p);
        for x in mat[col].iter_mut() {
            *x = *x * inv % p;
        }
        let pivot_row = mat[col].clone();
        for (row, cells) in mat.iter_mut().enumerate() {
            if row != col && cells[col] != 0 {
                let factor = cells[col];
                for (cell, &pv) in cells.iter_mut().zip(&pivot_row).skip(col) {
                    let sub = factor * pv % p;
                    *cell = (*cell + p - sub) % p;
                }
            }
        }
    }

    let mut coeffs = vec![(0u64, 1u64)];
    for (i, &bi) in bs.iter().enumerate() {
        coeffs.push((bi, mat[i][r]));
    }
    FpPolynomial::from_coeffs(p, coeffs)
}

/// Whether (1-x)^r divides f; on success also returns the cofactor F with
/// f = (1-x)^r F.
pub fn poly_divides_check(f: &FpPolynomial, r: u32) -> (bool, Option<FpPolynomial>) {
    let p = f.p;
    let mut dense = f.to_dense();
    for _ in 0..r {
        if dense.is_empty() {
            // the zero polynomial is divisible by anything
            continue;
        }
        // synthetic division by (x - 1); remainder is f(1)
        let mut acc = 0u64;
        for c in dense.iter().rev() {
            acc = (acc + c) % p;
        }
        if acc != 0 {
            return (false, None);
        }
        // f = (x - 1) q + 0, then (1 - x) | f with cofactor -q
        let mut q = vec![0u64; dense.len().saturating_sub(1)];
        let mut carry = 0u64;
        for i in (0..dense.len()).rev() {
            if i == 0 {
                break;
            }
            carry = (carry + dense[i]) % p;
            q[i - 1] = carry;
        }
        // negate to divide by (1 - x) instead of (x - 1)
        for c in q.iter_mut() {
            *c = (p - *c) % p;
        }
        dense = q;
    }
    let cofactor = FpPolynomial::from_coeffs(
        p,
        dense.iter().enumerate().map(|(e, &c)| (e as u64, c)),
    )
    .expect("modulus already validated");
    (true, Some(cofactor))
}

pub fn poly_eval(f: &FpPolynomial, x0: u64) -> u64 {
    f.eval(x0)
}

/// An element of `F_p[G]`, dense over the element indices of G.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupAlgebraElement {
    p: u64,
    group: GroupSpec,
    coeffs: Vec<u64>,
}

impl GroupAlgebraElement {
    fn check_pair(x: &Self, y: &Self) -> Result<()> {
        if x.p != y.p {
            return Err(Error::ModulusMismatch(x.p, y.p));
        }
        if x.group != y.group {
            return Err(Error::GroupMismatch(format!(
                "group algebra elements over {} and {}",
                x.group, y.group
            )));
        }
        Ok(())
    }

    pub fn coeff(&self, g: &GroupElement) -> Result<u64> {
        Ok(self.coeffs[self.group.index(g)? as usize])
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

fn new_element(group: &GroupSpec, p: u64) -> Result<GroupAlgebraElement> {
    if !nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if group.order() > MAX_ALGEBRA_ORDER {
        return Err(Error::InvalidParam(format!(
            "group order {} exceeds the dense group-algebra guard",
            group.order()
        )));
    }
    Ok(GroupAlgebraElement {
        p,
        group: group.clone(),
        coeffs: vec![0; group.order() as usize],
    })
}

pub fn ga_zero(group: &GroupSpec, p: u64) -> Result<GroupAlgebraElement> {
    new_element(group, p)
}

/// The multiplicative identity: the basis vector at zero(G).
pub fn ga_one(group: &GroupSpec, p: u64) -> Result<GroupAlgebraElement> {
    let mut e = new_element(group, p)?;
    e.coeffs[0] = 1 % p;
    Ok(e)
}

/// The basis embedding of a group element.
pub fn ga_embed(group: &GroupSpec, g: &GroupElement, p: u64) -> Result<GroupAlgebraElement> {
    let mut e = new_element(group, p)?;
    e.coeffs[group.index(g)? as usize] = 1 % p;
    Ok(e)
}

pub fn ga_add(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    GroupAlgebraElement::check_pair(x, y)?;
    let mut out = x.clone();
    for (o, &c) in out.coeffs.iter_mut().zip(&y.coeffs) {
        *o = (*o + c) % x.p;
    }
    Ok(out)
}

pub fn ga_scale(c: u64, x: &GroupAlgebraElement) -> GroupAlgebraElement {
    let mut out = x.clone();
    for o in out.coeffs.iter_mut() {
        *o = *o * (c % x.p) % x.p;
    }
    out
}

/// Convolution: coefficient of h in x*y is the sum over g of `x[g] y[h-g]`.
pub fn ga_mul(x: &GroupAlgebraElement, y: &GroupAlgebraElement) -> Result<GroupAlgebraElement> {
    GroupAlgebraElement::check_pair(x, y)?;
    let group = &x.group;
    let mut out = new_element(group, x.p)?;
    for (i, &ci) in x.coeffs.iter().enumerate() {
        if ci == 0 {
            continue;
        }
        let gi = group.element_of_index(i as u64)?;
        for (j, &cj) in y.coeffs.iter().enumerate() {
            if cj == 0 {
                continue;
            }
            let gj = group.element_of_index(j as u64)?;
            let k = group.index(&group.add(&gi, &gj)?)? as usize;
            out.coeffs[k] = (out.coeffs[k] + ci * cj) % x.p;
        }
    }
    Ok(out)
}

/// The product of (1 - g_i) over the sequence, in `F_p[G]`. For a p-group G
/// this vanishes as soon as the sequence reaches length D(G).
pub fn olson_product(group: &GroupSpec, s: &Sequence, p: u64) -> Result<GroupAlgebraElement> {
    if s.group() != group {
        return Err(Error::GroupMismatch(
            "sequence group differs from the algebra's group".into(),
        ));
    }
    let mut acc = ga_one(group, p)?;
    for g in s.elements() {
        // acc <- acc * (1 - g): subtract the shift of acc by g
        let mut next = acc.clone();
        for (i, &c) in acc.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let gi = group.element_of_index(i as u64)?;
            let k = group.index(&group.add(&gi, g)?)? as usize;
            next.coeffs[k] = (next.coeffs[k] + p - c) % p;
        }
        acc = next;
    }
    Ok(acc)
}

/// Substitute the basis embedding of g into a polynomial: f(g) in `F_p[G]`,
/// using `x^e -> embed(e * g)`.
pub fn ga_eval_poly(
    group: &GroupSpec,
    f: &FpPolynomial,
    g: &GroupElement,
    p: u64,
) -> Result<GroupAlgebraElement> {
    let mut out = new_element(group, p)?;
    for (&e, &c) in &f.coeffs {
        let target = group.scalar_mul((e % group.exponent()) as i64, g)?;
        let k = group.index(&target)? as usize;
        out.coeffs[k] = (out.coeffs[k] + c) % p;
    }
    Ok(out)
}

/// What the sigma-product argument yields on one instance.
#[derive(Debug, Clone)]
pub struct SigmaReport {
    /// k * |A| >= D(G), i.e. the vanishing lemma applies
    pub covered: bool,
    pub sigma_is_zero: bool,
    /// the witness whose existence the constant-term argument implies
    pub witness: Option<Witness>,
    pub polynomial: FpPolynomial,
}

/// Build f on A u {0}, evaluate sigma = prod `f(g_j)` in `F_p[G]`, and confirm
/// the vanishing plus the engine-found witness whenever k|A| >= D(G).
pub fn theorem1_sigma_check(
    group: &GroupSpec,
    weights: &WeightSet,
    s: &Sequence,
    p: u64,
) -> Result<SigmaReport> {
    if group.is_p_group() != Some(p) {
        return Err(Error::NotPGroup);
    }
    let report = check_theorem1_hypothesis(weights, p);
    if !report.holds {
        return Err(Error::HypothesisViolated(report.to_string()));
    }
    let mut b: Vec<u64> = weights.values().to_vec();
    b.push(0);
    let f = troi_polynomial(&b, p)?;
    let mut sigma = ga_one(group, p)?;
    for g in s.elements() {
        sigma = ga_mul(&sigma, &ga_eval_poly(group, &f, g, p)?)?;
    }
    let d = group.davenport_classical()?;
    let covered = s.len() as u64 * weights.len() as u64 >= d;
    let witness = engine::find_weighted_zero_subsequence(group, weights, s)?;
    Ok(SigmaReport {
        covered,
        sigma_is_zero: sigma.is_zero(),
        witness,
        polynomial: f,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::weights::WeightSet;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn basis_multiplicativity() {
        let g = make_group(&[3, 9]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let a = g.element_of_index(rng.gen_range(0..g.order())).unwrap();
            let b = g.element_of_index(rng.gen_range(0..g.order())).unwrap();
            let ea = ga_embed(&g, &a, 3).unwrap();
            let eb = ga_embed(&g, &b, 3).unwrap();
            let prod = ga_mul(&ea, &eb).unwrap();
            let direct = ga_embed(&g, &g.add(&a, &b).unwrap(), 3).unwrap();
            assert_eq!(prod, direct);
        }
    }

    #[test]
    fn one_is_identity() {
        let g = make_group(&[2, 4]).unwrap();
        let one = ga_one(&g, 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..20 {
            let mut x = ga_zero(&g, 2).unwrap();
            for c in x.coeffs.iter_mut() {
                *c = rng.gen_range(0..2);
            }
            assert_eq!(ga_mul(&one, &x).unwrap(), x);
            assert_eq!(ga_mul(&x, &one).unwrap(), x);
        }
    }

    #[test]
    fn char_two_square_vanishes() {
        // (1 - g)^2 = 1 - 2g + g^2 = 2 * identity = 0 over F_2[Z_2]
        let g = make_group(&[2]).unwrap();
        let s = Sequence::parse(&g, "1;1").unwrap();
        assert!(olson_product(&g, &s, 2).unwrap().is_zero());
    }

    #[test]
    fn olson_product_examples() {
        let z3 = make_group(&[3]).unwrap();
        let s = Sequence::parse(&z3, "1;1;1").unwrap();
        assert!(olson_product(&z3, &s, 3).unwrap().is_zero());
        let s = Sequence::parse(&z3, "1;1").unwrap();
        let prod = olson_product(&z3, &s, 3).unwrap();
        // 1 - 2g + g^2 has coefficient pattern 1, 1, 1 mod 3
        assert_eq!(prod.coeffs(), &[1, 1, 1]);

        let g22 = make_group(&[2, 2]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let indices: Vec<u64> = (0..3).map(|_| rng.gen_range(0..4)).collect();
            let s = Sequence::from_indices(g22.clone(), &indices).unwrap();
            assert!(olson_product(&g22, &s, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn vanishing_at_davenport_length_for_all_small_p_groups() {
        // every abelian p-group of order <= 27
        let groups: [(&[u64], u64); 25] = [
            (&[2], 2), (&[4], 2), (&[2, 2], 2), (&[8], 2), (&[4, 2], 2), (&[2, 2, 2], 2),
            (&[16], 2), (&[8, 2], 2), (&[4, 4], 2), (&[4, 2, 2], 2), (&[2, 2, 2, 2], 2),
            (&[3], 3), (&[9], 3), (&[3, 3], 3), (&[27], 3), (&[9, 3], 3), (&[3, 3, 3], 3),
            (&[5], 5), (&[25], 5), (&[5, 5], 5),
            (&[7], 7), (&[11], 11), (&[13], 13), (&[17], 17), (&[19], 19),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for (factors, p) in groups {
            let g = make_group(factors).unwrap();
            let d = g.davenport_classical().unwrap();
            for _ in 0..200 {
                let indices: Vec<u64> = (0..d).map(|_| rng.gen_range(0..g.order())).collect();
                let s = Sequence::from_indices(g.clone(), &indices).unwrap();
                assert!(
                    olson_product(&g, &s, p).unwrap().is_zero(),
                    "{factors:?} {indices:?}"
                );
            }
            // each basis generator repeated q - 1 times: length D - 1, nonzero
            let mut indices = Vec::new();
            for (j, &q) in g.factors().iter().enumerate() {
                let mut residues = vec![0u64; g.factors().len()];
                residues[j] = 1;
                let e = g.element(&residues).unwrap();
                indices.extend(std::iter::repeat_n(g.index(&e).unwrap(), q as usize - 1));
            }
            let s = Sequence::from_indices(g.clone(), &indices).unwrap();
            assert_eq!(s.len() as u64, d - 1);
            assert!(!olson_product(&g, &s, p).unwrap().is_zero(), "{factors:?}");
        }
    }

    #[test]
    fn ring_axioms_on_random_triples() {
        for (factors, p) in [(vec![4u64], 2u64), (vec![3, 3], 3), (vec![5], 5)] {
            let g = make_group(&factors).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(13);
            let random_el = |rng: &mut ChaCha8Rng| {
                let mut x = ga_zero(&g, p).unwrap();
                for c in x.coeffs.iter_mut() {
                    *c = rng.gen_range(0..p);
                }
                x
            };
            for _ in 0..100 {
                let a = random_el(&mut rng);
                let b = random_el(&mut rng);
                let c = random_el(&mut rng);
                let ab_c = ga_mul(&ga_mul(&a, &b).unwrap(), &c).unwrap();
                let a_bc = ga_mul(&a, &ga_mul(&b, &c).unwrap()).unwrap();
                assert_eq!(ab_c, a_bc, "associativity");
                assert_eq!(
                    ga_mul(&a, &b).unwrap(),
                    ga_mul(&b, &a).unwrap(),
                    "commutativity"
                );
                let lhs = ga_mul(&a, &ga_add(&b, &c).unwrap()).unwrap();
                let rhs = ga_add(&ga_mul(&a, &b).unwrap(), &ga_mul(&a, &c).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "distributivity");
            }
        }
    }

    #[test]
    fn modulus_and_group_mismatch() {
        let g = make_group(&[3]).unwrap();
        let h = make_group(&[9]).unwrap();
        let a = ga_one(&g, 3).unwrap();
        let b = ga_one(&g, 5).unwrap();
        let c = ga_one(&h, 3).unwrap();
        assert_eq!(ga_add(&a, &b), Err(Error::ModulusMismatch(3, 5)));
        assert!(matches!(ga_mul(&a, &c), Err(Error::GroupMismatch(_))));
        assert_eq!(ga_one(&g, 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn troi_examples() {
        // B = {0, 1}: f = 1 + (p-1) x = 1 - x
        for p in [2u64, 3, 5, 7] {
            let f = troi_polynomial(&[0, 1], p).unwrap();
            assert_eq!(f.coeff(0), 1);
            assert_eq!(f.coeff(1), p - 1);
        }
        let f = troi_polynomial(&[0, 1, 2], 5).unwrap();
        assert_eq!((f.coeff(0), f.coeff(1), f.coeff(2)), (1, 3, 1));
        let f = troi_polynomial(&[0, 2, 3], 5).unwrap();
        assert_eq!((f.coeff(0), f.coeff(2), f.coeff(3)), (1, 2, 2));
        assert_eq!(f.to_string(), "1 + 2*x^2 + 2*x^3");
        assert_eq!(f.eval(1), 0);
        assert_eq!(f.hasse_derivative(1).eval(1), 0);
        let (ok, cof) = poly_divides_check(&f, 2);
        assert!(ok && cof.is_some());
    }

    #[test]
    fn troi_errors() {
        assert_eq!(
            troi_polynomial(&[0, 1, 6], 5),
            Err(Error::CongruentExponents(1, 6))
        );
        assert_eq!(troi_polynomial(&[0, 5], 5), Err(Error::ZeroExponentModP(5)));
        assert_eq!(
            troi_polynomial(&[0, 1, 2, 4], 3).unwrap_err(),
            Error::TooManyExponents { r: 3, max: 2 }
        );
        assert!(troi_polynomial(&[1, 2], 5).is_err());
        assert_eq!(troi_polynomial(&[0, 1], 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn troi_postconditions_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let primes = [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31];
        for _ in 0..200 {
            let p = primes[rng.gen_range(0..primes.len())];
            let r = rng.gen_range(1..=(p - 1).min(6)) as usize;
            // distinct nonzero residues, some lifted above p to exercise the
            // Lucas reduction
            let mut residues: Vec<u64> = (1..p).collect();
            for i in (1..residues.len()).rev() {
                residues.swap(i, rng.gen_range(0..=i));
            }
            let mut b: Vec<u64> = residues[..r]
                .iter()
                .map(|&x| x + p * rng.gen_range(0..3))
                .collect();
            b.push(0);
            let f = troi_polynomial(&b, p).unwrap();
            assert_eq!(f.eval(0), 1, "constant term");
            for e in f.support() {
                assert!(b.contains(&e), "support inside B");
            }
            let (divisible, _) = poly_divides_check(&f, r as u32);
            assert!(divisible, "(1-x)^{r} divides f for p={p} b={b:?}");
        }
    }

    #[test]
    fn divides_check_examples() {
        let p = 5;
        let f = FpPolynomial::from_coeffs(p, [(0, 1), (1, p - 1)]).unwrap();
        let (ok, cof) = poly_divides_check(&f, 1);
        assert!(ok);
        assert_eq!(cof.unwrap().to_string(), "1");
        let f = FpPolynomial::from_coeffs(p, [(0, 1), (1, 3), (2, 1)]).unwrap();
        assert!(poly_divides_check(&f, 2).0);
        let f = FpPolynomial::from_coeffs(p, [(0, 1), (1, 1)]).unwrap();
        assert!(!poly_divides_check(&f, 1).0);
    }

    #[test]
    fn hasse_derivative_matches_division() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..200 {
            let p = [2u64, 3, 5, 7][rng.gen_range(0..4)];
            let deg = rng.gen_range(1..10u64);
            let coeffs: Vec<(u64, u64)> =
                (0..=deg).map(|e| (e, rng.gen_range(0..p))).collect();
            let f = FpPolynomial::from_coeffs(p, coeffs).unwrap();
            for r in 1..=3u64 {
                let by_division = poly_divides_check(&f, r as u32).0;
                let by_hasse = (0..r).all(|j| f.hasse_derivative(j).eval(1) == 0);
                assert_eq!(by_division, by_hasse, "p={p} r={r} f={f}");
            }
        }
    }

    #[test]
    fn sigma_check_examples() {
        let g33 = make_group(&[3, 3]).unwrap();
        let a = WeightSet::new(&[1, 2], 3).unwrap();
        let s = Sequence::parse(&g33, "1,0;0,1;1,2").unwrap();
        let rep = theorem1_sigma_check(&g33, &a, &s, 3).unwrap();
        assert!(rep.covered);
        assert!(rep.sigma_is_zero);
        assert!(rep.witness.is_some());

        let z9 = make_group(&[9]).unwrap();
        let a = WeightSet::new(&[1, 2], 9).unwrap();
        let s = Sequence::parse(&z9, "1;2;4;7;8").unwrap();
        let rep = theorem1_sigma_check(&z9, &a, &s, 3).unwrap();
        assert!(rep.covered && rep.sigma_is_zero && rep.witness.is_some());

        // below the coverage bound sigma may or may not vanish
        let s = Sequence::parse(&z9, "1;2").unwrap();
        let rep = theorem1_sigma_check(&z9, &a, &s, 3).unwrap();
        assert!(!rep.covered);

        let z6 = make_group(&[6]).unwrap();
        let a6 = WeightSet::new(&[1], 6).unwrap();
        let s = Sequence::parse(&z6, "1").unwrap();
        assert!(matches!(
            theorem1_sigma_check(&z6, &a6, &s, 3),
            Err(Error::NotPGroup)
        ));
    }
}
