//! Decision and witness search for weighted zero-sum subsequences: the
//! unrestricted variant and the fixed-length variant, by reachability DP
//! over the group, with deterministic witness reconstruction.
//!
//! Witnesses are canonical: lexicographically least in (position list,
//! weight list), built by a greedy scan against exact suffix-reachability
//! sets. Position order always refers to the user-supplied sequence order.

use std::collections::HashMap;

use crate::bits::BitSet;
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::sequence::{Sequence, Witness};
use crate::weights::WeightSet;

/// Memory guard (in u64 words) for the fixed-length reconstruction table.
const RECONSTRUCT_WORD_GUARD: usize = 1 << 27;

/// Shared per-(G, A) state: weight-action tables and cached addition
/// permutations over element indices.
pub(crate) struct EngineCtx {
    order: usize,
    factors: Vec<u64>,
    weights: Vec<u64>,
    /// wmap[k][i] = index(a_k * element(i))
    wmap: Vec<Box<[u32]>>,
    /// i -> index(-element(i))
    neg: Box<[u32]>,
    /// addition permutations, keyed by the index of the added element
    perms: HashMap<usize, Box<[u32]>>,
    /// single cyclic factor of at most 64 elements: shifts are word rotations
    rot_fast: bool,
}

impl EngineCtx {
    pub fn new(group: &GroupSpec, weights: &WeightSet) -> Result<Self> {
        if weights.modulus() != group.exponent() {
            return Err(Error::GroupMismatch(format!(
                "weight set over modulus {} does not match group exponent {}",
                weights.modulus(),
                group.exponent()
            )));
        }
        let order = group.order() as usize;
        let factors = group.factors().to_vec();
        let decode = |i: usize| -> Vec<u64> {
            let mut residues = vec![0u64; factors.len()];
            let mut rem = i as u64;
            for (slot, &f) in residues.iter_mut().zip(&factors).rev() {
                *slot = rem % f;
                rem /= f;
            }
            residues
        };
        let encode = |residues: &[u64]| -> usize {
            let mut idx = 0u64;
            for (&r, &f) in residues.iter().zip(&factors) {
                idx = idx * f + r;
            }
            idx as usize
        };
        let mut wmap = Vec::with_capacity(weights.len());
        for &a in weights.values() {
            let mut table = vec![0u32; order];
            for (i, slot) in table.iter_mut().enumerate() {
                let rs: Vec<u64> = decode(i)
                    .iter()
                    .zip(&factors)
                    .map(|(&r, &f)| (a % f) * r % f)
                    .collect();
                *slot = encode(&rs) as u32;
            }
            wmap.push(table.into_boxed_slice());
        }
        let mut neg = vec![0u32; order];
        for (i, slot) in neg.iter_mut().enumerate() {
            let rs: Vec<u64> = decode(i)
                .iter()
                .zip(&factors)
                .map(|(&r, &f)| (f - r) % f)
                .collect();
            *slot = encode(&rs) as u32;
        }
        Ok(EngineCtx {
            order,
            rot_fast: factors.len() == 1 && order <= 64,
            factors,
            weights: weights.values().to_vec(),
            wmap,
            neg: neg.into_boxed_slice(),
            perms: HashMap::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn weight_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, k: usize) -> u64 {
        self.weights[k]
    }

    /// index(a_k * element(i))
    #[inline]
    pub fn wtimes(&self, k: usize, i: usize) -> usize {
        self.wmap[k][i] as usize
    }

    #[inline]
    pub fn neg_index(&self, i: usize) -> usize {
        self.neg[i] as usize
    }

    fn perm(&mut self, h: usize) -> &[u32] {
        let order = self.order;
        let factors = &self.factors;
        self.perms
            .entry(h)
            .or_insert_with(|| build_perm(order, factors, h))
    }

    pub fn add_index(&mut self, i: usize, h: usize) -> usize {
        if self.rot_fast {
            (i + h) % self.order
        } else {
            self.perm(h)[i] as usize
        }
    }

    /// dst |= { x + h : x in src }
    pub fn or_shifted(&mut self, dst: &mut BitSet, src: &BitSet, h: usize) {
        if self.rot_fast {
            let n = self.order as u32;
            let h = (h % self.order) as u32;
            let mask = if n == 64 { !0u64 } else { (1u64 << n) - 1 };
            let w = src.words[0];
            let rotated = if h == 0 {
                w
            } else {
                ((w << h) | (w >> (n - h))) & mask
            };
            dst.words[0] |= rotated;
            return;
        }
        let perm = self.perm(h);
        // split borrow: perm points into self.perms, dst/src live outside
        for i in src.iter_ones() {
            dst.set(perm[i] as usize);
        }
    }

    /// Reachable weighted sums over nonempty sub-selections, after one more
    /// sequence element of index `elem`.
    pub fn step_unrestricted(&mut self, state: &BitSet, elem: usize) -> BitSet {
        let mut out = state.clone();
        for k in 0..self.weight_count() {
            let h = self.wtimes(k, elem);
            self.or_shifted(&mut out, state, h);
            out.set(h);
        }
        out
    }

    /// In-place update of the count-indexed reachability states
    /// (state[c] = sums over exactly-c-term selections) with one more element.
    pub fn step_fixed(&mut self, state: &mut [BitSet], elem: usize) {
        for c in (1..state.len()).rev() {
            let (lo, hi) = state.split_at_mut(c);
            for k in 0..self.weights.len() {
                let h = self.wmap[k][elem] as usize;
                self.or_shifted(&mut hi[0], &lo[c - 1], h);
            }
        }
    }

    pub fn fresh_state(&self) -> BitSet {
        BitSet::new(self.order)
    }

    /// state[0] = {zero}, the rest empty.
    pub fn fresh_fixed_state(&self, m: usize) -> Vec<BitSet> {
        let mut v = vec![BitSet::new(self.order); m + 1];
        v[0].set(0);
        v
    }
}

fn build_perm(order: usize, factors: &[u64], h: usize) -> Box<[u32]> {
    let decode = |i: usize| -> Vec<u64> {
        let mut residues = vec![0u64; factors.len()];
        let mut rem = i as u64;
        for (slot, &f) in residues.iter_mut().zip(factors).rev() {
            *slot = rem % f;
            rem /= f;
        }
        residues
    };
    let hr = decode(h);
    let mut table = vec![0u32; order];
    for (i, slot) in table.iter_mut().enumerate() {
        let mut idx = 0u64;
        for ((&r, &hv), &f) in decode(i).iter().zip(&hr).zip(factors) {
            idx = idx * f + (r + hv) % f;
        }
        *slot = idx as u32;
    }
    table.into_boxed_slice()
}

fn check_inputs(group: &GroupSpec, s: &Sequence) -> Result<()> {
    if s.group() != group {
        return Err(Error::GroupMismatch(format!(
            "sequence over group {} does not match group {}",
            s.group(),
            group
        )));
    }
    Ok(())
}

/// True iff the sequence has no nonempty A-weighted zero-sum subsequence.
pub fn is_zero_sum_free(group: &GroupSpec, a: &WeightSet, s: &Sequence) -> Result<bool> {
    check_inputs(group, s)?;
    let mut ctx = EngineCtx::new(group, a)?;
    let mut state = ctx.fresh_state();
    for &ei in &s.indices() {
        state = ctx.step_unrestricted(&state, ei as usize);
        if state.contains(0) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff some subsequence of exactly m terms has an A-weighted zero sum.
pub fn has_fixed_length_zero_sum(
    group: &GroupSpec,
    a: &WeightSet,
    s: &Sequence,
    m: usize,
) -> Result<bool> {
    check_inputs(group, s)?;
    if m < 1 || m > s.len() {
        return Err(Error::InvalidLength { m, len: s.len() });
    }
    let mut ctx = EngineCtx::new(group, a)?;
    let mut state = ctx.fresh_fixed_state(m);
    for &ei in &s.indices() {
        ctx.step_fixed(&mut state, ei as usize);
        if state[m].contains(0) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// The canonical witness for Eq.-style unrestricted weighted zero sums, or
/// None when the sequence is zero-sum free.
pub fn find_weighted_zero_subsequence(
    group: &GroupSpec,
    a: &WeightSet,
    s: &Sequence,
) -> Result<Option<Witness>> {
    if is_zero_sum_free(group, a, s)? {
        return Ok(None);
    }
    let mut ctx = EngineCtx::new(group, a)?;
    let idx: Vec<usize> = s.indices().iter().map(|&i| i as usize).collect();
    let t = idx.len();

    // suffix sums over possibly-empty selections
    let mut can0: Vec<BitSet> = vec![ctx.fresh_state(); t + 1];
    can0[t].set(0);
    for i in (0..t).rev() {
        let prev = can0[i + 1].clone();
        let mut cur = prev.clone();
        for k in 0..ctx.weight_count() {
            let h = ctx.wtimes(k, idx[i]);
            ctx.or_shifted(&mut cur, &prev, h);
        }
        can0[i] = cur;
    }

    // greedy lexicographically-least position list
    let mut committed: Vec<usize> = Vec::new();
    let mut sums = ctx.fresh_state();
    sums.set(0);
    let mut start = 0usize;
    loop {
        if !committed.is_empty() && sums.contains(0) {
            break;
        }
        let mut found = None;
        for q in start..t {
            let mut with_q = ctx.fresh_state();
            for k in 0..ctx.weight_count() {
                let h = ctx.wtimes(k, idx[q]);
                ctx.or_shifted(&mut with_q, &sums, h);
            }
            let feasible = with_q
                .iter_ones()
                .any(|sigma| can0[q + 1].contains(ctx.neg_index(sigma)));
            if feasible {
                found = Some((q, with_q));
                break;
            }
        }
        let Some((q, with_q)) = found else {
            debug_assert!(false, "completion must exist once the decision is yes");
            return Ok(None);
        };
        committed.push(q);
        sums = with_q;
        start = q + 1;
    }

    Ok(Some(assign_weights(&mut ctx, &idx, &committed)))
}

/// The canonical witness with exactly m terms, or None.
pub fn find_fixed_length_zero_subsequence(
    group: &GroupSpec,
    a: &WeightSet,
    s: &Sequence,
    m: usize,
) -> Result<Option<Witness>> {
    if !has_fixed_length_zero_sum(group, a, s, m)? {
        return Ok(None);
    }
    let mut ctx = EngineCtx::new(group, a)?;
    let idx: Vec<usize> = s.indices().iter().map(|&i| i as usize).collect();
    let t = idx.len();

    let words = ctx.order().div_ceil(64);
    if (t + 1) * (m + 1) * words > RECONSTRUCT_WORD_GUARD {
        return Err(Error::InvalidParam(
            "fixed-length witness reconstruction exceeds the desk-scale memory guard".into(),
        ));
    }

    // can0[i][c]: sums over exactly-c-term selections from positions i..
    let mut can0: Vec<Vec<BitSet>> = vec![vec![ctx.fresh_state(); m + 1]; t + 1];
    can0[t][0].set(0);
    for i in (0..t).rev() {
        for c in 0..=m {
            let mut cur = can0[i + 1][c].clone();
            if c > 0 {
                let prev = can0[i + 1][c - 1].clone();
                for k in 0..ctx.weight_count() {
                    let h = ctx.wtimes(k, idx[i]);
                    ctx.or_shifted(&mut cur, &prev, h);
                }
            }
            can0[i][c] = cur;
        }
    }

    let mut committed: Vec<usize> = Vec::new();
    let mut sums = ctx.fresh_state();
    sums.set(0);
    let mut start = 0usize;
    while committed.len() < m {
        let need = m - committed.len() - 1;
        let mut found = None;
        for q in start..t {
            let mut with_q = ctx.fresh_state();
            for k in 0..ctx.weight_count() {
                let h = ctx.wtimes(k, idx[q]);
                ctx.or_shifted(&mut with_q, &sums, h);
            }
            let feasible = with_q
                .iter_ones()
                .any(|sigma| can0[q + 1][need].contains(ctx.neg_index(sigma)));
            if feasible {
                found = Some((q, with_q));
                break;
            }
        }
        let Some((q, with_q)) = found else {
            debug_assert!(false, "completion must exist once the decision is yes");
            return Ok(None);
        };
        committed.push(q);
        sums = with_q;
        start = q + 1;
    }

    Ok(Some(assign_weights(&mut ctx, &idx, &committed)))
}

/// Lexicographically-least weight tuple over a committed position list,
/// every position receiving exactly one weight.
fn assign_weights(ctx: &mut EngineCtx, idx: &[usize], committed: &[usize]) -> Witness {
    let l = committed.len();
    let mut suffix: Vec<BitSet> = vec![ctx.fresh_state(); l + 1];
    suffix[l].set(0);
    for j in (0..l).rev() {
        let prev = suffix[j + 1].clone();
        let mut cur = ctx.fresh_state();
        for k in 0..ctx.weight_count() {
            let h = ctx.wtimes(k, idx[committed[j]]);
            ctx.or_shifted(&mut cur, &prev, h);
        }
        suffix[j] = cur;
    }
    let mut terms = Vec::with_capacity(l);
    let mut cur = 0usize;
    for (j, &p) in committed.iter().enumerate() {
        let mut chosen = None;
        for k in 0..ctx.weight_count() {
            let next = ctx.add_index(cur, ctx.wtimes(k, idx[p]));
            if suffix[j + 1].contains(ctx.neg_index(next)) {
                chosen = Some((k, next));
                break;
            }
        }
        let (k, next) = chosen.expect("weight assignment must complete");
        terms.push((p, ctx.weight(k)));
        cur = next;
    }
    debug_assert_eq!(cur, 0);
    Witness::new(terms)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;
    use crate::weights::WeightFamily;

    fn ws(vals: &[u64], n: u64) -> WeightSet {
        WeightSet::new(vals, n).unwrap()
    }

    #[test]
    fn unrestricted_examples() {
        let z10 = make_group(&[10]).unwrap();
        // powers-of-two sequence is zero-sum free for {1, 9}
        let s = Sequence::parse(&z10, "1;2;4").unwrap();
        assert_eq!(
            find_weighted_zero_subsequence(&z10, &ws(&[1, 9], 10), &s).unwrap(),
            None
        );
        let s = Sequence::parse(&z10, "5").unwrap();
        let w = find_weighted_zero_subsequence(&z10, &ws(&[2], 10), &s)
            .unwrap()
            .unwrap();
        assert_eq!(w.terms(), &[(0, 2)]);

        let z9 = make_group(&[9]).unwrap();
        let s = Sequence::parse(&z9, "3;3;3").unwrap();
        let w = find_weighted_zero_subsequence(&z9, &ws(&[1], 9), &s)
            .unwrap()
            .unwrap();
        assert_eq!(w.terms(), &[(0, 1), (1, 1), (2, 1)]);
    }

    #[test]
    fn zero_absorption() {
        let z5 = make_group(&[5]).unwrap();
        let s = Sequence::parse(&z5, "1;2;0").unwrap();
        let a = ws(&[1], 5);
        assert!(!is_zero_sum_free(&z5, &a, &s).unwrap());
        let w = find_weighted_zero_subsequence(&z5, &a, &s).unwrap().unwrap();
        assert_eq!(w.terms(), &[(2, 1)]);
    }

    #[test]
    fn fixed_length_examples() {
        let z3 = make_group(&[3]).unwrap();
        let s = Sequence::parse(&z3, "1;1;1;1;1").unwrap();
        let w = find_fixed_length_zero_subsequence(&z3, &ws(&[1], 3), &s, 3)
            .unwrap()
            .unwrap();
        assert_eq!(w.terms(), &[(0, 1), (1, 1), (2, 1)]);

        // the classical extremal of length 2n-2 over Z_5 has no window of
        // exactly 5 terms summing to zero
        let z5 = make_group(&[5]).unwrap();
        let s = Sequence::parse(&z5, "1;1;1;1;2;2;2;2").unwrap();
        assert_eq!(
            find_fixed_length_zero_subsequence(&z5, &ws(&[1], 5), &s, 5).unwrap(),
            None
        );

        let z4 = make_group(&[4]).unwrap();
        let s = Sequence::parse(&z4, "1;1;1").unwrap();
        assert_eq!(
            find_fixed_length_zero_subsequence(&z4, &ws(&[1], 4), &s, 3).unwrap(),
            None
        );
    }

    #[test]
    fn boolean_forms() {
        let g = make_group(&[5, 5]).unwrap();
        let a = WeightFamily::All.resolve(5).unwrap();
        let s = Sequence::parse(&g, "1,0;0,1").unwrap();
        assert!(is_zero_sum_free(&g, &a, &s).unwrap());

        let z2 = make_group(&[2]).unwrap();
        let s = Sequence::parse(&z2, "1;1").unwrap();
        assert!(!is_zero_sum_free(&z2, &ws(&[1], 2), &s).unwrap());

        let z7 = make_group(&[7]).unwrap();
        let a = WeightFamily::Units.resolve(7).unwrap();
        let s = Sequence::parse(&z7, "1").unwrap();
        assert!(is_zero_sum_free(&z7, &a, &s).unwrap());
    }

    #[test]
    fn empty_sequence_is_free() {
        let z5 = make_group(&[5]).unwrap();
        let s = Sequence::empty(z5.clone());
        assert!(is_zero_sum_free(&z5, &ws(&[1], 5), &s).unwrap());
        assert_eq!(
            find_weighted_zero_subsequence(&z5, &ws(&[1], 5), &s).unwrap(),
            None
        );
    }

    #[test]
    fn error_paths() {
        let z5 = make_group(&[5]).unwrap();
        let z6 = make_group(&[6]).unwrap();
        let s = Sequence::parse(&z6, "1;2").unwrap();
        assert!(matches!(
            is_zero_sum_free(&z5, &ws(&[1], 5), &s),
            Err(Error::GroupMismatch(_))
        ));
        // weight modulus must match the exponent
        assert!(matches!(
            is_zero_sum_free(&z6, &ws(&[1], 5), &s),
            Err(Error::GroupMismatch(_))
        ));
        let s5 = Sequence::parse(&z5, "1;2").unwrap();
        assert!(matches!(
            has_fixed_length_zero_sum(&z5, &ws(&[1], 5), &s5, 3),
            Err(Error::InvalidLength { .. })
        ));
        assert!(matches!(
            has_fixed_length_zero_sum(&z5, &ws(&[1], 5), &s5, 0),
            Err(Error::InvalidLength { .. })
        ));
    }

    #[test]
    fn canonical_witness_prefers_smaller_positions_over_smaller_weights() {
        // witnesses: positions (0,1) with weights (2,1), and (0,2) with (1,1);
        // the position list dominates, so (0,1)/(2,1) is canonical even though
        // weight 1 at position 0 would also extend to a witness.
        let z12 = make_group(&[12]).unwrap();
        let a = ws(&[1, 2], 12);
        let s = Sequence::parse(&z12, "1;10;11").unwrap();
        let w = find_weighted_zero_subsequence(&z12, &a, &s).unwrap().unwrap();
        assert_eq!(w.terms(), &[(0, 2), (1, 1)]);
    }

    #[test]
    fn witnesses_revalidate() {
        let g = make_group(&[3, 9]).unwrap();
        let a = ws(&[1, 2, 4], 9);
        let s = Sequence::parse(&g, "1,2;2,8;0,3;1,1").unwrap();
        if let Some(w) = find_weighted_zero_subsequence(&g, &a, &s).unwrap() {
            w.validate(&a, &s, None).unwrap();
        }
        if let Some(w) = find_fixed_length_zero_subsequence(&g, &a, &s, 3).unwrap() {
            w.validate(&a, &s, Some(3)).unwrap();
        }
    }
}
