//! Exact values of d_A(G), ZS_A(G) and s_A(G) by depth-first search over
//! canonical multisets (non-decreasing element indices), extending only
//! prefixes that are still "bad". Badness is closed under taking
//! subsequences, so the pruning is exact: the search visits precisely the
//! bad canonical multisets and the constant is one more than the longest.

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bits::BitSet;
use crate::engine::{self, EngineCtx};
use crate::error::{Error, Result};
use crate::group::GroupSpec;
use crate::sequence::Sequence;
use crate::weights::{check_theorem1_hypothesis, WeightSet};

#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Longest bad sequence the search will accept before giving up with
    /// `SearchCapExceeded`. Default: 4 * order + 8.
    pub max_length_cap: Option<usize>,
    /// Wall-clock budget for one compute call. Default: 60 s.
    pub time_limit: Option<Duration>,
    /// Fan the top-level branches (choice of first element) out to a thread
    /// pool. Value and extremal are identical with this on or off.
    pub parallel_branching: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_length_cap: None,
            time_limit: Some(Duration::from_secs(60)),
            parallel_branching: false,
        }
    }
}

impl SearchConfig {
    pub fn cap_for(&self, group: &GroupSpec) -> usize {
        self.max_length_cap
            .unwrap_or_else(|| 4 * group.order() as usize + 8)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ConstantKind {
    /// d_A(G): unrestricted weighted zero-sum subsequences.
    Da,
    /// ZS_A(G): exact length |G|.
    Zs,
    /// s_A(G): exact length exp(G).
    Sa,
    /// Classical Davenport constant (d_A with A = {1}).
    D,
}

impl ConstantKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ConstantKind::Da => "dA",
            ConstantKind::Zs => "ZS",
            ConstantKind::Sa => "sA",
            ConstantKind::D => "D",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "dA" | "da" => Ok(ConstantKind::Da),
            "ZS" | "zs" => Ok(ConstantKind::Zs),
            "sA" | "sa" => Ok(ConstantKind::Sa),
            "D" => Ok(ConstantKind::D),
            other => Err(Error::Parse(format!("unknown constant kind {other:?}"))),
        }
    }

    /// The exact subsequence length the kind prescribes, if any.
    pub fn fixed_length(&self, group: &GroupSpec) -> Option<u64> {
        match self {
            ConstantKind::Da | ConstantKind::D => None,
            ConstantKind::Zs => Some(group.order()),
            ConstantKind::Sa => Some(group.exponent()),
        }
    }
}

impl std::fmt::Display for ConstantKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone)]
pub struct ConstantResult {
    pub kind: ConstantKind,
    pub value: u64,
    /// A maximum-length bad sequence certifying value - 1; the empty
    /// sequence when value = 1. Always the lexicographically least
    /// canonical multiset among the maximum-length bad sequences.
    pub extremal: Sequence,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub cap_hit: bool,
}

/// Result wire format.
#[derive(Debug, Clone, Serialize)]
pub struct ResultJson {
    pub group: Vec<u64>,
    pub weights: Vec<u64>,
    pub kind: String,
    pub value: u64,
    pub extremal: Vec<Vec<u64>>,
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub cap_hit: bool,
}

impl ConstantResult {
    pub fn to_json(&self, group: &GroupSpec, weights: &WeightSet) -> ResultJson {
        ResultJson {
            group: group.factors().to_vec(),
            weights: weights.values().to_vec(),
            kind: self.kind.as_str().to_string(),
            value: self.value,
            extremal: self
                .extremal
                .elements()
                .iter()
                .map(|e| e.residues().to_vec())
                .collect(),
            nodes: self.nodes_explored,
            elapsed_ms: self.elapsed.as_millis() as u64,
            cap_hit: self.cap_hit,
        }
    }
}

struct BranchOut {
    nodes: u64,
    best: Vec<u32>,
}

struct SearchShared {
    cap: usize,
    deadline: Option<Instant>,
    abort: Arc<AtomicBool>,
}

impl SearchShared {
    fn check_time(&self, best_len: usize) -> Result<()> {
        if self.abort.load(Ordering::Relaxed) {
            return Err(Error::TimeLimitExceeded {
                lower_bound: best_len as u64 + 1,
            });
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() > deadline {
                self.abort.store(true, Ordering::Relaxed);
                return Err(Error::TimeLimitExceeded {
                    lower_bound: best_len as u64 + 1,
                });
            }
        }
        Ok(())
    }
}

enum DfsState {
    Unrestricted(BitSet),
    Fixed(Vec<BitSet>),
}

struct BranchSearch<'s> {
    ctx: EngineCtx,
    order: usize,
    shared: &'s SearchShared,
    nodes: u64,
    best: Vec<u32>,
    prefix: Vec<u32>,
}

impl BranchSearch<'_> {
    fn bad(&self, state: &DfsState) -> bool {
        match state {
            DfsState::Unrestricted(b) => !b.contains(0),
            DfsState::Fixed(v) => !v.last().expect("m >= 1").contains(0),
        }
    }

    fn step(&mut self, state: &DfsState, elem: usize) -> DfsState {
        match state {
            DfsState::Unrestricted(b) => {
                DfsState::Unrestricted(self.ctx.step_unrestricted(b, elem))
            }
            DfsState::Fixed(v) => {
                let mut next = v.clone();
                self.ctx.step_fixed(&mut next, elem);
                DfsState::Fixed(next)
            }
        }
    }

    fn dfs(&mut self, state: &DfsState, start: usize) -> Result<()> {
        for j in start..self.order {
            self.nodes += 1;
            if self.nodes.is_multiple_of(4096) {
                self.shared.check_time(self.best.len())?;
            }
            let next = self.step(state, j);
            if !self.bad(&next) {
                continue;
            }
            self.prefix.push(j as u32);
            if self.prefix.len() > self.best.len() {
                self.best = self.prefix.clone();
            }
            if self.prefix.len() >= self.shared.cap {
                self.prefix.pop();
                return Err(Error::SearchCapExceeded {
                    cap: self.shared.cap,
                    lower_bound: self.shared.cap as u64 + 1,
                });
            }
            let deeper = self.dfs(&next, j);
            self.prefix.pop();
            deeper?;
        }
        Ok(())
    }
}

fn run_branch(
    group: &GroupSpec,
    weights: &WeightSet,
    fixed_m: Option<usize>,
    shared: &SearchShared,
    first: usize,
) -> Result<BranchOut> {
    let mut search = BranchSearch {
        ctx: EngineCtx::new(group, weights)?,
        order: group.order() as usize,
        shared,
        nodes: 1,
        best: Vec::new(),
        prefix: Vec::new(),
    };
    let root = match fixed_m {
        None => DfsState::Unrestricted(search.ctx.fresh_state()),
        Some(m) => DfsState::Fixed(search.ctx.fresh_fixed_state(m)),
    };
    let state = search.step(&root, first);
    if search.bad(&state) {
        search.prefix.push(first as u32);
        search.best = search.prefix.clone();
        if search.prefix.len() >= shared.cap {
            return Err(Error::SearchCapExceeded {
                cap: shared.cap,
                lower_bound: shared.cap as u64 + 1,
            });
        }
        search.dfs(&state, first)?;
    }
    Ok(BranchOut {
        nodes: search.nodes,
        best: search.best,
    })
}

fn run_search(
    group: &GroupSpec,
    weights: &WeightSet,
    kind: ConstantKind,
    cfg: &SearchConfig,
) -> Result<ConstantResult> {
    let started = Instant::now();
    // surface weight/group mismatches before spawning branches
    let _ = EngineCtx::new(group, weights)?;
    let fixed_m = kind.fixed_length(group).map(|m| m as usize);
    let shared = SearchShared {
        cap: cfg.cap_for(group).max(1),
        deadline: cfg.time_limit.map(|d| started + d),
        abort: Arc::new(AtomicBool::new(false)),
    };
    let order = group.order() as usize;
    let branches: Vec<Result<BranchOut>> = if cfg.parallel_branching {
        (0..order)
            .into_par_iter()
            .map(|j| run_branch(group, weights, fixed_m, &shared, j))
            .collect()
    } else {
        (0..order)
            .map(|j| run_branch(group, weights, fixed_m, &shared, j))
            .collect()
    };

    let mut nodes = 0u64;
    let mut best: Vec<u32> = Vec::new();
    for out in branches {
        let out = out?;
        nodes += out.nodes;
        if out.best.len() > best.len() {
            best = out.best;
        }
    }
    let indices: Vec<u64> = best.iter().map(|&i| i as u64).collect();
    let extremal = Sequence::from_indices(group.clone(), &indices)?;
    Ok(ConstantResult {
        kind,
        value: best.len() as u64 + 1,
        extremal,
        nodes_explored: nodes,
        elapsed: started.elapsed(),
        cap_hit: false,
    })
}

/// d_A(G): one more than the longest A-weighted zero-sum-free sequence.
pub fn compute_da(group: &GroupSpec, weights: &WeightSet, cfg: &SearchConfig) -> Result<ConstantResult> {
    run_search(group, weights, ConstantKind::Da, cfg)
}

/// ZS_A(G): exact subsequence length |G|.
pub fn compute_zs(group: &GroupSpec, weights: &WeightSet, cfg: &SearchConfig) -> Result<ConstantResult> {
    run_search(group, weights, ConstantKind::Zs, cfg)
}

/// s_A(G): exact subsequence length exp(G).
pub fn compute_sa(group: &GroupSpec, weights: &WeightSet, cfg: &SearchConfig) -> Result<ConstantResult> {
    run_search(group, weights, ConstantKind::Sa, cfg)
}

pub fn compute(
    kind: ConstantKind,
    group: &GroupSpec,
    weights: &WeightSet,
    cfg: &SearchConfig,
) -> Result<ConstantResult> {
    match kind {
        ConstantKind::D => davenport_exact(group, cfg),
        k => run_search(group, weights, k, cfg),
    }
}

/// Classical Davenport constant by exact search (A = {1}).
pub fn davenport_exact(group: &GroupSpec, cfg: &SearchConfig) -> Result<ConstantResult> {
    let one = WeightSet::new(&[1], group.exponent())?;
    let mut res = run_search(group, &one, ConstantKind::Da, cfg)?;
    res.kind = ConstantKind::D;
    Ok(res)
}

/// The p-group upper bound ceil(D(G) / |A|), valid whenever the elements of
/// A are incongruent and nonzero mod p.
pub fn theorem1_bound(group: &GroupSpec, weights: &WeightSet) -> Result<u64> {
    let p = group.is_p_group().ok_or(Error::NotPGroup)?;
    let report = check_theorem1_hypothesis(weights, p);
    if !report.holds {
        return Err(Error::HypothesisViolated(report.to_string()));
    }
    let d = group.davenport_classical()?;
    Ok(d.div_ceil(weights.len() as u64))
}

/// One instance of the conjectured identity ZS_A(G) = |G| - 1 + d_A(G).
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRecord {
    pub da: u64,
    pub zs: u64,
    pub predicted: u64,
    pub holds: bool,
    /// the unconditional padding bound ZS >= d_A + |G| - 1
    pub lower_bound_ok: bool,
}

pub fn conjecture1_check(
    group: &GroupSpec,
    weights: &WeightSet,
    cfg: &SearchConfig,
) -> Result<ConjectureRecord> {
    let da = compute_da(group, weights, cfg)?.value;
    let zs = compute_zs(group, weights, cfg)?.value;
    let predicted = group.order() - 1 + da;
    Ok(ConjectureRecord {
        da,
        zs,
        predicted,
        holds: zs == predicted,
        lower_bound_ok: zs >= predicted,
    })
}

/// One instance of the implication: if s_A(Z_n^d) = d_A + n - 1 then
/// ZS_A(Z_n^d) = d_A + n^d - 1. Both sides evaluated by exact search.
#[derive(Debug, Clone, Serialize)]
pub struct Lemma31Record {
    pub n: u64,
    pub d: u32,
    pub da: u64,
    pub sa: u64,
    pub zs: u64,
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
    pub vacuous: bool,
    pub implication_holds: bool,
}

pub fn lemma31_check(n: u64, d: u32, weights: &WeightSet, cfg: &SearchConfig) -> Result<Lemma31Record> {
    let group = GroupSpec::new(&vec![n; d as usize])?;
    let da = compute_da(&group, weights, cfg)?.value;
    let sa = compute_sa(&group, weights, cfg)?.value;
    let zs = compute_zs(&group, weights, cfg)?.value;
    let hypothesis_holds = sa == da + n - 1;
    let conclusion_holds = zs == da + group.order() - 1;
    Ok(Lemma31Record {
        n,
        d,
        da,
        sa,
        zs,
        hypothesis_holds,
        conclusion_holds,
        vacuous: !hypothesis_holds,
        implication_holds: !hypothesis_holds || conclusion_holds,
    })
}

/// Randomized check that sequences of length |G| + d_A - 1 containing at
/// least d_A - 1 zeros always admit an exact-length-|G| witness.
#[derive(Debug, Clone)]
pub struct Theorem4Report {
    pub trials: u32,
    pub da: u64,
    pub failures: Vec<Sequence>,
}

impl Theorem4Report {
    pub fn all_pass(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn theorem4_verify(
    group: &GroupSpec,
    weights: &WeightSet,
    trials: u32,
    rng_seed: u64,
    cfg: &SearchConfig,
) -> Result<Theorem4Report> {
    let da = compute_da(group, weights, cfg)?.value;
    let order = group.order();
    let len = (order + da - 1) as usize;
    let m = order as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut failures = Vec::new();
    for _ in 0..trials {
        let mut indices: Vec<u64> = vec![0; (da - 1) as usize];
        while indices.len() < len {
            indices.push(rng.gen_range(0..order));
        }
        indices.shuffle(&mut rng);
        let s = Sequence::from_indices(group.clone(), &indices)?;
        if !engine::has_fixed_length_zero_sum(group, weights, &s, m)? {
            failures.push(s);
        }
    }
    Ok(Theorem4Report {
        trials,
        da,
        failures,
    })
}
