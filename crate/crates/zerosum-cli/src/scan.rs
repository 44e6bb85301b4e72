//! Conjecture and open-problem scans over (group, weight set) grids.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use zerosum_lab::nt;
use zerosum_lab::solver::{self, conjecture1_check, SearchConfig};
use zerosum_lab::weights::{WeightFamily, WeightSet};
use zerosum_lab::{Error, GroupSpec};

const ALL_SUBSETS_GUARD: u64 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightPolicy {
    /// every nonempty subset of ]n[ (guarded to n <= 8)
    AllSubsets,
    /// the named families applicable to the group
    Families,
    /// k random nonempty subsets
    Random(u32),
}

impl FromStr for WeightPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "all-subsets" => Ok(WeightPolicy::AllSubsets),
            "families" => Ok(WeightPolicy::Families),
            _ => match s.strip_prefix("random:") {
                Some(k) => k
                    .parse::<u32>()
                    .map(WeightPolicy::Random)
                    .map_err(|e| Error::Parse(format!("bad random count: {e}"))),
                None => Err(Error::Parse(format!("unknown weight policy {s:?}"))),
            },
        }
    }
}

/// The weight sets a policy selects over a group's exponent.
pub fn weight_sets_for(
    group: &GroupSpec,
    policy: WeightPolicy,
    seed: u64,
) -> Result<Vec<WeightSet>, Error> {
    let n = group.exponent();
    match policy {
        WeightPolicy::AllSubsets => {
            if n > ALL_SUBSETS_GUARD {
                return Err(Error::InvalidParam(format!(
                    "all-subsets needs exponent <= {ALL_SUBSETS_GUARD}, got {n}"
                )));
            }
            let mut out = Vec::new();
            for mask in 1u64..(1 << n) {
                let vals: Vec<u64> = (0..n).filter(|b| mask >> b & 1 == 1).map(|b| b + 1).collect();
                out.push(WeightSet::new(&vals, n)?);
            }
            Ok(out)
        }
        WeightPolicy::Families => {
            let mut fams = vec![
                WeightFamily::Single(1),
                WeightFamily::Units,
                WeightFamily::All,
            ];
            if nt::is_prime(n) && n % 2 == 1 {
                fams.extend([
                    WeightFamily::Qr,
                    WeightFamily::Qnr,
                    WeightFamily::PrimRoots,
                    WeightFamily::A4,
                    WeightFamily::A5 { seed: None },
                ]);
            }
            let mut out: Vec<WeightSet> = Vec::new();
            for fam in fams {
                match fam.resolve(n) {
                    Ok(w) => {
                        if !out.iter().any(|x| x.values() == w.values()) {
                            out.push(w);
                        }
                    }
                    Err(Error::EmptyWeightSet(_)) => continue,
                    Err(e) => return Err(e),
                }
            }
            Ok(out)
        }
        WeightPolicy::Random(k) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<WeightSet> = Vec::new();
            let mut attempts = 0;
            while out.len() < k as usize && attempts < 50 * k {
                attempts += 1;
                let vals: Vec<u64> = (1..=n).filter(|_| rng.gen::<bool>()).collect();
                if vals.is_empty() {
                    continue;
                }
                let w = WeightSet::new(&vals, n)?;
                if !out.iter().any(|x| x.values() == w.values()) {
                    out.push(w);
                }
            }
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanStatus {
    Holds,
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRow {
    pub group: String,
    pub weights: String,
    pub da: Option<u64>,
    pub zs: Option<u64>,
    pub predicted: Option<u64>,
    pub status: ScanStatus,
}

#[derive(Debug, Clone, Copy, Default, Serialize)]
pub struct ScanSummary {
    pub holds: usize,
    pub fails: usize,
    pub inconclusive: usize,
}

pub fn summarize(rows: &[ConjectureRow]) -> ScanSummary {
    let mut s = ScanSummary::default();
    for r in rows {
        match r.status {
            ScanStatus::Holds => s.holds += 1,
            ScanStatus::Fails => s.fails += 1,
            ScanStatus::Inconclusive => s.inconclusive += 1,
        }
    }
    s
}

/// Check ZS_A(G) = |G| - 1 + d_A(G) over the grid; a failing row is a
/// mathematical finding, not an error.
pub fn conjecture_scan(
    groups: &[GroupSpec],
    policy: WeightPolicy,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<Vec<ConjectureRow>, Error> {
    let mut tasks = Vec::new();
    for g in groups {
        for w in weight_sets_for(g, policy, seed)? {
            tasks.push((g.clone(), w));
        }
    }
    let rows: Vec<ConjectureRow> = tasks
        .par_iter()
        .map(|(g, w)| match conjecture1_check(g, w, cfg) {
            Ok(rec) => ConjectureRow {
                group: g.to_string(),
                weights: w.to_string(),
                da: Some(rec.da),
                zs: Some(rec.zs),
                predicted: Some(rec.predicted),
                status: if rec.holds {
                    ScanStatus::Holds
                } else {
                    ScanStatus::Fails
                },
            },
            Err(Error::SearchCapExceeded { .. }) | Err(Error::TimeLimitExceeded { .. }) => {
                ConjectureRow {
                    group: g.to_string(),
                    weights: w.to_string(),
                    da: None,
                    zs: None,
                    predicted: None,
                    status: ScanStatus::Inconclusive,
                }
            }
            Err(_) => ConjectureRow {
                group: g.to_string(),
                weights: w.to_string(),
                da: None,
                zs: None,
                predicted: None,
                status: ScanStatus::Inconclusive,
            },
        })
        .collect();
    Ok(rows)
}

#[derive(Debug, Clone, Serialize)]
pub struct OpenProblemRow {
    pub group: String,
    pub weights: String,
    pub da: u64,
    pub davenport: u64,
    pub bound: u64,
    pub flagged: bool,
}

/// List (G, A) with d_A(G) exceeding ceil(D(G) / |A|).
pub fn openproblem_scan(
    groups: &[GroupSpec],
    policy: WeightPolicy,
    seed: u64,
    cfg: &SearchConfig,
) -> Result<Vec<OpenProblemRow>, Error> {
    let mut tasks = Vec::new();
    for g in groups {
        let davenport = match g.davenport_classical() {
            Ok(d) => d,
            Err(Error::NoClosedForm) => solver::davenport_exact(g, cfg)?.value,
            Err(e) => return Err(e),
        };
        for w in weight_sets_for(g, policy, seed)? {
            tasks.push((g.clone(), w, davenport));
        }
    }
    let rows: Vec<Result<OpenProblemRow, Error>> = tasks
        .par_iter()
        .map(|(g, w, davenport)| {
            let da = solver::compute_da(g, w, cfg)?.value;
            let bound = davenport.div_ceil(w.len() as u64);
            Ok(OpenProblemRow {
                group: g.to_string(),
                weights: w.to_string(),
                da,
                davenport: *davenport,
                bound,
                flagged: da > bound,
            })
        })
        .collect();
    rows.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use zerosum_lab::make_group;

    #[test]
    fn policies_parse() {
        assert_eq!("all-subsets".parse::<WeightPolicy>().unwrap(), WeightPolicy::AllSubsets);
        assert_eq!("families".parse::<WeightPolicy>().unwrap(), WeightPolicy::Families);
        assert_eq!("random:5".parse::<WeightPolicy>().unwrap(), WeightPolicy::Random(5));
        assert!("random:x".parse::<WeightPolicy>().is_err());
        assert!("bogus".parse::<WeightPolicy>().is_err());
    }

    #[test]
    fn all_subsets_enumeration() {
        let z4 = make_group(&[4]).unwrap();
        let sets = weight_sets_for(&z4, WeightPolicy::AllSubsets, 0).unwrap();
        assert_eq!(sets.len(), 15);
        let z9 = make_group(&[9]).unwrap();
        assert!(weight_sets_for(&z9, WeightPolicy::AllSubsets, 0).is_err());
    }

    #[test]
    fn families_for_prime_exponent() {
        let z7 = make_group(&[7]).unwrap();
        let sets = weight_sets_for(&z7, WeightPolicy::Families, 0).unwrap();
        // {1}, units = all = ]7[... units(7) = {1..6} = ]6[ = all, qr, qnr,
        // primroots, a4, a5 (= {1,2,3} which may duplicate none)
        assert!(sets.len() >= 6);
        let z6 = make_group(&[6]).unwrap();
        let sets = weight_sets_for(&z6, WeightPolicy::Families, 0).unwrap();
        assert_eq!(sets.len(), 3);
    }

    #[test]
    fn conjecture_holds_on_tiny_grid() {
        let groups: Vec<GroupSpec> = (2..=4).map(|n| make_group(&[n]).unwrap()).collect();
        let rows = conjecture_scan(
            &groups,
            WeightPolicy::AllSubsets,
            0,
            &SearchConfig::default(),
        )
        .unwrap();
        let summary = summarize(&rows);
        assert_eq!(summary.fails, 0);
        assert_eq!(summary.inconclusive, 0);
        assert_eq!(summary.holds, rows.len());
    }

    #[test]
    fn openproblem_flags_units_at_16() {
        let groups = vec![make_group(&[16]).unwrap()];
        let rows = openproblem_scan(
            &groups,
            WeightPolicy::Families,
            0,
            &SearchConfig::default(),
        )
        .unwrap();
        let units_row = rows
            .iter()
            .find(|r| r.weights == "{1,3,5,7,9,11,13,15}")
            .expect("units row present");
        assert!(units_row.flagged);
        assert_eq!(units_row.da, 5);
        assert_eq!(units_row.bound, 2);
    }
}
