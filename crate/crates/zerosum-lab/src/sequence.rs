//! Sequences of group elements and the witnesses that certify a weighted
//! zero-sum subsequence.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::weights::WeightSet;

/// Desk-scale guard on sequence length.
pub const MAX_SEQUENCE_LEN: usize = 10_000;

/// A finite sequence (multiset with an order) of elements of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    group: GroupSpec,
    elements: Vec<GroupElement>,
}

impl Sequence {
    pub fn new(group: GroupSpec, elements: Vec<GroupElement>) -> Result<Self> {
        if elements.len() > MAX_SEQUENCE_LEN {
            return Err(Error::InvalidParam(format!(
                "sequence length {} exceeds the {MAX_SEQUENCE_LEN} guard",
                elements.len()
            )));
        }
        for e in &elements {
            group.index(e)?;
        }
        Ok(Sequence { group, elements })
    }

    pub fn empty(group: GroupSpec) -> Self {
        Sequence {
            group,
            elements: Vec::new(),
        }
    }

    pub fn from_indices(group: GroupSpec, indices: &[u64]) -> Result<Self> {
        let elements = indices
            .iter()
            .map(|&i| group.element_of_index(i))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, elements)
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn indices(&self) -> Vec<u64> {
        self.elements
            .iter()
            .map(|e| self.group.index(e).expect("validated on construction"))
            .collect()
    }

    /// The same multiset sorted by element index.
    pub fn canonical_form(&self) -> Vec<u64> {
        let mut idx = self.indices();
        idx.sort_unstable();
        idx
    }

    pub fn contains_zero(&self) -> bool {
        self.indices().contains(&0)
    }

    /// Append `count` copies of the zero element.
    pub fn pad_with_zeros(&self, count: usize) -> Result<Sequence> {
        let mut elements = self.elements.clone();
        elements.extend(std::iter::repeat_n(self.group.zero(), count));
        Sequence::new(self.group.clone(), elements)
    }

    /// Sequence grammar: elements separated by `;`, residues inside an
    /// element separated by `,`. For cyclic groups a bare comma list is also
    /// accepted as a list of single-residue elements. The empty string is the
    /// empty sequence.
    pub fn parse(group: &GroupSpec, s: &str) -> Result<Sequence> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Sequence::empty(group.clone()));
        }
        let cyclic_rank1 = group.factors().len() == 1;
        let mut elements = Vec::new();
        for chunk in s.split(';') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                return Err(Error::Parse("empty element in sequence".into()));
            }
            if cyclic_rank1 && chunk.contains(',') {
                for part in chunk.split(',') {
                    elements.push(group.parse_element(part)?);
                }
            } else {
                elements.push(group.parse_element(chunk)?);
            }
        }
        Sequence::new(group.clone(), elements)
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(|e| e.to_string()).collect();
        write!(f, "{}", parts.join(";"))
    }
}

/// A certificate: positions (strictly increasing, 0-based into the
/// user-supplied sequence order) with one weight from A per position, whose
/// weighted sum is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    terms: Vec<(usize, u64)>,
}

/// Wire format for witnesses.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct WitnessJson {
    pub positions: Vec<usize>,
    pub weights: Vec<u64>,
    pub length: usize,
}

impl Witness {
    pub fn new(terms: Vec<(usize, u64)>) -> Self {
        debug_assert!(terms.windows(2).all(|w| w[0].0 < w[1].0));
        Witness { terms }
    }

    pub fn terms(&self) -> &[(usize, u64)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn positions(&self) -> Vec<usize> {
        self.terms.iter().map(|t| t.0).collect()
    }

    pub fn weights(&self) -> Vec<u64> {
        self.terms.iter().map(|t| t.1).collect()
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            positions: self.positions(),
            weights: self.weights(),
            length: self.len(),
        }
    }

    pub fn weighted_sum(&self, s: &Sequence) -> Result<GroupElement> {
        let g = s.group();
        let mut acc = g.zero();
        for &(pos, w) in &self.terms {
            if pos >= s.len() {
                return Err(Error::InvalidParam(format!(
                    "witness position {pos} out of range"
                )));
            }
            let term = g.scalar_mul(w as i64, &s.elements()[pos])?;
            acc = g.add(&acc, &term)?;
        }
        Ok(acc)
    }

    /// Re-validate against the sequence it certifies: strictly increasing
    /// in-range positions, weights in A, zero weighted sum, and the exact
    /// term count when a fixed length is required.
    pub fn validate(
        &self,
        a: &WeightSet,
        s: &Sequence,
        fixed_len: Option<usize>,
    ) -> Result<()> {
        if self.terms.is_empty() {
            return Err(Error::InvalidParam("empty witness".into()));
        }
        if let Some(m) = fixed_len {
            if self.terms.len() != m {
                return Err(Error::InvalidLength {
                    m,
                    len: self.terms.len(),
                });
            }
        }
        if !self.terms.windows(2).all(|w| w[0].0 < w[1].0) {
            return Err(Error::InvalidParam(
                "witness positions not strictly increasing".into(),
            ));
        }
        for &(pos, w) in &self.terms {
            if pos >= s.len() {
                return Err(Error::InvalidParam(format!(
                    "witness position {pos} out of range"
                )));
            }
            if !a.contains(w) {
                return Err(Error::InvalidParam(format!("weight {w} not in A")));
            }
        }
        if self.weighted_sum(s)? != s.group().zero() {
            return Err(Error::InvalidParam("weighted sum is nonzero".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::make_group;

    #[test]
    fn parse_forms() {
        let z10 = make_group(&[10]).unwrap();
        let s = Sequence::parse(&z10, "1;2;4").unwrap();
        assert_eq!(s.indices(), vec![1, 2, 4]);
        // comma form for cyclic groups
        let s2 = Sequence::parse(&z10, "1,2,4").unwrap();
        assert_eq!(s2, s);
        assert_eq!(s.to_string(), "1;2;4");

        let g = make_group(&[3, 9]).unwrap();
        let s = Sequence::parse(&g, "1,2;2,8").unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s.to_string(), "1,2;2,8");
        assert!(Sequence::parse(&g, "1,2;;2,8").is_err());
        assert!(Sequence::parse(&g, "1;2").is_err());
        assert!(Sequence::parse(&g, "1,2,3").is_err());
        assert!(Sequence::parse(&z10, "").unwrap().is_empty());
    }

    #[test]
    fn canonical_form_sorts_indices() {
        let z10 = make_group(&[10]).unwrap();
        let s = Sequence::parse(&z10, "4;1;2;1").unwrap();
        assert_eq!(s.canonical_form(), vec![1, 1, 2, 4]);
    }

    #[test]
    fn witness_validation() {
        let z9 = make_group(&[9]).unwrap();
        let a = WeightSet::new(&[1], 9).unwrap();
        let s = Sequence::parse(&z9, "3;3;3").unwrap();
        let w = Witness::new(vec![(0, 1), (1, 1), (2, 1)]);
        w.validate(&a, &s, None).unwrap();
        w.validate(&a, &s, Some(3)).unwrap();
        assert!(w.validate(&a, &s, Some(2)).is_err());
        let bad = Witness::new(vec![(0, 1), (1, 1)]);
        assert!(bad.validate(&a, &s, None).is_err());
        let bad_weight = Witness::new(vec![(0, 3), (1, 3), (2, 3)]);
        assert!(bad_weight.validate(&a, &s, None).is_err());

        let json = serde_json::to_string(&w.to_json()).unwrap();
        assert_eq!(json, r#"{"positions":[0,1,2],"weights":[1,1,1],"length":3}"#);
    }

    #[test]
    fn pad_with_zeros_appends() {
        let z4 = make_group(&[4]).unwrap();
        let s = Sequence::parse(&z4, "1").unwrap();
        let t = s.pad_with_zeros(3).unwrap();
        assert_eq!(t.indices(), vec![1, 0, 0, 0]);
        let empty = Sequence::empty(z4.clone());
        assert_eq!(empty.pad_with_zeros(2).unwrap().indices(), vec![0, 0]);
    }
}
