//! Finite truncation sets: subsets of the positive integers closed under
//! taking divisors.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{divisors, is_prime};
use crate::error::{Result, WittError};

/// A finite divisor-closed set of positive integers, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct TruncationSet {
    members: Vec<u64>,
}

impl TruncationSet {
    /// Validates divisor closure.
    pub fn new(mut members: Vec<u64>) -> Result<Self> {
        members.sort_unstable();
        members.dedup();
        if members.first() == Some(&0) {
            return Err(WittError::NotDivisorClosed("contains 0".into()));
        }
        let set = TruncationSet { members };
        for &n in &set.members {
            if let Some(d) = divisors(n).into_iter().find(|d| !set.contains(*d)) {
                return Err(WittError::NotDivisorClosed(format!(
                    "{n} is present but its divisor {d} is not"
                )));
            }
        }
        Ok(set)
    }

    pub fn empty() -> Self {
        TruncationSet::default()
    }

    pub fn divisors_of(n: u64) -> Self {
        TruncationSet { members: divisors(n) }
    }

    /// `{1, ..., n}`.
    pub fn initial_segment(n: u64) -> Self {
        TruncationSet { members: (1..=n).collect() }
    }

    /// `{1, p, ..., p^(n-1)}`.
    pub fn p_typical(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(WittError::NotPrime(p));
        }
        Ok(TruncationSet { members: (0..n).map(|i| p.pow(i)).collect() })
    }

    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn largest(&self) -> Option<u64> {
        self.members.last().copied()
    }

    pub fn contains(&self, n: u64) -> bool {
        self.members.binary_search(&n).is_ok()
    }

    /// Position of `n` in the ascending member list.
    pub fn index_of(&self, n: u64) -> Option<usize> {
        self.members.binary_search(&n).ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.members.iter().copied()
    }

    /// `S/n = { d : n·d ∈ S }`.
    pub fn quotient(&self, n: u64) -> Self {
        assert!(n >= 1, "quotient by zero");
        TruncationSet {
            members: self.members.iter().filter(|&&m| m % n == 0).map(|&m| m / n).collect(),
        }
    }

    /// `{ d : e·d ∈ S for every e ∈ T }`, the largest set `U` with
    /// `U ⊆ S/e` for all `e ∈ T`.
    pub fn quotient_by_set(&self, t: &TruncationSet) -> Self {
        TruncationSet {
            members: self
                .members
                .iter()
                .copied()
                .filter(|&d| t.iter().all(|e| self.contains(e * d)))
                .collect(),
        }
    }

    pub fn is_subset(&self, other: &TruncationSet) -> bool {
        self.members.iter().all(|&n| other.contains(n))
    }

    pub fn intersection(&self, other: &TruncationSet) -> Self {
        TruncationSet {
            members: self.members.iter().copied().filter(|&n| other.contains(n)).collect(),
        }
    }

    /// Divisor-closed subsets, enumerated by choosing which maximal
    /// elements to drop. Only intended for small sets.
    pub fn subsets(&self) -> Vec<TruncationSet> {
        let n = self.members.len();
        assert!(n <= 20, "too many subsets to enumerate");
        let mut out = Vec::new();
        for mask in 0u32..(1 << n) {
            let members: Vec<u64> =
                (0..n).filter(|i| mask & (1 << i) != 0).map(|i| self.members[i]).collect();
            if let Ok(s) = TruncationSet::new(members) {
                out.push(s);
            }
        }
        out
    }

    /// Parses `div24`, `seg16`, `ptyp(2,4)` or an explicit `{1,2,3,6}`.
    pub fn parse(text: &str) -> Result<Self> {
        let s = text.trim();
        let number = |t: &str| -> Result<u64> {
            t.trim().parse::<u64>().map_err(|_| WittError::parse(format!("bad integer {t:?} in {s:?}")))
        };
        if let Some(rest) = s.strip_prefix("div") {
            let n = number(rest)?;
            if n == 0 {
                return Err(WittError::parse("div0"));
            }
            Ok(TruncationSet::divisors_of(n))
        } else if let Some(rest) = s.strip_prefix("seg") {
            Ok(TruncationSet::initial_segment(number(rest)?))
        } else if let Some(rest) = s.strip_prefix("ptyp(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| WittError::parse(s))?;
            let (p, n) = inner.split_once(',').ok_or_else(|| WittError::parse(s))?;
            let n = u32::try_from(number(n)?).map_err(|_| WittError::parse(s))?;
            TruncationSet::p_typical(number(p)?, n)
        } else if let Some(inner) = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            if inner.trim().is_empty() {
                return Ok(TruncationSet::empty());
            }
            let members = inner.split(',').map(number).collect::<Result<Vec<_>>>()?;
            TruncationSet::new(members)
        } else {
            Err(WittError::parse(format!("unrecognised truncation set {s:?}")))
        }
    }
}

impl fmt::Display for TruncationSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, n) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{n}")?;
        }
        write!(f, "}}")
    }
}

impl std::str::FromStr for TruncationSet {
    type Err = WittError;

    fn from_str(s: &str) -> Result<Self> {
        TruncationSet::parse(s)
    }
}

impl Serialize for TruncationSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.members.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TruncationSet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let members = Vec::<u64>::deserialize(deserializer)?;
        TruncationSet::new(members).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> TruncationSet {
        TruncationSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn constructors() {
        assert_eq!(TruncationSet::divisors_of(12).members(), &[1, 2, 3, 4, 6, 12]);
        assert_eq!(TruncationSet::divisors_of(1).members(), &[1]);
        assert_eq!(TruncationSet::divisors_of(8).members(), &[1, 2, 4, 8]);
        assert_eq!(TruncationSet::p_typical(2, 3).unwrap().members(), &[1, 2, 4]);
        assert_eq!(TruncationSet::p_typical(3, 1).unwrap().members(), &[1]);
        assert_eq!(TruncationSet::p_typical(5, 2).unwrap().members(), &[1, 5]);
        assert_eq!(TruncationSet::p_typical(4, 2), Err(WittError::NotPrime(4)));
        assert_eq!(TruncationSet::initial_segment(4).members(), &[1, 2, 3, 4]);
    }

    #[test]
    fn quotient_examples() {
        let s = TruncationSet::divisors_of(12);
        // direct scan: d ∈ S/2 iff 2d ∈ S
        let scanned: Vec<u64> = (1..=12).filter(|d| s.contains(2 * d)).collect();
        assert_eq!(scanned, vec![1, 2, 3, 6]);
        assert_eq!(s.quotient(2).members(), &[1, 2, 3, 6]);
        assert_eq!(s.quotient(1), s);
        assert!(set(&[1, 2, 4]).quotient(3).is_empty());
    }

    #[test]
    fn rejects_non_closed() {
        assert!(matches!(TruncationSet::new(vec![1, 4]), Err(WittError::NotDivisorClosed(_))));
        assert!(matches!(TruncationSet::new(vec![2]), Err(WittError::NotDivisorClosed(_))));
        assert!(TruncationSet::new(vec![]).unwrap().is_empty());
    }

    #[test]
    fn parse_forms() {
        assert_eq!(TruncationSet::parse("div24").unwrap(), TruncationSet::divisors_of(24));
        assert_eq!(TruncationSet::parse("seg16").unwrap(), TruncationSet::initial_segment(16));
        assert_eq!(TruncationSet::parse("ptyp(2,4)").unwrap().members(), &[1, 2, 4, 8]);
        assert_eq!(TruncationSet::parse("{1,2,3,6}").unwrap().members(), &[1, 2, 3, 6]);
        assert_eq!(TruncationSet::parse("{}").unwrap(), TruncationSet::empty());
        assert!(TruncationSet::parse("{1,6}").is_err());
        assert!(TruncationSet::parse("nonsense").is_err());
        let s = TruncationSet::divisors_of(18);
        assert_eq!(TruncationSet::parse(&s.to_string()).unwrap(), s);
    }

    #[test]
    fn quotient_by_set_is_intersection_of_quotients() {
        let s = set(&[1, 2, 3]);
        assert_eq!(s.quotient_by_set(&set(&[1, 2, 3])).members(), &[1]);
        let s = TruncationSet::divisors_of(8);
        assert_eq!(s.quotient_by_set(&TruncationSet::divisors_of(4)).members(), &[1, 2]);
    }

    #[test]
    fn subsets_are_closed() {
        let subs = TruncationSet::divisors_of(4).subsets();
        assert_eq!(subs.len(), 4); // {}, {1}, {1,2}, {1,2,4}
    }
}
