use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A subset of the simple reflections, stored as a bit mask over node
/// indices `0..rank`. Displayed with 1-based labels `s1, s2, ...`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SimpleSubset(pub u32);

impl SimpleSubset {
    pub const EMPTY: SimpleSubset = SimpleSubset(0);

    pub fn full(rank: usize) -> Self {
        SimpleSubset(((1u64 << rank) - 1) as u32)
    }

    pub fn from_nodes<I: IntoIterator<Item = usize>>(nodes: I) -> Self {
        SimpleSubset(nodes.into_iter().fold(0, |m, i| m | (1 << i)))
    }

    pub fn singleton(i: usize) -> Self {
        SimpleSubset(1 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: SimpleSubset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 | other.0)
    }

    pub fn intersection(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 & other.0)
    }

    pub fn difference(self, other: SimpleSubset) -> Self {
        SimpleSubset(self.0 & !other.0)
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn nodes(self) -> impl Iterator<Item = usize> {
        let m = self.0;
        (0..32).filter(move |i| m >> i & 1 == 1)
    }

    /// All subsets of `self`, in increasing mask order.
    pub fn subsets(self) -> Vec<SimpleSubset> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u32;
        loop {
            out.push(SimpleSubset(sub));
            if sub == self.0 {
                break;
            }
            sub = (sub.wrapping_sub(self.0)) & self.0;
        }
        out.sort_unstable();
        out
    }

    pub fn within(self, rank: usize) -> bool {
        self.is_subset(SimpleSubset::full(rank))
    }

    /// Parses `"s1 s3"`, `"1,3"`, `"{s1,s3}"`, `""` or `"∅"`.
    pub fn parse(s: &str) -> Result<Self> {
        let cleaned: String = s
            .chars()
            .map(|c| if c == '{' || c == '}' || c == ',' { ' ' } else { c })
            .collect();
        let mut out = SimpleSubset::EMPTY;
        for tok in cleaned.split_whitespace() {
            if tok == "∅" || tok.eq_ignore_ascii_case("empty") {
                continue;
            }
            let digits = tok.trim_start_matches(['s', 'S']);
            let i: usize = digits
                .parse()
                .map_err(|_| Error::Parse(format!("bad simple label {tok:?}")))?;
            if i == 0 || i > 32 {
                return Err(Error::Parse(format!("simple labels are 1-based, got {tok:?}")));
            }
            out.insert(i - 1);
        }
        Ok(out)
    }
}

impl fmt::Display for SimpleSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "∅");
        }
        let labels: Vec<String> = self.nodes().map(|i| format!("s{}", i + 1)).collect();
        write!(f, "{{{}}}", labels.join(","))
    }
}
