use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{CoxeterDatum, GroupElement, SimpleSubset};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AutLevel {
    /// Preserves the Cartan matrix, hence acts on the root system.
    Dynkin,
    /// Preserves only the Coxeter matrix.
    Coxeter,
}

/// A bijection of the simple reflections preserving the Coxeter (and, at
/// Dynkin level, the Cartan) matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiagramAut {
    node_map: Vec<usize>,
    level: AutLevel,
}

impl DiagramAut {
    pub fn identity(rank: usize) -> Self {
        DiagramAut {
            node_map: (0..rank).collect(),
            level: AutLevel::Dynkin,
        }
    }

    /// Validates `node_map` against the datum and records the finest level it
    /// satisfies.
    pub fn new(datum: &CoxeterDatum, node_map: Vec<usize>) -> Result<Self> {
        let n = datum.rank();
        let mut seen = vec![false; n];
        if node_map.len() != n || node_map.iter().any(|&i| i >= n || std::mem::replace(&mut seen[i], true)) {
            return Err(Error::Parse(format!("{node_map:?} is not a permutation of the {n} nodes")));
        }
        let a = datum.cartan();
        let m = datum.coxeter_matrix();
        let preserves = |x: &[Vec<i32>]| (0..n).all(|i| (0..n).all(|j| x[node_map[i]][node_map[j]] == x[i][j]));
        if preserves(a) {
            return Ok(DiagramAut { node_map, level: AutLevel::Dynkin });
        }
        if (0..n).all(|i| (0..n).all(|j| m[node_map[i]][node_map[j]] == m[i][j])) {
            return Ok(DiagramAut { node_map, level: AutLevel::Coxeter });
        }
        Err(Error::Parse(format!("{node_map:?} does not preserve the Coxeter matrix")))
    }

    /// `"id"`, `"flip"` (the unique non-trivial Dynkin automorphism of order
    /// two fixing the most nodes), `"triality"` (D4 order three), or an explicit
    /// 1-based image list such as `"3,2,1"`.
    pub fn named(datum: &CoxeterDatum, name: &str) -> Result<Self> {
        let name = name.trim();
        match name {
            "" | "id" | "identity" => Ok(DiagramAut::identity(datum.rank())),
            "flip" | "triality" => {
                let want = if name == "flip" { 2 } else { 3 };
                datum
                    .diagram_automorphisms(AutLevel::Dynkin)
                    .into_iter()
                    .filter(|e| e.order() == want)
                    .max_by_key(|e| (e.fixed_points(), std::cmp::Reverse(e.node_map.clone())))
                    .ok_or_else(|| Error::Parse(format!("{} has no Dynkin automorphism {name:?}", datum.name())))
            }
            explicit => {
                let map = explicit
                    .split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| {
                        t.trim_start_matches(['s', 'S'])
                            .parse::<usize>()
                            .ok()
                            .filter(|&i| i >= 1)
                            .map(|i| i - 1)
                            .ok_or_else(|| Error::Parse(format!("bad node {t:?}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                DiagramAut::new(datum, map)
            }
        }
    }

    pub fn node_map(&self) -> &[usize] {
        &self.node_map
    }

    pub fn level(&self) -> AutLevel {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.node_map.len()
    }

    pub fn apply_node(&self, i: usize) -> usize {
        self.node_map[i]
    }

    pub fn apply_subset(&self, j: SimpleSubset) -> SimpleSubset {
        SimpleSubset::from_nodes(j.nodes().map(|i| self.node_map[i]))
    }

    pub fn preimage_subset(&self, j: SimpleSubset) -> SimpleSubset {
        self.inverse().apply_subset(j)
    }

    pub fn is_stable(&self, j: SimpleSubset) -> bool {
        self.apply_subset(j) == j
    }

    pub fn is_identity(&self) -> bool {
        self.node_map.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn fixed_points(&self) -> usize {
        self.node_map.iter().enumerate().filter(|&(i, &j)| i == j).count()
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &DiagramAut) -> DiagramAut {
        let level = if self.level == AutLevel::Dynkin && other.level == AutLevel::Dynkin {
            AutLevel::Dynkin
        } else {
            AutLevel::Coxeter
        };
        DiagramAut {
            node_map: other.node_map.iter().map(|&i| self.node_map[i]).collect(),
            level,
        }
    }

    pub fn inverse(&self) -> DiagramAut {
        let mut inv = vec![0; self.node_map.len()];
        for (i, &j) in self.node_map.iter().enumerate() {
            inv[j] = i;
        }
        DiagramAut { node_map: inv, level: self.level }
    }

    pub fn order(&self) -> usize {
        let mut k = 1;
        let mut cur = self.clone();
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }

    /// Number of orbits on `j` (which must be stable).
    pub fn orbit_count(&self, j: SimpleSubset) -> usize {
        let mut seen = SimpleSubset::EMPTY;
        let mut count = 0;
        for i in j.nodes() {
            if seen.contains(i) {
                continue;
            }
            count += 1;
            let mut x = i;
            while !seen.contains(x) {
                seen.insert(x);
                x = self.node_map[x];
            }
        }
        count
    }

    /// The induced permutation of the root set (Dynkin level only).
    pub fn root_perm(&self, datum: &CoxeterDatum) -> Option<GroupElement> {
        if self.level != AutLevel::Dynkin {
            return None;
        }
        let n = datum.rank();
        let perm = (0..datum.n_roots())
            .map(|r| {
                let beta = datum.root(r);
                let mut img = vec![0i32; n];
                for (i, &c) in beta.iter().enumerate() {
                    img[self.node_map[i]] = c;
                }
                datum.root_index(&img).map(|k| k as u16)
            })
            .collect::<Option<Vec<_>>>()?;
        Some(GroupElement::from_perm(perm))
    }

    /// The automorphism of `W` sending `s_i` to `s_{ε(i)}`.
    pub fn apply_element(&self, datum: &CoxeterDatum, w: &GroupElement) -> GroupElement {
        if let Some(p) = self.root_perm(datum) {
            return p.mul(w).mul(&p.inverse());
        }
        let word: Vec<usize> = datum.reduced_word(w).into_iter().map(|s| self.node_map[s]).collect();
        datum.from_word(&word).expect("node map stays in range")
    }
}

impl fmt::Display for DiagramAut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "id");
        }
        let imgs: Vec<String> = self.node_map.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "[{}]", imgs.join(","))
    }
}

impl CoxeterDatum {
    /// All diagram automorphisms at the given level, identity first, then in
    /// lexicographic order of node maps.
    pub fn diagram_automorphisms(&self, level: AutLevel) -> Vec<DiagramAut> {
        let n = self.rank();
        (0..n)
            .permutations(n)
            .filter_map(|p| DiagramAut::new(self, p).ok())
            .filter(|e| level == AutLevel::Coxeter || e.level == AutLevel::Dynkin)
            .collect()
    }
}
