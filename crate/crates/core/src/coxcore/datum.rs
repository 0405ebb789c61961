use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::cartan::{self, CartanType, Series};
use super::SimpleSubset;
use crate::{Error, Result};

/// Default bound on the rank accepted by [`CoxeterDatum::build_weyl`].
pub const DEFAULT_RANK_BOUND: usize = 6;

/// Largest group that [`CoxeterDatum::elements`] will enumerate.
pub const ENUMERATION_BOUND: u128 = 200_000;

/// A group element, stored as the permutation it induces on the root set.
///
/// `perm[i]` is the index of `w(β_i)`. Positive roots occupy indices
/// `0..N` and `β_{i+N} = -β_i`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    perm: Arc<[u16]>,
}

impl GroupElement {
    pub fn from_perm(perm: Vec<u16>) -> Self {
        GroupElement { perm: perm.into() }
    }

    pub fn perm(&self) -> &[u16] {
        &self.perm
    }

    /// Image of root `i`.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.perm[i] as usize
    }

    pub fn inverse(&self) -> GroupElement {
        let mut inv = vec![0u16; self.perm.len()];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p as usize] = i as u16;
        }
        GroupElement::from_perm(inv)
    }

    /// `self * other`, acting on roots as `self(other(β))`.
    pub fn mul(&self, other: &GroupElement) -> GroupElement {
        GroupElement::from_perm(other.perm.iter().map(|&j| self.perm[j as usize]).collect())
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p as usize)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement({:?})", &self.perm[..])
    }
}

/// Formats a word of 0-based simple indices as `"s2 s1"` (or `"e"`).
pub fn format_word(word: &[usize]) -> String {
    if word.is_empty() {
        "e".to_string()
    } else {
        word.iter().map(|i| format!("s{}", i + 1)).collect::<Vec<_>>().join(" ")
    }
}

/// Parses `"s2 s1"`, `"2 1"` or `"e"` into 0-based simple indices.
pub fn parse_word(s: &str) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in s.split(|c: char| c.is_whitespace() || c == ',' || c == '*' || c == '.') {
        if tok.is_empty() || tok == "e" {
            continue;
        }
        let digits = tok.trim_start_matches(['s', 'S']);
        let i: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad simple label {tok:?}")))?;
        if i == 0 {
            return Err(Error::Parse("simple labels are 1-based".into()));
        }
        out.push(i - 1);
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Component {
    pub cartan_type: CartanType,
    /// Nodes of the component, increasing.
    pub nodes: Vec<usize>,
}

/// Enumerated elements in breadth-first order over reduced words, generators
/// tried in increasing order.
pub struct WeylElements {
    elems: Vec<GroupElement>,
    index: HashMap<GroupElement, u32>,
    lengths: Vec<u32>,
    supports: Vec<SimpleSubset>,
    right_mul: Vec<u32>,
    parent: Vec<(u32, u8)>,
    rank: usize,
}

impl WeylElements {
    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn get(&self, i: usize) -> &GroupElement {
        &self.elems[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &GroupElement> {
        self.elems.iter()
    }

    pub fn index_of(&self, w: &GroupElement) -> Option<usize> {
        self.index.get(w).map(|&i| i as usize)
    }

    pub fn length(&self, i: usize) -> usize {
        self.lengths[i] as usize
    }

    /// Set of simple reflections occurring in any reduced word of element `i`.
    pub fn support(&self, i: usize) -> SimpleSubset {
        self.supports[i]
    }

    /// Index of `elem(i) * s`.
    pub fn right_mul(&self, i: usize, s: usize) -> usize {
        self.right_mul[i * self.rank + s] as usize
    }

    /// BFS parent and generator: `elem(i) = elem(parent) * s`. `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        (i != 0).then(|| (self.parent[i].0 as usize, self.parent[i].1 as usize))
    }

    /// The BFS word of element `i` (reduced, lexicographically least among
    /// BFS-discovered words).
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut w = Vec::with_capacity(self.lengths[i] as usize);
        let mut cur = i;
        while let Some((p, s)) = self.parent(cur) {
            w.push(s);
            cur = p;
        }
        w.reverse();
        w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }
}

/// A finite crystallographic root system together with its Weyl group.
pub struct CoxeterDatum {
    components: Vec<Component>,
    cartan: Vec<Vec<i32>>,
    coxeter: Vec<Vec<u32>>,
    sym_form: Vec<Vec<i64>>,
    roots: Vec<Vec<i32>>,
    norms: Vec<i64>,
    n_pos: usize,
    root_index: HashMap<Vec<i32>, usize>,
    simple_perms: Vec<GroupElement>,
    elements: OnceLock<Arc<WeylElements>>,
}

impl fmt::Debug for CoxeterDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterDatum({})", self.name())
    }
}

impl CoxeterDatum {
    /// Irreducible Weyl group of the given type, rank at most
    /// [`DEFAULT_RANK_BOUND`].
    pub fn build_weyl(series: Series, rank: usize) -> Result<Self> {
        Self::build_weyl_bounded(series, rank, DEFAULT_RANK_BOUND)
    }

    pub fn build_weyl_bounded(series: Series, rank: usize, bound: usize) -> Result<Self> {
        let ty = CartanType::new(series, rank)?;
        if rank > bound {
            return Err(Error::RankBound { rank, bound });
        }
        Self::from_types(&[ty])
    }

    /// `"B3"`, `"A1xA1"`, `"A2 x B2"`.
    pub fn parse(s: &str) -> Result<Self> {
        let types = s
            .split(['x', 'X', '×'])
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(CartanType::parse)
            .collect::<Result<Vec<_>>>()?;
        if types.is_empty() {
            return Err(Error::Parse("empty type".into()));
        }
        Self::from_types(&types)
    }

    /// Direct product of irreducible types, nodes numbered consecutively.
    pub fn from_types(types: &[CartanType]) -> Result<Self> {
        let rank: usize = types.iter().map(|t| t.rank).sum();
        let mut a = vec![vec![0i32; rank]; rank];
        let mut off = 0;
        for t in types {
            let block = t.cartan_matrix();
            for i in 0..t.rank {
                for j in 0..t.rank {
                    a[off + i][off + j] = block[i][j];
                }
            }
            off += t.rank;
        }
        Self::from_cartan(a)
    }

    /// Builds the datum of an arbitrary finite-type Cartan matrix.
    pub fn from_cartan(cartan: Vec<Vec<i32>>) -> Result<Self> {
        let rank = cartan.len();
        if rank == 0 || rank > 16 || cartan.iter().any(|r| r.len() != rank) {
            return Err(Error::NotFinite);
        }
        let comps = cartan::components(&cartan);
        let mut components = Vec::new();
        for nodes in comps {
            let cartan_type = cartan::classify(&cartan, &nodes)?;
            components.push(Component { cartan_type, nodes });
        }
        let coxeter: Vec<Vec<u32>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| if i == j { 1 } else { cartan::coxeter_entry(cartan[i][j], cartan[j][i]) })
                    .collect()
            })
            .collect();

        let simple_norms = simple_norms(&cartan, &components)?;
        let sym_form: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| simple_norms[i] * cartan[i][j] as i64 / 2).collect())
            .collect();

        // Close the simple roots under simple reflections.
        let mut positive: Vec<Vec<i32>> = Vec::new();
        let mut seen: HashMap<Vec<i32>, ()> = HashMap::new();
        let mut queue: VecDeque<Vec<i32>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone(), ());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            if beta.iter().all(|&c| c >= 0) {
                positive.push(beta.clone());
            }
            if positive.len() > 10_000 {
                return Err(Error::NotFinite);
            }
            for i in 0..rank {
                let img = reflect_simple(&cartan, i, &beta);
                if !seen.contains_key(&img) {
                    seen.insert(img.clone(), ());
                    queue.push_back(img);
                }
            }
        }
        positive.sort_by(|x, y| {
            let hx: i32 = x.iter().sum();
            let hy: i32 = y.iter().sum();
            hx.cmp(&hy).then_with(|| y.cmp(x))
        });
        let n_pos = positive.len();
        let mut roots = positive.clone();
        roots.extend(positive.iter().map(|b| b.iter().map(|c| -c).collect::<Vec<_>>()));
        if roots.len() > u16::MAX as usize {
            return Err(Error::NotFinite);
        }
        let root_index: HashMap<Vec<i32>, usize> =
            roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        let norms = roots.iter().map(|b| form(&sym_form, b, b)).collect();

        let simple_perms = (0..rank)
            .map(|i| {
                let perm = roots
                    .iter()
                    .map(|b| root_index[&reflect_simple(&cartan, i, b)] as u16)
                    .collect();
                GroupElement::from_perm(perm)
            })
            .collect();

        Ok(CoxeterDatum {
            components,
            cartan,
            coxeter,
            sym_form,
            roots,
            norms,
            n_pos,
            root_index,
            simple_perms,
            elements: OnceLock::new(),
        })
    }

    pub fn name(&self) -> String {
        self.components
            .iter()
            .map(|c| c.cartan_type.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn is_irreducible(&self) -> bool {
        self.components.len() == 1
    }

    pub fn cartan(&self) -> &[Vec<i32>] {
        &self.cartan
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn simples(&self) -> SimpleSubset {
        SimpleSubset::full(self.rank())
    }

    /// Number of positive roots.
    pub fn n_pos(&self) -> usize {
        self.n_pos
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, i: usize) -> &[i32] {
        &self.roots[i]
    }

    pub fn root_index(&self, coords: &[i32]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn negate(&self, i: usize) -> usize {
        (i + self.n_pos) % (2 * self.n_pos)
    }

    pub fn height(&self, i: usize) -> i32 {
        self.roots[i].iter().sum()
    }

    /// Squared length of root `i` (short roots of a component have norm 2).
    pub fn norm(&self, i: usize) -> i64 {
        self.norms[i]
    }

    /// Invariant symmetric form on root coordinates.
    pub fn pairing(&self, x: &[i32], y: &[i32]) -> i64 {
        form(&self.sym_form, x, y)
    }

    /// Whether root `i` lies in the span of the simple roots in `j`.
    pub fn root_in_parabolic(&self, i: usize, j: SimpleSubset) -> bool {
        self.roots[i].iter().enumerate().all(|(k, &c)| c == 0 || j.contains(k))
    }

    /// Positive roots of the parabolic subsystem `Φ_J`.
    pub fn parabolic_positive_roots(&self, j: SimpleSubset) -> Vec<usize> {
        (0..self.n_pos).filter(|&i| self.root_in_parabolic(i, j)).collect()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::from_perm((0..self.roots.len() as u16).collect())
    }

    pub fn simple(&self, i: usize) -> &GroupElement {
        &self.simple_perms[i]
    }

    pub fn from_word(&self, word: &[usize]) -> Result<GroupElement> {
        let mut w = self.identity();
        for &s in word {
            if s >= self.rank() {
                return Err(Error::Parse(format!("simple label s{} out of range", s + 1)));
            }
            w = w.mul(&self.simple_perms[s]);
        }
        Ok(w)
    }

    pub fn parse_element(&self, s: &str) -> Result<GroupElement> {
        self.from_word(&parse_word(s)?)
    }

    /// Number of positive roots sent to negative roots.
    pub fn length(&self, w: &GroupElement) -> usize {
        w.perm()[..self.n_pos].iter().filter(|&&p| p as usize >= self.n_pos).count()
    }

    /// `ℓ(ws) < ℓ(w)`.
    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        w.apply(s) >= self.n_pos
    }

    /// `ℓ(sw) < ℓ(w)`.
    pub fn is_left_descent(&self, w: &GroupElement, s: usize) -> bool {
        let pre = w.perm().iter().position(|&p| p as usize == s).unwrap();
        pre >= self.n_pos
    }

    /// A reduced word, read off by stripping right descents (smallest first).
    pub fn reduced_word(&self, w: &GroupElement) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = w.clone();
        'outer: loop {
            for s in 0..self.rank() {
                if self.is_right_descent(&cur, s) {
                    word.push(s);
                    cur = cur.mul(&self.simple_perms[s]);
                    continue 'outer;
                }
            }
            break;
        }
        word.reverse();
        word
    }

    pub fn word_string(&self, w: &GroupElement) -> String {
        format_word(&self.reduced_word(w))
    }

    /// Unique element of minimal length in `W_J w W_K`.
    pub fn min_double_coset_rep(&self, j: SimpleSubset, w: &GroupElement, k: SimpleSubset) -> GroupElement {
        let mut cur = w.clone();
        'outer: loop {
            for s in j.nodes() {
                if self.is_left_descent(&cur, s) {
                    cur = self.simple_perms[s].mul(&cur);
                    continue 'outer;
                }
            }
            for s in k.nodes() {
                if self.is_right_descent(&cur, s) {
                    cur = cur.mul(&self.simple_perms[s]);
                    continue 'outer;
                }
            }
            return cur;
        }
    }

    /// `w ∈ ^J W`.
    pub fn is_left_minimal(&self, j: SimpleSubset, w: &GroupElement) -> bool {
        let inv = w.inverse();
        j.nodes().all(|s| inv.apply(s) < self.n_pos)
    }

    /// `w ∈ W^K`.
    pub fn is_right_minimal(&self, w: &GroupElement, k: SimpleSubset) -> bool {
        k.nodes().all(|s| w.apply(s) < self.n_pos)
    }

    /// With `k = None` returns `^J W`; otherwise the minimal double coset
    /// representatives `^J W^K`. Output follows the enumeration order.
    pub fn coset_reps(&self, j: SimpleSubset, k: Option<SimpleSubset>) -> Result<Vec<GroupElement>> {
        let els = self.elements()?;
        Ok(els
            .iter()
            .filter(|w| self.is_left_minimal(j, w) && k.map_or(true, |k| self.is_right_minimal(w, k)))
            .cloned()
            .collect())
    }

    /// `{ w s w⁻¹ : s ∈ J }` when every conjugate is simple.
    pub fn ad_simple_subset(&self, w: &GroupElement, j: SimpleSubset) -> Option<SimpleSubset> {
        let mut out = SimpleSubset::EMPTY;
        for s in j.nodes() {
            let img = w.apply(s);
            let pos = if img < self.n_pos { img } else { img - self.n_pos };
            if pos >= self.rank() {
                return None;
            }
            out.insert(pos);
        }
        Some(out)
    }

    /// `{ s ∈ J : w⁻¹ s w ∈ K }`, the simple part of `J ∩ Ad(w)K`, for `w`
    /// sending positive roots of `K` to positive roots.
    pub fn intersect_conjugate(&self, j: SimpleSubset, w: &GroupElement, k: SimpleSubset) -> SimpleSubset {
        let inv = w.inverse();
        SimpleSubset::from_nodes(j.nodes().filter(|&s| {
            let pre = inv.apply(s);
            let pos = if pre < self.n_pos { pre } else { pre - self.n_pos };
            pos < self.rank() && k.contains(pos)
        }))
    }

    /// The reflection in root `i`.
    pub fn reflection(&self, i: usize) -> GroupElement {
        let beta = &self.roots[i];
        let bb = self.pairing(beta, beta);
        let perm = self
            .roots
            .iter()
            .map(|g| {
                let c = 2 * self.pairing(g, beta) / bb;
                let img: Vec<i32> = g.iter().zip(beta).map(|(x, y)| x - (c as i32) * y).collect();
                self.root_index[&img] as u16
            })
            .collect();
        GroupElement::from_perm(perm)
    }

    /// Order of the Weyl group from the degree formula.
    pub fn expected_order(&self) -> u128 {
        self.components.iter().map(|c| c.cartan_type.group_order()).product()
    }

    /// Enumerates all elements (cached). Refuses groups larger than
    /// [`ENUMERATION_BOUND`].
    pub fn elements(&self) -> Result<Arc<WeylElements>> {
        if let Some(e) = self.elements.get() {
            return Ok(e.clone());
        }
        let order = self.expected_order();
        if order > ENUMERATION_BOUND {
            return Err(Error::OrderBound {
                order: order.min(usize::MAX as u128) as usize,
                bound: ENUMERATION_BOUND as usize,
            });
        }
        let e = Arc::new(self.enumerate());
        Ok(self.elements.get_or_init(|| e).clone())
    }

    fn enumerate(&self) -> WeylElements {
        let rank = self.rank();
        let id = self.identity();
        let mut elems = vec![id.clone()];
        let mut index: HashMap<GroupElement, u32> = HashMap::new();
        index.insert(id, 0);
        let mut lengths = vec![0u32];
        let mut supports = vec![SimpleSubset::EMPTY];
        let mut parent = vec![(0u32, u8::MAX)];
        let mut k = 0;
        while k < elems.len() {
            for s in 0..rank {
                if self.is_right_descent(&elems[k], s) {
                    continue;
                }
                let y = elems[k].mul(&self.simple_perms[s]);
                if !index.contains_key(&y) {
                    index.insert(y.clone(), elems.len() as u32);
                    elems.push(y);
                    lengths.push(lengths[k] + 1);
                    let mut sup = supports[k];
                    sup.insert(s);
                    supports.push(sup);
                    parent.push((k as u32, s as u8));
                }
            }
            k += 1;
        }
        let mut right_mul = vec![0u32; elems.len() * rank];
        for (i, w) in elems.iter().enumerate() {
            for s in 0..rank {
                right_mul[i * rank + s] = index[&w.mul(&self.simple_perms[s])];
            }
        }
        WeylElements {
            elems,
            index,
            lengths,
            supports,
            right_mul,
            parent,
            rank,
        }
    }

    /// Enumeration indices of the elements of `W_J`.
    pub fn parabolic_indices(&self, j: SimpleSubset) -> Result<Vec<usize>> {
        let els = self.elements()?;
        Ok((0..els.len()).filter(|&i| els.support(i).is_subset(j)).collect())
    }

    /// Order of `W_J`, computed by enumeration.
    pub fn parabolic_order(&self, j: SimpleSubset) -> Result<usize> {
        Ok(self.parabolic_indices(j)?.len())
    }

    /// The longest element of `W_J`.
    pub fn longest_element(&self, j: SimpleSubset) -> GroupElement {
        // Multiply on the right until every s in J is a right descent.
        let mut w = self.identity();
        'outer: loop {
            for s in j.nodes() {
                if !self.is_right_descent(&w, s) {
                    w = w.mul(&self.simple_perms[s]);
                    continue 'outer;
                }
            }
            return w;
        }
    }
}

fn form(sym: &[Vec<i64>], x: &[i32], y: &[i32]) -> i64 {
    let mut acc = 0i64;
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            acc += xi as i64 * yj as i64 * sym[i][j];
        }
    }
    acc
}

fn reflect_simple(cartan: &[Vec<i32>], i: usize, beta: &[i32]) -> Vec<i32> {
    let c: i32 = (0..beta.len()).map(|j| cartan[i][j] * beta[j]).sum();
    let mut out = beta.to_vec();
    out[i] -= c;
    out
}

/// Squared lengths of the simple roots, normalised so that the short roots of
/// each component have norm 2.
fn simple_norms(cartan: &[Vec<i32>], components: &[Component]) -> Result<Vec<i64>> {
    let n = cartan.len();
    let mut norms = vec![0i64; n];
    for comp in components {
        let first = comp.nodes[0];
        norms[first] = 6;
        let mut stack = vec![first];
        while let Some(i) = stack.pop() {
            for &j in &comp.nodes {
                if norms[j] == 0 && cartan[i][j] != 0 {
                    let num = norms[i] * cartan[i][j] as i64;
                    let den = cartan[j][i] as i64;
                    if num % den != 0 {
                        return Err(Error::NotFinite);
                    }
                    norms[j] = num / den;
                    stack.push(j);
                }
            }
        }
        let g = comp.nodes.iter().fold(0i64, |g, &i| gcd(g, norms[i]));
        for &i in &comp.nodes {
            norms[i] = norms[i] / g * 2;
        }
    }
    Ok(norms)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}
