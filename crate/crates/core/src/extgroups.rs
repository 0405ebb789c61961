//! Reflection classes, the affine datum `(Ĩ, π)`, the group `Ω`, subsystem
//! groups `W^{(K)}`, their extensions `W^{(K)}Γ` and quasi-rationality
//! certificates for the characters of such extensions.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::coxcore::{AutLevel, CoxeterDatum, DiagramAut, GroupElement};
use crate::cyclotomic::Cyclotomic;
use crate::grouptab::{character_table, weyl_action, FiniteGroup};
use crate::par::{self, Execution};
use crate::{Error, Result};

/// Default cap on the order of constructed extensions.
pub const EXTENSION_BOUND: usize = 2500;

/// A reflection `s_β` for a positive root `β`.
#[derive(Clone, Debug)]
pub struct Reflection {
    pub root: usize,
    pub element: GroupElement,
    pub length: usize,
    pub factor: usize,
}

/// All reflections of `W` partitioned into `W`-conjugacy classes.
#[derive(Clone, Debug)]
pub struct ReflectionSet {
    pub reflections: Vec<Reflection>,
    /// Indices into `reflections`, sorted by factor then by root.
    pub classes: Vec<Vec<usize>>,
    pub class_factor: Vec<usize>,
}

impl ReflectionSet {
    pub fn class_of_root(&self, root: usize) -> Option<usize> {
        self.classes
            .iter()
            .position(|c| c.iter().any(|&r| self.reflections[r].root == root))
    }

    pub fn classes_of_factor(&self, z: usize) -> Vec<usize> {
        (0..self.classes.len()).filter(|&c| self.class_factor[c] == z).collect()
    }
}

fn positive_line(datum: &CoxeterDatum, r: usize) -> usize {
    if datum.is_positive(r) {
        r
    } else {
        datum.negate(r)
    }
}

fn factor_of_root(datum: &CoxeterDatum, r: usize) -> usize {
    let node = datum.root(r).iter().position(|&c| c != 0).expect("roots are nonzero");
    datum
        .components()
        .iter()
        .position(|c| c.nodes.contains(&node))
        .expect("every node lies in a component")
}

pub fn reflections_and_classes(datum: &CoxeterDatum) -> ReflectionSet {
    let n_pos = datum.n_pos();
    let mut class_id = vec![usize::MAX; n_pos];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for start in 0..n_pos {
        if class_id[start] != usize::MAX {
            continue;
        }
        let c = classes.len();
        let mut orbit = vec![start];
        class_id[start] = c;
        let mut head = 0;
        while head < orbit.len() {
            let r = orbit[head];
            head += 1;
            for s in 0..datum.rank() {
                let img = positive_line(datum, datum.simple(s).apply(r));
                if class_id[img] == usize::MAX {
                    class_id[img] = c;
                    orbit.push(img);
                }
            }
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    let reflections: Vec<Reflection> = (0..n_pos)
        .map(|r| {
            let element = datum.reflection(r);
            let length = datum.length(&element);
            Reflection {
                root: r,
                element,
                length,
                factor: factor_of_root(datum, r),
            }
        })
        .collect();
    let mut keyed: Vec<(usize, Vec<usize>)> =
        classes.into_iter().map(|c| (reflections[c[0]].factor, c)).collect();
    keyed.sort();
    ReflectionSet {
        class_factor: keyed.iter().map(|k| k.0).collect(),
        classes: keyed.into_iter().map(|k| k.1).collect(),
        reflections,
    }
}

/// One reflection class per irreducible factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SpecialSubset {
    /// Class index (into [`ReflectionSet::classes`]) for each factor.
    pub classes: Vec<usize>,
}

impl SpecialSubset {
    pub fn contains_root(&self, set: &ReflectionSet, root: usize) -> bool {
        set.class_of_root(root).is_some_and(|c| self.classes.contains(&c))
    }
}

pub fn special_subsets(datum: &CoxeterDatum, set: &ReflectionSet) -> Vec<SpecialSubset> {
    let mut out = vec![Vec::new()];
    for z in 0..datum.components().len() {
        let choices = set.classes_of_factor(z);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                choices.iter().map(move |&c| {
                    let mut p = prefix.clone();
                    p.push(c);
                    p
                })
            })
            .collect();
    }
    out.into_iter().map(|classes| SpecialSubset { classes }).collect()
}

/// The special subset whose classes contain the highest root of each factor.
pub fn default_special(datum: &CoxeterDatum, set: &ReflectionSet) -> SpecialSubset {
    let classes = (0..datum.components().len())
        .map(|z| {
            let top = (0..datum.n_pos())
                .filter(|&r| factor_of_root(datum, r) == z)
                .max_by_key(|&r| datum.height(r))
                .expect("factors have roots");
            set.class_of_root(top).expect("positive roots have classes")
        })
        .collect();
    SpecialSubset { classes }
}

/// `Ĩ = I ⊔ {ω}` with `ω` numbered `rank`, and `π: Ĩ → W`.
#[derive(Clone, Debug)]
pub struct AffineDatum {
    pub datum: Arc<CoxeterDatum>,
    pub reflections: ReflectionSet,
    pub special: SpecialSubset,
    /// Positive root `α̃`, highest in the length class of the special subset.
    pub top_root: usize,
    pub pi: Vec<GroupElement>,
    /// Root index of `α_s` for `s ∈ I` and of `−α̃` for `ω`.
    pub ext_roots: Vec<usize>,
}

impl AffineDatum {
    pub fn omega_node(&self) -> usize {
        self.datum.rank()
    }

    pub fn n_nodes(&self) -> usize {
        self.datum.rank() + 1
    }

    pub fn node_name(&self, x: usize) -> String {
        if x == self.omega_node() {
            "ω".into()
        } else {
            format!("s{}", x + 1)
        }
    }

    pub fn pi_injective(&self) -> bool {
        let set: HashSet<&GroupElement> = self.pi.iter().collect();
        set.len() == self.pi.len()
    }
}

fn dominates(a: &[i32], b: &[i32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x >= y)
}

pub fn affine_datum(datum: Arc<CoxeterDatum>, special: Option<SpecialSubset>) -> Result<AffineDatum> {
    if !datum.is_irreducible() {
        return Err(Error::Reducible);
    }
    let reflections = reflections_and_classes(&datum);
    let special = special.unwrap_or_else(|| default_special(&datum, &reflections));
    let class = &reflections.classes[special.classes[0]];
    let roots: Vec<usize> = class.iter().map(|&i| reflections.reflections[i].root).collect();
    let top = *roots.iter().max_by_key(|&&r| datum.height(r)).expect("classes are nonempty");
    if !roots.iter().all(|&r| dominates(datum.root(top), datum.root(r))) {
        return Err(Error::InvalidParam("no unique highest root in the special class".into()));
    }
    let top_len = reflections.reflections[top].length;
    let longest = roots.iter().filter(|&&r| reflections.reflections[r].length == top_len).count();
    if longest != 1 || roots.iter().any(|&r| reflections.reflections[r].length > top_len) {
        return Err(Error::InvalidParam("no unique reflection of maximal length in the special class".into()));
    }
    let mut pi: Vec<GroupElement> = (0..datum.rank()).map(|s| datum.simple(s).clone()).collect();
    pi.push(reflections.reflections[top].element.clone());
    let mut ext_roots: Vec<usize> = (0..datum.rank()).collect();
    ext_roots.push(datum.negate(top));
    Ok(AffineDatum {
        datum,
        reflections,
        special,
        top_root: top,
        pi,
        ext_roots,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum OmegaLevel {
    /// `w(α_x) = α_{σ(x)}` on extended roots.
    Root,
    /// `w π(x) w⁻¹ = π(σ(x))`.
    Reflection,
}

/// A permutation of `Ĩ` with an element of `W` realizing it.
#[derive(Clone, Debug)]
pub struct OmegaElement {
    pub perm: Vec<usize>,
    pub witness: GroupElement,
}

#[derive(Clone, Debug)]
pub struct Omega {
    pub level: OmegaLevel,
    /// Identity first, then lexicographic in `perm`.
    pub elements: Vec<OmegaElement>,
}

fn compose_perm(a: &[usize], b: &[usize]) -> Vec<usize> {
    b.iter().map(|&i| a[i]).collect()
}

fn invert_perm(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn perm_order(a: &[usize]) -> usize {
    let id: Vec<usize> = (0..a.len()).collect();
    let mut cur = a.to_vec();
    let mut k = 1;
    while cur != id {
        cur = compose_perm(a, &cur);
        k += 1;
    }
    k
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum OmegaShape {
    Cyclic(usize),
    Klein,
    Other(usize),
}

impl fmt::Display for OmegaShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaShape::Cyclic(n) => write!(f, "Z/{n}"),
            OmegaShape::Klein => write!(f, "Z/2 x Z/2"),
            OmegaShape::Other(n) => write!(f, "non-cyclic of order {n}"),
        }
    }
}

impl Omega {
    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.elements.iter().position(|e| e.perm == perm)
    }

    pub fn shape(&self) -> OmegaShape {
        let n = self.order();
        let orders: Vec<usize> = self.elements.iter().map(|e| perm_order(&e.perm)).collect();
        if orders.contains(&n) {
            OmegaShape::Cyclic(n)
        } else if n == 4 && orders.iter().all(|&o| o <= 2) {
            OmegaShape::Klein
        } else {
            OmegaShape::Other(n)
        }
    }

    /// Elements `σ` with `σ(K) = K`.
    pub fn stabilizer(&self, k: &[usize]) -> Vec<usize> {
        let set: HashSet<usize> = k.iter().copied().collect();
        (0..self.order())
            .filter(|&i| k.iter().all(|x| set.contains(&self.elements[i].perm[*x])))
            .collect()
    }
}

/// Exhaustive search over `w ∈ W`.
pub fn omega(aff: &AffineDatum, level: OmegaLevel) -> Result<Omega> {
    let d = &aff.datum;
    let els = d.elements()?;
    let n = aff.n_nodes();
    let mut found: BTreeMap<Vec<usize>, GroupElement> = BTreeMap::new();
    match level {
        OmegaLevel::Root => {
            let pos: HashMap<usize, usize> = aff.ext_roots.iter().enumerate().map(|(x, &r)| (r, x)).collect();
            for w in els.iter() {
                let perm: Option<Vec<usize>> = aff.ext_roots.iter().map(|&r| pos.get(&w.apply(r)).copied()).collect();
                if let Some(p) = perm {
                    found.entry(p).or_insert_with(|| w.clone());
                }
            }
        }
        OmegaLevel::Reflection => {
            let id: Vec<usize> = (0..n).collect();
            for w in els.iter() {
                let winv = w.inverse();
                let images: Vec<GroupElement> = aff.pi.iter().map(|p| w.mul(p).mul(&winv)).collect();
                if aff.pi_injective() {
                    let perm: Option<Vec<usize>> =
                        images.iter().map(|g| aff.pi.iter().position(|p| p == g)).collect();
                    if let Some(p) = perm {
                        found.entry(p).or_insert_with(|| w.clone());
                    }
                } else {
                    for p in itertools::Itertools::permutations(id.iter().copied(), n) {
                        if (0..n).all(|x| images[x] == aff.pi[p[x]]) {
                            found.entry(p).or_insert_with(|| w.clone());
                        }
                    }
                }
            }
        }
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut elements: Vec<OmegaElement> = found
        .into_iter()
        .map(|(perm, witness)| OmegaElement { perm, witness })
        .collect();
    elements.sort_by_key(|e| (e.perm != identity, e.perm.clone()));
    Ok(Omega { level, elements })
}

/// Extends a diagram automorphism of `I` to `Ĩ` by fixing `ω`.
pub fn extend_aut(aff: &AffineDatum, c: &DiagramAut) -> Vec<usize> {
    let mut p = c.node_map().to_vec();
    p.push(aff.omega_node());
    p
}

/// `c(σ) = c ∘ σ ∘ c⁻¹` on `Ĩ`.
pub fn twist(aff: &AffineDatum, c: &DiagramAut, sigma: &[usize]) -> Vec<usize> {
    let ce = extend_aut(aff, c);
    compose_perm(&compose_perm(&ce, sigma), &invert_perm(&ce))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrichotomyCase {
    /// `Ω` cyclic, `c(σ) = σ`.
    CyclicFixed,
    /// `Ω` cyclic, `c(σ) = σ⁻¹`.
    CyclicInverted,
    /// `Ω ≅ Z/2 × Z/2`.
    Klein,
}

impl TrichotomyCase {
    pub fn roman(self) -> &'static str {
        match self {
            TrichotomyCase::CyclicFixed => "i",
            TrichotomyCase::CyclicInverted => "ii",
            TrichotomyCase::Klein => "iii",
        }
    }
}

/// Which case holds for `Ω` with the action of `c`; `None` if none does.
/// Cyclic groups of exponent at most two satisfy both (i) and (ii); (i) is
/// reported then.
pub fn trichotomy(aff: &AffineDatum, om: &Omega, c: &DiagramAut) -> Result<Option<TrichotomyCase>> {
    let mut fixed = true;
    let mut inverted = true;
    for e in &om.elements {
        let t = twist(aff, c, &e.perm);
        if om.index_of(&t).is_none() {
            return Err(Error::ExtensionPrecondition(format!("c does not preserve Ω: {:?}", e.perm)));
        }
        fixed &= t == e.perm;
        inverted &= t == invert_perm(&e.perm);
    }
    Ok(match om.shape() {
        OmegaShape::Klein => Some(TrichotomyCase::Klein),
        OmegaShape::Cyclic(_) if fixed => Some(TrichotomyCase::CyclicFixed),
        OmegaShape::Cyclic(_) if inverted => Some(TrichotomyCase::CyclicInverted),
        _ => None,
    })
}

/// `W^{(K)} = ⟨π(K)⟩` as a Coxeter group on the nodes of `K` (in increasing
/// order, `ω` last).
#[derive(Clone, Debug)]
pub struct Subsystem {
    pub nodes: Vec<usize>,
    pub datum: Arc<CoxeterDatum>,
    /// Image in `W` of each element of `datum`.
    pub embedding: Vec<GroupElement>,
    /// Special subset `𝒳^K` of the subsystem.
    pub special: SpecialSubset,
}

impl Subsystem {
    pub fn order(&self) -> usize {
        self.embedding.len()
    }

    /// Local node of `x ∈ K`.
    pub fn local(&self, x: usize) -> Option<usize> {
        self.nodes.iter().position(|&y| y == x)
    }

    /// Restriction of a permutation of `Ĩ` preserving `K` to a diagram
    /// automorphism of the subsystem.
    pub fn restrict(&self, perm: &[usize]) -> Result<DiagramAut> {
        let map = self
            .nodes
            .iter()
            .map(|&x| self.local(perm[x]))
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::ExtensionPrecondition("permutation does not preserve K".into()))?;
        let aut = DiagramAut::new(&self.datum, map)?;
        if aut.level() != AutLevel::Dynkin {
            return Err(Error::ExtensionPrecondition("permutation does not preserve the Cartan matrix on K".into()));
        }
        Ok(aut)
    }

    pub fn factor_count(&self) -> usize {
        self.datum.components().len()
    }

    pub fn type_name(&self) -> String {
        self.datum.name()
    }
}

pub fn subsystem(aff: &AffineDatum, nodes: &[usize]) -> Result<Subsystem> {
    let mut nodes = nodes.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    if nodes.len() == aff.n_nodes() {
        return Err(Error::FullAffineSet);
    }
    if nodes.is_empty() || nodes.iter().any(|&x| x >= aff.n_nodes()) {
        return Err(Error::InvalidParam(format!("bad subset of Ĩ: {nodes:?}")));
    }
    let d = &aff.datum;
    let roots: Vec<&[i32]> = nodes.iter().map(|&x| d.root(aff.ext_roots[x])).collect();
    let cartan: Vec<Vec<i32>> = roots
        .iter()
        .map(|a| {
            let aa = d.pairing(a, a);
            roots.iter().map(|b| (2 * d.pairing(a, b) / aa) as i32).collect()
        })
        .collect();
    let sub = Arc::new(CoxeterDatum::from_cartan(cartan)?);
    let els = sub.elements()?;
    let gens: Vec<&GroupElement> = nodes.iter().map(|&x| &aff.pi[x]).collect();
    let embedding: Vec<GroupElement> = (0..els.len())
        .map(|i| els.word(i).iter().fold(d.identity(), |w, &s| w.mul(gens[s])))
        .collect();
    let distinct: HashSet<&GroupElement> = embedding.iter().collect();
    if distinct.len() != embedding.len() {
        return Err(Error::InvalidParam("π(K) does not generate a Coxeter subgroup on K".into()));
    }
    // Root of the ambient system matching a root of the subsystem.
    let ambient_root = |r: usize| -> usize {
        let mut v = vec![0i32; d.rank()];
        for (k, &c) in sub.root(r).iter().enumerate() {
            for (i, x) in d.root(aff.ext_roots[nodes[k]]).iter().enumerate() {
                v[i] += c * x;
            }
        }
        positive_line(d, d.root_index(&v).expect("subsystem roots are roots"))
    };
    let sub_refl = reflections_and_classes(&sub);
    let classes = (0..sub.components().len())
        .map(|z| {
            let choices = sub_refl.classes_of_factor(z);
            if choices.len() == 1 {
                return Ok(choices[0]);
            }
            choices
                .iter()
                .copied()
                .find(|&c| {
                    let r = sub_refl.reflections[sub_refl.classes[c][0]].root;
                    aff.special.contains_root(&aff.reflections, ambient_root(r))
                })
                .ok_or_else(|| Error::InvalidParam("no subsystem class meets the special subset".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Subsystem {
        nodes,
        datum: sub,
        embedding,
        special: SpecialSubset { classes },
    })
}

/// `W′ ⋊ Γ`, element `(w, γ)` at index `γ·|W′| + w`.
#[derive(Clone, Debug)]
pub struct ExtendedGroup {
    pub group: Arc<FiniteGroup>,
    pub base: Arc<FiniteGroup>,
    pub gamma: Arc<FiniteGroup>,
    pub gamma_labels: Vec<String>,
}

impl ExtendedGroup {
    /// `base ⋊ gamma` with `act[γ]` the index permutation of the base.
    pub fn from_action(
        name: impl Into<String>,
        base: &FiniteGroup,
        gamma: Arc<FiniteGroup>,
        labels: Vec<String>,
        act: &[Vec<u32>],
    ) -> Result<Self> {
        Self::build(name.into(), None, base, gamma, labels, act)
    }

    fn build(
        name: String,
        descriptor: Option<String>,
        base: &FiniteGroup,
        gamma: Arc<FiniteGroup>,
        labels: Vec<String>,
        act: &[Vec<u32>],
    ) -> Result<Self> {
        let order = base.order() * gamma.order();
        if order > EXTENSION_BOUND {
            return Err(Error::OrderBound { order, bound: EXTENSION_BOUND });
        }
        for (g, a) in act.iter().enumerate() {
            let ok = (0..base.order()).all(|x| {
                (0..base.order()).all(|y| a[base.mul(x, y)] as usize == base.mul(a[x] as usize, a[y] as usize))
            });
            if !ok {
                return Err(Error::ExtensionPrecondition(format!("{} does not act by automorphisms", labels[g])));
            }
            for h in 0..gamma.order() {
                let gh = gamma.mul(g, h);
                let composed = (0..base.order()).all(|x| act[gh][x] == a[act[h][x] as usize]);
                if !composed {
                    return Err(Error::ExtensionPrecondition(format!(
                        "action is not a homomorphism at ({}, {})",
                        labels[g], labels[h]
                    )));
                }
            }
        }
        let mut group = FiniteGroup::semidirect(name, base, &gamma, act)?;
        if let Some(d) = descriptor {
            group = group.with_descriptor(d);
        }
        let group = Arc::new(group);
        let members: Vec<u32> = (0..base.order() as u32).collect();
        let base = Arc::new(FiniteGroup::subgroup(&group, "base", &members)?);
        Ok(Self {
            group,
            base,
            gamma,
            gamma_labels: labels,
        })
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn base_order(&self) -> usize {
        self.base.order()
    }

    /// The elements `wγ` for `w` in the base.
    pub fn coset(&self, gamma: usize) -> Vec<usize> {
        let n = self.base_order();
        (0..n).map(|w| gamma * n + w).collect()
    }

    pub fn gamma_element(&self, gamma: usize) -> usize {
        gamma * self.base_order()
    }

    /// Whether the base is normal in the group.
    pub fn base_is_normal(&self) -> bool {
        let n = self.base_order();
        (0..self.order()).all(|g| (0..n).all(|w| self.group.conjugate(g, w) < n))
    }
}

/// `W ⋊ ⟨auts⟩` for diagram automorphisms of `datum`.
pub fn weyl_extension(datum: &CoxeterDatum, auts: &[DiagramAut]) -> Result<ExtendedGroup> {
    let base = FiniteGroup::weyl(datum)?;
    let (gamma, elems) = FiniteGroup::generated("Γ", DiagramAut::identity(datum.rank()), auts, 64, |a, b| a.compose(b))?;
    let act = elems.iter().map(|a| weyl_action(datum, a)).collect::<Result<Vec<_>>>()?;
    let labels: Vec<String> = elems.iter().map(|a| a.to_string()).collect();
    let name = format!("W({}):<{}>", datum.name(), auts.iter().map(|a| a.to_string()).collect::<Vec<_>>().join(","));
    let descriptor = format!("weyl-ext:{}:{}", datum.name(), labels.join(";"));
    ExtendedGroup::build(name, Some(descriptor), &base, Arc::new(gamma), labels, &act)
}

/// `W′ × Z/m` with trivial action.
pub fn direct_with_cyclic(base: &FiniteGroup, m: usize) -> Result<ExtendedGroup> {
    let gamma = Arc::new(crate::grouptab::cyclic_group(m)?);
    let id: Vec<u32> = (0..base.order() as u32).collect();
    let labels = (0..m).map(|k| format!("c^{k}")).collect();
    ExtendedGroup::from_action(format!("{} x Z{m}", base.name()), base, gamma, labels, &vec![id; m])
}

/// `W^{(K)} ⋊ (C × ⟨c⟩)` with `(σ, c^n)(σ′, c^{n′}) = (σ c^n(σ′), c^{n+n′})`.
/// `c_members` indexes `om`; `c` must fix `K` and satisfy `c^N = 1`.
pub fn build_extension(
    aff: &AffineDatum,
    sub: &Subsystem,
    om: &Omega,
    c_members: &[usize],
    c: &DiagramAut,
    n: usize,
) -> Result<ExtendedGroup> {
    if n == 0 || c.order() > n || n % c.order() != 0 {
        return Err(Error::ExtensionPrecondition(format!("c has order {} which does not divide N = {n}", c.order())));
    }
    let ce = extend_aut(aff, c);
    if !sub.nodes.iter().all(|&x| sub.nodes.contains(&ce[x])) {
        return Err(Error::ExtensionPrecondition("c(K) ≠ K".into()));
    }
    let c_set: Vec<Vec<usize>> = c_members.iter().map(|&i| om.elements[i].perm.clone()).collect();
    let identity: Vec<usize> = (0..aff.n_nodes()).collect();
    if !c_set.contains(&identity) {
        return Err(Error::ExtensionPrecondition("C does not contain the identity".into()));
    }
    let pos = |p: &[usize]| c_set.iter().position(|q| q == p);
    for a in &c_set {
        if !sub.nodes.iter().all(|&x| sub.nodes.contains(&a[x])) {
            return Err(Error::ExtensionPrecondition(format!("{a:?} is not in Ω^K")));
        }
        if pos(&twist(aff, c, a)).is_none() {
            return Err(Error::ExtensionPrecondition("c(C) ≠ C".into()));
        }
        for b in &c_set {
            if pos(&compose_perm(a, b)).is_none() {
                return Err(Error::ExtensionPrecondition("C is not a subgroup".into()));
            }
        }
    }
    // put the identity first
    let mut c_set = c_set;
    let idp = c_set.iter().position(|p| *p == identity).unwrap();
    c_set.swap(0, idp);
    let m = c_set.len();
    let twist_pow = |k: usize, p: &[usize]| (0..k).fold(p.to_vec(), |acc, _| twist(aff, c, &acc));
    let gamma = FiniteGroup::from_mul("C x <c>", m * n, Execution::Sequential, |x, y| {
        let (s1, n1) = (x % m, x / m);
        let (s2, n2) = (y % m, y / m);
        let p = compose_perm(&c_set[s1], &twist_pow(n1, &c_set[s2]));
        let s = c_set.iter().position(|q| *q == p).expect("C is closed");
        ((n1 + n2) % n) * m + s
    })?;
    let base = FiniteGroup::weyl(&sub.datum)?;
    let mut act = Vec::with_capacity(m * n);
    let mut labels = Vec::with_capacity(m * n);
    for g in 0..m * n {
        let (s, k) = (g % m, g / m);
        let mut perm = c_set[s].clone();
        for _ in 0..k {
            perm = compose_perm(&perm, &ce);
        }
        act.push(weyl_action(&sub.datum, &sub.restrict(&perm)?)?);
        labels.push(format!("({:?}, c^{k})", c_set[s]));
    }
    let name = format!("W({})Γ[{}|{}|{}]", sub.type_name(), aff.datum.name(), m, n);
    ExtendedGroup::from_action(name, &base, Arc::new(gamma), labels, &act)
}

/// Metacyclic `Γ = ⟨a, c | a^M, c^N = a^u, c a c⁻¹ = a^k⟩` acting on `W` through
/// diagram automorphisms `rho_a`, `rho_c`.
pub fn metacyclic_extension(
    datum: &CoxeterDatum,
    (m, n, k, u): (usize, usize, usize, usize),
    rho_a: &DiagramAut,
    rho_c: &DiagramAut,
) -> Result<ExtendedGroup> {
    if m == 0 || n == 0 {
        return Err(Error::ExtensionPrecondition("M and N must be positive".into()));
    }
    let kpow = |e: usize| (0..e).fold(1usize, |acc, _| acc * k % m);
    if kpow(n) != 1 % m {
        return Err(Error::ExtensionPrecondition(format!("k^N = {} ≠ 1 mod M", kpow(n))));
    }
    if (u * k) % m != u % m {
        return Err(Error::ExtensionPrecondition("c^N = a^u needs uk ≡ u mod M".into()));
    }
    let gamma = FiniteGroup::from_mul("metacyclic", m * n, Execution::Sequential, |x, y| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        let mut i = i1 + kpow(j1) * i2;
        let mut j = j1 + j2;
        if j >= n {
            j -= n;
            i += kpow(j) * u;
        }
        j * m + i % m
    })?;
    if !gamma.check_associative() {
        return Err(Error::ExtensionPrecondition("parameters do not define a group".into()));
    }
    let power = |a: &DiagramAut, e: usize| (0..e).fold(DiagramAut::identity(datum.rank()), |acc, _| acc.compose(a));
    let mut act = Vec::with_capacity(m * n);
    let mut labels = Vec::with_capacity(m * n);
    for g in 0..m * n {
        let (i, j) = (g % m, g / m);
        act.push(weyl_action(datum, &power(rho_a, i).compose(&power(rho_c, j)))?);
        labels.push(format!("a^{i}c^{j}"));
    }
    let base = FiniteGroup::weyl(datum)?;
    ExtendedGroup::from_action(format!("W({})(M={m},N={n},k={k})", datum.name()), &base, Arc::new(gamma), labels, &act)
}

/// Indices of `a` and `c` in a metacyclic extension with parameter `M`.
pub fn metacyclic_generators(ext: &ExtendedGroup, m: usize) -> (usize, usize) {
    let c = if ext.gamma.order() > m { m } else { 0 };
    (ext.gamma_element(1 % m), ext.gamma_element(c))
}

/// A root of unity `sign · ζ_order^k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootOfUnity {
    pub order: u32,
    pub k: u32,
}

impl RootOfUnity {
    pub fn value(&self) -> Cyclotomic {
        Cyclotomic::zeta(self.order, self.k as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.order, self.k) {
            (_, 0) => write!(f, "1"),
            (2, 1) => write!(f, "-1"),
            (n, k) => write!(f, "z{n}^{k}"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub character: usize,
    pub degree: i64,
    /// Every `ζ` with `χ(wγ)/ζ ∈ Z` for all base elements `w`.
    pub zetas: Vec<RootOfUnity>,
    /// First base element where the smallest candidate failed, when none passed.
    pub failure: Option<usize>,
    /// Whether `χ` vanishes on the whole coset.
    pub vanishes: bool,
}

impl Certificate {
    pub fn ok(&self) -> bool {
        !self.zetas.is_empty()
    }

    /// Any two passing `ζ` differ by a sign when `χ` does not vanish on the coset.
    pub fn unique_up_to_sign(&self) -> bool {
        if self.vanishes {
            return true;
        }
        self.zetas.iter().all(|z| {
            let q = &z.value() * &self.zetas[0].value().conj();
            q == Cyclotomic::one() || q == Cyclotomic::from_int(-1)
        })
    }
}

fn lcm(a: u32, b: u32) -> u32 {
    use num_integer::Integer;
    a.lcm(&b)
}

/// Certificates for every irreducible character of `ext` on the coset `Wγ`.
pub fn quasirationality_certify(ext: &ExtendedGroup, gamma: usize, exec: Execution) -> Result<Vec<Certificate>> {
    let table = character_table(&ext.group)?;
    let classes = ext.group.classes()?;
    let coset = ext.coset(gamma);
    let coset_classes: Vec<usize> = {
        let mut v: Vec<usize> = coset.iter().map(|&g| classes.class_of[g] as usize).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let order = lcm(2, ext.group.exponent()?);
    let candidates: Vec<RootOfUnity> = (0..order).map(|k| RootOfUnity { order, k }).collect();
    let rows: Vec<(usize, Vec<Cyclotomic>)> = table.values().iter().cloned().enumerate().collect();
    Ok(par::map(exec, &rows, |(i, chi)| {
        let vals: Vec<&Cyclotomic> = coset_classes.iter().map(|&c| &chi[c]).collect();
        let vanishes = vals.iter().all(|v| v.is_zero());
        let passes = |z: &RootOfUnity| {
            let zinv = z.value().conj();
            vals.iter().all(|v| (*v * &zinv).as_integer().is_some())
        };
        let zetas: Vec<RootOfUnity> = candidates.iter().filter(|z| passes(z)).cloned().collect();
        let failure = zetas.is_empty().then(|| {
            coset
                .iter()
                .position(|&g| chi[classes.class_of[g] as usize].as_integer().is_none())
                .unwrap_or(0)
        });
        Certificate {
            character: *i,
            degree: chi[0].to_i64().unwrap_or(0),
            zetas,
            failure,
            vanishes,
        }
    }))
}

#[derive(Clone, Debug, Serialize)]
pub struct ExtensionReport {
    pub character: usize,
    pub invariant: bool,
    pub rational: bool,
    /// An irreducible of the extension restricting to `χ` with rational values.
    pub extension: Option<usize>,
    pub in_scope: bool,
}

/// For each `Γ`-invariant rational irreducible `χ` of the base, looks for a
/// rational irreducible of the extension restricting to `χ`.
pub fn invariant_extension_check(ext: &ExtendedGroup) -> Result<Vec<ExtensionReport>> {
    let base_table = character_table(&ext.base)?;
    let base_classes = ext.base.classes()?;
    let big = character_table(&ext.group)?;
    let big_classes = ext.group.classes()?;
    let n = ext.base_order();
    let in_scope = gamma_is_metacyclic(&ext.gamma)?;
    let gens: Vec<usize> = (0..ext.gamma.order()).map(|g| ext.gamma_element(g)).collect();
    Ok(base_table
        .values()
        .iter()
        .enumerate()
        .map(|(i, chi)| {
            let at = |w: usize| &chi[base_classes.class_of[w] as usize];
            let invariant = gens
                .iter()
                .all(|&g| (0..n).all(|w| at(ext.group.conjugate(g, w)) == at(w)));
            let rational = chi.iter().all(Cyclotomic::is_rational);
            let extension = (invariant && rational)
                .then(|| {
                    big.values().iter().position(|psi| {
                        psi.iter().all(Cyclotomic::is_rational)
                            && (0..n).all(|w| psi[big_classes.class_of[w] as usize] == *at(w))
                    })
                })
                .flatten();
            ExtensionReport {
                character: i,
                invariant,
                rational,
                extension,
                in_scope,
            }
        })
        .collect())
}

/// Whether `Γ` has a cyclic normal subgroup with cyclic quotient.
pub fn gamma_is_metacyclic(gamma: &FiniteGroup) -> Result<bool> {
    let n = gamma.order();
    for a in 0..n {
        let oa = gamma.element_order(a) as usize;
        let sub: Vec<usize> = (0..oa).map(|e| gamma.power(a, e as u64)).collect();
        let normal = (0..n).all(|g| sub.contains(&gamma.conjugate(g, a)));
        if !normal {
            continue;
        }
        // quotient is cyclic when some element generates it modulo ⟨a⟩
        let q = n / oa;
        let cyclic = (0..n).any(|c| {
            (1..=q).find(|&e| sub.contains(&gamma.power(c, e as u64))) == Some(q)
        });
        if cyclic {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn aff(t: &str) -> AffineDatum {
        affine_datum(Arc::new(CoxeterDatum::parse(t).unwrap()), None).unwrap()
    }

    #[test]
    fn reflection_classes() {
        for (t, n, k) in [("A1", 1, 1), ("A2", 3, 1), ("B2", 4, 2), ("G2", 6, 2), ("D4", 12, 1), ("F4", 24, 2)] {
            let d = CoxeterDatum::parse(t).unwrap();
            let r = reflections_and_classes(&d);
            assert_eq!((r.reflections.len(), r.classes.len()), (n, k), "{t}");
        }
        let b2 = CoxeterDatum::parse("B2").unwrap();
        let r = reflections_and_classes(&b2);
        assert!(r.classes.iter().all(|c| c.len() == 2));
        assert_eq!(special_subsets(&b2, &r).len(), 2);
        let a1a1 = CoxeterDatum::parse("A1xA1").unwrap();
        assert_eq!(special_subsets(&a1a1, &reflections_and_classes(&a1a1)).len(), 1);
    }

    #[test]
    fn affine_examples() {
        let a = aff("A2");
        assert_eq!(a.datum.word_string(&a.pi[2]), "s1 s2 s1");
        let a1 = aff("A1");
        assert_eq!(a1.pi[1], a1.pi[0]);
        assert!(!a1.pi_injective());
        let b2 = aff("B2");
        assert_eq!(b2.top_root, b2.datum.n_pos() - 1);
        assert!(affine_datum(Arc::new(CoxeterDatum::parse("A1xA1").unwrap()), None).is_err());
    }

    #[test]
    fn omega_orders() {
        for (t, n) in [("A1", 2), ("A2", 3), ("A3", 4), ("B2", 2), ("C3", 2), ("D4", 4), ("D5", 4), ("G2", 1)] {
            let a = aff(t);
            assert_eq!(omega(&a, OmegaLevel::Root).unwrap().order(), n, "{t}");
        }
        assert_eq!(omega(&aff("D4"), OmegaLevel::Root).unwrap().shape(), OmegaShape::Klein);
        assert_eq!(omega(&aff("D5"), OmegaLevel::Root).unwrap().shape(), OmegaShape::Cyclic(4));
        let refl = omega(&aff("A2"), OmegaLevel::Reflection).unwrap();
        assert_eq!(refl.order(), 6);
    }

    #[test]
    fn subsystems() {
        let c2 = aff("C2");
        let s = subsystem(&c2, &[1, 2]).unwrap();
        assert_eq!(s.type_name(), "A1xA1");
        let d4 = aff("D4");
        let s = subsystem(&d4, &[0, 2, 3, 4]).unwrap();
        assert_eq!((s.type_name().as_str(), s.order()), ("A1xA1xA1xA1", 16));
        assert!(matches!(subsystem(&d4, &[0, 1, 2, 3, 4]), Err(Error::FullAffineSet)));
        assert_eq!(subsystem(&d4, &[0, 1, 2, 3]).unwrap().order(), 192);
    }
}
