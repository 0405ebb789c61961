use std::collections::HashMap;
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, OnceLock};

use num_integer::Integer;

use super::dixon::TableData;
use crate::coxcore::CoxeterDatum;
use crate::error::{Error, Result};
use crate::par::{self, Execution};

/// Largest group for which conjugacy classes and character tables are built.
pub const CLASS_BOUND: usize = 5000;

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

/// Inclusion of a group into a larger one.
#[derive(Debug)]
pub struct Embedding {
    pub parent: Arc<FiniteGroup>,
    pub map: Vec<u32>,
}

#[derive(Debug)]
pub struct Classes {
    /// Smallest element index of each class; classes are sorted by it.
    pub reps: Vec<u32>,
    pub sizes: Vec<usize>,
    pub class_of: Vec<u32>,
    /// Class containing the inverses.
    pub inverse: Vec<usize>,
    /// Element order of the representatives.
    pub orders: Vec<u32>,
}

impl Classes {
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// A finite group given by its Cayley table. Element 0 is the identity.
pub struct FiniteGroup {
    id: u64,
    name: String,
    order: usize,
    table: Vec<u32>,
    inverses: Vec<u32>,
    embedding: Option<Embedding>,
    descriptor: Option<String>,
    classes: OnceLock<Arc<Classes>>,
    pub(crate) table_data: OnceLock<Arc<TableData>>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds the Cayley table from an index-level product. `mul(0, x) = x`
    /// is required.
    pub fn from_mul<F>(name: impl Into<String>, order: usize, exec: Execution, mul: F) -> Result<FiniteGroup>
    where
        F: Fn(usize, usize) -> usize + Sync + Send,
    {
        let rows = par::map_range(exec, order, |a| (0..order).map(|b| mul(a, b) as u32).collect::<Vec<u32>>());
        let table: Vec<u32> = rows.into_iter().flatten().collect();
        Self::from_table(name, order, table)
    }

    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<u32>) -> Result<FiniteGroup> {
        assert_eq!(table.len(), order * order);
        if (0..order).any(|x| table[x] as usize != x || table[x * order] as usize != x) {
            return Err(Error::Dixon("element 0 is not the identity".into()));
        }
        let mut inverses = vec![u32::MAX; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverses[a] = b as u32;
                    break;
                }
            }
        }
        if inverses.contains(&u32::MAX) {
            return Err(Error::Dixon("table has no inverses".into()));
        }
        Ok(FiniteGroup {
            id: NEXT_ID.fetch_add(1, Ordering::Relaxed),
            name: name.into(),
            order,
            table,
            inverses,
            embedding: None,
            descriptor: None,
            classes: OnceLock::new(),
            table_data: OnceLock::new(),
        })
    }

    /// Closure of `gens` under `mul`, enumerated breadth first from the
    /// identity. Returns the group and its elements in index order.
    pub fn generated<T, F>(
        name: impl Into<String>,
        identity: T,
        gens: &[T],
        bound: usize,
        mul: F,
    ) -> Result<(FiniteGroup, Vec<T>)>
    where
        T: Clone + Eq + Hash + Send + Sync,
        F: Fn(&T, &T) -> T + Sync + Send,
    {
        let mut elems = vec![identity.clone()];
        let mut index: HashMap<T, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elems.len() {
            let x = elems[head].clone();
            head += 1;
            for g in gens {
                let y = mul(&x, g);
                if !index.contains_key(&y) {
                    if elems.len() >= bound {
                        return Err(Error::OrderBound { order: elems.len() + 1, bound });
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
        }
        let group = Self::from_mul(name, elems.len(), Execution::Sequential, |a, b| index[&mul(&elems[a], &elems[b])])?;
        Ok((group, elems))
    }

    /// The Weyl group of `datum`, indexed like [`CoxeterDatum::elements`].
    pub fn weyl(datum: &CoxeterDatum) -> Result<FiniteGroup> {
        let expected = datum.expected_order();
        if expected > CLASS_BOUND as u128 {
            return Err(Error::OrderBound {
                order: expected as usize,
                bound: CLASS_BOUND,
            });
        }
        let els = datum.elements()?;
        let words: Vec<Vec<usize>> = (0..els.len()).map(|i| els.word(i)).collect();
        let mut g = Self::from_mul(format!("W({})", datum.name()), els.len(), Execution::Parallel, |a, b| {
            words[b].iter().fold(a, |cur, &s| els.right_mul(cur, s))
        })?;
        g.descriptor = Some(format!("weyl:{}", datum.name()));
        Ok(g)
    }

    /// The subgroup on `members` (indices of `parent`), ordered by parent
    /// index.
    pub fn subgroup(parent: &Arc<FiniteGroup>, name: impl Into<String>, members: &[u32]) -> Result<FiniteGroup> {
        let mut map = members.to_vec();
        map.sort_unstable();
        map.dedup();
        let local: HashMap<u32, usize> = map.iter().enumerate().map(|(i, &g)| (g, i)).collect();
        let n = map.len();
        let mut table = Vec::with_capacity(n * n);
        for &a in &map {
            for &b in &map {
                let c = parent.mul(a as usize, b as usize) as u32;
                let Some(&i) = local.get(&c) else {
                    return Err(Error::Dixon(format!("subgroup {} is not closed", map.len())));
                };
                table.push(i as u32);
            }
        }
        let mut g = Self::from_table(name, n, table)?;
        g.embedding = Some(Embedding {
            parent: parent.clone(),
            map,
        });
        Ok(g)
    }

    /// Subgroup generated by the given parent elements.
    pub fn generated_subgroup(parent: &Arc<FiniteGroup>, name: impl Into<String>, gens: &[u32]) -> Result<FiniteGroup> {
        let mut seen = vec![false; parent.order];
        seen[0] = true;
        let mut members = vec![0u32];
        let mut head = 0;
        while head < members.len() {
            let x = members[head] as usize;
            head += 1;
            for &g in gens {
                let y = parent.mul(x, g as usize);
                if !seen[y] {
                    seen[y] = true;
                    members.push(y as u32);
                }
            }
        }
        Self::subgroup(parent, name, &members)
    }

    /// `N ⋊ Γ` with `(n, γ)(n', γ') = (n·γ(n'), γγ')`. `act[γ][n]` is the
    /// image of `n` and must be a homomorphism `Γ → Aut(N)`. Element
    /// `(n, γ)` has index `γ·|N| + n`, so `N` occupies the first indices.
    pub fn semidirect(name: impl Into<String>, base: &FiniteGroup, acting: &FiniteGroup, act: &[Vec<u32>]) -> Result<FiniteGroup> {
        let nb = base.order();
        let ng = acting.order();
        if act.len() != ng || act.iter().any(|a| a.len() != nb) {
            return Err(Error::ExtensionPrecondition("action table has the wrong shape".into()));
        }
        Self::from_mul(name, nb * ng, Execution::Parallel, |x, y| {
            let (g1, n1) = (x / nb, x % nb);
            let (g2, n2) = (y / nb, y % nb);
            let n = base.mul(n1, act[g1][n2] as usize);
            acting.mul(g1, g2) * nb + n
        })
    }

    pub fn with_descriptor(mut self, descriptor: impl Into<String>) -> Self {
        self.descriptor = Some(descriptor.into());
        self
    }

    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn descriptor(&self) -> Option<&str> {
        self.descriptor.as_deref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a] as usize
    }

    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(x, g), self.inverse(x))
    }

    pub fn power(&self, a: usize, e: u64) -> usize {
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, a);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u32 {
        let mut cur = a;
        let mut k = 1;
        while cur != 0 {
            cur = self.mul(cur, a);
            k += 1;
        }
        k
    }

    pub fn embedding(&self) -> Option<&Embedding> {
        self.embedding.as_ref()
    }

    /// Index map into `target`, following the chain of embeddings.
    pub fn embedding_into(&self, target: &FiniteGroup) -> Option<Vec<u32>> {
        if self.id == target.id {
            return Some((0..self.order as u32).collect());
        }
        let emb = self.embedding.as_ref()?;
        let up = emb.parent.embedding_into(target)?;
        Some(emb.map.iter().map(|&i| up[i as usize]).collect())
    }

    pub fn exponent(&self) -> Result<u32> {
        let cl = self.classes()?;
        Ok(cl.orders.iter().fold(1u32, |a, &b| a.lcm(&b)))
    }

    /// Conjugacy classes, computed once.
    pub fn classes(&self) -> Result<Arc<Classes>> {
        if let Some(c) = self.classes.get() {
            return Ok(c.clone());
        }
        if self.order > CLASS_BOUND {
            return Err(Error::OrderBound {
                order: self.order,
                bound: CLASS_BOUND,
            });
        }
        let c = Arc::new(self.compute_classes());
        Ok(self.classes.get_or_init(|| c).clone())
    }

    fn compute_classes(&self) -> Classes {
        let n = self.order;
        let mut class_of = vec![u32::MAX; n];
        let mut reps = Vec::new();
        let mut sizes = Vec::new();
        for g in 0..n {
            if class_of[g] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            let mut size = 0;
            for x in 0..n {
                let y = self.conjugate(x, g);
                if class_of[y] == u32::MAX {
                    class_of[y] = c;
                    size += 1;
                }
            }
            reps.push(g as u32);
            sizes.push(size);
        }
        let inverse = reps.iter().map(|&r| class_of[self.inverse(r as usize)] as usize).collect();
        let orders = reps.iter().map(|&r| self.element_order(r as usize)).collect();
        Classes {
            reps,
            sizes,
            class_of,
            inverse,
            orders,
        }
    }

    /// Class of `rep(c)^e`.
    pub fn power_class(&self, c: usize, e: u64) -> Result<usize> {
        let cl = self.classes()?;
        Ok(cl.class_of[self.power(cl.reps[c] as usize, e)] as usize)
    }

    /// Fusion of classes of `self` into classes of `target`.
    pub fn fusion(&self, target: &FiniteGroup) -> Result<Vec<usize>> {
        let map = self.embedding_into(target).ok_or(Error::NotEmbedded)?;
        let mine = self.classes()?;
        let theirs = target.classes()?;
        Ok(mine.reps.iter().map(|&r| theirs.class_of[map[r as usize] as usize] as usize).collect())
    }

    /// Checks associativity on every triple (small groups) or on a fixed
    /// stride of triples.
    pub fn check_associative(&self) -> bool {
        let n = self.order;
        let step = if n <= 60 { 1 } else { n / 37 + 1 };
        (0..n).step_by(step).all(|a| {
            (0..n).step_by(step).all(|b| {
                (0..n)
                    .step_by(step)
                    .all(|c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
            })
        })
    }
}

/// The symmetric group on `n` points, as permutations.
pub fn symmetric_group(n: usize) -> Result<FiniteGroup> {
    let id: Vec<u8> = (0..n as u8).collect();
    let mut gens = Vec::new();
    if n >= 2 {
        let mut t = id.clone();
        t.swap(0, 1);
        gens.push(t);
        let c: Vec<u8> = (0..n as u8).map(|i| (i + 1) % n as u8).collect();
        gens.push(c);
    }
    let (g, _) = FiniteGroup::generated(format!("S{n}"), id, &gens, CLASS_BOUND, |a, b| {
        b.iter().map(|&i| a[i as usize]).collect()
    })?;
    Ok(g)
}

/// The cyclic group of order `n`.
pub fn cyclic_group(n: usize) -> Result<FiniteGroup> {
    FiniteGroup::from_mul(format!("C{n}"), n, Execution::Sequential, |a, b| (a + b) % n)
}
