use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;

use super::{CheckReport, Tally};
use crate::coxcore::{AutLevel, CoxeterDatum, DiagramAut, GroupElement, SimpleSubset, WeylElements};
use crate::cyclotomic::Cyclotomic;
use crate::grouptab::character_table;
use crate::hcduality::{CosetClassFunction, MuConvention, ParabolicContext};
use crate::jtower;
use crate::linalg::{self, Matrix};
use crate::par::{self, Execution};

/// Types swept by the duality, Mackey and sign-identity suites.
pub const DUALITY_TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "D4"];
/// Rank at most 3.
pub const MU_TYPES: &[&str] = &["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "A1xB2"];
/// Rank at most 4.
pub const TOWER_TYPES: &[&str] = &[
    "A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "C4", "D4", "F4", "G2", "A1xA1", "A1xA2", "A2xA2", "A1xA3",
];

/// One context per (type, Dynkin automorphism), built on first use.
pub struct Sweep {
    exec: Execution,
    types: Vec<String>,
    contexts: Option<Vec<(String, Arc<ParabolicContext>)>>,
}

impl Sweep {
    pub fn new(exec: Execution) -> Self {
        let types: Vec<String> = DUALITY_TYPES.iter().map(|t| t.to_string()).collect();
        Self::with_types(exec, &types)
    }

    /// Types are given as canonical names such as `"B3"`.
    pub fn with_types(exec: Execution, types: &[String]) -> Self {
        Self {
            exec,
            types: types.to_vec(),
            contexts: None,
        }
    }

    pub fn types(&self) -> &[String] {
        &self.types
    }

    pub fn execution(&self) -> Execution {
        self.exec
    }

    pub fn contexts(&mut self) -> &[(String, Arc<ParabolicContext>)] {
        let exec = self.exec;
        let types = &self.types;
        self.contexts.get_or_insert_with(|| {
            let mut out = Vec::new();
            for t in types {
                let d = Arc::new(CoxeterDatum::parse(t).expect("sweep types are valid"));
                for eps in d.diagram_automorphisms(AutLevel::Dynkin) {
                    let label = format!("{t} ε={eps}");
                    let ctx = ParabolicContext::with_execution(d.clone(), eps, exec).expect("sweep contexts build");
                    out.push((label, Arc::new(ctx)));
                }
            }
            out
        })
    }

    pub fn identity_context(&mut self, t: &str) -> Option<Arc<ParabolicContext>> {
        self.contexts()
            .iter()
            .find(|(_, c)| c.datum().name() == t && c.eps().is_identity())
            .map(|(_, c)| c.clone())
    }
}

fn gram(ctx: &ParabolicContext, j: SimpleSubset) -> Vec<BigRational> {
    let s = ctx.space(j).expect("stable subset");
    s.sizes
        .iter()
        .map(|&c| BigRational::new(c.into(), s.base_order.into()))
        .collect()
}

fn stable_nested_pairs(ctx: &ParabolicContext) -> Vec<(SimpleSubset, SimpleSubset)> {
    let all = ctx.stable_subsets(ctx.datum().simples());
    let mut out = Vec::new();
    for &j in &all {
        for k in ctx.stable_subsets(j) {
            out.push((k, j));
        }
    }
    out
}

pub fn duality_involution(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(1, "duality involution");
    let exec = sweep.execution();
    let mut subsets = 0;
    for (label, ctx) in sweep.contexts() {
        let js = ctx.stable_subsets(ctx.datum().simples());
        subsets += js.len();
        t.absorb(par::map(exec, &js, |&j| {
            let d = ctx.duality_matrix(j).expect("stable subset");
            let ok = linalg::mul(&d, &d) == linalg::identity(d.len());
            (d.len(), (!ok).then(|| format!("{label} J={j}: δ∘δ ≠ id")))
        }));
    }
    t.note(format!("{} (type, ε) pairs, {subsets} stable J, basis vectors checked", sweep.contexts().len()));
    t.finish()
}

pub fn duality_laws(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(2, "duality laws");
    let exec = sweep.execution();
    for (label, ctx) in sweep.contexts() {
        let pairs = stable_nested_pairs(ctx);
        t.absorb(par::map(exec, &pairs, |&(k, j)| {
            let mut n = 0;
            let dj = ctx.duality_matrix(j).unwrap();
            let dk = ctx.duality_matrix(k).unwrap();
            let f = ctx.induction_matrix(k, j).unwrap();
            let e = ctx.restriction_matrix(k, j).unwrap();
            let gj = gram(ctx, j);
            let gk = gram(ctx, k);
            // commutation δ_J f = f δ_K
            n += 1;
            if linalg::mul(&dj, &f) != linalg::mul(&f, &dk) {
                return (n, Some(format!("{label} K={k} J={j}: δ_J f ≠ f δ_K")));
            }
            // adjointness (e φ, ψ)_K = (φ, f ψ)_J on basis pairs
            for c in 0..gj.len() {
                for d in 0..gk.len() {
                    n += 1;
                    if &e[d][c] * &gk[d] != &f[c][d] * &gj[c] {
                        return (n, Some(format!("{label} K={k} J={j}: adjointness fails at ({c},{d})")));
                    }
                }
            }
            if k == j {
                for a in 0..gj.len() {
                    for b in 0..gj.len() {
                        n += 2;
                        if &dj[b][a] * &gj[b] != &dj[a][b] * &gj[a] {
                            return (n, Some(format!("{label} J={j}: δ not self-adjoint at ({a},{b})")));
                        }
                        let iso: BigRational = (0..gj.len()).map(|c| &dj[c][a] * &dj[c][b] * &gj[c]).sum();
                        let want = if a == b { gj[a].clone() } else { BigRational::zero() };
                        if iso != want {
                            return (n, Some(format!("{label} J={j}: δ not an isometry at ({a},{b})")));
                        }
                    }
                }
            }
            (n, None)
        }));
    }
    t.note("self-adjointness, isometry, δ_J f_{K,J} = f_{K,J} δ_K and e/f adjointness on full bases");
    t.finish()
}

/// `Σ_K (−1)^{|K|} Ind_{W_K}^W Res χ` evaluated element by element.
fn subset_expansion(ctx: &ParabolicContext, chi: &[Cyclotomic]) -> Vec<Cyclotomic> {
    let d = ctx.datum();
    let els = d.elements().unwrap();
    let g = ctx.ambient();
    let cl = g.classes().unwrap();
    let value = |x: usize| chi[cl.class_of[x] as usize].clone();
    cl.reps
        .iter()
        .map(|&r| {
            let mut acc = Cyclotomic::zero();
            for k in d.simples().subsets() {
                let wk = d.parabolic_order(k).unwrap();
                let mut s = Cyclotomic::zero();
                for x in 0..g.order() {
                    let y = g.conjugate(x, r as usize);
                    if els.support(y).is_subset(k) {
                        s = &s + &value(y);
                    }
                }
                let term = s.scale(&BigRational::new(1.into(), wk.into()));
                acc = if k.len() % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        })
        .collect()
}

pub fn curtis_oracle(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(3, "Curtis sign-twist oracle");
    let exec = sweep.execution();
    let mut irr = 0;
    for ty in sweep.types().to_vec() {
        let ty = ty.as_str();
        let ctx = sweep.identity_context(&d_name(ty)).expect("identity context exists");
        let i = ctx.datum().simples();
        let space = ctx.space(i).unwrap();
        let table = character_table(&space.group).unwrap();
        let els = ctx.datum().elements().unwrap();
        let sgn: Vec<Cyclotomic> = space
            .reps
            .iter()
            .map(|&r| Cyclotomic::from_int(if els.length(r as usize) % 2 == 0 { 1 } else { -1 }))
            .collect();
        let rows: Vec<Vec<Cyclotomic>> = table.values().to_vec();
        irr += rows.len();
        t.absorb(par::map(exec, &rows, |chi| {
            let twisted: Vec<Cyclotomic> = chi.iter().zip(&sgn).map(|(a, b)| a * b).collect();
            let phi = CosetClassFunction { j: i, values: chi.clone() };
            let lib = ctx.duality(i, &phi).unwrap().values;
            if lib != twisted {
                return (1, Some(format!("{ty}: δχ ≠ χ⊗sgn for χ = {chi:?}")));
            }
            let oracle = subset_expansion(&ctx, chi);
            if oracle != twisted {
                return (2, Some(format!("{ty}: subset expansion ≠ χ⊗sgn for χ = {chi:?}")));
            }
            (2, None)
        }));
    }
    t.note(format!("{irr} irreducibles; library δ and element-level subset expansion both equal χ⊗sgn"));
    t.finish()
}

fn d_name(t: &str) -> String {
    CoxeterDatum::parse(t).map(|d| d.name()).unwrap_or_else(|_| t.to_string())
}

fn in_span(basis: &[Vec<BigRational>], v: &[BigRational]) -> bool {
    let mut m = basis.to_vec();
    let r = linalg::rank(&m);
    m.push(v.to_vec());
    linalg::rank(&m) == r
}

pub fn irreducible_signs(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(4, "duality on irreducibles");
    let exec = sweep.execution();
    let mut total = 0;
    for (label, ctx) in sweep.contexts().to_vec() {
        let js = ctx.stable_subsets(ctx.datum().simples());
        let results = par::map(exec, &js, |&j| -> (usize, Option<String>) {
            let irr = match ctx.coset_irreducibles(j) {
                Ok(v) => v,
                Err(e) => return (1, Some(format!("{label} J={j}: {e}"))),
            };
            let mut n = 0;
            for chi in &irr {
                n += 1;
                let first = match ctx.duality_on_irreducible(chi) {
                    Ok(d) => d,
                    Err(e) => return (n, Some(format!("{label} J={j}: {e}"))),
                };
                let second = match ctx.duality_on_irreducible(&first.image) {
                    Ok(d) => d,
                    Err(e) => return (n, Some(format!("{label} J={j}: {e}"))),
                };
                if second.image.scale(&Cyclotomic::from_int(first.sign * second.sign)) != *chi {
                    return (n, Some(format!("{label} J={j}: δ∘δ does not return +χ")));
                }
            }
            (n, None)
        });
        total += results.iter().map(|r| r.0).sum::<usize>();
        t.absorb(results);
    }
    let mut single = 0;
    let mut spans = Vec::new();
    for ty in ["A2", "B2", "B3"] {
        let Some(ctx) = sweep.identity_context(ty) else {
            continue;
        };
        spans.push(ty);
        let i = ctx.datum().simples();
        let dm = ctx.duality_matrix(i).unwrap();
        let series = ctx.hc_series(i).unwrap();
        for s in &series {
            for v in &s.basis {
                let dv = linalg::apply(&dm, v);
                let want: Vec<BigRational> = v.iter().map(|x| x * BigRational::from_integer(s.sign.into())).collect();
                t.check(dv == want, || format!("{ty}: δ does not act by {} on the series of {:?}", s.sign, s.members));
            }
        }
        for chi in ctx.coset_irreducibles(i).unwrap() {
            let Some(v) = chi.values.iter().map(Cyclotomic::as_rational).collect::<Option<Vec<_>>>() else {
                continue;
            };
            for s in &series {
                if in_span(&s.basis, &v) {
                    single += 1;
                    let d = ctx.duality_on_irreducible(&chi).unwrap();
                    t.check(d.sign == s.sign, || format!("{ty}: sign {} in series of sign {}", d.sign, s.sign));
                }
            }
        }
    }
    t.note(format!(
        "{total} coset irreducibles over all (type, ε, J) map to ± irreducibles with δ∘δ = +id; \
         δ acts by (−1)^|J'_ε| on every series span of {}; {single} irreducibles lie in a single series",
        if spans.is_empty() { "no swept type".to_string() } else { spans.join(", ") }
    ));
    t.finish()
}

pub fn mackey_formula(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(5, "Mackey formula");
    let exec = sweep.execution();
    for (label, ctx) in sweep.contexts() {
        let mut triples = Vec::new();
        for &(k, j) in &stable_nested_pairs(ctx) {
            for kp in ctx.stable_subsets(j) {
                triples.push((k, kp, j));
            }
        }
        t.absorb(par::map(exec, &triples, |&(k, kp, j)| {
            let lhs = ctx.mackey_lhs_matrix(k, kp, j).unwrap();
            let rhs = ctx.mackey_rhs_matrix(k, kp, j).unwrap();
            let ok = lhs == rhs;
            (1, (!ok).then(|| format!("{label} K={k} K'={kp} J={j}: e f ≠ Σ_u f Φ_u e")))
        }));
    }
    t.note("e_{K',J} f_{K,J} = Σ_u f Φ_u e as matrices on coset class functions");
    t.finish()
}

pub fn sign_identity(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(6, "sign identity");
    let exec = sweep.execution();
    for (label, ctx) in sweep.contexts() {
        let mut triples = Vec::new();
        for &(k, j) in &stable_nested_pairs(ctx) {
            for h in ctx.stable_subsets(k) {
                triples.push((h, k, j));
            }
        }
        t.absorb(par::map(exec, &triples, |&(h, k, j)| {
            let got = ctx.sign_sum(h, k, j).unwrap();
            let want = ctx.sign(h);
            (1, (got != want).then(|| format!("{label} H={h} K={k} J={j}: sum {got}, expected {want}")))
        }));
    }
    t.note("Σ (−1)^{|K'_ε|} over (K', u) with K ∩ Ad(u)K' = H equals (−1)^{|H_ε|} for every nested ε-stable H ⊆ K ⊆ J");
    t.finish()
}

pub fn mu_consistency(exec: Execution) -> CheckReport {
    let mut t = Tally::new(7, "m_u consistency");
    let mut mirrored_ok = true;
    for ty in MU_TYPES {
        let d = Arc::new(CoxeterDatum::parse(ty).unwrap());
        let ctx = ParabolicContext::with_execution(d.clone(), DiagramAut::identity(d.rank()), exec).unwrap();
        let mut triples = Vec::new();
        for j in d.simples().subsets() {
            for k in j.subsets() {
                for kp in j.subsets() {
                    triples.push((k, kp, j));
                }
            }
        }
        let results = par::map(exec, &triples, |&(k, kp, j)| {
            let mut n = 0;
            let mut fail = None;
            let mut mirror = true;
            for u in ctx.mackey_reps(k, kp, j).unwrap() {
                n += 1;
                let m = ctx.m_u(k, kp, j, &u).unwrap();
                let (a, b) = ctx.root_count_identity(k, kp, j, &u, MuConvention::Forward).unwrap();
                if fail.is_none() && (m < 0 || a != b) {
                    fail = Some(format!(
                        "{ty} K={k} K'={kp} J={j} u={}: m_u = {m}, identity {a} vs {b}",
                        d.word_string(&u)
                    ));
                }
                let mm = ctx.m_u_with(k, kp, j, &u, MuConvention::Mirrored).unwrap();
                let (ma, mb) = ctx.root_count_identity(k, kp, j, &u, MuConvention::Mirrored).unwrap();
                mirror &= mm >= 0 && ma == mb;
            }
            if k == j && kp == j {
                n += 1;
                if ctx.m_u(j, j, j, &d.identity()).unwrap() != 0 && fail.is_none() {
                    fail = Some(format!("{ty} J={j}: m_e ≠ 0"));
                }
            }
            ((n, fail), mirror)
        });
        for ((n, f), m) in results {
            t.absorb(vec![(n, f)]);
            mirrored_ok &= m;
        }
    }
    t.note(format!(
        "forward convention u(Φ⁺∖Φ_K'⁺); mirrored convention u⁻¹ {}",
        if mirrored_ok { "also passes" } else { "fails" }
    ));
    t.finish()
}

/// `ε⁻¹{ s ∈ ε(J) : w₀⁻¹ s w₀ ∈ W_J }`, the step read inside the reflections of `W_J`.
fn reflection_reading(d: &CoxeterDatum, els: &WeylElements, j: SimpleSubset, w0: &GroupElement, eps: &DiagramAut) -> SimpleSubset {
    let ej = eps.apply_subset(j);
    let inv = w0.inverse();
    let kept = ej.nodes().filter(|&s| {
        let g = inv.mul(d.simple(s)).mul(w0);
        els.index_of(&g).is_some_and(|i| els.support(i).is_subset(j))
    });
    eps.preimage_subset(SimpleSubset::from_nodes(kept))
}

pub fn jtower_properties(exec: Execution) -> CheckReport {
    let mut t = Tally::new(8, "J-tower");
    for ty in TOWER_TYPES {
        let d = CoxeterDatum::parse(ty).unwrap();
        let els = d.elements().unwrap();
        let order = els.len();
        for eps in d.diagram_automorphisms(AutLevel::Dynkin) {
            let subsets = d.simples().subsets();
            t.absorb(par::map(exec, &subsets, |&j| {
                let pieces = jtower::piece_indices(&d, j, &eps).unwrap();
                let wj = d.parabolic_order(j).unwrap();
                let mut n = 1;
                if pieces.len() * wj != order {
                    return (n, Some(format!("{ty} ε={eps} J={j}: {} pieces", pieces.len())));
                }
                for w in &pieces {
                    n += 1;
                    let chain = jtower::j_infinity(&d, j, w, &eps).unwrap();
                    let strict = chain.subsets().len() - 1;
                    let rep = chain.final_rep();
                    let stable = jtower::is_stable_pair(&d, chain.j_infinity, rep, &eps).unwrap();
                    if strict > j.len() || !stable {
                        return (
                            n,
                            Some(format!(
                                "{ty} ε={eps} J={j} w={}: {strict} strict steps, stable {stable}",
                                d.word_string(w)
                            )),
                        );
                    }
                    let mut cur = j;
                    for step in &chain.steps {
                        let r = reflection_reading(&d, &els, cur, &step.w0, &eps);
                        if r != step.subset {
                            return (
                                n,
                                Some(format!(
                                    "{ty} ε={eps} J={cur} w₀={}: reflection reading {r}, simple reading {}",
                                    d.word_string(&step.w0),
                                    step.subset
                                )),
                            );
                        }
                        cur = step.subset;
                    }
                }
                (n, None)
            }));
        }
    }
    t.note(format!(
        "{} types of rank ≤ 4, all Dynkin automorphisms; reflection-set and simple readings of J₁ agree at every step",
        TOWER_TYPES.len()
    ));
    t.finish()
}

fn orthogonal(ctx: &ParabolicContext, j: SimpleSubset, a: &[Vec<BigRational>], b: &[Vec<BigRational>]) -> bool {
    let s = ctx.space(j).unwrap();
    a.iter().all(|x| b.iter().all(|y| s.pairing_rational(x, y).is_zero()))
}

pub fn series_decomposition(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(9, "Harish-Chandra series");
    let exec = sweep.execution();
    for (label, ctx) in sweep.contexts() {
        let js = ctx.stable_subsets(ctx.datum().simples());
        t.absorb(par::map(exec, &js, |&j| {
            let dim = ctx.space(j).unwrap().dim();
            let induced = ctx.induced_span(j).unwrap();
            let cusp = ctx.cuspidal_space(j).unwrap();
            let mut both: Matrix = induced.clone();
            both.extend(cusp.iter().cloned());
            if linalg::rank(&both) != dim || induced.len() + cusp.len() != dim {
                return (1, Some(format!("{label} J={j}: induced ⊕ cuspidal has dimension ≠ {dim}")));
            }
            if !orthogonal(ctx, j, &induced, &cusp) {
                return (2, Some(format!("{label} J={j}: induced and cuspidal spans are not orthogonal")));
            }
            let series = ctx.hc_series(j).unwrap();
            let total: usize = series.iter().map(|s| s.dim()).sum();
            if total != dim {
                return (3, Some(format!("{label} J={j}: series dimensions sum to {total}, expected {dim}")));
            }
            for (a, sa) in series.iter().enumerate() {
                for sb in &series[a + 1..] {
                    if !orthogonal(ctx, j, &sa.basis, &sb.basis) {
                        return (4, Some(format!("{label} J={j}: series {:?} and {:?} meet", sa.members, sb.members)));
                    }
                }
            }
            (4, None)
        }));
    }
    if let Some(a2) = sweep.identity_context("A2") {
        let dims: Vec<usize> = a2.hc_series(a2.datum().simples()).unwrap().iter().map(|s| s.dim()).collect();
        t.check(dims == vec![1, 1, 1], || format!("S3 series dimensions {dims:?}"));
        t.note(format!("S3 dimensions {dims:?}"));
    }
    if let Some(b2) = sweep.identity_context("B2") {
        let n = b2.hc_series(b2.datum().simples()).unwrap().len();
        t.check(n == 4, || format!("B2 has {n} association classes"));
        t.note(format!("B2 has {n} association classes"));
    }
    t.finish()
}
