use std::sync::Arc;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use parahecke::coxcore::{format_word, parse_word, AutLevel, CoxeterDatum, DiagramAut, GroupElement, SimpleSubset};
use parahecke::extgroups::{
    affine_datum, omega, quasirationality_certify, trichotomy, weyl_extension, ExtendedGroup, OmegaLevel,
};
use parahecke::grouptab::cache::TableCache;
use parahecke::grouptab::{compute_table, FiniteGroup, TableData, CLASS_BOUND};
use parahecke::hcduality::ParabolicContext;
use parahecke::hecke::{sp_model, HeckeAlgebra, HeckeElement, LaurentPoly, ParamFunction};
use parahecke::linalg::{self, Matrix};
use parahecke::par::Execution;
use parahecke::{jtower, verify};

use crate::job::JobSpec;
use crate::report::{Check, CliError, CliResult, Outcome};

/// Seeded associativity triples checked by `hecke`.
const HECKE_TRIPLES: usize = 200;

fn exec(job: &JobSpec) -> Execution {
    if job.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn datum(job: &JobSpec) -> CliResult<CoxeterDatum> {
    let t = job
        .type_name()
        .ok_or_else(|| CliError::Input("missing --type/--rank or --group".into()))?;
    Ok(CoxeterDatum::parse(&t)?)
}

fn subset(d: &CoxeterDatum, s: Option<&str>, default: SimpleSubset, flag: &str) -> CliResult<SimpleSubset> {
    let Some(s) = s else {
        return Ok(default);
    };
    let j = SimpleSubset::parse(s)?;
    if !j.within(d.rank()) {
        return Err(CliError::Input(format!("--{flag} {j} is not a subset of {}", d.simples())));
    }
    Ok(j)
}

fn required<'a>(v: &'a Option<String>, flag: &str) -> CliResult<&'a str> {
    v.as_deref().ok_or_else(|| CliError::Input(format!("missing --{flag}")))
}

fn element(d: &CoxeterDatum, s: &str) -> CliResult<GroupElement> {
    Ok(d.parse_element(s)?)
}

fn eps(d: &CoxeterDatum, job: &JobSpec) -> CliResult<DiagramAut> {
    Ok(DiagramAut::named(d, job.eps.as_deref().unwrap_or("id"))?)
}

fn context(job: &JobSpec) -> CliResult<ParabolicContext> {
    let d = datum(job)?;
    let e = eps(&d, job)?;
    Ok(ParabolicContext::with_execution(Arc::new(d), e, exec(job))?)
}

fn rationals(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|x| x.to_string()).collect()
}

fn poly_json(p: &LaurentPoly) -> Value {
    Value::Object(p.terms().map(|(e, c)| (e.to_string(), json!(c))).collect())
}

pub fn coset_reps(job: &JobSpec) -> CliResult<Outcome> {
    let d = datum(job)?;
    let j = subset(&d, job.j.as_deref(), SimpleSubset::EMPTY, "J")?;
    let k = job.k.as_deref().map(|s| subset(&d, Some(s), SimpleSubset::EMPTY, "K")).transpose()?;
    let reps = d.coset_reps(j, k)?;
    let order = d.parabolic_order(d.simples())?;
    let wj = d.parabolic_order(j)?;
    let mut out = Outcome::default();

    let bad = reps.iter().find(|r| !d.is_left_minimal(j, r) || k.is_some_and(|k| !d.is_right_minimal(r, k)));
    out.check("minimal representatives", reps.len(), bad.map(|r| format!("{} is not minimal", d.word_string(r))));
    // |W_J d W_K| = |W_J| |W_K| / |W_{J ∩ Ad(d)K}|
    let total: usize = match k {
        None => reps.len() * wj,
        Some(k) => {
            let wk = d.parabolic_order(k)?;
            let mut t = 0;
            for r in &reps {
                t += wj * wk / d.parabolic_order(d.intersect_conjugate(j, r, k))?;
            }
            t
        }
    };
    out.check(
        "cosets partition W",
        1,
        (total != order).then(|| format!("coset sizes sum to {total}, |W| = {order}")),
    );

    let words: Vec<String> = reps.iter().map(|r| d.word_string(r)).collect();
    let kind = if k.is_some() { "double cosets" } else { "cosets" };
    out.line(format!("{} {kind} in W({})", reps.len(), d.name()));
    out.lines.extend(words.iter().cloned());
    out.result = json!({
        "type": d.name(),
        "J": j.to_string(),
        "K": k.map(|k| k.to_string()),
        "count": reps.len(),
        "reps": words,
    });
    Ok(out)
}

pub fn jtower(job: &JobSpec) -> CliResult<Outcome> {
    let d = datum(job)?;
    let e = eps(&d, job)?;
    let j = subset(&d, Some(required(&job.j, "J")?), SimpleSubset::EMPTY, "J")?;
    let w = element(&d, required(&job.w, "w")?)?;
    let chain = jtower::j_infinity(&d, j, &w, &e)?;
    let subsets: Vec<String> = chain.subsets().iter().map(|s| s.to_string()).collect();
    let display = format!("[{}]", subsets.join(" → "));
    let mut out = Outcome::default();
    let strict = subsets.len() - 1;
    out.check(
        "stabilizes within |J| steps",
        1,
        (strict > j.len()).then(|| format!("{strict} strict steps from {j}")),
    );
    let stable = jtower::is_stable_pair(&d, chain.j_infinity, chain.final_rep(), &e)?;
    out.check(
        "stable at J_∞",
        1,
        (!stable).then(|| format!("({}, {}) is not stable", chain.j_infinity, d.word_string(chain.final_rep()))),
    );
    out.line(format!("chain {display}"));
    out.line(format!("J_∞ = {}", chain.j_infinity));
    let summary = chain.summary(&d);
    out.result = json!({
        "type": d.name(),
        "eps": e.to_string(),
        "chain": subsets,
        "display": display,
        "steps": summary.steps.iter().map(|(w0, s)| json!({"w0": w0, "subset": s})).collect::<Vec<_>>(),
        "j_infinity": summary.j_infinity,
        "final_rep": d.word_string(chain.final_rep()),
    });
    Ok(out)
}

fn is_identity(m: &Matrix) -> bool {
    *m == linalg::identity(m.len())
}

pub fn duality(job: &JobSpec) -> CliResult<Outcome> {
    let ctx = context(job)?;
    let d = ctx.datum().clone();
    let j = subset(&d, job.j.as_deref(), d.simples(), "J")?;
    let delta = ctx.duality_matrix(j)?;
    let mut out = Outcome::default();
    out.check(
        "δ∘δ = id",
        delta.len(),
        (!is_identity(&linalg::mul(&delta, &delta))).then(|| format!("δ_J∘δ_J ≠ id for J = {j}")),
    );
    let irr = ctx.coset_irreducibles(j)?;
    let mut rows = Vec::new();
    let mut missing = None;
    for (i, chi) in irr.iter().enumerate() {
        let img = ctx.duality_on_irreducible(chi)?;
        let pos = irr.iter().position(|t| *t == img.image);
        if pos.is_none() && missing.is_none() {
            missing = Some(format!("δ(χ{i}) is not ± a coset irreducible"));
        }
        out.line(format!("δ(χ{i}) = {}χ{}", if img.sign < 0 { "-" } else { "" }, pos.map_or("?".into(), |p| p.to_string())));
        rows.push(json!({"chi": i, "sign": img.sign, "image": pos}));
    }
    out.check("irreducibles map to ± irreducibles", irr.len(), missing);
    out.result = json!({
        "type": d.name(),
        "eps": ctx.eps().to_string(),
        "J": j.to_string(),
        "dim": delta.len(),
        "irreducibles": rows,
    });
    Ok(out)
}

pub fn mackey(job: &JobSpec) -> CliResult<Outcome> {
    let ctx = context(job)?;
    let d = ctx.datum().clone();
    let j = subset(&d, job.j.as_deref(), d.simples(), "J")?;
    let k = subset(&d, Some(required(&job.k, "K")?), SimpleSubset::EMPTY, "K")?;
    let kp = subset(&d, Some(required(&job.k2, "K2")?), SimpleSubset::EMPTY, "K2")?;
    let lhs = ctx.mackey_lhs_matrix(k, kp, j)?;
    let rhs = ctx.mackey_rhs_matrix(k, kp, j)?;
    let mut out = Outcome::default();
    let diff = lhs
        .iter()
        .zip(&rhs)
        .enumerate()
        .find_map(|(r, (a, b))| a.iter().zip(b).position(|(x, y)| x != y).map(|c| (r, c)));
    out.check(
        "Mackey formula",
        lhs.len() * lhs.first().map_or(0, Vec::len),
        diff.map(|(r, c)| format!("entry ({r}, {c}): {} ≠ {}", lhs[r][c], rhs[r][c])),
    );
    let mut terms = Vec::new();
    for u in ctx.mackey_reps(k, kp, j)? {
        let (l, lp) = ctx.meet(k, kp, &u);
        let m = ctx.m_u(k, kp, j, &u)?;
        out.line(format!("u = {}: K ∩ Ad(u)K' = {l}, K' ∩ Ad(u⁻¹)K = {lp}, m_u = {m}", d.word_string(&u)));
        terms.push(json!({"u": d.word_string(&u), "L": l.to_string(), "L2": lp.to_string(), "m_u": m}));
    }
    out.result = json!({
        "type": d.name(),
        "eps": ctx.eps().to_string(),
        "J": j.to_string(),
        "K": k.to_string(),
        "K2": kp.to_string(),
        "terms": terms,
    });
    Ok(out)
}

pub fn signsum(job: &JobSpec) -> CliResult<Outcome> {
    let ctx = context(job)?;
    let d = ctx.datum().clone();
    let j = subset(&d, job.j.as_deref(), d.simples(), "J")?;
    let k = subset(&d, Some(required(&job.k, "K")?), SimpleSubset::EMPTY, "K")?;
    let h = subset(&d, Some(required(&job.h, "H")?), SimpleSubset::EMPTY, "H")?;
    let got = ctx.sign_sum(h, k, j)?;
    let want = ctx.sign(h);
    let mut terms = Vec::new();
    for kp in ctx.stable_subsets(j) {
        for u in ctx.mackey_reps(k, kp, j)? {
            if d.intersect_conjugate(k, &u, kp) == h {
                terms.push(json!({"K2": kp.to_string(), "u": d.word_string(&u), "sign": ctx.sign(kp)}));
            }
        }
    }
    let mut out = Outcome::default();
    out.check(
        "sign identity",
        terms.len(),
        (got != want).then(|| format!("sum {got}, expected (−1)^|H_ε| = {want}")),
    );
    out.line(format!("Σ = {got} over {} terms; (−1)^|H_ε| = {want}", terms.len()));
    out.result = json!({
        "type": d.name(),
        "eps": ctx.eps().to_string(),
        "H": h.to_string(),
        "K": k.to_string(),
        "J": j.to_string(),
        "sum": got,
        "expected": want,
        "terms": terms,
    });
    Ok(out)
}

pub fn cuspidal(job: &JobSpec) -> CliResult<Outcome> {
    let ctx = context(job)?;
    let d = ctx.datum().clone();
    let j = subset(&d, job.j.as_deref(), d.simples(), "J")?;
    let basis = ctx.cuspidal_space(j)?;
    let dim = ctx.space(j)?.dim();
    let mut out = Outcome::default();
    let mut failure = None;
    let mut cases = 0;
    for h in ctx.stable_subsets(j).into_iter().filter(|&h| h != j) {
        let e = ctx.restriction_matrix(h, j)?;
        for (i, b) in basis.iter().enumerate() {
            cases += 1;
            if failure.is_none() && linalg::apply(&e, b).iter().any(|x| !x.is_zero()) {
                failure = Some(format!("e_{{{h},{j}}} does not kill basis vector {i}"));
            }
        }
    }
    out.check("killed by every proper restriction", cases, failure);
    let induced = ctx.induced_span(j)?.len();
    out.check(
        "induced ⊕ cuspidal",
        1,
        (induced + basis.len() != dim).then(|| format!("{induced} + {} ≠ {dim}", basis.len())),
    );
    out.line(format!("cuspidal kernel on {j}: dimension {} of {dim}", basis.len()));
    out.result = json!({
        "type": d.name(),
        "eps": ctx.eps().to_string(),
        "J": j.to_string(),
        "space_dim": dim,
        "dim": basis.len(),
        "basis": basis.iter().map(|b| rationals(b)).collect::<Vec<_>>(),
    });
    Ok(out)
}

pub fn series(job: &JobSpec) -> CliResult<Outcome> {
    let ctx = context(job)?;
    let d = ctx.datum().clone();
    let j = subset(&d, job.j.as_deref(), d.simples(), "J")?;
    let series = ctx.hc_series(j)?;
    let dim = ctx.space(j)?.dim();
    let total: usize = series.iter().map(|s| s.dim()).sum();
    let all: Vec<_> = series.iter().flat_map(|s| s.basis.iter().cloned()).collect();
    let rank = linalg::rank(&all);
    let mut out = Outcome::default();
    out.check(
        "series span the space",
        1,
        (total != dim || rank != dim).then(|| format!("series dimensions sum to {total}, rank {rank}, space {dim}")),
    );
    let mut rows = Vec::new();
    for s in &series {
        let members: Vec<String> = s.members.iter().map(|m| m.to_string()).collect();
        out.line(format!("[{}] sign {:+} dimension {}", members.join(", "), s.sign, s.dim()));
        rows.push(json!({"members": members, "sign": s.sign, "dim": s.dim()}));
    }
    out.result = json!({
        "type": d.name(),
        "eps": ctx.eps().to_string(),
        "J": j.to_string(),
        "space_dim": dim,
        "series": rows,
    });
    Ok(out)
}

fn hecke_params(d: &CoxeterDatum, job: &JobSpec) -> CliResult<ParamFunction> {
    let Some(p) = &job.params else {
        return Ok(ParamFunction::equal(d.rank(), 1));
    };
    let halves = p
        .split([',', ' '])
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<u32>().map_err(|_| CliError::Input(format!("bad parameter {t:?}"))))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(ParamFunction::new(d, halves)?)
}

fn element_json(h: &HeckeAlgebra, x: &HeckeElement) -> Vec<Value> {
    x.support().map(|(w, c)| json!({"w": format_word(h.word(w)), "coeff": poly_json(c)})).collect()
}

fn element_string(h: &HeckeAlgebra, x: &HeckeElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    x.support().map(|(w, c)| format!("({c}) T[{}]", format_word(h.word(w)))).collect::<Vec<_>>().join(" + ")
}

pub fn hecke(job: &JobSpec) -> CliResult<Outcome> {
    let d = datum(job)?;
    let params = hecke_params(&d, job)?;
    let h = HeckeAlgebra::new(&d, params)?;
    let x = h.basis_word(&parse_word(job.w.as_deref().unwrap_or("e"))?)?;
    let y = h.basis_word(&parse_word(job.u.as_deref().unwrap_or("e"))?)?;
    let prod = x.mul(&y)?;
    let mut out = Outcome::default();

    let one = LaurentPoly::one();
    let mut failure = None;
    for s in 0..h.rank() {
        let ts = h.basis_word(&[s])?;
        let c = h.params().c(s);
        let want = ts.scale(&(&c - &one)).add(&h.unit().scale(&c))?;
        if ts.mul(&ts)? != want && failure.is_none() {
            failure = Some(format!("T_s{0}² ≠ (c-1)T_s{0} + c", s + 1));
        }
    }
    out.check("quadratic relations", h.rank(), failure);

    let seed = job.seed.unwrap_or(verify::SEED);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = h.dim();
    let mut failure = None;
    for _ in 0..HECKE_TRIPLES {
        let (a, b, c) = (h.basis(rng.gen_range(0..n)), h.basis(rng.gen_range(0..n)), h.basis(rng.gen_range(0..n)));
        if a.mul(&b)?.mul(&c)? != a.mul(&b.mul(&c)?)? && failure.is_none() {
            failure = Some(format!(
                "(T_x T_y) T_z ≠ T_x (T_y T_z) at x = {}",
                format_word(h.word(a.support().next().map_or(0, |p| p.0)))
            ));
        }
    }
    out.check("seeded associativity", HECKE_TRIPLES, failure);

    let text = element_string(&h, &prod);
    out.line(format!("{}: {text}", h.name()));
    out.result = json!({
        "algebra": h.name(),
        "params": h.params().halves(),
        "dim": n,
        "w": job.w.as_deref().unwrap_or("e"),
        "u": job.u.as_deref().unwrap_or("e"),
        "product": element_json(&h, &prod),
        "display": text,
        "seed": seed,
    });
    Ok(out)
}

pub fn sp_model_cmd(job: &JobSpec) -> CliResult<Outcome> {
    let n = job.sp_n.ok_or_else(|| CliError::Input("missing --n".into()))?;
    let k = job.sp_k.ok_or_else(|| CliError::Input("missing --k".into()))?;
    let m = sp_model(n, k)?;
    let mut out = Outcome::default();
    // n − k = a² + a iff 4(n − k) + 1 is a square
    let disc = 4 * (n - k) + 1;
    let square = (0..=disc).take_while(|r| r * r <= disc).any(|r| r * r == disc);
    out.check(
        "admissibility",
        1,
        (m.admissible != square).then(|| format!("sp_model({n}, {k}) admissible = {}", m.admissible)),
    );
    let dim = m.algebra.as_ref().map(|h| h.dim());
    if let Some(dim) = dim {
        let want = (1..=k).product::<usize>() << k;
        out.check("dimension 2^k k!", 1, (dim != want).then(|| format!("dimension {dim}, expected {want}")));
    }
    let exps = m.parameter_exponents();
    out.line(match (&exps, m.a) {
        (Some(e), Some(a)) => format!("n = {n}, k = {k}: admissible with a = {a}, c_s = v^e for e in {e:?}"),
        _ => format!("n = {n}, k = {k}: not admissible"),
    });
    out.result = json!({
        "n": n,
        "k": k,
        "admissible": m.admissible,
        "a": m.a,
        "algebra": m.algebra.as_ref().map(|h| h.name().to_string()),
        "exponents": exps,
        "dim": dim,
    });
    Ok(out)
}

pub fn omega_cmd(job: &JobSpec) -> CliResult<Outcome> {
    let d = Arc::new(datum(job)?);
    let level = match job.level.as_deref().unwrap_or("root") {
        "root" => OmegaLevel::Root,
        "reflection" => OmegaLevel::Reflection,
        other => return Err(CliError::Input(format!("--level must be root or reflection, got {other:?}"))),
    };
    let aff = affine_datum(d.clone(), None)?;
    let om = omega(&aff, level)?;
    let auts = match &job.eps {
        Some(_) => vec![eps(&d, job)?],
        None => d.diagram_automorphisms(AutLevel::Dynkin),
    };
    let mut out = Outcome::default();
    let mut cases = Vec::new();
    let mut failure = None;
    for c in &auts {
        let case = trichotomy(&aff, &om, c)?;
        if case.is_none() && level == OmegaLevel::Root && failure.is_none() {
            failure = Some(format!("c = {c} fits none of the three cases"));
        }
        out.line(format!("c = {c}: case {}", case.map_or("none", |k| k.roman())));
        cases.push(json!({"c": c.to_string(), "case": case.map(|k| k.roman())}));
    }
    if level == OmegaLevel::Root {
        out.check("trichotomy", auts.len(), failure);
    }
    let names = |p: &[usize]| p.iter().map(|&x| aff.node_name(x)).collect::<Vec<_>>();
    let elements: Vec<Value> = om
        .elements
        .iter()
        .map(|e| json!({"perm": names(&e.perm), "witness": d.word_string(&e.witness)}))
        .collect();
    out.lines.insert(0, format!("Ω for {} at {level:?} level: order {}, {}", d.name(), om.order(), om.shape()));
    out.result = json!({
        "type": d.name(),
        "level": level,
        "order": om.order(),
        "shape": om.shape().to_string(),
        "elements": elements,
        "cases": cases,
    });
    Ok(out)
}

pub fn quasirat(job: &JobSpec) -> CliResult<Outcome> {
    let exts: Vec<(String, ExtendedGroup)> = match job.type_name() {
        Some(_) => {
            let d = datum(job)?;
            let auts = match &job.eps {
                Some(_) => vec![eps(&d, job)?],
                None => d.diagram_automorphisms(AutLevel::Dynkin).into_iter().skip(1).collect(),
            };
            let ext = weyl_extension(&d, &auts)?;
            vec![(ext.group.name().to_string(), ext)]
        }
        None => verify::extension_examples()?,
    };
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    for (name, ext) in &exts {
        let gammas: Vec<usize> = match job.gamma {
            Some(g) if g >= ext.gamma.order() => {
                return Err(CliError::Input(format!("--gamma {g} out of range for Γ of order {}", ext.gamma.order())))
            }
            Some(g) => vec![g],
            None => (0..ext.gamma.order()).collect(),
        };
        let mut per_gamma = Vec::new();
        let mut failure = None;
        let mut cases = 0;
        for g in gammas {
            let certs = quasirationality_certify(ext, g, exec(job))?;
            for c in &certs {
                cases += 1;
                if !(c.ok() && c.unique_up_to_sign()) && failure.is_none() {
                    failure = Some(format!("{name}, γ = {}: χ{} has certificates {:?}", ext.gamma_labels[g], c.character, c.zetas));
                }
            }
            per_gamma.push(json!({
                "gamma": ext.gamma_labels[g],
                "certificates": certs.iter().map(|c| json!({
                    "character": c.character,
                    "degree": c.degree,
                    "zetas": c.zetas.iter().map(|z| z.to_string()).collect::<Vec<_>>(),
                    "vanishes": c.vanishes,
                })).collect::<Vec<_>>(),
            }));
        }
        out.check(&format!("quasi-rational: {name}"), cases, failure);
        out.line(format!("{name}: order {}, |Γ| = {}, {cases} certificates", ext.order(), ext.gamma.order()));
        rows.push(json!({"name": name, "order": ext.order(), "gamma_order": ext.gamma.order(), "cosets": per_gamma}));
    }
    out.result = json!({ "extensions": rows });
    Ok(out)
}

pub fn verify_all(job: &JobSpec) -> CliResult<Outcome> {
    let mut types = job.groups.clone();
    if let Some(t) = job.type_name() {
        types.push(t);
    }
    for t in &types {
        CoxeterDatum::parse(t)?;
    }
    let reports = if types.is_empty() {
        verify::run_all(exec(job))
    } else {
        verify::run_parabolic(exec(job), &types)
    };
    let mut out = Outcome::default();
    for r in &reports {
        out.line(r.line());
        out.checks.push(Check {
            name: format!("{}. {}", r.id, r.name),
            passed: r.passed,
            cases: r.cases,
            detail: r.detail.clone(),
            counterexample: r.counterexample.clone(),
        });
    }
    out.result = json!({
        "types": if types.is_empty() { Value::from("all") } else { json!(types) },
        "suites": reports.iter().map(|r| r.name.clone()).collect::<Vec<_>>(),
    });
    Ok(out)
}

pub fn cache_status(cache: &TableCache) -> CliResult<Outcome> {
    let st = cache.status()?;
    let mut out = Outcome::default();
    out.line(format!("{}: {} entries, {} bytes", st.dir.display(), st.entries, st.bytes));
    for (fp, size) in &st.files {
        out.line(format!("{fp}  {size}"));
    }
    out.result = json!({
        "dir": st.dir,
        "entries": st.entries,
        "bytes": st.bytes,
        "files": st.files.iter().map(|(f, b)| json!({"fingerprint": f, "bytes": b})).collect::<Vec<_>>(),
    });
    Ok(out)
}

pub fn cache_clear(cache: &TableCache) -> CliResult<Outcome> {
    let removed = cache.clear()?;
    let mut out = Outcome::default();
    out.line(format!("removed {removed} entries from {}", cache.dir().display()));
    out.result = json!({ "dir": cache.dir(), "removed": removed });
    Ok(out)
}

pub fn cache_warm(job: &JobSpec, cache: &TableCache) -> CliResult<Outcome> {
    let mut names = job.groups.clone();
    if let Some(t) = job.type_name() {
        names.push(t);
    }
    if names.is_empty() {
        return Err(CliError::Input("nothing to warm: pass --groups or --type/--rank".into()));
    }
    let mut data = Vec::new();
    for n in &names {
        let d = CoxeterDatum::parse(n)?;
        let order = d.expected_order();
        if order > CLASS_BOUND as u128 {
            return Err(CliError::Input(format!(
                "refusing to warm W({}): order {order} exceeds the bound {CLASS_BOUND}",
                d.name()
            )));
        }
        data.push(d);
    }
    let mut out = Outcome::default();
    let mut rows = Vec::new();
    let mut failure = None;
    for d in &data {
        let g = Arc::new(FiniteGroup::weyl(d)?);
        let (table, cached): (TableData, bool) = match cache.load(&g)? {
            Some(t) => (t, true),
            None => {
                let t = compute_table(&g, exec(job))?;
                cache
                    .store(&g, &t)
                    .map_err(|e| parahecke::Error::Cache(format!("cannot write to {}: {e}", cache.dir().display())))?;
                (t, false)
            }
        };
        if let Some(defect) = verify::table_defect(&g, &table.values) {
            failure.get_or_insert(format!("{}: {defect}", g.name()));
        }
        let fp = TableCache::fingerprint(&g)?.unwrap_or_default();
        out.line(format!("{} (order {}): {} irreducibles, {}", g.name(), g.order(), table.values.len(), if cached { "cached" } else { "stored" }));
        rows.push(json!({"group": g.name(), "order": g.order(), "irreducibles": table.values.len(), "fingerprint": fp}));
    }
    out.check("orthogonality of warmed tables", data.len(), failure);
    out.result = json!({ "dir": cache.dir(), "groups": rows });
    Ok(out)
}
