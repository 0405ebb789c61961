//! Piece indices `^{ε(J)}W` and the tower `J ⊇ J₁ ⊇ … ⊇ J_∞`.

use serde::Serialize;

use crate::coxcore::{CoxeterDatum, DiagramAut, GroupElement, SimpleSubset};
use crate::error::{Error, Result};

/// One floor of the tower: the double coset minimum used at that floor and
/// the subset it produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerStep {
    pub w0: GroupElement,
    pub subset: SimpleSubset,
}

#[derive(Clone, Debug)]
pub struct TowerChain {
    pub eps: DiagramAut,
    pub start: SimpleSubset,
    pub w: GroupElement,
    pub steps: Vec<TowerStep>,
    pub j_infinity: SimpleSubset,
}

impl TowerChain {
    /// `J = J₀, J₁, …, J_∞` without repetition of the stable value.
    pub fn subsets(&self) -> Vec<SimpleSubset> {
        let mut out = vec![self.start];
        for st in &self.steps {
            if *out.last().unwrap() != st.subset {
                out.push(st.subset);
            }
        }
        out
    }

    /// Double coset minimum at the stable floor.
    pub fn final_rep(&self) -> &GroupElement {
        &self.steps.last().expect("tower has at least one step").w0
    }

    pub fn summary(&self, datum: &CoxeterDatum) -> TowerSummary {
        TowerSummary {
            start: self.start.to_string(),
            w: datum.word_string(&self.w),
            steps: self
                .steps
                .iter()
                .map(|s| (datum.word_string(&s.w0), s.subset.to_string()))
                .collect(),
            j_infinity: self.j_infinity.to_string(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerSummary {
    pub start: String,
    pub w: String,
    pub steps: Vec<(String, String)>,
    pub j_infinity: String,
}

/// `^{ε(J)}W`, the minimal length representatives of `W_{ε(J)} \ W`.
pub fn piece_indices(datum: &CoxeterDatum, j: SimpleSubset, eps: &DiagramAut) -> Result<Vec<GroupElement>> {
    datum.coset_reps(eps.apply_subset(j), None)
}

fn check_piece(datum: &CoxeterDatum, j: SimpleSubset, w: &GroupElement, eps: &DiagramAut) -> Result<()> {
    let ej = eps.apply_subset(j);
    if datum.is_left_minimal(ej, w) {
        Ok(())
    } else {
        Err(Error::NotMinimal {
            word: datum.word_string(w),
            reason: format!("has a left descent in ε(J) = {ej}"),
        })
    }
}

fn stable_unchecked(datum: &CoxeterDatum, j: SimpleSubset, w: &GroupElement, eps: &DiagramAut) -> bool {
    datum.ad_simple_subset(w, j) == Some(eps.apply_subset(j))
}

/// `ε⁻¹(Ad(w)J) = J`.
pub fn is_stable_pair(datum: &CoxeterDatum, j: SimpleSubset, w: &GroupElement, eps: &DiagramAut) -> Result<bool> {
    check_piece(datum, j, w, eps)?;
    Ok(stable_unchecked(datum, j, w, eps))
}

/// `J ∩ ε⁻¹(Ad(w₀)J)` with `w₀ = min(W_{ε(J)} w W_J)`.
pub fn tower_step(datum: &CoxeterDatum, j: SimpleSubset, w: &GroupElement, eps: &DiagramAut) -> TowerStep {
    let ej = eps.apply_subset(j);
    let w0 = datum.min_double_coset_rep(ej, w, j);
    let meet = datum.intersect_conjugate(ej, &w0, j);
    TowerStep {
        w0,
        subset: eps.preimage_subset(meet),
    }
}

/// Iterates [`tower_step`] from `J` until the subset stops shrinking. The
/// last recorded step repeats the stable subset.
pub fn j_infinity(datum: &CoxeterDatum, j: SimpleSubset, w: &GroupElement, eps: &DiagramAut) -> Result<TowerChain> {
    check_piece(datum, j, w, eps)?;
    let mut steps = Vec::new();
    let mut cur = j;
    loop {
        let step = tower_step(datum, cur, w, eps);
        let next = step.subset;
        steps.push(step);
        if next == cur {
            break;
        }
        cur = next;
    }
    Ok(TowerChain {
        eps: eps.clone(),
        start: j,
        w: w.clone(),
        steps,
        j_infinity: cur,
    })
}

/// `{ w ∈ ^{ε(J)}W : ε⁻¹(Ad(w)J) = J }`.
pub fn cw_set(datum: &CoxeterDatum, j: SimpleSubset, eps: &DiagramAut) -> Result<Vec<GroupElement>> {
    Ok(piece_indices(datum, j, eps)?
        .into_iter()
        .filter(|w| stable_unchecked(datum, j, w, eps))
        .collect())
}

/// Whether a finite set of elements is closed under products.
pub fn is_closed(set: &[GroupElement]) -> bool {
    let members: std::collections::HashSet<&GroupElement> = set.iter().collect();
    set.iter().all(|a| set.iter().all(|b| members.contains(&a.mul(b))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxcore::AutLevel;

    fn a2() -> CoxeterDatum {
        CoxeterDatum::parse("A2").unwrap()
    }

    fn s(i: usize) -> SimpleSubset {
        SimpleSubset::singleton(i)
    }

    fn sorted_words(d: &CoxeterDatum, v: &[GroupElement]) -> Vec<String> {
        let mut out: Vec<String> = v.iter().map(|w| d.word_string(w)).collect();
        out.sort();
        out
    }

    #[test]
    fn piece_index_examples() {
        let d = a2();
        let id = DiagramAut::identity(2);
        let flip = DiagramAut::named(&d, "flip").unwrap();
        assert_eq!(piece_indices(&d, s(0), &id).unwrap().len(), 3);
        assert_eq!(piece_indices(&d, SimpleSubset::EMPTY, &id).unwrap().len(), 6);
        assert_eq!(sorted_words(&d, &piece_indices(&d, s(0), &flip).unwrap()), vec!["e", "s1", "s1 s2"]);
    }

    #[test]
    fn stability_examples() {
        let d = a2();
        let id = DiagramAut::identity(2);
        let flip = DiagramAut::named(&d, "flip").unwrap();
        for j in d.simples().subsets() {
            assert!(is_stable_pair(&d, j, &d.identity(), &id).unwrap());
        }
        assert!(!is_stable_pair(&d, s(0), &d.parse_element("s2").unwrap(), &id).unwrap());
        assert!(is_stable_pair(&d, s(0), &d.parse_element("s1 s2").unwrap(), &flip).unwrap());
        // s2 has a left descent in ε({s1}) = {s2}
        assert!(matches!(
            is_stable_pair(&d, s(0), &d.parse_element("s2").unwrap(), &flip),
            Err(Error::NotMinimal { .. })
        ));
    }

    #[test]
    fn tower_examples() {
        let d = a2();
        let id = DiagramAut::identity(2);
        let flip = DiagramAut::named(&d, "flip").unwrap();
        let full = j_infinity(&d, d.simples(), &d.identity(), &id).unwrap();
        assert_eq!(full.steps.len(), 1);
        assert_eq!(full.j_infinity, d.simples());
        let t = j_infinity(&d, s(0), &d.parse_element("s2").unwrap(), &id).unwrap();
        assert_eq!(t.steps[0].subset, SimpleSubset::EMPTY);
        assert_eq!(d.word_string(&t.steps[0].w0), "s2");
        assert_eq!(t.j_infinity, SimpleSubset::EMPTY);
        let t = j_infinity(&d, s(0), &d.identity(), &flip).unwrap();
        assert_eq!(t.steps[0].subset, SimpleSubset::EMPTY);
        assert!(j_infinity(&d, s(0), &d.parse_element("s2 s1").unwrap(), &flip).is_err());
    }

    #[test]
    fn cw_examples() {
        let d = a2();
        let id = DiagramAut::identity(2);
        let flip = DiagramAut::named(&d, "flip").unwrap();
        assert_eq!(cw_set(&d, SimpleSubset::EMPTY, &id).unwrap().len(), 6);
        assert_eq!(sorted_words(&d, &cw_set(&d, s(0), &id).unwrap()), vec!["e"]);
        assert_eq!(sorted_words(&d, &cw_set(&d, s(0), &flip).unwrap()), vec!["s1 s2"]);
    }

    /// `ε(s) ∈ w₀ W_J w₀⁻¹` tested on group elements.
    fn parabolic_reading(d: &CoxeterDatum, j: SimpleSubset, w0: &GroupElement, eps: &DiagramAut) -> SimpleSubset {
        let wj: Vec<GroupElement> = d
            .parabolic_indices(j)
            .unwrap()
            .into_iter()
            .map(|i| d.elements().unwrap().get(i).clone())
            .collect();
        let inv = w0.inverse();
        SimpleSubset::from_nodes(j.nodes().filter(|&x| {
            let conj = inv.mul(d.simple(eps.apply_node(x))).mul(w0);
            wj.contains(&conj)
        }))
    }

    #[test]
    fn tower_properties_exhaustive() {
        for t in ["A1", "A2", "A3", "B2", "B3", "C3", "G2", "A1xA1", "A1xA2", "D4"] {
            let d = CoxeterDatum::parse(t).unwrap();
            for eps in d.diagram_automorphisms(AutLevel::Dynkin) {
                for j in d.simples().subsets() {
                    let pieces = piece_indices(&d, j, &eps).unwrap();
                    assert_eq!(pieces.len() * d.parabolic_order(j).unwrap(), d.elements().unwrap().len());
                    for w in &pieces {
                        let chain = j_infinity(&d, j, w, &eps).unwrap();
                        let subs = chain.subsets();
                        assert!(subs.len() <= j.len() + 1, "{t}");
                        assert!(chain.steps.len() <= j.len() + 1, "{t}");
                        for pair in subs.windows(2) {
                            assert!(pair[1].is_subset(pair[0]) && pair[1] != pair[0]);
                        }
                        let jinf = chain.j_infinity;
                        let rep = d.min_double_coset_rep(eps.apply_subset(jinf), w, jinf);
                        assert_eq!(&rep, chain.final_rep());
                        assert!(is_stable_pair(&d, jinf, &rep, &eps).unwrap(), "{t} {j}");
                        if is_stable_pair(&d, j, w, &eps).unwrap() {
                            assert_eq!(chain.steps.len(), 1);
                            assert_eq!(jinf, j);
                        }
                        if d.rank() <= 3 {
                            let mut cur = j;
                            for st in &chain.steps {
                                assert_eq!(parabolic_reading(&d, cur, &st.w0, &eps), st.subset, "{t}");
                                cur = st.subset;
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn cw_is_subgroup_for_identity() {
        for t in ["A2", "A3", "B3", "D4", "G2"] {
            let d = CoxeterDatum::parse(t).unwrap();
            let id = DiagramAut::identity(d.rank());
            for j in d.simples().subsets() {
                let cw = cw_set(&d, j, &id).unwrap();
                assert!(is_closed(&cw), "{t} {j}");
                // same set as the elements preserving {α_s : s ∈ J}
                let direct: Vec<GroupElement> = d
                    .elements()
                    .unwrap()
                    .iter()
                    .filter(|w| {
                        let imgs: Vec<usize> = j.nodes().map(|x| w.apply(x)).collect();
                        let mut a = imgs.clone();
                        a.sort();
                        a == j.nodes().collect::<Vec<_>>()
                    })
                    .cloned()
                    .collect();
                assert_eq!(cw, direct, "{t} {j}");
            }
        }
    }
}
