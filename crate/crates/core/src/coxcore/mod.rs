//! Finite crystallographic Coxeter groups.
//!
//! Elements are permutations of the root set. Products cost `O(|Φ|)`, the
//! length is a count of positive roots made negative, and conjugates of simple
//! reflections are read off directly from root images.

mod automorphism;
pub mod cartan;
mod datum;
mod subset;

pub use automorphism::{AutLevel, DiagramAut};
pub use cartan::{CartanType, Series};
pub use datum::{
    format_word, parse_word, Component, CoxeterDatum, GroupElement, WeylElements, DEFAULT_RANK_BOUND,
    ENUMERATION_BOUND,
};
pub use subset::SimpleSubset;

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn weyl(s: &str) -> CoxeterDatum {
        CoxeterDatum::parse(s).unwrap()
    }

    fn words(d: &CoxeterDatum, ws: &[GroupElement]) -> Vec<String> {
        ws.iter().map(|w| d.word_string(w)).collect()
    }

    /// Closure of the identity under right multiplication by simple
    /// reflections, computed on words only.
    fn brute_force_order(d: &CoxeterDatum) -> usize {
        let mut seen: HashSet<GroupElement> = HashSet::new();
        let mut frontier = vec![d.identity()];
        seen.insert(d.identity());
        while let Some(w) = frontier.pop() {
            for s in 0..d.rank() {
                let y = w.mul(d.simple(s));
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        seen.len()
    }

    #[test]
    fn small_groups() {
        let a1 = weyl("A1");
        assert_eq!(a1.elements().unwrap().len(), 2);
        assert_eq!(a1.n_pos(), 1);
        let a2 = weyl("A2");
        assert_eq!(a2.elements().unwrap().len(), 6);
        assert_eq!(a2.n_pos(), 3);
        let b2 = weyl("B2");
        assert_eq!(b2.elements().unwrap().len(), 8);
        assert_eq!(b2.n_pos(), 4);
    }

    #[test]
    fn orders_match_degrees() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "F4", "G2", "A1xA1", "A2xB2"] {
            let d = weyl(t);
            let n = d.elements().unwrap().len();
            assert_eq!(n as u128, d.expected_order(), "{t}");
            if d.rank() <= 4 {
                assert_eq!(brute_force_order(&d), n, "{t}");
            }
        }
    }

    #[test]
    fn root_invariants() {
        for t in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let d = weyl(t);
            assert_eq!(d.n_roots() % 2, 0);
            for i in 0..d.n_pos() {
                let neg: Vec<i32> = d.root(i).iter().map(|c| -c).collect();
                assert_eq!(d.root_index(&neg), Some(d.negate(i)));
            }
            for s in 0..d.rank() {
                let p = d.simple(s);
                for i in 0..d.n_pos() {
                    if i == s {
                        assert_eq!(p.apply(i), d.negate(s));
                    } else {
                        assert!(d.is_positive(p.apply(i)), "{t}: s{} sends root {i} negative", s + 1);
                    }
                }
            }
        }
    }

    #[test]
    fn root_lengths() {
        let b2 = weyl("B2");
        // α1 long, α2 short; α1+α2 short, α1+2α2 long
        assert_eq!(b2.norm(0), 4);
        assert_eq!(b2.norm(1), 2);
        let c2 = weyl("C2");
        assert_eq!(c2.norm(0), 2);
        assert_eq!(c2.norm(1), 4);
        let g2 = weyl("G2");
        assert_eq!(g2.norm(0), 2);
        assert_eq!(g2.norm(1), 6);
    }

    #[test]
    fn lengths() {
        let a2 = weyl("A2");
        assert_eq!(a2.length(&a2.identity()), 0);
        let w0 = a2.longest_element(a2.simples());
        assert_eq!(a2.length(&w0), 3);
        let b2 = weyl("B2");
        assert_eq!(b2.length(&b2.longest_element(b2.simples())), 4);
        let els = b2.elements().unwrap();
        for i in 0..els.len() {
            let w = els.get(i);
            assert_eq!(b2.length(w), els.length(i));
            assert_eq!(b2.reduced_word(w).len(), els.length(i));
            assert_eq!(&b2.from_word(&els.word(i)).unwrap(), w);
            // w(-α) = -w(α)
            for r in 0..b2.n_roots() {
                assert_eq!(w.apply(b2.negate(r)), b2.negate(w.apply(r)));
            }
        }
    }

    #[test]
    fn double_coset_minima() {
        let a2 = weyl("A2");
        let s1 = SimpleSubset::singleton(0);
        let w0 = a2.longest_element(a2.simples());
        let m = a2.min_double_coset_rep(s1, &w0, s1);
        assert_eq!(a2.word_string(&m), "s2");
        assert_eq!(a2.min_double_coset_rep(s1, &m, s1), m);
        let i = a2.simples();
        for w in a2.elements().unwrap().iter() {
            assert_eq!(&a2.min_double_coset_rep(SimpleSubset::EMPTY, w, SimpleSubset::EMPTY), w);
            assert!(a2.min_double_coset_rep(i, w, i).is_identity());
        }
    }

    #[test]
    fn coset_representatives() {
        let a2 = weyl("A2");
        let s1 = SimpleSubset::singleton(0);
        let s2 = SimpleSubset::singleton(1);
        let left = a2.coset_reps(s1, None).unwrap();
        let mut got = words(&a2, &left);
        got.sort();
        assert_eq!(got, vec!["e", "s2", "s2 s1"]);
        let both = a2.coset_reps(s1, Some(s2)).unwrap();
        let mut got = words(&a2, &both);
        got.sort();
        assert_eq!(got, vec!["e", "s2 s1"]);
        assert_eq!(a2.coset_reps(SimpleSubset::EMPTY, None).unwrap().len(), 6);
    }

    #[test]
    fn index_formula_and_double_coset_partition() {
        for t in ["A1", "A2", "A3", "A4", "B2", "B3", "B4", "C3", "D4", "G2", "F4"] {
            let d = weyl(t);
            let order = d.elements().unwrap().len();
            for j in d.simples().subsets() {
                let reps = d.coset_reps(j, None).unwrap().len();
                assert_eq!(reps * d.parabolic_order(j).unwrap(), order, "{t} {j}");
            }
        }
        for t in ["A1", "A2", "A3", "B2", "B3", "G2"] {
            let d = weyl(t);
            let els = d.elements().unwrap();
            for j in d.simples().subsets() {
                for k in d.simples().subsets() {
                    let reps: HashSet<GroupElement> = d.coset_reps(j, Some(k)).unwrap().into_iter().collect();
                    let mut hit: HashSet<GroupElement> = HashSet::new();
                    for w in els.iter() {
                        let m = d.min_double_coset_rep(j, w, k);
                        assert!(reps.contains(&m), "{t}");
                        hit.insert(m);
                    }
                    assert_eq!(hit, reps);
                }
            }
        }
    }

    #[test]
    fn conjugate_subsets() {
        let a2 = weyl("A2");
        let s1 = SimpleSubset::singleton(0);
        assert_eq!(a2.ad_simple_subset(&a2.identity(), s1), Some(s1));
        assert_eq!(a2.ad_simple_subset(a2.simple(1), s1), None);
        let b2 = weyl("B2");
        let w0 = b2.longest_element(b2.simples());
        assert_eq!(b2.ad_simple_subset(&w0, b2.simples()), Some(b2.simples()));
        for t in ["A3", "B3", "D4"] {
            let d = weyl(t);
            let m = d.coxeter_matrix();
            for w in d.elements().unwrap().iter() {
                for j in d.simples().subsets() {
                    if let Some(k) = d.ad_simple_subset(w, j) {
                        assert_eq!(k.len(), j.len());
                        // the bijection s -> w s w^-1 preserves the Coxeter matrix
                        let img = |s: usize| {
                            let r = w.apply(s);
                            if r < d.n_pos() { r } else { r - d.n_pos() }
                        };
                        for a in j.nodes() {
                            for b in j.nodes() {
                                assert_eq!(m[a][b], m[img(a)][img(b)]);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(weyl("A1").diagram_automorphisms(AutLevel::Dynkin).len(), 1);
        assert_eq!(weyl("A2").diagram_automorphisms(AutLevel::Dynkin).len(), 2);
        assert_eq!(weyl("D4").diagram_automorphisms(AutLevel::Dynkin).len(), 6);
        let b2 = weyl("B2");
        assert_eq!(b2.diagram_automorphisms(AutLevel::Dynkin).len(), 1);
        assert_eq!(b2.diagram_automorphisms(AutLevel::Coxeter).len(), 2);
        for t in ["A3", "D4", "E6", "B3", "F4"] {
            let d = weyl(t);
            let dynkin = d.diagram_automorphisms(AutLevel::Dynkin);
            let cox = d.diagram_automorphisms(AutLevel::Coxeter);
            assert!(dynkin.iter().all(|e| cox.contains(e)));
            for e in &dynkin {
                let p = e.root_perm(&d).unwrap();
                for r in 0..d.n_roots() {
                    assert_eq!(d.norm(p.apply(r)), d.norm(r));
                    assert_eq!(d.is_positive(p.apply(r)), d.is_positive(r));
                }
            }
        }
    }

    #[test]
    fn automorphism_on_elements() {
        let a2 = weyl("A2");
        let flip = DiagramAut::named(&a2, "flip").unwrap();
        let w = a2.parse_element("s1 s2").unwrap();
        assert_eq!(a2.word_string(&flip.apply_element(&a2, &w)), "s2 s1");
        let b2 = weyl("B2");
        let swap = DiagramAut::new(&b2, vec![1, 0]).unwrap();
        assert_eq!(swap.level(), AutLevel::Coxeter);
        let x = b2.parse_element("s1 s2 s1").unwrap();
        assert_eq!(b2.word_string(&swap.apply_element(&b2, &x)), "s2 s1 s2");
        let d4 = weyl("D4");
        let tri = DiagramAut::named(&d4, "triality").unwrap();
        assert_eq!(tri.order(), 3);
        assert_eq!(tri.orbit_count(d4.simples()), 2);
    }
}
