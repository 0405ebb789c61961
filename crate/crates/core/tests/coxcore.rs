use parahecke::coxcore::{AutLevel, CoxeterDatum, SimpleSubset};

/// Coefficients of `∏ (1 + q + … + q^{d−1})`.
fn poincare(degrees: &[usize]) -> Vec<usize> {
    let mut p = vec![1usize];
    for &d in degrees {
        let mut next = vec![0; p.len() + d - 1];
        for (i, &c) in p.iter().enumerate() {
            for j in 0..d {
                next[i + j] += c;
            }
        }
        p = next;
    }
    p
}

fn length_distribution(d: &CoxeterDatum) -> Vec<usize> {
    let els = d.elements().unwrap();
    let mut out = vec![0; d.n_pos() + 1];
    for i in 0..els.len() {
        out[els.length(i)] += 1;
    }
    out
}

#[test]
fn lengths_follow_the_degrees() {
    let cases: &[(&str, &[usize])] = &[
        ("A3", &[2, 3, 4]),
        ("B3", &[2, 4, 6]),
        ("C3", &[2, 4, 6]),
        ("D4", &[2, 4, 4, 6]),
        ("G2", &[2, 6]),
        ("F4", &[2, 6, 8, 12]),
        ("A1xB2", &[2, 2, 4]),
    ];
    for (t, degrees) in cases {
        let d = CoxeterDatum::parse(t).unwrap();
        assert_eq!(length_distribution(&d), poincare(degrees), "{t}");
        // |Φ⁺| = Σ (d_i − 1)
        assert_eq!(d.n_pos(), degrees.iter().map(|x| x - 1).sum::<usize>(), "{t}");
    }
}

#[test]
fn words_round_trip() {
    let d = CoxeterDatum::parse("B3").unwrap();
    let els = d.elements().unwrap();
    for i in 0..els.len() {
        let w = els.get(i);
        let word = d.word_string(w);
        assert_eq!(&d.parse_element(&word).unwrap(), w);
        assert_eq!(d.reduced_word(w).len(), d.length(w));
    }
    assert!(d.parse_element("s4").is_err());
}

#[test]
fn double_cosets_partition_the_group() {
    for t in ["A3", "B3", "D4", "G2"] {
        let d = CoxeterDatum::parse(t).unwrap();
        let order = d.expected_order() as usize;
        for j in d.simples().subsets() {
            let wj = d.parabolic_order(j).unwrap();
            assert_eq!(d.coset_reps(j, None).unwrap().len() * wj, order, "{t} {j}");
            for k in d.simples().subsets() {
                let wk = d.parabolic_order(k).unwrap();
                let total: usize = d
                    .coset_reps(j, Some(k))
                    .unwrap()
                    .iter()
                    .map(|r| wj * wk / d.parabolic_order(d.intersect_conjugate(j, r, k)).unwrap())
                    .sum();
                assert_eq!(total, order, "{t} J={j} K={k}");
            }
        }
    }
}

#[test]
fn minimal_representative_is_unique_in_its_double_coset() {
    let d = CoxeterDatum::parse("A3").unwrap();
    let els = d.elements().unwrap();
    let j = SimpleSubset::from_nodes([0]);
    let k = SimpleSubset::from_nodes([1, 2]);
    let reps = d.coset_reps(j, Some(k)).unwrap();
    for i in 0..els.len() {
        let m = d.min_double_coset_rep(j, els.get(i), k);
        assert!(reps.contains(&m));
        assert!(d.length(&m) <= els.length(i));
    }
}

#[test]
fn dynkin_automorphism_groups() {
    for (t, n) in [("A1", 1), ("A2", 2), ("A3", 2), ("B3", 1), ("D4", 6), ("D5", 2), ("E6", 2), ("F4", 1)] {
        let d = CoxeterDatum::parse(t).unwrap();
        assert_eq!(d.diagram_automorphisms(AutLevel::Dynkin).len(), n, "{t}");
    }
}
