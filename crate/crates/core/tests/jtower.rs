use parahecke::coxcore::{AutLevel, CoxeterDatum, DiagramAut, SimpleSubset};
use parahecke::jtower::{cw_set, is_closed, is_stable_pair, j_infinity, piece_indices};

#[test]
fn a2_example() {
    let d = CoxeterDatum::parse("A2").unwrap();
    let id = DiagramAut::identity(2);
    let w = d.parse_element("s2").unwrap();
    let chain = j_infinity(&d, SimpleSubset::from_nodes([0]), &w, &id).unwrap();
    assert_eq!(chain.subsets(), vec![SimpleSubset::from_nodes([0]), SimpleSubset::EMPTY]);
    assert_eq!(chain.j_infinity, SimpleSubset::EMPTY);
}

#[test]
fn piece_counts_and_stable_limits() {
    for t in ["A3", "B3", "D4", "A1xA2"] {
        let d = CoxeterDatum::parse(t).unwrap();
        let order = d.expected_order() as usize;
        for eps in d.diagram_automorphisms(AutLevel::Dynkin) {
            for j in d.simples().subsets() {
                let pieces = piece_indices(&d, j, &eps).unwrap();
                assert_eq!(pieces.len() * d.parabolic_order(eps.apply_subset(j)).unwrap(), order, "{t} {eps} {j}");
                for w in &pieces {
                    let chain = j_infinity(&d, j, w, &eps).unwrap();
                    let subs = chain.subsets();
                    assert!(subs.windows(2).all(|p| p[1].is_subset(p[0]) && p[1] != p[0]));
                    assert!(subs.len() - 1 <= j.len());
                    assert!(is_stable_pair(&d, chain.j_infinity, chain.final_rep(), &eps).unwrap());
                }
            }
        }
    }
}

#[test]
fn stable_set_is_a_group_for_the_identity() {
    let d = CoxeterDatum::parse("B3").unwrap();
    let id = DiagramAut::identity(3);
    for j in d.simples().subsets() {
        let set = cw_set(&d, j, &id).unwrap();
        assert!(set.iter().any(|w| w.is_identity()));
        assert!(is_closed(&set), "{j}");
    }
}

#[test]
fn non_minimal_input_is_rejected() {
    let d = CoxeterDatum::parse("A2").unwrap();
    let w = d.parse_element("s1 s2").unwrap();
    assert!(j_infinity(&d, SimpleSubset::from_nodes([0]), &w, &DiagramAut::identity(2)).is_err());
}
