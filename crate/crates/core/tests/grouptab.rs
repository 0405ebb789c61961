use std::sync::Arc;

use num_rational::BigRational;
use parahecke::coxcore::{AutLevel, CoxeterDatum};
use parahecke::cyclotomic::Cyclotomic;
use parahecke::grouptab::{
    character_table, cyclic_group, induce, restrict, symmetric_group, weyl_action, CharacterTable, ClassFunction,
    FiniteGroup,
};
use parahecke::Error;

fn weyl(t: &str) -> (CoxeterDatum, Arc<FiniteGroup>) {
    let d = CoxeterDatum::parse(t).unwrap();
    let g = Arc::new(FiniteGroup::weyl(&d).unwrap());
    (d, g)
}

fn int(k: i64) -> Cyclotomic {
    Cyclotomic::from_int(k)
}

/// Both orthogonality relations, summed element by element.
fn check_orthogonality(t: &CharacterTable) {
    let g = t.group();
    let cl = g.classes().unwrap();
    let n = g.order() as i64;
    let rows = t.values();
    for (a, ra) in rows.iter().enumerate() {
        for (b, rb) in rows.iter().enumerate() {
            let s: Cyclotomic = (0..g.order())
                .map(|x| {
                    let c = cl.class_of[x] as usize;
                    &ra[c] * &rb[c].conj()
                })
                .sum();
            assert_eq!(s, int(if a == b { n } else { 0 }), "{} rows {a} {b}", g.name());
        }
    }
    for c1 in 0..cl.len() {
        for c2 in 0..cl.len() {
            let s: Cyclotomic = rows.iter().map(|r| &r[c1] * &r[c2].conj()).sum();
            let expect = if c1 == c2 { (g.order() / cl.sizes[c1]) as i64 } else { 0 };
            assert_eq!(s, int(expect), "{} columns {c1} {c2}", g.name());
        }
    }
    for r in rows {
        assert!(r.iter().all(Cyclotomic::is_integral));
    }
    let sq: i64 = t.degrees().iter().map(|d| d * d).sum();
    assert_eq!(sq, n);
}

#[test]
fn class_examples() {
    let s3 = symmetric_group(3).unwrap();
    let mut sizes = s3.classes().unwrap().sizes.clone();
    sizes.sort();
    assert_eq!(sizes, vec![1, 2, 3]);
    let (_, a2) = weyl("A2");
    let cl = a2.classes().unwrap();
    // enumeration order e, s1, s2, s1s2, ... puts transpositions before 3-cycles
    assert_eq!(cl.sizes, vec![1, 3, 2]);
    let triv = cyclic_group(1).unwrap();
    assert_eq!(triv.classes().unwrap().len(), 1);
    let (_, b2) = weyl("B2");
    assert_eq!(b2.classes().unwrap().len(), 5);
    for g in [&a2, &b2] {
        let cl = g.classes().unwrap();
        assert_eq!(cl.sizes.iter().sum::<usize>(), g.order());
        for (c, &r) in cl.reps.iter().enumerate() {
            let first = (0..g.order()).find(|&x| cl.class_of[x] as usize == c).unwrap();
            assert_eq!(first, r as usize);
        }
        assert!(g.check_associative());
    }
}

#[test]
fn class_bound_is_enforced() {
    let big = FiniteGroup::from_mul("C6000", 6000, Default::default(), |a, b| (a + b) % 6000).unwrap();
    assert!(matches!(big.classes(), Err(Error::OrderBound { order: 6000, .. })));
}

#[test]
fn small_tables() {
    let (_, a2) = weyl("A2");
    let t = character_table(&a2).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 2]);
    assert_eq!(t.values()[1], vec![int(1), int(-1), int(1)]);
    assert_eq!(t.values()[2], vec![int(2), int(0), int(-1)]);
    check_orthogonality(&t);
    let c2 = Arc::new(cyclic_group(2).unwrap());
    let t = character_table(&c2).unwrap();
    assert_eq!(t.values(), &[vec![int(1), int(1)], vec![int(1), int(-1)]]);
    let c3 = Arc::new(cyclic_group(3).unwrap());
    let t = character_table(&c3).unwrap();
    check_orthogonality(&t);
    assert!(!t.values()[1][1].is_rational());
    let c1 = Arc::new(cyclic_group(1).unwrap());
    assert_eq!(character_table(&c1).unwrap().degrees(), vec![1]);
}

#[test]
fn weyl_tables_are_orthogonal() {
    for t in ["A1", "B2", "G2", "A3", "B3", "C3", "A1xA2", "D4"] {
        let (_, g) = weyl(t);
        let tab = character_table(&g).unwrap();
        assert_eq!(tab.len(), g.classes().unwrap().len(), "{t}");
        check_orthogonality(&tab);
        assert!(tab.values().iter().flatten().all(Cyclotomic::is_rational), "{t}");
    }
}

#[test]
fn non_rational_tables() {
    for n in [4usize, 5, 7, 12] {
        let g = Arc::new(cyclic_group(n).unwrap());
        check_orthogonality(&character_table(&g).unwrap());
    }
    let a4 = {
        let s4 = Arc::new(symmetric_group(4).unwrap());
        // even permutations: products of two transpositions generate A4 with 3-cycles
        let cl = s4.classes().unwrap();
        let sign = character_table(&s4).unwrap().irreducible(1);
        let members: Vec<u32> = (0..s4.order()).filter(|&x| sign.value(cl.class_of[x] as usize) == &int(1)).map(|x| x as u32).collect();
        Arc::new(FiniteGroup::subgroup(&s4, "A4", &members).unwrap())
    };
    assert_eq!(a4.order(), 12);
    let t = character_table(&a4).unwrap();
    assert_eq!(t.degrees(), vec![1, 1, 1, 3]);
    check_orthogonality(&t);
}

#[test]
fn d4_triality_extension() {
    let d = CoxeterDatum::parse("D4").unwrap();
    let base = FiniteGroup::weyl(&d).unwrap();
    let auts = d.diagram_automorphisms(AutLevel::Dynkin);
    let (gamma, elems) = FiniteGroup::generated("S3", auts[0].clone(), &auts[1..], 10, |a, b| a.compose(b)).unwrap();
    assert_eq!(gamma.order(), 6);
    let act: Vec<Vec<u32>> = elems.iter().map(|a| weyl_action(&d, a).unwrap()).collect();
    let g = Arc::new(FiniteGroup::semidirect("W(D4):S3", &base, &gamma, &act).unwrap());
    assert_eq!(g.order(), 1152);
    assert!(g.check_associative());
    let t = character_table(&g).unwrap();
    assert_eq!(t.len(), 25);
    assert!(t.values().iter().flatten().all(|v| v.as_integer().is_some()));
    check_orthogonality(&t);
}

#[test]
fn inner_products() {
    let (d, g) = weyl("A2");
    let triv = ClassFunction::trivial(&g).unwrap();
    assert_eq!(triv.inner_product(&triv).unwrap(), int(1));
    let reg = ClassFunction::regular(&g).unwrap();
    assert_eq!(reg.inner_product(&triv).unwrap(), int(1));
    let h = parabolic(&d, &g, &[0]);
    let ind = induce(&g, &ClassFunction::trivial(&h).unwrap()).unwrap();
    assert_eq!(ind.values(), &[int(3), int(1), int(0)]);
    assert_eq!(ind.inner_product(&ind).unwrap(), int(2));
    let other = Arc::new(cyclic_group(2).unwrap());
    let x = ClassFunction::trivial(&other).unwrap();
    assert!(matches!(triv.inner_product(&x), Err(Error::MismatchedGroups)));
    assert!(matches!(induce(&g, &x), Err(Error::NotEmbedded)));
}

fn parabolic(d: &CoxeterDatum, g: &Arc<FiniteGroup>, nodes: &[usize]) -> Arc<FiniteGroup> {
    let j = parahecke::coxcore::SimpleSubset::from_nodes(nodes.iter().copied());
    let members: Vec<u32> = d.parabolic_indices(j).unwrap().into_iter().map(|i| i as u32).collect();
    Arc::new(FiniteGroup::subgroup(g, format!("W_{j}"), &members).unwrap())
}

#[test]
fn induction_examples() {
    let (d, g) = weyl("A2");
    let t = character_table(&g).unwrap();
    let phi = t.irreducible(2);
    assert_eq!(induce(&g, &phi).unwrap(), phi);
    let e = parabolic(&d, &g, &[]);
    let reg = induce(&g, &ClassFunction::trivial(&e).unwrap()).unwrap();
    assert_eq!(reg, ClassFunction::regular(&g).unwrap());
    let s2 = parabolic(&d, &g, &[1]);
    let res = restrict(&phi, &s2).unwrap();
    let ts2 = character_table(&s2).unwrap();
    assert_eq!(res, ts2.irreducible(0).add(&ts2.irreducible(1)).unwrap());
    assert_eq!(restrict(&phi, &g).unwrap(), phi);
    assert_eq!(restrict(&phi, &e).unwrap().values(), &[int(2)]);
}

#[test]
fn frobenius_and_stages() {
    for ty in ["A3", "B3"] {
        let (d, g) = weyl(ty);
        let tg = character_table(&g).unwrap();
        let h = parabolic(&d, &g, &[0, 1]);
        let k = {
            let members: Vec<u32> = d.parabolic_indices(parahecke::coxcore::SimpleSubset::singleton(0)).unwrap().into_iter().map(|i| i as u32).collect();
            // embedded in h, which is embedded in g
            let local: Vec<u32> = members
                .iter()
                .map(|m| h.embedding().unwrap().map.iter().position(|x| x == m).unwrap() as u32)
                .collect();
            Arc::new(FiniteGroup::subgroup(&h, "W_{s1}", &local).unwrap())
        };
        let th = character_table(&h).unwrap();
        for chi in tg.irreducibles() {
            for psi in th.irreducibles() {
                let lhs = restrict(&chi, &h).unwrap().inner_product(&psi).unwrap();
                let rhs = chi.inner_product(&induce(&g, &psi).unwrap()).unwrap();
                assert_eq!(lhs, rhs);
            }
        }
        for psi in character_table(&k).unwrap().irreducibles() {
            let direct = induce(&g, &psi).unwrap();
            let staged = induce(&g, &induce(&h, &psi).unwrap()).unwrap();
            assert_eq!(direct, staged);
        }
    }
}

#[test]
fn scaled_functions() {
    let (_, g) = weyl("A1");
    let half = Cyclotomic::from_rational(BigRational::new(1.into(), 2.into()));
    let f = ClassFunction::trivial(&g).unwrap().scale(&half);
    assert_eq!(f.inner_product(&f).unwrap(), Cyclotomic::from_frac(1, 4));
}

#[test]
fn cache_round_trip() {
    use parahecke::grouptab::cache::TableCache;
    use parahecke::grouptab::compute_table;
    let dir = tempfile::tempdir().unwrap();
    let cache = TableCache::new(dir.path());
    let c5 = Arc::new(cyclic_group(5).unwrap().with_descriptor("cyclic:5"));
    let data = compute_table(&c5, Default::default()).unwrap();
    assert!(cache.load(&c5).unwrap().is_none());
    cache.store(&c5, &data).unwrap();
    assert_eq!(cache.status().unwrap().entries, 1);
    let back = cache.load(&c5).unwrap().unwrap();
    assert_eq!(back.values, data.values);
    // same descriptor, different enumeration: not reused
    let c6 = cyclic_group(6).unwrap().with_descriptor("cyclic:5");
    assert!(cache.load(&c6).unwrap().is_none());
    assert_eq!(cache.clear().unwrap(), 1);
    // groups without a descriptor are never cached
    let anon = cyclic_group(5).unwrap();
    cache.store(&anon, &data).unwrap();
    assert_eq!(cache.status().unwrap().entries, 0);
}
