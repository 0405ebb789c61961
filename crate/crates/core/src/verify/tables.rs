use std::collections::HashSet;
use std::sync::Arc;
use std::time::Instant;

use num_rational::BigRational;

use super::extended::extension_examples;
use super::parabolic::TOWER_TYPES;
use super::{CheckReport, Sweep, Tally};
use crate::coxcore::{AutLevel, CoxeterDatum};
use crate::cyclotomic::Cyclotomic;
use crate::extgroups::weyl_extension;
use crate::grouptab::{character_table_with, FiniteGroup};

const TABLE_BOUND: usize = 2500;

/// Row and column orthogonality, degree sum and class count; `None` when all hold.
pub fn table_defect(g: &Arc<FiniteGroup>, values: &[Vec<Cyclotomic>]) -> Option<String> {
    let cl = g.classes().ok()?;
    let k = cl.len();
    if values.len() != k {
        return Some(format!("{} characters for {k} classes", values.len()));
    }
    let order = Cyclotomic::from_int(g.order() as i64);
    let degrees: i64 = values.iter().map(|r| r[0].to_i64().unwrap_or(0).pow(2)).sum();
    if degrees != g.order() as i64 {
        return Some(format!("Σχ(1)² = {degrees}"));
    }
    for i in 0..k {
        for j in i..k {
            let s: Cyclotomic = (0..k)
                .map(|c| (&values[i][c] * &values[j][c].conj()).scale(&BigRational::from_integer(cl.sizes[c].into())))
                .sum();
            let want = if i == j { order.clone() } else { Cyclotomic::zero() };
            if s != want {
                return Some(format!("rows {i}, {j} are not orthogonal"));
            }
        }
    }
    for a in 0..k {
        for b in a..k {
            let s: Cyclotomic = (0..k).map(|i| &values[i][a] * &values[i][b].conj()).sum();
            let want = if a == b {
                Cyclotomic::from_frac(g.order() as i64, cl.sizes[a] as i64)
            } else {
                Cyclotomic::zero()
            };
            if s != want {
                return Some(format!("columns {a}, {b} are not orthogonal"));
            }
        }
    }
    None
}

pub fn character_tables(sweep: &mut Sweep) -> CheckReport {
    let mut t = Tally::new(10, "character tables");
    let exec = sweep.execution();
    let mut groups: Vec<Arc<FiniteGroup>> = Vec::new();
    for (_, ctx) in sweep.contexts() {
        groups.push(ctx.ambient().clone());
        for j in ctx.stable_subsets(ctx.datum().simples()) {
            groups.push(ctx.space(j).expect("stable subset").group.clone());
        }
    }
    for ty in TOWER_TYPES {
        let d = CoxeterDatum::parse(ty).expect("valid type");
        if d.expected_order() as usize <= TABLE_BOUND {
            groups.push(Arc::new(FiniteGroup::weyl(&d).expect("enumerable")));
        }
    }
    match extension_examples() {
        Ok(list) => groups.extend(list.into_iter().map(|(_, e)| e.group)),
        Err(e) => t.check(false, || format!("extension examples: {e}")),
    }
    let mut seen = HashSet::new();
    groups.retain(|g| g.order() <= TABLE_BOUND && seen.insert(g.id()));
    for g in &groups {
        let res = character_table_with(g, exec).map(|tab| table_defect(g, tab.values()));
        t.check(matches!(res, Ok(None)), || match res {
            Ok(Some(d)) => format!("{}: {d}", g.name()),
            Err(e) => format!("{}: {e}", g.name()),
            Ok(None) => unreachable!(),
        });
    }

    // a fresh W(D4):S3 so that the timing covers the whole computation
    let d4 = CoxeterDatum::parse("D4").expect("valid type");
    let auts = d4.diagram_automorphisms(AutLevel::Dynkin);
    let start = Instant::now();
    let summary = weyl_extension(&d4, &auts[1..]).and_then(|ext| {
        let g = ext.group.clone();
        let tab = character_table_with(&g, exec)?;
        let integral = tab.values().iter().flatten().all(|v| v.as_integer().is_some());
        Ok((g.order(), tab.len(), integral, table_defect(&g, tab.values())))
    });
    let secs = start.elapsed().as_secs_f64();
    match summary {
        Ok((order, n, integral, defect)) => {
            t.check(order == 1152 && n == 25 && integral && defect.is_none(), || {
                format!("W(D4):S3 has order {order}, {n} irreducibles, integral {integral}, defect {defect:?}")
            });
            t.check(secs < 120.0, || format!("W(D4):S3 table took {secs:.1} s"));
            t.note(format!(
                "{} groups up to order {TABLE_BOUND}; W(D4):S3 has order {order} with {n} integer-valued irreducibles, table under 120 s",
                groups.len()
            ));
        }
        Err(e) => t.check(false, || format!("W(D4):S3: {e}")),
    }
    t.finish()
}
