//! Finite groups, conjugacy classes and exact character tables.

pub mod cache;
mod classfn;
mod dixon;
mod group;

use std::sync::Arc;

pub use classfn::{induce, induction_matrix, restrict, restriction_matrix, ClassFunction};
pub use dixon::{choose_prime, TableData};
pub use group::{cyclic_group, symmetric_group, Classes, Embedding, FiniteGroup, CLASS_BOUND};

use crate::coxcore::{CoxeterDatum, DiagramAut};
use crate::error::Result;
use crate::par::Execution;

/// Irreducible characters of a group, trivial character first.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    group: Arc<FiniteGroup>,
    data: Arc<TableData>,
}

impl CharacterTable {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn conductor(&self) -> u32 {
        self.data.conductor
    }

    pub fn prime(&self) -> u64 {
        self.data.prime
    }

    pub fn len(&self) -> usize {
        self.data.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.values.is_empty()
    }

    pub fn values(&self) -> &[Vec<crate::cyclotomic::Cyclotomic>] {
        &self.data.values
    }

    pub fn irreducible(&self, i: usize) -> ClassFunction {
        ClassFunction::new(&self.group, self.data.values[i].clone()).expect("table rows match the classes")
    }

    pub fn irreducibles(&self) -> Vec<ClassFunction> {
        (0..self.len()).map(|i| self.irreducible(i)).collect()
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.data.values.iter().map(|r| r[0].to_i64().unwrap_or(0)).collect()
    }

    /// Index of `phi` among the irreducibles.
    pub fn position(&self, phi: &ClassFunction) -> Option<usize> {
        if phi.group().id() != self.group.id() {
            return None;
        }
        self.data.values.iter().position(|r| r.as_slice() == phi.values())
    }

    /// Coefficients of `phi` in the basis of irreducibles.
    pub fn decompose(&self, phi: &ClassFunction) -> Result<Vec<crate::cyclotomic::Cyclotomic>> {
        self.irreducibles().iter().map(|chi| phi.inner_product(chi)).collect()
    }
}

/// Index permutation of `W` induced by a diagram automorphism.
pub fn weyl_action(datum: &CoxeterDatum, aut: &DiagramAut) -> Result<Vec<u32>> {
    let els = datum.elements()?;
    Ok(els
        .iter()
        .map(|w| els.index_of(&aut.apply_element(datum, w)).expect("automorphisms preserve W") as u32)
        .collect())
}

/// The character table of `group`, computed once per group and shared
/// through the on-disk cache when one is installed.
pub fn character_table(group: &Arc<FiniteGroup>) -> Result<CharacterTable> {
    character_table_with(group, Execution::Parallel)
}

pub fn character_table_with(group: &Arc<FiniteGroup>, exec: Execution) -> Result<CharacterTable> {
    if let Some(d) = group.table_data.get() {
        return Ok(CharacterTable {
            group: group.clone(),
            data: d.clone(),
        });
    }
    let data = match cache::installed().and_then(|c| c.load(group).ok().flatten()) {
        Some(d) => d,
        None => {
            let d = dixon::compute(group, exec)?;
            if let Some(c) = cache::installed() {
                // a failed write only costs a recomputation later
                let _ = c.store(group, &d);
            }
            d
        }
    };
    let data = group.table_data.get_or_init(|| Arc::new(data)).clone();
    Ok(CharacterTable {
        group: group.clone(),
        data,
    })
}

/// Recomputes the table without consulting any cache.
pub fn compute_table(group: &Arc<FiniteGroup>, exec: Execution) -> Result<TableData> {
    dixon::compute(group, exec)
}
