// SPDX-License-Identifier: Apache-2.0

//! Finite products with the pointwise order.

use super::finite::{Elem, FiniteLattice};
use crate::error::{Error, Result};

/// Largest carrier a product may materialize.
pub const PRODUCT_BOUND: usize = 4096;

#[derive(Debug, Clone)]
pub struct ProductLattice {
    lattice: FiniteLattice,
    factors: Vec<FiniteLattice>,
    tuples: Vec<Vec<Elem>>,
}

impl ProductLattice {
    /// The product as an ordinary finite lattice.
    pub fn lattice(&self) -> &FiniteLattice {
        &self.lattice
    }

    pub fn factors(&self) -> &[FiniteLattice] {
        &self.factors
    }

    pub fn tuple(&self, e: Elem) -> &[Elem] {
        self.lattice.check(e).expect("element of another lattice");
        &self.tuples[e.index()]
    }

    /// The coordinate projection onto factor `n`.
    pub fn project(&self, n: usize, e: Elem) -> Elem {
        self.tuple(e)[n]
    }

    pub fn element(&self, tuple: &[Elem]) -> Result<Elem> {
        if tuple.len() != self.factors.len() {
            return Err(Error::InvalidParameter(format!(
                "tuple of length {} for a product of {} factors",
                tuple.len(),
                self.factors.len()
            )));
        }
        let mut index = 0usize;
        for (f, &c) in self.factors.iter().zip(tuple) {
            f.check(c)?;
            index = index * f.len() + c.index();
        }
        Ok(self.lattice.elem_at(index))
    }
}

/// Pointwise product; the carrier is enumerated lexicographically with the
/// first factor most significant.
pub fn product(factors: &[FiniteLattice]) -> Result<ProductLattice> {
    if factors.is_empty() {
        return Err(Error::InvalidParameter("product of no factors".into()));
    }
    let size = factors
        .iter()
        .try_fold(1usize, |acc, f| acc.checked_mul(f.len()))
        .filter(|&s| s <= PRODUCT_BOUND)
        .ok_or(Error::SizeBound {
            what: "product carrier",
            value: factors.iter().map(|f| f.len()).product(),
            bound: PRODUCT_BOUND,
        })?;
    let mut tuples: Vec<Vec<Elem>> = vec![Vec::new()];
    for f in factors {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                f.elems().map(move |e| {
                    let mut t = t.clone();
                    t.push(e);
                    t
                })
            })
            .collect();
    }
    debug_assert_eq!(tuples.len(), size);
    let index_of = |t: &[Elem]| {
        factors
            .iter()
            .zip(t)
            .fold(0usize, |acc, (f, c)| acc * f.len() + c.index()) as u32
    };
    let labels: Vec<String> = tuples
        .iter()
        .map(|t| {
            let parts: Vec<&str> = factors.iter().zip(t).map(|(f, &c)| f.label_of(c)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    let mut leq = vec![false; size * size];
    let mut join = vec![0u32; size * size];
    let mut meet = vec![0u32; size * size];
    for (i, a) in tuples.iter().enumerate() {
        for (j, b) in tuples.iter().enumerate() {
            leq[i * size + j] = factors.iter().zip(a.iter().zip(b)).all(|(f, (&x, &y))| f.le(x, y));
            let jt: Vec<Elem> = factors
                .iter()
                .zip(a.iter().zip(b))
                .map(|(f, (&x, &y))| f.join_of(x, y))
                .collect();
            let mt: Vec<Elem> = factors
                .iter()
                .zip(a.iter().zip(b))
                .map(|(f, (&x, &y))| f.meet_of(x, y))
                .collect();
            join[i * size + j] = index_of(&jt);
            meet[i * size + j] = index_of(&mt);
        }
    }
    let name = factors.iter().map(|f| f.name()).collect::<Vec<_>>().join(" x ");
    let lattice = FiniteLattice::from_tables(name, labels, leq, join, meet)?;
    Ok(ProductLattice {
        lattice,
        factors: factors.to_vec(),
        tuples,
    })
}
