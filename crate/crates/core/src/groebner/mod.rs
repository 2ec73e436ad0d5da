//! Buchberger-based ideal arithmetic: reduced Groebner bases, normal
//! forms, elimination, saturation, ideal quotient, Krull dimension,
//! initial-form ideals (inner convention), ring-map kernels and Jacobian
//! minor ideals.

mod buchberger;
mod ops;

pub use buchberger::{groebner_basis_with, normal_form_against, GbError};
pub use ops::{
    contains_monomial, eliminate, ideal_quotient, ideals_equal, initial_form_ideal,
    jacobian_minor_ideal, kernel_of_ring_map, krull_dimension, partial_derivative, saturate,
};

use crate::budget::Budget;
use crate::poly::{MonomialOrder, MultiPolynomial, RingCtx};
use num_bigint::BigInt;
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// A polynomial ideal with a synchronized cache of reduced Groebner bases.
#[derive(Clone)]
pub struct Ideal {
    pub ring: Arc<RingCtx>,
    pub gens: Vec<MultiPolynomial>,
    /// Strictly positive grading making all generators homogeneous, when
    /// one is known from the construction; used by initial-form ideals.
    pub positive_grading: Option<Vec<BigInt>>,
    cache: Arc<Mutex<HashMap<MonomialOrder, Arc<Vec<MultiPolynomial>>>>>,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Ideal<{} vars, {} gens>",
            self.ring.nvars,
            self.gens.len()
        )
    }
}

impl Ideal {
    pub fn new(ring: Arc<RingCtx>, gens: Vec<MultiPolynomial>) -> Ideal {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal {
            ring,
            gens,
            positive_grading: None,
            cache: Arc::new(Mutex::new(HashMap::new())),
        }
    }

    pub fn with_grading(mut self, grading: Vec<BigInt>) -> Ideal {
        self.positive_grading = Some(grading);
        self
    }

    pub fn zero(ring: Arc<RingCtx>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced Groebner basis; cached per order. Deterministic for a given
    /// generator list.
    pub fn groebner_basis(
        &self,
        ord: &MonomialOrder,
        budget: &Budget,
    ) -> Result<Arc<Vec<MultiPolynomial>>, GbError> {
        if let Some(b) = self.cache.lock().unwrap().get(ord) {
            return Ok(b.clone());
        }
        let basis = groebner_basis_with(&self.gens, ord, budget)?;
        let arc = Arc::new(basis);
        self.cache
            .lock()
            .unwrap()
            .entry(ord.clone())
            .or_insert_with(|| arc.clone());
        Ok(arc)
    }

    pub fn normal_form(
        &self,
        f: &MultiPolynomial,
        ord: &MonomialOrder,
        budget: &Budget,
    ) -> Result<MultiPolynomial, GbError> {
        let basis = self.groebner_basis(ord, budget)?;
        normal_form_against(f, &basis, ord, budget)
    }

    pub fn contains(&self, f: &MultiPolynomial, budget: &Budget) -> Result<bool, GbError> {
        Ok(self
            .normal_form(f, &MonomialOrder::DegRevLex, budget)?
            .is_zero())
    }

    /// Does the ideal contain a nonzero constant?
    pub fn is_unit_ideal(&self, budget: &Budget) -> Result<bool, GbError> {
        let basis = self.groebner_basis(&MonomialOrder::DegRevLex, budget)?;
        Ok(basis
            .iter()
            .any(|g| g.num_terms() == 1 && g.total_degree() == 0))
    }
}
