//! Capped expansion of products of linear forms.
//!
//! Both graph polynomials handled here are products of one linear factor
//! per arc of `D`. Only the coefficient of `∏ x_v^{d+(v)}` matters, so any
//! partial product whose exponent exceeds `d+(v)` in some variable is
//! dropped as soon as it appears: later factors only raise exponents.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{Orientation, Vertex};

/// Exponents of `x_1 .. x_n`, stored at index `v - 1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector(pub Vec<u32>);

impl ExponentVector {
    pub fn zero(n: usize) -> Self {
        ExponentVector(vec![0; n])
    }

    /// No cap at all.
    pub fn unbounded(n: usize) -> Self {
        ExponentVector(vec![u32::MAX; n])
    }

    pub fn out_degrees(d: &Orientation) -> Self {
        ExponentVector(d.out_degrees().into_iter().map(|k| k as u32).collect())
    }

    pub fn get(&self, v: Vertex) -> u32 {
        self.0[v as usize - 1]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

/// `Σ ±x_u` over distinct variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFactor {
    terms: Vec<(Sign, Vertex)>,
}

impl LinearFactor {
    pub fn new(terms: Vec<(Sign, Vertex)>) -> Result<Self> {
        let ids: BTreeSet<Vertex> = terms.iter().map(|&(_, v)| v).collect();
        if ids.len() != terms.len() {
            return Err(Error::InvalidParameter(
                "repeated variable in a linear factor".into(),
            ));
        }
        Ok(LinearFactor { terms })
    }

    pub fn terms(&self) -> &[(Sign, Vertex)] {
        &self.terms
    }

    /// Signed ids: `+v` for `x_v`, `-v` for `-x_v`.
    pub fn signed_ids(&self) -> Vec<i64> {
        self.terms
            .iter()
            .map(|&(s, v)| match s {
                Sign::Plus => v as i64,
                Sign::Minus => -(v as i64),
            })
            .collect()
    }

    pub fn evaluate(&self, values: &BTreeMap<Vertex, i64>) -> Result<BigInt> {
        let mut acc = BigInt::zero();
        for &(s, v) in &self.terms {
            let x = BigInt::from(*values.get(&v).ok_or(Error::MissingValue(v))?);
            match s {
                Sign::Plus => acc += x,
                Sign::Minus => acc -= x,
            }
        }
        Ok(acc)
    }
}

/// `(x_v - x_w)` for every arc `v -> w`.
pub fn classical_factors(d: &Orientation) -> Vec<LinearFactor> {
    d.arcs()
        .map(|(v, w)| LinearFactor {
            terms: vec![(Sign::Plus, v), (Sign::Minus, w)],
        })
        .collect()
}

/// For every arc `v -> w`, the neighbor-sum difference `c(w) - c(v)` after
/// cancelling common neighbors:
/// `Σ_{u ∈ N(w) \ N(v)} x_u - Σ_{u ∈ N(v) \ N(w)} x_u`.
pub fn additive_factors(d: &Orientation) -> Vec<LinearFactor> {
    d.arcs()
        .map(|(v, w)| {
            let nv = d.neighbors(v);
            let nw = d.neighbors(w);
            let mut terms: Vec<(Sign, Vertex)> = nw
                .difference(nv)
                .map(|&u| (Sign::Plus, u))
                .chain(nv.difference(nw).map(|&u| (Sign::Minus, u)))
                .collect();
            terms.sort_by_key(|&(s, u)| (s, u));
            // v ∈ N(w) \ N(v) and w ∈ N(v) \ N(w) for every arc
            assert!(!terms.is_empty());
            LinearFactor { terms }
        })
        .collect()
}

/// A sparse polynomial whose terms all lie under `cap`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CappedPolynomial {
    pub cap: ExponentVector,
    pub terms: BTreeMap<ExponentVector, BigInt>,
}

impl CappedPolynomial {
    pub fn coefficient(&self, monomial: &ExponentVector) -> BigInt {
        self.terms.get(monomial).cloned().unwrap_or_default()
    }
}

/// Expands `∏ factors`, discarding every partial term that exceeds `cap` in
/// some variable. Coefficients of monomials under the cap are exact.
///
/// Factors are multiplied in ascending order of support size.
pub fn expand_capped(factors: &[LinearFactor], cap: &ExponentVector) -> CappedPolynomial {
    let mut ordered: Vec<&LinearFactor> = factors.iter().collect();
    ordered.sort_by_key(|f| f.terms.len());

    let mut terms: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
    terms.insert(ExponentVector::zero(cap.0.len()), BigInt::one());
    for factor in ordered {
        let mut next: BTreeMap<ExponentVector, BigInt> = BTreeMap::new();
        for (exp, coeff) in &terms {
            for &(sign, v) in &factor.terms {
                let i = v as usize - 1;
                if exp.0[i] >= cap.0[i] {
                    continue;
                }
                let mut e = exp.clone();
                e.0[i] += 1;
                let slot = next.entry(e).or_default();
                match sign {
                    Sign::Plus => *slot += coeff,
                    Sign::Minus => *slot -= coeff,
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        terms = next;
    }
    CappedPolynomial {
        cap: cap.clone(),
        terms,
    }
}

/// Coefficient of `∏ x_v^{d+(v)}` in `∏_{v->w} (c(w) - c(v))`, where
/// `c(v) = Σ_{u ∈ N(v)} x_u`.
pub fn additive_coefficient(d: &Orientation) -> BigInt {
    let cap = ExponentVector::out_degrees(d);
    expand_capped(&additive_factors(d), &cap).coefficient(&cap)
}

/// Coefficient of `∏ x_v^{d+(v)}` in `∏_{v->w} (x_v - x_w)`.
pub fn classical_coefficient(d: &Orientation) -> BigInt {
    let cap = ExponentVector::out_degrees(d);
    expand_capped(&classical_factors(d), &cap).coefficient(&cap)
}

/// Value of the additive polynomial at `assignment`. It is nonzero exactly
/// when the induced neighbor sums differ across every edge.
pub fn evaluate_additive(d: &Orientation, assignment: &BTreeMap<Vertex, i64>) -> Result<BigInt> {
    if let Some(v) = d.vertices().find(|v| !assignment.contains_key(v)) {
        return Err(Error::MissingValue(v));
    }
    additive_factors(d)
        .iter()
        .try_fold(BigInt::one(), |acc, f| Ok(acc * f.evaluate(assignment)?))
}
