//! Sparse multivariate polynomials over a cyclotomic field, monomial
//! orders, Newton polytopes and sound irreducibility certificates.

mod irreducibility;
mod order;
mod polytope;
mod text;

pub use irreducibility::{irreducibility_certificate, Certificate};
pub use order::MonomialOrder;
pub use polytope::{is_integrally_indecomposable, LatticePolytope, PolytopeError};
pub use text::{parse_poly, poly_to_string};

use crate::arith::{CycNum, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("operation on the zero polynomial")]
    ZeroPolynomial,
    #[error("monomial substitution produced non-integral exponents after clearing")]
    NonIntegralExponents,
    #[error("polynomial is not homogeneous for the given grading")]
    NotHomogeneous,
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Exponent vector; fixed length per ring context.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn total_degree(&self) -> u64 {
        self.0.iter().map(|&e| e as u64).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if other.divides(self) {
            Some(Monomial(
                self.0
                    .iter()
                    .zip(&other.0)
                    .map(|(a, b)| a - b)
                    .collect(),
            ))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.min(b))
                .collect(),
        )
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn support(&self) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn exponents_bigint(&self) -> Vec<BigInt> {
        self.0.iter().map(|&e| BigInt::from(e)).collect()
    }
}

/// Ring context shared by polynomials: variable count and scalar field order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingCtx {
    pub nvars: usize,
    pub field_order: u32,
    pub var_names: Option<Arc<Vec<String>>>,
}

impl RingCtx {
    pub fn new(nvars: usize, field_order: u32) -> Arc<Self> {
        Arc::new(RingCtx {
            nvars,
            field_order,
            var_names: None,
        })
    }

    pub fn with_names(nvars: usize, field_order: u32, names: Vec<String>) -> Arc<Self> {
        assert_eq!(nvars, names.len());
        Arc::new(RingCtx {
            nvars,
            field_order,
            var_names: Some(Arc::new(names)),
        })
    }

    pub fn var_name(&self, i: usize) -> String {
        match &self.var_names {
            Some(names) => names[i].clone(),
            None => format!("T{}", i + 1),
        }
    }
}

/// Sparse multivariate polynomial. Terms are kept in a BTreeMap so the
/// representation is canonical independent of construction order.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultiPolynomial {
    pub ring: Arc<RingCtx>,
    terms: BTreeMap<Monomial, CycNum>,
}

impl MultiPolynomial {
    pub fn zero(ring: Arc<RingCtx>) -> Self {
        MultiPolynomial {
            ring,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(ring: Arc<RingCtx>, c: CycNum) -> Self {
        let mut p = MultiPolynomial::zero(ring);
        if !c.is_zero() {
            let nvars = p.ring.nvars;
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(ring: Arc<RingCtx>) -> Self {
        MultiPolynomial::constant(ring, CycNum::one())
    }

    pub fn var(ring: Arc<RingCtx>, i: usize) -> Self {
        let mut p = MultiPolynomial::zero(ring);
        let nvars = p.ring.nvars;
        p.terms.insert(Monomial::var(i, nvars), CycNum::one());
        p
    }

    pub fn monomial(ring: Arc<RingCtx>, m: Monomial, c: CycNum) -> Self {
        let mut p = MultiPolynomial::zero(ring);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(ring: Arc<RingCtx>, terms: Vec<(Monomial, CycNum)>) -> Self {
        let mut p = MultiPolynomial::zero(ring);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &CycNum)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> CycNum {
        self.terms.get(m).cloned().unwrap_or_else(CycNum::zero)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.total_degree()).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }

    pub fn neg(&self) -> MultiPolynomial {
        MultiPolynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &MultiPolynomial) -> MultiPolynomial {
        let mut out = MultiPolynomial::zero(self.ring.clone());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        out
    }

    pub fn mul_term(&self, m: &Monomial, c: &CycNum) -> MultiPolynomial {
        if c.is_zero() {
            return MultiPolynomial::zero(self.ring.clone());
        }
        MultiPolynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.mul(c)))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> MultiPolynomial {
        if c.is_zero() {
            return MultiPolynomial::zero(self.ring.clone());
        }
        MultiPolynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, cc)| (m.clone(), cc.mul(c)))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPolynomial {
        let mut acc = MultiPolynomial::one(self.ring.clone());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Leading term under `ord`.
    pub fn leading_term(&self, ord: &MonomialOrder) -> Option<(&Monomial, &CycNum)> {
        self.terms.iter().max_by(|a, b| ord.cmp(a.0, b.0))
    }

    /// Scales so the leading coefficient under `ord` is 1.
    pub fn monic(&self, ord: &MonomialOrder) -> MultiPolynomial {
        match self.leading_term(ord) {
            None => self.clone(),
            Some((_, c)) => {
                let inv = c.inv().expect("leading coefficient is nonzero");
                self.scale(&inv)
            }
        }
    }

    /// The gcd of all monomials (the largest monomial factor).
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            None => return Monomial::one(self.ring.nvars),
            Some(m) => m.clone(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Divides by the monomial content.
    pub fn strip_monomial_content(&self) -> (Monomial, MultiPolynomial) {
        let content = self.monomial_content();
        if content.is_one() {
            return (content, self.clone());
        }
        let stripped = MultiPolynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(&content).unwrap(), c.clone()))
                .collect(),
        };
        (content, stripped)
    }

    /// Variables that occur in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut seen = vec![false; self.ring.nvars];
        for m in self.terms.keys() {
            for i in 0..self.ring.nvars {
                if m.0[i] > 0 {
                    seen[i] = true;
                }
            }
        }
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| s)
            .map(|(i, _)| i)
            .collect()
    }

    /// Substitutes each variable by a polynomial (shared target ring).
    pub fn substitute(&self, images: &[MultiPolynomial]) -> MultiPolynomial {
        assert_eq!(images.len(), self.ring.nvars);
        let target = images
            .first()
            .map(|p| p.ring.clone())
            .unwrap_or_else(|| self.ring.clone());
        let mut out = MultiPolynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut t = MultiPolynomial::constant(target.clone(), c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e > 0 {
                    t = t.mul(&images[i].pow(e));
                }
            }
            out = out.add(&t);
        }
        out
    }

    /// Sets the listed variables to zero (stays in the same ring).
    pub fn set_vars_to_zero(&self, vars: &[usize]) -> MultiPolynomial {
        let mut kill = vec![false; self.ring.nvars];
        for &v in vars {
            kill[v] = true;
        }
        let mut out = MultiPolynomial::zero(self.ring.clone());
        for (m, c) in &self.terms {
            if m.0.iter().enumerate().all(|(i, &e)| !kill[i] || e == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Reinterprets the polynomial in a ring with more variables, mapping
    /// variable `i` to variable `map[i]`.
    pub fn embed(&self, target: Arc<RingCtx>, map: &[usize]) -> MultiPolynomial {
        assert_eq!(map.len(), self.ring.nvars);
        let mut out = MultiPolynomial::zero(target.clone());
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.nvars];
            for (i, &exp) in m.0.iter().enumerate() {
                e[map[i]] += exp;
            }
            out.add_term(Monomial(e), c.clone());
        }
        out
    }

    /// Weighted degree of a term under an integer weight vector.
    pub fn weighted_degree(m: &Monomial, w: &[BigInt]) -> BigInt {
        m.0.iter()
            .zip(w)
            .map(|(&e, wi)| wi * BigInt::from(e))
            .sum()
    }

    /// Terms of minimal `w`-weight (inner/min convention initial form).
    pub fn initial_form_min(&self, w: &[BigInt]) -> MultiPolynomial {
        let mut best: Option<BigInt> = None;
        for m in self.terms.keys() {
            let d = Self::weighted_degree(m, w);
            best = Some(match best {
                None => d,
                Some(b) => {
                    if d < b {
                        d
                    } else {
                        b
                    }
                }
            });
        }
        let Some(best) = best else {
            return self.clone();
        };
        MultiPolynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| Self::weighted_degree(m, w) == best)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// True iff all terms share the same weighted degree.
    pub fn is_weighted_homogeneous(&self, w: &[BigInt]) -> bool {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return true;
        };
        let d = Self::weighted_degree(first, w);
        it.all(|m| Self::weighted_degree(m, w) == d)
    }
}

/// Laurent monomial with rational exponents; image of a variable under a
/// toric modification section.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMonomial {
    pub exponents: Vec<Rational>,
}

impl RationalMonomial {
    pub fn var(i: usize, nvars: usize) -> Self {
        let mut e = vec![Rational::zero(); nvars];
        e[i] = Rational::one();
        RationalMonomial { exponents: e }
    }
}

/// Substitutes `T_i -> T^{images[i]}` (Laurent monomials with rational
/// exponents), collects terms over Q-exponents, then multiplies by the
/// componentwise-minimal monomial making all exponents nonnegative
/// integers. Returns the cleared polynomial and the clearing monomial
/// (as a rational exponent vector).
pub fn substitute_monomial_map(
    f: &MultiPolynomial,
    images: &[RationalMonomial],
    target: Arc<RingCtx>,
) -> Result<(MultiPolynomial, Vec<Rational>), PolyError> {
    if f.is_zero() {
        return Ok((MultiPolynomial::zero(target), vec![]));
    }
    assert_eq!(images.len(), f.ring.nvars);
    let m = target.nvars;
    // exponent vectors over Q, collected
    let mut acc: BTreeMap<Vec<Rational>, CycNum> = BTreeMap::new();
    for (mono, c) in f.terms() {
        let mut e = vec![Rational::zero(); m];
        for (i, &exp) in mono.0.iter().enumerate() {
            if exp > 0 {
                let factor = Rational::from_integer(BigInt::from(exp));
                for (j, w) in images[i].exponents.iter().enumerate() {
                    e[j] += w * &factor;
                }
            }
        }
        let entry = acc.entry(e).or_insert_with(CycNum::zero);
        *entry = entry.add(c);
    }
    acc.retain(|_, c| !c.is_zero());
    if acc.is_empty() {
        return Ok((MultiPolynomial::zero(target), vec![Rational::zero(); m]));
    }
    // componentwise minimum, then clear
    let mut minimum = vec![Rational::zero(); m];
    for (j, slot) in minimum.iter_mut().enumerate() {
        *slot = acc.keys().map(|e| e[j].clone()).min().unwrap();
        // clearing monomial only needs to cancel negative exponents
        if *slot > Rational::zero() {
            *slot = Rational::zero();
        }
    }
    let clearing: Vec<Rational> = minimum.iter().map(|x| -x.clone()).collect();
    let mut out = MultiPolynomial::zero(target);
    for (e, c) in acc {
        let mut exps = Vec::with_capacity(m);
        for j in 0..m {
            let cleared = &e[j] + &clearing[j];
            if !cleared.denom().is_one() || cleared.numer().is_negative() {
                return Err(PolyError::NonIntegralExponents);
            }
            let v: BigInt = cleared.to_integer();
            exps.push(u32::try_from(&v).map_err(|_| PolyError::NonIntegralExponents)?);
        }
        out.add_term(Monomial(exps), c);
    }
    Ok((out, clearing))
}

/// Newton polytope: convex hull vertex set of the exponent vectors.
pub fn newton_polytope(f: &MultiPolynomial) -> Result<LatticePolytope, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    let points: Vec<Vec<BigInt>> = f.terms().map(|(m, _)| m.exponents_bigint()).collect();
    Ok(LatticePolytope::from_points(points))
}

impl std::fmt::Display for MultiPolynomial {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", poly_to_string(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat_int;

    fn ring3() -> Arc<RingCtx> {
        RingCtx::new(3, 1)
    }

    /// 4*T1^2 - T2^2 + T3^2
    fn q8_relation(ring: &Arc<RingCtx>) -> MultiPolynomial {
        MultiPolynomial::from_terms(
            ring.clone(),
            vec![
                (Monomial(vec![2, 0, 0]), CycNum::from_int(4)),
                (Monomial(vec![0, 2, 0]), CycNum::from_int(-1)),
                (Monomial(vec![0, 0, 2]), CycNum::from_int(1)),
            ],
        )
    }

    #[test]
    fn arithmetic_basics() {
        let r = ring3();
        let t1 = MultiPolynomial::var(r.clone(), 0);
        let t2 = MultiPolynomial::var(r.clone(), 1);
        let p = t1.add(&t2).mul(&t1.sub(&t2));
        let expect = t1.mul(&t1).sub(&t2.mul(&t2));
        assert_eq!(p, expect);
        assert!(p.sub(&expect).is_zero());
    }

    #[test]
    fn newton_polytope_examples() {
        let r = ring3();
        let f = q8_relation(&r);
        let np = newton_polytope(&f).unwrap();
        let mut verts = np.vertices.clone();
        verts.sort();
        assert_eq!(
            verts,
            vec![
                vec![BigInt::from(0), BigInt::from(0), BigInt::from(2)],
                vec![BigInt::from(0), BigInt::from(2), BigInt::from(0)],
                vec![BigInt::from(2), BigInt::from(0), BigInt::from(0)],
            ]
        );

        // univariate with an interior point
        let r1 = RingCtx::new(1, 1);
        let f = MultiPolynomial::from_terms(
            r1,
            vec![
                (Monomial(vec![1]), CycNum::one()),
                (Monomial(vec![2]), CycNum::one()),
                (Monomial(vec![3]), CycNum::one()),
            ],
        );
        let np = newton_polytope(&f).unwrap();
        let mut verts = np.vertices.clone();
        verts.sort();
        assert_eq!(verts, vec![vec![BigInt::from(1)], vec![BigInt::from(3)]]);

        assert_eq!(
            newton_polytope(&MultiPolynomial::zero(ring3())),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn newton_polytope_of_eight_var_trinomial() {
        // 4*T3^3*T7 - T2^2*T6 - 27*T4^2*T8: three affinely independent exponents
        let r = RingCtx::new(8, 1);
        let e1 = {
            let mut e = vec![0; 8];
            e[2] = 3;
            e[6] = 1;
            e
        };
        let e2 = {
            let mut e = vec![0; 8];
            e[1] = 2;
            e[5] = 1;
            e
        };
        let e3 = {
            let mut e = vec![0; 8];
            e[3] = 2;
            e[7] = 1;
            e
        };
        let f = MultiPolynomial::from_terms(
            r,
            vec![
                (Monomial(e1.clone()), CycNum::from_int(4)),
                (Monomial(e2.clone()), CycNum::from_int(-1)),
                (Monomial(e3.clone()), CycNum::from_int(-27)),
            ],
        );
        let np = newton_polytope(&f).unwrap();
        assert_eq!(np.vertices.len(), 3);
        // oracle: affine independence of the three exponent vectors
        let d1: Vec<BigInt> = e2.iter().zip(&e1).map(|(a, b)| BigInt::from(*a as i64 - *b as i64)).collect();
        let d2: Vec<BigInt> = e3.iter().zip(&e1).map(|(a, b)| BigInt::from(*a as i64 - *b as i64)).collect();
        let m = crate::lattice::IntMatrix::from_rows(vec![d1, d2]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn substitution_with_clearing() {
        // f = T1, image T1 -> T1*T4^2 in a 4-var target
        let r1 = RingCtx::new(1, 1);
        let f = MultiPolynomial::var(r1, 0);
        let target = RingCtx::new(4, 1);
        let img = RationalMonomial {
            exponents: vec![rat_int(1).into(), Rational::zero(), Rational::zero(), rat_int(2)],
        };
        let (g, clearing) = substitute_monomial_map(&f, &[img], target.clone()).unwrap();
        assert_eq!(
            g,
            MultiPolynomial::monomial(target, Monomial(vec![1, 0, 0, 2]), CycNum::one())
        );
        assert!(clearing.iter().all(|c| c.is_zero()));
    }

    #[test]
    fn substitution_clears_halves() {
        // f = T1 - T2, T1 -> T1*T3^(1/2), T2 -> T2*T3^(-1/2)
        let r2 = RingCtx::new(2, 1);
        let f = MultiPolynomial::var(r2.clone(), 0).sub(&MultiPolynomial::var(r2, 1));
        let target = RingCtx::new(3, 1);
        let img1 = RationalMonomial {
            exponents: vec![rat_int(1), Rational::zero(), crate::arith::rat(1, 2)],
        };
        let img2 = RationalMonomial {
            exponents: vec![Rational::zero(), rat_int(1), crate::arith::rat(-1, 2)],
        };
        let (g, clearing) = substitute_monomial_map(&f, &[img1, img2], target.clone()).unwrap();
        let expect = MultiPolynomial::from_terms(
            target,
            vec![
                (Monomial(vec![1, 0, 1]), CycNum::one()),
                (Monomial(vec![0, 1, 0]), CycNum::from_int(-1)),
            ],
        );
        assert_eq!(g, expect);
        assert_eq!(clearing, vec![Rational::zero(), Rational::zero(), crate::arith::rat(1, 2)]);
    }

    #[test]
    fn identity_substitution_is_identity() {
        let r = ring3();
        let f = q8_relation(&r);
        let images: Vec<RationalMonomial> =
            (0..3).map(|i| RationalMonomial::var(i, 3)).collect();
        let (g, clearing) = substitute_monomial_map(&f, &images, r).unwrap();
        assert_eq!(g, f);
        assert!(clearing.iter().all(|c| c.is_zero()));
    }
}
