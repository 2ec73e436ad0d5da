//! Exact scalars: rationals and cyclotomic fields `Q(zeta_n)`.
//!
//! Cyclotomic numbers are stored in the power basis `1, z, ..., z^(phi(n)-1)`
//! reduced modulo the n-th cyclotomic polynomial, so equality is
//! coefficientwise. Mixed-order arithmetic coerces both operands into the
//! field of order `lcm`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use thiserror::Error;

pub type Rational = num_rational::BigRational;
pub type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("cyclotomic order {0} exceeds the supported bound")]
    OrderTooLarge(u64),
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(Int::from(n), Int::from(d))
}

pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(Int::from(n))
}

/// Euler's totient.
pub fn euler_phi(n: u32) -> usize {
    let mut n = n as u64;
    let mut result = n;
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result as usize
}

/// Dense integer polynomial, lowest degree first. Used only for the
/// cyclotomic modulus.
fn poly_div_exact(num: &[Int], den: &[Int]) -> Vec<Int> {
    // exact division of integer polynomials, remainder must vanish
    let mut rem: Vec<Int> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(lead.abs().is_one());
    let mut quot = vec![Int::zero(); rem.len().saturating_sub(dd)];
    for i in (dd..rem.len()).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / &lead;
        quot[i - dd] = q.clone();
        for j in 0..=dd {
            let sub = &q * &den[j];
            rem[i - dd + j] -= sub;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// The n-th cyclotomic polynomial via `x^n - 1 = prod_{d | n} Phi_d(x)`.
pub fn cyclotomic_polynomial(n: u32) -> Vec<Int> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<Int>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().unwrap().get(&n) {
        return p.as_ref().clone();
    }
    let poly = if n == 1 {
        vec![Int::from(-1), Int::one()]
    } else {
        // x^n - 1
        let mut num = vec![Int::zero(); n as usize + 1];
        num[0] = Int::from(-1);
        num[n as usize] = Int::one();
        let mut den = vec![Int::one()];
        for d in 1..n {
            if n % d == 0 {
                let phi_d = cyclotomic_polynomial(d);
                den = poly_mul_int(&den, &phi_d);
            }
        }
        poly_div_exact(&num, &den)
    };
    cache
        .lock()
        .unwrap()
        .insert(n, Arc::new(poly.clone()));
    poly
}

fn poly_mul_int(a: &[Int], b: &[Int]) -> Vec<Int> {
    let mut out = vec![Int::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let add = x * y;
            out[i + j] += add;
        }
    }
    out
}

/// A cyclotomic field `Q(zeta_n)` with its reduction modulus.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicField {
    pub order: u32,
    pub modulus: Vec<Int>, // Phi_n, monic, lowest degree first
}

impl CyclotomicField {
    pub fn new(order: u32) -> Self {
        assert!(order >= 1);
        CyclotomicField {
            order,
            modulus: cyclotomic_polynomial(order),
        }
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }
}

/// Element of `Q(zeta_n)` in the reduced power basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<Rational>, // length phi(order)
}

impl std::fmt::Debug for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self)
    }
}

impl CycNum {
    pub fn from_rational(r: Rational) -> Self {
        CycNum {
            order: 1,
            coeffs: vec![r],
        }
    }

    pub fn from_int(n: i64) -> Self {
        CycNum::from_rational(rat_int(n))
    }

    pub fn zero() -> Self {
        CycNum::from_int(0)
    }

    pub fn one() -> Self {
        CycNum::from_int(1)
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `zeta_n^k`, canonically reduced.
    pub fn root_of_unity(n: u32, k: i64) -> Self {
        assert!(n >= 1);
        let kk = k.rem_euclid(n as i64) as usize;
        let phi = euler_phi(n);
        let mut coeffs = vec![Rational::zero(); n as usize];
        coeffs[kk] = Rational::one();
        let reduced = reduce_mod_cyclotomic(coeffs, n);
        debug_assert_eq!(reduced.len(), phi);
        CycNum { order: n, coeffs: reduced }.normalized()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Is this element a rational number, and if so which?
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Drops to the smallest representation we track cheaply: order 1 when
    /// the element is rational. Keeps canonical equality across fields.
    pub fn normalized(self) -> Self {
        if self.order != 1 {
            if let Some(r) = self.as_rational() {
                return CycNum::from_rational(r);
            }
        }
        self
    }

    /// Embeds into `Q(zeta_m)` where `order | m`.
    pub fn coerce(&self, m: u32) -> CycNum {
        if self.order == m {
            return self.clone();
        }
        assert!(m % self.order == 0, "no embedding of order {} into {}", self.order, m);
        let step = (m / self.order) as usize;
        let mut coeffs = vec![Rational::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let idx = (i * step) % (m as usize);
                coeffs[idx] += c.clone();
            }
        }
        CycNum {
            order: m,
            coeffs: reduce_mod_cyclotomic(coeffs, m),
        }
    }

    fn common_order(&self, other: &CycNum) -> u32 {
        (self.order as u64).lcm(&(other.order as u64)) as u32
    }

    pub fn add(&self, other: &CycNum) -> CycNum {
        let m = self.common_order(other);
        let a = self.coerce(m);
        let b = other.coerce(m);
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(x, y)| x + y)
            .collect();
        CycNum { order: m, coeffs }.normalized()
    }

    pub fn sub(&self, other: &CycNum) -> CycNum {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> CycNum {
        let m = self.common_order(other);
        let a = self.coerce(m);
        let b = other.coerce(m);
        let mut prod = vec![Rational::zero(); a.coeffs.len() + b.coeffs.len()];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                prod[i + j] += x * y;
            }
        }
        CycNum {
            order: m,
            coeffs: reduce_mod_cyclotomic(prod, m),
        }
        .normalized()
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
        .normalized()
    }

    /// Multiplicative inverse by the extended Euclidean algorithm against
    /// the cyclotomic modulus.
    pub fn inv(&self) -> Result<CycNum, ArithError> {
        if self.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(r.recip()));
        }
        let modulus: Vec<Rational> = cyclotomic_polynomial(self.order)
            .iter()
            .map(|c| Rational::from_integer(c.clone()))
            .collect();
        let a: Vec<Rational> = self.coeffs.clone();
        // extended euclid in Q[x]: find u with u*a ≡ g (mod Phi_n), g a
        // nonzero constant since Phi_n is irreducible and deg a < deg Phi_n
        let (g, u) = extended_gcd_poly(&a, &modulus);
        debug_assert!(poly_deg(&g) == 0 && !g[0].is_zero());
        let ginv = g[0].recip();
        let coeffs: Vec<Rational> = u.iter().map(|c| c * &ginv).collect();
        let mut full = coeffs;
        full.resize(self.order as usize + 1, Rational::zero());
        Ok(CycNum {
            order: self.order,
            coeffs: reduce_mod_cyclotomic(full, self.order),
        }
        .normalized())
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, ArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u64) -> CycNum {
        let mut base = self.clone();
        let mut acc = CycNum::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order when the element is a root of unity; None if it
    /// is not, within the search bound `2 * order^2`.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let bound = 2 * (self.order as u64).max(1) * (self.order as u64).max(1);
        let mut p = self.clone();
        for k in 1..=bound {
            if p.is_one() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }
}

fn extended_gcd_poly(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    // returns (gcd-ish remainder when it becomes constant, cofactor u with
    // u*a + v*b = r); we only track u.
    let mut r0: Vec<Rational> = trim(b.to_vec());
    let mut r1: Vec<Rational> = trim(a.to_vec());
    let mut u0: Vec<Rational> = vec![Rational::zero()];
    let mut u1: Vec<Rational> = vec![Rational::one()];
    while poly_deg(&r1) > 0 {
        let (q, r) = poly_divmod(&r0, &r1);
        let u = poly_sub(&u0, &poly_mul(&q, &u1));
        r0 = r1;
        r1 = trim(r);
        u0 = u1;
        u1 = trim(u);
        if r1.iter().all(|c| c.is_zero()) {
            break;
        }
    }
    (r1, u1)
}

fn trim(mut p: Vec<Rational>) -> Vec<Rational> {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    if p.is_empty() {
        p.push(Rational::zero());
    }
    p
}

fn poly_deg(p: &[Rational]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let n = a.len().max(b.len());
    let mut out = vec![Rational::zero(); n];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    out
}

fn poly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem = num.to_vec();
    let nd = poly_deg(&rem);
    if nd < dd {
        return (vec![Rational::zero()], rem);
    }
    let mut quot = vec![Rational::zero(); nd - dd + 1];
    for i in (dd..=nd).rev() {
        if rem[i].is_zero() {
            continue;
        }
        let q = &rem[i] / &lead;
        quot[i - dd] = q.clone();
        for j in 0..=dd {
            let sub = &q * &den[j];
            rem[i - dd + j] -= sub;
        }
    }
    (quot, rem)
}

/// Reduce a coefficient vector (indexed by powers of zeta_n) modulo Phi_n,
/// returning exactly phi(n) coefficients.
fn reduce_mod_cyclotomic(mut coeffs: Vec<Rational>, n: u32) -> Vec<Rational> {
    let phi = euler_phi(n);
    let modulus = cyclotomic_polynomial(n);
    let deg = modulus.len() - 1; // = phi
    debug_assert_eq!(deg, phi);
    // first fold exponents >= n using zeta^n = 1
    if coeffs.len() > n as usize {
        for i in (n as usize..coeffs.len()).rev() {
            if !coeffs[i].is_zero() {
                let c = std::mem::replace(&mut coeffs[i], Rational::zero());
                coeffs[i - n as usize] += c;
            }
        }
        coeffs.truncate(n as usize);
    }
    // then divide by Phi_n
    for i in (deg..coeffs.len()).rev() {
        if coeffs[i].is_zero() {
            continue;
        }
        let q = coeffs[i].clone(); // modulus is monic
        for j in 0..=deg {
            let sub = &q * Rational::from_integer(modulus[j].clone());
            coeffs[i - deg + j] -= sub;
        }
    }
    coeffs.truncate(deg.max(1));
    coeffs.resize(phi.max(1), Rational::zero());
    coeffs
}

impl std::fmt::Display for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{}", r);
        }
        let mut parts = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = match i {
                0 => format!("{}", c),
                1 => format!("{}*z{}", c, self.order),
                _ => format!("{}*z{}^{}", c, self.order, i),
            };
            parts.push(term);
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "({})", parts.join(" + "))
        }
    }
}

/// Smallest cyclotomic order containing a set of entry orders and the
/// element orders of the generated group (the group exponent), so that all
/// later eigenvalue computations stay inside one field.
pub fn lcm_orders(orders: impl IntoIterator<Item = u32>) -> u32 {
    let mut acc: u64 = 1;
    for o in orders {
        acc = acc.lcm(&(o as u64));
    }
    acc as u32
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        let p = |n| cyclotomic_polynomial(n);
        assert_eq!(p(1), vec![Int::from(-1), Int::from(1)]);
        assert_eq!(p(2), vec![Int::from(1), Int::from(1)]);
        assert_eq!(p(4), vec![Int::from(1), Int::from(0), Int::from(1)]);
        // Phi_6 = x^2 - x + 1
        assert_eq!(p(6), vec![Int::from(1), Int::from(-1), Int::from(1)]);
        assert_eq!(p(12).len() - 1, euler_phi(12));
    }

    #[test]
    fn root_arithmetic() {
        let i = CycNum::root_of_unity(4, 1);
        assert_eq!(i.mul(&i), CycNum::from_int(-1));

        let z3 = CycNum::root_of_unity(3, 1);
        let z3sq = CycNum::root_of_unity(3, 2);
        assert_eq!(z3.add(&z3sq), CycNum::from_int(-1));

        let half = CycNum::from_rational(rat(1, 2));
        assert_eq!(half.inv().unwrap(), CycNum::from_int(2));

        assert_eq!(CycNum::root_of_unity(2, 1), CycNum::from_int(-1));
        assert_eq!(CycNum::root_of_unity(4, 2), CycNum::from_int(-1));
        // x^3 mod Phi_6 = -1
        assert_eq!(CycNum::root_of_unity(6, 3), CycNum::from_int(-1));
        assert_eq!(CycNum::root_of_unity(5, 0), CycNum::one());
    }

    #[test]
    fn inverse_in_extension() {
        let z5 = CycNum::root_of_unity(5, 1);
        let x = z5.add(&CycNum::from_int(2)); // 2 + zeta_5
        let xi = x.inv().unwrap();
        assert!(x.mul(&xi).is_one());

        assert_eq!(CycNum::zero().inv(), Err(ArithError::DivisionByZero));
    }

    #[test]
    fn coercion_consistency() {
        // zeta_3 inside Q(zeta_12), plus mixed-order product
        let z3 = CycNum::root_of_unity(3, 1);
        let z12 = CycNum::root_of_unity(12, 4);
        assert_eq!(z3.coerce(12), z12);
        let z4 = CycNum::root_of_unity(4, 1);
        let prod = z3.mul(&z4); // zeta_12^7
        assert_eq!(prod, CycNum::root_of_unity(12, 7));
    }

    #[test]
    fn multiplicative_orders() {
        for n in 1u32..=60 {
            let z = CycNum::root_of_unity(n, 1);
            assert!(z.pow(n as u64).is_one(), "zeta_{}^{} != 1", n, n);
            assert_eq!(z.multiplicative_order(), Some(n as u64), "order of zeta_{}", n);
        }
    }
}
