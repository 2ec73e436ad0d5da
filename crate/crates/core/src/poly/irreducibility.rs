//! Layered sound irreducibility certificates over the complex numbers.
//! Soundness contract: `Irreducible` is never returned for a reducible
//! input; anything outside the certified classes reports `Unverified`.

use super::polytope::{is_integrally_indecomposable, PolytopeError};
use super::{newton_polytope, MultiPolynomial, PolyError};
use crate::arith::{CycNum, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Irreducible(String),
    Reducible(String),
    Unverified,
}

impl Certificate {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Certificate::Irreducible(_))
    }
}

/// Layered tests, first success wins:
/// units -> Unverified; monomials -> degree-1 Irreducible, else Reducible;
/// nontrivial monomial factor -> Reducible; binomials via the gcd of the
/// exponent difference; quadratic forms of rank >= 3; Newton-polytope
/// integral indecomposability; otherwise Unverified.
pub fn irreducibility_certificate(f: &MultiPolynomial) -> Result<Certificate, PolyError> {
    if f.is_zero() {
        return Err(PolyError::ZeroPolynomial);
    }
    // units and monomials
    if f.num_terms() == 1 {
        let (m, _) = f.terms().next().unwrap();
        return Ok(match m.total_degree() {
            0 => Certificate::Unverified, // unit: not prime, not reducible
            1 => Certificate::Irreducible("scaled variable".into()),
            _ => Certificate::Reducible("monomial of degree >= 2".into()),
        });
    }
    // monomial factor
    let content = f.monomial_content();
    if !content.is_one() {
        return Ok(Certificate::Reducible(format!(
            "monomial factor with exponents {:?}",
            content.0
        )));
    }
    // binomial with coprime-support terms
    if f.num_terms() == 2 {
        let exps: Vec<&super::Monomial> = f.terms().map(|(m, _)| m).collect();
        let diff: Vec<BigInt> = exps[0]
            .0
            .iter()
            .zip(&exps[1].0)
            .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
            .collect();
        let g = diff.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        return Ok(if g == BigInt::from(1) {
            Certificate::Irreducible("binomial with primitive exponent difference".into())
        } else {
            Certificate::Reducible(format!("binomial exponent difference divisible by {}", g))
        });
    }
    // quadratic form of rank >= 3
    if let Some(rank) = quadratic_form_rank(f) {
        if rank >= 3 {
            return Ok(Certificate::Irreducible(format!(
                "quadratic form of rank {}",
                rank
            )));
        }
        // rank <= 2 quadratic forms split over C
        if rank <= 2 {
            return Ok(Certificate::Reducible(format!(
                "quadratic form of rank {} splits into linear factors",
                rank
            )));
        }
    }
    // Newton polytope indecomposability (Gao-type certificate); valid since
    // monomial factors were stripped above
    let np = newton_polytope(f)?;
    match is_integrally_indecomposable(&np) {
        Ok(true) => Ok(Certificate::Irreducible(
            "integrally indecomposable Newton polytope".into(),
        )),
        Ok(false) => Ok(Certificate::Unverified),
        Err(PolytopeError::Unsupported(_)) | Err(PolytopeError::CoordinatesTooLarge) => {
            Ok(Certificate::Unverified)
        }
    }
}

/// If `f` is a quadratic form (every term of total degree exactly 2),
/// returns the rank of its symmetric matrix over the cyclotomic field.
fn quadratic_form_rank(f: &MultiPolynomial) -> Option<usize> {
    if f.terms().any(|(m, _)| m.total_degree() != 2) {
        return None;
    }
    let vars = f.support_vars();
    let idx: std::collections::HashMap<usize, usize> =
        vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let n = vars.len();
    let mut mat: Vec<Vec<CycNum>> = vec![vec![CycNum::zero(); n]; n];
    let half = CycNum::from_rational(Rational::new(1.into(), 2.into()));
    for (m, c) in f.terms() {
        let sup = m.support();
        match sup.len() {
            1 => {
                let i = idx[&sup[0]];
                mat[i][i] = mat[i][i].add(c);
            }
            2 => {
                let i = idx[&sup[0]];
                let j = idx[&sup[1]];
                let h = c.mul(&half);
                mat[i][j] = mat[i][j].add(&h);
                mat[j][i] = mat[j][i].add(&h);
            }
            _ => unreachable!("degree-2 terms touch at most two variables"),
        }
    }
    // Gaussian elimination rank over the field
    let mut rank = 0;
    let mut row = 0;
    for col in 0..n {
        let Some(p) = (row..n).find(|&r| !mat[r][col].is_zero()) else {
            continue;
        };
        mat.swap(row, p);
        let inv = mat[row][col].inv().unwrap();
        for c in col..n {
            mat[row][c] = mat[row][c].mul(&inv);
        }
        for r in 0..n {
            if r != row && !mat[r][col].is_zero() {
                let fct = mat[r][col].clone();
                for c in col..n {
                    let sub = fct.mul(&mat[row][c]);
                    mat[r][c] = mat[r][c].sub(&sub);
                }
            }
        }
        rank += 1;
        row += 1;
        if row == n {
            break;
        }
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::super::{Monomial, MultiPolynomial, RingCtx};
    use super::*;

    fn poly(nvars: usize, terms: Vec<(Vec<u32>, i64)>) -> MultiPolynomial {
        let ring = RingCtx::new(nvars, 1);
        MultiPolynomial::from_terms(
            ring,
            terms
                .into_iter()
                .map(|(e, c)| (Monomial(e), CycNum::from_int(c)))
                .collect(),
        )
    }

    #[test]
    fn difference_of_squares_is_reducible() {
        let f = poly(2, vec![(vec![2, 0], 1), (vec![0, 2], -1)]);
        assert!(matches!(
            irreducibility_certificate(&f).unwrap(),
            Certificate::Reducible(_)
        ));
    }

    #[test]
    fn rank_three_quadratic_form() {
        // 4*T1^2 - T2^2 + T3^2
        let f = poly(3, vec![(vec![2, 0, 0], 4), (vec![0, 2, 0], -1), (vec![0, 0, 2], 1)]);
        let cert = irreducibility_certificate(&f).unwrap();
        assert!(cert.is_irreducible(), "{:?}", cert);
        // rank-2 form splits: 4*T1^2 + T3^2 = (2T1 + iT3)(2T1 - iT3)
        let g = poly(3, vec![(vec![2, 0, 0], 4), (vec![0, 0, 2], 1)]);
        assert!(matches!(
            irreducibility_certificate(&g).unwrap(),
            Certificate::Reducible(_)
        ));
    }

    #[test]
    fn trinomial_via_polytope() {
        // 4*T3^3*T7 - T2^2*T6 - 27*T4^2*T8 in 8 variables
        let mut a = vec![0u32; 8];
        a[2] = 3;
        a[6] = 1;
        let mut b = vec![0u32; 8];
        b[1] = 2;
        b[5] = 1;
        let mut c = vec![0u32; 8];
        c[3] = 2;
        c[7] = 1;
        let f = poly(8, vec![(a, 4), (b, -1), (c, -27)]);
        let cert = irreducibility_certificate(&f).unwrap();
        assert!(cert.is_irreducible(), "{:?}", cert);
    }

    #[test]
    fn units_monomials_and_factors() {
        let unit = poly(2, vec![(vec![0, 0], 5)]);
        assert_eq!(irreducibility_certificate(&unit).unwrap(), Certificate::Unverified);
        let var = poly(2, vec![(vec![1, 0], 3)]);
        assert!(irreducibility_certificate(&var).unwrap().is_irreducible());
        let sq = poly(2, vec![(vec![2, 0], 1)]);
        assert!(matches!(
            irreducibility_certificate(&sq).unwrap(),
            Certificate::Reducible(_)
        ));
        // T1*(T1 + T2): monomial factor
        let f = poly(2, vec![(vec![2, 0], 1), (vec![1, 1], 1)]);
        assert!(matches!(
            irreducibility_certificate(&f).unwrap(),
            Certificate::Reducible(_)
        ));
        let zero = MultiPolynomial::zero(RingCtx::new(2, 1));
        assert!(irreducibility_certificate(&zero).is_err());
    }

    #[test]
    fn binomial_gcd_criterion() {
        // x^2*y - z^2: gcd(2,1,-2) = 1
        let f = poly(3, vec![(vec![2, 1, 0], 1), (vec![0, 0, 2], -1)]);
        assert!(irreducibility_certificate(&f).unwrap().is_irreducible());
        // x^6 - y^4: gcd 2
        let g = poly(2, vec![(vec![6, 0], 1), (vec![0, 4], -1)]);
        assert!(matches!(
            irreducibility_certificate(&g).unwrap(),
            Certificate::Reducible(_)
        ));
    }

    #[test]
    fn never_irreducible_on_products() {
        // randomized corpus of products (f * g) with nonconstant factors
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let ring = RingCtx::new(3, 1);
        let mut checked = 0;
        while checked < 200 {
            let rand_poly = |rng: &mut rand_chacha::ChaCha8Rng| {
                let nterms = rng.gen_range(1..=3);
                let terms: Vec<(Monomial, CycNum)> = (0..nterms)
                    .map(|_| {
                        let e: Vec<u32> = (0..3).map(|_| rng.gen_range(0..3)).collect();
                        let c = rng.gen_range(-3i64..=3);
                        (Monomial(e), CycNum::from_int(c))
                    })
                    .collect();
                MultiPolynomial::from_terms(ring.clone(), terms)
            };
            let f = rand_poly(&mut rng);
            let g = rand_poly(&mut rng);
            if f.total_degree() == 0 || g.total_degree() == 0 || f.is_zero() || g.is_zero() {
                continue;
            }
            let prod = f.mul(&g);
            if prod.is_zero() {
                continue;
            }
            let cert = irreducibility_certificate(&prod).unwrap();
            assert!(
                !cert.is_irreducible(),
                "claimed irreducible on product ({}) * ({})",
                f,
                g
            );
            checked += 1;
        }
    }
}
