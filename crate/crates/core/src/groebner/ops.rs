//! Ideal-level operations built on the Buchberger core.

use super::{GbError, Ideal};
use crate::arith::CycNum;
use crate::budget::Budget;
use crate::cones::Cone;
use crate::poly::{Monomial, MonomialOrder, MultiPolynomial, RingCtx};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use std::sync::Arc;

/// Generators of `I ∩ k[vars not in drop]`, via a block order. The result
/// lives in the same ring; its generators contain no dropped variable.
pub fn eliminate(ideal: &Ideal, drop: &[usize], budget: &Budget) -> Result<Ideal, GbError> {
    if ideal.gens.is_empty() {
        return Ok(Ideal::zero(ideal.ring.clone()));
    }
    let ord = MonomialOrder::elimination(ideal.ring.nvars, drop);
    let basis = ideal.groebner_basis(&ord, budget)?;
    let dropped: Vec<bool> = {
        let mut v = vec![false; ideal.ring.nvars];
        for &d in drop {
            v[d] = true;
        }
        v
    };
    let kept: Vec<MultiPolynomial> = basis
        .iter()
        .filter(|g| {
            g.terms()
                .all(|(m, _)| m.0.iter().zip(&dropped).all(|(&e, &d)| !d || e == 0))
        })
        .cloned()
        .collect();
    Ok(Ideal::new(ideal.ring.clone(), kept))
}

/// Moves an ideal whose generators avoid certain variables into a smaller
/// ring; `keep[i]` is the source index of target variable `i`.
pub fn restrict_to_variables(ideal: &Ideal, keep: &[usize], target: Arc<RingCtx>) -> Ideal {
    let pos: HashMap<usize, usize> = keep.iter().enumerate().map(|(t, &s)| (s, t)).collect();
    let gens = ideal
        .gens
        .iter()
        .map(|g| {
            let mut out = MultiPolynomial::zero(target.clone());
            for (m, c) in g.terms() {
                let mut e = vec![0u32; target.nvars];
                for (i, &exp) in m.0.iter().enumerate() {
                    if exp > 0 {
                        let t = pos
                            .get(&i)
                            .expect("generator uses a variable outside the restriction");
                        e[*t] = exp;
                    }
                }
                out.add_term(Monomial(e), c.clone());
            }
            out
        })
        .collect();
    Ideal::new(target, gens)
}

/// Saturation `I : h^∞` by the single auxiliary-variable method: adjoin y,
/// add y*h - 1, eliminate y.
pub fn saturate(ideal: &Ideal, h: &MultiPolynomial, budget: &Budget) -> Result<Ideal, GbError> {
    assert!(!h.is_zero(), "saturation at the zero polynomial");
    let n = ideal.ring.nvars;
    let big = RingCtx::new(n + 1, ideal.ring.field_order);
    let embed_map: Vec<usize> = (0..n).collect();
    let mut gens: Vec<MultiPolynomial> = ideal
        .gens
        .iter()
        .map(|g| g.embed(big.clone(), &embed_map))
        .collect();
    let he = h.embed(big.clone(), &embed_map);
    let y = MultiPolynomial::var(big.clone(), n);
    gens.push(y.mul(&he).sub(&MultiPolynomial::one(big.clone())));
    let extended = Ideal::new(big, gens);
    let eliminated = eliminate(&extended, &[n], budget)?;
    Ok(restrict_to_variables(
        &eliminated,
        &embed_map,
        ideal.ring.clone(),
    ))
}

/// Ideal quotient `I : h`, through `(I ∩ <h>) / h`.
pub fn ideal_quotient(
    ideal: &Ideal,
    h: &MultiPolynomial,
    budget: &Budget,
) -> Result<Ideal, GbError> {
    assert!(!h.is_zero());
    // I ∩ <h> via the t-trick: eliminate t from t*I + (1-t)*<h>
    let n = ideal.ring.nvars;
    let big = RingCtx::new(n + 1, ideal.ring.field_order);
    let embed_map: Vec<usize> = (0..n).collect();
    let t = MultiPolynomial::var(big.clone(), n);
    let one_minus_t = MultiPolynomial::one(big.clone()).sub(&t);
    let mut gens: Vec<MultiPolynomial> = ideal
        .gens
        .iter()
        .map(|g| t.mul(&g.embed(big.clone(), &embed_map)))
        .collect();
    gens.push(one_minus_t.mul(&h.embed(big.clone(), &embed_map)));
    let extended = Ideal::new(big, gens);
    let intersection = eliminate(&extended, &[n], budget)?;
    let restricted = restrict_to_variables(&intersection, &embed_map, ideal.ring.clone());
    // divide each generator by h (exact by construction)
    let ord = MonomialOrder::DegRevLex;
    let mut out = Vec::new();
    for g in &restricted.gens {
        let q = divide_exact(g, h, &ord).expect("intersection generators divisible by h");
        out.push(q);
    }
    Ok(Ideal::new(ideal.ring.clone(), out))
}

fn divide_exact(
    f: &MultiPolynomial,
    h: &MultiPolynomial,
    ord: &MonomialOrder,
) -> Option<MultiPolynomial> {
    let mut rem = f.clone();
    let mut quot = MultiPolynomial::zero(f.ring.clone());
    let (hm, hc) = h.leading_term(ord)?;
    let (hm, hc) = (hm.clone(), hc.clone());
    while !rem.is_zero() {
        let (m, c) = rem.leading_term(ord).unwrap();
        let shift = m.div(&hm)?;
        let scale = c.div(&hc).unwrap();
        quot.add_term(shift.clone(), scale.clone());
        rem = rem.sub(&h.mul_term(&shift, &scale));
    }
    Some(quot)
}

/// True iff the ideal contains a monomial: the saturation at the product
/// of all variables is the unit ideal.
pub fn contains_monomial(ideal: &Ideal, budget: &Budget) -> Result<bool, GbError> {
    if ideal.gens.is_empty() {
        return Ok(false);
    }
    let n = ideal.ring.nvars;
    let all = MultiPolynomial::monomial(
        ideal.ring.clone(),
        Monomial(vec![1; n]),
        CycNum::one(),
    );
    let sat = saturate(ideal, &all, budget)?;
    sat.is_unit_ideal(budget)
}

/// Krull dimension of `V(I)`: maximal size of a variable set independent
/// modulo the leading-term ideal. `None` encodes the empty variety.
pub fn krull_dimension(ideal: &Ideal, budget: &Budget) -> Result<Option<usize>, GbError> {
    let n = ideal.ring.nvars;
    if ideal.gens.is_empty() {
        return Ok(Some(n));
    }
    let ord = MonomialOrder::DegRevLex;
    let basis = ideal.groebner_basis(&ord, budget)?;
    if basis
        .iter()
        .any(|g| g.num_terms() == 1 && g.total_degree() == 0)
    {
        return Ok(None);
    }
    let supports: Vec<Vec<usize>> = basis
        .iter()
        .map(|g| g.leading_term(&ord).unwrap().0.support())
        .collect();
    // max independent set: no leading-term support entirely inside S;
    // branch on which variable of the first uncovered support to exclude
    let mut memo: HashMap<u64, usize> = HashMap::new();
    fn best(
        excluded: u64,
        supports: &[Vec<usize>],
        n: usize,
        memo: &mut HashMap<u64, usize>,
    ) -> usize {
        if let Some(&v) = memo.get(&excluded) {
            return v;
        }
        let offending = supports
            .iter()
            .find(|sup| sup.iter().all(|&v| excluded & (1 << v) == 0));
        let result = match offending {
            None => n - (excluded.count_ones() as usize),
            Some(sup) => sup
                .iter()
                .map(|&v| best(excluded | (1 << v), supports, n, memo))
                .max()
                .unwrap_or(0),
        };
        memo.insert(excluded, result);
        result
    }
    assert!(n <= 64, "dimension search uses 64-bit variable masks");
    Ok(Some(best(0, &supports, n, &mut memo)))
}

/// Kernel of the ring map `T_i -> images[i]` from a fresh polynomial ring
/// in `images.len()` variables to the source ring, by graph-ideal
/// elimination of the source variables.
pub fn kernel_of_ring_map(
    images: &[MultiPolynomial],
    budget: &Budget,
) -> Result<Ideal, GbError> {
    let source = images
        .first()
        .map(|g| g.ring.clone())
        .expect("at least one image");
    let n = source.nvars;
    let s = images.len();
    let big = RingCtx::new(n + s, source.field_order);
    let embed_map: Vec<usize> = (0..n).collect();
    let mut gens = Vec::with_capacity(s);
    for (i, g) in images.iter().enumerate() {
        let ti = MultiPolynomial::var(big.clone(), n + i);
        gens.push(ti.sub(&g.embed(big.clone(), &embed_map)));
    }
    let graph = Ideal::new(big, gens);
    let eliminated = eliminate(&graph, &embed_map, budget)?;
    let target = RingCtx::new(s, source.field_order);
    let keep: Vec<usize> = (n..n + s).collect();
    Ok(restrict_to_variables(&eliminated, &keep, target))
}

/// Partial derivative with respect to variable `v`.
pub fn partial_derivative(f: &MultiPolynomial, v: usize) -> MultiPolynomial {
    let mut out = MultiPolynomial::zero(f.ring.clone());
    for (m, c) in f.terms() {
        let e = m.0[v];
        if e > 0 {
            let mut reduced = m.clone();
            reduced.0[v] -= 1;
            out.add_term(reduced, c.scale(&crate::arith::rat_int(e as i64)));
        }
    }
    out
}

/// `I` together with all `c x c` minors of the Jacobian of its generators.
pub fn jacobian_minor_ideal(ideal: &Ideal, c: usize) -> Ideal {
    let n = ideal.ring.nvars;
    let g = ideal.gens.len();
    assert!(c >= 1 && c <= g.min(n), "minor size out of range");
    let jac: Vec<Vec<MultiPolynomial>> = ideal
        .gens
        .iter()
        .map(|f| (0..n).map(|v| partial_derivative(f, v)).collect())
        .collect();
    let mut memo: HashMap<(Vec<usize>, Vec<usize>), MultiPolynomial> = HashMap::new();
    let mut gens = ideal.gens.clone();
    let mut seen: Vec<MultiPolynomial> = Vec::new();
    for rows in combinations(g, c) {
        for cols in combinations(n, c) {
            let m = minor(&jac, &rows, &cols, &mut memo, &ideal.ring);
            if m.is_zero() || seen.contains(&m) {
                continue;
            }
            seen.push(m.clone());
            gens.push(m);
        }
    }
    Ideal::new(ideal.ring.clone(), gens)
}

fn minor(
    jac: &[Vec<MultiPolynomial>],
    rows: &[usize],
    cols: &[usize],
    memo: &mut HashMap<(Vec<usize>, Vec<usize>), MultiPolynomial>,
    ring: &Arc<RingCtx>,
) -> MultiPolynomial {
    if rows.len() == 1 {
        return jac[rows[0]][cols[0]].clone();
    }
    let key = (rows.to_vec(), cols.to_vec());
    if let Some(m) = memo.get(&key) {
        return m.clone();
    }
    let mut acc = MultiPolynomial::zero(ring.clone());
    let sub_rows: Vec<usize> = rows[1..].to_vec();
    for (k, &col) in cols.iter().enumerate() {
        let entry = &jac[rows[0]][col];
        if entry.is_zero() {
            continue;
        }
        let sub_cols: Vec<usize> = cols
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != k)
            .map(|(_, &cc)| cc)
            .collect();
        let sub = minor(jac, &sub_rows, &sub_cols, memo, ring);
        let term = entry.mul(&sub);
        acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    memo.insert(key, acc.clone());
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Initial-form ideal in the inner (min) convention: the terms of minimal
/// `<w, exponent>` weight. For principal ideals this is direct; otherwise
/// the ideal must carry (or admit) a strictly positive grading making all
/// generators homogeneous, which turns the computation into one
/// positive-weight Groebner basis.
pub fn initial_form_ideal(
    ideal: &Ideal,
    w: &[BigInt],
    budget: &Budget,
) -> Result<Ideal, GbError> {
    if ideal.gens.is_empty() {
        return Ok(Ideal::zero(ideal.ring.clone()));
    }
    if ideal.gens.len() == 1 {
        let inw = ideal.gens[0].initial_form_min(w);
        return Ok(Ideal::new(ideal.ring.clone(), vec![inw]));
    }
    let grading = match &ideal.positive_grading {
        Some(d) => d.clone(),
        None => find_positive_grading(ideal).ok_or(GbError::UnsupportedWeight)?,
    };
    debug_assert!(ideal
        .gens
        .iter()
        .all(|g| g.is_weighted_homogeneous(&grading)));
    // in_w^min = in_u^max with u = c*d - w > 0 on a d-graded ideal
    let c: BigInt = w
        .iter()
        .zip(&grading)
        .map(|(wi, di)| {
            // smallest c_i with c_i * d_i - w_i >= 1
            let num = wi + BigInt::one();
            let di = di.clone();
            let mut q = num.clone() / &di;
            if &q * &di < num {
                q += 1;
            }
            q
        })
        .max()
        .unwrap()
        .max(BigInt::one());
    let u: Vec<BigInt> = w
        .iter()
        .zip(&grading)
        .map(|(wi, di)| &c * di - wi)
        .collect();
    debug_assert!(u.iter().all(|x| x.is_positive()));
    let ord = MonomialOrder::weight(u.clone());
    let basis = ideal.groebner_basis(&ord, budget)?;
    let inited: Vec<MultiPolynomial> = basis
        .iter()
        .map(|g| {
            let neg: Vec<BigInt> = u.iter().map(|x| -x.clone()).collect();
            g.initial_form_min(&neg) // min of -u = max of u
        })
        .collect();
    Ok(Ideal::new(ideal.ring.clone(), inited))
}

/// Searches for a strictly positive integer vector making every generator
/// weighted-homogeneous.
pub fn find_positive_grading(ideal: &Ideal) -> Option<Vec<BigInt>> {
    let n = ideal.ring.nvars;
    let mut constraints: Vec<Vec<BigInt>> = Vec::new();
    for g in &ideal.gens {
        let mut terms = g.terms();
        let Some((m0, _)) = terms.next() else {
            continue;
        };
        for (m, _) in terms {
            constraints.push(
                m.0.iter()
                    .zip(&m0.0)
                    .map(|(&a, &b)| BigInt::from(a as i64 - b as i64))
                    .collect(),
            );
        }
    }
    let orthant: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let mut v = vec![BigInt::zero(); n];
            v[i] = BigInt::one();
            v
        })
        .collect();
    let cone = Cone::from_inequalities(n, &orthant, &constraints);
    let p = cone.relative_interior_point();
    if p.iter().all(|x| x.is_positive()) {
        Some(p)
    } else {
        None
    }
}

/// Ideal equality via mutual normal-form membership.
pub fn ideals_equal(a: &Ideal, b: &Ideal, budget: &Budget) -> Result<bool, GbError> {
    for g in &a.gens {
        if !b.contains(g, budget)? {
            return Ok(false);
        }
    }
    for g in &b.gens {
        if !a.contains(g, budget)? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;

    fn ideal(gens: &[&str], nvars: usize) -> Ideal {
        let ring = RingCtx::new(nvars, 1);
        Ideal::new(
            ring.clone(),
            gens.iter().map(|s| parse_poly(s, &ring).unwrap()).collect(),
        )
    }

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn eliminate_graph_of_quaternion_invariants() {
        // J = <T1 - S1*S2, T2 - (S1^2 + S2^2), T3 - (S2^2 - S1^2)> with
        // S = (T4, T5): drop the S block, expect 4T1^2 - T2^2 + T3^2
        let ring = RingCtx::new(5, 1);
        let names = ["T1", "T2", "T3"];
        let imgs = ["T4*T5", "T4^2 + T5^2", "T5^2 - T4^2"];
        let gens: Vec<MultiPolynomial> = names
            .iter()
            .zip(&imgs)
            .map(|(t, g)| {
                parse_poly(t, &ring)
                    .unwrap()
                    .sub(&parse_poly(g, &ring).unwrap())
            })
            .collect();
        let j = Ideal::new(ring, gens);
        let e = eliminate(&j, &[3, 4], &b()).unwrap();
        assert_eq!(e.gens.len(), 1);
        let expected = parse_poly("T1^2 - 1/4*T2^2 + 1/4*T3^2", &e.ring).unwrap();
        assert_eq!(
            e.gens[0].monic(&MonomialOrder::DegRevLex),
            expected
        );

        // <S - T> drop S -> zero ideal
        let i = ideal(&["T1 - T2"], 2);
        let e = eliminate(&i, &[0], &b()).unwrap();
        assert!(e.is_zero_ideal());
    }

    #[test]
    fn kernel_of_ring_map_examples() {
        let source = RingCtx::new(2, 1);
        let images: Vec<MultiPolynomial> = ["T1*T2", "T1^2 + T2^2", "T2^2 - T1^2"]
            .iter()
            .map(|s| parse_poly(s, &source).unwrap())
            .collect();
        let k = kernel_of_ring_map(&images, &b()).unwrap();
        assert_eq!(k.ring.nvars, 3);
        assert_eq!(k.gens.len(), 1);
        let expect = parse_poly("T1^2 - 1/4*T2^2 + 1/4*T3^2", &k.ring).unwrap();
        assert_eq!(k.gens[0].monic(&MonomialOrder::DegRevLex), expect);
        // soundness: substituting the images yields zero
        let back = k.gens[0].substitute(&images);
        assert!(back.is_zero());

        let images: Vec<MultiPolynomial> = ["T1", "T2"]
            .iter()
            .map(|s| parse_poly(s, &source).unwrap())
            .collect();
        let k = kernel_of_ring_map(&images, &b()).unwrap();
        assert!(k.is_zero_ideal());
    }

    #[test]
    fn saturation_examples() {
        let i = ideal(&["T1*T2"], 2);
        let h = parse_poly("T1", &i.ring).unwrap();
        let s = saturate(&i, &h, &b()).unwrap();
        assert!(ideals_equal(&s, &ideal(&["T2"], 2), &b()).unwrap());

        let i = ideal(&["T1^2*T2 - T1"], 2);
        let s = saturate(&i, &h, &b()).unwrap();
        assert!(ideals_equal(&s, &ideal(&["T1*T2 - 1"], 2), &b()).unwrap());

        // idempotence
        let s2 = saturate(&s, &h, &b()).unwrap();
        assert!(ideals_equal(&s, &s2, &b()).unwrap());
    }

    #[test]
    fn quotient_example() {
        let i = ideal(&["T1*T2"], 2);
        let h = parse_poly("T1", &i.ring).unwrap();
        let q = ideal_quotient(&i, &h, &b()).unwrap();
        assert!(ideals_equal(&q, &ideal(&["T2"], 2), &b()).unwrap());
    }

    #[test]
    fn dimension_examples() {
        let i = ideal(&["T1^2 + T2*T3 - T4"], 8);
        assert_eq!(krull_dimension(&i, &b()).unwrap(), Some(7));
        let i = ideal(&["T1", "T2"], 2);
        assert_eq!(krull_dimension(&i, &b()).unwrap(), Some(0));
        // substitute T2 = T3 = 0 into the quadric: T1^2 remains
        let i = ideal(&["4*T1^2 - T2^2 + T3^2", "T2", "T3"], 3);
        assert_eq!(krull_dimension(&i, &b()).unwrap(), Some(0));
        let unit = ideal(&["1"], 2);
        assert_eq!(krull_dimension(&unit, &b()).unwrap(), None);
        let zero = Ideal::zero(RingCtx::new(3, 1));
        assert_eq!(krull_dimension(&zero, &b()).unwrap(), Some(3));
    }

    #[test]
    fn initial_forms_and_monomial_detection() {
        // all three terms tie at weight (1,1,1): initial form is the whole
        // trinomial, which contains no monomial
        let i = ideal(&["4*T1^2 - T2^2 + T3^2"], 3);
        let w: Vec<BigInt> = vec![1.into(), 1.into(), 1.into()];
        let ini = initial_form_ideal(&i, &w, &b()).unwrap();
        assert!(ideals_equal(&ini, &i, &b()).unwrap());
        assert!(!contains_monomial(&ini, &b()).unwrap());

        // min convention at (1,0,0): the light terms -T2^2 + T3^2 survive
        let w: Vec<BigInt> = vec![1.into(), 0.into(), 0.into()];
        let ini = initial_form_ideal(&i, &w, &b()).unwrap();
        assert!(ideals_equal(&ini, &ideal(&["T2^2 - T3^2"], 3), &b()).unwrap());
        assert!(!contains_monomial(&ini, &b()).unwrap());

        // min convention at (0,1,1): T1^2 is lightest and is a monomial
        let w: Vec<BigInt> = vec![0.into(), 1.into(), 1.into()];
        let ini = initial_form_ideal(&i, &w, &b()).unwrap();
        assert!(contains_monomial(&ini, &b()).unwrap());

        assert!(!contains_monomial(&ideal(&["T1 - 1"], 1), &b()).unwrap());
    }

    #[test]
    fn jacobian_minors() {
        let i = ideal(&["4*T1^2 - T2^2 + T3^2"], 3);
        let j = jacobian_minor_ideal(&i, 1);
        let expect = ideal(&["4*T1^2 - T2^2 + T3^2", "8*T1", "2*T2", "2*T3"], 3);
        assert!(ideals_equal(&j, &expect, &b()).unwrap());

        // constant partial makes the singular ideal trivial
        let i = ideal(&["T1"], 2);
        let j = jacobian_minor_ideal(&i, 1);
        assert!(j.is_unit_ideal(&b()).unwrap());

        // hyperbola is smooth: 1 = T1*T2 - (T1*T2 - 1)
        let i = ideal(&["T1*T2 - 1"], 2);
        let j = jacobian_minor_ideal(&i, 1);
        assert!(j.is_unit_ideal(&b()).unwrap());
    }

    #[test]
    fn positive_grading_search() {
        // weighted-homogeneous for d = (1, 3, 2, 3) and its multiples
        let i = ideal(&["4*T3^3 - T2^2 - 27*T4^2"], 4);
        let d = find_positive_grading(&i).unwrap();
        assert!(i.gens[0].is_weighted_homogeneous(&d));
        assert!(d.iter().all(|x| x.is_positive()));
    }
}
