//! Generators of invariant rings of finite matrix groups and their
//! eigen-homogenization under the abelianized group action, producing the
//! degree data of the quotient presentation.

use crate::arith::{CycNum, Rational};
use crate::budget::Budget;
use crate::groups::{Abelianization, CycMatrix, GroupError, MatrixGroup};
use crate::poly::{Monomial, MonomialOrder, MultiPolynomial, RingCtx};
use num_bigint::BigInt;
use std::sync::Arc;
use thiserror::Error;

type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum InvariantError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("induced action matrices do not commute; the quotient is not abelian")]
    NonCommutingAction,
}

/// Substitution action: `f ∘ m`, replacing each variable by the linear
/// form given by the matrix row.
pub fn apply_matrix(f: &MultiPolynomial, m: &CycMatrix) -> MultiPolynomial {
    let ring = f.ring.clone();
    let n = ring.nvars;
    assert_eq!(n, m.n);
    let images: Vec<MultiPolynomial> = (0..n)
        .map(|i| {
            let mut p = MultiPolynomial::zero(ring.clone());
            for j in 0..n {
                let c = m.at(i, j);
                if !c.is_zero() {
                    p.add_term(Monomial::var(j, n), c.clone());
                }
            }
            p
        })
        .collect();
    f.substitute(&images)
}

/// Reynolds averaging operator: `(1/|H|) * sum of f∘h`; the identity on
/// invariants and a projection onto them.
pub fn reynolds(f: &MultiPolynomial, h: &MatrixGroup) -> MultiPolynomial {
    let mut acc = MultiPolynomial::zero(f.ring.clone());
    for e in h.elements() {
        acc = acc.add(&apply_matrix(f, e));
    }
    let scale = CycNum::from_rational(Rational::new(Int::from(1), Int::from(h.order() as i64)));
    acc.scale(&scale)
}

/// Monomials of total degree `d`, degrevlex descending.
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            rec(i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    if nvars == 0 {
        return out;
    }
    rec(0, d, &mut cur, &mut out);
    let ord = MonomialOrder::DegRevLex;
    out.sort_by(|a, b| ord.cmp(b, a));
    out
}

/// Row echelon structure over polynomials with tracked coordinates in an
/// external basis.
struct Echelon {
    ord: MonomialOrder,
    rows: Vec<(MultiPolynomial, Vec<CycNum>)>, // (poly, coords)
}

impl Echelon {
    fn new() -> Echelon {
        Echelon {
            ord: MonomialOrder::DegRevLex,
            rows: Vec::new(),
        }
    }

    /// Reduces `f` against the rows; returns the remainder and its
    /// accumulated coordinates.
    fn reduce(&self, f: &MultiPolynomial, coords: Vec<CycNum>) -> (MultiPolynomial, Vec<CycNum>) {
        let mut f = f.clone();
        let mut coords = coords;
        loop {
            let Some((lm, lc)) = f.leading_term(&self.ord).map(|(m, c)| (m.clone(), c.clone()))
            else {
                return (f, coords);
            };
            let mut hit = false;
            for (row, rc) in &self.rows {
                let (rm, rcoef) = row.leading_term(&self.ord).unwrap();
                if *rm == lm {
                    let factor = lc.div(rcoef).unwrap();
                    f = f.sub(&row.scale(&factor));
                    for (a, b) in coords.iter_mut().zip(rc) {
                        *a = a.sub(&factor.mul(b));
                    }
                    hit = true;
                    break;
                }
            }
            if !hit {
                return (f, coords);
            }
        }
    }

    /// Inserts `f` (with its coordinates) if independent; returns true if
    /// the row was added.
    fn insert(&mut self, f: &MultiPolynomial, coords: Vec<CycNum>) -> bool {
        let (rem, coords) = self.reduce(f, coords);
        if rem.is_zero() {
            return false;
        }
        self.rows.push((rem, coords));
        true
    }

    fn contains(&self, f: &MultiPolynomial) -> bool {
        let dummy = vec![];
        let (rem, _) = self.reduce(f, dummy);
        rem.is_zero()
    }
}

/// Basis of the degree-`d` invariants: Reynolds images of all monomials,
/// linearly reduced; deterministic ordering.
pub fn invariant_space_basis(
    h: &MatrixGroup,
    ring: &Arc<RingCtx>,
    d: u32,
) -> Vec<MultiPolynomial> {
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for m in monomials_of_degree(ring.nvars, d) {
        let r = reynolds(
            &MultiPolynomial::monomial(ring.clone(), m, CycNum::one()),
            h,
        );
        if r.is_zero() {
            continue;
        }
        if ech.insert(&r, vec![]) {
            basis.push(
                ech.rows
                    .last()
                    .unwrap()
                    .0
                    .monic(&MonomialOrder::DegRevLex),
            );
        }
    }
    basis
}

/// Minimal homogeneous generating set of the invariant ring, degree by
/// degree up to the group order (the classical degree bound).
pub fn minimal_generators(h: &MatrixGroup, ring: &Arc<RingCtx>) -> Vec<MultiPolynomial> {
    let bound = h.order() as u32;
    let mut gens: Vec<MultiPolynomial> = Vec::new();
    for d in 1..=bound {
        let space = invariant_space_basis(h, ring, d);
        if space.is_empty() {
            continue;
        }
        let mut ech = Echelon::new();
        for p in products_of_degree(&gens, d, ring) {
            ech.insert(&p, vec![]);
        }
        for b in space {
            if ech.insert(&b, vec![]) {
                gens.push(b.monic(&MonomialOrder::DegRevLex));
            }
        }
    }
    gens
}

/// All products of at least two generators with total degree exactly `d`
/// (repetitions allowed), in deterministic order.
fn products_of_degree(
    gens: &[MultiPolynomial],
    d: u32,
    ring: &Arc<RingCtx>,
) -> Vec<MultiPolynomial> {
    let mut out = Vec::new();
    fn rec(
        gens: &[MultiPolynomial],
        start: usize,
        left: u32,
        factors: usize,
        acc: &MultiPolynomial,
        out: &mut Vec<MultiPolynomial>,
    ) {
        if left == 0 {
            if factors >= 2 {
                out.push(acc.clone());
            }
            return;
        }
        for i in start..gens.len() {
            let dg = gens[i].total_degree() as u32;
            if dg == 0 || dg > left {
                continue;
            }
            let next = acc.mul(&gens[i]);
            rec(gens, i, left - dg, factors + 1, &next, out);
        }
    }
    let one = MultiPolynomial::one(ring.clone());
    rec(gens, 0, d, 0, &one, &mut out);
    out
}

/// Products (including single lower-degree generators raised to powers)
/// used as the known part of the degree-`d` basis.
fn smaller_degree_products(
    gens: &[MultiPolynomial],
    d: u32,
    ring: &Arc<RingCtx>,
) -> Vec<MultiPolynomial> {
    products_of_degree(gens, d, ring)
}

/// A generating set made `G'`-homogeneous: simultaneous eigenvectors of
/// the induced action on each graded piece, with their degree tuples in
/// the abelianization.
#[derive(Clone, Debug)]
pub struct GradedGeneratorSet {
    pub ring: Arc<RingCtx>,
    pub generators: Vec<MultiPolynomial>,
    /// Degree tuple of each generator in the abelianization coordinates.
    pub degrees: Vec<Vec<Int>>,
    pub abelianization: Abelianization,
}

/// Turns a minimal generating set of the derived-subgroup invariants into
/// simultaneous eigenvectors of the induced abelianized action, assembling
/// the degree matrix data.
pub fn gprime_homogenize(
    gens: &[MultiPolynomial],
    group: &MatrixGroup,
    ring: &Arc<RingCtx>,
    budget: &Budget,
) -> Result<GradedGeneratorSet, InvariantError> {
    let ab = group.abelianization(budget)?;
    let ord = MonomialOrder::DegRevLex;
    let mut degrees_present: Vec<u32> = gens
        .iter()
        .map(|g| g.total_degree() as u32)
        .collect();
    degrees_present.sort_unstable();
    degrees_present.dedup();

    let mut chosen: Vec<MultiPolynomial> = Vec::new();
    let mut chosen_degrees: Vec<Vec<Int>> = Vec::new();

    for &d in &degrees_present {
        // basis of V_d from generators of degree d and smaller-degree products
        let mut ech = Echelon::new();
        let mut hbasis: Vec<MultiPolynomial> = Vec::new();
        for g in gens.iter().filter(|g| g.total_degree() as u32 == d) {
            if ech.insert(g, vec![]) {
                hbasis.push(g.clone());
            }
        }
        for p in smaller_degree_products(gens, d, ring) {
            if ech.insert(&p, vec![]) {
                hbasis.push(p);
            }
        }
        let s_d = hbasis.len();
        if s_d == 0 {
            continue;
        }
        // coordinates helper: express a polynomial in the hbasis
        let coords_of = |f: &MultiPolynomial, ech: &Echelon| -> Vec<CycNum> {
            // reduce while tracking: start with zero coords, negate at end
            let start = vec![CycNum::zero(); s_d];
            let (rem, acc) = ech.reduce(f, start);
            assert!(rem.is_zero(), "action leaves the graded piece invariant");
            acc.iter().map(|c| c.neg()).collect()
        };
        // echelon must track coordinates in hbasis: rebuild with identity coords
        let mut tracked = Echelon::new();
        for (i, hb) in hbasis.iter().enumerate() {
            let mut e = vec![CycNum::zero(); s_d];
            e[i] = CycNum::one();
            let added = tracked.insert(hb, e);
            debug_assert!(added);
        }
        // induced matrices of the group generators on V_d
        let mut mats: Vec<Vec<Vec<CycNum>>> = Vec::new(); // [gen][row][col]
        for m in &group.generators {
            let mut cols: Vec<Vec<CycNum>> = Vec::new();
            for hb in &hbasis {
                let img = apply_matrix(hb, m);
                cols.push(coords_of(&img, &tracked));
            }
            // transpose to rows
            let rows: Vec<Vec<CycNum>> = (0..s_d)
                .map(|r| (0..s_d).map(|c| cols[c][r].clone()).collect())
                .collect();
            mats.push(rows);
        }
        // commuting check (the induced action factors through the quotient)
        for a in 0..mats.len() {
            for b in a + 1..mats.len() {
                if mat_mul(&mats[a], &mats[b]) != mat_mul(&mats[b], &mats[a]) {
                    return Err(InvariantError::NonCommutingAction);
                }
            }
        }
        // recursive common-eigenspace splitting
        let full: Vec<Vec<CycNum>> = (0..s_d)
            .map(|i| {
                (0..s_d)
                    .map(|j| {
                        if i == j {
                            CycNum::one()
                        } else {
                            CycNum::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        let mut leaves: Vec<(Vec<CycNum>, Vec<Vec<CycNum>>)> = vec![(vec![], full)];
        for mat in &mats {
            let mut next = Vec::new();
            for (tuple, space) in &leaves {
                for (zeta, sub) in split_eigenspaces(mat, space, group.field_order) {
                    let mut t = tuple.clone();
                    t.push(zeta);
                    next.push((t, sub));
                }
            }
            leaves = next;
        }
        // convert leaves to polynomials ordered by degree tuple
        let mut eigen: Vec<(Vec<Int>, MultiPolynomial)> = Vec::new();
        for (tuple, space) in &leaves {
            let degree = ab.character_to_degree(tuple);
            for v in space {
                let mut poly = MultiPolynomial::zero(ring.clone());
                for (c, hb) in v.iter().zip(&hbasis) {
                    if !c.is_zero() {
                        poly = poly.add(&hb.scale(c));
                    }
                }
                eigen.push((degree.clone(), poly.monic(&ord)));
            }
        }
        eigen.sort_by(|a, b| a.0.cmp(&b.0));
        // drop redundancy: keep eigenvectors outside the span of products
        // of smaller-degree chosen generators plus earlier choices
        let mut span = Echelon::new();
        for p in smaller_degree_products(&chosen, d, ring) {
            span.insert(&p, vec![]);
        }
        for (degree, poly) in eigen {
            if span.insert(&poly, vec![]) {
                chosen.push(poly.monic(&ord));
                chosen_degrees.push(degree);
            }
        }
    }
    debug_assert_eq!(chosen.len(), gens.len(), "homogenization preserves count");
    Ok(GradedGeneratorSet {
        ring: ring.clone(),
        generators: chosen,
        degrees: chosen_degrees,
        abelianization: ab,
    })
}

fn mat_mul(a: &[Vec<CycNum>], b: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = CycNum::zero();
                    for k in 0..n {
                        acc = acc.add(&a[i][k].mul(&b[k][j]));
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Splits the subspace spanned by `space` (rows of coordinates) into
/// eigenspaces of the finite-order matrix `mat`, trying all roots of unity
/// of the matrix order. Eigenvalues are returned in a deterministic order.
fn split_eigenspaces(
    mat: &[Vec<CycNum>],
    space: &[Vec<CycNum>],
    field_order: u32,
) -> Vec<(CycNum, Vec<Vec<CycNum>>)> {
    let s = mat.len();
    // the matrix order divides the group exponent, which divides field_order
    let mut out = Vec::new();
    let mut found = 0;
    for k in 0..field_order {
        let zeta = CycNum::root_of_unity(field_order, k as i64);
        // solve (M - zeta I) x = 0 within the subspace: x = sum c_i b_i
        let dim = space.len();
        // rows of the constraint system: s equations in dim unknowns
        let mut sys: Vec<Vec<CycNum>> = vec![vec![CycNum::zero(); dim]; s];
        for (ci, b) in space.iter().enumerate() {
            // (M - zeta) b
            for r in 0..s {
                let mut acc = CycNum::zero();
                for c in 0..s {
                    acc = acc.add(&mat[r][c].mul(&b[c]));
                }
                acc = acc.sub(&zeta.mul(&b[r]));
                sys[r][ci] = acc;
            }
        }
        let kernel = kernel_over_field(&sys);
        if kernel.is_empty() {
            continue;
        }
        // map kernel coordinates back into ambient coordinates
        let mut vectors = Vec::new();
        for coeffs in kernel {
            let mut v = vec![CycNum::zero(); s];
            for (c, b) in coeffs.iter().zip(space) {
                if !c.is_zero() {
                    for i in 0..s {
                        v[i] = v[i].add(&c.mul(&b[i]));
                    }
                }
            }
            vectors.push(v);
        }
        found += vectors.len();
        out.push((zeta, vectors));
        if found == space.len() {
            break;
        }
    }
    debug_assert_eq!(
        found,
        space.len(),
        "finite-order action is diagonalizable over the cyclotomic field"
    );
    out
}

/// Kernel basis of a rectangular system over the cyclotomic field, in
/// reduced echelon parametrization (deterministic).
fn kernel_over_field(sys: &[Vec<CycNum>]) -> Vec<Vec<CycNum>> {
    if sys.is_empty() {
        return vec![];
    }
    let rows = sys.len();
    let cols = sys[0].len();
    let mut m: Vec<Vec<CycNum>> = sys.to_vec();
    let mut pivot_cols = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for cc in c..cols {
            m[r][cc] = m[r][cc].mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for cc in c..cols {
                    let sub = f.mul(&m[r][cc]);
                    m[i][cc] = m[i][cc].sub(&sub);
                }
            }
        }
        pivot_cols.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    let mut kernel = Vec::new();
    for free in 0..cols {
        if pivot_cols.contains(&free) {
            continue;
        }
        let mut v = vec![CycNum::zero(); cols];
        v[free] = CycNum::one();
        for (ri, &pc) in pivot_cols.iter().enumerate() {
            v[pc] = m[ri][free].neg();
        }
        kernel.push(v);
    }
    kernel
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::groups::MatrixGroup;

    fn b() -> Budget {
        Budget::default()
    }

    fn minus_identity_group() -> MatrixGroup {
        let m = CycMatrix::identity(2).scale(&CycNum::from_int(-1));
        MatrixGroup::closure(&[m], &b()).unwrap()
    }

    #[test]
    fn reynolds_on_sign_action() {
        let h = minus_identity_group();
        let ring = RingCtx::new(2, h.field_order);
        let s1 = MultiPolynomial::var(ring.clone(), 0);
        let s2 = MultiPolynomial::var(ring.clone(), 1);
        assert!(reynolds(&s1, &h).is_zero());
        let s1s2 = s1.mul(&s2);
        assert_eq!(reynolds(&s1s2, &h), s1s2);
        let s1sq = s1.mul(&s1);
        assert_eq!(reynolds(&s1sq, &h), s1sq);
        // projection property: reynolds of reynolds equals reynolds
        let f = s1.add(&s1s2);
        let r = reynolds(&f, &h);
        assert_eq!(reynolds(&r, &h), r);
        for e in h.elements() {
            assert_eq!(apply_matrix(&r, e), r);
        }
    }

    #[test]
    fn invariant_basis_of_sign_action() {
        let h = minus_identity_group();
        let ring = RingCtx::new(2, h.field_order);
        let b2 = invariant_space_basis(&h, &ring, 2);
        assert_eq!(b2.len(), 3);
        let b1 = invariant_space_basis(&h, &ring, 1);
        assert!(b1.is_empty());
        let gens = minimal_generators(&h, &ring);
        assert_eq!(gens.len(), 3);
        assert!(gens.iter().all(|g| g.total_degree() == 2));
    }

    #[test]
    fn trivial_group_generators_are_variables() {
        let g = MatrixGroup::closure(&[CycMatrix::identity(2)], &b()).unwrap();
        let ring = RingCtx::new(2, 1);
        let gens = minimal_generators(&g, &ring);
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0], MultiPolynomial::var(ring.clone(), 0));
        assert_eq!(gens[1], MultiPolynomial::var(ring, 1));
    }

    #[test]
    fn cyclic_three_diagonal_generators() {
        // <diag(zeta_3, zeta_3^2)>: invariants S1*S2, S1^3, S2^3
        let z = CycNum::root_of_unity(3, 1);
        let z2 = CycNum::root_of_unity(3, 2);
        let m = CycMatrix::from_rows(vec![
            vec![z, CycNum::zero()],
            vec![CycNum::zero(), z2],
        ]);
        let g = MatrixGroup::closure(&[m], &b()).unwrap();
        let ring = RingCtx::new(2, g.field_order);
        let gens = minimal_generators(&g, &ring);
        let degs: Vec<u64> = gens.iter().map(|g| g.total_degree()).collect();
        assert_eq!(degs, vec![2, 3, 3]);
        assert_eq!(gens.len(), 3);
    }

    #[test]
    fn quaternion_eigen_generators() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        let derived = g.derived_subgroup(&b()).unwrap();
        let ring = RingCtx::new(2, g.field_order);
        let gens = minimal_generators(&derived, &ring);
        assert_eq!(gens.len(), 3);
        let graded = gprime_homogenize(&gens, &g, &ring, &b()).unwrap();
        assert_eq!(graded.generators.len(), 3);
        assert_eq!(
            graded.abelianization.spec.torsion_moduli,
            vec![Int::from(2), Int::from(2)]
        );
        // the degree tuples are the three distinct nonzero classes
        let mut ds = graded.degrees.clone();
        ds.sort();
        ds.dedup();
        assert_eq!(ds.len(), 3);
        assert!(ds.iter().all(|d| !d.iter().all(|x| x == &Int::from(0))));
        // exact eigen identity: g∘m = chi(m) * g for each group generator
        for (gi, poly) in graded.generators.iter().enumerate() {
            for m in &g.generators {
                let img = apply_matrix(poly, m);
                // the image must be (scalar) * poly
                let (lm, lc) = img.leading_term(&MonomialOrder::DegRevLex).unwrap();
                let (plm, plc) = poly.leading_term(&MonomialOrder::DegRevLex).unwrap();
                assert_eq!(lm, plm, "generator {} not an eigenvector", gi);
                let chi = lc.div(plc).unwrap();
                assert_eq!(img, poly.scale(&chi));
            }
        }
    }

    #[test]
    fn dimension_audit_against_reynolds_rank() {
        // dim of degree-d invariants equals the rank of the Reynolds image
        let g = fixtures::quaternion_2d(&b()).unwrap();
        let derived = g.derived_subgroup(&b()).unwrap();
        let ring = RingCtx::new(2, g.field_order);
        for d in 1..=4u32 {
            let basis = invariant_space_basis(&derived, &ring, d);
            // oracle: rank of all Reynolds images, independently echelonized
            let mut ech = Echelon::new();
            let mut rank = 0;
            for m in monomials_of_degree(2, d) {
                let r = reynolds(
                    &MultiPolynomial::monomial(ring.clone(), m, CycNum::one()),
                    &derived,
                );
                if !r.is_zero() && ech.insert(&r, vec![]) {
                    rank += 1;
                }
            }
            assert_eq!(basis.len(), rank, "degree {}", d);
        }
    }
}
