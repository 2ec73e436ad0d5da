//! Rational polyhedral cones and fans: double-description conversion
//! between V- and H-descriptions, face structure, fan intersection,
//! regularity tests, stellar subdivision and toric resolution of a fan.

use crate::lattice::{kernel_basis, primitive_oriented, smith_normal_form, IntMatrix};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use thiserror::Error;

type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConeError {
    #[error("vector lies outside the fan support")]
    OutsideSupport,
    #[error("fan is invalid: cones {0} and {1} do not meet in a common face")]
    NotAFan(usize, usize),
    #[error("fan resolution did not terminate within the iteration cap")]
    ResolutionStalled,
}

fn dot(a: &[Int], b: &[Int]) -> Int {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn is_zero_vec(v: &[Int]) -> bool {
    v.iter().all(|x| x.is_zero())
}

/// Double description: rays and lineality of `{x : A x >= 0, E x = 0}`.
///
/// Returns primitive, deduplicated extreme rays (modulo lineality) and a
/// basis of the lineality space.
pub fn dd_rays(ineqs: &[Vec<Int>], eqs: &[Vec<Int>], dim: usize) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    // start with the whole space
    let mut lineality: Vec<Vec<Int>> = (0..dim)
        .map(|i| {
            let mut v = vec![Int::zero(); dim];
            v[i] = Int::one();
            v
        })
        .collect();
    let mut rays: Vec<Vec<Int>> = Vec::new();
    // tight sets of processed inequalities, parallel to `rays`
    let mut tight: Vec<BTreeSet<usize>> = Vec::new();
    let mut processed = 0usize;

    let mut constraints: Vec<(Vec<Int>, bool)> = Vec::new(); // (normal, is_equality)
    for e in eqs {
        constraints.push((e.clone(), true));
    }
    for a in ineqs {
        constraints.push((a.clone(), false));
    }

    for (a, is_eq) in constraints {
        if is_zero_vec(&a) {
            if !is_eq {
                for t in tight.iter_mut() {
                    t.insert(processed);
                }
                processed += 1;
            }
            continue;
        }
        // try to absorb the constraint into the lineality space
        let pivot = lineality.iter().position(|l| !dot(&a, l).is_zero());
        if let Some(pi) = pivot {
            let l0 = lineality.remove(pi);
            let s = dot(&a, &l0);
            let project = |v: &[Int], sv: &Int| -> Vec<Int> {
                // |s| * v - sign(s) * sv * l0, keeps cone membership
                let (scale, corr) = if s.is_negative() {
                    (-s.clone(), -sv.clone())
                } else {
                    (s.clone(), sv.clone())
                };
                v.iter()
                    .zip(&l0)
                    .map(|(x, l)| &scale * x - &corr * l)
                    .collect()
            };
            for l in lineality.iter_mut() {
                let sv = dot(&a, l);
                if !sv.is_zero() {
                    let p = project(l, &sv);
                    *l = primitive_oriented(&p).unwrap();
                }
            }
            let mut kept: Vec<Vec<Int>> = Vec::new();
            let mut kept_tight: Vec<BTreeSet<usize>> = Vec::new();
            for (r, t) in rays.iter().zip(&tight) {
                let sv = dot(&a, r);
                let p = if sv.is_zero() {
                    r.clone()
                } else {
                    let p = project(r, &sv);
                    if is_zero_vec(&p) {
                        continue;
                    }
                    primitive_oriented(&p).unwrap()
                };
                if !kept.contains(&p) {
                    let mut t = t.clone();
                    if !is_eq {
                        // every projected ray lies on the new hyperplane
                        t.insert(processed);
                    }
                    kept.push(p);
                    kept_tight.push(t);
                }
            }
            rays = kept;
            tight = kept_tight;
            if !is_eq {
                // the direction with a > 0 becomes a ray
                let l0 = if s.is_negative() {
                    l0.iter().map(|x| -x.clone()).collect()
                } else {
                    l0
                };
                let l0 = primitive_oriented(&l0).unwrap();
                let mut t = BTreeSet::new();
                for k in 0..processed {
                    t.insert(k); // the old lineality was tight everywhere
                }
                t.remove(&processed);
                if !rays.contains(&l0) {
                    rays.push(l0);
                    tight.push(t);
                }
                processed += 1;
            }
            continue;
        }
        // lineality is inside the hyperplane; split the rays
        let vals: Vec<Int> = rays.iter().map(|r| dot(&a, r)).collect();
        let mut new_rays: Vec<Vec<Int>> = Vec::new();
        let mut new_tight: Vec<BTreeSet<usize>> = Vec::new();
        let this_idx = processed;
        for (i, r) in rays.iter().enumerate() {
            let keep = if is_eq {
                vals[i].is_zero()
            } else {
                !vals[i].is_negative()
            };
            if keep {
                let mut t = tight[i].clone();
                if !is_eq && vals[i].is_zero() {
                    t.insert(this_idx);
                }
                new_rays.push(r.clone());
                new_tight.push(t);
            }
        }
        // adjacent positive/negative combinations land on the hyperplane
        for i in 0..rays.len() {
            if !vals[i].is_positive() {
                continue;
            }
            for j in 0..rays.len() {
                if !vals[j].is_negative() {
                    continue;
                }
                // combinatorial adjacency test on earlier tight sets
                let common: BTreeSet<usize> =
                    tight[i].intersection(&tight[j]).cloned().collect();
                let adjacent = (0..rays.len())
                    .all(|k| k == i || k == j || !common.is_subset(&tight[k]));
                if !adjacent {
                    continue;
                }
                let w: Vec<Int> = rays[j]
                    .iter()
                    .zip(&rays[i])
                    .map(|(rj, ri)| &vals[i] * rj - &vals[j] * ri)
                    .collect();
                if is_zero_vec(&w) {
                    continue;
                }
                let w = primitive_oriented(&w).unwrap();
                if new_rays.contains(&w) {
                    continue;
                }
                let mut t = common;
                if !is_eq {
                    t.insert(this_idx);
                }
                new_rays.push(w);
                new_tight.push(t);
            }
        }
        rays = new_rays;
        tight = new_tight;
        if !is_eq {
            processed += 1;
        }
    }
    rays.sort();
    lineality.sort();
    (rays, lineality)
}

/// Minimal H-description (facet normals, span equations) of the cone
/// generated by `gens` plus the span of `lin`: the rays and lineality of
/// the dual cone.
pub fn facets_of_generated_cone(
    gens: &[Vec<Int>],
    lin: &[Vec<Int>],
) -> (Vec<Vec<Int>>, Vec<Vec<Int>>) {
    let dim = gens
        .first()
        .map(|g| g.len())
        .or_else(|| lin.first().map(|l| l.len()))
        .expect("empty cone description");
    dd_rays(gens, lin, dim)
}

/// Rational polyhedral cone with both descriptions kept canonical.
#[derive(Clone, Debug)]
pub struct Cone {
    pub ambient: usize,
    rays: Vec<Vec<Int>>,
    lineality: Vec<Vec<Int>>,
    ineqs: Vec<Vec<Int>>,
    eqs: Vec<Vec<Int>>,
}

impl Cone {
    pub fn from_generators(ambient: usize, gens: &[Vec<Int>], lin: &[Vec<Int>]) -> Cone {
        let (ineqs, eqs) = if gens.is_empty() && lin.is_empty() {
            (Vec::new(), standard_basis(ambient))
        } else {
            facets_of_generated_cone(gens, lin)
        };
        let (rays, lineality) = dd_rays(&ineqs, &eqs, ambient);
        Cone {
            ambient,
            rays,
            lineality,
            ineqs,
            eqs,
        }
    }

    pub fn from_inequalities(ambient: usize, ineqs: &[Vec<Int>], eqs: &[Vec<Int>]) -> Cone {
        let (rays, lineality) = dd_rays(ineqs, eqs, ambient);
        // canonicalize the H-description through the double dual
        let (ineqs, eqs) = if rays.is_empty() && lineality.is_empty() {
            (Vec::new(), standard_basis(ambient))
        } else {
            facets_of_generated_cone(&rays, &lineality)
        };
        Cone {
            ambient,
            rays,
            lineality,
            ineqs,
            eqs,
        }
    }

    pub fn origin(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &[], &[])
    }

    pub fn orthant(ambient: usize) -> Cone {
        Cone::from_generators(ambient, &standard_basis(ambient), &[])
    }

    /// Image cone under the linear map given by `m`.
    pub fn linear_image(&self, m: &IntMatrix) -> Cone {
        let gens: Vec<Vec<Int>> = self
            .rays
            .iter()
            .map(|r| m.mul_vec(r))
            .filter(|g| !is_zero_vec(g))
            .collect();
        let lin: Vec<Vec<Int>> = self
            .lineality
            .iter()
            .map(|l| m.mul_vec(l))
            .filter(|l| !is_zero_vec(l))
            .collect();
        Cone::from_generators(m.rows, &gens, &lin)
    }

    pub fn rays(&self) -> &[Vec<Int>] {
        &self.rays
    }

    pub fn lineality(&self) -> &[Vec<Int>] {
        &self.lineality
    }

    pub fn facet_normals(&self) -> &[Vec<Int>] {
        &self.ineqs
    }

    pub fn span_equations(&self) -> &[Vec<Int>] {
        &self.eqs
    }

    pub fn dim(&self) -> usize {
        if self.rays.is_empty() && self.lineality.is_empty() {
            return 0;
        }
        let mut rows = self.rays.clone();
        rows.extend(self.lineality.clone());
        IntMatrix::from_rows(rows).rank()
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.is_empty()
    }

    pub fn contains(&self, x: &[Int]) -> bool {
        self.ineqs.iter().all(|a| !dot(a, x).is_negative())
            && self.eqs.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_in_relative_interior(&self, x: &[Int]) -> bool {
        self.ineqs.iter().all(|a| dot(a, x).is_positive())
            && self.eqs.iter().all(|e| dot(e, x).is_zero())
    }

    pub fn contains_cone(&self, other: &Cone) -> bool {
        other.rays.iter().all(|r| self.contains(r))
            && other.lineality.iter().all(|l| {
                self.contains(l)
                    && self.contains(&l.iter().map(|x| -x.clone()).collect::<Vec<_>>())
            })
    }

    pub fn eq_cone(&self, other: &Cone) -> bool {
        self.contains_cone(other) && other.contains_cone(self)
    }

    /// Dual cone `{y : y.x >= 0 for all x in self}`.
    pub fn dualize(&self) -> Cone {
        // generators of the dual are the H-data of the primal
        let mut lin: Vec<Vec<Int>> = Vec::new();
        for e in &self.eqs {
            lin.push(e.clone());
        }
        Cone::from_generators(self.ambient, &self.ineqs, &lin)
    }

    pub fn intersect(&self, other: &Cone) -> Cone {
        assert_eq!(self.ambient, other.ambient);
        let mut ineqs = self.ineqs.clone();
        ineqs.extend(other.ineqs.clone());
        let mut eqs = self.eqs.clone();
        eqs.extend(other.eqs.clone());
        Cone::from_inequalities(self.ambient, &ineqs, &eqs)
    }

    /// A lattice point in the relative interior: the sum of the extreme
    /// rays, plus a lineality representative when there are no rays.
    pub fn relative_interior_point(&self) -> Vec<Int> {
        let mut p = vec![Int::zero(); self.ambient];
        for r in &self.rays {
            for (i, x) in r.iter().enumerate() {
                p[i] += x;
            }
        }
        if self.rays.is_empty() {
            for l in &self.lineality {
                for (i, x) in l.iter().enumerate() {
                    p[i] += x;
                }
            }
        }
        p
    }

    /// Rays of `self` lying on the facet with normal `a`.
    fn facet_rays(&self, a: &[Int]) -> Vec<Vec<Int>> {
        self.rays
            .iter()
            .filter(|r| dot(a, r).is_zero())
            .cloned()
            .collect()
    }

    /// Is `self` a face of `other`?
    pub fn is_face_of(&self, other: &Cone) -> bool {
        if !other.contains_cone(self) {
            return false;
        }
        let mut eqs = other.eqs.clone();
        for a in &other.ineqs {
            let tight = self.rays.iter().all(|r| dot(a, r).is_zero())
                && self.lineality.iter().all(|l| dot(a, l).is_zero());
            if tight {
                eqs.push(a.clone());
            }
        }
        let face = Cone::from_inequalities(other.ambient, &other.ineqs, &eqs);
        face.eq_cone(self)
    }

    /// Multiplicity of a pointed simplicial cone: index of the ray lattice
    /// inside the saturated lattice of the span (1 means smooth chart).
    pub fn multiplicity(&self) -> Option<Int> {
        if !self.is_pointed() || !self.is_simplicial() {
            return None;
        }
        if self.rays.is_empty() {
            return Some(Int::one());
        }
        let m = IntMatrix::from_rows(self.rays.clone());
        let (d, _, _) = smith_normal_form(&m);
        let k = self.rays.len();
        let mut mult = Int::one();
        for i in 0..k {
            mult *= d[(i, i)].clone();
        }
        Some(mult.abs())
    }

    pub fn is_simplicial(&self) -> bool {
        if self.rays.is_empty() {
            return true;
        }
        let mut rows = self.rays.clone();
        rows.extend(self.lineality.clone());
        let rk = IntMatrix::from_rows(rows).rank();
        let lin_rk = if self.lineality.is_empty() {
            0
        } else {
            IntMatrix::from_rows(self.lineality.clone()).rank()
        };
        rk - lin_rk == self.rays.len()
    }

    /// Regular (smooth chart): simplicial and the rays extend to a lattice
    /// basis of span ∩ Z^n. Lineality is absorbed through the combined
    /// lattice, which quotients it out.
    pub fn is_regular(&self) -> bool {
        if !self.is_simplicial() {
            return false;
        }
        if self.rays.is_empty() && self.lineality.is_empty() {
            return true;
        }
        let mut rows = self.rays.clone();
        // saturate the lineality lattice before joining
        if !self.lineality.is_empty() {
            let lmat = IntMatrix::from_rows(self.lineality.clone());
            let k = kernel_basis(&lmat);
            let sat = if k.rows == 0 {
                IntMatrix::identity(self.ambient)
            } else {
                kernel_basis(&k)
            };
            for i in 0..sat.rows {
                rows.push(sat.row(i));
            }
        }
        let m = IntMatrix::from_rows(rows);
        let (d, _, _) = smith_normal_form(&m);
        let n = m.rank();
        (0..n).all(|i| d[(i, i)].abs().is_one())
    }
}

fn standard_basis(n: usize) -> Vec<Vec<Int>> {
    (0..n)
        .map(|i| {
            let mut v = vec![Int::zero(); n];
            v[i] = Int::one();
            v
        })
        .collect()
}

/// Fan: a list of maximal cones over a shared ambient space.
#[derive(Clone, Debug)]
pub struct Fan {
    pub ambient: usize,
    cones: Vec<Cone>,
}

impl Fan {
    /// Builds a fan from candidate maximal cones: drops cones contained in
    /// others and (optionally) verifies the pairwise face condition.
    pub fn from_cones(ambient: usize, cones: Vec<Cone>, validate: bool) -> Result<Fan, ConeError> {
        let mut maximal: Vec<Cone> = Vec::new();
        for c in cones {
            if maximal.iter().any(|m| m.contains_cone(&c)) {
                continue;
            }
            maximal.retain(|m| !c.contains_cone(m));
            maximal.push(c);
        }
        let fan = Fan {
            ambient,
            cones: maximal,
        };
        if validate {
            fan.validate()?;
        }
        Ok(fan)
    }

    pub fn validate(&self) -> Result<(), ConeError> {
        for i in 0..self.cones.len() {
            for j in i + 1..self.cones.len() {
                let meet = self.cones[i].intersect(&self.cones[j]);
                if !meet.is_face_of(&self.cones[i]) || !meet.is_face_of(&self.cones[j]) {
                    return Err(ConeError::NotAFan(i, j));
                }
            }
        }
        Ok(())
    }

    /// The face fan of a single cone.
    pub fn face_fan(cone: Cone) -> Fan {
        Fan {
            ambient: cone.ambient,
            cones: vec![cone],
        }
    }

    pub fn maximal_cones(&self) -> &[Cone] {
        &self.cones
    }

    pub fn is_empty(&self) -> bool {
        self.cones.is_empty()
    }

    /// Deduplicated primitive rays of all maximal cones, sorted.
    pub fn rays(&self) -> Vec<Vec<Int>> {
        let mut rays: Vec<Vec<Int>> = Vec::new();
        for c in &self.cones {
            for r in c.rays() {
                if !rays.contains(r) {
                    rays.push(r.clone());
                }
            }
        }
        rays.sort();
        rays
    }

    pub fn supports(&self, x: &[Int]) -> bool {
        self.cones.iter().any(|c| c.contains(x))
    }

    pub fn is_regular(&self) -> bool {
        self.cones.iter().all(|c| c.is_regular())
    }

    /// Fan of pairwise intersections, non-maximal cones dropped.
    pub fn intersect(&self, other: &Fan) -> Fan {
        assert_eq!(self.ambient, other.ambient);
        let mut pieces = Vec::new();
        for a in &self.cones {
            for b in &other.cones {
                pieces.push(a.intersect(b));
            }
        }
        Fan::from_cones(self.ambient, pieces, false).expect("unchecked")
    }

    /// Stellar subdivision at a primitive vector inside the support.
    /// Subdividing at an existing ray is a no-op.
    pub fn stellar_subdivide(&self, v: &[Int]) -> Result<Fan, ConeError> {
        if !self.supports(v) {
            return Err(ConeError::OutsideSupport);
        }
        if self.cones.iter().any(|c| c.rays().iter().any(|r| r == v)) {
            return Ok(self.clone());
        }
        let mut new_cones = Vec::new();
        for c in &self.cones {
            if !c.contains(v) {
                new_cones.push(c.clone());
                continue;
            }
            for a in c.facet_normals() {
                if dot(a, v).is_positive() {
                    let mut gens = c.facet_rays(a);
                    gens.push(v.to_vec());
                    new_cones.push(Cone::from_generators(self.ambient, &gens, c.lineality()));
                }
            }
        }
        Ok(Fan {
            ambient: self.ambient,
            cones: new_cones,
        })
    }

    /// Lexicographic pulling triangulation on the fan's sorted ray list;
    /// introduces no new rays.
    fn triangulate(&self) -> Fan {
        let rays = self.rays();
        let index_of = |r: &Vec<Int>| rays.iter().position(|x| x == r).unwrap();
        fn pull(cone: &Cone, ambient: usize, index_of: &dyn Fn(&Vec<Int>) -> usize) -> Vec<Cone> {
            if cone.is_simplicial() {
                return vec![cone.clone()];
            }
            let mut cone_rays = cone.rays().to_vec();
            cone_rays.sort_by_key(|r| index_of(r));
            let r0 = cone_rays[0].clone();
            let mut out = Vec::new();
            for a in cone.facet_normals() {
                if dot(a, &r0).is_positive() {
                    let facet =
                        Cone::from_generators(ambient, &cone.facet_rays(a), cone.lineality());
                    for piece in pull(&facet, ambient, index_of) {
                        let mut gens = piece.rays().to_vec();
                        gens.push(r0.clone());
                        out.push(Cone::from_generators(ambient, &gens, cone.lineality()));
                    }
                }
            }
            out
        }
        let mut cones = Vec::new();
        for c in &self.cones {
            cones.extend(pull(c, self.ambient, &index_of));
        }
        Fan {
            ambient: self.ambient,
            cones,
        }
    }

    /// Toric resolution: triangulates, then repeatedly subdivides a
    /// non-regular cone of maximal multiplicity at the fundamental-domain
    /// lattice point of minimal coordinate sum (lexicographic ties).
    /// Returns the regular fan and the inserted rays in insertion order.
    pub fn resolve(&self) -> Result<(Fan, Vec<Vec<Int>>), ConeError> {
        let mut fan = self.triangulate();
        let mut inserted = Vec::new();
        for _round in 0..10_000 {
            // the worst cone: maximal multiplicity, deterministic tie-break
            let mut worst: Option<(Int, Vec<Int>, usize)> = None;
            for (i, c) in fan.cones.iter().enumerate() {
                let m = c.multiplicity().expect("triangulated fan is simplicial");
                if c.is_regular() {
                    continue;
                }
                let key: Vec<Int> = {
                    let mut rs = c.rays().to_vec();
                    rs.sort();
                    rs.into_iter().flatten().collect()
                };
                let better = match &worst {
                    None => true,
                    Some((wm, wk, _)) => m > *wm || (m == *wm && key < *wk),
                };
                if better {
                    worst = Some((m, key, i));
                }
            }
            let Some((_, _, idx)) = worst else {
                return Ok((fan, inserted));
            };
            let v = subdivision_point(&fan.cones[idx]);
            fan = fan.stellar_subdivide(&v)?;
            inserted.push(v);
        }
        Err(ConeError::ResolutionStalled)
    }
}

/// Lattice points of the half-open fundamental parallelepiped of a pointed
/// simplicial cone, excluding the origin; picks the one with minimal
/// coordinate sum (lexicographic tie-break), in primitive form.
fn subdivision_point(cone: &Cone) -> Vec<Int> {
    let rays = cone.rays();
    let k = rays.len();
    let ambient = cone.ambient;
    // saturated lattice basis of the span
    let span_rows = IntMatrix::from_rows(rays.to_vec());
    let ker = kernel_basis(&span_rows);
    let basis = if ker.rows == 0 {
        IntMatrix::identity(ambient)
    } else {
        kernel_basis(&ker)
    };
    // coordinates of the rays in that basis: solve basis^T a_j = ray_j
    let bt = basis.transpose();
    let mut a = IntMatrix::zero(k, k);
    for (j, r) in rays.iter().enumerate() {
        let col = solve_exact(&bt, r);
        for i in 0..k {
            a[(i, j)] = col[i].clone();
        }
    }
    let (d, u, _v) = smith_normal_form(&a);
    let uinv = unimodular_inverse(&u);
    let moduli: Vec<Int> = (0..k).map(|i| d[(i, i)].abs()).collect();
    let mut best: Option<(Int, Vec<Int>)> = None; // (sum, ambient point)
    let mut t = vec![Int::zero(); k];
    loop {
        let x0 = uinv.mul_vec(&t);
        // reduce into the parallelepiped: x = x0 - A * floor(A^{-1} x0)
        let lam = solve_rational(&a, &x0);
        let fl: Vec<Int> = lam.iter().map(|q| q.floor().to_integer()).collect();
        let shift = a.mul_vec(&fl);
        let x: Vec<Int> = x0.iter().zip(&shift).map(|(p, s)| p - s).collect();
        if !x.iter().all(|c| c.is_zero()) {
            // map back to ambient coordinates
            let mut pt = vec![Int::zero(); ambient];
            for (i, xi) in x.iter().enumerate() {
                for (j, b) in basis.row(i).iter().enumerate() {
                    pt[j] += xi * b;
                }
            }
            let sum: Int = pt.iter().cloned().sum();
            let better = match &best {
                None => true,
                Some((bs, bp)) => sum < *bs || (sum == *bs && pt < *bp),
            };
            if better {
                best = Some((sum, pt));
            }
        }
        // increment the residue multi-index
        let mut i = 0;
        loop {
            if i == k {
                let (_, pt) = best.expect("non-regular cone has parallelepiped points");
                return primitive_oriented(&pt).unwrap();
            }
            t[i] += 1;
            if t[i] < moduli[i] {
                break;
            }
            t[i] = Int::zero();
            i += 1;
        }
    }
}

/// Exact solve for systems known to have an integral solution.
fn solve_exact(a: &IntMatrix, b: &[Int]) -> Vec<Int> {
    let sol = solve_rational(a, b);
    sol.iter()
        .map(|q| {
            assert!(q.denom().is_one(), "expected integral solution");
            q.to_integer()
        })
        .collect()
}

fn solve_rational(a: &IntMatrix, b: &[Int]) -> Vec<crate::arith::Rational> {
    use crate::arith::Rational;
    let rows = a.rows;
    let cols = a.cols;
    let mut m: Vec<Vec<Rational>> = (0..rows)
        .map(|r| {
            (0..cols)
                .map(|c| Rational::from_integer(a[(r, c)].clone()))
                .chain(std::iter::once(Rational::from_integer(b[r].clone())))
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].recip();
        for c in col..=cols {
            m[row][c] = &m[row][c] * &inv;
        }
        for r in 0..rows {
            if r != row && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in col..=cols {
                    let sub = &f * &m[row][c];
                    m[r][c] = &m[r][c] - &sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == rows {
            break;
        }
    }
    let mut x = vec![crate::arith::Rational::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = m[r][cols].clone();
    }
    x
}

/// Inverse of a unimodular matrix.
fn unimodular_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows;
    let mut inv = IntMatrix::zero(n, n);
    for j in 0..n {
        let mut e = vec![Int::zero(); n];
        e[j] = Int::one();
        let col = solve_exact(u, &e);
        for i in 0..n {
            inv[(i, j)] = col[i].clone();
        }
    }
    inv
}
