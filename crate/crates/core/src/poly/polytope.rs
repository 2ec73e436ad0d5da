//! Lattice polytopes: exact vertex sets and Minkowski indecomposability in
//! dimension at most two. Indecomposability of the Newton polytope is a
//! sound absolute-irreducibility certificate for polynomials without
//! monomial factors.

use crate::cones;
use crate::lattice::{kernel_basis, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolytopeError {
    #[error("polytope dimension {0} exceeds the supported bound 2")]
    Unsupported(usize),
    #[error("coordinates exceed the brute-force cap")]
    CoordinatesTooLarge,
}

/// A lattice polytope given by its exact vertex set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub vertices: Vec<Vec<Int>>,
}

impl LatticePolytope {
    /// Convex hull vertex set of a finite point set.
    pub fn from_points(mut points: Vec<Vec<Int>>) -> Self {
        points.sort();
        points.dedup();
        if points.len() <= 1 {
            return LatticePolytope { vertices: points };
        }
        let vertices = extreme_points(&points);
        LatticePolytope { vertices }
    }

    /// Dimension of the affine hull.
    pub fn dim(&self) -> usize {
        affine_dim(&self.vertices)
    }

    /// Minkowski sum.
    pub fn minkowski_sum(&self, other: &LatticePolytope) -> LatticePolytope {
        let mut pts = Vec::new();
        for a in &self.vertices {
            for b in &other.vertices {
                pts.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        LatticePolytope::from_points(pts)
    }
}

fn affine_dim(points: &[Vec<Int>]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let rows: Vec<Vec<Int>> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    IntMatrix::from_rows(rows).rank()
}

/// Extreme points of a point set, via the lifted cone over `(1, p)`.
fn extreme_points(points: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let dim = points[0].len();
    let lifted: Vec<Vec<Int>> = points
        .iter()
        .map(|p| {
            let mut v = Vec::with_capacity(dim + 1);
            v.push(Int::from(1));
            v.extend(p.iter().cloned());
            v
        })
        .collect();
    let (ineqs, eqs) = cones::facets_of_generated_cone(&lifted, &[]);
    let span_dim = IntMatrix::from_rows(lifted.clone()).rank();
    let mut out = Vec::new();
    for (p, g) in points.iter().zip(&lifted) {
        let mut tight: Vec<Vec<Int>> = eqs.clone();
        for a in &ineqs {
            let s: Int = a.iter().zip(g).map(|(x, y)| x * y).sum();
            if s.is_zero() {
                tight.push(a.clone());
            }
        }
        let tight_rank = if tight.is_empty() {
            0
        } else {
            IntMatrix::from_rows(tight).rank()
        };
        // extreme ray of the lifted cone: tight constraints cut it to a line
        if tight_rank + 1 >= span_dim && span_dim >= 1 {
            out.push(p.clone());
        }
    }
    if out.is_empty() {
        // dim-0 cone can only happen for a single point, handled earlier
        out.push(points[0].clone());
    }
    out
}

fn content(v: &[Int]) -> Int {
    v.iter().fold(Int::zero(), |acc, x| acc.gcd(x))
}

/// Coordinates of `points` in the saturated lattice of their affine hull,
/// translated so the first point is the origin.
fn lattice_coordinates(points: &[Vec<Int>]) -> Option<Vec<Vec<Int>>> {
    let base = &points[0];
    let diffs: Vec<Vec<Int>> = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let dmat = IntMatrix::from_rows(diffs.clone());
    // saturated lattice of the row space: kernel of the kernel
    let k = kernel_basis(&dmat);
    let basis = if k.rows == 0 {
        // full row space: standard basis
        IntMatrix::identity(dmat.cols)
    } else {
        kernel_basis(&k)
    };
    // solve basis^T * c = diff for each point, over Q, expecting integers
    let bt = basis.transpose();
    let mut out = Vec::new();
    for d in &diffs {
        out.push(solve_integer(&bt, d)?);
    }
    Some(out)
}

/// Solves `A x = b` exactly for the unique rational solution, requiring an
/// integral result. `A` has full column rank.
fn solve_integer(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
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
    // consistency
    for r in row..rows {
        if !m[r][cols].is_zero() {
            return None;
        }
    }
    let mut x = vec![Int::zero(); cols];
    for (r, &col) in pivots.iter().enumerate() {
        let v = &m[r][cols];
        if !v.denom().is_one() {
            return None;
        }
        x[col] = v.to_integer();
    }
    Some(x)
}

/// 2D convex hull, counterclockwise, collinear points dropped.
fn hull_2d(points: &[Vec<Int>]) -> Vec<Vec<Int>> {
    let mut pts = points.to_vec();
    pts.sort();
    pts.dedup();
    let cross = |o: &Vec<Int>, a: &Vec<Int>, b: &Vec<Int>| -> Int {
        (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
    };
    let mut lower: Vec<Vec<Int>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2
            && cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Int::zero()
        {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Int>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2
            && cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Int::zero()
        {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Minkowski indecomposability of a polytope of dimension at most two,
/// by brute-force enumeration of integral edge splittings in the lattice
/// coordinates of the affine hull.
pub fn is_integrally_indecomposable(p: &LatticePolytope) -> Result<bool, PolytopeError> {
    let dim = p.dim();
    if dim > 2 {
        return Err(PolytopeError::Unsupported(dim));
    }
    if dim == 0 {
        // a point only decomposes into two points
        return Ok(true);
    }
    let coords = lattice_coordinates(&p.vertices).expect("affine lattice coordinates");
    let cap = Int::from(64);
    if coords
        .iter()
        .any(|c| c.iter().any(|x| x.abs() > cap))
    {
        return Err(PolytopeError::CoordinatesTooLarge);
    }
    if dim == 1 {
        // segment: indecomposable iff primitive
        let len = coords
            .iter()
            .map(|c| c[0].clone())
            .max()
            .unwrap()
            - coords.iter().map(|c| c[0].clone()).min().unwrap();
        return Ok(len == Int::from(1));
    }
    // dim == 2: counterclockwise edge vectors e_i = d_i * u_i; a proper
    // summand is a choice 0 <= c_i <= d_i with sum c_i u_i = 0, not all 0,
    // not all d_i.
    let hull = hull_2d(&coords.iter().map(|c| vec![c[0].clone(), c[1].clone()]).collect::<Vec<_>>());
    let n = hull.len();
    let mut dirs = Vec::new();
    let mut lens = Vec::new();
    for i in 0..n {
        let a = &hull[i];
        let b = &hull[(i + 1) % n];
        let e = vec![&b[0] - &a[0], &b[1] - &a[1]];
        let d = content(&e);
        dirs.push(vec![&e[0] / &d, &e[1] / &d]);
        lens.push(d);
    }
    let combos: Int = lens.iter().fold(Int::from(1), |acc, d| acc * (d + 1));
    if combos > Int::from(10_000_000) {
        return Err(PolytopeError::CoordinatesTooLarge);
    }
    let mut choice: Vec<Int> = vec![Int::zero(); n];
    fn search(
        i: usize,
        sum: (Int, Int),
        choice: &mut Vec<Int>,
        dirs: &[Vec<Int>],
        lens: &[Int],
    ) -> bool {
        if i == dirs.len() {
            let trivial = choice.iter().all(|c| c.is_zero())
                || choice.iter().zip(lens).all(|(c, d)| c == d);
            return sum.0.is_zero() && sum.1.is_zero() && !trivial;
        }
        let mut c = Int::zero();
        while c <= lens[i] {
            choice[i] = c.clone();
            let ns = (&sum.0 + &dirs[i][0] * &c, &sum.1 + &dirs[i][1] * &c);
            if search(i + 1, ns, choice, dirs, lens) {
                return true;
            }
            c += 1;
        }
        false
    }
    let decomposable = search(0, (Int::zero(), Int::zero()), &mut choice, &dirs, &lens);
    Ok(!decomposable)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn primitive_segment_is_indecomposable() {
        let p = LatticePolytope::from_points(vec![pt(&[0, 0, 1]), pt(&[1, 2, 0])]);
        assert_eq!(is_integrally_indecomposable(&p), Ok(true));
        let q = LatticePolytope::from_points(vec![pt(&[0, 0]), pt(&[2, 4])]);
        assert_eq!(is_integrally_indecomposable(&q), Ok(false));
    }

    #[test]
    fn doubled_triangle_decomposes() {
        let p = LatticePolytope::from_points(vec![pt(&[2, 0, 0]), pt(&[0, 2, 0]), pt(&[0, 0, 2])]);
        assert_eq!(is_integrally_indecomposable(&p), Ok(false));
    }

    #[test]
    fn trinomial_triangle_is_indecomposable() {
        // exponents of 4*T3^3*T7 - T2^2*T6 - 27*T4^2*T8 in 8 variables
        let mut a = vec![0i64; 8];
        a[2] = 3;
        a[6] = 1;
        let mut b = vec![0i64; 8];
        b[1] = 2;
        b[5] = 1;
        let mut c = vec![0i64; 8];
        c[3] = 2;
        c[7] = 1;
        let p = LatticePolytope::from_points(vec![pt(&a), pt(&b), pt(&c)]);
        assert_eq!(p.dim(), 2);
        assert_eq!(is_integrally_indecomposable(&p), Ok(true));
    }

    #[test]
    fn unsupported_dimension() {
        let p = LatticePolytope::from_points(vec![
            pt(&[0, 0, 0]),
            pt(&[1, 0, 0]),
            pt(&[0, 1, 0]),
            pt(&[0, 0, 1]),
        ]);
        assert!(matches!(
            is_integrally_indecomposable(&p),
            Err(PolytopeError::Unsupported(3))
        ));
    }

    #[test]
    fn minkowski_sum_of_newton_polytopes() {
        let a = LatticePolytope::from_points(vec![pt(&[0, 0]), pt(&[1, 0]), pt(&[0, 1])]);
        let b = a.minkowski_sum(&a);
        let mut verts = b.vertices.clone();
        verts.sort();
        assert_eq!(verts, vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0])]);
    }

    #[test]
    fn interior_points_are_dropped() {
        let p = LatticePolytope::from_points(vec![
            pt(&[0, 0]),
            pt(&[2, 0]),
            pt(&[0, 2]),
            pt(&[1, 1]),
            pt(&[1, 0]),
        ]);
        let mut verts = p.vertices.clone();
        verts.sort();
        assert_eq!(verts, vec![pt(&[0, 0]), pt(&[0, 2]), pt(&[2, 0])]);
    }
}
