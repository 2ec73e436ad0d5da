//! Tropical hypersurfaces and prevarieties in the inner (min) normal fan
//! convention: the support of `Trop(f)` is the set of weights whose
//! minimum over the Newton polytope is attained on a face of positive
//! dimension. Initial forms and ray membership use the same convention
//! throughout, so the toric modification pipeline and the membership
//! tests agree.

use crate::budget::Budget;
use crate::cones::{Cone, Fan};
use crate::groebner::{contains_monomial, initial_form_ideal, GbError, Ideal};
use crate::lattice::IntMatrix;
use crate::poly::{newton_polytope, MultiPolynomial};
use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TropicalError {
    #[error("projection matrix is singular")]
    SingularProjection,
    #[error(transparent)]
    Groebner(#[from] GbError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Hypersurface,
    Prevariety,
    Projected,
}

/// A fan with tropical provenance. For hypersurfaces the support is exactly
/// the codimension-one skeleton of the inner normal fan of the Newton
/// polytope; for ideals given by several generators it is the prevariety
/// cut out by the listed generators, a superset of the variety.
#[derive(Clone, Debug)]
pub struct TropicalFan {
    pub fan: Fan,
    pub provenance: Provenance,
}

/// Inner normal cones of positive-dimensional faces: for each vertex pair
/// `(v, u)` the cone `{w : w.v = w.u <= w.x for all vertices x}`; cones of
/// non-edges are swallowed by edge cones when the fan drops non-maximal
/// pieces.
pub fn tropical_hypersurface(f: &MultiPolynomial) -> TropicalFan {
    let s = f.ring.nvars;
    if f.is_zero() || f.num_terms() <= 1 {
        return TropicalFan {
            fan: Fan::from_cones(s, vec![], false).expect("empty fan"),
            provenance: Provenance::Hypersurface,
        };
    }
    let np = newton_polytope(f).expect("nonzero polynomial");
    let verts = &np.vertices;
    let mut cones = Vec::new();
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            let eq: Vec<Int> = verts[i]
                .iter()
                .zip(&verts[j])
                .map(|(a, b)| a - b)
                .collect();
            let ineqs: Vec<Vec<Int>> = verts
                .iter()
                .map(|x| x.iter().zip(&verts[i]).map(|(a, b)| a - b).collect())
                .collect();
            cones.push(Cone::from_inequalities(s, &ineqs, &[eq]));
        }
    }
    TropicalFan {
        fan: Fan::from_cones(s, cones, false).expect("unchecked"),
        provenance: Provenance::Hypersurface,
    }
}

/// Cone-by-cone common refinement of the hypersurface fans of the listed
/// generators; exactly the tropical variety for a principal ideal and a
/// prevariety (superset) otherwise.
pub fn tropical_prevariety(gens: &[MultiPolynomial]) -> TropicalFan {
    assert!(!gens.is_empty(), "empty generator list");
    let mut fans = gens.iter().map(tropical_hypersurface);
    let first = fans.next().unwrap();
    let mut fan = first.fan;
    for t in fans {
        fan = fan.intersect(&t.fan);
    }
    TropicalFan {
        fan,
        provenance: if gens.len() == 1 {
            Provenance::Hypersurface
        } else {
            Provenance::Prevariety
        },
    }
}

/// Membership of a weight vector in the tropical variety of an ideal:
/// true iff the initial-form ideal at `w` contains no monomial.
pub fn ray_in_tropical(ideal: &Ideal, w: &[Int], budget: &Budget) -> Result<bool, TropicalError> {
    let ini = initial_form_ideal(ideal, w, budget)?;
    Ok(!contains_monomial(&ini, budget)?)
}

/// Image fan under the linear map `p0` (columns are the images of the
/// standard basis); cone generators are mapped and re-canonicalized.
pub fn project_tropical(p0: &IntMatrix, t: &TropicalFan) -> Result<TropicalFan, TropicalError> {
    if p0.rows != p0.cols || p0.det().is_zero() {
        return Err(TropicalError::SingularProjection);
    }
    let cones: Vec<Cone> = t
        .fan
        .maximal_cones()
        .iter()
        .map(|c| c.linear_image(p0))
        .collect();
    Ok(TropicalFan {
        fan: Fan::from_cones(p0.rows, cones, false).expect("unchecked"),
        provenance: Provenance::Projected,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::CycNum;
    use crate::poly::{parse_poly, Monomial, RingCtx};

    fn b() -> Budget {
        Budget::default()
    }

    fn iv(x: &[i64]) -> Vec<Int> {
        x.iter().map(|&a| Int::from(a)).collect()
    }

    #[test]
    fn monomial_has_empty_tropicalization() {
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("5*T1^2*T3", &ring).unwrap();
        let t = tropical_hypersurface(&f);
        assert!(t.fan.is_empty());
    }

    #[test]
    fn binomial_gives_a_hyperplane() {
        let ring = RingCtx::new(2, 1);
        let f = parse_poly("T1 + T2", &ring).unwrap();
        let t = tropical_hypersurface(&f);
        assert_eq!(t.fan.maximal_cones().len(), 1);
        assert!(t.fan.supports(&iv(&[3, 3])));
        assert!(t.fan.supports(&iv(&[-1, -1])));
        assert!(!t.fan.supports(&iv(&[1, 0])));
    }

    #[test]
    fn quadric_trinomial_fan() {
        // inner normal fan of the doubled triangle: three cones
        // R(1,1,1) + R>=0 e_k
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("4*T1^2 - T2^2 + T3^2", &ring).unwrap();
        let t = tropical_hypersurface(&f);
        assert_eq!(t.fan.maximal_cones().len(), 3);
        for c in t.fan.maximal_cones() {
            assert_eq!(c.dim(), 2);
            assert_eq!(c.lineality().len(), 1);
        }
        // lineality line and one representative per cone
        assert!(t.fan.supports(&iv(&[1, 1, 1])));
        assert!(t.fan.supports(&iv(&[-2, -2, -2])));
        assert!(t.fan.supports(&iv(&[1, 0, 0])));
        assert!(t.fan.supports(&iv(&[0, 1, 0])));
        assert!(t.fan.supports(&iv(&[2, 2, 3])));
        // interior of a maximal normal cone is off the skeleton
        assert!(!t.fan.supports(&iv(&[0, 1, 2])));
    }

    #[test]
    fn membership_matches_initial_forms() {
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("4*T1^2 - T2^2 + T3^2", &ring).unwrap();
        let ideal = Ideal::new(ring, vec![f.clone()]);
        // every ray and a relative-interior point of every maximal cone
        let t = tropical_hypersurface(&f);
        for c in t.fan.maximal_cones() {
            let p = c.relative_interior_point();
            assert!(ray_in_tropical(&ideal, &p, &b()).unwrap());
            for r in c.rays() {
                assert!(ray_in_tropical(&ideal, r, &b()).unwrap());
            }
        }
        // points off the support fail
        assert!(!ray_in_tropical(&ideal, &iv(&[0, 1, 2]), &b()).unwrap());
        assert!(!ray_in_tropical(&ideal, &iv(&[5, 1, 3]), &b()).unwrap());
    }

    #[test]
    fn prevariety_of_two_hyperplanes() {
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("T1 - T2", &ring).unwrap();
        let g = parse_poly("T2 - T3", &ring).unwrap();
        let t = tropical_prevariety(&[f, g]);
        assert_eq!(t.provenance, Provenance::Prevariety);
        // the diagonal line w1 = w2 = w3
        assert!(t.fan.supports(&iv(&[2, 2, 2])));
        assert!(t.fan.supports(&iv(&[-1, -1, -1])));
        assert!(!t.fan.supports(&iv(&[1, 1, 0])));
        let dims: Vec<usize> = t.fan.maximal_cones().iter().map(|c| c.dim()).collect();
        assert!(dims.iter().all(|&d| d <= 1));
    }

    #[test]
    fn projection_by_gale_dual() {
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("4*T1^2 - T2^2 + T3^2", &ring).unwrap();
        let t = tropical_hypersurface(&f);
        let p0 = IntMatrix::from_i64_rows(&[vec![1, 1, 1], vec![0, 2, 0], vec![0, 0, 2]]);
        let proj = project_tropical(&p0, &t).unwrap();
        // P0 * (1,1,1) = (3,2,2) lies in the image
        assert!(proj.fan.supports(&iv(&[3, 2, 2])));
        // membership commutes with projection on sample points
        for w in [iv(&[1, 0, 0]), iv(&[1, 1, 1]), iv(&[0, 1, 1])] {
            let img = p0.mul_vec(&w);
            assert_eq!(t.fan.supports(&w), proj.fan.supports(&img));
        }
        // a scaled identity keeps rays after primitivization
        let two = IntMatrix::from_i64_rows(&[vec![2, 0, 0], vec![0, 2, 0], vec![0, 0, 2]]);
        let scaled = project_tropical(&two, &t).unwrap();
        for c in t.fan.maximal_cones() {
            for r in c.rays() {
                assert!(scaled.fan.supports(r));
            }
        }
        // singular projections are rejected
        let sing = IntMatrix::from_i64_rows(&[vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]]);
        assert_eq!(
            project_tropical(&sing, &t).unwrap_err(),
            TropicalError::SingularProjection
        );
    }

    #[test]
    fn balancing_of_the_trinomial_fan() {
        // the three maximal cones share the lineality line; dual edges all
        // have lattice length 2, and 2*(e1 + e2 + e3) lies on the line
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("4*T1^2 - T2^2 + T3^2", &ring).unwrap();
        let t = tropical_hypersurface(&f);
        let np = newton_polytope(&f).unwrap();
        let mut weighted_sum = vec![Int::zero(); 3];
        for c in t.fan.maximal_cones() {
            // dual edge: vertices attaining the minimum at an interior point
            let w = c.relative_interior_point();
            let vals: Vec<Int> = np
                .vertices
                .iter()
                .map(|v| v.iter().zip(&w).map(|(a, b)| a * b).sum())
                .collect();
            let min = vals.iter().min().unwrap().clone();
            let argmin: Vec<&Vec<Int>> = np
                .vertices
                .iter()
                .zip(&vals)
                .filter(|(_, val)| **val == min)
                .map(|(v, _)| v)
                .collect();
            assert_eq!(argmin.len(), 2, "maximal skeleton cone is dual to an edge");
            let edge: Vec<Int> = argmin[1]
                .iter()
                .zip(argmin[0])
                .map(|(a, b)| a - b)
                .collect();
            let (_, _) = (argmin, &edge);
            let length = edge
                .iter()
                .fold(Int::zero(), |acc, x| num_integer::Integer::gcd(&acc, x));
            // primitive direction of the cone modulo the lineality line
            let dir = c
                .rays()
                .first()
                .expect("cone has a ray besides its lineality")
                .clone();
            for i in 0..3 {
                weighted_sum[i] += &length * &dir[i];
            }
        }
        // the sum is a multiple of the lineality direction (1,1,1)
        assert_eq!(weighted_sum[0], weighted_sum[1]);
        assert_eq!(weighted_sum[1], weighted_sum[2]);
    }

    #[test]
    fn prevariety_feeds_ray_pruning() {
        // two transverse quadrics: the prevariety may exceed the variety,
        // and the membership test prunes
        let ring = RingCtx::new(3, 1);
        let f = parse_poly("T1^2 - T2*T3", &ring).unwrap();
        let g = parse_poly("T1*T2 - T3^2", &ring).unwrap();
        let t = tropical_prevariety(&[f.clone(), g.clone()]);
        let ideal = Ideal::new(ring, vec![f, g]);
        let mut seen_any = false;
        for c in t.fan.maximal_cones() {
            let p = c.relative_interior_point();
            if p.iter().all(|x| x.is_zero()) {
                continue;
            }
            // prune decisions are well-defined on prevariety cones
            let _member = ray_in_tropical(&ideal, &p, &b()).unwrap();
            seen_any = true;
        }
        assert!(seen_any);
        let m = MultiPolynomial::monomial(
            RingCtx::new(3, 1),
            Monomial(vec![1, 0, 0]),
            CycNum::one(),
        );
        let _ = m;
    }
}
