//! Finite matrix groups over a cyclotomic field: closure, derived
//! subgroup, abelianization with an explicit projection, pseudo-reflection
//! detection, conjugacy classes and age/junior-class computation.

use crate::arith::{lcm_orders, CycNum, Rational};
use crate::budget::Budget;
use crate::lattice::{smith_normal_form, AbelianGroupSpec, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::HashMap;
use thiserror::Error;

type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group closure exceeded the configured bound; group not finite within budget")]
    NotFiniteWithinBudget,
    #[error("matrix is singular")]
    Singular,
}

/// Dense square matrix over a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct CycMatrix {
    pub n: usize,
    pub entries: Vec<CycNum>, // row major
}

impl CycMatrix {
    pub fn identity(n: usize) -> CycMatrix {
        let mut entries = vec![CycNum::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = CycNum::one();
        }
        CycMatrix { n, entries }
    }

    pub fn from_rows(rows: Vec<Vec<CycNum>>) -> CycMatrix {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "square matrix expected");
        CycMatrix {
            n,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &CycNum {
        &self.entries[r * self.n + c]
    }

    pub fn mul(&self, other: &CycMatrix) -> CycMatrix {
        let n = self.n;
        let mut entries = vec![CycNum::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let bb = other.at(k, j);
                    if bb.is_zero() {
                        continue;
                    }
                    entries[i * n + j] = entries[i * n + j].add(&a.mul(bb));
                }
            }
        }
        CycMatrix { n, entries }
    }

    pub fn is_identity(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| {
            (0..n).all(|j| {
                if i == j {
                    self.at(i, j).is_one()
                } else {
                    self.at(i, j).is_zero()
                }
            })
        })
    }

    /// Coerces all entries into the field of the given order.
    pub fn coerce(&self, order: u32) -> CycMatrix {
        CycMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .map(|e| e.coerce(order).normalized())
                .collect(),
        }
    }

    /// Multiplicative order, `None` past the cap.
    pub fn order(&self, cap: usize) -> Option<usize> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Some(k);
            }
            p = p.mul(self);
        }
        None
    }

    pub fn pow(&self, e: usize) -> CycMatrix {
        let mut acc = CycMatrix::identity(self.n);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Rank over the cyclotomic field.
    pub fn rank(&self) -> usize {
        let n = self.n;
        let mut m: Vec<Vec<CycNum>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut rank = 0;
        for col in 0..n {
            let Some(p) = (rank..n).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(rank, p);
            let inv = m[rank][col].inv().unwrap();
            for c in col..n {
                m[rank][c] = m[rank][c].mul(&inv);
            }
            for r in 0..n {
                if r != rank && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..n {
                        let sub = f.mul(&m[rank][c]);
                        m[r][c] = m[r][c].sub(&sub);
                    }
                }
            }
            rank += 1;
            if rank == n {
                break;
            }
        }
        rank
    }

    pub fn det(&self) -> CycNum {
        let n = self.n;
        let mut m: Vec<Vec<CycNum>> = (0..n)
            .map(|i| (0..n).map(|j| self.at(i, j).clone()).collect())
            .collect();
        let mut det = CycNum::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return CycNum::zero();
            };
            if p != col {
                m.swap(col, p);
                det = det.neg();
            }
            let pivot = m[col][col].clone();
            det = det.mul(&pivot);
            let inv = pivot.inv().unwrap();
            for r in col + 1..n {
                if !m[r][col].is_zero() {
                    let f = m[r][col].mul(&inv);
                    for c in col..n {
                        let sub = f.mul(&m[col][c]);
                        m[r][c] = m[r][c].sub(&sub);
                    }
                }
            }
        }
        det
    }

    pub fn sub(&self, other: &CycMatrix) -> CycMatrix {
        CycMatrix {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &CycNum) -> CycMatrix {
        CycMatrix {
            n: self.n,
            entries: self.entries.iter().map(|e| e.mul(c)).collect(),
        }
    }
}

/// Smallest cyclotomic order containing all generator entries and the
/// exponent of the generated group, so eigenvalue computations stay in
/// one field.
pub fn minimal_cyclotomic_order(
    matrices: &[CycMatrix],
    budget: &Budget,
) -> Result<u32, GroupError> {
    let entry_order = lcm_orders(
        matrices
            .iter()
            .flat_map(|m| m.entries.iter().map(|e| e.order())),
    );
    let coerced: Vec<CycMatrix> = matrices.iter().map(|m| m.coerce(entry_order)).collect();
    let elements = close_elements(&coerced, budget)?;
    let cap = elements.len() + 1;
    let exponent = lcm_orders(
        elements
            .iter()
            .map(|e| e.order(cap).expect("finite group element") as u32),
    );
    Ok(lcm_orders([entry_order, exponent]))
}

fn close_elements(gens: &[CycMatrix], budget: &Budget) -> Result<Vec<CycMatrix>, GroupError> {
    let n = gens.first().map(|g| g.n).unwrap_or(0);
    let id = CycMatrix::identity(n);
    let mut elements = vec![id.clone()];
    let mut seen: HashMap<CycMatrix, usize> = HashMap::new();
    seen.insert(id, 0);
    let mut frontier = 0usize;
    while frontier < elements.len() {
        let e = elements[frontier].clone();
        frontier += 1;
        for g in gens {
            let prod = e.mul(g);
            if !seen.contains_key(&prod) {
                seen.insert(prod.clone(), elements.len());
                elements.push(prod);
                if elements.len() > budget.max_group_order {
                    return Err(GroupError::NotFiniteWithinBudget);
                }
            }
        }
    }
    Ok(elements)
}

/// Finite matrix group with its cached element list (breadth-first order,
/// identity first).
#[derive(Clone, Debug)]
pub struct MatrixGroup {
    pub field_order: u32,
    pub dim: usize,
    pub generators: Vec<CycMatrix>,
    elements: Vec<CycMatrix>,
    index: HashMap<CycMatrix, usize>,
}

impl MatrixGroup {
    /// Closure of a generating set. Generators are coerced into the
    /// smallest cyclotomic field containing all entries and eigenvalues.
    pub fn closure(generators: &[CycMatrix], budget: &Budget) -> Result<MatrixGroup, GroupError> {
        assert!(!generators.is_empty(), "empty generating set");
        let field_order = minimal_cyclotomic_order(generators, budget)?;
        MatrixGroup::closure_in_field(generators, field_order, budget)
    }

    /// Closure in a fixed, caller-chosen field order.
    pub fn closure_in_field(
        generators: &[CycMatrix],
        field_order: u32,
        budget: &Budget,
    ) -> Result<MatrixGroup, GroupError> {
        let dim = generators[0].n;
        let gens: Vec<CycMatrix> = generators.iter().map(|g| g.coerce(field_order)).collect();
        let elements = close_elements(&gens, budget)?;
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i))
            .collect();
        Ok(MatrixGroup {
            field_order,
            dim,
            generators: gens,
            elements,
            index,
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[CycMatrix] {
        &self.elements
    }

    pub fn element_index(&self, m: &CycMatrix) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn inverse(&self, m: &CycMatrix) -> CycMatrix {
        let ord = m.order(self.order() + 1).expect("finite order element");
        m.pow(ord - 1)
    }

    /// Subgroup generated by all commutators, closed under products;
    /// normal by construction since all element pairs contribute.
    pub fn derived_subgroup(&self, budget: &Budget) -> Result<MatrixGroup, GroupError> {
        let mut comms: Vec<CycMatrix> = Vec::new();
        for a in &self.elements {
            for b in &self.elements {
                let ainv = self.inverse(a);
                let binv = self.inverse(b);
                let c = a.mul(b).mul(&ainv).mul(&binv);
                if !comms.contains(&c) {
                    comms.push(c);
                }
            }
        }
        if comms.is_empty() {
            comms.push(CycMatrix::identity(self.dim));
        }
        MatrixGroup::closure_in_field(&comms, self.field_order, budget)
    }

    /// Does some non-identity element fix a hyperplane pointwise?
    pub fn has_pseudo_reflections(&self) -> bool {
        self.elements
            .iter()
            .any(|e| !e.is_identity() && e.sub(&CycMatrix::identity(self.dim)).rank() == 1)
    }

    /// All generators of determinant one.
    pub fn is_in_sl(&self) -> bool {
        self.generators.iter().all(|g| g.det().is_one())
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.elements.len()];
        let mut classes = Vec::new();
        for i in 0..self.elements.len() {
            if assigned[i] {
                continue;
            }
            let mut class = Vec::new();
            for g in &self.elements {
                let ginv = self.inverse(g);
                let conj = g.mul(&self.elements[i]).mul(&ginv);
                let idx = self.index[&conj];
                if !assigned[idx] {
                    assigned[idx] = true;
                    class.push(idx);
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// Eigenvalue multiplicities of `g` as exponents of `zeta_r`, `r` the
    /// order of `g`; found by kernel ranks at each candidate root.
    pub fn eigenvalue_exponents(&self, g: &CycMatrix) -> (usize, Vec<(usize, usize)>) {
        let r = g.order(self.order() + 1).expect("finite order");
        let mut muls = Vec::new();
        let mut total = 0;
        for a in 0..r {
            let zeta = CycNum::root_of_unity(r as u32, a as i64).coerce(self.field_order);
            let shifted = g.sub(&CycMatrix::identity(self.dim).scale(&zeta));
            let mult = self.dim - shifted.rank();
            if mult > 0 {
                muls.push((a, mult));
                total += mult;
            }
        }
        debug_assert_eq!(total, self.dim, "finite-order matrices are diagonalizable");
        (r, muls)
    }

    /// age(g) = (sum of eigenvalue exponents) / r.
    pub fn age(&self, g: &CycMatrix) -> Rational {
        let (r, muls) = self.eigenvalue_exponents(g);
        let sum: i64 = muls.iter().map(|&(a, m)| (a * m) as i64).sum();
        Rational::new(Int::from(sum), Int::from(r as i64))
    }

    /// Number of conjugacy classes of age exactly one.
    pub fn junior_classes(&self) -> usize {
        let one = Rational::one();
        self.conjugacy_classes()
            .iter()
            .filter(|class| self.age(&self.elements[class[0]]) == one)
            .count()
    }

    pub fn abelianization(&self, budget: &Budget) -> Result<Abelianization, GroupError> {
        let derived = self.derived_subgroup(budget)?;
        let in_derived = |m: &CycMatrix| -> bool { derived.element_index(m).is_some() };
        // coset decomposition
        let mut coset_of = vec![usize::MAX; self.elements.len()];
        let mut reps: Vec<usize> = Vec::new();
        for (i, e) in self.elements.iter().enumerate() {
            let mut found = None;
            for (ci, &rep) in reps.iter().enumerate() {
                let repinv = self.inverse(&self.elements[rep]);
                if in_derived(&e.mul(&repinv)) {
                    found = Some(ci);
                    break;
                }
            }
            coset_of[i] = match found {
                Some(ci) => ci,
                None => {
                    reps.push(i);
                    reps.len() - 1
                }
            };
        }
        let q = reps.len();
        let k = self.generators.len();
        // generator image per coset, and words via breadth-first search
        let gen_on = |ci: usize, j: usize| -> usize {
            let prod = self.elements[reps[ci]].mul(&self.generators[j]);
            coset_of[self.index[&prod]]
        };
        let mut words: Vec<Option<Vec<Int>>> = vec![None; q];
        let id_coset = coset_of[0];
        words[id_coset] = Some(vec![Int::zero(); k]);
        let mut queue = std::collections::VecDeque::from([id_coset]);
        while let Some(ci) = queue.pop_front() {
            let w = words[ci].clone().unwrap();
            for j in 0..k {
                let target = gen_on(ci, j);
                if words[target].is_none() {
                    let mut w2 = w.clone();
                    w2[j] += 1;
                    words[target] = Some(w2);
                    queue.push_back(target);
                }
            }
        }
        let words: Vec<Vec<Int>> = words
            .into_iter()
            .map(|w| w.expect("generators generate the quotient"))
            .collect();
        // relation lattice: e_j + word(x) - word(g_j x) for all cosets x
        let mut rel_rows: Vec<Vec<Int>> = Vec::new();
        for ci in 0..q {
            for j in 0..k {
                let target = gen_on(ci, j);
                let mut row = vec![Int::zero(); k];
                row[j] += Int::one();
                for t in 0..k {
                    row[t] += &words[ci][t] - &words[target][t];
                }
                rel_rows.push(row);
            }
        }
        let rel = if rel_rows.is_empty() {
            IntMatrix::zero(0, k)
        } else {
            IntMatrix::from_rows(rel_rows)
        };
        // quotient Z^k by the column lattice of rel^T: project x -> Ux mod d
        let c = rel.transpose(); // k x r
        let (d, u, _w) = smith_normal_form(&c);
        let mut retained = Vec::new();
        let mut moduli = Vec::new();
        for i in 0..k {
            let di = if i < c.cols.min(c.rows) {
                d[(i, i)].abs()
            } else {
                Int::zero()
            };
            assert!(
                !di.is_zero(),
                "abelianization of a finite group has no free part"
            );
            if di > Int::one() {
                retained.push(i);
                moduli.push(di);
            }
        }
        let uinv = int_inverse(&u);
        Ok(Abelianization {
            spec: AbelianGroupSpec {
                free_rank: 0,
                torsion_moduli: moduli.clone(),
            },
            field_order: self.field_order,
            moduli,
            retained,
            u,
            uinv,
            words,
            coset_of,
        })
    }
}

/// Inverse of a unimodular integer matrix.
fn int_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows;
    let mut aug: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| Rational::from_integer(u[(r, c)].clone()))
                .chain((0..n).map(|c| {
                    if c == r {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                }))
                .collect()
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !aug[r][col].is_zero()).unwrap();
        aug.swap(col, p);
        let inv = aug[col][col].recip();
        for c in 0..2 * n {
            aug[col][c] = &aug[col][c] * &inv;
        }
        for r in 0..n {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for c in 0..2 * n {
                    let sub = &f * &aug[col][c];
                    aug[r][c] = &aug[r][c] - &sub;
                }
            }
        }
    }
    let mut out = IntMatrix::zero(n, n);
    for r in 0..n {
        for c in 0..n {
            let v = &aug[r][n + c];
            assert!(v.denom().is_one());
            out[(r, c)] = v.to_integer();
        }
    }
    out
}

/// Invariant-factor presentation of `G/[G,G]` with the projection data
/// used to translate characters into degree tuples.
#[derive(Clone, Debug)]
pub struct Abelianization {
    pub spec: AbelianGroupSpec,
    field_order: u32,
    moduli: Vec<Int>,
    retained: Vec<usize>,
    #[allow(dead_code)]
    u: IntMatrix,
    uinv: IntMatrix,
    words: Vec<Vec<Int>>,
    coset_of: Vec<usize>,
}

impl Abelianization {
    /// Coordinates of an element (by its index in the parent group's
    /// element list) in the invariant-factor decomposition.
    pub fn project(&self, element_index: usize) -> Vec<Int> {
        let w = &self.words[self.coset_of[element_index]];
        let full = self.u.mul_vec(w);
        self.retained
            .iter()
            .zip(&self.moduli)
            .map(|(&i, m)| full[i].mod_floor(m))
            .collect()
    }

    pub fn moduli(&self) -> &[Int] {
        &self.moduli
    }

    /// Translates a character, given by its values on the parent group's
    /// generators, into a degree tuple: its exponent on each
    /// invariant-factor generator.
    pub fn character_to_degree(&self, values: &[CycNum]) -> Vec<Int> {
        let mut out = Vec::new();
        for (slot, &l) in self.retained.iter().enumerate() {
            // invariant-factor generator l in terms of the parent
            // generators: column l of U^{-1}
            let mut t = CycNum::one();
            for (j, v) in values.iter().enumerate() {
                let e = &self.uinv[(j, l)];
                t = t.mul(&pow_signed(v, e));
            }
            let m = &self.moduli[slot];
            let d = u32::try_from(m).expect("torsion modulus fits u32");
            let mut found = None;
            let tt = t.coerce(self.field_order).normalized();
            for a in 0..d {
                let z = CycNum::root_of_unity(d, a as i64)
                    .coerce(self.field_order)
                    .normalized();
                if z == tt {
                    found = Some(Int::from(a));
                    break;
                }
            }
            out.push(found.expect("character value is a root of unity of the factor order"));
        }
        out
    }
}

fn pow_signed(v: &CycNum, e: &Int) -> CycNum {
    if e.is_negative() {
        let inv = v.inv().expect("root of unity is invertible");
        inv.pow(u64::try_from(&-e.clone()).unwrap())
    } else {
        v.pow(u64::try_from(e).unwrap())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn b() -> Budget {
        Budget::default()
    }

    #[test]
    fn quaternion_closure_and_derived() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        assert_eq!(g.order(), 8);
        assert_eq!(g.field_order, 4);
        let derived = g.derived_subgroup(&b()).unwrap();
        assert_eq!(derived.order(), 2);
        assert!(!g.has_pseudo_reflections());
        assert!(g.is_in_sl());
    }

    #[test]
    fn trivial_group() {
        let g = MatrixGroup::closure(&[CycMatrix::identity(2)], &b()).unwrap();
        assert_eq!(g.order(), 1);
        assert!(!g.has_pseudo_reflections());
        let ab = g.abelianization(&b()).unwrap();
        assert!(ab.spec.is_trivial());
    }

    #[test]
    fn reflection_detection() {
        let m = CycMatrix::from_rows(vec![
            vec![CycNum::one(), CycNum::zero()],
            vec![CycNum::zero(), CycNum::from_int(-1)],
        ]);
        let g = MatrixGroup::closure(&[m], &b()).unwrap();
        assert!(g.has_pseudo_reflections());
    }

    #[test]
    fn quaternion_abelianization_is_klein() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        let ab = g.abelianization(&b()).unwrap();
        assert_eq!(ab.spec.torsion_moduli, vec![Int::from(2), Int::from(2)]);
        // projection kills exactly the derived subgroup
        let derived = g.derived_subgroup(&b()).unwrap();
        let mut kernel = 0;
        for (i, e) in g.elements().iter().enumerate() {
            let p = ab.project(i);
            if p.iter().all(|x| x.is_zero()) {
                kernel += 1;
                assert!(derived.element_index(e).is_some());
            }
        }
        assert_eq!(kernel, derived.order());
        assert_eq!(g.order(), derived.order() * 4);
        // homomorphism property, exhaustively
        for (i, a) in g.elements().iter().enumerate() {
            for (j, c) in g.elements().iter().enumerate() {
                let prod = a.mul(c);
                let pidx = g.element_index(&prod).unwrap();
                let sum: Vec<Int> = ab
                    .project(i)
                    .iter()
                    .zip(ab.project(j))
                    .zip(ab.moduli())
                    .map(|((x, y), m)| (x + y).mod_floor(m))
                    .collect();
                assert_eq!(ab.project(pidx), sum);
            }
        }
    }

    #[test]
    fn ages_of_small_elements() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        assert_eq!(g.age(&g.elements()[0]), Rational::zero());
        // -I has eigenvalues (-1, -1): age (1 + 1)/2 = 1
        let minus = CycMatrix::identity(2).scale(&CycNum::from_int(-1));
        assert_eq!(g.age(&minus), Rational::one());
        assert_eq!(g.conjugacy_classes().len(), 5);
        assert_eq!(g.junior_classes(), 4);
    }

    #[test]
    fn lagrange_for_element_orders() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        for e in g.elements() {
            let ord = e.order(g.order() + 1).unwrap();
            assert_eq!(g.order() % ord, 0);
        }
        let classes = g.conjugacy_classes();
        let total: usize = classes.iter().map(|c| c.len()).sum();
        assert_eq!(total, g.order());
    }

    #[test]
    fn derived_subgroup_is_normal() {
        let g = fixtures::quaternion_2d(&b()).unwrap();
        let h = g.derived_subgroup(&b()).unwrap();
        for gen in &g.generators {
            let ginv = g.inverse(gen);
            for e in h.elements() {
                let conj = gen.mul(e).mul(&ginv);
                assert!(h.element_index(&conj).is_some());
            }
        }
    }

    #[test]
    fn minimal_order_of_dihedral_ten() {
        // entries zeta_5 and -1, element orders {1, 2, 5}: the lcm is 10
        let gens = fixtures::representation_generators(5);
        let order = minimal_cyclotomic_order(&gens, &b()).unwrap();
        assert_eq!(order, 10);
        // oracle: enumerate the group, lcm of element orders and entry orders
        let g = MatrixGroup::closure(&gens, &b()).unwrap();
        assert_eq!(g.order(), 10);
        let mut l = 1u32;
        for e in g.elements() {
            l = lcm_orders([l, e.order(11).unwrap() as u32]);
        }
        for gen in &gens {
            for entry in &gen.entries {
                l = lcm_orders([l, entry.order()]);
            }
        }
        assert_eq!(l, 10);
    }

    #[test]
    fn identity_only_has_order_one() {
        let order = minimal_cyclotomic_order(&[CycMatrix::identity(3)], &b()).unwrap();
        assert_eq!(order, 1);
    }
}
