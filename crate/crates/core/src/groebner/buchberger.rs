//! Buchberger's algorithm with the two classical criteria and normal pair
//! selection (minimal lcm under the active order, ties by input index).
//! Output bases are reduced and auto-normalized to monic leading
//! coefficients; the computation is deterministic for a given input order.

use crate::arith::CycNum;
use crate::budget::{Budget, Meter};
use crate::poly::{Monomial, MonomialOrder, MultiPolynomial};
use num_bigint::BigInt;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GbError {
    #[error("computation budget exceeded during {0}")]
    BudgetExceeded(&'static str),
    #[error("initial-form ideal needs a positive grading, none was found")]
    UnsupportedWeight,
}

/// Injective sort key for a monomial under a fixed order; lexicographic
/// comparison of keys agrees with the order.
fn sort_key(ord: &MonomialOrder, m: &Monomial) -> Vec<i128> {
    match ord {
        MonomialOrder::Lex => m.0.iter().map(|&e| e as i128).collect(),
        MonomialOrder::DegRevLex => {
            let mut k = Vec::with_capacity(m.0.len() + 1);
            k.push(m.total_degree() as i128);
            for &e in m.0.iter().rev() {
                k.push(-(e as i128));
            }
            k
        }
        MonomialOrder::Block { eliminate } => {
            let mut k = Vec::with_capacity(2 * m.0.len() + 2);
            for keep in [true, false] {
                let deg: i128 = m
                    .0
                    .iter()
                    .zip(eliminate)
                    .filter(|(_, &b)| b == keep)
                    .map(|(&e, _)| e as i128)
                    .sum();
                k.push(deg);
                for i in (0..m.0.len()).rev() {
                    if eliminate[i] == keep {
                        k.push(-(m.0[i] as i128));
                    }
                }
            }
            k
        }
        MonomialOrder::Weight { weights } => {
            let w: BigInt = m
                .0
                .iter()
                .zip(weights)
                .map(|(&e, wi)| wi * BigInt::from(e))
                .sum();
            let mut k = Vec::with_capacity(m.0.len() + 2);
            k.push(i128::try_from(&w).expect("weight fits in i128"));
            k.push(m.total_degree() as i128);
            for &e in m.0.iter().rev() {
                k.push(-(e as i128));
            }
            k
        }
    }
}

/// Polynomial in map form keyed by the active-order sort key (ascending);
/// the leading term is the last entry.
struct Work {
    map: std::collections::BTreeMap<Vec<i128>, (Monomial, CycNum)>,
}

impl Work {
    fn from_poly(f: &MultiPolynomial, ord: &MonomialOrder) -> Work {
        let mut map = std::collections::BTreeMap::new();
        for (m, c) in f.terms() {
            map.insert(sort_key(ord, m), (m.clone(), c.clone()));
        }
        Work { map }
    }

    fn leading(&self) -> Option<(&Vec<i128>, &(Monomial, CycNum))> {
        self.map.iter().next_back()
    }

    fn add_scaled(
        &mut self,
        g: &[(Monomial, CycNum)],
        shift: &Monomial,
        scale: &CycNum,
        ord: &MonomialOrder,
    ) {
        for (m, c) in g {
            let mm = m.mul(shift);
            let cc = c.mul(scale);
            let key = sort_key(ord, &mm);
            match self.map.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    if !cc.is_zero() {
                        e.insert((mm, cc));
                    }
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get().1.add(&cc);
                    if s.is_zero() {
                        e.remove();
                    } else {
                        e.get_mut().1 = s;
                    }
                }
            }
        }
    }

    fn into_poly(self, ring: std::sync::Arc<crate::poly::RingCtx>) -> MultiPolynomial {
        MultiPolynomial::from_terms(ring, self.map.into_values().collect())
    }
}

/// Basis element with cached leading data (descending term list).
#[derive(Clone)]
struct Element {
    terms: Vec<(Monomial, CycNum)>, // descending under the order
    lt: Monomial,
    lc: CycNum,
}

impl Element {
    fn from_poly(f: &MultiPolynomial, ord: &MonomialOrder) -> Option<Element> {
        if f.is_zero() {
            return None;
        }
        let mut terms: Vec<(Monomial, CycNum)> =
            f.terms().map(|(m, c)| (m.clone(), c.clone())).collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        let lt = terms[0].0.clone();
        let lc = terms[0].1.clone();
        Some(Element { terms, lt, lc })
    }
}

/// Full reduction of `f` modulo `basis`; the remainder has no term
/// divisible by any basis leading term.
fn reduce_full(
    f: Work,
    basis: &[Element],
    ord: &MonomialOrder,
    meter: &Meter,
    budget: &Budget,
) -> Result<Work, GbError> {
    let mut work = f;
    let mut done: Vec<(Vec<i128>, (Monomial, CycNum))> = Vec::new();
    'outer: loop {
        let Some((key, (m, c))) = work.map.iter().next_back().map(|(k, v)| (k.clone(), v.clone()))
        else {
            break;
        };
        for g in basis {
            if g.lt.divides(&m) {
                if !meter.charge(1, budget) {
                    return Err(GbError::BudgetExceeded("polynomial reduction"));
                }
                let shift = m.div(&g.lt).unwrap();
                let scale = c.div(&g.lc).expect("nonzero leading coefficient").neg();
                work.add_scaled(&g.terms, &shift, &scale, ord);
                continue 'outer;
            }
        }
        // irreducible term: retire it
        work.map.remove(&key);
        done.push((key, (m, c)));
    }
    for (k, v) in done {
        work.map.insert(k, v);
    }
    Ok(work)
}

/// Fully reduced remainder of `f` against an already-computed basis.
pub fn normal_form_against(
    f: &MultiPolynomial,
    basis: &[MultiPolynomial],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<MultiPolynomial, GbError> {
    let elements: Vec<Element> = basis
        .iter()
        .filter_map(|g| Element::from_poly(g, ord))
        .collect();
    let meter = Meter::new();
    let work = Work::from_poly(f, ord);
    let reduced = reduce_full(work, &elements, ord, &meter, budget)?;
    Ok(reduced.into_poly(f.ring.clone()))
}

/// Reduced Groebner basis of the ideal generated by `gens` w.r.t. `ord`.
pub fn groebner_basis_with(
    gens: &[MultiPolynomial],
    ord: &MonomialOrder,
    budget: &Budget,
) -> Result<Vec<MultiPolynomial>, GbError> {
    let ring = match gens.first() {
        Some(g) => g.ring.clone(),
        None => return Ok(Vec::new()),
    };
    let meter = Meter::new();
    let mut basis: Vec<Element> = Vec::new();
    for g in gens {
        if let Some(e) = Element::from_poly(g, ord) {
            basis.push(e);
        }
    }
    if basis.is_empty() {
        return Ok(Vec::new());
    }

    // pair queue: (lcm sort key, i, j), popped smallest first
    type PairQueue = BinaryHeap<Reverse<(Vec<i128>, usize, usize)>>;
    let mut queue: PairQueue = BinaryHeap::new();
    fn push_pairs(queue: &mut PairQueue, basis: &[Element], j: usize, ord: &MonomialOrder) {
        for i in 0..j {
            let lcm = basis[i].lt.lcm(&basis[j].lt);
            queue.push(Reverse((sort_key(ord, &lcm), i, j)));
        }
    }
    for j in 0..basis.len() {
        push_pairs(&mut queue, &basis, j, ord);
    }
    let mut treated: HashSet<(usize, usize)> = HashSet::new();

    while let Some(Reverse((_, i, j))) = queue.pop() {
        treated.insert((i, j));
        let (lt_i, lt_j) = (&basis[i].lt, &basis[j].lt);
        let lcm = lt_i.lcm(lt_j);
        // product criterion
        if lt_i.coprime(lt_j) {
            continue;
        }
        // chain criterion
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && basis[k].lt.divides(&lcm)
                && treated.contains(&(i.min(k), i.max(k)))
                && treated.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        // S-polynomial
        let mut s = Work {
            map: std::collections::BTreeMap::new(),
        };
        let shift_i = lcm.div(lt_i).unwrap();
        let shift_j = lcm.div(lt_j).unwrap();
        let inv_i = basis[i].lc.inv().unwrap();
        let inv_j = basis[j].lc.inv().unwrap().neg();
        s.add_scaled(&basis[i].terms, &shift_i, &inv_i, ord);
        s.add_scaled(&basis[j].terms, &shift_j, &inv_j, ord);
        let reduced = reduce_full(s, &basis, ord, &meter, budget)?;
        if reduced.map.is_empty() {
            continue;
        }
        let poly = reduced.into_poly(ring.clone());
        let e = Element::from_poly(&poly, ord).unwrap();
        basis.push(e);
        if basis.len() > budget.max_basis {
            return Err(GbError::BudgetExceeded("basis growth"));
        }
        push_pairs(&mut queue, &basis, basis.len() - 1, ord);
    }

    // interreduce: drop elements whose leading term is divisible by another
    let mut keep: Vec<bool> = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i != j
                && keep[j]
                && basis[j].lt.divides(&basis[i].lt)
                && (basis[j].lt != basis[i].lt || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let survivors: Vec<Element> = basis
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(e, _)| e.clone())
        .collect();
    // tail-reduce each survivor against the others and normalize monic
    let mut out = Vec::new();
    for (idx, e) in survivors.iter().enumerate() {
        let others: Vec<Element> = survivors
            .iter()
            .enumerate()
            .filter(|(k, _)| *k != idx)
            .map(|(_, x)| x.clone())
            .collect();
        let work = Work {
            map: e
                .terms
                .iter()
                .map(|(m, c)| (sort_key(ord, m), (m.clone(), c.clone())))
                .collect(),
        };
        let reduced = reduce_full(work, &others, ord, &meter, budget)?;
        let poly = reduced.into_poly(ring.clone()).monic(ord);
        if !poly.is_zero() {
            out.push(poly);
        }
    }
    // deterministic output order: by leading term ascending
    out.sort_by(|a, b| {
        let la = a.leading_term(ord).unwrap().0;
        let lb = b.leading_term(ord).unwrap().0;
        ord.cmp(la, lb)
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_poly, RingCtx};

    fn gb(gens: &[&str], nvars: usize, ord: MonomialOrder) -> Vec<String> {
        let ring = RingCtx::new(nvars, 1);
        let gens: Vec<MultiPolynomial> =
            gens.iter().map(|s| parse_poly(s, &ring).unwrap()).collect();
        let basis = groebner_basis_with(&gens, &ord, &Budget::default()).unwrap();
        basis.iter().map(crate::poly::poly_to_string).collect()
    }

    #[test]
    fn two_variables_stay() {
        assert_eq!(gb(&["T1", "T2"], 2, MonomialOrder::Lex), vec!["T2", "T1"]);
    }

    #[test]
    fn spoly_cascade() {
        // <T1^2 - T2, T1^3> under lex T1 > T2: reduced basis {T1^2 - T2,
        // T1*T2, T2^2}; oracle: T2^2 = (-T2 - T1^2)(T1^2 - T2) + T1*T1^3
        let basis = gb(&["T1^2 - T2", "T1^3"], 2, MonomialOrder::Lex);
        assert_eq!(basis, vec!["T2^2", "T1*T2", "T1^2 - T2"]);
    }

    #[test]
    fn principal_ideal_normalizes_monic() {
        let basis = gb(&["4*T1^2 - T2^2 + T3^2"], 3, MonomialOrder::DegRevLex);
        assert_eq!(basis, vec!["T1^2 - 1/4*T2^2 + 1/4*T3^2"]);
    }

    #[test]
    fn gb_self_reduction_property() {
        let ring = RingCtx::new(3, 1);
        let gens: Vec<MultiPolynomial> = ["T1*T2 - T3", "T2^2 - T3", "T1*T3 - T2"]
            .iter()
            .map(|s| parse_poly(s, &ring).unwrap())
            .collect();
        let ord = MonomialOrder::DegRevLex;
        let b = groebner_basis_with(&gens, &ord, &Budget::default()).unwrap();
        for g in &gens {
            let nf = normal_form_against(g, &b, &ord, &Budget::default()).unwrap();
            assert!(nf.is_zero(), "generator does not reduce to zero");
        }
        // every S-polynomial of basis pairs reduces to zero
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                let (mi, ci) = b[i].leading_term(&ord).unwrap();
                let (mj, cj) = b[j].leading_term(&ord).unwrap();
                let lcm = mi.lcm(mj);
                let s = b[i]
                    .mul_term(&lcm.div(mi).unwrap(), &cj.clone())
                    .sub(&b[j].mul_term(&lcm.div(mj).unwrap(), &ci.clone()));
                let nf = normal_form_against(&s, &b, &ord, &Budget::default()).unwrap();
                assert!(nf.is_zero(), "S-polynomial does not reduce to zero");
            }
        }
    }

    #[test]
    fn budget_is_enforced() {
        let ring = RingCtx::new(3, 1);
        let gens: Vec<MultiPolynomial> = ["T1^4*T2 - T3^2", "T2^3 - T1*T3", "T3^3 - T1^2*T2^2"]
            .iter()
            .map(|s| parse_poly(s, &ring).unwrap())
            .collect();
        let tiny = Budget::default().with_reductions(3);
        let err = groebner_basis_with(&gens, &MonomialOrder::Lex, &tiny).unwrap_err();
        assert!(matches!(err, GbError::BudgetExceeded(_)));
    }
}
