//! Monomial orders. All implemented orders are global (1 is smallest),
//! which Buchberger termination relies on.

use super::Monomial;
use num_bigint::BigInt;
use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum MonomialOrder {
    Lex,
    DegRevLex,
    /// Product order eliminating the flagged block: degrevlex on the block,
    /// ties broken by degrevlex on the complement. A leading term free of
    /// block variables forces the whole polynomial free of them.
    Block { eliminate: Vec<bool> },
    /// Weight order (nonnegative weights) refined by degrevlex.
    Weight { weights: Vec<BigInt> },
}

fn degrevlex(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&x| x as u64).sum();
    let db: u64 = b.iter().map(|&x| x as u64).sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            // reverse lex on the reversed exponent difference
            for i in (0..a.len()).rev() {
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

fn masked_degrevlex(a: &[u32], b: &[u32], mask: &[bool], keep: bool) -> Ordering {
    let da: u64 = a
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m == keep)
        .map(|(&x, _)| x as u64)
        .sum();
    let db: u64 = b
        .iter()
        .zip(mask)
        .filter(|(_, &m)| m == keep)
        .map(|(&x, _)| x as u64)
        .sum();
    match da.cmp(&db) {
        Ordering::Equal => {
            for i in (0..a.len()).rev() {
                if mask[i] != keep {
                    continue;
                }
                match a[i].cmp(&b[i]) {
                    Ordering::Equal => continue,
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                }
            }
            Ordering::Equal
        }
        o => o,
    }
}

impl MonomialOrder {
    pub fn elimination(nvars: usize, drop: &[usize]) -> Self {
        let mut eliminate = vec![false; nvars];
        for &d in drop {
            eliminate[d] = true;
        }
        MonomialOrder::Block { eliminate }
    }

    pub fn weight(weights: Vec<BigInt>) -> Self {
        MonomialOrder::Weight { weights }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.0.cmp(&b.0),
            MonomialOrder::DegRevLex => degrevlex(&a.0, &b.0),
            MonomialOrder::Block { eliminate } => {
                match masked_degrevlex(&a.0, &b.0, eliminate, true) {
                    Ordering::Equal => masked_degrevlex(&a.0, &b.0, eliminate, false),
                    o => o,
                }
            }
            MonomialOrder::Weight { weights } => {
                let wa: BigInt = a
                    .0
                    .iter()
                    .zip(weights)
                    .map(|(&e, w)| w * BigInt::from(e))
                    .sum();
                let wb: BigInt = b
                    .0
                    .iter()
                    .zip(weights)
                    .map(|(&e, w)| w * BigInt::from(e))
                    .sum();
                match wa.cmp(&wb) {
                    Ordering::Equal => degrevlex(&a.0, &b.0),
                    o => o,
                }
            }
        }
    }
}
