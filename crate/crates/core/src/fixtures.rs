//! Built-in representations: the ten faithful small three-dimensional
//! representations of non-abelian groups of order at most 12, the
//! two-dimensional quaternion representation, and two four-dimensional
//! symplectic cases. Entries are exact cyclotomic numbers.

use crate::arith::CycNum;
use crate::budget::Budget;
use crate::groups::{CycMatrix, GroupError, MatrixGroup};

fn n(x: i64) -> CycNum {
    CycNum::from_int(x)
}

/// zeta_k^e
fn z(k: u32, e: i64) -> CycNum {
    CycNum::root_of_unity(k, e)
}

/// i (fourth root of unity)
fn iu() -> CycNum {
    z(4, 1)
}

fn m3(rows: [[CycNum; 3]; 3]) -> CycMatrix {
    CycMatrix::from_rows(rows.into_iter().map(|r| r.into_iter().collect()).collect())
}

fn m4i(rows: [[i64; 4]; 4]) -> CycMatrix {
    CycMatrix::from_rows(
        rows.into_iter()
            .map(|r| r.into_iter().map(n).collect())
            .collect(),
    )
}

/// Generator matrices of representation `case` (1 through 10).
pub fn representation_generators(case: usize) -> Vec<CycMatrix> {
    // -zeta_3^2 = zeta_6 and -zeta_3 = zeta_6^5
    let a6 = || {
        m3([
            [z(6, 1), n(0), n(0)],
            [n(0), z(6, 5), n(0)],
            [n(0), n(0), n(1)],
        ])
    };
    match case {
        1 => vec![
            m3([
                [n(0), n(-1), n(0)],
                [n(1), n(-1), n(0)],
                [n(0), n(0), n(1)],
            ]),
            m3([
                [n(-1), n(1), n(0)],
                [n(0), n(1), n(0)],
                [n(0), n(0), n(-1)],
            ]),
        ],
        2 => vec![
            m3([
                [n(0), n(-1), n(0)],
                [n(1), n(0), n(0)],
                [n(0), n(0), n(1)],
            ]),
            m3([
                [n(1), n(0), n(0)],
                [n(0), n(-1), n(0)],
                [n(0), n(0), n(-1)],
            ]),
        ],
        3 => vec![
            m3([
                [iu(), n(0), n(0)],
                [n(0), iu().neg(), n(0)],
                [n(0), n(0), n(1)],
            ]),
            m3([
                [n(0), n(-1), n(0)],
                [n(1), n(0), n(0)],
                [n(0), n(0), n(1)],
            ]),
        ],
        4 => vec![
            m3([
                [iu(), n(0), n(0)],
                [n(0), iu().neg(), n(0)],
                [n(0), n(0), n(-1)],
            ]),
            m3([
                [n(0), n(-1), n(0)],
                [n(1), n(0), n(0)],
                [n(0), n(0), n(1)],
            ]),
        ],
        5 => vec![
            m3([
                [z(5, 1), n(0), n(0)],
                [n(0), z(5, 4), n(0)],
                [n(0), n(0), n(1)],
            ]),
            m3([
                [n(0), n(1), n(0)],
                [n(1), n(0), n(0)],
                [n(0), n(0), n(-1)],
            ]),
        ],
        6 => vec![
            a6(),
            m3([
                [n(0), n(1), n(0)],
                [n(1), n(0), n(0)],
                [n(0), n(0), n(-1)],
            ]),
        ],
        7 => vec![
            m3([
                [n(0), n(0), n(1)],
                [n(1), n(0), n(0)],
                [n(0), n(1), n(0)],
            ]),
            m3([
                [n(-1), n(0), n(0)],
                [n(0), n(-1), n(0)],
                [n(0), n(0), n(1)],
            ]),
        ],
        8 => vec![
            a6(),
            m3([
                [n(0), iu().neg(), n(0)],
                [iu().neg(), n(0), n(0)],
                [n(0), n(0), n(1)],
            ]),
        ],
        9 => vec![
            m3([
                [z(6, 1), n(0), n(0)],
                [n(0), z(6, 5), n(0)],
                [n(0), n(0), n(-1)],
            ]),
            m3([
                [n(0), iu().neg(), n(0)],
                [iu().neg(), n(0), n(0)],
                [n(0), n(0), iu()],
            ]),
        ],
        10 => vec![
            a6(),
            m3([
                [n(0), iu().neg(), n(0)],
                [iu().neg(), n(0), n(0)],
                [n(0), n(0), n(-1)],
            ]),
        ],
        _ => panic!("representation case out of range: {}", case),
    }
}

/// The two-dimensional faithful quaternion representation.
pub fn quaternion_2d_generators() -> Vec<CycMatrix> {
    vec![
        CycMatrix::from_rows(vec![
            vec![iu(), n(0)],
            vec![n(0), iu().neg()],
        ]),
        CycMatrix::from_rows(vec![
            vec![n(0), iu().neg()],
            vec![iu().neg(), n(0)],
        ]),
    ]
}

pub fn quaternion_2d(budget: &Budget) -> Result<MatrixGroup, GroupError> {
    MatrixGroup::closure(&quaternion_2d_generators(), budget)
}

/// Four-dimensional symmetric-group representation (two copies of the
/// two-dimensional standard representation).
pub fn s3_4d_generators() -> Vec<CycMatrix> {
    vec![
        m4i([
            [0, -1, 0, 0],
            [1, -1, 0, 0],
            [0, 0, 0, -1],
            [0, 0, 1, -1],
        ]),
        m4i([
            [-1, 1, 0, 0],
            [0, 1, 0, 0],
            [0, 0, -1, 1],
            [0, 0, 0, 1],
        ]),
    ]
}

/// Four-dimensional dihedral representation (two copies of the rotation
/// representation of the dihedral group of order 8).
pub fn d8_4d_generators() -> Vec<CycMatrix> {
    vec![
        m4i([
            [0, -1, 0, 0],
            [1, 0, 0, 0],
            [0, 0, 0, -1],
            [0, 0, 1, 0],
        ]),
        m4i([
            [1, 0, 0, 0],
            [0, -1, 0, 0],
            [0, 0, 1, 0],
            [0, 0, 0, -1],
        ]),
    ]
}

pub const FIXTURE_NAMES: [&str; 13] = [
    "case1-s3",
    "case2-d8",
    "case3-q8",
    "case4-q8",
    "case5-d10",
    "case6-d12",
    "case7-a4",
    "case8-bd3",
    "case9-bd3",
    "case10-bd3",
    "q8-2d",
    "s3-4d",
    "d8-4d",
];

pub fn fixture_generators(name: &str) -> Option<Vec<CycMatrix>> {
    let by_case = |c: usize| Some(representation_generators(c));
    match name {
        "case1-s3" => by_case(1),
        "case2-d8" => by_case(2),
        "case3-q8" => by_case(3),
        "case4-q8" => by_case(4),
        "case5-d10" => by_case(5),
        "case6-d12" => by_case(6),
        "case7-a4" => by_case(7),
        "case8-bd3" => by_case(8),
        "case9-bd3" => by_case(9),
        "case10-bd3" => by_case(10),
        "q8-2d" => Some(quaternion_2d_generators()),
        "s3-4d" => Some(s3_4d_generators()),
        "d8-4d" => Some(d8_4d_generators()),
        _ => None,
    }
}

pub fn fixture_group(name: &str, budget: &Budget) -> Option<Result<MatrixGroup, GroupError>> {
    fixture_generators(name).map(|gens| MatrixGroup::closure(&gens, budget))
}

/// Generator-enlargement polynomials for the alternating-group case, in
/// the canonical variable order of its computed presentation. They repair
/// the presentation so that the modification pipeline can reach a smooth
/// candidate.
pub fn a4_extension_polynomials() -> Vec<&'static str> {
    vec!["T1^2 - T2*T3", "T2^2 - T1*T3", "T3^2 - T1*T2"]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixture_orders() {
        let b = Budget::default();
        let expected = [
            ("case1-s3", 6),
            ("case2-d8", 8),
            ("case3-q8", 8),
            ("case4-q8", 8),
            ("case5-d10", 10),
            ("case6-d12", 12),
            ("case7-a4", 12),
            ("case8-bd3", 12),
            ("case9-bd3", 12),
            ("case10-bd3", 12),
            ("q8-2d", 8),
            ("s3-4d", 6),
            ("d8-4d", 8),
        ];
        for (name, order) in expected {
            let g = fixture_group(name, &b).unwrap().unwrap();
            assert_eq!(g.order(), order, "order of {}", name);
            assert!(!g.has_pseudo_reflections(), "{} must be small", name);
        }
    }

    #[test]
    fn sl_membership_matches_the_classification() {
        let b = Budget::default();
        // cases 1, 2, 3, 5, 6, 7, 8 lie in SL(3)
        let sl = [1usize, 2, 3, 5, 6, 7, 8];
        for c in 1..=10usize {
            let g = MatrixGroup::closure(&representation_generators(c), &b).unwrap();
            assert_eq!(g.is_in_sl(), sl.contains(&c), "case {}", c);
        }
    }
}
