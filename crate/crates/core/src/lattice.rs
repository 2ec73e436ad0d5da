//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels, Gale duals (finite-class-group and free variants), cokernel
//! presentations and primitive vectors.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub type Int = BigInt;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LatticeError {
    #[error("zero vector has no primitive form")]
    ZeroVector,
    #[error("degree matrix does not surject onto the torsion group")]
    NotSurjective,
    #[error("matrix dimensions do not match: {0}")]
    Shape(String),
}

/// Dense integer matrix, row major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    entries: Vec<Int>,
}

impl std::fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = Int;
    fn index(&self, (r, c): (usize, usize)) -> &Int {
        &self.entries[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut Int {
        &mut self.entries[r * self.cols + c]
    }
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![Int::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMatrix::zero(n, n);
        for i in 0..n {
            m[(i, i)] = Int::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Int>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Self {
        IntMatrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Int::from(x)).collect())
                .collect(),
        )
    }

    pub fn row(&self, r: usize) -> Vec<Int> {
        (0..self.cols).map(|c| self[(r, c)].clone()).collect()
    }

    pub fn col(&self, c: usize) -> Vec<Int> {
        (0..self.rows).map(|r| self[(r, c)].clone()).collect()
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t[(c, r)] = self[(r, c)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in mul");
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                if self[(r, k)].is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let add = &self[(r, k)] * &other[(k, c)];
                    out[(r, c)] += add;
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|r| (0..self.cols).map(|c| &self[(r, c)] * &v[c]).sum())
            .collect()
    }

    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows);
        let mut out = IntMatrix::zero(self.rows, self.cols + other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out[(r, c)] = self[(r, c)].clone();
            }
            for c in 0..other.cols {
                out[(r, self.cols + c)] = other[(r, c)].clone();
            }
        }
        out
    }

    pub fn vstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.cols);
        let mut rows: Vec<Vec<Int>> = (0..self.rows).map(|r| self.row(r)).collect();
        rows.extend((0..other.rows).map(|r| other.row(r)));
        IntMatrix::from_rows(rows)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for c in 0..self.cols {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }

    /// row[dst] += q * row[src]
    fn add_multiple_of_row(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let add = q * &self[(src, c)];
            self[(dst, c)] += add;
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + a, r * self.cols + b);
        }
    }

    fn negate_col(&mut self, c: usize) {
        for r in 0..self.rows {
            let v = -self[(r, c)].clone();
            self[(r, c)] = v;
        }
    }

    fn add_multiple_of_col(&mut self, dst: usize, src: usize, q: &Int) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let add = q * &self[(r, src)];
            self[(r, dst)] += add;
        }
    }

    /// Rank over Q, by fraction-free elimination on a scratch copy.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let piv = (rank..m.rows).find(|&r| !m[(r, col)].is_zero());
            let Some(piv) = piv else {
                col += 1;
                continue;
            };
            m.swap_rows(rank, piv);
            for r in rank + 1..m.rows {
                if m[(r, col)].is_zero() {
                    continue;
                }
                let a = m[(rank, col)].clone();
                let b = m[(r, col)].clone();
                for c in col..m.cols {
                    let v = &a * &m[(r, c)] - &b * &m[(rank, c)];
                    m[(r, c)] = v;
                }
            }
            rank += 1;
            col += 1;
        }
        rank
    }

    /// Determinant of a square matrix (Bareiss fraction-free elimination).
    pub fn det(&self) -> Int {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let n = self.rows;
        if n == 0 {
            return Int::one();
        }
        let mut m = self.clone();
        let mut sign = Int::one();
        let mut prev = Int::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let Some(sw) = (k + 1..n).find(|&r| !m[(r, k)].is_zero()) else {
                    return Int::zero();
                };
                m.swap_rows(k, sw);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&m[(k, k)] * &m[(i, j)] - &m[(i, k)] * &m[(k, j)]) / &prev;
                    m[(i, j)] = v;
                }
                m[(i, k)] = Int::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }
}

/// Row-style Hermite normal form: returns `(H, U)` with `U` unimodular,
/// `U * A = H`, `H` upper echelon with positive pivots and entries above
/// each pivot reduced to `[0, pivot)`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut pivot_row = 0;
    for col in 0..h.cols {
        if pivot_row >= h.rows {
            break;
        }
        // clear column below pivot_row by gcd steps
        loop {
            let mut best: Option<usize> = None;
            for r in pivot_row..h.rows {
                if !h[(r, col)].is_zero() {
                    best = match best {
                        None => Some(r),
                        Some(b) => {
                            if h[(r, col)].abs() < h[(b, col)].abs() {
                                Some(r)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else {
                break;
            };
            h.swap_rows(pivot_row, b);
            u.swap_rows(pivot_row, b);
            if h[(pivot_row, col)].is_negative() {
                h.negate_row(pivot_row);
                u.negate_row(pivot_row);
            }
            let mut done = true;
            let p = h[(pivot_row, col)].clone();
            for r in pivot_row + 1..h.rows {
                if h[(r, col)].is_zero() {
                    continue;
                }
                let q = -(h[(r, col)].div_floor(&p));
                h.add_multiple_of_row(r, pivot_row, &q);
                u.add_multiple_of_row(r, pivot_row, &q);
                if !h[(r, col)].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[(pivot_row, col)].is_zero() {
            continue;
        }
        // reduce entries above the pivot
        let p = h[(pivot_row, col)].clone();
        for r in 0..pivot_row {
            let q = -(h[(r, col)].div_floor(&p));
            h.add_multiple_of_row(r, pivot_row, &q);
            u.add_multiple_of_row(r, pivot_row, &q);
        }
        pivot_row += 1;
    }
    (h, u)
}

/// Smith normal form: `(D, U, V)` with `U * A * V = D`, `U`, `V` unimodular
/// and the diagonal in a divisibility chain `d1 | d2 | ...`.
pub fn smith_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let mut d = a.clone();
    let mut u = IntMatrix::identity(a.rows);
    let mut v = IntMatrix::identity(a.cols);
    let n = a.rows.min(a.cols);
    for t in 0..n {
        loop {
            // find a nonzero pivot in the trailing block, smallest |.| first
            let mut best: Option<(usize, usize)> = None;
            for r in t..d.rows {
                for c in t..d.cols {
                    if !d[(r, c)].is_zero() {
                        best = match best {
                            None => Some((r, c)),
                            Some((br, bc)) => {
                                if d[(r, c)].abs() < d[(br, bc)].abs() {
                                    Some((r, c))
                                } else {
                                    Some((br, bc))
                                }
                            }
                        };
                    }
                }
            }
            let Some((br, bc)) = best else {
                return (d, u, v); // trailing block is zero: done
            };
            d.swap_rows(t, br);
            u.swap_rows(t, br);
            d.swap_cols(t, bc);
            v.swap_cols(t, bc);
            if d[(t, t)].is_negative() {
                d.negate_row(t);
                u.negate_row(t);
            }
            let p = d[(t, t)].clone();
            let mut dirty = false;
            for r in t + 1..d.rows {
                if !d[(r, t)].is_zero() {
                    let q = -(d[(r, t)].div_floor(&p));
                    d.add_multiple_of_row(r, t, &q);
                    u.add_multiple_of_row(r, t, &q);
                    if !d[(r, t)].is_zero() {
                        dirty = true;
                    }
                }
            }
            for c in t + 1..d.cols {
                if !d[(t, c)].is_zero() {
                    let q = -(d[(t, c)].div_floor(&p));
                    d.add_multiple_of_col(c, t, &q);
                    v.add_multiple_of_col(c, t, &q);
                    if !d[(t, c)].is_zero() {
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // pivot must divide the whole trailing block
            let mut fixed = false;
            'outer: for r in t + 1..d.rows {
                for c in t + 1..d.cols {
                    if !(&d[(r, c)] % &p).is_zero() {
                        d.add_multiple_of_row(t, r, &Int::one());
                        u.add_multiple_of_row(t, r, &Int::one());
                        fixed = true;
                        break 'outer;
                    }
                }
            }
            if !fixed {
                break;
            }
        }
    }
    (d, u, v)
}

/// Basis of the right kernel `{x : A x = 0}` as matrix rows. The rows form a
/// basis of the saturated kernel lattice (kernels of integer maps are
/// saturated), HNF-canonicalized.
pub fn kernel_basis(a: &IntMatrix) -> IntMatrix {
    // U * A^T = H; rows of U matching zero rows of H span ker(x -> A x).
    let (h, u) = hermite_normal_form(&a.transpose());
    let mut rows = Vec::new();
    for r in 0..h.rows {
        if (0..h.cols).all(|c| h[(r, c)].is_zero()) {
            rows.push(u.row(r));
        }
    }
    if rows.is_empty() {
        return IntMatrix::zero(0, a.cols);
    }
    let (hk, _) = hermite_normal_form(&IntMatrix::from_rows(rows));
    // HNF keeps the row count; kernel basis rows are independent
    hk
}

/// Do the rows of `a` and `b` span the same lattice?
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    if a.cols != b.cols {
        return false;
    }
    let (ha, _) = hermite_normal_form(a);
    let (hb, _) = hermite_normal_form(b);
    let trim = |m: &IntMatrix| -> Vec<Vec<Int>> {
        (0..m.rows)
            .map(|r| m.row(r))
            .filter(|row| row.iter().any(|x| !x.is_zero()))
            .collect()
    };
    trim(&ha) == trim(&hb)
}

/// Membership of `v` in the lattice spanned by the rows of `a`.
pub fn in_row_lattice(a: &IntMatrix, v: &[Int]) -> bool {
    let stacked = a.vstack(&IntMatrix::from_rows(vec![v.to_vec()]));
    same_row_lattice(a, &stacked)
}

/// Structure of a finitely generated abelian group: free rank plus torsion
/// moduli in a divisibility chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroupSpec {
    pub free_rank: usize,
    pub torsion_moduli: Vec<Int>,
}

impl AbelianGroupSpec {
    pub fn trivial() -> Self {
        AbelianGroupSpec {
            free_rank: 0,
            torsion_moduli: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion_moduli.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion_moduli.is_empty()
    }

    pub fn torsion_order(&self) -> Int {
        self.torsion_moduli
            .iter()
            .fold(Int::one(), |acc, m| acc * m)
    }

    /// Number of coordinates a degree tuple carries (torsion first, then free).
    pub fn coords(&self) -> usize {
        self.torsion_moduli.len() + self.free_rank
    }
}

impl std::fmt::Display for AbelianGroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts = Vec::new();
        if self.free_rank > 0 {
            parts.push(format!("Z^{}", self.free_rank));
        }
        for m in &self.torsion_moduli {
            parts.push(format!("Z/{}", m));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" x "))
        }
    }
}

/// Gale dual of a degree matrix into a finite group `⊕ Z/n_i`.
///
/// `q0` has one row per modulus; returns the square matrix whose rows form
/// the HNF basis of `ker(q0) = {v : q0 v ≡ 0 mod (n_i)}`. Its columns span
/// the cone of the canonical toric ambient variety.
pub fn finite_gale_dual(q0: &IntMatrix, moduli: &[Int]) -> Result<IntMatrix, LatticeError> {
    if q0.rows != moduli.len() {
        return Err(LatticeError::Shape(format!(
            "{} rows vs {} moduli",
            q0.rows,
            moduli.len()
        )));
    }
    let s = q0.cols;
    let k = q0.rows;
    // surjectivity onto ⊕ Z/n_i: [Q0 | diag(n)] must have SNF all ones
    let mut diag = IntMatrix::zero(k, k);
    for i in 0..k {
        diag[(i, i)] = moduli[i].clone();
    }
    if k > 0 {
        let m = q0.hstack(&diag);
        let (d, _, _) = smith_normal_form(&m);
        for i in 0..k {
            if d[(i, i)].abs() != Int::one() {
                return Err(LatticeError::NotSurjective);
            }
        }
    }
    if k == 0 {
        return Ok(IntMatrix::identity(s));
    }
    // kernel of v -> Q0 v mod (n_i): v-parts of ker [Q0 | diag(n)]
    let m = q0.hstack(&diag);
    let kb = kernel_basis(&m);
    let rows: Vec<Vec<Int>> = (0..kb.rows).map(|r| kb.row(r)[..s].to_vec()).collect();
    let (h, _) = hermite_normal_form(&IntMatrix::from_rows(rows));
    debug_assert_eq!(h.rows, s);
    Ok(h)
}

/// Degree matrix with values in `Z^free ⊕ (⊕ Z/n_i)`: one column per
/// variable, free rows first, then torsion rows tagged with their moduli.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeMatrix {
    pub free: IntMatrix,
    pub torsion: Vec<(Int, Vec<Int>)>, // (modulus, row)
}

impl DegreeMatrix {
    pub fn ncols(&self) -> usize {
        if self.free.rows > 0 {
            self.free.cols
        } else {
            self.torsion.first().map_or(self.free.cols, |(_, r)| r.len())
        }
    }

    pub fn spec(&self) -> AbelianGroupSpec {
        AbelianGroupSpec {
            free_rank: self.free.rows,
            torsion_moduli: self.torsion.iter().map(|(m, _)| m.clone()).collect(),
        }
    }

    pub fn trivial(ncols: usize) -> Self {
        DegreeMatrix {
            free: IntMatrix::zero(0, ncols),
            torsion: Vec::new(),
        }
    }

    pub fn torsion_only(rows: Vec<(Int, Vec<Int>)>, ncols: usize) -> Self {
        DegreeMatrix {
            free: IntMatrix::zero(0, ncols),
            torsion: rows,
        }
    }

    /// Degree of the product monomial with exponent vector `e`.
    pub fn degree_of(&self, e: &[Int]) -> Vec<Int> {
        let mut out = Vec::new();
        for r in 0..self.free.rows {
            out.push((0..self.free.cols).map(|c| &self.free[(r, c)] * &e[c]).sum());
        }
        for (m, row) in &self.torsion {
            let raw: Int = row.iter().zip(e).map(|(a, b)| a * b).sum();
            out.push(raw.mod_floor(m));
        }
        out
    }

    /// True iff all listed exponent vectors share the same degree.
    pub fn is_homogeneous(&self, exps: &[Vec<Int>]) -> bool {
        let Some(first) = exps.first() else {
            return true;
        };
        let d = self.degree_of(first);
        exps.iter().all(|e| self.degree_of(e) == d)
    }

    /// `Q * P^T = 0` exactly on free rows, mod the modulus on torsion rows.
    pub fn annihilates(&self, p: &IntMatrix) -> bool {
        // columns of p are the rays; p has ncols() columns
        if p.cols != self.ncols() {
            return false;
        }
        // for each degree row q and each row of P: sum_c q[c] * P[row, c] = 0
        for pr in 0..p.rows {
            for fr in 0..self.free.rows {
                let s: Int = (0..p.cols).map(|c| &self.free[(fr, c)] * &p[(pr, c)]).sum();
                if !s.is_zero() {
                    return false;
                }
            }
            for (m, row) in &self.torsion {
                let s: Int = (0..p.cols).map(|c| &row[c] * &p[(pr, c)]).sum();
                if !s.mod_floor(m).is_zero() {
                    return false;
                }
            }
        }
        true
    }
}

/// Gale dual of an enlarged ray matrix: presentation of `coker(P^T)`.
///
/// `p` is `n x r` with full row rank `n`; the cokernel of
/// `P^T : Z^n -> Z^r` has free rank `r - n` plus torsion given by the
/// nontrivial invariant factors of `P`.
pub fn cokernel_gale(p: &IntMatrix) -> (DegreeMatrix, AbelianGroupSpec) {
    let pt = p.transpose(); // r x n
    let (d, u, _v) = smith_normal_form(&pt);
    let r = pt.rows;
    let n = pt.cols;
    let mut torsion = Vec::new();
    let mut free_rows = Vec::new();
    for i in 0..r {
        let di = if i < n { d[(i, i)].clone() } else { Int::zero() };
        if di.is_zero() {
            free_rows.push(u.row(i));
        } else if di.abs() > Int::one() {
            torsion.push((di.abs(), u.row(i)));
        }
    }
    let free = if free_rows.is_empty() {
        IntMatrix::zero(0, r)
    } else {
        IntMatrix::from_rows(free_rows)
    };
    let dm = DegreeMatrix { free, torsion };
    let spec = dm.spec();
    (dm, spec)
}

/// `v` divided by the gcd of its entries, sign-normalized so the first
/// nonzero entry is positive. Returns the normalized vector and whether the
/// sign was flipped.
pub fn primitive(v: &[Int]) -> Result<(Vec<Int>, bool), LatticeError> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    let mut out: Vec<Int> = v.iter().map(|x| x / &g).collect();
    let flip = match out.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => true,
        _ => false,
    };
    if flip {
        for x in &mut out {
            *x = -x.clone();
        }
    }
    Ok((out, flip))
}

/// Primitive form keeping the original orientation.
pub fn primitive_oriented(v: &[Int]) -> Result<Vec<Int>, LatticeError> {
    let mut g = Int::zero();
    for x in v {
        g = g.gcd(x);
    }
    if g.is_zero() {
        return Err(LatticeError::ZeroVector);
    }
    Ok(v.iter().map(|x| x / &g).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    #[test]
    fn hnf_identity_and_swap() {
        let (h, u) = hermite_normal_form(&IntMatrix::identity(3));
        assert_eq!(h, IntMatrix::identity(3));
        assert_eq!(u, IntMatrix::identity(3));

        let a = m(&[vec![0, 1], vec![1, 0]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, IntMatrix::identity(2));
        assert_eq!(u.mul(&a), h);
        assert_eq!(u.det().abs(), Int::one());
    }

    #[test]
    fn hnf_already_hermite() {
        let a = m(&[vec![2, 4], vec![0, 6]]);
        let (h, u) = hermite_normal_form(&a);
        // entries above pivot reduced: 4 mod 6 stays 4
        assert_eq!(h, m(&[vec![2, 4], vec![0, 6]]));
        assert_eq!(u.mul(&a), h);
    }

    #[test]
    fn snf_examples() {
        let a = m(&[vec![2, 0], vec![0, 2]]);
        let (d, u, v) = smith_normal_form(&a);
        assert_eq!(d, m(&[vec![2, 0], vec![0, 2]]));
        assert_eq!(u.mul(&a).mul(&v), d);

        // d1 = gcd of entries = 2, d1*d2 = |det| = 12
        let a = m(&[vec![2, 4], vec![0, 6]]);
        let (d, u, v) = smith_normal_form(&a);
        assert_eq!(d, m(&[vec![2, 0], vec![0, 6]]));
        assert_eq!(u.mul(&a).mul(&v), d);
        assert_eq!(u.det().abs(), Int::one());
        assert_eq!(v.det().abs(), Int::one());

        let z = IntMatrix::zero(2, 3);
        let (d, _, _) = smith_normal_form(&z);
        assert!(d.is_zero());
    }

    #[test]
    fn kernel_of_projection() {
        let a = m(&[vec![1, 1, 1]]);
        let k = kernel_basis(&a);
        assert_eq!(k.rows, 2);
        for r in 0..k.rows {
            let row = k.row(r);
            let s: Int = row.iter().sum();
            assert!(s.is_zero());
        }
    }

    #[test]
    fn finite_gale_dual_q8() {
        // degree matrix of the (Z/2)^2-graded three-generator ring
        let q0 = m(&[vec![0, 1, 1], vec![1, 0, 1]]);
        let moduli = vec![Int::from(2), Int::from(2)];
        let p0 = finite_gale_dual(&q0, &moduli).unwrap();
        // kernel is {v : v1 ≡ v2 ≡ v3 mod 2}; HNF basis rows
        let expected = m(&[vec![1, 1, 1], vec![0, 2, 0], vec![0, 0, 2]]);
        assert!(same_row_lattice(&p0, &expected));
        assert_eq!(p0, expected);
        assert_eq!(p0.det().abs(), Int::from(4));
        // columns span the expected cone generators
        assert_eq!(p0.col(0), vec![Int::from(1), Int::zero(), Int::zero()]);
        assert_eq!(p0.col(1), vec![Int::from(1), Int::from(2), Int::zero()]);
        assert_eq!(p0.col(2), vec![Int::from(1), Int::zero(), Int::from(2)]);
    }

    #[test]
    fn finite_gale_dual_trivial_and_1d() {
        let q0 = IntMatrix::zero(0, 4);
        let p0 = finite_gale_dual(&q0, &[]).unwrap();
        assert_eq!(p0, IntMatrix::identity(4));

        let q0 = m(&[vec![1]]);
        let p0 = finite_gale_dual(&q0, &[Int::from(2)]).unwrap();
        assert_eq!(p0, m(&[vec![2]]));
    }

    #[test]
    fn finite_gale_dual_rejects_nonsurjective() {
        // column 2 generates only the even classes of Z/4
        let q0 = m(&[vec![2]]);
        assert_eq!(
            finite_gale_dual(&q0, &[Int::from(4)]),
            Err(LatticeError::NotSurjective)
        );
    }

    #[test]
    fn cokernel_gale_examples() {
        let p = IntMatrix::identity(3);
        let (dm, spec) = cokernel_gale(&p);
        assert!(spec.is_trivial());
        assert_eq!(dm.free.rows, 0);

        let p = m(&[vec![2]]);
        let (dm, spec) = cokernel_gale(&p);
        assert_eq!(spec.free_rank, 0);
        assert_eq!(spec.torsion_moduli, vec![Int::from(2)]);
        assert!(dm.annihilates(&p));
    }

    #[test]
    fn cokernel_gale_exactness() {
        // P = [P0 | v1..v4] for the quaternion example: free rank 4
        let p = m(&[
            vec![1, 1, 1, 3, 2, 2, 2],
            vec![0, 2, 0, 2, 1, 2, 1],
            vec![0, 0, 2, 2, 2, 1, 1],
        ]);
        let (dm, spec) = cokernel_gale(&p);
        assert_eq!(spec.free_rank, 4);
        assert!(spec.is_free());
        assert!(dm.annihilates(&p));
        assert_eq!(dm.free.rank() + p.transpose().rank(), 7);
    }

    #[test]
    fn primitive_examples() {
        let v: Vec<Int> = vec![2.into(), 4.into(), 6.into()];
        let (p, flip) = primitive(&v).unwrap();
        assert_eq!(p, vec![Int::from(1), Int::from(2), Int::from(3)]);
        assert!(!flip);

        let v: Vec<Int> = vec![3.into(), 2.into(), 2.into()];
        let (p, _) = primitive(&v).unwrap();
        assert_eq!(p, vec![Int::from(3), Int::from(2), Int::from(2)]);

        let v: Vec<Int> = vec![0.into(), (-2).into()];
        let (p, flip) = primitive(&v).unwrap();
        assert_eq!(p, vec![Int::from(0), Int::from(1)]);
        assert!(flip);

        assert!(primitive(&[Int::zero()]).is_err());
    }

    #[test]
    fn unimodularity_and_reconstruction() {
        let cases = vec![
            m(&[vec![4, 6, 2], vec![6, 12, 9], vec![0, 5, 5]]),
            m(&[vec![0, 0], vec![0, 0]]),
            m(&[vec![7, 3], vec![2, 8], vec![1, 1]]),
        ];
        for a in cases {
            let (h, u) = hermite_normal_form(&a);
            assert_eq!(u.mul(&a), h);
            if a.rows == a.cols || a.rows <= a.cols {
                assert_eq!(u.det().abs(), Int::one());
            } else {
                assert_eq!(u.det().abs(), Int::one());
            }
            let (d, p, q) = smith_normal_form(&a);
            assert_eq!(p.mul(&a).mul(&q), d);
            assert_eq!(p.det().abs(), Int::one());
            assert_eq!(q.det().abs(), Int::one());
            // divisibility chain
            let n = a.rows.min(a.cols);
            for i in 0..n.saturating_sub(1) {
                if !d[(i + 1, i + 1)].is_zero() {
                    assert!(!d[(i, i)].is_zero());
                    assert!((&d[(i + 1, i + 1)] % &d[(i, i)]).is_zero());
                }
            }
        }
    }
}
