//! Exact integer matrices: Smith and Hermite forms, kernels, and linear
//! Diophantine solving.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Dense integer matrix in row-major order.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            entries: alloc::vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                found: entries.len(),
            });
        }
        Ok(IntMatrix {
            rows,
            cols,
            entries,
        })
    }

    /// Builds a matrix from rows; `cols` is needed for the zero-row case.
    pub fn from_rows(cols: usize, rows: Vec<Vec<BigInt>>) -> Result<IntMatrix> {
        let r = rows.len();
        let mut entries = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(IntMatrix {
            rows: r,
            cols,
            entries,
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<IntMatrix> {
        let cols = rows.first().map_or(0, |r| r.len());
        IntMatrix::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect(),
        )
    }

    /// The matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<BigInt>]) -> Result<IntMatrix> {
        let mut m = IntMatrix::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = IntMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                found: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = v / &prev;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    pub fn is_unimodular(&self) -> bool {
        self.rows == self.cols && self.determinant().is_ok_and(|d| d.abs().is_one())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[dst] += k * row[src]
    fn add_row_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * k;
            self[(dst, j)] += v;
        }
    }

    /// col[dst] += k * col[src]
    fn add_col_multiple(&mut self, dst: usize, src: usize, k: &BigInt) {
        for i in 0..self.rows {
            let v = &self[(i, src)] * k;
            self[(i, dst)] += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -core::mem::take(&mut self[(i, j)]);
            self[(i, j)] = v;
        }
    }
}

impl core::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;

    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.entries[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.entries[i * self.cols + j]
    }
}

/// `U * A * V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | ...`, all `d_i >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Smith {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl Smith {
    /// Number of nonzero invariant factors.
    pub fn rank(&self) -> usize {
        (0..self.d.rows.min(self.d.cols))
            .take_while(|&i| !self.d[(i, i)].is_zero())
            .count()
    }

    pub fn invariant_factors(&self) -> Vec<BigInt> {
        (0..self.rank()).map(|i| self.d[(i, i)].clone()).collect()
    }
}

/// Position of the smallest nonzero |entry| in the block `[t.., t..]`.
fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..d.rows {
        for j in t..d.cols {
            let v = &d[(i, j)];
            if v.is_zero() {
                continue;
            }
            if best.is_none_or(|(bi, bj)| v.abs() < d[(bi, bj)].abs()) {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

pub fn smith_normal_form(a: &IntMatrix) -> Smith {
    let (m, n) = (a.rows, a.cols);
    let mut d = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(n);

    for t in 0..m.min(n) {
        let Some((pi, pj)) = min_pivot(&d, t) else {
            break;
        };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -d[(i, t)].div_floor(&d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..n {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -d[(t, j)].div_floor(&d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot is left over: make it the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !d[(i, t)].is_zero() && d[(i, t)].abs() < d[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..n {
                    if !d[(t, j)].is_zero() && d[(t, j)].abs() < d[best].abs() {
                        best = (t, j);
                    }
                }
                d.swap_rows(t, best.0);
                u.swap_rows(t, best.0);
                d.swap_cols(t, best.1);
                v.swap_cols(t, best.1);
                continue;
            }
            let pivot = d[(t, t)].clone();
            let offender =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !d[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    Smith { u, d, v }
}

/// Row-style Hermite normal form: echelon rows with positive pivots and the
/// entries above each pivot reduced into `[0, pivot)`. Zero rows are dropped,
/// so the result is a basis of the row lattice.
pub fn row_hermite_form(a: &IntMatrix) -> IntMatrix {
    let mut rows = a.to_rows();
    let cols = a.cols;
    let mut r = 0;
    for col in 0..cols {
        if r == rows.len() {
            break;
        }
        loop {
            let best = (r..rows.len())
                .filter(|&k| !rows[k][col].is_zero())
                .min_by(|&x, &y| rows[x][col].abs().cmp(&rows[y][col].abs()));
            let Some(best) = best else { break };
            rows.swap(r, best);
            let mut done = true;
            for k in r + 1..rows.len() {
                if rows[k][col].is_zero() {
                    continue;
                }
                let q = rows[k][col].div_floor(&rows[r][col]);
                let (head, tail) = rows.split_at_mut(k);
                for (x, p) in tail[0].iter_mut().zip(&head[r]) {
                    *x -= &q * p;
                }
                done &= tail[0][col].is_zero();
            }
            if done {
                break;
            }
        }
        if rows[r][col].is_zero() {
            continue;
        }
        if rows[r][col].is_negative() {
            for x in rows[r].iter_mut() {
                *x = -core::mem::take(x);
            }
        }
        for k in 0..r {
            let q = rows[k][col].div_floor(&rows[r][col]);
            if q.is_zero() {
                continue;
            }
            let (head, tail) = rows.split_at_mut(r);
            for (x, p) in head[k].iter_mut().zip(&tail[0]) {
                *x -= &q * p;
            }
        }
        r += 1;
    }
    rows.truncate(r);
    IntMatrix::from_rows(cols, rows).expect("row lengths preserved")
}

/// A saturated basis of `{v in Z^cols : A v = 0}`, Hermite-reduced so it is
/// unique (echelon, first nonzero entry positive).
pub fn kernel_basis(a: &IntMatrix) -> Vec<Vec<BigInt>> {
    let smith = smith_normal_form(a);
    let rank = smith.rank();
    let raw: Vec<Vec<BigInt>> = (rank..a.cols).map(|j| smith.v.column(j)).collect();
    if raw.is_empty() {
        return raw;
    }
    let m = IntMatrix::from_rows(a.cols, raw).expect("columns of V have length cols");
    row_hermite_form(&m).to_rows()
}

/// Some integer solution of `A x = b`, or `None` if there is none.
pub fn solve_linear(a: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != a.rows {
        return Err(Error::DimensionMismatch {
            expected: a.rows,
            found: b.len(),
        });
    }
    // A x = b  <=>  D y = U b  with  x = V y
    let smith = smith_normal_form(a);
    let ub = smith.u.mul_vec(b)?;
    let rank = smith.rank();
    let mut y = alloc::vec![BigInt::zero(); a.cols];
    for (i, rhs) in ub.iter().enumerate() {
        if i < rank {
            let (q, r) = rhs.div_rem(&smith.d[(i, i)]);
            if !r.is_zero() {
                return Ok(None);
            }
            y[i] = q;
        } else if !rhs.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(smith.v.mul_vec(&y)?))
}

/// Every point of the lattice spanned by `basis` (vectors of length `dim`)
/// whose coordinates all lie in `[-bound, bound]`, in no particular order.
///
/// The basis is brought to echelon form first; each coefficient is then
/// confined by its pivot coordinate, so the search is finite and exact.
pub fn lattice_points_in_box(
    dim: usize,
    basis: &[Vec<BigInt>],
    bound: &BigInt,
) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    if bound.is_negative() {
        return out;
    }
    if basis.is_empty() {
        out.push(alloc::vec![BigInt::zero(); dim]);
        return out;
    }
    let m = IntMatrix::from_rows(dim, basis.to_vec()).expect("basis vectors have length dim");
    let h = row_hermite_form(&m).to_rows();
    let pivots: Vec<usize> = h
        .iter()
        .map(|r| r.iter().position(|x| !x.is_zero()).expect("nonzero rows"))
        .collect();
    let mut partial = alloc::vec![BigInt::zero(); dim];
    box_search(&h, &pivots, 0, &mut partial, bound, &mut out);
    out
}

fn box_search(
    rows: &[Vec<BigInt>],
    pivots: &[usize],
    k: usize,
    partial: &mut Vec<BigInt>,
    bound: &BigInt,
    out: &mut Vec<Vec<BigInt>>,
) {
    if k == rows.len() {
        if partial.iter().all(|x| x.abs() <= *bound) {
            out.push(partial.clone());
        }
        return;
    }
    let p = pivots[k];
    let piv = &rows[k][p];
    let lo = (-bound - &partial[p]).div_ceil(piv);
    let hi = (bound - &partial[p]).div_floor(piv);
    // coordinates left of the next pivot are final once row k is chosen
    let settled = pivots.get(k + 1).copied().unwrap_or(partial.len());
    let mut c = lo;
    while c <= hi {
        for (x, r) in partial.iter_mut().zip(&rows[k]) {
            *x += &c * r;
        }
        if partial[..settled].iter().all(|x| x.abs() <= *bound) {
            box_search(rows, pivots, k + 1, partial, bound, out);
        }
        for (x, r) in partial.iter_mut().zip(&rows[k]) {
            *x -= &c * r;
        }
        c += 1;
    }
}

/// Nonzero with coprime entries.
pub fn is_primitive(v: &[BigInt]) -> bool {
    let g = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    g.is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn check_smith(a: &IntMatrix, s: &Smith) {
        let prod = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        assert_eq!(prod, s.d);
        assert!(s.u.is_unimodular());
        assert!(s.v.is_unimodular());
        for i in 0..s.d.rows() {
            for j in 0..s.d.cols() {
                if i != j {
                    assert!(s.d[(i, j)].is_zero());
                } else {
                    assert!(!s.d[(i, i)].is_negative());
                }
            }
        }
        let f = s.invariant_factors();
        for w in f.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn smith_examples() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 3]]).unwrap();
        let s = smith_normal_form(&a);
        check_smith(&a, &s);
        assert_eq!(s.d, IntMatrix::from_i64(&[&[1, 0], &[0, 6]]).unwrap());

        let z = IntMatrix::zeros(2, 3);
        let s = smith_normal_form(&z);
        assert_eq!(s.d, z);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));

        let id = IntMatrix::identity(3);
        let s = smith_normal_form(&id);
        check_smith(&id, &s);
        assert_eq!(s.d, id);
    }

    #[test]
    fn smith_rectangular() {
        let a = IntMatrix::from_i64(&[&[4, 6, 2], &[2, 4, 8]]).unwrap();
        let s = smith_normal_form(&a);
        check_smith(&a, &s);
        assert_eq!(s.invariant_factors(), big(&[2, 2]));
    }

    #[test]
    fn kernel_examples() {
        let a = IntMatrix::from_i64(&[&[1, 1]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![big(&[1, -1])]);
        let a = IntMatrix::from_i64(&[&[2, 1], &[1, 1]]).unwrap();
        assert!(kernel_basis(&a).is_empty());
        let a = IntMatrix::zeros(2, 2);
        assert_eq!(kernel_basis(&a), vec![big(&[1, 0]), big(&[0, 1])]);
    }

    #[test]
    fn kernel_is_saturated() {
        // the kernel of [2, 4] is spanned by (2, -1), not by (4, -2)
        let a = IntMatrix::from_i64(&[&[2, 4]]).unwrap();
        assert_eq!(kernel_basis(&a), vec![big(&[2, -1])]);
    }

    #[test]
    fn solve_examples() {
        let a = IntMatrix::from_i64(&[&[2]]).unwrap();
        assert_eq!(solve_linear(&a, &big(&[4])).unwrap(), Some(big(&[2])));
        assert_eq!(solve_linear(&a, &big(&[3])).unwrap(), None);
        let a = IntMatrix::from_i64(&[&[1, 0], &[0, 3]]).unwrap();
        assert_eq!(solve_linear(&a, &big(&[5, 6])).unwrap(), Some(big(&[5, 2])));
        assert!(solve_linear(&a, &big(&[1])).is_err());
    }

    #[test]
    fn primitive_examples() {
        assert!(is_primitive(&big(&[2, 3])));
        assert!(!is_primitive(&big(&[2, 4])));
        assert!(!is_primitive(&big(&[0, 0])));
        assert!(is_primitive(&big(&[0, -1])));
    }

    #[test]
    fn determinant_small() {
        let a = IntMatrix::from_i64(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).unwrap();
        assert_eq!(a.determinant().unwrap(), BigInt::from(-2));
        assert_eq!(IntMatrix::identity(0).determinant().unwrap(), BigInt::one());
    }

    #[test]
    fn hermite_form_reduces_above_pivots() {
        let a = IntMatrix::from_i64(&[&[2, 3, 1], &[4, 1, 5]]).unwrap();
        let h = row_hermite_form(&a);
        assert_eq!(h, IntMatrix::from_i64(&[&[2, 3, 1], &[0, 5, -3]]).unwrap());
    }
}
