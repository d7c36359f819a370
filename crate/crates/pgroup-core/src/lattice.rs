//! Finite-order integer-matrix actions on lattices Z^n: unimodular closures,
//! invariant sublattices via exact integer kernels, and cyclicity tests.
//!
//! Sublattices are canonicalized by the Hermite normal form of their basis;
//! kernels are computed through the Smith normal form, whose right transform
//! gives a saturated basis directly.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GroupElement};

/// A square matrix with arbitrary-precision integer entries.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    dim: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn from_entries(dim: usize, entries: Vec<BigInt>) -> Result<IntMatrix> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::ShapeError(format!(
                "expected {dim}x{dim} integer entries, got {}",
                entries.len()
            )));
        }
        Ok(IntMatrix { dim, entries })
    }

    pub fn from_rows(rows: &[&[i64]]) -> IntMatrix {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), dim, "ragged rows");
                r.iter().map(|&v| BigInt::from(v))
            })
            .collect();
        IntMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> IntMatrix {
        let mut entries = vec![BigInt::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = BigInt::one();
        }
        IntMatrix { dim, entries }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, r: usize, c: usize) -> &BigInt {
        &self.entries[r * self.dim + c]
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.dim).map(|r| self.entries[r * self.dim..(r + 1) * self.dim].to_vec()).collect()
    }

    pub fn mul(&self, rhs: &IntMatrix) -> Result<IntMatrix> {
        if self.dim != rhs.dim {
            return Err(Error::ShapeError(format!("{} vs {}", self.dim, rhs.dim)));
        }
        let n = self.dim;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.entry(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.entry(k, j);
                    if !b.is_zero() {
                        entries[i * n + j] += a * b;
                    }
                }
            }
        }
        Ok(IntMatrix { dim: n, entries })
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> BigInt {
        let n = self.dim;
        let mut m: Vec<Vec<BigInt>> = self.rows();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n {
            if m[k][k].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                    return BigInt::zero();
                };
                m.swap(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev;
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if sign < 0 { -d } else { d }
    }

    pub fn is_unimodular(&self) -> bool {
        let d = self.det();
        d.abs().is_one()
    }

    /// Exact inverse of a unimodular matrix via the adjugate.
    pub fn invert_unimodular(&self) -> Result<IntMatrix> {
        let d = self.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
        let n = self.dim;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                // Cofactor expansion: adj[j][i] = (-1)^{i+j} minor(i, j).
                let minor = self.minor(i, j);
                let c = if (i + j) % 2 == 0 { minor } else { -minor };
                entries[j * n + i] = if d.is_one() { c } else { -c };
            }
        }
        Ok(IntMatrix { dim: n, entries })
    }

    fn minor(&self, row: usize, col: usize) -> BigInt {
        let n = self.dim;
        if n == 1 {
            return BigInt::one();
        }
        let rows: Vec<Vec<BigInt>> = (0..n)
            .filter(|&r| r != row)
            .map(|r| (0..n).filter(|&c| c != col).map(|c| self.entry(r, c).clone()).collect())
            .collect();
        IntMatrix { dim: n - 1, entries: rows.into_iter().flatten().collect() }.det()
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let e = self.entry(i, j);
                if i == j { e.is_one() } else { e.is_zero() }
            })
        })
    }

    pub fn element_order(&self, cap: u64) -> Result<u64> {
        let mut cur = self.clone();
        let mut m = 1;
        while !cur.is_identity() {
            m += 1;
            if m > cap {
                return Err(Error::OrderCapExceeded { cap });
            }
            cur = cur.mul(self)?;
        }
        Ok(m)
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.dim {
            return Err(Error::ShapeError(format!("vector {} vs dim {}", v.len(), self.dim)));
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.entry(i, j) * &v[j]).sum())
            .collect())
    }

    pub fn canon_str(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| e.to_string()).collect();
        parts.join(",")
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            writeln!(
                f,
                "[{}]",
                (0..self.dim).map(|j| self.entry(i, j).to_string()).collect::<Vec<_>>().join(", ")
            )?;
        }
        Ok(())
    }
}

impl GroupElement for IntMatrix {
    fn op(&self, rhs: &Self) -> Self {
        self.mul(rhs).expect("matching dimensions within one group")
    }

    fn try_inverse(&self) -> Option<Self> {
        self.invert_unimodular().ok()
    }

    fn identity_like(&self) -> Self {
        IntMatrix::identity(self.dim)
    }

    fn canon_key(&self) -> String {
        self.canon_str()
    }
}

/// Closure of unimodular integer generators; `NotUnimodular` when any
/// generator has determinant other than +/-1.
pub fn int_closure(generators: &[IntMatrix], caps: &Caps) -> Result<FiniteMatrixGroup<IntMatrix>> {
    for g in generators {
        let d = g.det();
        if !d.abs().is_one() {
            return Err(Error::NotUnimodular { det: d.to_string() });
        }
    }
    FiniteMatrixGroup::closure(generators, caps)
}

/// A sublattice of Z^n given by a Hermite-normal-form basis (rows).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sublattice {
    rank: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Sublattice {
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }
}

/// Row-style Hermite normal form: pivots positive and strictly to the right
/// as rows descend, entries above each pivot reduced into [0, pivot).
pub fn hermite_normal_form(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    if rows.is_empty() {
        return rows;
    }
    let ncols = rows[0].len();
    let mut top = 0;
    for col in 0..ncols {
        // Euclidean elimination below `top` in this column.
        loop {
            let mut best: Option<usize> = None;
            for r in top..rows.len() {
                if !rows[r][col].is_zero()
                    && best.map(|b| rows[r][col].abs() < rows[b][col].abs()).unwrap_or(true)
                {
                    best = Some(r);
                }
            }
            let Some(b) = best else { break };
            rows.swap(top, b);
            let mut any = false;
            for r in top + 1..rows.len() {
                if !rows[r][col].is_zero() {
                    let q = floor_div(&rows[r][col], &rows[top][col]);
                    for c in 0..ncols {
                        let delta = &q * &rows[top][c];
                        rows[r][c] -= delta;
                    }
                    if !rows[r][col].is_zero() {
                        any = true;
                    }
                }
            }
            if !any {
                break;
            }
        }
        if top < rows.len() && !rows[top][col].is_zero() {
            if rows[top][col].is_negative() {
                for c in 0..ncols {
                    rows[top][c] = -rows[top][c].clone();
                }
            }
            // Reduce entries above the pivot.
            for r in 0..top {
                let q = floor_div(&rows[r][col], &rows[top][col]);
                if !q.is_zero() {
                    for c in 0..ncols {
                        let delta = &q * &rows[top][c];
                        rows[r][c] -= delta;
                    }
                }
            }
            top += 1;
        }
    }
    rows.truncate(top);
    rows
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    let (q, r) = num_integer::Integer::div_rem(a, b);
    if r.is_zero() || (r.is_negative() == b.is_negative()) {
        q
    } else {
        q - BigInt::one()
    }
}

/// Smith normal form of a rectangular integer matrix: returns (U, D, V)
/// with U m x m and V n x n unimodular, D = U M V diagonal with each
/// diagonal entry dividing the next.
pub fn smith_normal_form(m: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let nrows = m.len();
    let ncols = if nrows == 0 { 0 } else { m[0].len() };
    let mut d: Vec<Vec<BigInt>> = m.to_vec();
    let mut u = eye(nrows);
    let mut v = eye(ncols);
    let rank_bound = nrows.min(ncols);
    let mut t = 0;
    while t < rank_bound {
        // Find the smallest nonzero entry in the remaining block.
        let mut pivot: Option<(usize, usize)> = None;
        for i in t..nrows {
            for j in t..ncols {
                if !d[i][j].is_zero()
                    && pivot.map(|(pi, pj)| d[i][j].abs() < d[pi][pj].abs()).unwrap_or(true)
                {
                    pivot = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = pivot else { break };
        d.swap(t, pi);
        u.swap(t, pi);
        swap_cols(&mut d, t, pj);
        swap_cols(&mut v, t, pj);
        // Clear the pivot row and column; restart if a remainder survives.
        let mut dirty = false;
        for i in t + 1..nrows {
            if !d[i][t].is_zero() {
                let q = num_integer::Integer::div_floor(&d[i][t], &d[t][t]);
                row_sub(&mut d, i, t, &q);
                row_sub(&mut u, i, t, &q);
                if !d[i][t].is_zero() {
                    dirty = true;
                }
            }
        }
        for j in t + 1..ncols {
            if !d[t][j].is_zero() {
                let q = num_integer::Integer::div_floor(&d[t][j], &d[t][t]);
                col_sub(&mut d, j, t, &q);
                col_sub(&mut v, j, t, &q);
                if !d[t][j].is_zero() {
                    dirty = true;
                }
            }
        }
        if dirty {
            continue;
        }
        // Enforce the divisibility chain: fold any non-multiple into the
        // pivot position and redo this step.
        let mut fixed = true;
        'outer: for i in t + 1..nrows {
            for j in t + 1..ncols {
                if !(&d[i][j] % &d[t][t]).is_zero() {
                    for c in 0..ncols {
                        let add = d[i][c].clone();
                        d[t][c] += add;
                    }
                    for c in 0..nrows {
                        let add = u[i][c].clone();
                        u[t][c] += add;
                    }
                    fixed = false;
                    break 'outer;
                }
            }
        }
        if fixed {
            if d[t][t].is_negative() {
                for c in 0..ncols {
                    d[t][c] = -d[t][c].clone();
                }
                for c in 0..nrows {
                    u[t][c] = -u[t][c].clone();
                }
            }
            t += 1;
        }
    }
    (u, d, v)
}

fn eye(n: usize) -> Vec<Vec<BigInt>> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn swap_cols(m: &mut [Vec<BigInt>], a: usize, b: usize) {
    if a != b {
        for row in m.iter_mut() {
            row.swap(a, b);
        }
    }
}

fn row_sub(m: &mut [Vec<BigInt>], i: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    let src = m[t].clone();
    for (c, s) in src.iter().enumerate() {
        let delta = q * s;
        m[i][c] -= delta;
    }
}

fn col_sub(m: &mut [Vec<BigInt>], j: usize, t: usize, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for row in m.iter_mut() {
        let delta = q * &row[t];
        row[j] -= delta;
    }
}

/// Saturated integer kernel {x : M x = 0} of a rectangular matrix, via the
/// right transform of the Smith normal form; basis rows in Hermite normal
/// form.
pub fn integer_kernel(m: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    if m.is_empty() {
        return Vec::new();
    }
    let ncols = m[0].len();
    let (_, d, v) = smith_normal_form(m);
    let rank = (0..d.len().min(ncols)).take_while(|&t| !d[t][t].is_zero()).count();
    // Columns of V beyond the rank span the kernel.
    let kernel_rows: Vec<Vec<BigInt>> =
        (rank..ncols).map(|j| (0..ncols).map(|i| v[i][j].clone()).collect()).collect();
    hermite_normal_form(kernel_rows)
}

/// The sublattice of Z^n fixed by every generator: the integer kernel of
/// the stacked (g_i - I) matrices.  Generators must have finite order.
pub fn invariant_sublattice(generators: &[IntMatrix], caps: &Caps) -> Result<Sublattice> {
    if generators.is_empty() {
        return Err(Error::Validation("no generators".into()));
    }
    let n = generators[0].dim();
    let mut stacked: Vec<Vec<BigInt>> = Vec::new();
    for g in generators {
        if g.dim() != n {
            return Err(Error::ShapeError("mixed dimensions".into()));
        }
        g.element_order(caps.max_element_order)?;
        for (r, mut row) in g.rows().into_iter().enumerate() {
            row[r] -= BigInt::one();
            stacked.push(row);
        }
    }
    let basis = integer_kernel(&stacked);
    Ok(Sublattice { rank: basis.len(), basis })
}

/// True iff some element has order |G|.
pub fn is_cyclic(group: &FiniteMatrixGroup<IntMatrix>) -> bool {
    group.is_cyclic()
}
