//! Exact square matrices over `Q(zeta_N)`: arithmetic, inversion, element
//! order, and eigenspace decomposition of finite-order elements.

use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{CycContext, CycNumber};
use crate::error::{Error, Result};

/// A square matrix with entries in one cyclotomic context, stored row-major.
/// Entries are canonical, so equality and hashing are entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycMatrix {
    dim: usize,
    entries: Vec<CycNumber>,
}

impl CycMatrix {
    pub fn from_entries(dim: usize, entries: Vec<CycNumber>) -> Result<CycMatrix> {
        if dim == 0 || entries.len() != dim * dim {
            return Err(Error::ShapeError(format!(
                "expected {dim}x{dim} entries, got {}",
                entries.len()
            )));
        }
        let n = entries[0].context().root_order();
        if entries.iter().any(|e| e.context().root_order() != n) {
            return Err(Error::ShapeError("mixed cyclotomic contexts in one matrix".into()));
        }
        Ok(CycMatrix { dim, entries })
    }

    /// Build from integer entries for terse test and catalog constructions.
    pub fn from_int_rows(ctx: &Arc<CycContext>, rows: &[&[i64]]) -> CycMatrix {
        let dim = rows.len();
        let entries = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), dim, "ragged rows");
                r.iter().map(|&v| CycNumber::from_integer(ctx, v))
            })
            .collect();
        CycMatrix { dim, entries }
    }

    pub fn identity(ctx: &Arc<CycContext>, dim: usize) -> CycMatrix {
        let mut entries = vec![CycNumber::zero(ctx); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = CycNumber::one(ctx);
        }
        CycMatrix { dim, entries }
    }

    pub fn diagonal(values: &[CycNumber]) -> CycMatrix {
        let dim = values.len();
        let ctx = values[0].context();
        let mut entries = vec![CycNumber::zero(ctx); dim * dim];
        for (i, v) in values.iter().enumerate() {
            entries[i * dim + i] = v.clone();
        }
        CycMatrix { dim, entries }
    }

    pub fn scalar(ctx: &Arc<CycContext>, dim: usize, value: &CycNumber) -> CycMatrix {
        let _ = ctx;
        CycMatrix::diagonal(&vec![value.clone(); dim])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn context(&self) -> &Arc<CycContext> {
        self.entries[0].context()
    }

    pub fn entry(&self, row: usize, col: usize) -> &CycNumber {
        &self.entries[row * self.dim + col]
    }

    pub fn entries(&self) -> &[CycNumber] {
        &self.entries
    }

    pub fn row(&self, r: usize) -> &[CycNumber] {
        &self.entries[r * self.dim..(r + 1) * self.dim]
    }

    fn check_same_shape(&self, rhs: &CycMatrix) -> Result<()> {
        if self.dim != rhs.dim {
            return Err(Error::ShapeError(format!(
                "{}x{} vs {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        if self.context().root_order() != rhs.context().root_order() {
            return Err(Error::ShapeError("mixed cyclotomic contexts".into()));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_shape(rhs)?;
        let n = self.dim;
        let ctx = self.context();
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = CycNumber::zero(ctx);
                for k in 0..n {
                    let a = self.entry(i, k);
                    if !a.is_zero() {
                        let b = rhs.entry(k, j);
                        if !b.is_zero() {
                            acc = acc.add(&a.mul(b));
                        }
                    }
                }
                entries.push(acc);
            }
        }
        Ok(CycMatrix { dim: n, entries })
    }

    pub fn add(&self, rhs: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.add(b)).collect();
        Ok(CycMatrix { dim: self.dim, entries })
    }

    pub fn sub(&self, rhs: &CycMatrix) -> Result<CycMatrix> {
        self.check_same_shape(rhs)?;
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a.sub(b)).collect();
        Ok(CycMatrix { dim: self.dim, entries })
    }

    pub fn scale(&self, factor: &CycNumber) -> CycMatrix {
        let entries = self.entries.iter().map(|e| e.mul(factor)).collect();
        CycMatrix { dim: self.dim, entries }
    }

    /// Gauss-Jordan inverse; `NotInvertible` on singular input.
    pub fn invert(&self) -> Result<CycMatrix> {
        let n = self.dim;
        let ctx = self.context();
        let mut aug: Vec<Vec<CycNumber>> = (0..n)
            .map(|i| {
                let mut row: Vec<CycNumber> = self.row(i).to_vec();
                for j in 0..n {
                    row.push(if i == j { CycNumber::one(ctx) } else { CycNumber::zero(ctx) });
                }
                row
            })
            .collect();
        for col in 0..n {
            let Some(r) = (col..n).find(|&r| !aug[r][col].is_zero()) else {
                return Err(Error::NotInvertible);
            };
            aug.swap(col, r);
            let inv = aug[col][col].invert().expect("pivot is nonzero");
            for v in aug[col].iter_mut() {
                *v = v.mul(&inv);
            }
            for r in 0..n {
                if r != col && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..2 * n {
                        let delta = f.mul(&aug[col][c]);
                        aug[r][c] = aug[r][c].sub(&delta);
                    }
                }
            }
        }
        let entries = aug.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
        Ok(CycMatrix { dim: n, entries })
    }

    /// `by * self * by^-1`.
    pub fn conjugate_by(&self, by: &CycMatrix) -> Result<CycMatrix> {
        by.mul(self)?.mul(&by.invert()?)
    }

    pub fn pow(&self, mut exp: u64) -> Result<CycMatrix> {
        let mut base = self.clone();
        let mut acc = CycMatrix::identity(self.context(), self.dim);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    e.is_one()
                } else {
                    e.is_zero()
                }
            })
        })
    }

    pub fn is_scalar(&self) -> bool {
        let d = self.entry(0, 0);
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let e = self.entry(i, j);
                if i == j {
                    e == d
                } else {
                    e.is_zero()
                }
            })
        })
    }

    /// Minimal `m <= cap` with `self^m = 1`.
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

    /// Apply to a column vector.
    pub fn apply(&self, v: &[CycNumber]) -> Result<Vec<CycNumber>> {
        if v.len() != self.dim {
            return Err(Error::ShapeError(format!(
                "vector length {} vs dim {}",
                v.len(),
                self.dim
            )));
        }
        let ctx = self.context();
        Ok((0..self.dim)
            .map(|i| {
                let mut acc = CycNumber::zero(ctx);
                for (j, x) in v.iter().enumerate() {
                    let a = self.entry(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc = acc.add(&a.mul(x));
                    }
                }
                acc
            })
            .collect())
    }

    /// Block-diagonal sum; contexts are merged into the lcm root order.
    pub fn block_diag(a: &CycMatrix, b: &CycMatrix) -> Result<CycMatrix> {
        let na = a.context().root_order();
        let nb = b.context().root_order();
        let target = if na == nb {
            Arc::clone(a.context())
        } else {
            CycContext::new(num_integer::lcm(na, nb))?
        };
        let dim = a.dim + b.dim;
        let mut entries = vec![CycNumber::zero(&target); dim * dim];
        for i in 0..a.dim {
            for j in 0..a.dim {
                entries[i * dim + j] = a.entry(i, j).embed(&target)?;
            }
        }
        for i in 0..b.dim {
            for j in 0..b.dim {
                entries[(a.dim + i) * dim + (a.dim + j)] = b.entry(i, j).embed(&target)?;
            }
        }
        Ok(CycMatrix { dim, entries })
    }

    /// Re-express all entries in a larger cyclotomic context.
    pub fn embed(&self, target: &Arc<CycContext>) -> Result<CycMatrix> {
        let entries = self
            .entries
            .iter()
            .map(|e| e.embed(target))
            .collect::<Result<Vec<_>>>()?;
        Ok(CycMatrix { dim: self.dim, entries })
    }

    /// Deterministic serialized form; lexicographic order on these strings
    /// is the canonical element order used throughout the engine.
    pub fn canon_str(&self) -> String {
        let parts: Vec<String> = self.entries.iter().map(|e| e.canon_str()).collect();
        parts.join(";")
    }
}

impl fmt::Display for CycMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Reduced row echelon form in place with first-nonzero pivot selection in
/// column order; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<CycNumber>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return Vec::new();
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut pr = 0;
    for col in 0..ncols {
        let Some(r) = (pr..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(pr, r);
        let inv = rows[pr][col].invert().expect("pivot nonzero");
        for v in rows[pr].iter_mut() {
            if !v.is_zero() {
                *v = v.mul(&inv);
            }
        }
        for r in 0..nrows {
            if r != pr && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let delta = f.mul(&rows[pr][c]);
                    rows[r][c] = rows[r][c].sub(&delta);
                }
            }
        }
        pivots.push(col);
        pr += 1;
        if pr == nrows {
            break;
        }
    }
    rows.truncate(pr);
    pivots
}

/// Canonical basis (reduced row echelon form) of the right kernel of a
/// rectangular matrix given as rows.
pub fn kernel_basis(
    mut rows: Vec<Vec<CycNumber>>,
    ncols: usize,
    ctx: &Arc<CycContext>,
) -> Vec<Vec<CycNumber>> {
    let pivots = rref(&mut rows);
    let pivot_set: Vec<bool> = {
        let mut s = vec![false; ncols];
        for &p in &pivots {
            s[p] = true;
        }
        s
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set[free] {
            continue;
        }
        let mut v = vec![CycNumber::zero(ctx); ncols];
        v[free] = CycNumber::one(ctx);
        for (r, &p) in pivots.iter().enumerate() {
            v[p] = rows[r][free].neg();
        }
        basis.push(v);
    }
    // The constructed vectors are independent; a final pass puts them in
    // reduced echelon form for a unique representation.
    rref(&mut basis);
    basis
}

/// Eigenvalue/eigenspace pairs of a finite-order matrix.  Eigenvalues are
/// roots of unity ordered by increasing exponent; bases are in reduced row
/// echelon form and their dimensions sum to the matrix dimension.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub pairs: Vec<(CycNumber, Vec<Vec<CycNumber>>)>,
}

impl EigenDecomposition {
    pub fn total_dimension(&self) -> usize {
        self.pairs.iter().map(|(_, basis)| basis.len()).sum()
    }
}

/// Decompose a finite-order matrix into exact eigenspaces.  Requires the
/// element order to divide the root order of the context so that every
/// eigenvalue lies in the field; candidate eigenvalues are exactly the roots
/// of unity of order dividing the element order.
pub fn eigen_decompose(g: &CycMatrix, max_element_order: u64) -> Result<EigenDecomposition> {
    let order = g.element_order(max_element_order)?;
    let n = g.context().root_order();
    if n % order != 0 {
        return Err(Error::OrderNotInContext { order, root_order: n });
    }
    let step = (n / order) as i64;
    let ctx = g.context();
    let mut pairs = Vec::new();
    let mut total = 0;
    for j in 0..order as i64 {
        let lambda = CycNumber::root_of_unity(ctx, j * step);
        let shifted = g.sub(&CycMatrix::scalar(ctx, g.dim(), &lambda))?;
        let rows: Vec<Vec<CycNumber>> = (0..g.dim()).map(|i| shifted.row(i).to_vec()).collect();
        let basis = kernel_basis(rows, g.dim(), ctx);
        if !basis.is_empty() {
            total += basis.len();
            pairs.push((lambda, basis));
        }
    }
    // Finite order in characteristic zero forces diagonalizability.
    debug_assert_eq!(total, g.dim());
    Ok(EigenDecomposition { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycContext;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ctx3() -> Arc<CycContext> {
        CycContext::new(3).unwrap()
    }

    fn zeta(ctx: &Arc<CycContext>, k: i64) -> CycNumber {
        CycNumber::root_of_unity(ctx, k)
    }

    /// The 3-cycle permutation matrix.
    fn mat_x(ctx: &Arc<CycContext>) -> CycMatrix {
        CycMatrix::from_int_rows(ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    /// diag(1, zeta, zeta^2).
    fn mat_y(ctx: &Arc<CycContext>) -> CycMatrix {
        CycMatrix::diagonal(&[CycNumber::one(ctx), zeta(ctx, 1), zeta(ctx, 2)])
    }

    #[test]
    fn x_cubes_to_identity() {
        let ctx = ctx3();
        let x = mat_x(&ctx);
        assert!(x.pow(3).unwrap().is_identity());
        assert_eq!(x.element_order(10).unwrap(), 3);
    }

    #[test]
    fn conjugation_by_identity_is_identity_map() {
        let ctx = ctx3();
        let y = mat_y(&ctx);
        let id = CycMatrix::identity(&ctx, 3);
        assert_eq!(y.conjugate_by(&id).unwrap(), y);
    }

    #[test]
    fn commutator_of_x_and_y_is_scalar() {
        // X Y X^-1 Y^-1 = zeta^2 I by direct multiplication.  (With the
        // other commutator convention, Y X Y^-1 X^-1 = zeta I.)
        let ctx = ctx3();
        let x = mat_x(&ctx);
        let y = mat_y(&ctx);
        let comm = x
            .mul(&y)
            .unwrap()
            .mul(&x.invert().unwrap())
            .unwrap()
            .mul(&y.invert().unwrap())
            .unwrap();
        assert!(comm.is_scalar());
        assert_eq!(comm, CycMatrix::scalar(&ctx, 3, &zeta(&ctx, 2)));
        let comm_rev = y
            .mul(&x)
            .unwrap()
            .mul(&y.invert().unwrap())
            .unwrap()
            .mul(&x.invert().unwrap())
            .unwrap();
        assert_eq!(comm_rev, CycMatrix::scalar(&ctx, 3, &zeta(&ctx, 1)));
    }

    #[test]
    fn scalar_matrix_order() {
        let ctx9 = CycContext::new(9).unwrap();
        let z9 = CycMatrix::scalar(&ctx9, 3, &zeta(&ctx9, 1));
        assert_eq!(z9.element_order(100).unwrap(), 9);
    }

    #[test]
    fn unipotent_exceeds_order_cap() {
        let ctx = ctx3();
        let u = CycMatrix::from_int_rows(&ctx, &[&[1, 1], &[0, 1]]);
        assert_eq!(u.element_order(100), Err(Error::OrderCapExceeded { cap: 100 }));
    }

    #[test]
    fn inverse_of_singular_fails() {
        let ctx = ctx3();
        let m = CycMatrix::from_int_rows(&ctx, &[&[1, 1], &[1, 1]]);
        assert_eq!(m.invert(), Err(Error::NotInvertible));
    }

    #[test]
    fn inverse_multiplies_back() {
        let ctx = ctx3();
        let x = mat_x(&ctx);
        assert!(x.mul(&x.invert().unwrap()).unwrap().is_identity());
    }

    #[test]
    fn eigen_of_diagonal() {
        let ctx = ctx3();
        let y = mat_y(&ctx);
        let eig = eigen_decompose(&y, 100).unwrap();
        assert_eq!(eig.pairs.len(), 3);
        for (j, (lambda, basis)) in eig.pairs.iter().enumerate() {
            assert_eq!(*lambda, zeta(&ctx, j as i64));
            assert_eq!(basis.len(), 1);
            // Eigenvector for zeta^j is the j-th standard basis vector.
            for (c, v) in basis[0].iter().enumerate() {
                assert_eq!(v.is_one(), c == j);
            }
        }
    }

    #[test]
    fn eigen_of_identity() {
        let ctx = ctx3();
        let id = CycMatrix::identity(&ctx, 3);
        let eig = eigen_decompose(&id, 100).unwrap();
        assert_eq!(eig.pairs.len(), 1);
        assert!(eig.pairs[0].0.is_one());
        assert_eq!(eig.pairs[0].1.len(), 3);
    }

    #[test]
    fn eigen_of_permutation() {
        // X has eigenvalues 1, zeta, zeta^2, each one-dimensional; the
        // eigenvector for 1 is (1,1,1).
        let ctx = ctx3();
        let x = mat_x(&ctx);
        let eig = eigen_decompose(&x, 100).unwrap();
        assert_eq!(eig.pairs.len(), 3);
        assert_eq!(eig.total_dimension(), 3);
        let (lambda, basis) = &eig.pairs[0];
        assert!(lambda.is_one());
        assert_eq!(basis.len(), 1);
        assert!(basis[0].iter().all(|v| v.is_one()));
        // Each basis vector satisfies X v = lambda v exactly.
        for (lambda, basis) in &eig.pairs {
            for v in basis {
                let lhs = x.apply(v).unwrap();
                let rhs: Vec<CycNumber> = v.iter().map(|c| c.mul(lambda)).collect();
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn eigen_requires_order_in_context() {
        let ctx = ctx3();
        let neg = CycMatrix::scalar(&ctx, 2, &CycNumber::from_integer(&ctx, -1));
        assert_eq!(
            eigen_decompose(&neg, 100).err(),
            Some(Error::OrderNotInContext { order: 2, root_order: 3 })
        );
    }

    #[test]
    fn eigen_reassembles_on_random_conjugates() {
        // g B = B D where B gathers the eigenbases and D the eigenvalues.
        let ctx = ctx3();
        let seeds: &[&[i64]] = &[&[1, 0, 0], &[2, 1, 0], &[1, 1, 1]];
        let q = CycMatrix::from_int_rows(&ctx, seeds);
        let d = mat_y(&ctx);
        let g = q.mul(&d).unwrap().mul(&q.invert().unwrap()).unwrap();
        let eig = eigen_decompose(&g, 100).unwrap();
        assert_eq!(eig.total_dimension(), 3);
        for (lambda, basis) in &eig.pairs {
            for v in basis {
                let gv = g.apply(v).unwrap();
                let lv: Vec<CycNumber> = v.iter().map(|c| c.mul(lambda)).collect();
                assert_eq!(gv, lv);
            }
        }
        // Conjugation preserves order and the eigenvalue multiset.
        assert_eq!(g.element_order(100).unwrap(), d.element_order(100).unwrap());
        let vals_g: Vec<String> =
            eig.pairs.iter().map(|(l, b)| format!("{}:{}", l.canon_str(), b.len())).collect();
        let eig_d = eigen_decompose(&d, 100).unwrap();
        let vals_d: Vec<String> =
            eig_d.pairs.iter().map(|(l, b)| format!("{}:{}", l.canon_str(), b.len())).collect();
        assert_eq!(vals_g, vals_d);
    }

    #[test]
    fn order_is_lcm_of_eigenvalue_orders() {
        let ctx9 = CycContext::new(9).unwrap();
        let m = CycMatrix::diagonal(&[zeta(&ctx9, 3), zeta(&ctx9, 1)]);
        let ord = m.element_order(100).unwrap();
        let eig = eigen_decompose(&m, 100).unwrap();
        let lcm = eig
            .pairs
            .iter()
            .map(|(l, _)| l.multiplicative_order().unwrap())
            .fold(1u64, num_integer::lcm);
        assert_eq!(ord, lcm);
        assert_eq!(ord, 9);
    }

    #[test]
    fn block_diag_embeds_contexts() {
        let ctx3 = ctx3();
        let ctx9 = CycContext::new(9).unwrap();
        let a = mat_y(&ctx3);
        let b = CycMatrix::diagonal(&[zeta(&ctx9, 1)]);
        let ab = CycMatrix::block_diag(&a, &b).unwrap();
        assert_eq!(ab.dim(), 4);
        assert_eq!(ab.context().root_order(), 9);
        assert_eq!(ab.element_order(100).unwrap(), 9);
    }

    #[test]
    fn kernel_of_rank_deficient_matrix() {
        let ctx = ctx3();
        let rows = vec![
            vec![CycNumber::from_integer(&ctx, 1), CycNumber::from_integer(&ctx, 2)],
            vec![CycNumber::from_integer(&ctx, 2), CycNumber::from_integer(&ctx, 4)],
        ];
        let basis = kernel_basis(rows, 2, &ctx);
        assert_eq!(basis.len(), 1);
        // Canonical form: leading coefficient 1, so (1, -1/2).
        assert!(basis[0][0].is_one());
        assert_eq!(
            basis[0][1].as_rational().unwrap(),
            BigRational::new(BigInt::from(-1), BigInt::from(2))
        );
    }
}
