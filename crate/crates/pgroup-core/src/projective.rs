//! Projective actions: PGL images of matrix groups, pointwise-fixed
//! projective subspaces, and orbits of projective points.

use std::sync::Arc;

use crate::caps::Caps;
use crate::cyclotomic::{CycContext, CycNumber};
use crate::error::{Error, Result};
use crate::group::{FiniteMatrixGroup, GroupElement};
use crate::matrix::{eigen_decompose, kernel_basis, rref, CycMatrix};

/// An element of PGL: a matrix scaled so its first nonzero entry in
/// row-major order equals 1.  Canonical scaling makes equality in the
/// projective quotient decidable entrywise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjElement {
    representative: CycMatrix,
}

impl ProjElement {
    pub fn new(matrix: CycMatrix) -> Result<ProjElement> {
        let first = matrix
            .entries()
            .iter()
            .find(|e| !e.is_zero())
            .ok_or_else(|| Error::Validation("zero matrix has no projective class".into()))?;
        let representative = if first.is_one() {
            matrix.clone()
        } else {
            matrix.scale(&first.invert().expect("nonzero entry"))
        };
        Ok(ProjElement { representative })
    }

    pub fn representative(&self) -> &CycMatrix {
        &self.representative
    }

    pub fn dim(&self) -> usize {
        self.representative.dim()
    }
}

impl GroupElement for ProjElement {
    fn op(&self, rhs: &Self) -> Self {
        let product = self.representative.mul(&rhs.representative).expect("matching shapes");
        ProjElement::new(product).expect("product of invertible matrices is nonzero")
    }

    fn try_inverse(&self) -> Option<Self> {
        let inv = self.representative.invert().ok()?;
        ProjElement::new(inv).ok()
    }

    fn identity_like(&self) -> Self {
        ProjElement {
            representative: CycMatrix::identity(self.representative.context(), self.dim()),
        }
    }

    fn canon_key(&self) -> String {
        self.representative.canon_str()
    }
}

/// The image of a matrix group in PGL, enumerated from canonically scaled
/// generators.  |image| * |scalar kernel| = |G|.
pub fn pgl_image(
    group: &FiniteMatrixGroup<CycMatrix>,
    caps: &Caps,
) -> Result<FiniteMatrixGroup<ProjElement>> {
    let gens = group
        .generators()
        .iter()
        .map(|g| ProjElement::new(g.clone()))
        .collect::<Result<Vec<_>>>()?;
    FiniteMatrixGroup::closure(&gens, caps)
}

/// Number of scalar matrices in an enumerated matrix group.
pub fn scalar_kernel_order(group: &FiniteMatrixGroup<CycMatrix>) -> usize {
    group.elements().iter().filter(|m| m.is_scalar()).count()
}

/// A projective subspace given by a canonical (reduced row echelon) basis of
/// its underlying linear subspace.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ProjSubspace {
    basis: Vec<Vec<CycNumber>>,
}

impl ProjSubspace {
    pub fn from_basis(mut basis: Vec<Vec<CycNumber>>) -> ProjSubspace {
        rref(&mut basis);
        ProjSubspace { basis }
    }

    /// A single projective point from homogeneous coordinates.
    pub fn point(coords: Vec<CycNumber>) -> Result<ProjSubspace> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::Validation("all-zero homogeneous coordinates".into()));
        }
        Ok(ProjSubspace::from_basis(vec![coords]))
    }

    pub fn basis(&self) -> &[Vec<CycNumber>] {
        &self.basis
    }

    pub fn linear_rank(&self) -> usize {
        self.basis.len()
    }

    /// Projective dimension (linear rank minus one).
    pub fn projective_dim(&self) -> usize {
        self.basis.len() - 1
    }

    pub fn is_point(&self) -> bool {
        self.basis.len() == 1
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis[0].len()
    }

    /// Canonical homogeneous coordinates of a projective point.
    pub fn point_coords(&self) -> Option<&[CycNumber]> {
        self.is_point().then(|| self.basis[0].as_slice())
    }

    /// Whether the vector lies in the underlying linear subspace.
    pub fn contains_vector(&self, v: &[CycNumber], ctx: &Arc<CycContext>) -> bool {
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rref(&mut rows);
        let _ = ctx;
        rows.len() == self.basis.len()
    }

    pub fn canon_key(&self) -> String {
        let rows: Vec<String> = self
            .basis
            .iter()
            .map(|r| r.iter().map(|c| c.canon_str()).collect::<Vec<_>>().join(","))
            .collect();
        rows.join("|")
    }
}

/// All maximal pointwise-fixed projective subspaces of the projective action
/// of the group generated by the given matrices.
///
/// A projective point is fixed by the whole group exactly when its
/// homogeneous vector is a simultaneous eigenvector of every generator, so
/// the fixed locus is the union over character tuples (one eigenvalue choice
/// per generator) of the intersections of the chosen eigenspaces.  An empty
/// result means the action is fixed-point free.
pub fn fixed_subspaces(
    group: &FiniteMatrixGroup<CycMatrix>,
    caps: &Caps,
) -> Result<Vec<ProjSubspace>> {
    fixed_subspaces_of_generators(group.generators(), caps)
}

/// Same computation from a raw generator list.
pub fn fixed_subspaces_of_generators(
    generators: &[CycMatrix],
    caps: &Caps,
) -> Result<Vec<ProjSubspace>> {
    if generators.is_empty() {
        return Err(Error::Validation("no generators".into()));
    }
    let ctx = generators[0].context();
    let dim = generators[0].dim();
    let mut spectra = Vec::new();
    let mut tuples: usize = 1;
    for g in generators {
        let eig = eigen_decompose(g, caps.max_element_order)?;
        tuples = tuples.saturating_mul(eig.pairs.len());
        if tuples > caps.fixed_tuple_cap {
            return Err(Error::FixedTupleCapExceeded { cap: caps.fixed_tuple_cap });
        }
        spectra.push(eig.pairs);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; spectra.len()];
    loop {
        // Stack (g_i - lambda_i I) for the current character tuple; its
        // kernel is the common eigenspace.
        let mut rows: Vec<Vec<CycNumber>> = Vec::new();
        for (gi, g) in generators.iter().enumerate() {
            let lambda = &spectra[gi][choice[gi]].0;
            let shifted = g.sub(&CycMatrix::scalar(ctx, dim, lambda))?;
            for r in 0..dim {
                rows.push(shifted.row(r).to_vec());
            }
        }
        let basis = kernel_basis(rows, dim, ctx);
        if !basis.is_empty() {
            out.push(ProjSubspace::from_basis(basis));
        }
        // Advance the mixed-radix counter.
        let mut pos = 0;
        loop {
            if pos == choice.len() {
                // Deduplicate, keep maximal subspaces, sort canonically.
                return Ok(finish_subspaces(out, ctx));
            }
            choice[pos] += 1;
            if choice[pos] < spectra[pos].len() {
                break;
            }
            choice[pos] = 0;
            pos += 1;
        }
    }
}

fn finish_subspaces(mut spaces: Vec<ProjSubspace>, ctx: &Arc<CycContext>) -> Vec<ProjSubspace> {
    spaces.sort_by_key(|s| s.canon_key());
    spaces.dedup();
    // Distinct character tuples intersect trivially, so containment between
    // distinct results cannot occur; the filter below is a safety net that
    // also covers duplicated generators.
    let keep: Vec<bool> = spaces
        .iter()
        .map(|s| {
            !spaces.iter().any(|t| {
                t.linear_rank() > s.linear_rank()
                    && s.basis().iter().all(|v| t.contains_vector(v, ctx))
            })
        })
        .collect();
    spaces
        .into_iter()
        .zip(keep)
        .filter_map(|(s, k)| k.then_some(s))
        .collect()
}

/// Orbit of a projective point under an enumerated matrix group, as a
/// canonically ordered set of points.  The orbit length always divides the
/// group order.
pub fn orbit(point: &ProjSubspace, group: &FiniteMatrixGroup<CycMatrix>) -> Result<Vec<ProjSubspace>> {
    let coords = point
        .point_coords()
        .ok_or_else(|| Error::ShapeError("orbit expects a projective point".into()))?;
    let dim = group.generators()[0].dim();
    if coords.len() != dim {
        return Err(Error::ShapeError(format!(
            "point lives in dimension {}, group acts on dimension {dim}",
            coords.len()
        )));
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for g in group.elements() {
        let image = ProjSubspace::point(g.apply(coords)?)?;
        if seen.insert(image.canon_key()) {
            out.push(image);
        }
    }
    out.sort_by_key(|p| p.canon_key());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::CycContext;

    fn ctx3() -> Arc<CycContext> {
        CycContext::new(3).unwrap()
    }

    fn zeta(ctx: &Arc<CycContext>, k: i64) -> CycNumber {
        CycNumber::root_of_unity(ctx, k)
    }

    fn mat_x(ctx: &Arc<CycContext>) -> CycMatrix {
        CycMatrix::from_int_rows(ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
    }

    fn mat_y(ctx: &Arc<CycContext>) -> CycMatrix {
        CycMatrix::diagonal(&[CycNumber::one(ctx), zeta(ctx, 1), zeta(ctx, 2)])
    }

    fn mat_d(ctx: &Arc<CycContext>) -> CycMatrix {
        CycMatrix::diagonal(&[CycNumber::one(ctx), CycNumber::one(ctx), zeta(ctx, 1)])
    }

    fn heisenberg() -> FiniteMatrixGroup<CycMatrix> {
        let ctx = ctx3();
        FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx)], &Caps::default()).unwrap()
    }

    fn fermat_gens(ctx: &Arc<CycContext>) -> Vec<CycMatrix> {
        (0..3)
            .map(|i| {
                let mut d = vec![CycNumber::one(ctx); 4];
                d[i] = zeta(ctx, 1);
                CycMatrix::diagonal(&d)
            })
            .collect()
    }

    #[test]
    fn pgl_image_of_heisenberg_is_c3_c3() {
        let caps = Caps::default();
        let g = heisenberg();
        let image = pgl_image(&g, &caps).unwrap();
        assert_eq!(image.order(), 9);
        assert!(image.is_abelian());
        assert_eq!(scalar_kernel_order(&g) * image.order(), g.order());
    }

    #[test]
    fn pgl_image_of_scalars_is_trivial() {
        let ctx = ctx3();
        let caps = Caps::default();
        let z = CycMatrix::scalar(&ctx, 3, &zeta(&ctx, 1));
        let g = FiniteMatrixGroup::closure(&[z], &caps).unwrap();
        let image = pgl_image(&g, &caps).unwrap();
        assert_eq!(image.order(), 1);
    }

    #[test]
    fn pgl_image_of_extended_heisenberg_is_heisenberg() {
        // Order 27, non-abelian, exponent 3: the Heisenberg group.
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx), mat_d(&ctx)], &caps)
            .unwrap();
        let image = pgl_image(&g, &caps).unwrap();
        assert_eq!(image.order(), 27);
        assert!(!image.is_abelian());
        assert_eq!(image.exponent(), 3);
        assert_eq!(image.min_generators(3).unwrap(), 2);
    }

    #[test]
    fn heisenberg_action_is_fixed_point_free() {
        let caps = Caps::default();
        let fixed = fixed_subspaces(&heisenberg(), &caps).unwrap();
        assert!(fixed.is_empty());
    }

    #[test]
    fn diagonal_generator_fixes_three_points() {
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&[mat_y(&ctx)], &caps).unwrap();
        let fixed = fixed_subspaces(&g, &caps).unwrap();
        assert_eq!(fixed.len(), 3);
        assert!(fixed.iter().all(|s| s.is_point()));
    }

    #[test]
    fn fermat_group_fixes_the_four_coordinate_points() {
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&fermat_gens(&ctx), &caps).unwrap();
        let fixed = fixed_subspaces(&g, &caps).unwrap();
        assert_eq!(fixed.len(), 4);
        for s in &fixed {
            assert!(s.is_point());
            let coords = s.point_coords().unwrap();
            assert_eq!(coords.iter().filter(|c| !c.is_zero()).count(), 1);
        }
    }

    #[test]
    fn fixed_subspaces_respect_tuple_cap() {
        let ctx = ctx3();
        let caps = Caps { fixed_tuple_cap: 2, ..Caps::default() };
        let g = FiniteMatrixGroup::closure(&[mat_y(&ctx), mat_x(&ctx)], &caps).unwrap();
        assert!(matches!(
            fixed_subspaces(&g, &caps),
            Err(Error::FixedTupleCapExceeded { cap: 2 })
        ));
    }

    #[test]
    fn orbits_of_coordinate_points() {
        let ctx = ctx3();
        let caps = Caps::default();
        let e1 = ProjSubspace::point(vec![
            CycNumber::one(&ctx),
            CycNumber::zero(&ctx),
            CycNumber::zero(&ctx),
        ])
        .unwrap();
        let diag = FiniteMatrixGroup::closure(&[mat_y(&ctx)], &caps).unwrap();
        assert_eq!(orbit(&e1, &diag).unwrap().len(), 1);
        let perm = FiniteMatrixGroup::closure(&[mat_x(&ctx)], &caps).unwrap();
        let orb = orbit(&e1, &perm).unwrap();
        assert_eq!(orb.len(), 3);
        // The orbit is the three coordinate points.
        for p in &orb {
            let coords = p.point_coords().unwrap();
            assert_eq!(coords.iter().filter(|c| !c.is_zero()).count(), 1);
        }
    }

    #[test]
    fn fermat_orbit_of_general_point_has_length_27() {
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&fermat_gens(&ctx), &caps).unwrap();
        let p = ProjSubspace::point(vec![CycNumber::one(&ctx); 4]).unwrap();
        let orb = orbit(&p, &g).unwrap();
        assert_eq!(orb.len(), 27);
        assert_eq!(g.order() % orb.len(), 0);
    }

    #[test]
    fn orbit_rejects_wrong_dimension() {
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&[mat_y(&ctx)], &caps).unwrap();
        let p = ProjSubspace::point(vec![CycNumber::one(&ctx); 4]).unwrap();
        assert!(matches!(orbit(&p, &g), Err(Error::ShapeError(_))));
    }

    /// Brute-force fixed-locus oracle: refine eigenspace intersections over
    /// every group element, not just the generators.
    fn fixed_subspaces_bruteforce(
        group: &FiniteMatrixGroup<CycMatrix>,
        caps: &Caps,
    ) -> Vec<ProjSubspace> {
        let ctx = group.generators()[0].context();
        let dim = group.generators()[0].dim();
        let full: Vec<Vec<CycNumber>> = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| {
                        if i == j { CycNumber::one(ctx) } else { CycNumber::zero(ctx) }
                    })
                    .collect()
            })
            .collect();
        let mut current = vec![ProjSubspace::from_basis(full)];
        for g in group.elements() {
            if g.is_scalar() {
                continue;
            }
            let eig = eigen_decompose(g, caps.max_element_order).unwrap();
            let mut next = Vec::new();
            for space in &current {
                for (_, basis) in &eig.pairs {
                    // Intersect via double annihilator.
                    let ann_a = kernel_basis(space.basis().to_vec(), dim, ctx);
                    let ann_b = kernel_basis(basis.clone(), dim, ctx);
                    let mut stacked = ann_a;
                    stacked.extend(ann_b);
                    let inter = kernel_basis(stacked, dim, ctx);
                    if !inter.is_empty() {
                        next.push(ProjSubspace::from_basis(inter));
                    }
                }
            }
            next.sort_by_key(|s| s.canon_key());
            next.dedup();
            current = next;
        }
        finish_subspaces(current, ctx)
    }

    #[test]
    fn fixed_subspaces_agree_with_bruteforce_oracle() {
        let ctx = ctx3();
        let caps = Caps::default();
        let groups = vec![
            heisenberg(),
            FiniteMatrixGroup::closure(&[mat_y(&ctx)], &caps).unwrap(),
            FiniteMatrixGroup::closure(&fermat_gens(&ctx), &caps).unwrap(),
            FiniteMatrixGroup::closure(&[mat_x(&ctx)], &caps).unwrap(),
        ];
        for g in &groups {
            let fast = fixed_subspaces(g, &caps).unwrap();
            let slow = fixed_subspaces_bruteforce(g, &caps);
            let fast_keys: Vec<String> = fast.iter().map(|s| s.canon_key()).collect();
            let slow_keys: Vec<String> = slow.iter().map(|s| s.canon_key()).collect();
            assert_eq!(fast_keys, slow_keys);
        }
    }

    #[test]
    fn every_point_of_reported_subspace_is_fixed() {
        let ctx = ctx3();
        let caps = Caps::default();
        let g = FiniteMatrixGroup::closure(&fermat_gens(&ctx), &caps).unwrap();
        for space in fixed_subspaces(&g, &caps).unwrap() {
            for v in space.basis() {
                for m in g.elements() {
                    let image = m.apply(v).unwrap();
                    // The image must be proportional to v: rank of {v, image}
                    // is 1.
                    let mut rows = vec![v.clone(), image];
                    rref(&mut rows);
                    assert_eq!(rows.len(), 1);
                }
            }
        }
    }
}
