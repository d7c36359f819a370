//! Built-in constructions of the explicit groups and polynomials handled by
//! the workbench, plus the registry of machine-checkable claims consumed by
//! `verify`.
//!
//! Check verdicts: `pass` (computed value matches the recorded claim),
//! `fail` (it does not), and `discrepancy` (the computation reproducibly
//! contradicts the stated claim the entry was built from; the cA1 entry is
//! the known case).  Provenance labels where the recorded value comes from:
//! `stated` (asserted by the source description of the construction),
//! `derived` (frozen from an independent computation), `trivial` (forced by
//! definitions).

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::caps::Caps;
use crate::cyclotomic::{CycContext, CycNumber};
use crate::error::{Error, Result};
use crate::group::{direct_product, FiniteMatrixGroup, GroupElement};
use crate::lattice::{int_closure, invariant_sublattice, IntMatrix};
use crate::matrix::CycMatrix;
use crate::poly::{
    ca1_polynomial, generator_multiplier, semi_invariant, sum_of_cubes, Polynomial, SemiInvariance,
};
use crate::projective::{fixed_subspaces, orbit, pgl_image, ProjElement, ProjSubspace};
use crate::serial::GroupDescription;

/// Seed for every randomized suite; fixed so reports are byte-identical.
const SUITE_SEED: u64 = 0x5047_524f_5550_3301;

// ---------------------------------------------------------------------------
// Built-in constructions
// ---------------------------------------------------------------------------

pub enum Builtin {
    Group(GroupDescription),
    Polynomial { context: Arc<CycContext>, nvars: usize, poly: Polynomial },
}

/// Catalog entry metadata: what the builder produces and which recorded
/// facts the verify suite checks for it.
pub struct CatalogEntry {
    pub id: &'static str,
    pub description: &'static str,
    /// (property, recorded value, provenance, contradicts stated claim)
    pub expected_facts: &'static [(&'static str, &'static str, Provenance, bool)],
}

pub fn entries() -> Vec<CatalogEntry> {
    use Provenance::*;
    vec![
        CatalogEntry {
            id: "heisenberg",
            description: "Heisenberg group of order 27 in SL3: 3-cycle X and diag(1, z, z^2) Y over Q(zeta_3)",
            expected_facts: &[
                ("order", "27", Stated, false),
                ("center order (scalar subgroup)", "3", Stated, false),
                ("minimal generators", "2", Stated, false),
                ("exponent", "3", Stated, false),
                ("Frattini subgroup", "= center", Derived, false),
                ("[X,Y]", "zeta^2 I (scalar)", Derived, false),
                ("index of center", "9", Stated, false),
            ],
        },
        CatalogEntry {
            id: "heisenberg_lift_D",
            description: "The outer-action lift D = diag(1, 1, zeta): conjugation sends X to XY and fixes Y",
            expected_facts: &[
                ("D X D^-1", "X Y", Derived, false),
                ("D Y D^-1", "Y", Derived, false),
                ("order of D", "3", Trivial, false),
            ],
        },
        CatalogEntry {
            id: "heisenberg_extended",
            description: "Extension <X, Y, D> of order 81; <X, Y> is normal of index 3",
            expected_facts: &[
                ("order", "81", Derived, false),
                ("<X,Y> normal of index", "3", Derived, false),
                ("PGL image", "order 27, exponent 3, non-abelian, rank 2", Stated, false),
            ],
        },
        CatalogEntry {
            id: "c3c3_pgl2",
            description: "The C3 x C3 image of <X, Y> in PGL3 acting on the projective plane",
            expected_facts: &[
                ("image order", "9", Stated, false),
                ("image abelian", "true", Stated, false),
                ("fixed locus on P^2", "empty", Stated, false),
            ],
        },
        CatalogEntry {
            id: "fermat_group",
            description: "C3^3 of diagonal generators on four coordinates, each scaling one coordinate by zeta",
            expected_facts: &[
                ("order", "27", Trivial, false),
                ("minimal generators", "3", Stated, false),
                ("fixed points on P^3", "the 4 coordinate points", Derived, false),
                ("preserves sum of cubes", "trivial character", Stated, false),
            ],
        },
        CatalogEntry {
            id: "fermat_cubic_poly",
            description: "x1^3 + x2^3 + x3^3 + x4^3",
            expected_facts: &[("degree", "3", Trivial, false)],
        },
        CatalogEntry {
            id: "product_c3_4",
            description: "Block-diagonal C3^4 = fermat_group x C3 in dimension 6",
            expected_facts: &[
                ("order", "81", Stated, false),
                ("minimal generators", "4", Stated, false),
            ],
        },
        CatalogEntry {
            id: "sigma_t",
            description: "sigma (weighted 3-cycle, weights zeta_9^{k_i}) and t = diag(1, zeta, zeta^2) over Q(zeta_9); parameters default to (0,0,0)",
            expected_facts: &[
                ("order of <sigma, t> at default weights", "27", Derived, false),
                ("<sigma, t, zeta_9 I> minimal generators", "3", Derived, false),
            ],
        },
        CatalogEntry {
            id: "cA1_group",
            description: "C3^3 = <diag(z, z^-1, 1, 1), diag(z, 1, z^-1, 1), diag(1, 1, 1, z)>",
            expected_facts: &[
                ("order", "27", Trivial, false),
                (
                    "semi-invariance of z1^2 + z2 z3 + z4^3",
                    "claimed invariant; computed: generators 1 and 2 scale z1^2 by zeta^2 but z4^3 by 1",
                    Derived,
                    true,
                ),
            ],
        },
        CatalogEntry {
            id: "cA1_poly",
            description: "z1^2 + z2 z3 + z4^3",
            expected_facts: &[("quadratic part", "z1^2 + z2 z3", Stated, false)],
        },
        CatalogEntry {
            id: "order3_gl2z",
            description: "The order-3 integer matrix [[0, -1], [1, -1]]",
            expected_facts: &[
                ("order", "3", Derived, false),
                ("invariant sublattice rank", "0", Derived, false),
            ],
        },
        CatalogEntry {
            id: "perm3_gl3z",
            description: "The 3-cycle permutation matrix in GL3(Z)",
            expected_facts: &[
                ("order", "3", Trivial, false),
                ("invariant sublattice", "rank 1, basis (1, 1, 1)", Derived, false),
            ],
        },
    ]
}

fn ctx3() -> Arc<CycContext> {
    CycContext::new(3).expect("root order 3")
}

fn ctx9() -> Arc<CycContext> {
    CycContext::new(9).expect("root order 9")
}

fn zeta(ctx: &Arc<CycContext>, k: i64) -> CycNumber {
    CycNumber::root_of_unity(ctx, k)
}

pub(crate) fn mat_x(ctx: &Arc<CycContext>) -> CycMatrix {
    CycMatrix::from_int_rows(ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])
}

pub(crate) fn mat_y(ctx: &Arc<CycContext>) -> CycMatrix {
    CycMatrix::diagonal(&[CycNumber::one(ctx), zeta(ctx, 1), zeta(ctx, 2)])
}

pub(crate) fn mat_d(ctx: &Arc<CycContext>) -> CycMatrix {
    CycMatrix::diagonal(&[CycNumber::one(ctx), CycNumber::one(ctx), zeta(ctx, 1)])
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

fn ca1_gens(ctx: &Arc<CycContext>) -> Vec<CycMatrix> {
    let one = CycNumber::one(ctx);
    vec![
        CycMatrix::diagonal(&[zeta(ctx, 1), zeta(ctx, -1), one.clone(), one.clone()]),
        CycMatrix::diagonal(&[zeta(ctx, 1), one.clone(), zeta(ctx, -1), one.clone()]),
        CycMatrix::diagonal(&[one.clone(), one.clone(), one.clone(), zeta(ctx, 1)]),
    ]
}

/// sigma with weights zeta_9^{k_i} and t = diag(1, zeta_3, zeta_3^2), both
/// over Q(zeta_9).
fn sigma_t_gens(ctx: &Arc<CycContext>, exponents: (i64, i64, i64)) -> Vec<CycMatrix> {
    let zero = CycNumber::zero(ctx);
    let (k1, k2, k3) = exponents;
    let sigma = CycMatrix::from_entries(
        3,
        vec![
            zero.clone(),
            zeta(ctx, k2),
            zero.clone(),
            zero.clone(),
            zero.clone(),
            zeta(ctx, k3),
            zeta(ctx, k1),
            zero.clone(),
            zero.clone(),
        ],
    )
    .expect("3x3");
    let t = CycMatrix::diagonal(&[CycNumber::one(ctx), zeta(ctx, 3), zeta(ctx, 6)]);
    vec![sigma, t]
}

fn product_c3_4_gens(ctx: &Arc<CycContext>) -> Vec<CycMatrix> {
    let i2 = CycMatrix::identity(ctx, 2);
    let i4 = CycMatrix::identity(ctx, 4);
    let c3 = CycMatrix::diagonal(&[CycNumber::one(ctx), zeta(ctx, 1)]);
    let mut gens: Vec<CycMatrix> = fermat_gens(ctx)
        .iter()
        .map(|g| CycMatrix::block_diag(g, &i2).expect("block"))
        .collect();
    gens.push(CycMatrix::block_diag(&i4, &c3).expect("block"));
    gens
}

fn cyc_group(name: &str, ctx: Arc<CycContext>, gens: Vec<CycMatrix>) -> Builtin {
    let dimension = gens[0].dim();
    Builtin::Group(GroupDescription::Cyclotomic {
        name: Some(name.to_string()),
        context: ctx,
        dimension,
        generators: gens,
    })
}

fn int_group(name: &str, gens: Vec<IntMatrix>) -> Builtin {
    let dimension = gens[0].dim();
    Builtin::Group(GroupDescription::Integer {
        name: Some(name.to_string()),
        dimension,
        generators: gens,
    })
}

/// Exact construction behind a registry id.  `sigma_t` takes optional
/// weight exponents `sigma_t(k1,k2,k3)` with `lambda_i = zeta_9^{k_i}`.
pub fn builtin(id: &str) -> Result<Builtin> {
    let (base, args) = match id.find('(') {
        Some(open) if id.ends_with(')') => {
            let inner = &id[open + 1..id.len() - 1];
            (&id[..open], Some(inner))
        }
        _ => (id, None),
    };
    if args.is_some() && base != "sigma_t" {
        return Err(Error::UnknownId(id.to_string()));
    }
    match base {
        "heisenberg" => {
            let ctx = ctx3();
            let gens = vec![mat_x(&ctx), mat_y(&ctx)];
            Ok(cyc_group("heisenberg", ctx, gens))
        }
        "heisenberg_lift_D" => {
            let ctx = ctx3();
            let gens = vec![mat_d(&ctx)];
            Ok(cyc_group("heisenberg_lift_D", ctx, gens))
        }
        "heisenberg_extended" => {
            let ctx = ctx3();
            let gens = vec![mat_x(&ctx), mat_y(&ctx), mat_d(&ctx)];
            Ok(cyc_group("heisenberg_extended", ctx, gens))
        }
        "c3c3_pgl2" => {
            let ctx = ctx3();
            let gens = vec![mat_x(&ctx), mat_y(&ctx)];
            Ok(cyc_group("c3c3_pgl2", ctx, gens))
        }
        "fermat_group" => {
            let ctx = ctx3();
            let gens = fermat_gens(&ctx);
            Ok(cyc_group("fermat_group", ctx, gens))
        }
        "fermat_cubic_poly" => {
            let ctx = ctx3();
            let poly = sum_of_cubes(&ctx, 4);
            Ok(Builtin::Polynomial { context: ctx, nvars: 4, poly })
        }
        "product_c3_4" => {
            let ctx = ctx3();
            let gens = product_c3_4_gens(&ctx);
            Ok(cyc_group("product_c3_4", ctx, gens))
        }
        "sigma_t" => {
            let exps = match args {
                None | Some("") => (0, 0, 0),
                Some(inner) => {
                    let parts: Vec<&str> = inner.split(',').map(|s| s.trim()).collect();
                    if parts.len() != 3 {
                        return Err(Error::UnknownId(id.to_string()));
                    }
                    let mut vals = [0i64; 3];
                    for (slot, p) in parts.iter().enumerate() {
                        vals[slot] =
                            p.parse().map_err(|_| Error::UnknownId(id.to_string()))?;
                    }
                    (vals[0], vals[1], vals[2])
                }
            };
            let ctx = ctx9();
            let gens = sigma_t_gens(&ctx, exps);
            Ok(cyc_group("sigma_t", ctx, gens))
        }
        "cA1_group" => {
            let ctx = ctx3();
            let gens = ca1_gens(&ctx);
            Ok(cyc_group("cA1_group", ctx, gens))
        }
        "cA1_poly" => {
            let ctx = ctx3();
            let poly = ca1_polynomial(&ctx);
            Ok(Builtin::Polynomial { context: ctx, nvars: 4, poly })
        }
        "order3_gl2z" => Ok(int_group(
            "order3_gl2z",
            vec![IntMatrix::from_rows(&[&[0, -1], &[1, -1]])],
        )),
        "perm3_gl3z" => Ok(int_group(
            "perm3_gl3z",
            vec![IntMatrix::from_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])],
        )),
        _ => Err(Error::UnknownId(id.to_string())),
    }
}

/// Group-valued catalog ids (used by the cross-cutting suites).
pub fn group_ids() -> Vec<&'static str> {
    vec![
        "heisenberg",
        "heisenberg_lift_D",
        "heisenberg_extended",
        "c3c3_pgl2",
        "fermat_group",
        "product_c3_4",
        "sigma_t",
        "cA1_group",
        "order3_gl2z",
        "perm3_gl3z",
    ]
}

/// A fully enumerated catalog group, with the projective-image entry
/// realized as a group of projective elements.
pub enum CatalogGroup {
    Cyc(FiniteMatrixGroup<CycMatrix>),
    Proj(FiniteMatrixGroup<ProjElement>),
    Int(FiniteMatrixGroup<IntMatrix>),
}

impl CatalogGroup {
    pub fn order(&self) -> usize {
        match self {
            CatalogGroup::Cyc(g) => g.order(),
            CatalogGroup::Proj(g) => g.order(),
            CatalogGroup::Int(g) => g.order(),
        }
    }
}

pub fn build_group(id: &str, caps: &Caps) -> Result<CatalogGroup> {
    if id == "c3c3_pgl2" {
        let Builtin::Group(GroupDescription::Cyclotomic { generators, .. }) = builtin(id)? else {
            unreachable!();
        };
        let lifts = FiniteMatrixGroup::closure(&generators, caps)?;
        return Ok(CatalogGroup::Proj(pgl_image(&lifts, caps)?));
    }
    match builtin(id)? {
        Builtin::Group(GroupDescription::Cyclotomic { generators, .. }) => {
            Ok(CatalogGroup::Cyc(FiniteMatrixGroup::closure(&generators, caps)?))
        }
        Builtin::Group(GroupDescription::Integer { generators, .. }) => {
            Ok(CatalogGroup::Int(int_closure(&generators, caps)?))
        }
        Builtin::Polynomial { .. } => Err(Error::Validation(format!(
            "{id} is a polynomial entry, not a group"
        ))),
    }
}

// ---------------------------------------------------------------------------
// Verification registry
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Discrepancy,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Asserted by the source description the construction was taken from.
    Stated,
    /// Frozen from an independent computation.
    Derived,
    /// Forced by definitions.
    Trivial,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckRecord {
    pub id: String,
    pub verdict: Verdict,
    pub computed: String,
    pub expected: String,
    pub provenance: Provenance,
}

struct Check {
    id: &'static str,
    provenance: Provenance,
    expected: &'static str,
    /// True when the recorded computation contradicts the stated claim the
    /// construction came with; a matching run is then a discrepancy, not a
    /// pass.
    contradicts_source: bool,
    run: fn(&Caps) -> Result<(String, bool)>,
}

fn record(check: &Check, caps: &Caps) -> CheckRecord {
    let (computed, verdict) = match (check.run)(caps) {
        Ok((computed, true)) if check.contradicts_source => (computed, Verdict::Discrepancy),
        Ok((computed, true)) => (computed, Verdict::Pass),
        Ok((computed, false)) => (computed, Verdict::Fail),
        Err(e) => (format!("error: {e}"), Verdict::Fail),
    };
    CheckRecord {
        id: check.id.to_string(),
        verdict,
        computed,
        expected: check.expected.to_string(),
        provenance: check.provenance,
    }
}

pub fn check_ids() -> Vec<&'static str> {
    let mut ids: Vec<&'static str> = checks().iter().map(|c| c.id).collect();
    ids.sort_unstable();
    ids
}

/// Run one check by id, or every check for "all"; records are ordered by
/// check id.
pub fn verify(check_id: &str, caps: &Caps) -> Result<Vec<CheckRecord>> {
    let mut all = checks();
    all.sort_by_key(|c| c.id);
    if check_id == "all" {
        return Ok(all.iter().map(|c| record(c, caps)).collect());
    }
    match all.iter().find(|c| c.id == check_id) {
        Some(c) => Ok(vec![record(c, caps)]),
        None => Err(Error::UnknownId(check_id.to_string())),
    }
}

fn heisenberg_group(caps: &Caps) -> Result<FiniteMatrixGroup<CycMatrix>> {
    let ctx = ctx3();
    FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx)], caps)
}

fn extended_group(caps: &Caps) -> Result<FiniteMatrixGroup<CycMatrix>> {
    let ctx = ctx3();
    FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx), mat_d(&ctx)], caps)
}

fn e1(ctx: &Arc<CycContext>, dim: usize) -> ProjSubspace {
    let mut v = vec![CycNumber::zero(ctx); dim];
    v[0] = CycNumber::one(ctx);
    ProjSubspace::point(v).expect("nonzero")
}

fn int_to_cyc(m: &IntMatrix, ctx: &Arc<CycContext>) -> CycMatrix {
    let entries = (0..m.dim())
        .flat_map(|r| {
            (0..m.dim()).map(move |c| (r, c))
        })
        .map(|(r, c)| {
            CycNumber::from_rational(ctx, BigRational::from_integer(m.entry(r, c).clone()))
        })
        .collect();
    CycMatrix::from_entries(m.dim(), entries).expect("square")
}

fn random_unimodular(rng: &mut ChaCha8Rng, dim: usize, steps: usize) -> IntMatrix {
    let mut q = IntMatrix::identity(dim);
    for _ in 0..steps {
        let i = rng.gen_range(0..dim);
        let mut j = rng.gen_range(0..dim);
        while j == i {
            j = rng.gen_range(0..dim);
        }
        let k = rng.gen_range(-2i64..=2);
        let mut rows: Vec<Vec<i64>> = (0..dim)
            .map(|r| (0..dim).map(|c| i64::from(r == c)).collect())
            .collect();
        rows[i][j] = k;
        let shear_rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let shear = IntMatrix::from_rows(&shear_rows);
        q = q.mul(&shear).expect("same dim");
    }
    q
}

/// Random conjugated diagonal 3-group in the given dimension over Q(zeta_9).
fn random_diag_3_group(
    rng: &mut ChaCha8Rng,
    dim: usize,
    ngens: usize,
    caps: &Caps,
) -> Result<FiniteMatrixGroup<CycMatrix>> {
    let ctx = ctx9();
    let q = loop {
        let cand = random_unimodular(rng, dim, 6);
        if !cand.det().eq(&BigInt::from(0)) {
            break cand;
        }
    };
    let qc = int_to_cyc(&q, &ctx);
    let qinv = qc.invert().expect("unimodular");
    let gens: Vec<CycMatrix> = (0..ngens)
        .map(|_| {
            let d = CycMatrix::diagonal(
                &(0..dim).map(|_| zeta(&ctx, rng.gen_range(0..9))).collect::<Vec<_>>(),
            );
            qc.mul(&d).expect("dim").mul(&qinv).expect("dim")
        })
        .collect();
    FiniteMatrixGroup::closure(&gens, caps)
}

fn fmt_bool(b: bool) -> &'static str {
    if b { "true" } else { "false" }
}

fn checks() -> Vec<Check> {
    vec![
        Check {
            id: "heisenberg-order",
            provenance: Provenance::Stated,
            expected: "27",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                Ok((g.order().to_string(), g.order() == 27))
            },
        },
        Check {
            id: "heisenberg-center",
            provenance: Provenance::Stated,
            expected: "order 3, equal to the scalar subgroup",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                let center = g.center();
                let scalars = g.elements().iter().filter(|m| m.is_scalar()).count();
                let all_scalar = center.elements().all(|m| m.is_scalar());
                let ok = center.order() == 3 && scalars == 3 && all_scalar;
                Ok((format!("order {}, scalar elements {}", center.order(), scalars), ok))
            },
        },
        Check {
            id: "heisenberg-commutator",
            provenance: Provenance::Derived,
            expected: "[X,Y] = zeta^2 I; commutator subgroup = center",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let (x, y) = (mat_x(&ctx), mat_y(&ctx));
                let comm = x
                    .mul(&y)?
                    .mul(&x.invert()?)?
                    .mul(&y.invert()?)?;
                let want = CycMatrix::scalar(&ctx, 3, &zeta(&ctx, 2));
                let g = heisenberg_group(caps)?;
                let derived = g.commutator_subgroup();
                let ok = comm == want && derived.same_set_as(&g.center());
                Ok((
                    format!(
                        "[X,Y] scalar: {}, commutator subgroup order {}",
                        fmt_bool(comm.is_scalar()),
                        derived.order()
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "heisenberg-rank",
            provenance: Provenance::Stated,
            expected: "2",
            contradicts_source: false,
            run: |caps| {
                let d = heisenberg_group(caps)?.min_generators(3)?;
                Ok((d.to_string(), d == 2))
            },
        },
        Check {
            id: "heisenberg-exponent",
            provenance: Provenance::Stated,
            expected: "3",
            contradicts_source: false,
            run: |caps| {
                let e = heisenberg_group(caps)?.exponent();
                Ok((e.to_string(), e == 3))
            },
        },
        Check {
            id: "heisenberg-frattini",
            provenance: Provenance::Derived,
            expected: "Frattini = center of order 3, on both routes",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                let phi = g.frattini(3)?;
                let by_max = g.frattini_by_maximal_intersection(3)?;
                let ok = phi.order() == 3
                    && phi.same_set_as(&g.center())
                    && phi.same_set_as(&by_max);
                Ok((format!("order {}, routes agree: {}", phi.order(), fmt_bool(ok)), ok))
            },
        },
        Check {
            id: "heisenberg-center-index",
            provenance: Provenance::Stated,
            expected: "9",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                let idx = g.center().index_in_group();
                Ok((idx.to_string(), idx == 9))
            },
        },
        Check {
            id: "heisenberg-lift-relations",
            provenance: Provenance::Derived,
            expected: "D X D^-1 = X Y, D Y D^-1 = Y, D^3 = I, D outside <X,Y>",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let (x, y, d) = (mat_x(&ctx), mat_y(&ctx), mat_d(&ctx));
                let r1 = x.conjugate_by(&d)? == x.mul(&y)?;
                let r2 = y.conjugate_by(&d)? == y;
                let r3 = d.pow(3)?.is_identity();
                let h = heisenberg_group(caps)?;
                let outside = !h.contains(&d);
                let ok = r1 && r2 && r3 && outside;
                Ok((
                    format!(
                        "DXD^-1=XY: {}, DYD^-1=Y: {}, D^3=I: {}, D outside: {}",
                        fmt_bool(r1),
                        fmt_bool(r2),
                        fmt_bool(r3),
                        fmt_bool(outside)
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "heisenberg-extended-order",
            provenance: Provenance::Derived,
            expected: "81",
            contradicts_source: false,
            run: |caps| {
                let g = extended_group(caps)?;
                Ok((g.order().to_string(), g.order() == 81))
            },
        },
        Check {
            id: "heisenberg-extended-normal",
            provenance: Provenance::Derived,
            expected: "<X,Y> normal of index 3, quotient order 3",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let big = extended_group(caps)?;
                let h = big.subgroup_generated(&[mat_x(&ctx), mat_y(&ctx)])?;
                let ok = h.order() == 27
                    && h.is_normal()
                    && h.index_in_group() == 3
                    && h.quotient_order()? == 3;
                Ok((
                    format!(
                        "order {}, normal: {}, index {}",
                        h.order(),
                        fmt_bool(h.is_normal()),
                        h.index_in_group()
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "heisenberg-extended-pgl",
            provenance: Provenance::Stated,
            expected: "image order 27, exponent 3, non-abelian, rank 2 (Heisenberg)",
            contradicts_source: false,
            run: |caps| {
                let big = extended_group(caps)?;
                let image = pgl_image(&big, caps)?;
                let ok = image.order() == 27
                    && image.exponent() == 3
                    && !image.is_abelian()
                    && image.min_generators(3)? == 2;
                Ok((
                    format!(
                        "order {}, exponent {}, abelian: {}, rank {}",
                        image.order(),
                        image.exponent(),
                        fmt_bool(image.is_abelian()),
                        image.min_generators(3)?
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "c3c3-pgl-image",
            provenance: Provenance::Stated,
            expected: "order 9, abelian; |image| x |scalars| = |G|",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                let image = pgl_image(&g, caps)?;
                let scalars = crate::projective::scalar_kernel_order(&g);
                let ok =
                    image.order() == 9 && image.is_abelian() && image.order() * scalars == g.order();
                Ok((
                    format!("order {}, abelian: {}", image.order(), fmt_bool(image.is_abelian())),
                    ok,
                ))
            },
        },
        Check {
            id: "c3c3-fixed-point-free",
            provenance: Provenance::Stated,
            expected: "empty fixed locus on P^2",
            contradicts_source: false,
            run: |caps| {
                let g = heisenberg_group(caps)?;
                let fixed = fixed_subspaces(&g, caps)?;
                Ok((format!("{} fixed subspaces", fixed.len()), fixed.is_empty()))
            },
        },
        Check {
            id: "cyclic-diag-fixed-points",
            provenance: Provenance::Trivial,
            expected: "exactly 3 fixed points",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let g = FiniteMatrixGroup::closure(&[mat_y(&ctx)], caps)?;
                let fixed = fixed_subspaces(&g, caps)?;
                let ok = fixed.len() == 3 && fixed.iter().all(|s| s.is_point());
                Ok((format!("{} fixed points", fixed.len()), ok))
            },
        },
        Check {
            id: "fermat-fixed-points",
            provenance: Provenance::Derived,
            expected: "exactly the 4 coordinate points of P^3",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let g = FiniteMatrixGroup::closure(&fermat_gens(&ctx), caps)?;
                let fixed = fixed_subspaces(&g, caps)?;
                let coordinate = fixed.iter().all(|s| {
                    s.is_point()
                        && s.point_coords()
                            .unwrap()
                            .iter()
                            .filter(|c| !c.is_zero())
                            .count()
                            == 1
                });
                Ok((format!("{} fixed points", fixed.len()), fixed.len() == 4 && coordinate))
            },
        },
        Check {
            id: "fermat-rank",
            provenance: Provenance::Stated,
            expected: "3",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let g = FiniteMatrixGroup::closure(&fermat_gens(&ctx), caps)?;
                let d = g.min_generators(3)?;
                Ok((d.to_string(), d == 3))
            },
        },
        Check {
            id: "product-c3-4-rank",
            provenance: Provenance::Stated,
            expected: "order 81, rank 4",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let g = FiniteMatrixGroup::closure(&product_c3_4_gens(&ctx), caps)?;
                let d = g.min_generators(3)?;
                Ok((format!("order {}, rank {d}", g.order()), g.order() == 81 && d == 4))
            },
        },
        Check {
            id: "fermat-cubic-invariant",
            provenance: Provenance::Stated,
            expected: "trivial character",
            contradicts_source: false,
            run: |_caps| {
                let ctx = ctx3();
                let f = sum_of_cubes(&ctx, 4);
                match semi_invariant(&f, &fermat_gens(&ctx))? {
                    SemiInvariance::Invariant(chi) => {
                        Ok(("trivial character".into(), chi.is_trivial()))
                    }
                    SemiInvariance::Failure(w) => {
                        Ok((format!("failure witness on generator {}", w.generator_index + 1), false))
                    }
                }
            },
        },
        Check {
            id: "ca1-semiinvariance",
            provenance: Provenance::Derived,
            expected: "stated as invariant, but generators 1 and 2 are not even semi-invariant (z1^2 scales by zeta^2, z4^3 by 1); generator 3 gives the trivial character",
            contradicts_source: true,
            run: |_caps| {
                let ctx = ctx3();
                let f = ca1_polynomial(&ctx);
                let gens = ca1_gens(&ctx);
                let outcome1 = generator_multiplier(&f, &gens[0])?;
                let outcome2 = generator_multiplier(&f, &gens[1])?;
                let outcome3 = generator_multiplier(&f, &gens[2])?;
                // Both failing generators scale z1^2 by zeta^2 and z4^3 by 1.
                let z1sq = Polynomial::monomial(4, &[2, 0, 0, 0], CycNumber::one(&ctx))?;
                let z4cu = Polynomial::monomial(4, &[0, 0, 0, 3], CycNumber::one(&ctx))?;
                let mut ratio_ok = true;
                for g in &gens[..2] {
                    let r1 = generator_multiplier(&z1sq, g)?.expect("monomials are semi-invariant");
                    let r4 = generator_multiplier(&z4cu, g)?.expect("monomials are semi-invariant");
                    ratio_ok &= r1 == zeta(&ctx, 2) && r4.is_one();
                }
                let trivial3 = matches!(&outcome3, Ok(c) if c.is_one());
                let ok = outcome1.is_err() && outcome2.is_err() && trivial3 && ratio_ok;
                let whole = match semi_invariant(&f, &gens)? {
                    SemiInvariance::Failure(w) => format!(
                        "failure witness on generator {}; generator 3 multiplier trivial: {}",
                        w.generator_index + 1,
                        fmt_bool(trivial3)
                    ),
                    SemiInvariance::Invariant(_) => "unexpectedly invariant".to_string(),
                };
                Ok((whole, ok))
            },
        },
        Check {
            id: "ca1-quadratic-part",
            provenance: Provenance::Stated,
            expected: "z1^2 + z2 z3",
            contradicts_source: false,
            run: |_caps| {
                let ctx = ctx3();
                let f = ca1_polynomial(&ctx);
                let quad = f.homogeneous_part(2);
                let ok = quad.num_terms() == 2
                    && quad.coefficient(&[2, 0, 0, 0]).is_some()
                    && quad.coefficient(&[0, 1, 1, 0]).is_some()
                    && f.homogeneous_part(3).num_terms() == 1;
                Ok((quad.to_string(), ok))
            },
        },
        Check {
            id: "sigma-t-order",
            provenance: Provenance::Derived,
            expected: "order 27, non-abelian, exponent 3 at default weights",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx9();
                let g = FiniteMatrixGroup::closure(&sigma_t_gens(&ctx, (0, 0, 0)), caps)?;
                let ok = g.order() == 27 && !g.is_abelian() && g.exponent() == 3;
                Ok((
                    format!(
                        "order {}, abelian: {}, exponent {}",
                        g.order(),
                        fmt_bool(g.is_abelian()),
                        g.exponent()
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "sigma-t-zeta9-rank",
            provenance: Provenance::Derived,
            expected: "<sigma, t, zeta_9 I> has order 81 and rank 3 on both routes",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx9();
                let mut gens = sigma_t_gens(&ctx, (0, 0, 0));
                gens.push(CycMatrix::scalar(&ctx, 3, &zeta(&ctx, 1)));
                let g = FiniteMatrixGroup::closure(&gens, caps)?;
                let d = g.min_generators(3)?;
                let brute = g.min_generators_bruteforce(caps)?;
                let ok = g.order() == 81 && d == 3 && brute == 3;
                Ok((format!("order {}, rank {d}, brute-force {brute}", g.order()), ok))
            },
        },
        Check {
            id: "trivial-group-rank",
            provenance: Provenance::Trivial,
            expected: "0",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let g = FiniteMatrixGroup::closure(&[CycMatrix::identity(&ctx, 2)], caps)?;
                let d = g.min_generators(3)?;
                let brute = g.min_generators_bruteforce(caps)?;
                Ok((format!("rank {d}, brute-force {brute}"), d == 0 && brute == 0))
            },
        },
        Check {
            id: "burnside-oracle-catalog",
            provenance: Provenance::Derived,
            expected: "Burnside rank = brute-force rank and Frattini routes agree on every catalog group",
            contradicts_source: false,
            run: |caps| {
                let mut lines = Vec::new();
                let mut ok = true;
                for id in group_ids() {
                    let (d, brute, routes) = match build_group(id, caps)? {
                        CatalogGroup::Cyc(g) => burnside_triple(&g, caps)?,
                        CatalogGroup::Proj(g) => burnside_triple(&g, caps)?,
                        CatalogGroup::Int(g) => burnside_triple(&g, caps)?,
                    };
                    ok &= d == brute && routes;
                    lines.push(format!("{id}: d={d} brute={brute} routes={}", fmt_bool(routes)));
                }
                Ok((lines.join("; "), ok))
            },
        },
        Check {
            id: "augmentation-lemma-bounds",
            provenance: Provenance::Derived,
            expected: "regenerated group and size <= |H gens| + log3 [G:H] on all catalog pairs",
            contradicts_source: false,
            run: |caps| {
                let mut pairs = 0;
                let mut ok = true;
                for id in group_ids() {
                    match build_group(id, caps)? {
                        CatalogGroup::Cyc(g) => augment_suite(&g, caps, &mut pairs, &mut ok)?,
                        CatalogGroup::Proj(g) => augment_suite(&g, caps, &mut pairs, &mut ok)?,
                        CatalogGroup::Int(g) => augment_suite(&g, caps, &mut pairs, &mut ok)?,
                    }
                }
                Ok((format!("{pairs} (group, subgroup) pairs checked"), ok))
            },
        },
        Check {
            id: "extension-lemma-bounds",
            provenance: Provenance::Derived,
            expected: "regenerated group and size <= d(N) + d(G/N) on all catalog pairs",
            contradicts_source: false,
            run: |caps| {
                let mut pairs = 0;
                let mut ok = true;
                for id in group_ids() {
                    match build_group(id, caps)? {
                        CatalogGroup::Cyc(g) => extension_suite(&g, caps, &mut pairs, &mut ok)?,
                        CatalogGroup::Proj(g) => extension_suite(&g, caps, &mut pairs, &mut ok)?,
                        CatalogGroup::Int(g) => extension_suite(&g, caps, &mut pairs, &mut ok)?,
                    }
                }
                Ok((format!("{pairs} (group, normal subgroup) pairs checked"), ok))
            },
        },
        Check {
            id: "orbit-lengths",
            provenance: Provenance::Derived,
            expected: "e1 orbit lengths 1 under <Y> and 3 under <X>; (1:1:1:1) orbit length 27 under the Fermat group; all lengths are powers of 3 dividing |G|",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let diag = FiniteMatrixGroup::closure(&[mat_y(&ctx)], caps)?;
                let perm = FiniteMatrixGroup::closure(&[mat_x(&ctx)], caps)?;
                let fermat = FiniteMatrixGroup::closure(&fermat_gens(&ctx), caps)?;
                let l1 = orbit(&e1(&ctx, 3), &diag)?.len();
                let l2 = orbit(&e1(&ctx, 3), &perm)?.len();
                let general = ProjSubspace::point(vec![CycNumber::one(&ctx); 4])?;
                let l3 = orbit(&general, &fermat)?.len();
                let pow3 = |n: usize| {
                    let mut m = n;
                    while m % 3 == 0 {
                        m /= 3;
                    }
                    m == 1
                };
                let ok = l1 == 1
                    && l2 == 3
                    && l3 == 27
                    && pow3(l1)
                    && pow3(l2)
                    && pow3(l3)
                    && fermat.order() % l3 == 0;
                Ok((format!("lengths {l1}, {l2}, {l3}"), ok))
            },
        },
        Check {
            id: "gl2-abelian-rank-suite",
            provenance: Provenance::Stated,
            expected: "100 random finite 2x2 3-groups: abelian, rank <= 2, cyclic projective image; adversarial pairs never yield a non-abelian finite 3-group",
            contradicts_source: false,
            run: |caps| {
                let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED);
                let mut ok = true;
                for _ in 0..100 {
                    let g = random_diag_3_group(&mut rng, 2, 2, caps)?;
                    ok &= g.is_p_group(3);
                    ok &= g.is_abelian();
                    ok &= g.min_generators(3)? <= 2;
                    ok &= pgl_image(&g, caps)?.is_cyclic();
                }
                // Adversarial pairs: either the closure cap trips or the
                // result fails the 3-group test (never a non-abelian finite
                // 3-group).
                let ctx = ctx3();
                let small = Caps { max_group_order: 2000, ..caps.clone() };
                let mut conclusive = 0;
                for _ in 0..20 {
                    let a = int_to_cyc(&random_unimodular(&mut rng, 2, 5), &ctx);
                    let b = int_to_cyc(&random_unimodular(&mut rng, 2, 5), &ctx);
                    match FiniteMatrixGroup::closure(&[a, b], &small) {
                        Err(Error::ClosureCapExceeded { .. }) => {}
                        Err(e) => return Err(e),
                        Ok(g) => {
                            conclusive += 1;
                            if g.is_p_group(3) {
                                ok &= g.is_abelian();
                            }
                        }
                    }
                }
                // A deterministic finite non-3-group pair: S3 in GL2(Z).
                let s3 = FiniteMatrixGroup::closure(
                    &[
                        int_to_cyc(&IntMatrix::from_rows(&[&[0, -1], &[1, -1]]), &ctx),
                        int_to_cyc(&IntMatrix::from_rows(&[&[0, 1], &[1, 0]]), &ctx),
                    ],
                    &small,
                )?;
                ok &= s3.order() == 6 && !s3.is_p_group(3);
                Ok((
                    format!("100 random groups checked; {conclusive} adversarial closures finite"),
                    ok,
                ))
            },
        },
        Check {
            id: "gl2z-invariant-rank-zero",
            provenance: Provenance::Stated,
            expected: "invariant sublattice rank 0 (never 1) for 100 random conjugates of the order-3 matrix",
            contradicts_source: false,
            run: |caps| {
                let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x17);
                let base = IntMatrix::from_rows(&[&[0, -1], &[1, -1]]);
                let mut ok = true;
                for _ in 0..100 {
                    let q = random_unimodular(&mut rng, 2, 6);
                    let g = q.mul(&base)?.mul(&q.invert_unimodular()?)?;
                    let lat = invariant_sublattice(&[g], caps)?;
                    ok &= lat.rank() == 0;
                }
                Ok(("100 conjugates, all rank 0".into(), ok))
            },
        },
        Check {
            id: "gl3z-perm-invariant-rank",
            provenance: Provenance::Derived,
            expected: "rank 1 with basis (1, 1, 1)",
            contradicts_source: false,
            run: |caps| {
                let perm = IntMatrix::from_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
                let lat = invariant_sublattice(&[perm], caps)?;
                let ok = lat.rank() == 1
                    && lat.basis()[0] == vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)];
                Ok((
                    format!(
                        "rank {}, basis {:?}",
                        lat.rank(),
                        lat.basis().iter().map(|r| format!("{r:?}")).collect::<Vec<_>>()
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "glz-cyclic-probes",
            provenance: Provenance::Stated,
            expected: "every finite 3-group closure generated by two random order-3 conjugates in GL3(Z) is cyclic",
            contradicts_source: false,
            run: |caps| {
                let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x29);
                let perm = IntMatrix::from_rows(&[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
                let small = Caps { max_group_order: 5000, ..caps.clone() };
                let mut finite = 0;
                let mut ok = true;
                for _ in 0..40 {
                    let q1 = random_unimodular(&mut rng, 3, 5);
                    let q2 = random_unimodular(&mut rng, 3, 5);
                    let g1 = q1.mul(&perm)?.mul(&q1.invert_unimodular()?)?;
                    let g2 = q2.mul(&perm)?.mul(&q2.invert_unimodular()?)?;
                    match int_closure(&[g1, g2], &small) {
                        Err(Error::ClosureCapExceeded { .. }) => {}
                        Err(e) => return Err(e),
                        Ok(g) => {
                            finite += 1;
                            if g.is_p_group(3) {
                                ok &= g.is_cyclic();
                            }
                        }
                    }
                }
                Ok((format!("{finite}/40 closures finite, all finite 3-groups cyclic"), ok))
            },
        },
        Check {
            id: "gl2z-order3",
            provenance: Provenance::Derived,
            expected: "closure of [[0,-1],[1,-1]] has order 3",
            contradicts_source: false,
            run: |caps| {
                let g = int_closure(&[IntMatrix::from_rows(&[&[0, -1], &[1, -1]])], caps)?;
                Ok((g.order().to_string(), g.order() == 3 && g.is_cyclic()))
            },
        },
        Check {
            id: "sylow-3-subgroups",
            provenance: Provenance::Derived,
            expected: "<X, Y, diag(1,1,-1)> has order 216 with Sylow 3-subgroup of order 27; <X, Y, -I> has order 54 with Sylow 3-subgroup of order 27",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let s = CycMatrix::diagonal(&[
                    CycNumber::one(&ctx),
                    CycNumber::one(&ctx),
                    CycNumber::from_integer(&ctx, -1),
                ]);
                let g1 = FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx), s], caps)?;
                let syl1 = g1.sylow_subgroup(3)?.order();
                let neg = CycMatrix::scalar(&ctx, 3, &CycNumber::from_integer(&ctx, -1));
                let g2 = FiniteMatrixGroup::closure(&[mat_x(&ctx), mat_y(&ctx), neg], caps)?;
                let syl2 = g2.sylow_subgroup(3)?.order();
                let ok = g1.order() == 216 && syl1 == 27 && g2.order() == 54 && syl2 == 27;
                Ok((
                    format!(
                        "orders {} and {}, Sylow 3-subgroups {} and {}",
                        g1.order(),
                        g2.order(),
                        syl1,
                        syl2
                    ),
                    ok,
                ))
            },
        },
        Check {
            id: "gln-rank-bounds",
            provenance: Provenance::Stated,
            expected: "every catalog and randomized finite 3-group in dimension <= 8 has rank <= n; projective images have rank <= n-1",
            contradicts_source: false,
            run: |caps| {
                let ctx = ctx3();
                let mut cases: Vec<FiniteMatrixGroup<CycMatrix>> = Vec::new();
                cases.push(FiniteMatrixGroup::closure(&fermat_gens(&ctx), caps)?);
                cases.push(FiniteMatrixGroup::closure(&product_c3_4_gens(&ctx), caps)?);
                let h3 = heisenberg_group(caps)?;
                cases.push(direct_product(&h3, &h3, caps)?);
                let mut rng = ChaCha8Rng::seed_from_u64(SUITE_SEED ^ 0x51);
                for dim in [4usize, 5, 6, 8] {
                    cases.push(random_diag_3_group(&mut rng, dim, 3, caps)?);
                }
                let mut ok = true;
                let mut lines = Vec::new();
                for g in &cases {
                    let n = g.generators()[0].dim() as u32;
                    let d = g.min_generators(3)?;
                    let image = pgl_image(g, caps)?;
                    let di = image.min_generators(3)?;
                    ok &= d <= n && di <= n - 1;
                    lines.push(format!("n={n}: d={d}, image d={di}"));
                }
                Ok((lines.join("; "), ok))
            },
        },
    ]
}

fn burnside_triple<E: GroupElement>(
    g: &FiniteMatrixGroup<E>,
    caps: &Caps,
) -> Result<(u32, u32, bool)> {
    let d = g.min_generators(3)?;
    let brute = g.min_generators_bruteforce(caps)?;
    let phi = g.frattini(3)?;
    let by_max = g.frattini_by_maximal_intersection(3)?;
    Ok((d, brute, phi.same_set_as(&by_max)))
}

fn augment_suite<E: GroupElement>(
    g: &FiniteMatrixGroup<E>,
    caps: &Caps,
    pairs: &mut usize,
    ok: &mut bool,
) -> Result<()> {
    let subgroups = vec![
        g.trivial_subgroup(),
        g.center(),
        g.frattini(3)?,
        g.commutator_subgroup(),
    ];
    for h in &subgroups {
        let h_gens: Vec<E> = h.elements().cloned().collect();
        let out = g.augment_generators(&h_gens)?;
        let index = g.order() / h.order();
        let log3 = {
            let mut k = 0u32;
            let mut m = index;
            while m % 3 == 0 {
                m /= 3;
                k += 1;
            }
            k
        };
        let regen = FiniteMatrixGroup::closure(&out, caps)?;
        *ok &= regen.order() == g.order();
        *ok &= out.len() <= h_gens.len() + log3 as usize;
        *pairs += 1;
    }
    Ok(())
}

fn extension_suite<E: GroupElement>(
    g: &FiniteMatrixGroup<E>,
    caps: &Caps,
    pairs: &mut usize,
    ok: &mut bool,
) -> Result<()> {
    let candidates = vec![
        g.trivial_subgroup(),
        g.center(),
        g.frattini(3)?,
        g.commutator_subgroup(),
        g.power_subgroup(3),
    ];
    for n in &candidates {
        if !n.is_normal() {
            continue;
        }
        let out = g.extension_generators(n)?;
        let dn = n.min_generators(3)?;
        let dq = g.quotient(n)?.min_generators(3)?;
        let regen = FiniteMatrixGroup::closure(&out, caps)?;
        *ok &= regen.order() == g.order();
        *ok &= out.len() <= (dn + dq) as usize;
        *pairs += 1;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_registry_id_builds() {
        for entry in entries() {
            let b = builtin(entry.id).unwrap();
            match b {
                Builtin::Group(desc) => assert!(desc.dimension() > 0),
                Builtin::Polynomial { poly, .. } => assert!(!poly.is_zero()),
            }
            assert!(!entry.expected_facts.is_empty());
        }
    }

    #[test]
    fn unknown_ids_are_rejected() {
        assert!(matches!(builtin("nonsense"), Err(Error::UnknownId(_))));
        assert!(matches!(builtin("sigma_t(1,2)"), Err(Error::UnknownId(_))));
        assert!(matches!(builtin("heisenberg(1)"), Err(Error::UnknownId(_))));
        assert!(matches!(
            verify("nonsense", &Caps::default()),
            Err(Error::UnknownId(_))
        ));
    }

    #[test]
    fn sigma_t_parameters_parse() {
        let Builtin::Group(GroupDescription::Cyclotomic { context, generators, .. }) =
            builtin("sigma_t(3,0,0)").unwrap()
        else {
            panic!()
        };
        assert_eq!(context.root_order(), 9);
        // The (3,0,0) weight puts zeta_3 in the corner entry.
        assert_eq!(generators[0].entry(2, 0), &zeta(&context, 3));
    }

    #[test]
    fn catalog_group_orders() {
        let caps = Caps::default();
        let expect = [
            ("heisenberg", 27),
            ("heisenberg_lift_D", 3),
            ("heisenberg_extended", 81),
            ("c3c3_pgl2", 9),
            ("fermat_group", 27),
            ("product_c3_4", 81),
            ("sigma_t", 27),
            ("cA1_group", 27),
            ("order3_gl2z", 3),
            ("perm3_gl3z", 3),
        ];
        for (id, order) in expect {
            assert_eq!(build_group(id, &caps).unwrap().order(), order, "{id}");
        }
    }

    #[test]
    fn group_entries_round_trip_through_files() {
        // The builder output parses through the standard wire format.
        for id in group_ids() {
            let Builtin::Group(desc) = builtin(id).unwrap() else { panic!("{id} is a group") };
            let raw = match &desc {
                GroupDescription::Cyclotomic { name, context, dimension, generators } => {
                    crate::serial::cyc_group_to_raw(
                        name.as_deref(),
                        context.root_order(),
                        *dimension,
                        generators,
                    )
                }
                GroupDescription::Integer { name, dimension, generators } => {
                    crate::serial::int_group_to_raw(name.as_deref(), *dimension, generators)
                }
            };
            crate::serial::validate_group(&raw).unwrap();
        }
    }

    #[test]
    fn single_check_runs() {
        let caps = Caps::default();
        let records = verify("heisenberg-order", &caps).unwrap();
        assert_eq!(records.len(), 1);
        assert_eq!(records[0].verdict, Verdict::Pass);
        assert_eq!(records[0].computed, "27");
    }

    #[test]
    fn ca1_check_reports_discrepancy() {
        let caps = Caps::default();
        let records = verify("ca1-semiinvariance", &caps).unwrap();
        assert_eq!(records[0].verdict, Verdict::Discrepancy);
    }

    #[test]
    fn check_ids_are_sorted_and_unique() {
        let ids = check_ids();
        let mut sorted = ids.clone();
        sorted.sort_unstable();
        sorted.dedup();
        assert_eq!(ids, sorted);
    }
}
