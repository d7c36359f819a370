//! Multivariate polynomials over `Q(zeta_N)` and semi-invariance of
//! polynomials under linear group actions.
//!
//! The action convention is substitution: `f^g(z) = f(g z)`.  A polynomial
//! is semi-invariant when `f^g = chi(g) f` for a root-of-unity character
//! `chi` of the group; its zero hypersurface is then group-invariant.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::cyclotomic::{CycContext, CycNumber};
use crate::error::{Error, Result};
use crate::matrix::CycMatrix;

/// A polynomial as a map from exponent vectors to nonzero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, CycNumber>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Polynomial {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn from_terms(nvars: usize, terms: Vec<(Vec<u32>, CycNumber)>) -> Result<Polynomial> {
        let mut poly = Polynomial::zero(nvars);
        for (exps, coeff) in terms {
            if exps.len() != nvars {
                return Err(Error::ShapeError(format!(
                    "exponent vector of length {} in a polynomial on {} variables",
                    exps.len(),
                    nvars
                )));
            }
            poly.add_term(exps, coeff);
        }
        Ok(poly)
    }

    /// A single monomial c * prod z_i^{e_i}.
    pub fn monomial(nvars: usize, exps: &[u32], coeff: CycNumber) -> Result<Polynomial> {
        Polynomial::from_terms(nvars, vec![(exps.to_vec(), coeff)])
    }

    fn add_term(&mut self, exps: Vec<u32>, coeff: CycNumber) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().add(&coeff);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &CycNumber)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn coefficient(&self, exps: &[u32]) -> Option<&CycNumber> {
        self.terms.get(exps)
    }

    pub fn add(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let exps: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exps, ca.mul(cb));
            }
        }
        out
    }

    pub fn scale(&self, factor: &CycNumber) -> Polynomial {
        if factor.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.mul(factor))).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut acc: Option<Polynomial> = None;
        for _ in 0..exp {
            acc = Some(match acc {
                None => self.clone(),
                Some(a) => a.mul(self),
            });
        }
        acc.unwrap_or_else(|| {
            // x^0 = 1 needs a context; take it from any coefficient.
            let ctx = self.terms.values().next().expect("constant one of empty polynomial");
            Polynomial::monomial(self.nvars, &vec![0; self.nvars], CycNumber::one(ctx.context()))
                .unwrap()
        })
    }

    /// The degree-d homogeneous slice (possibly zero).
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        Polynomial {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == d)
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    /// Substitution action f^g(z) = f(g z): each variable z_j is replaced by
    /// the j-th coordinate of g z, i.e. the linear form sum_k g[j][k] z_k.
    pub fn substitute(&self, g: &CycMatrix) -> Result<Polynomial> {
        if g.dim() != self.nvars {
            return Err(Error::ShapeError(format!(
                "matrix of dimension {} acting on {} variables",
                g.dim(),
                self.nvars
            )));
        }
        let ctx = g.context();
        let forms: Vec<Polynomial> = (0..self.nvars)
            .map(|j| {
                let terms: Vec<(Vec<u32>, CycNumber)> = (0..self.nvars)
                    .filter(|&k| !g.entry(j, k).is_zero())
                    .map(|k| {
                        let mut e = vec![0u32; self.nvars];
                        e[k] = 1;
                        (e, g.entry(j, k).clone())
                    })
                    .collect();
                Polynomial::from_terms(self.nvars, terms).unwrap()
            })
            .collect();
        let mut out = Polynomial::zero(self.nvars);
        let one = Polynomial::monomial(self.nvars, &vec![0; self.nvars], CycNumber::one(ctx))?;
        for (exps, coeff) in &self.terms {
            let mut term = one.scale(coeff);
            for (j, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = term.mul(&forms[j].pow(e));
                }
            }
            out = out.add(&term);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, coeff)| {
                let vars: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| {
                        if e == 1 {
                            format!("z{}", i + 1)
                        } else {
                            format!("z{}^{}", i + 1, e)
                        }
                    })
                    .collect();
                let vars = vars.join("*");
                if vars.is_empty() {
                    format!("({coeff})")
                } else if coeff.is_one() {
                    vars
                } else {
                    format!("({coeff})*{vars}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A semi-invariance character: one root-of-unity multiplier per generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    values: Vec<CycNumber>,
}

impl Character {
    pub fn values(&self) -> &[CycNumber] {
        &self.values
    }

    pub fn is_trivial(&self) -> bool {
        self.values.iter().all(|v| v.is_one())
    }
}

/// Witness that a polynomial is not semi-invariant under one generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mismatch {
    /// The substituted polynomial has a different monomial support.
    SupportChanged { monomial: Vec<u32> },
    /// Two monomials scale by different multipliers.
    RatioMismatch {
        monomial_a: Vec<u32>,
        ratio_a: CycNumber,
        monomial_b: Vec<u32>,
        ratio_b: CycNumber,
    },
}

/// First generator (in the given order) violating proportionality, with the
/// mismatch detail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailureWitness {
    pub generator_index: usize,
    pub mismatch: Mismatch,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SemiInvariance {
    Invariant(Character),
    Failure(FailureWitness),
}

/// Outcome of the per-generator proportionality test.
pub fn generator_multiplier(f: &Polynomial, g: &CycMatrix) -> Result<std::result::Result<CycNumber, Mismatch>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let fg = f.substitute(g)?;
    // Support comparison first: any monomial on one side only.
    for (e, _) in f.terms() {
        if fg.coefficient(e).is_none() {
            return Ok(Err(Mismatch::SupportChanged { monomial: e.clone() }));
        }
    }
    for (e, _) in fg.terms() {
        if f.coefficient(e).is_none() {
            return Ok(Err(Mismatch::SupportChanged { monomial: e.clone() }));
        }
    }
    let mut terms = f.terms();
    let (first_e, first_c) = terms.next().expect("nonzero polynomial");
    let ratio = fg.coefficient(first_e).unwrap().mul(&first_c.invert()?);
    for (e, c) in terms {
        let r = fg.coefficient(e).unwrap().mul(&c.invert()?);
        if r != ratio {
            return Ok(Err(Mismatch::RatioMismatch {
                monomial_a: first_e.clone(),
                ratio_a: ratio,
                monomial_b: e.clone(),
                ratio_b: r,
            }));
        }
    }
    Ok(Ok(ratio))
}

/// Semi-invariance of f under the group generated by the given matrices:
/// the character if `f^g = chi(g) f` for every generator, otherwise a
/// witness naming the first violating generator.
pub fn semi_invariant(f: &Polynomial, generators: &[CycMatrix]) -> Result<SemiInvariance> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut values = Vec::with_capacity(generators.len());
    for (i, g) in generators.iter().enumerate() {
        match generator_multiplier(f, g)? {
            Ok(ratio) => values.push(ratio),
            Err(mismatch) => {
                return Ok(SemiInvariance::Failure(FailureWitness {
                    generator_index: i,
                    mismatch,
                }))
            }
        }
    }
    Ok(SemiInvariance::Invariant(Character { values }))
}

/// Convenience constructors for the catalog polynomials.
pub fn sum_of_cubes(ctx: &Arc<CycContext>, nvars: usize) -> Polynomial {
    let mut terms = Vec::new();
    for i in 0..nvars {
        let mut e = vec![0u32; nvars];
        e[i] = 3;
        terms.push((e, CycNumber::one(ctx)));
    }
    Polynomial::from_terms(nvars, terms).unwrap()
}

/// z1^2 + z2 z3 + z4^3 on four variables.
pub fn ca1_polynomial(ctx: &Arc<CycContext>) -> Polynomial {
    let one = CycNumber::one(ctx);
    Polynomial::from_terms(
        4,
        vec![
            (vec![2, 0, 0, 0], one.clone()),
            (vec![0, 1, 1, 0], one.clone()),
            (vec![0, 0, 0, 3], one),
        ],
    )
    .unwrap()
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

    #[test]
    fn fermat_cubic_is_invariant() {
        let ctx = ctx3();
        let f = sum_of_cubes(&ctx, 4);
        match semi_invariant(&f, &fermat_gens(&ctx)).unwrap() {
            SemiInvariance::Invariant(chi) => assert!(chi.is_trivial()),
            other => panic!("expected invariance, got {other:?}"),
        }
    }

    #[test]
    fn untouched_variable_gives_trivial_character() {
        let ctx = ctx3();
        let g = CycMatrix::diagonal(&[CycNumber::one(&ctx), zeta(&ctx, 1), zeta(&ctx, 2)]);
        let f = Polynomial::monomial(3, &[2, 0, 0], CycNumber::one(&ctx)).unwrap();
        match semi_invariant(&f, &[g]).unwrap() {
            SemiInvariance::Invariant(chi) => assert!(chi.is_trivial()),
            other => panic!("expected invariance, got {other:?}"),
        }
    }

    #[test]
    fn ca1_polynomial_is_not_semi_invariant() {
        // Generator 1 scales z1^2 and z2*z3 by zeta^2 but z4^3 by 1, so the
        // polynomial is not even semi-invariant.  The reported pair is the
        // first mismatch in canonical monomial order: z4^3 against z2*z3.
        let ctx = ctx3();
        let f = ca1_polynomial(&ctx);
        match semi_invariant(&f, &ca1_gens(&ctx)).unwrap() {
            SemiInvariance::Failure(w) => {
                assert_eq!(w.generator_index, 0);
                match w.mismatch {
                    Mismatch::RatioMismatch { monomial_a, ratio_a, monomial_b, ratio_b } => {
                        assert_eq!(monomial_a, vec![0, 0, 0, 3]);
                        assert!(ratio_a.is_one());
                        assert_eq!(monomial_b, vec![0, 1, 1, 0]);
                        assert_eq!(ratio_b, zeta(&ctx, 2));
                    }
                    other => panic!("expected a ratio mismatch, got {other:?}"),
                }
            }
            other => panic!("expected failure witness, got {other:?}"),
        }
        // The multiplier mismatch zeta^2 vs 1 also shows on z1^2 directly.
        let gens = ca1_gens(&ctx);
        let z1sq = Polynomial::monomial(4, &[2, 0, 0, 0], CycNumber::one(&ctx)).unwrap();
        let ratio = generator_multiplier(&z1sq, &gens[0]).unwrap().unwrap();
        assert_eq!(ratio, zeta(&ctx, 2));
    }

    #[test]
    fn ca1_per_generator_outcomes() {
        // Generators 1 and 2 each fail; generator 3 acts trivially.
        let ctx = ctx3();
        let f = ca1_polynomial(&ctx);
        let gens = ca1_gens(&ctx);
        assert!(generator_multiplier(&f, &gens[0]).unwrap().is_err());
        assert!(generator_multiplier(&f, &gens[1]).unwrap().is_err());
        let chi = generator_multiplier(&f, &gens[2]).unwrap().unwrap();
        assert!(chi.is_one());
    }

    #[test]
    fn nontrivial_character_is_detected() {
        // f = z1 under diag(zeta, 1): semi-invariant with multiplier zeta.
        let ctx = ctx3();
        let g = CycMatrix::diagonal(&[zeta(&ctx, 1), CycNumber::one(&ctx)]);
        let f = Polynomial::monomial(2, &[1, 0], CycNumber::one(&ctx)).unwrap();
        match semi_invariant(&f, &[g]).unwrap() {
            SemiInvariance::Invariant(chi) => {
                assert!(!chi.is_trivial());
                assert_eq!(chi.values()[0], zeta(&ctx, 1));
            }
            other => panic!("expected semi-invariance, got {other:?}"),
        }
    }

    #[test]
    fn support_change_is_witnessed() {
        // The 3-cycle permutation mixes z1 + 2 z2 into a different support
        // multiset, but z1+z2+z3 stays invariant; check both.
        let ctx = ctx3();
        let x = CycMatrix::from_int_rows(&ctx, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]);
        let sum = Polynomial::from_terms(
            3,
            vec![
                (vec![1, 0, 0], CycNumber::one(&ctx)),
                (vec![0, 1, 0], CycNumber::one(&ctx)),
                (vec![0, 0, 1], CycNumber::one(&ctx)),
            ],
        )
        .unwrap();
        assert!(matches!(
            semi_invariant(&sum, &[x.clone()]).unwrap(),
            SemiInvariance::Invariant(_)
        ));
        let skew = Polynomial::from_terms(
            3,
            vec![
                (vec![1, 0, 0], CycNumber::one(&ctx)),
                (vec![0, 1, 0], CycNumber::from_integer(&ctx, 2)),
            ],
        )
        .unwrap();
        match semi_invariant(&skew, &[x]).unwrap() {
            SemiInvariance::Failure(w) => assert_eq!(w.generator_index, 0),
            other => panic!("expected failure, got {other:?}"),
        }
    }

    #[test]
    fn zero_polynomial_is_rejected() {
        let ctx = ctx3();
        let z = Polynomial::zero(2);
        let g = CycMatrix::identity(&ctx, 2);
        assert!(matches!(semi_invariant(&z, &[g]), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn homogeneous_parts() {
        let ctx = ctx3();
        let f = ca1_polynomial(&ctx);
        let quad = f.homogeneous_part(2);
        assert_eq!(quad.num_terms(), 2);
        assert!(quad.coefficient(&[2, 0, 0, 0]).is_some());
        assert!(quad.coefficient(&[0, 1, 1, 0]).is_some());
        assert!(f.homogeneous_part(5).is_zero());
        let cubic = sum_of_cubes(&ctx, 4);
        assert_eq!(cubic.homogeneous_part(3), cubic);
    }

    #[test]
    fn substitution_matches_manual_expansion() {
        // f = z1^2 under the shear z1 -> z1 + z2 gives z1^2 + 2 z1 z2 + z2^2.
        let ctx = ctx3();
        let g = CycMatrix::from_int_rows(&ctx, &[&[1, 1], &[0, 1]]);
        let f = Polynomial::monomial(2, &[2, 0], CycNumber::one(&ctx)).unwrap();
        let fg = f.substitute(&g).unwrap();
        assert_eq!(fg.num_terms(), 3);
        assert_eq!(fg.coefficient(&[1, 1]).unwrap(), &CycNumber::from_integer(&ctx, 2));
        assert_eq!(fg.degree(), 2);
    }

    #[test]
    fn diagonal_shortcut_agrees_with_substitution() {
        // For diagonal g the multiplier of a monomial is the product of the
        // eigenvalue powers; check against full substitution.
        let ctx = ctx3();
        let g = CycMatrix::diagonal(&[zeta(&ctx, 1), zeta(&ctx, 2), CycNumber::one(&ctx)]);
        let f = Polynomial::from_terms(
            3,
            vec![
                (vec![1, 1, 0], CycNumber::one(&ctx)),
                (vec![0, 0, 3], CycNumber::one(&ctx)),
            ],
        )
        .unwrap();
        let fg = f.substitute(&g).unwrap();
        for (e, c) in f.terms() {
            let mut mult = CycNumber::one(&ctx);
            for (j, &p) in e.iter().enumerate() {
                mult = mult.mul(&g.entry(j, j).pow(p as u64));
            }
            assert_eq!(fg.coefficient(e).unwrap(), &c.mul(&mult));
        }
    }
}
