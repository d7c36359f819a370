//! Exact arithmetic in the cyclotomic field `Q(zeta_N)`.
//!
//! Elements are stored in the power basis `{zeta^0, ..., zeta^(phi(N)-1)}`
//! fully reduced modulo the N-th cyclotomic polynomial, so equality and
//! hashing are coefficient-wise and every value has one canonical form.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Arithmetic context for one root order N: the Euler totient `phi(N)` and
/// the reduction table expressing `zeta^k` (`phi(N) <= k < N`) in the power
/// basis.  Contexts with different N must never be mixed in one arithmetic
/// call; parse-time embedding is the only crossing point.
#[derive(Debug)]
pub struct CycContext {
    root_order: u64,
    phi: usize,
    /// `reduction[k - phi]` is the basis representation of `zeta^k`.
    reduction: Vec<Vec<BigRational>>,
}

impl CycContext {
    pub fn new(root_order: u64) -> Result<Arc<CycContext>> {
        if root_order == 0 {
            return Err(Error::Validation("cyclotomic root order must be positive".into()));
        }
        let min_poly = cyclotomic_polynomial(root_order);
        let phi = min_poly.len() - 1;
        // zeta^phi = -(c_0 + c_1 zeta + ... + c_{phi-1} zeta^{phi-1});
        // higher rows follow by shifting and folding the overflow term.
        let base: Vec<BigRational> = min_poly[..phi]
            .iter()
            .map(|c| BigRational::from_integer(-c.clone()))
            .collect();
        let mut reduction = Vec::with_capacity((root_order as usize).saturating_sub(phi));
        if phi < root_order as usize {
            reduction.push(base.clone());
            for _ in (phi + 1)..root_order as usize {
                let prev = reduction.last().unwrap();
                let carry = prev[phi - 1].clone();
                let mut next = vec![BigRational::zero(); phi];
                for j in 1..phi {
                    next[j] = &prev[j - 1] + &carry * &base[j];
                }
                next[0] = &carry * &base[0];
                reduction.push(next);
            }
        }
        Ok(Arc::new(CycContext { root_order, phi, reduction }))
    }

    pub fn root_order(&self) -> u64 {
        self.root_order
    }

    pub fn phi(&self) -> usize {
        self.phi
    }

    /// Reduce a dense coefficient vector (exponents `0..len`) to the power
    /// basis.  Exponents at or above N are first folded via `zeta^N = 1`.
    fn reduce(&self, mut dense: Vec<BigRational>) -> Vec<BigRational> {
        let n = self.root_order as usize;
        if dense.len() > n {
            for k in (n..dense.len()).rev() {
                let c = std::mem::replace(&mut dense[k], BigRational::zero());
                if !c.is_zero() {
                    dense[k - n] = &dense[k - n] + c;
                }
            }
            dense.truncate(n);
        }
        for k in (self.phi..dense.len()).rev() {
            let c = std::mem::replace(&mut dense[k], BigRational::zero());
            if !c.is_zero() {
                let row = &self.reduction[k - self.phi];
                for j in 0..self.phi {
                    if !row[j].is_zero() {
                        dense[j] = &dense[j] + &c * &row[j];
                    }
                }
            }
        }
        dense.resize(self.phi, BigRational::zero());
        dense
    }
}

/// One canonical element of `Q(zeta_N)`.
#[derive(Debug, Clone)]
pub struct CycNumber {
    ctx: Arc<CycContext>,
    coeffs: Vec<BigRational>,
}

impl PartialEq for CycNumber {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.root_order == other.ctx.root_order && self.coeffs == other.coeffs
    }
}

impl Eq for CycNumber {}

impl Hash for CycNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.ctx.root_order.hash(state);
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl CycNumber {
    pub fn zero(ctx: &Arc<CycContext>) -> CycNumber {
        CycNumber { ctx: Arc::clone(ctx), coeffs: vec![BigRational::zero(); ctx.phi] }
    }

    pub fn one(ctx: &Arc<CycContext>) -> CycNumber {
        Self::from_rational(ctx, BigRational::one())
    }

    pub fn from_rational(ctx: &Arc<CycContext>, value: BigRational) -> CycNumber {
        let mut coeffs = vec![BigRational::zero(); ctx.phi];
        coeffs[0] = value;
        CycNumber { ctx: Arc::clone(ctx), coeffs }
    }

    pub fn from_integer(ctx: &Arc<CycContext>, value: i64) -> CycNumber {
        Self::from_rational(ctx, BigRational::from_integer(BigInt::from(value)))
    }

    /// `zeta_N^k`, with `k` taken modulo N.
    pub fn root_of_unity(ctx: &Arc<CycContext>, k: i64) -> CycNumber {
        let n = ctx.root_order as i64;
        let k = k.rem_euclid(n) as usize;
        let mut dense = vec![BigRational::zero(); k + 1];
        dense[k] = BigRational::one();
        CycNumber { ctx: Arc::clone(ctx), coeffs: ctx.reduce(dense) }
    }

    /// Build from explicit sparse (exponent, coefficient) pairs; exponents
    /// must lie below N and are reduced to the power basis.
    pub fn from_sparse(ctx: &Arc<CycContext>, terms: &[(u64, BigRational)]) -> Result<CycNumber> {
        let n = ctx.root_order;
        let mut dense = vec![BigRational::zero(); n as usize];
        for (k, c) in terms {
            if *k >= n {
                return Err(Error::Validation(format!(
                    "exponent {k} out of range for root order {n}"
                )));
            }
            dense[*k as usize] = &dense[*k as usize] + c;
        }
        Ok(CycNumber { ctx: Arc::clone(ctx), coeffs: ctx.reduce(dense) })
    }

    pub fn context(&self) -> &Arc<CycContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// Some(q) when the element lies in Q.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn assert_same_ctx(&self, rhs: &CycNumber) {
        assert_eq!(
            self.ctx.root_order, rhs.ctx.root_order,
            "cyclotomic context mismatch: {} vs {}",
            self.ctx.root_order, rhs.ctx.root_order
        );
    }

    pub fn add(&self, rhs: &CycNumber) -> CycNumber {
        self.assert_same_ctx(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        CycNumber { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn sub(&self, rhs: &CycNumber) -> CycNumber {
        self.assert_same_ctx(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        CycNumber { ctx: Arc::clone(&self.ctx), coeffs }
    }

    pub fn neg(&self) -> CycNumber {
        CycNumber {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, rhs: &CycNumber) -> CycNumber {
        self.assert_same_ctx(rhs);
        let phi = self.ctx.phi;
        let mut dense = vec![BigRational::zero(); 2 * phi.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] = &dense[i + j] + a * b;
                }
            }
        }
        CycNumber { ctx: Arc::clone(&self.ctx), coeffs: self.ctx.reduce(dense) }
    }

    /// Multiplicative inverse, solving `self * x = 1` in the power basis.
    pub fn invert(&self) -> Result<CycNumber> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let phi = self.ctx.phi;
        // Column k of the multiplication-by-self matrix is self * zeta^k.
        let mut aug = vec![vec![BigRational::zero(); phi + 1]; phi];
        for k in 0..phi {
            let mut dense = vec![BigRational::zero(); phi + k];
            for (i, a) in self.coeffs.iter().enumerate() {
                dense[i + k] = a.clone();
            }
            let col = self.ctx.reduce(dense);
            for (row, v) in col.into_iter().enumerate() {
                aug[row][k] = v;
            }
        }
        aug[0][phi] = BigRational::one();
        // Gaussian elimination with first-nonzero pivots.
        let mut pivot_row = 0;
        let mut pivots = Vec::new();
        for col in 0..phi {
            let Some(r) = (pivot_row..phi).find(|&r| !aug[r][col].is_zero()) else {
                continue;
            };
            aug.swap(pivot_row, r);
            let inv = aug[pivot_row][col].recip();
            for v in aug[pivot_row].iter_mut() {
                *v = &*v * &inv;
            }
            for r in 0..phi {
                if r != pivot_row && !aug[r][col].is_zero() {
                    let f = aug[r][col].clone();
                    for c in col..=phi {
                        aug[r][c] = &aug[r][c] - &f * &aug[pivot_row][c];
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        // A nonzero field element is always invertible.
        debug_assert_eq!(pivot_row, phi);
        let mut coeffs = vec![BigRational::zero(); phi];
        for (row, col) in pivots.iter().enumerate() {
            coeffs[*col] = aug[row][phi].clone();
        }
        Ok(CycNumber { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn pow(&self, mut exp: u64) -> CycNumber {
        let mut base = self.clone();
        let mut acc = CycNumber::one(&self.ctx);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Minimal `m` dividing N with `self^m = 1`, if any.
    pub fn multiplicative_order(&self) -> Option<u64> {
        let n = self.ctx.root_order;
        let mut divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        divisors.sort_unstable();
        divisors.into_iter().find(|&m| self.pow(m).is_one())
    }

    /// Re-express in a context whose root order is a multiple of this one's,
    /// scaling exponents by the order ratio.
    pub fn embed(&self, target: &Arc<CycContext>) -> Result<CycNumber> {
        if target.root_order == self.ctx.root_order {
            return Ok(CycNumber { ctx: Arc::clone(target), coeffs: self.coeffs.clone() });
        }
        if target.root_order % self.ctx.root_order != 0 {
            return Err(Error::Validation(format!(
                "cannot embed root order {} into {}",
                self.ctx.root_order, target.root_order
            )));
        }
        let scale = (target.root_order / self.ctx.root_order) as usize;
        let mut dense = vec![BigRational::zero(); target.root_order as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                dense[k * scale] = c.clone();
            }
        }
        Ok(CycNumber { ctx: Arc::clone(target), coeffs: target.reduce(dense) })
    }

    /// Sparse canonical serialization: exponent -> "p" or "p/q".
    pub fn to_sparse(&self) -> BTreeMap<u64, String> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (k as u64, rational_to_string(c)))
            .collect()
    }

    /// Dense canonical key used for element ordering and hashing of
    /// serialized forms.
    pub fn canon_str(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(rational_to_string).collect();
        parts.join(",")
    }
}

impl fmt::Display for CycNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let coeff = rational_to_string(c);
            let term = match k {
                0 => coeff,
                _ => {
                    let var = if k == 1 { "z".to_string() } else { format!("z^{k}") };
                    if c.is_one() {
                        var
                    } else if (-c).is_one() {
                        format!("-{var}")
                    } else {
                        format!("{coeff}*{var}")
                    }
                }
            };
            terms.push(term);
        }
        if terms.is_empty() {
            return write!(f, "0");
        }
        let mut out = terms[0].clone();
        for t in &terms[1..] {
            if let Some(stripped) = t.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(t);
            }
        }
        write!(f, "{out}")
    }
}

impl std::ops::Add for &CycNumber {
    type Output = CycNumber;
    fn add(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::add(self, rhs)
    }
}

impl std::ops::Sub for &CycNumber {
    type Output = CycNumber;
    fn sub(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::sub(self, rhs)
    }
}

impl std::ops::Mul for &CycNumber {
    type Output = CycNumber;
    fn mul(self, rhs: &CycNumber) -> CycNumber {
        CycNumber::mul(self, rhs)
    }
}

impl std::ops::Neg for &CycNumber {
    type Output = CycNumber;
    fn neg(self) -> CycNumber {
        CycNumber::neg(self)
    }
}

pub fn rational_to_string(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Parse "p" or "p/q" into an exact rational in lowest terms.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (text, None),
    };
    let numer: BigInt = num
        .parse()
        .map_err(|_| Error::Parse(format!("invalid rational numerator {num:?}")))?;
    let denom: BigInt = match den {
        Some(d) => d
            .parse()
            .map_err(|_| Error::Parse(format!("invalid rational denominator {d:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Parse("zero denominator".into()));
    }
    Ok(BigRational::new(numer, denom))
}

/// Little-endian integer coefficients of the N-th cyclotomic polynomial,
/// computed by exact division of `x^N - 1` by all lower-order factors.
fn cyclotomic_polynomial(n: u64) -> Vec<BigInt> {
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = -BigInt::one();
    num[n as usize] = BigInt::one();
    let mut poly = num;
    for d in 1..n {
        if n % d == 0 {
            poly = poly_div_exact(&poly, &cyclotomic_polynomial(d));
        }
    }
    poly
}

/// Exact division of integer polynomials with a monic divisor.
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = num.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            quot[k] = c.clone();
            for (i, d) in den.iter().enumerate() {
                rem[k + i] -= &c * d;
            }
        }
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ctx3() -> Arc<CycContext> {
        CycContext::new(3).unwrap()
    }

    fn ctx9() -> Arc<CycContext> {
        CycContext::new(9).unwrap()
    }

    fn zeta(ctx: &Arc<CycContext>, k: i64) -> CycNumber {
        CycNumber::root_of_unity(ctx, k)
    }

    #[test]
    fn cyclotomic_polynomials() {
        // Phi_3 = x^2 + x + 1, Phi_9 = x^6 + x^3 + 1, Phi_12 = x^4 - x^2 + 1.
        let p3 = cyclotomic_polynomial(3);
        assert_eq!(p3, vec![BigInt::from(1), BigInt::from(1), BigInt::from(1)]);
        let p9 = cyclotomic_polynomial(9);
        assert_eq!(
            p9,
            [1i64, 0, 0, 1, 0, 0, 1].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
        let p12 = cyclotomic_polynomial(12);
        assert_eq!(
            p12,
            [1i64, 0, -1, 0, 1].iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn zeta3_relations() {
        let ctx = ctx3();
        // zeta + zeta^2 = -1, forced by 1 + zeta + zeta^2 = 0.
        let sum = zeta(&ctx, 1).add(&zeta(&ctx, 2));
        assert_eq!(sum, CycNumber::from_integer(&ctx, -1));
        // zeta * zeta^2 = 1.
        assert!(zeta(&ctx, 1).mul(&zeta(&ctx, 2)).is_one());
        // zeta^2 reduces to -1 - zeta.
        let z2 = zeta(&ctx, 2);
        assert_eq!(z2.coeffs()[0], BigRational::from_integer(BigInt::from(-1)));
        assert_eq!(z2.coeffs()[1], BigRational::from_integer(BigInt::from(-1)));
    }

    #[test]
    fn invert_negative_zeta_squared() {
        // invert(-zeta^2) = -zeta, since (-zeta^2)(-zeta) = zeta^3 = 1.
        let ctx = ctx3();
        let a = zeta(&ctx, 2).neg();
        let inv = a.invert().unwrap();
        assert_eq!(inv, zeta(&ctx, 1).neg());
        assert!(a.mul(&inv).is_one());
    }

    #[test]
    fn invert_zero_fails() {
        let ctx = ctx3();
        assert_eq!(CycNumber::zero(&ctx).invert(), Err(Error::ZeroInverse));
    }

    #[test]
    fn root_of_unity_basics() {
        let ctx3 = ctx3();
        assert!(zeta(&ctx3, 0).is_one());
        // zeta_9^3 has order 3 and is not 1.
        let ctx9 = ctx9();
        let z3 = zeta(&ctx9, 3);
        assert!(!z3.is_one());
        assert!(z3.pow(3).is_one());
        assert_eq!(z3.multiplicative_order(), Some(3));
        // Negative exponents wrap around.
        assert_eq!(zeta(&ctx3, -1), zeta(&ctx3, 2));
    }

    #[test]
    fn multiplicative_orders() {
        let ctx = ctx9();
        assert_eq!(CycNumber::one(&ctx).multiplicative_order(), Some(1));
        assert_eq!(zeta(&ctx, 1).multiplicative_order(), Some(9));
        assert_eq!(CycNumber::from_integer(&ctx, 2).multiplicative_order(), None);
        // -1 has order 2, which does not divide 9.
        assert_eq!(CycNumber::from_integer(&ctx, -1).multiplicative_order(), None);
    }

    #[test]
    fn embedding_scales_exponents() {
        let ctx3 = ctx3();
        let ctx9 = ctx9();
        let z = zeta(&ctx3, 1).embed(&ctx9).unwrap();
        assert_eq!(z, zeta(&ctx9, 3));
        assert_eq!(z.multiplicative_order(), Some(3));
        assert!(zeta(&ctx9, 1).embed(&ctx3).is_err());
    }

    #[test]
    fn sparse_round_trip() {
        let ctx = ctx3();
        let a = CycNumber::from_sparse(
            &ctx,
            &[(0, BigRational::new(BigInt::from(1), BigInt::from(2))), (2, BigRational::one())],
        )
        .unwrap();
        let sparse = a.to_sparse();
        let pairs: Vec<(u64, BigRational)> = sparse
            .iter()
            .map(|(k, v)| (*k, parse_rational(v).unwrap()))
            .collect();
        let b = CycNumber::from_sparse(&ctx, &pairs).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sparse_rejects_large_exponent() {
        let ctx = ctx3();
        assert!(CycNumber::from_sparse(&ctx, &[(3, BigRational::one())]).is_err());
    }

    #[test]
    fn display_forms() {
        let ctx = ctx3();
        assert_eq!(zeta(&ctx, 2).to_string(), "-1 - z");
        assert_eq!(CycNumber::zero(&ctx).to_string(), "0");
    }

    fn arb_cyc(n: u64) -> impl Strategy<Value = CycNumber> {
        let ctx = CycContext::new(n).unwrap();
        let phi = ctx.phi();
        proptest::collection::vec((-4i64..=4, 1i64..=3), phi).prop_map(move |coeffs| {
            let terms: Vec<(u64, BigRational)> = coeffs
                .into_iter()
                .enumerate()
                .map(|(k, (p, q))| (k as u64, BigRational::new(BigInt::from(p), BigInt::from(q))))
                .collect();
            CycNumber::from_sparse(&ctx, &terms).unwrap()
        })
    }

    proptest! {
        #[test]
        fn field_laws_n9(a in arb_cyc(9), b in arb_cyc(9), c in arb_cyc(9)) {
            // Commutativity and associativity of both operations.
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            // Distributivity.
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            // Inverses.
            prop_assert!(a.sub(&a).is_zero());
            if !a.is_zero() {
                prop_assert!(a.mul(&a.invert().unwrap()).is_one());
            }
        }

        #[test]
        fn roots_of_unity_power_to_one(n in prop::sample::select(vec![1u64, 2, 3, 9, 12]), k in 0i64..20) {
            let ctx = CycContext::new(n).unwrap();
            let z = CycNumber::root_of_unity(&ctx, k);
            prop_assert!(z.pow(n).is_one());
            let ord = z.multiplicative_order().unwrap();
            prop_assert_eq!(n % ord, 0);
        }

        #[test]
        fn canonical_form_is_stable(a in arb_cyc(9)) {
            // Re-running reduction on canonical coefficients changes nothing.
            let ctx = a.context().clone();
            let again = CycNumber::from_sparse(
                &ctx,
                &a.coeffs().iter().enumerate().map(|(k, c)| (k as u64, c.clone())).collect::<Vec<_>>(),
            ).unwrap();
            prop_assert_eq!(a, again);
        }
    }
}
