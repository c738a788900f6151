//! Closed formulas for the multiplicity of `chi^lambda` in the `k`-th tensor
//! power of `chi^(n-1,1)`, and their exponential generating function.

use std::collections::HashMap;
use std::fmt;
use std::sync::{LazyLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::{binomial, factorial};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tableaux::in_regime;

static P2_CACHE: LazyLock<RwLock<HashMap<(usize, usize), BigUint>>> = LazyLock::new(Default::default);

/// Set partitions of `{1, ..., n}` into `m` blocks, none of them a singleton.
pub fn p2(n: usize, m: usize) -> BigUint {
    if n < 2 * m {
        return BigUint::zero();
    }
    if m == 0 {
        return if n == 0 { BigUint::one() } else { BigUint::zero() };
    }
    if let Some(v) = P2_CACHE.read().unwrap().get(&(n, m)) {
        return v.clone();
    }
    // element n either joins one of the m blocks on {1..n-1}, or pairs off
    // with one of the n - 1 others as the seed of a new block
    let v = BigUint::from(m) * p2(n - 1, m) + BigUint::from(n - 1) * p2(n - 2, m - 1);
    P2_CACHE.write().unwrap().insert((n, m), v.clone());
    v
}

/// Multiplicity of `chi^lambda` in `(chi^(n-1,1))^{⊗k}`, valid for
/// `n >= k + lambda_2`.
pub fn multiplicity_formula(n: usize, k: usize, lambda: &Partition) -> Result<BigUint> {
    if lambda.weight() != n {
        return Err(Error::WeightMismatch { left: lambda.clone(), right: Partition::row(n) });
    }
    if !in_regime(n, k, lambda) {
        return Err(Error::Regime { n, k, lambda2: lambda.part(2) });
    }
    let ell = n - lambda.part(1);
    let mut sum = BigUint::zero();
    for m1 in 0..=ell.min(k) {
        let inner_lo = ell - m1;
        let inner_hi = (k - m1) / 2;
        let mut inner = BigUint::zero();
        for m2 in inner_lo..=inner_hi {
            inner += binomial(m2, ell - m1) * p2(k - m1, m2);
        }
        sum += binomial(k, m1) * inner;
    }
    Ok(lambda.truncated().standard_tableaux_count() * sum)
}

/// A power series `Σ c_i x^i` known exactly up to `x^order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedEgf {
    coeffs: Vec<BigRational>,
}

impl TruncatedEgf {
    pub fn zero(order: usize) -> Self {
        TruncatedEgf { coeffs: vec![BigRational::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, BigRational::one())
    }

    pub fn constant(order: usize, c: BigRational) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// Truncates or zero-pads `coeffs` to the given order.
    pub fn from_coeffs(order: usize, mut coeffs: Vec<BigRational>) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        TruncatedEgf { coeffs }
    }

    /// `e^x`.
    pub fn exp_x(order: usize) -> Self {
        let coeffs = (0..=order).map(|i| BigRational::new(BigInt::one(), factorial(i).into())).collect();
        TruncatedEgf { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// `i! [x^i]`, the coefficient in the exponential convention.
    pub fn egf_coeff(&self, i: usize) -> BigRational {
        &self.coeffs[i] * BigRational::from_integer(factorial(i).into())
    }

    fn check_order(&self, other: &Self) {
        assert_eq!(self.order(), other.order(), "series truncated at different orders");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_order(other);
        TruncatedEgf { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_order(other);
        TruncatedEgf { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        TruncatedEgf { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_order(other);
        let order = self.order();
        let mut out = Self::zero(order);
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }

    pub fn pow(&self, m: usize) -> Self {
        (0..m).fold(Self::one(self.order()), |acc, _| acc.mul(self))
    }

    /// `exp` of a series without constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::Precondition("exp needs a series without constant term".into()));
        }
        // g' = f' g, coefficientwise: g_n = (1/n) Σ_k k f_k g_{n-k}
        let order = self.order();
        let mut g = Self::one(order);
        for n in 1..=order {
            let mut acc = BigRational::zero();
            for k in 1..=n {
                acc += &self.coeffs[k] * &g.coeffs[n - k] * BigRational::from_integer(k.into());
            }
            g.coeffs[n] = acc / BigRational::from_integer(n.into());
        }
        Ok(g)
    }
}

impl fmt::Display for TruncatedEgf {
    /// Plain coefficients, e.g. `1 + 1/2 x^2 + 1/6 x^3 + O(x^4)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match i {
                0 => write!(f, "{mag}")?,
                _ if mag.is_one() => {}
                _ => write!(f, "{mag} ")?,
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(x^{})", self.order() + 1)
    }
}

/// `e^x - 1 - x`.
pub fn p_series(order: usize) -> TruncatedEgf {
    let mut s = TruncatedEgf::exp_x(order);
    s.coeffs[0] = BigRational::zero();
    if order >= 1 {
        s.coeffs[1] = BigRational::zero();
    }
    s
}

/// `f^λ̄ / ℓ! · e^{p(x)} (e^x - 1)^ℓ` with `ℓ = |λ̄|`, to order `order`.
pub fn egf_rhs(lambda_bar: &Partition, order: usize) -> TruncatedEgf {
    let ell = lambda_bar.weight();
    let e_minus_one = TruncatedEgf::exp_x(order).sub(&TruncatedEgf::one(order));
    let c = BigRational::new(lambda_bar.standard_tableaux_count().into(), factorial(ell).into());
    p_series(order).exp().expect("no constant term").mul(&e_minus_one.pow(ell)).scale(&c)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgfRow {
    pub k: usize,
    /// The weight used, `max(k + λ̄_1, 1)`.
    pub n: usize,
    pub formula: BigUint,
    /// `k! [x^k]` of [`egf_rhs`].
    pub egf: BigRational,
    pub ok: bool,
}

impl Serialize for EgfRow {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            k: usize,
            n: usize,
            formula: String,
            egf: String,
            ok: bool,
        }
        Repr { k: self.k, n: self.n, formula: self.formula.to_string(), egf: self.egf.to_string(), ok: self.ok }
            .serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EgfReport {
    pub lambda_bar: Partition,
    pub order: usize,
    /// Coefficients below `x^ℓ` all vanish.
    pub vanishes_below: bool,
    pub rows: Vec<EgfRow>,
}

impl EgfReport {
    pub fn passed(&self) -> bool {
        self.vanishes_below && self.rows.iter().all(|r| r.ok)
    }
}

/// Compares `k! [x^k]` of [`egf_rhs`] with [`multiplicity_formula`] at
/// `n = k + λ̄_1` (at least 1) for every `ℓ <= k <= order`, and checks the formula gives
/// the same value at `n + 1`.
pub fn egf_check(lambda_bar: &Partition, order: usize) -> EgfReport {
    let ell = lambda_bar.weight();
    let series = egf_rhs(lambda_bar, order);
    let vanishes_below = (0..ell.min(order + 1)).all(|i| series.coeff(i).is_zero());
    let rows = (ell..=order)
        .map(|k| {
            // the trivial group has no standard representation to tensor
            let n = (k + lambda_bar.part(1)).max(1);
            let at = |n: usize| {
                let lambda = lambda_bar.with_first_row(n - ell).expect("k >= ell");
                multiplicity_formula(n, k, &lambda).expect("in range by construction")
            };
            let formula = at(n);
            let egf = series.egf_coeff(k);
            let ok = egf == BigRational::from_integer(formula.clone().into()) && at(n + 1) == formula;
            EgfRow { k, n, formula, egf, ok }
        })
        .collect();
    EgfReport { lambda_bar: lambda_bar.clone(), order, vanishes_below, rows }
}
