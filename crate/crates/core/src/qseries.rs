//! Builders for q-series: q-integers, q-shifted factorials, the summands and
//! truncated sums of the built-in claims, and their closed-form right sides.
//!
//! Two layers coexist. The `RatFunc`-returning functions are the reference
//! surface: each call produces a fully reduced rational function. The
//! `*_factored` functions build [`FactoredRatFunc`] values and accumulate
//! sums from consecutive-term ratios, which is what makes the large
//! truncations (full sums at n^r terms) tractable; both layers agree exactly
//! and are cross-checked in the tests.

use num_rational::BigRational;
use thiserror::Error;

use crate::congruence::gcd_i64;
use crate::factored::{FactoredRatFunc, SumAccumulator, XPart};
use crate::field::{Field, ParamField};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;

#[derive(Debug, Error)]
pub enum QSeriesError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

fn hyp(msg: impl Into<String>) -> QSeriesError {
    QSeriesError::Hypothesis(msg.into())
}

/// Whether a q-shifted factorial carries an `a`-factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AFactor {
    None,
    TimesA,
    OverA,
}

/// A q-shifted factorial `prod_{j=0}^{k-1} (1 - X q^{t + j d})` with
/// `X in {1, a, 1/a}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PochSpec {
    pub shift: i64,
    pub step: i64,
    pub len: u64,
    pub a_factor: AFactor,
}

impl PochSpec {
    pub fn plain(shift: i64, step: i64, len: u64) -> Self {
        PochSpec {
            shift,
            step,
            len,
            a_factor: AFactor::None,
        }
    }
}

impl From<AFactor> for XPart {
    fn from(a: AFactor) -> XPart {
        match a {
            AFactor::None => XPart::One,
            AFactor::TimesA => XPart::A,
            AFactor::OverA => XPart::AInv,
        }
    }
}

/// The q-integer `[n]_{q^m} = 1 + q^m + ... + q^{m(n-1)}` for positive `n`.
/// Nonpositive `n` is rejected: every claim uses positive arguments, and the
/// rational-function extension is available through the factored layer.
pub fn q_int<F: Field>(n: i64, m: i64) -> Result<Poly<F>, QSeriesError> {
    if n < 1 {
        return Err(hyp(format!("q_int requires n >= 1, got {n}")));
    }
    if m < 1 {
        return Err(hyp(format!("q_int requires m >= 1, got {m}")));
    }
    let mut coeffs = vec![F::zero(); ((n - 1) * m) as usize + 1];
    for i in 0..n as usize {
        coeffs[i * m as usize] = F::one();
    }
    Ok(Poly::from_coeffs(coeffs))
}

/// The q-shifted factorial of `spec`, as a reduced rational function
/// (negative shifts and `1/a` factors produce genuine denominators).
pub fn q_poch<F: Field>(spec: &PochSpec) -> RatFunc<F> {
    assert!(spec.step >= 1, "pochhammer step must be positive");
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_poch(spec.a_factor.into(), spec.shift, spec.step, spec.len);
    f.into_ratfunc()
}

/// How the paired Pochhammer factors of a summand are filled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AMode {
    /// Nonparametric: the plain factors to the fourth power.
    Quartic,
    /// Parametric over `Q(a)`: squared plain factors times the
    /// `(a q^t; q^d)_k (q^t/a; q^d)_k`-style pair.
    Symbolic,
    /// The parametric shape with `a` specialized to `q^e`.
    QPower(i64),
}

impl AMode {
    fn assert_unstretched(&self, stretch: i64) {
        if !matches!(self, AMode::Quartic) {
            assert!(stretch == 1, "parametric summands are never stretched");
        }
    }
}

/// k-th summand of the Thm 5 family:
/// `[2dk+t] (q^t;q^d)_k^4 / (q^d;q^d)_k^4 q^{(d-2t)k}` (Quartic), its
/// parametric generalization (Symbolic), or the latter at `a = q^e`
/// (QPower). `stretch` substitutes `q -> q^stretch` throughout (used by the
/// Dwork-type right sides).
pub fn thm5_term_factored<F: Field>(
    d: i64,
    t: i64,
    k: u64,
    stretch: i64,
    amode: AMode,
) -> FactoredRatFunc<F> {
    amode.assert_unstretched(stretch);
    let s = stretch;
    let ki = k as i64;
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_qint(2 * d * ki + t, s);
    let plain_pow = if amode == AMode::Quartic { 4 } else { 2 };
    for _ in 0..plain_pow {
        f.mul_poch(XPart::One, s * t, s * d, k);
        f.div_poch(XPart::One, s * d, s * d, k);
    }
    match amode {
        AMode::Quartic => {}
        AMode::Symbolic => {
            f.mul_poch(XPart::A, t, d, k);
            f.mul_poch(XPart::AInv, t, d, k);
            f.div_poch(XPart::A, d, d, k);
            f.div_poch(XPart::AInv, d, d, k);
        }
        AMode::QPower(e) => {
            f.mul_poch(XPart::One, t + e, d, k);
            f.mul_poch(XPart::One, t - e, d, k);
            f.div_poch(XPart::One, d + e, d, k);
            f.div_poch(XPart::One, d - e, d, k);
        }
    }
    f.mul_qpow(s * (d - 2 * t) * ki);
    f
}

/// Consecutive-term ratio `T_k / T_{k-1}` for the Thm 5 family, `k >= 1`.
fn thm5_ratio<F: Field>(d: i64, t: i64, k: u64, stretch: i64, amode: AMode) -> FactoredRatFunc<F> {
    amode.assert_unstretched(stretch);
    let s = stretch;
    let ki = k as i64;
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_one_minus(XPart::One, s * (2 * d * ki + t));
    f.div_one_minus(XPart::One, s * (2 * d * ki - 2 * d + t));
    let e_num = t + (ki - 1) * d;
    let e_den = ki * d;
    let plain_pow = if amode == AMode::Quartic { 4 } else { 2 };
    for _ in 0..plain_pow {
        f.mul_one_minus(XPart::One, s * e_num);
        f.div_one_minus(XPart::One, s * e_den);
    }
    match amode {
        AMode::Quartic => {}
        AMode::Symbolic => {
            f.mul_one_minus(XPart::A, e_num);
            f.mul_one_minus(XPart::AInv, e_num);
            f.div_one_minus(XPart::A, e_den);
            f.div_one_minus(XPart::AInv, e_den);
        }
        AMode::QPower(e) => {
            f.mul_one_minus(XPart::One, e_num + e);
            f.mul_one_minus(XPart::One, e_num - e);
            f.div_one_minus(XPart::One, e_den + e);
            f.div_one_minus(XPart::One, e_den - e);
        }
    }
    f.mul_qpow(s * (d - 2 * t));
    f
}

/// `sum_{k=0}^{upper}` of the Thm 5 family summand, accumulated from term
/// ratios over a factored common denominator.
pub fn thm5_sum_factored<F: Field>(
    d: i64,
    t: i64,
    upper: u64,
    stretch: i64,
    amode: AMode,
) -> FactoredRatFunc<F> {
    let mut acc = SumAccumulator::new(&thm5_term_factored(d, t, 0, stretch, amode));
    for k in 1..=upper {
        acc.step(&thm5_ratio(d, t, k, stretch, amode));
    }
    acc.finish()
}

/// k-th summand of the Thm 6 family:
/// `[2dk+t]_{q^2} [2dk+t]^2 (q^{2t};q^{2d})_k^4 / (q^{2d};q^{2d})_k^4
/// q^{-4tk}` and its parametric variants.
pub fn thm6_term_factored<F: Field>(d: i64, t: i64, k: u64, amode: AMode) -> FactoredRatFunc<F> {
    amode.assert_unstretched(1);
    let ki = k as i64;
    let m = 2 * d * ki + t;
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_qint(m, 2);
    f.mul_qint(m, 1);
    f.mul_qint(m, 1);
    let plain_pow = if amode == AMode::Quartic { 4 } else { 2 };
    for _ in 0..plain_pow {
        f.mul_poch(XPart::One, 2 * t, 2 * d, k);
        f.div_poch(XPart::One, 2 * d, 2 * d, k);
    }
    match amode {
        AMode::Quartic => {}
        AMode::Symbolic => {
            f.mul_poch(XPart::A, 2 * t, 2 * d, k);
            f.mul_poch(XPart::AInv, 2 * t, 2 * d, k);
            f.div_poch(XPart::A, 2 * d, 2 * d, k);
            f.div_poch(XPart::AInv, 2 * d, 2 * d, k);
        }
        AMode::QPower(e) => {
            f.mul_poch(XPart::One, 2 * t + e, 2 * d, k);
            f.mul_poch(XPart::One, 2 * t - e, 2 * d, k);
            f.div_poch(XPart::One, 2 * d + e, 2 * d, k);
            f.div_poch(XPart::One, 2 * d - e, 2 * d, k);
        }
    }
    f.mul_qpow(-4 * t * ki);
    f
}

fn thm6_ratio<F: Field>(d: i64, t: i64, k: u64, amode: AMode) -> FactoredRatFunc<F> {
    let ki = k as i64;
    let m_new = 2 * d * ki + t;
    let m_old = 2 * d * (ki - 1) + t;
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_one_minus(XPart::One, 2 * m_new);
    f.div_one_minus(XPart::One, 2 * m_old);
    for _ in 0..2 {
        f.mul_one_minus(XPart::One, m_new);
        f.div_one_minus(XPart::One, m_old);
    }
    let e_num = 2 * t + 2 * (ki - 1) * d;
    let e_den = 2 * ki * d;
    let plain_pow = if amode == AMode::Quartic { 4 } else { 2 };
    for _ in 0..plain_pow {
        f.mul_one_minus(XPart::One, e_num);
        f.div_one_minus(XPart::One, e_den);
    }
    match amode {
        AMode::Quartic => {}
        AMode::Symbolic => {
            f.mul_one_minus(XPart::A, e_num);
            f.mul_one_minus(XPart::AInv, e_num);
            f.div_one_minus(XPart::A, e_den);
            f.div_one_minus(XPart::AInv, e_den);
        }
        AMode::QPower(e) => {
            f.mul_one_minus(XPart::One, e_num + e);
            f.mul_one_minus(XPart::One, e_num - e);
            f.div_one_minus(XPart::One, e_den + e);
            f.div_one_minus(XPart::One, e_den - e);
        }
    }
    f.mul_qpow(-4 * t);
    f
}

pub fn thm6_sum_factored<F: Field>(d: i64, t: i64, upper: u64, amode: AMode) -> FactoredRatFunc<F> {
    let mut acc = SumAccumulator::new(&thm6_term_factored(d, t, 0, amode));
    for k in 1..=upper {
        acc.step(&thm6_ratio(d, t, k, amode));
    }
    acc.finish()
}

/// k-th summand of the vanishing sum:
/// `[2dk+1] (q;q^d)_k^d / (q^d;q^d)_k^d q^{d(d-3)k/2}`, even `d >= 4`.
pub fn gs_term_factored(d: i64, k: u64) -> FactoredRatFunc<BigRational> {
    assert!(d >= 4 && d % 2 == 0);
    let ki = k as i64;
    let mut f = FactoredRatFunc::one();
    f.mul_qint(2 * d * ki + 1, 1);
    for _ in 0..d {
        f.mul_poch(XPart::One, 1, d, k);
        f.div_poch(XPart::One, d, d, k);
    }
    f.mul_qpow(d * (d - 3) / 2 * ki);
    f
}

fn gs_ratio(d: i64, k: u64) -> FactoredRatFunc<BigRational> {
    let ki = k as i64;
    let mut f = FactoredRatFunc::one();
    f.mul_one_minus(XPart::One, 2 * d * ki + 1);
    f.div_one_minus(XPart::One, 2 * d * ki - 2 * d + 1);
    for _ in 0..d {
        f.mul_one_minus(XPart::One, 1 + (ki - 1) * d);
        f.div_one_minus(XPart::One, ki * d);
    }
    f.mul_qpow(d * (d - 3) / 2);
    f
}

pub fn gs_sum_factored(d: i64, upper: u64) -> FactoredRatFunc<BigRational> {
    let mut acc = SumAccumulator::new(&gs_term_factored(d, 0));
    for k in 1..=upper {
        acc.step(&gs_ratio(d, k));
    }
    acc.finish()
}

/// Thm 5 closed form:
/// `((q^{2t};q^d)_m / (q^d;q^d)_m) [n] q^{t(t-n)/d}` with `m = (n-t)/d`.
pub fn rhs_thm5_factored<F: Field>(
    d: i64,
    t: i64,
    n: i64,
) -> Result<FactoredRatFunc<F>, QSeriesError> {
    let m = exact_div(n - t, d)?;
    if m < 0 {
        return Err(hyp(format!("(n - t)/d must be nonnegative, got {m}")));
    }
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_poch(XPart::One, 2 * t, d, m as u64);
    f.div_poch(XPart::One, d, d, m as u64);
    f.mul_qint(n, 1);
    f.mul_qpow(t * (t - n) / d);
    Ok(f)
}

/// Thm 6 closed form:
/// `-2 [t]^2 [n]_{q^2} (q^{4t};q^{2d})_m q^{t-2tm} /
///  ((1+q^{2t}) (q^{2d};q^{2d})_m)` with `m = (n-t)/d`.
pub fn rhs_thm6_factored<F: Field>(
    d: i64,
    t: i64,
    n: i64,
) -> Result<FactoredRatFunc<F>, QSeriesError> {
    let m = exact_div(n - t, d)?;
    if m < 0 {
        return Err(hyp(format!("(n - t)/d must be nonnegative, got {m}")));
    }
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_scalar(&F::from_i64(-2));
    f.mul_qint(t, 1);
    f.mul_qint(t, 1);
    f.mul_qint(n, 2);
    f.mul_poch(XPart::One, 4 * t, 2 * d, m as u64);
    f.div_poch(XPart::One, 2 * d, 2 * d, m as u64);
    f.mul_qpow(t - 2 * t * m);
    // 1 + q^{2t} = (1 - q^{4t})/(1 - q^{2t})
    f.div_one_minus(XPart::One, 4 * t);
    f.mul_one_minus(XPart::One, 2 * t);
    Ok(f)
}

/// The bracket factor of the Thm 4/6 parametric closed form:
/// `1 - (1 - X q^{2t})(1 - q^{2t}/X) / ((1 - q^t)^2 (1 + q^{2t}))`.
fn thm6_bracket_factored<F: Field>(t: i64, amode: AMode) -> FactoredRatFunc<F> {
    let mut g = FactoredRatFunc::<F>::one();
    match amode {
        AMode::Symbolic => {
            g.mul_one_minus(XPart::A, 2 * t);
            g.mul_one_minus(XPart::AInv, 2 * t);
        }
        AMode::QPower(e) => {
            g.mul_one_minus(XPart::One, 2 * t + e);
            g.mul_one_minus(XPart::One, 2 * t - e);
        }
        AMode::Quartic => panic!("bracket requires a parametric mode"),
    }
    g.div_one_minus(XPart::One, t);
    g.div_one_minus(XPart::One, t);
    g.div_one_minus(XPart::One, 4 * t);
    g.mul_one_minus(XPart::One, 2 * t);
    FactoredRatFunc::one().sub(&g)
}

/// Parametric Thm 4/6 closed form:
/// `[t]^2 [n]_{q^2} ((q^{4t};q^{2d})_m/(q^{2d};q^{2d})_m) q^{-2tm} *
///  bracket`, `m = (n-t)/d`.
pub fn rhs_thm4_param_factored<F: Field>(
    d: i64,
    t: i64,
    n: i64,
    amode: AMode,
) -> Result<FactoredRatFunc<F>, QSeriesError> {
    let m = exact_div(n - t, d)?;
    if m < 0 {
        return Err(hyp(format!("(n - t)/d must be nonnegative, got {m}")));
    }
    let mut f = FactoredRatFunc::<F>::one();
    f.mul_qint(t, 1);
    f.mul_qint(t, 1);
    f.mul_qint(n, 2);
    f.mul_poch(XPart::One, 4 * t, 2 * d, m as u64);
    f.div_poch(XPart::One, 2 * d, 2 * d, m as u64);
    f.mul_qpow(-2 * t * m);
    Ok(f.mul(&thm6_bracket_factored(t, amode)))
}

/// Dwork-type closed form for the conjecture at level `(n, r)`:
/// the Thm 1 prefactor at `n^r`, a compensating Pochhammer ratio at scale
/// `q^n`, and the whole truncated sum one level down (in `q^n`).
pub fn rhs_conj_factored(n: i64, r: u32, full: bool) -> FactoredRatFunc<BigRational> {
    assert!(n > 1 && n % 4 == 1 && r >= 2);
    let nr = n.pow(r);
    let nr1 = n.pow(r - 1);
    let m_out = ((nr - 1) / 4) as u64;
    let m_in = ((nr1 - 1) / 4) as u64;
    let mut f = FactoredRatFunc::one();
    f.mul_poch(XPart::One, 2, 4, m_out);
    f.div_poch(XPart::One, 4, 4, m_out);
    f.mul_poch(XPart::One, 4 * n, 4 * n, m_in);
    f.div_poch(XPart::One, 2 * n, 4 * n, m_in);
    f.mul_qint(n, 1);
    f.mul_qpow((1 - n) / 4);
    let inner_upper = if full { (nr1 - 1) as u64 } else { m_in };
    f.mul(&thm5_sum_factored(4, 1, inner_upper, n, AMode::Quartic))
}

fn exact_div(num: i64, den: i64) -> Result<i64, QSeriesError> {
    if den == 0 || num % den != 0 {
        return Err(hyp(format!("{num} is not divisible by {den}")));
    }
    Ok(num / den)
}

/// The unique `s` with `0 <= s <= m-1` and `d s == -t (mod m)`; requires
/// `gcd(d, m) = 1`.
pub fn lemma_s(m: i64, d: i64, t: i64) -> Result<i64, QSeriesError> {
    if m <= 1 {
        return Err(hyp(format!("m must exceed 1, got {m}")));
    }
    if gcd_i64(d, m) != 1 {
        return Err(hyp(format!("gcd(d, m) must be 1, got d={d}, m={m}")));
    }
    for s in 0..m {
        if (d * s + t).rem_euclid(m) == 0 {
            return Ok(s);
        }
    }
    unreachable!("d is invertible mod m")
}

fn validate_lemma(m: i64, d: i64, t: i64) -> Result<(), QSeriesError> {
    if d < 2 {
        return Err(hyp(format!("d must be at least 2, got {d}")));
    }
    if gcd_i64(d, t) != 1 {
        return Err(hyp(format!("gcd(d, t) must be 1, got d={d}, t={t}")));
    }
    lemma_s(m, d, t).map(|_| ())
}

/// The two sides of the Lemma 1 congruence (mod `Phi_m`), for `0 <= k <= s`:
/// LHS `(a q^t; q^d)_{s-k} / (q^d/a; q^d)_{s-k}`, RHS
/// `(-a)^{s-2k} q^{s(ds-d+2t)/2 + (d-t)k} (a q^t; q^d)_k / (q^d/a; q^d)_k`.
pub fn lemma1_sides_factored(
    m: i64,
    d: i64,
    t: i64,
    k: i64,
) -> Result<(FactoredRatFunc<ParamField>, FactoredRatFunc<ParamField>), QSeriesError> {
    validate_lemma(m, d, t)?;
    let s = lemma_s(m, d, t)?;
    if k < 0 || k > s {
        return Err(hyp(format!("k must lie in [0, s] = [0, {s}], got {k}")));
    }
    let mut lhs = FactoredRatFunc::<ParamField>::one();
    lhs.mul_poch(XPart::A, t, d, (s - k) as u64);
    lhs.div_poch(XPart::AInv, d, d, (s - k) as u64);

    let mut rhs = FactoredRatFunc::<ParamField>::one();
    let a = <ParamField as Field>::var_a().expect("parametric");
    let minus_a = Field::neg(&a);
    rhs.mul_scalar(&minus_a.pow_i64(s - 2 * k));
    rhs.mul_qpow(s * (d * s - d + 2 * t) / 2 + (d - t) * k);
    rhs.mul_poch(XPart::A, t, d, k as u64);
    rhs.div_poch(XPart::AInv, d, d, k as u64);
    Ok((lhs, rhs))
}

/// The Lemma 2 sum `sum_{k=0}^{m-1}` of the parametric Thm 5 summand
/// (vanishes mod `Phi_m`).
pub fn lemma2_sum_factored(
    m: i64,
    d: i64,
    t: i64,
) -> Result<FactoredRatFunc<ParamField>, QSeriesError> {
    validate_lemma(m, d, t)?;
    Ok(thm5_sum_factored(d, t, (m - 1) as u64, 1, AMode::Symbolic))
}

/// The Lemma 3 sum `sum_{k=0}^{m-1}` of the parametric Thm 6 summand
/// (vanishes mod `Phi_m(q^2)`).
pub fn lemma3_sum_factored(
    m: i64,
    d: i64,
    t: i64,
) -> Result<FactoredRatFunc<ParamField>, QSeriesError> {
    validate_lemma(m, d, t)?;
    Ok(thm6_sum_factored(d, t, (m - 1) as u64, AMode::Symbolic))
}

// ---------------------------------------------------------------------------
// Reference (reduced RatFunc) surface.
// ---------------------------------------------------------------------------

fn validate_summand(d: i64, t: i64) -> Result<(), QSeriesError> {
    if d < 2 {
        return Err(hyp(format!("d must be at least 2, got {d}")));
    }
    if gcd_i64(t, d) != 1 {
        return Err(hyp(format!("gcd(t, d) must be 1, got t={t}, d={d}")));
    }
    Ok(())
}

pub fn summand_thm5(d: i64, t: i64, k: u64) -> Result<RatFunc<BigRational>, QSeriesError> {
    validate_summand(d, t)?;
    Ok(thm5_term_factored(d, t, k, 1, AMode::Quartic).into_ratfunc())
}

pub fn summand_thm5_param(d: i64, t: i64, k: u64) -> Result<RatFunc<ParamField>, QSeriesError> {
    validate_summand(d, t)?;
    Ok(thm5_term_factored(d, t, k, 1, AMode::Symbolic).into_ratfunc())
}

pub fn summand_thm6(d: i64, t: i64, k: u64) -> Result<RatFunc<BigRational>, QSeriesError> {
    validate_summand(d, t)?;
    Ok(thm6_term_factored(d, t, k, AMode::Quartic).into_ratfunc())
}

pub fn summand_thm6_param(d: i64, t: i64, k: u64) -> Result<RatFunc<ParamField>, QSeriesError> {
    validate_summand(d, t)?;
    Ok(thm6_term_factored(d, t, k, AMode::Symbolic).into_ratfunc())
}

pub fn summand_gs(d: i64, k: u64) -> Result<RatFunc<BigRational>, QSeriesError> {
    if d < 4 || d % 2 != 0 {
        return Err(hyp(format!("d must be even and >= 4, got {d}")));
    }
    Ok(gs_term_factored(d, k).into_ratfunc())
}

/// Exact sum of `summand(0..=upper)` as a reduced rational function.
pub fn truncated_sum<F: Field>(summand: impl Fn(u64) -> RatFunc<F>, upper: u64) -> RatFunc<F> {
    let mut acc = RatFunc::zero();
    for k in 0..=upper {
        acc = acc.add(&summand(k));
    }
    acc
}

pub fn rhs_thm5(d: i64, t: i64, n: i64) -> Result<RatFunc<BigRational>, QSeriesError> {
    Ok(rhs_thm5_factored(d, t, n)?.into_ratfunc())
}

pub fn rhs_thm6(d: i64, t: i64, n: i64) -> Result<RatFunc<BigRational>, QSeriesError> {
    Ok(rhs_thm6_factored(d, t, n)?.into_ratfunc())
}

/// Thm 3 closed form over `Q(a)` (it is free of `a`).
pub fn rhs_thm3_param(n: i64) -> Result<RatFunc<ParamField>, QSeriesError> {
    Ok(rhs_thm5_factored::<ParamField>(4, 1, n)?.into_ratfunc())
}

pub fn rhs_thm4_param(d: i64, t: i64, n: i64) -> Result<RatFunc<ParamField>, QSeriesError> {
    Ok(rhs_thm4_param_factored::<ParamField>(d, t, n, AMode::Symbolic)?.into_ratfunc())
}

pub fn lemma1_sides(
    m: i64,
    d: i64,
    t: i64,
    k: i64,
) -> Result<(RatFunc<ParamField>, RatFunc<ParamField>), QSeriesError> {
    let (l, r) = lemma1_sides_factored(m, d, t, k)?;
    Ok((l.into_ratfunc(), r.into_ratfunc()))
}

pub fn lemma2_sum(m: i64, d: i64, t: i64) -> Result<RatFunc<ParamField>, QSeriesError> {
    Ok(lemma2_sum_factored(m, d, t)?.into_ratfunc())
}

pub fn lemma3_sum(m: i64, d: i64, t: i64) -> Result<RatFunc<ParamField>, QSeriesError> {
    Ok(lemma3_sum_factored(m, d, t)?.into_ratfunc())
}

/// Specialize the parameter `a` of a parametric rational function to a
/// rational value, re-reducing the result.
pub fn eval_a(rf: &RatFunc<ParamField>, at: &BigRational) -> Option<RatFunc<BigRational>> {
    rf.map_eval(|c| {
        let den = c.den().eval(at);
        assert!(
            !num_traits::Zero::is_zero(&den),
            "coefficient denominator vanishes at a = {at}"
        );
        c.num().eval(at) / den
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{check_congruent, Modulus};
    use crate::poly::{cyclotomic, cyclotomic_in};

    type R = RatFunc<BigRational>;
    type P = Poly<BigRational>;

    fn p(coeffs: &[i64]) -> P {
        Poly::from_i64_coeffs(coeffs)
    }

    fn qint(n: i64) -> P {
        q_int::<BigRational>(n, 1).unwrap()
    }

    #[test]
    fn q_int_examples() {
        assert_eq!(qint(5), p(&[1, 1, 1, 1, 1]));
        assert_eq!(q_int::<BigRational>(1, 7).unwrap(), p(&[1]));
        assert_eq!(q_int::<BigRational>(3, 2).unwrap(), p(&[1, 0, 1, 0, 1]));
        assert!(q_int::<BigRational>(0, 1).is_err());
        assert!(q_int::<BigRational>(-2, 1).is_err());
    }

    #[test]
    fn q_int_subst_coherence() {
        for n in 1..=30 {
            for m in 1..=30 {
                assert_eq!(
                    q_int::<BigRational>(n, m).unwrap(),
                    qint(n).subst_power(m as usize),
                    "n={n} m={m}"
                );
            }
        }
    }

    #[test]
    fn q_poch_examples() {
        // (q; q^4)_2 = (1-q)(1-q^5)
        let r = q_poch::<BigRational>(&PochSpec::plain(1, 4, 2));
        assert_eq!(r, R::from_poly(p(&[1, -1]).mul(&p(&[1, 0, 0, 0, 0, -1]))));
        // empty product
        assert!(q_poch::<BigRational>(&PochSpec::plain(-3, 2, 0)).is_one());
        // (a q^2; q^8)_1 = 1 - a q^2
        let r = q_poch::<ParamField>(&PochSpec {
            shift: 2,
            step: 8,
            len: 1,
            a_factor: AFactor::TimesA,
        });
        let a = <ParamField as Field>::var_a().unwrap();
        let expect = Poly::from_coeffs(vec![
            <ParamField as Field>::one(),
            <ParamField as Field>::zero(),
            Field::neg(&a),
        ]);
        assert_eq!(r, RatFunc::from_poly(expect));
    }

    #[test]
    fn summand_thm5_examples() {
        assert!(summand_thm5(4, 1, 0).unwrap().is_one());
        // k=1: [9](1-q)^4/(1-q^4)^4 q^2
        let expect = R::new(
            qint(9).mul(&p(&[1, -1]).pow(4)).mul_qpow(2),
            p(&[1, 0, 0, 0, -1]).pow(4),
        );
        assert_eq!(summand_thm5(4, 1, 1).unwrap(), expect);
        // (2,1,1): hand-expanded oracle [5](1-q)^4/(1-q^2)^4 = [5]/(1+q)^4
        let expect = R::new(qint(5), p(&[1, 4, 6, 4, 1]));
        assert_eq!(summand_thm5(2, 1, 1).unwrap(), expect);
        assert!(summand_thm5(4, 2, 1).is_err()); // gcd(t,d) != 1
    }

    #[test]
    fn summand_thm6_examples() {
        assert!(summand_thm6(4, 1, 0).unwrap().is_one());
        // k=1: [9]_{q^2}[9]^2 (1-q^2)^4/(1-q^8)^4 q^-4
        let nine2 = q_int::<BigRational>(9, 2).unwrap();
        let q8: P = Poly::one().sub(&P::monomial(Field::one(), 8));
        let expect = R::new(
            nine2.mul(&qint(9).pow(2)).mul(&p(&[1, 0, -1]).pow(4)),
            q8.pow(4).mul_qpow(4),
        );
        assert_eq!(summand_thm6(4, 1, 1).unwrap(), expect);
        // (2,1,1): hand-expanded oracle [5]_{q^2}[5]^2 (1-q^2)^4/(1-q^4)^4 q^-4
        //        = [5]_{q^2}[5]^2 / ((1+q^2)^4 q^4)
        let five2 = q_int::<BigRational>(5, 2).unwrap();
        let expect = R::new(five2.mul(&qint(5).pow(2)), p(&[1, 0, 1]).pow(4).mul_qpow(4));
        assert_eq!(summand_thm6(2, 1, 1).unwrap(), expect);
    }

    #[test]
    fn summand_gs_examples() {
        assert!(summand_gs(4, 0).unwrap().is_one());
        assert_eq!(summand_gs(4, 1).unwrap(), summand_thm5(4, 1, 1).unwrap());
        // (6,1): [13](1-q)^6/(1-q^6)^6 q^9
        let six = p(&[1, 0, 0, 0, 0, 0, -1]);
        let expect = R::new(qint(13).mul(&p(&[1, -1]).pow(6)).mul_qpow(9), six.pow(6));
        assert_eq!(summand_gs(6, 1).unwrap(), expect);
        assert!(summand_gs(5, 1).is_err());
        assert!(summand_gs(2, 1).is_err());
    }

    #[test]
    fn truncated_sum_examples() {
        let four = truncated_sum(|_| R::one(), 3);
        assert_eq!(four, R::from_i64(4));
        let single = truncated_sum(|k| summand_thm5(4, 1, k).unwrap(), 0);
        assert!(single.is_one());
        let two = truncated_sum(|k| summand_thm5(4, 1, k).unwrap(), 1);
        assert_eq!(two, R::one().add(&summand_thm5(4, 1, 1).unwrap()));
    }

    #[test]
    fn factored_sums_match_reference() {
        for (d, t, upper) in [(4i64, 1i64, 3u64), (2, 1, 4), (3, 2, 3), (3, -1, 2)] {
            let fast =
                thm5_sum_factored::<BigRational>(d, t, upper, 1, AMode::Quartic).into_ratfunc();
            let slow = truncated_sum(|k| summand_thm5(d, t, k).unwrap(), upper);
            assert_eq!(fast, slow, "thm5 d={d} t={t}");
            let fast6 =
                thm6_sum_factored::<BigRational>(d, t, upper, AMode::Quartic).into_ratfunc();
            let slow6 = truncated_sum(|k| summand_thm6(d, t, k).unwrap(), upper);
            assert_eq!(fast6, slow6, "thm6 d={d} t={t}");
        }
        let fast = gs_sum_factored(4, 6).into_ratfunc();
        let slow = truncated_sum(|k| summand_gs(4, k).unwrap(), 6);
        assert_eq!(fast, slow);
        // parametric
        let fast = thm5_sum_factored::<ParamField>(4, 1, 2, 1, AMode::Symbolic).into_ratfunc();
        let slow = truncated_sum(|k| summand_thm5_param(4, 1, k).unwrap(), 2);
        assert_eq!(fast, slow);
    }

    #[test]
    fn stretched_sum_is_substitution() {
        // the q^n-stretched sum equals the plain sum under q -> q^n
        let plain = thm5_sum_factored::<BigRational>(4, 1, 3, 1, AMode::Quartic).into_ratfunc();
        let stretched = thm5_sum_factored::<BigRational>(4, 1, 3, 5, AMode::Quartic).into_ratfunc();
        let subbed = RatFunc::new(plain.num().subst_power(5), plain.den().subst_power(5));
        assert_eq!(stretched, subbed);
    }

    #[test]
    fn rhs_thm5_examples() {
        assert!(rhs_thm5(4, 1, 1).unwrap().is_one());
        // (4,1,5): ((1-q^2)/(1-q^4)) [5] q^-1
        let expect = R::new(p(&[1, 0, -1]), p(&[1, 0, 0, 0, -1]))
            .mul(&R::from_poly(qint(5)))
            .mul(&R::qpow(-1));
        assert_eq!(rhs_thm5(4, 1, 5).unwrap(), expect);
        // (2,1,3): [3] q^-1
        let expect = R::from_poly(qint(3)).mul(&R::qpow(-1));
        assert_eq!(rhs_thm5(2, 1, 3).unwrap(), expect);
        assert!(rhs_thm5(4, 1, 6).is_err());
    }

    #[test]
    fn rhs_thm6_examples() {
        // (4,1,1): -2 q / (1+q^2)
        let expect = R::new(p(&[0, -2]), p(&[1, 0, 1]));
        assert_eq!(rhs_thm6(4, 1, 1).unwrap(), expect);
        // (4,1,5): -2 [5]_{q^2} (1-q^4) q^-1 / ((1+q^2)(1-q^8))
        let five2 = q_int::<BigRational>(5, 2).unwrap();
        let num = five2.mul(&p(&[1, 0, 0, 0, -1])).scale(&Field::from_i64(-2));
        let q8: P = Poly::one().sub(&P::monomial(Field::one(), 8));
        let den = p(&[1, 0, 1]).mul(&q8).mul_qpow(1);
        let expect = R::new(num, den);
        assert_eq!(rhs_thm6(4, 1, 5).unwrap(), expect);
        // (2,1,3): -[3]_{q^2} 2 q^-1/(1+q^2)
        let three2 = q_int::<BigRational>(3, 2).unwrap();
        let expect = R::new(three2.scale(&Field::from_i64(-2)), p(&[1, 0, 1]).mul_qpow(1));
        assert_eq!(rhs_thm6(2, 1, 3).unwrap(), expect);
    }

    #[test]
    fn rhs_thm3_is_a_free_and_matches_thm5() {
        let r = rhs_thm3_param(5).unwrap();
        for c in r.num().coeffs().iter().chain(r.den().coeffs()) {
            assert!(c.to_rational().is_some());
        }
        let plain = rhs_thm5(4, 1, 5).unwrap();
        let mapped = eval_a(&r, &BigRational::from_integer(1.into())).unwrap();
        assert_eq!(mapped, plain);
    }

    #[test]
    fn thm4_bracket_at_a_one() {
        // At a = 1 the bracket is 1 - (1-q^{2t})^2/((1-q^t)^2 (1+q^{2t})),
        // which collapses to -2 q^t/(1+q^{2t}); hence the parametric right
        // side at a = 1 is exactly the Thm 6 closed form.
        for (d, t, n) in [(4i64, 1i64, 5i64), (4, 1, 9), (2, 1, 3), (3, 2, 5)] {
            let bracket = thm6_bracket_factored::<BigRational>(t, AMode::QPower(0)).into_ratfunc();
            let direct = R::new(
                P::monomial(Field::from_i64(-2), t as usize),
                Poly::one().add(&P::monomial(Field::one(), 2 * t as usize)),
            );
            assert_eq!(bracket, direct, "bracket t={t}");
            let param = rhs_thm4_param(d, t, n).unwrap();
            let at_one = eval_a(&param, &BigRational::from_integer(1.into())).unwrap();
            assert_eq!(at_one, rhs_thm6(d, t, n).unwrap(), "d={d} t={t} n={n}");
        }
    }

    #[test]
    fn thm4_rhs_watson_specialization_oracle() {
        // Independent construction of the evaluated closed form at n=5,
        // a=q^10: [5]_{q^2} ((q^4;q^8)_1/(q^8;q^8)_1) q^-2
        //         (1 - (1-q^12)(1-q^-8)/((1-q)^2(1+q^2))),
        // whose 4phi3 source has exactly two nonzero terms.
        let five2: P = q_int::<BigRational>(5, 2).unwrap();
        let q4: P = Poly::one().sub(&P::monomial(Field::one(), 4));
        let q8: P = Poly::one().sub(&P::monomial(Field::one(), 8));
        let q12: P = Poly::one().sub(&P::monomial(Field::one(), 12));
        let pref = R::from_poly(five2)
            .mul(&R::new(q4, q8))
            .mul(&R::qpow(-2));
        let frac = R::from_poly(q12)
            .mul(&R::one().sub(&R::qpow(-8)))
            .div(&R::from_poly(p(&[1, -1]).pow(2).mul(&p(&[1, 0, 1]))));
        let expect = pref.mul(&R::one().sub(&frac));
        let got = rhs_thm4_param_factored::<BigRational>(4, 1, 5, AMode::QPower(10))
            .unwrap()
            .into_ratfunc();
        assert_eq!(got, expect);
    }

    #[test]
    fn parametric_collapse_at_a_one() {
        // Setting a = 1 in the parametric summand gives the quartic one.
        for (d, t, k) in [(4i64, 1i64, 1u64), (4, 1, 2), (2, 1, 2), (3, 2, 1)] {
            let param = summand_thm5_param(d, t, k).unwrap();
            let collapsed = eval_a(&param, &BigRational::from_integer(1.into())).unwrap();
            assert_eq!(
                collapsed,
                summand_thm5(d, t, k).unwrap(),
                "thm5 {d},{t},{k}"
            );
            let param6 = summand_thm6_param(d, t, k).unwrap();
            let collapsed6 = eval_a(&param6, &BigRational::from_integer(1.into())).unwrap();
            assert_eq!(
                collapsed6,
                summand_thm6(d, t, k).unwrap(),
                "thm6 {d},{t},{k}"
            );
        }
    }

    #[test]
    fn tail_summands_divisible_by_phi_fourth() {
        // For (n-t)/d < k <= n-1 the quartic summand numerator carries
        // Phi_n(q)^4 (resp. Phi_n(q^2)^4 in the thm6 family).
        for (d, t, n) in [(4i64, 1i64, 5i64), (2, 1, 5), (3, 2, 5)] {
            let phi4 = cyclotomic(n as u64).pow(4);
            let phi4_q2 = cyclotomic(n as u64).subst_power(2).pow(4);
            for k in (((n - t) / d + 1) as u64)..=((n - 1) as u64) {
                let s = summand_thm5(d, t, k).unwrap();
                assert!(
                    s.num().div_exact(&phi4).is_some(),
                    "thm5 d={d} t={t} n={n} k={k}"
                );
                let s6 = summand_thm6(d, t, k).unwrap();
                assert!(
                    s6.num().div_exact(&phi4_q2).is_some(),
                    "thm6 d={d} t={t} n={n} k={k}"
                );
            }
        }
    }

    #[test]
    fn rogers_specialization_identity() {
        // At a = q^{+-n} the parametric Thm 3 sum collapses to the closed
        // form: exact rational-function equality. Oracle at n = 9 is the
        // term-by-term expansion of the 3-term sum.
        for n in [5i64, 9] {
            for e in [n, -n] {
                let sum = truncated_sum(
                    |k| {
                        thm5_term_factored::<BigRational>(4, 1, k, 1, AMode::QPower(e))
                            .into_ratfunc()
                    },
                    ((n - 1) / 4) as u64,
                );
                assert_eq!(sum, rhs_thm5(4, 1, n).unwrap(), "n={n} e={e}");
            }
        }
    }

    #[test]
    fn watson_specialization_identity_small() {
        for e in [10i64, -10] {
            let sum = truncated_sum(
                |k| thm6_term_factored::<BigRational>(4, 1, k, AMode::QPower(e)).into_ratfunc(),
                1,
            );
            let rhs = rhs_thm4_param_factored::<BigRational>(4, 1, 5, AMode::QPower(e))
                .unwrap()
                .into_ratfunc();
            assert_eq!(sum, rhs, "e={e}");
        }
    }

    #[test]
    fn lemma_examples() {
        // Lemma 1 at k = s: LHS is the empty ratio 1; the RHS must be
        // congruent to it mod Phi_m.
        let (m, d, t) = (5i64, 4i64, 1i64);
        let s = lemma_s(m, d, t).unwrap();
        assert_eq!(s, 1); // 4*1 = 4 == -1 (mod 5)
        let (lhs, rhs) = lemma1_sides(m, d, t, s).unwrap();
        assert!(lhs.is_one());
        let modulus = Modulus::from_poly(cyclotomic_in::<ParamField>(m as u64));
        assert!(check_congruent(&lhs, &rhs, &modulus).holds);
        // Lemma 2 with d=4, t=1, m=5: sum vanishes mod Phi_5.
        let sum = lemma2_sum(5, 4, 1).unwrap();
        let phi5 = cyclotomic_in::<ParamField>(5);
        assert!(sum.num().div_exact(&phi5).is_some());
        assert!(sum.den().gcd(&phi5).degree_or_zero() == 0);
        // Lemma 3 with d=4, t=1, m=5: sum vanishes mod Phi_5(q^2).
        let sum = lemma3_sum(5, 4, 1).unwrap();
        let phi5q2 = cyclotomic_in::<ParamField>(5).subst_power(2);
        assert!(sum.num().div_exact(&phi5q2).is_some());
        assert!(sum.den().gcd(&phi5q2).degree_or_zero() == 0);
        // constraint violations surface as errors
        assert!(lemma2_sum(8, 4, 1).is_err()); // gcd(d, m) != 1
        assert!(lemma1_sides(5, 4, 2, 0).is_err()); // gcd(d, t) != 1
    }
}
