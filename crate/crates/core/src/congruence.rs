//! Moduli and the congruence decision procedure.
//!
//! A congruence `A == B (mod M)` between rational functions holds when the
//! difference, in lowest terms, has a denominator coprime to `M` and a
//! numerator divisible by `M`. Moduli are kept as factor lists (repeated
//! factors allowed, e.g. a squared cyclotomic appears twice) and divisibility
//! is decided by dividing the factors out one after another, which is exactly
//! product divisibility.

use std::collections::BTreeMap;

use num_rational::BigRational;
use thiserror::Error;

use crate::factored::{classify_atom, AtomClass, FactoredRatFunc};
use crate::field::{Field, ParamField};
use crate::poly::{cyclo_q2_indices, cyclotomic_in, divisors, Poly};
use crate::ratfunc::RatFunc;

#[derive(Debug, Error)]
pub enum CongruenceError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("modulus kind {0} is parametric; use modulus_build_param")]
    Parametric(&'static str),
    #[error("modulus kind {0} is not parametric; use modulus_build")]
    NotParametric(&'static str),
}

/// Why a congruence check succeeded or failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CongruenceReason {
    Divisible,
    RemainderNonzero,
    DenominatorSharesFactor,
}

impl CongruenceReason {
    pub fn as_str(&self) -> &'static str {
        match self {
            CongruenceReason::Divisible => "divisible",
            CongruenceReason::RemainderNonzero => "remainder-nonzero",
            CongruenceReason::DenominatorSharesFactor => "denominator-shares-factor",
        }
    }
}

#[derive(Clone, Debug)]
pub struct CongruenceResult<F: Field> {
    pub holds: bool,
    pub reason: CongruenceReason,
    pub witness_factor: Option<Poly<F>>,
    pub remainder_degree: Option<i64>,
}

impl<F: Field> CongruenceResult<F> {
    fn divisible() -> Self {
        CongruenceResult {
            holds: true,
            reason: CongruenceReason::Divisible,
            witness_factor: None,
            remainder_degree: None,
        }
    }
}

/// One modulus factor together with its known irreducible content.
#[derive(Clone, Debug)]
struct FactorInfo<F: Field> {
    poly: Poly<F>,
    /// Cyclotomic content: pairs `(index, multiplicity)`.
    cyclo: Vec<(u64, u32)>,
    /// Monic non-cyclotomic irreducible content (parametric factors).
    param: Vec<Poly<F>>,
}

/// A product modulus, stored as its factor list.
#[derive(Clone, Debug)]
pub struct Modulus<F: Field> {
    infos: Vec<FactorInfo<F>>,
    product: Poly<F>,
    /// Total cyclotomic content of the product.
    cyclo_mult: BTreeMap<u64, u32>,
    param_factors: Vec<Poly<F>>,
    /// True when the content above fully describes the product.
    structured: bool,
}

impl<F: Field> Modulus<F> {
    fn from_infos(infos: Vec<FactorInfo<F>>, structured: bool) -> Self {
        assert!(!infos.is_empty(), "modulus needs at least one factor");
        let mut product: Poly<F> = Poly::one();
        let mut cyclo_mult = BTreeMap::new();
        let mut param_factors = Vec::new();
        for info in &infos {
            assert!(
                info.poly.degree_or_zero() >= 1,
                "modulus factors must be nonconstant"
            );
            product = product.mul(&info.poly);
            for (t, m) in &info.cyclo {
                *cyclo_mult.entry(*t).or_insert(0) += m;
            }
            for p in &info.param {
                if !param_factors.contains(p) {
                    param_factors.push(p.clone());
                }
            }
        }
        Modulus {
            infos,
            product,
            cyclo_mult,
            param_factors,
            structured,
        }
    }

    /// Wrap a single polynomial with no structural information (used for
    /// DSL-supplied moduli).
    pub fn from_poly(p: Poly<F>) -> Self {
        Modulus::from_infos(
            vec![FactorInfo {
                poly: p,
                cyclo: Vec::new(),
                param: Vec::new(),
            }],
            false,
        )
    }

    /// `Phi_n(q)` (or `Phi_n(q^2)`) as a single-factor modulus.
    pub fn cyclotomic_factor(n: u64, stretched: bool) -> Self {
        Modulus::from_infos(vec![cyclo_info::<F>(n, stretched)], true)
    }

    /// `[n]` (or `[n]_{q^2}`) as a single-factor modulus, `n >= 2`.
    pub fn q_integer_factor(n: u64, stretched: bool) -> Self {
        assert!(n >= 2);
        Modulus::from_infos(vec![qint_info::<F>(n, stretched)], true)
    }

    pub fn factors(&self) -> impl Iterator<Item = &Poly<F>> {
        self.infos.iter().map(|i| &i.poly)
    }

    pub fn factor_count(&self) -> usize {
        self.infos.len()
    }

    pub fn product(&self) -> &Poly<F> {
        &self.product
    }

    pub fn degree(&self) -> usize {
        self.product.degree_or_zero()
    }

    fn factor_with_cyclo(&self, t: u64) -> Option<&Poly<F>> {
        self.infos
            .iter()
            .find(|i| i.cyclo.iter().any(|(ct, _)| *ct == t))
            .map(|i| &i.poly)
    }
}

fn cyclo_info<F: Field>(n: u64, stretched: bool) -> FactorInfo<F> {
    if stretched {
        FactorInfo {
            poly: cyclotomic_in::<F>(n).subst_power(2),
            cyclo: cyclo_q2_indices(n).into_iter().map(|t| (t, 1)).collect(),
            param: Vec::new(),
        }
    } else {
        FactorInfo {
            poly: cyclotomic_in::<F>(n),
            cyclo: vec![(n, 1)],
            param: Vec::new(),
        }
    }
}

/// `[n]` (or `[n]_{q^2}` when `stretched`) as a factor, for `n >= 2`.
fn qint_info<F: Field>(n: u64, stretched: bool) -> FactorInfo<F> {
    let base: Poly<F> = Poly::from_coeffs(vec![F::one(); n as usize]);
    let mut cyclo: Vec<(u64, u32)> = Vec::new();
    for d in divisors(n) {
        if d > 1 {
            if stretched {
                for t in cyclo_q2_indices(d) {
                    cyclo.push((t, 1));
                }
            } else {
                cyclo.push((d, 1));
            }
        }
    }
    FactorInfo {
        poly: if stretched { base.subst_power(2) } else { base },
        cyclo,
        param: Vec::new(),
    }
}

/// `1 - a q^e` as a parametric factor with its monic form recorded.
fn param_info_one_minus_aq(e: u64) -> FactorInfo<ParamField> {
    let a = <ParamField as Field>::var_a().expect("parametric");
    let ainv = Field::inv(&a).expect("a invertible");
    let mut coeffs = vec![<ParamField as Field>::zero(); e as usize + 1];
    coeffs[0] = <ParamField as Field>::one();
    coeffs[e as usize] = Field::neg(&a);
    let monic = Poly::monomial(<ParamField as Field>::one(), e as usize)
        .sub(&Poly::constant(ainv));
    FactorInfo {
        poly: Poly::from_coeffs(coeffs),
        cyclo: Vec::new(),
        param: vec![monic],
    }
}

/// `a - q^e` as a parametric factor.
fn param_info_a_minus_q(e: u64) -> FactorInfo<ParamField> {
    let a = <ParamField as Field>::var_a().expect("parametric");
    let mut coeffs = vec![<ParamField as Field>::zero(); e as usize + 1];
    coeffs[0] = a.clone();
    coeffs[e as usize] = Field::neg(&<ParamField as Field>::one());
    let monic = Poly::monomial(<ParamField as Field>::one(), e as usize)
        .sub(&Poly::constant(a));
    FactorInfo {
        poly: Poly::from_coeffs(coeffs),
        cyclo: Vec::new(),
        param: vec![monic],
    }
}

/// Which built-in modulus to construct.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusSpec {
    /// `[n] Phi_n(q)^2`, `n == 1 (mod 4)`.
    Thm1 { n: i64 },
    /// `[n]_{q^2} Phi_n(q^2)^2`, `n == 1 (mod 4)`, `n >= 5`.
    Thm2 { n: i64 },
    /// `[n](1 - a q^n)(a - q^n)`, parametric.
    Thm3 { n: i64 },
    /// `[n]_{q^2}(1 - a q^{2n})(a - q^{2n})`, parametric.
    Thm4 { n: i64 },
    /// `[n] Phi_n(q)^2` under the general (d, t) hypotheses.
    Thm5 { n: i64, d: i64, t: i64 },
    /// `[n]_{q^2} Phi_n(q^2)^2` under the general (d, t) hypotheses.
    Thm6 { n: i64, d: i64, t: i64 },
    /// `Phi_n(q)^2`, for even `d >= 4` and `n == -1 (mod d)`.
    Gs { n: i64, d: i64 },
    /// `[n^r] prod_{j=1..r} Phi_{n^j}(q)^2`.
    Conjecture { n: i64, r: u32 },
}

pub(crate) fn gcd_i64(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Validate the (n, d, t) hypotheses shared by the generalized theorems:
/// `n > 1`, `d >= 2`, `gcd(t, d) = 1`, `n == t (mod d)`, `n+d-nd <= t <= n`.
pub fn validate_thm5_params(n: i64, d: i64, t: i64) -> Result<(), CongruenceError> {
    if n <= 1 {
        return Err(CongruenceError::Hypothesis(format!(
            "n must exceed 1, got {n}"
        )));
    }
    if d < 2 {
        return Err(CongruenceError::Hypothesis(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if gcd_i64(t, d) != 1 {
        return Err(CongruenceError::Hypothesis(format!(
            "gcd(t, d) must be 1, got t={t}, d={d}"
        )));
    }
    if (n - t).rem_euclid(d) != 0 {
        return Err(CongruenceError::Hypothesis(format!(
            "n == t (mod d) required, got n={n}, t={t}, d={d}"
        )));
    }
    if t < n + d - n * d || t > n {
        return Err(CongruenceError::Hypothesis(format!(
            "t must lie in [n+d-nd, n] = [{}, {n}], got {t}",
            n + d - n * d
        )));
    }
    Ok(())
}

fn validate_mod4(n: i64, min: i64) -> Result<(), CongruenceError> {
    if n < min || n.rem_euclid(4) != 1 {
        return Err(CongruenceError::Hypothesis(format!(
            "n must be >= {min} with n == 1 (mod 4), got {n}"
        )));
    }
    Ok(())
}

/// Build a nonparametric modulus. Thm3/Thm4 kinds are rejected here.
pub fn modulus_build(spec: &ModulusSpec) -> Result<Modulus<BigRational>, CongruenceError> {
    match *spec {
        ModulusSpec::Thm1 { n } => {
            validate_mod4(n, 1)?;
            Ok(qint_cyclo_squared(n as u64, false))
        }
        ModulusSpec::Thm2 { n } => {
            // n = 1 degenerates (the congruence is false); the claim starts
            // at n = 5.
            validate_mod4(n, 5)?;
            Ok(qint_cyclo_squared(n as u64, true))
        }
        ModulusSpec::Thm5 { n, d, t } => {
            validate_thm5_params(n, d, t)?;
            Ok(qint_cyclo_squared(n as u64, false))
        }
        ModulusSpec::Thm6 { n, d, t } => {
            validate_thm5_params(n, d, t)?;
            Ok(qint_cyclo_squared(n as u64, true))
        }
        ModulusSpec::Gs { n, d } => {
            if d < 4 || d % 2 != 0 {
                return Err(CongruenceError::Hypothesis(format!(
                    "d must be even and >= 4, got {d}"
                )));
            }
            if n <= 1 || (n + 1).rem_euclid(d) != 0 {
                return Err(CongruenceError::Hypothesis(format!(
                    "n == -1 (mod d) required with n > 1, got n={n}, d={d}"
                )));
            }
            let info = cyclo_info::<BigRational>(n as u64, false);
            Ok(Modulus::from_infos(vec![info.clone(), info], true))
        }
        ModulusSpec::Conjecture { n, r } => {
            if r < 2 {
                return Err(CongruenceError::Hypothesis(format!(
                    "r must exceed 1, got {r}"
                )));
            }
            validate_mod4(n, 5)?;
            let nr = (n as u64).pow(r);
            let mut infos = vec![qint_info::<BigRational>(nr, false)];
            for j in 1..=r {
                let info = cyclo_info::<BigRational>((n as u64).pow(j), false);
                infos.push(info.clone());
                infos.push(info);
            }
            Ok(Modulus::from_infos(infos, true))
        }
        ModulusSpec::Thm3 { .. } => Err(CongruenceError::Parametric("thm3")),
        ModulusSpec::Thm4 { .. } => Err(CongruenceError::Parametric("thm4")),
    }
}

fn qint_cyclo_squared(n: u64, stretched: bool) -> Modulus<BigRational> {
    let phi = cyclo_info::<BigRational>(n, stretched);
    let mut infos = Vec::new();
    if n > 1 {
        infos.push(qint_info::<BigRational>(n, stretched));
    }
    infos.push(phi.clone());
    infos.push(phi);
    Modulus::from_infos(infos, true)
}

/// Build a parametric modulus (Thm3/Thm4 kinds).
pub fn modulus_build_param(spec: &ModulusSpec) -> Result<Modulus<ParamField>, CongruenceError> {
    match *spec {
        ModulusSpec::Thm3 { n } => {
            validate_mod4(n, 1)?;
            let mut infos = Vec::new();
            if n > 1 {
                infos.push(qint_info::<ParamField>(n as u64, false));
            }
            infos.push(param_info_one_minus_aq(n as u64));
            infos.push(param_info_a_minus_q(n as u64));
            Ok(Modulus::from_infos(infos, true))
        }
        ModulusSpec::Thm4 { n } => {
            validate_mod4(n, 1)?;
            let mut infos = Vec::new();
            if n > 1 {
                infos.push(qint_info::<ParamField>(n as u64, true));
            }
            infos.push(param_info_one_minus_aq(2 * n as u64));
            infos.push(param_info_a_minus_q(2 * n as u64));
            Ok(Modulus::from_infos(infos, true))
        }
        _ => Err(CongruenceError::NotParametric("nonparametric kind")),
    }
}

/// Decide `lhs == rhs (mod m)` for reduced rational functions.
pub fn check_congruent<F: Field>(
    lhs: &RatFunc<F>,
    rhs: &RatFunc<F>,
    m: &Modulus<F>,
) -> CongruenceResult<F> {
    let delta = lhs.sub(rhs);
    if delta.is_zero() {
        return CongruenceResult::divisible();
    }
    if delta.den().degree_or_zero() > 0 {
        let g = delta.den().gcd(m.product());
        if g.degree_or_zero() > 0 {
            let witness = m
                .factors()
                .find(|f| delta.den().gcd(f).degree_or_zero() > 0)
                .cloned();
            return CongruenceResult {
                holds: false,
                reason: CongruenceReason::DenominatorSharesFactor,
                witness_factor: witness,
                remainder_degree: None,
            };
        }
    }
    divide_through(delta.num().clone(), m)
}

fn divide_through<F: Field>(mut num: Poly<F>, m: &Modulus<F>) -> CongruenceResult<F> {
    for f in m.factors() {
        let (q, r) = num.divrem(f);
        if !r.is_zero() {
            return CongruenceResult {
                holds: false,
                reason: CongruenceReason::RemainderNonzero,
                witness_factor: Some(f.clone()),
                remainder_degree: r.degree().map(|d| d as i64),
            };
        }
        num = q;
    }
    CongruenceResult::divisible()
}

/// Congruence check on factored fractions. Denominator atoms are tested for
/// common content with the modulus structurally (cyclotomic index
/// arithmetic, parametric atom equality); shared factors must divide the
/// numerator the corresponding number of times before the modulus factors
/// themselves are divided out. Falls back to the reduced-path check when an
/// atom defies classification.
pub fn check_congruent_factored<F: Field>(
    lhs: &FactoredRatFunc<F>,
    rhs: &FactoredRatFunc<F>,
    m: &Modulus<F>,
) -> CongruenceResult<F> {
    let delta = lhs.sub(rhs);
    if delta.is_zero() {
        return CongruenceResult::divisible();
    }
    let mut cyclo_cancel: BTreeMap<u64, u32> = BTreeMap::new();
    let mut param_cancel: Vec<(Poly<F>, u32)> = Vec::new();
    for (atom, mult) in delta.den_atoms() {
        match classify_atom(atom) {
            AtomClass::QMonomial => {}
            AtomClass::OneMinusQ(j) => {
                for t in m.cyclo_mult.keys() {
                    if j % t == 0 {
                        *cyclo_cancel.entry(*t).or_insert(0) += mult;
                    }
                }
            }
            AtomClass::Other => {
                if let Some(pf) = m.param_factors.iter().find(|p| *p == atom) {
                    param_cancel.push((pf.clone(), *mult));
                } else if m.structured
                    && atom.coeffs().iter().any(|c| c.to_rational().is_none())
                {
                    // A parametric atom distinct from every parametric
                    // modulus factor is coprime to the modulus.
                } else {
                    // Unclassified: take the honest reduced path.
                    return check_congruent(&lhs.into_ratfunc(), &rhs.into_ratfunc(), m);
                }
            }
        }
    }
    let mut num = delta.materialize_num();
    for (t, mult) in cyclo_cancel {
        let phi: Poly<F> = cyclotomic_in(t);
        for _ in 0..mult {
            match num.div_exact(&phi) {
                Some(q) => num = q,
                None => {
                    return CongruenceResult {
                        holds: false,
                        reason: CongruenceReason::DenominatorSharesFactor,
                        witness_factor: m.factor_with_cyclo(t).cloned().or(Some(phi)),
                        remainder_degree: None,
                    }
                }
            }
        }
    }
    for (p, mult) in param_cancel {
        for _ in 0..mult {
            match num.div_exact(&p) {
                Some(q) => num = q,
                None => {
                    return CongruenceResult {
                        holds: false,
                        reason: CongruenceReason::DenominatorSharesFactor,
                        witness_factor: Some(p),
                        remainder_degree: None,
                    }
                }
            }
        }
    }
    divide_through(num, m)
}

/// Exact equality of rational functions.
pub fn check_identity<F: Field>(lhs: &RatFunc<F>, rhs: &RatFunc<F>) -> bool {
    lhs == rhs
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factored::XPart;
    use crate::modeval::SCREEN_PRIME;
    use crate::poly::cyclotomic;
    use proptest::prelude::*;

    type P = Poly<BigRational>;
    type R = RatFunc<BigRational>;

    fn p(coeffs: &[i64]) -> P {
        Poly::from_i64_coeffs(coeffs)
    }

    fn phi_modulus(n: u64, power: u32) -> Modulus<BigRational> {
        let info = cyclo_info::<BigRational>(n, false);
        Modulus::from_infos(vec![info; power as usize], true)
    }

    #[test]
    fn simple_congruences() {
        // q^5 == 1 (mod Phi_5)
        let r = check_congruent(&R::qpow(5), &R::one(), &phi_modulus(5, 1));
        assert!(r.holds);
        // 1/(1-q) vs 0 mod (q-1): denominator shares the modulus
        let bad = R::new(Poly::one(), p(&[1, -1]));
        let m = Modulus::from_poly(p(&[-1, 1]));
        let r = check_congruent(&bad, &R::zero(), &m);
        assert!(!r.holds);
        assert_eq!(r.reason, CongruenceReason::DenominatorSharesFactor);
    }

    #[test]
    fn thm1_n5_from_first_principles() {
        // Independent oracle for the smallest nontrivial instance: expand
        // the two-term sum by hand, divide by Phi_5^3, and cross-check by
        // random evaluation mod a large prime.
        let phi5: P = cyclotomic(5);
        // LHS = 1 + [9] (1-q)^4 q^2 / (1-q^4)^4
        let nine: P = Poly::from_coeffs(vec![Field::one(); 9]);
        let lhs_term = R::new(
            nine.mul(&p(&[1, -1]).pow(4)).mul_qpow(2),
            p(&[1, 0, 0, 0, -1]).pow(4),
        );
        let lhs = R::one().add(&lhs_term);
        // RHS = ((1-q^2)/(1-q^4)) [5] q^-1
        let five: P = Poly::from_coeffs(vec![Field::one(); 5]);
        let rhs = R::new(p(&[1, 0, -1]), p(&[1, 0, 0, 0, -1]))
            .mul(&R::from_poly(five))
            .mul(&R::qpow(-1));
        let delta = lhs.sub(&rhs);
        // Long division by Phi_5^3 leaves no remainder.
        let (_, rem) = delta.num().divrem(&phi5.pow(3));
        assert!(rem.is_zero());
        assert!(delta.den().gcd(&phi5).is_one());
        // Random-evaluation cross-check of the divisibility witness:
        // delta.num == quotient * Phi_5^3 at random points mod p.
        let quot = delta.num().div_exact(&phi5.pow(3)).unwrap();
        for x in [3u64, 1234567, 987654321] {
            let lhs_v = delta.num().eval_mod(x, SCREEN_PRIME).unwrap();
            let a = quot.eval_mod(x, SCREEN_PRIME).unwrap();
            let b = phi5.pow(3).eval_mod(x, SCREEN_PRIME).unwrap();
            assert_eq!(
                lhs_v as u128,
                (a as u128 * b as u128) % SCREEN_PRIME as u128
            );
        }
        // And via the public interface with the Thm1 modulus.
        let m = modulus_build(&ModulusSpec::Thm1 { n: 5 }).unwrap();
        assert_eq!(m.degree(), 12); // [5] Phi_5^2 = Phi_5^3
        assert!(check_congruent(&lhs, &rhs, &m).holds);
    }

    #[test]
    fn modulus_examples() {
        let m = modulus_build(&ModulusSpec::Conjecture { n: 5, r: 2 }).unwrap();
        assert_eq!(m.degree(), 72);
        let m3 = modulus_build_param(&ModulusSpec::Thm3 { n: 5 }).unwrap();
        assert_eq!(m3.factor_count(), 3);
        // pairwise coprime in Q(a)[q]
        let fs: Vec<_> = m3.factors().collect();
        for i in 0..fs.len() {
            for j in i + 1..fs.len() {
                assert!(fs[i].gcd(fs[j]).degree_or_zero() == 0);
            }
        }
        assert!(modulus_build(&ModulusSpec::Thm1 { n: 7 }).is_err());
        assert!(modulus_build(&ModulusSpec::Thm2 { n: 1 }).is_err());
        assert!(modulus_build(&ModulusSpec::Gs { n: 7, d: 5 }).is_err());
    }

    #[test]
    fn factored_check_matches_plain() {
        // (q^10 - 1)/(q^2 - 1) vs 0, mod Phi_5.
        let mut f = FactoredRatFunc::<BigRational>::one();
        f.mul_one_minus(XPart::One, 10);
        f.div_one_minus(XPart::One, 2);
        let g = FactoredRatFunc::<BigRational>::zero();
        let m = phi_modulus(5, 1);
        let fast = check_congruent_factored(&f, &g, &m);
        let slow = check_congruent(&f.into_ratfunc(), &RatFunc::zero(), &m);
        assert_eq!(fast.holds, slow.holds);
        assert!(fast.holds);
    }

    #[test]
    fn denominator_cancellation_in_factored_path() {
        // (1-q^5)^2/(1-q^10): the denominator atom shares Phi_5 with the
        // modulus but cancels into the numerator, so mod Phi_5 the check
        // passes; mod Phi_5^2 it fails with remainder-nonzero.
        let mut f = FactoredRatFunc::<BigRational>::one();
        f.mul_one_minus(XPart::One, 5);
        f.mul_one_minus(XPart::One, 5);
        f.div_one_minus(XPart::One, 10);
        let r = check_congruent_factored(&f, &FactoredRatFunc::zero(), &phi_modulus(5, 1));
        assert!(r.holds, "reason {:?}", r.reason);
        let r2 = check_congruent_factored(&f, &FactoredRatFunc::zero(), &phi_modulus(5, 2));
        assert!(!r2.holds);
        assert_eq!(r2.reason, CongruenceReason::RemainderNonzero);
    }

    #[test]
    fn denominator_shares_factor_in_factored_path() {
        // 1/(1-q^5) mod Phi_5: irreducible denominator content survives.
        let mut f = FactoredRatFunc::<BigRational>::one();
        f.div_one_minus(XPart::One, 5);
        let r = check_congruent_factored(&f, &FactoredRatFunc::zero(), &phi_modulus(5, 1));
        assert!(!r.holds);
        assert_eq!(r.reason, CongruenceReason::DenominatorSharesFactor);
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-4i64..=4, 0..6).prop_map(|v| Poly::from_i64_coeffs(&v))
    }

    proptest! {
        #[test]
        fn symmetry_and_difference_form(a in arb_poly(), b in arb_poly(), da in arb_poly(), db in arb_poly()) {
            prop_assume!(!da.is_zero() && !db.is_zero());
            let x = R::new(a, da);
            let y = R::new(b, db);
            let m = phi_modulus(5, 1);
            let xy = check_congruent(&x, &y, &m);
            let yx = check_congruent(&y, &x, &m);
            let d0 = check_congruent(&x.sub(&y), &R::zero(), &m);
            prop_assert_eq!(xy.holds, yx.holds);
            prop_assert_eq!(xy.holds, d0.holds);
            prop_assert_eq!(xy.reason, yx.reason);
        }

        #[test]
        fn adding_modulus_multiple_is_invisible(a in arb_poly(), b in arb_poly(), mult in arb_poly()) {
            prop_assume!(!b.is_zero());
            let m = phi_modulus(4, 2);
            let x = R::new(a, b.clone());
            let shifted = x.add(&R::from_poly(mult.mul(m.product())));
            let r1 = check_congruent(&x, &R::zero(), &m);
            let r2 = check_congruent(&shifted, &R::zero(), &m);
            prop_assert_eq!(r1.holds, r2.holds);
        }

        #[test]
        fn factor_split_equals_product_divisibility(a in arb_poly()) {
            // For pairwise-coprime factors {Phi_3, Phi_5}, dividing one
            // after the other agrees with divisibility by the product.
            prop_assume!(!a.is_zero());
            let m_split = Modulus::from_infos(
                vec![cyclo_info::<BigRational>(3, false), cyclo_info::<BigRational>(5, false)],
                true,
            );
            let prod = m_split.product().clone();
            let m_whole = Modulus::from_poly(prod.clone());
            let x = R::from_poly(a);
            let r1 = check_congruent(&x, &R::zero(), &m_split);
            let r2 = check_congruent(&x, &R::zero(), &m_whole);
            prop_assert_eq!(r1.holds, r2.holds);
            prop_assert_eq!(r1.holds, x.num().div_exact(&prod).is_some());
        }
    }
}
