//! Dense univariate polynomials over a pluggable coefficient field.
//!
//! The variable is written `q` throughout. Zero is the empty coefficient
//! vector; otherwise the highest-index coefficient is nonzero.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_rational::BigRational;

use crate::field::Field;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
}

impl<F: Field> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(F::one())
    }

    pub fn constant(c: F) -> Self {
        if c.is_zero() {
            Poly::zero()
        } else {
            Poly { coeffs: vec![c] }
        }
    }

    /// `c * q^k`
    pub fn monomial(c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![F::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: Vec<F>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64_coeffs(coeffs: &[i64]) -> Self {
        Poly::from_coeffs(coeffs.iter().map(|&c| F::from_i64(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the convention `deg 0 = 0`.
    pub fn degree_or_zero(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    /// Coefficient of `q^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> F {
        self.coeffs.get(k).cloned().unwrap_or_else(F::zero)
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().map_or(false, |c| c.is_one())
    }

    /// Scale so the leading coefficient is 1. Zero stays zero.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => {
                let inv = l.inv().expect("leading coefficient invertible");
                self.scale(&inv)
            }
        }
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.mul(c)).collect(),
        }
    }

    /// Multiply by `q^k`.
    pub fn mul_qpow(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { coeffs }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            let a = self.coeffs.get(i);
            let b = rhs.coeffs.get(i);
            coeffs.push(match (a, b) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn neg(&self) -> Self {
        Poly {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    fn support_size(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    /// Schoolbook product, iterating over the sparser operand so that
    /// multiplications by few-term factors (cyclotomic atoms, `1 - q^j`)
    /// cost `O(deg)`.
    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let (outer, inner) = if self.support_size() <= rhs.support_size() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut coeffs =
            vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in outer.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in inner.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
            }
        }
        Poly::from_coeffs(coeffs)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division: `self = quot * den + rem` with
    /// `deg rem < deg den`. Panics on a zero divisor.
    pub fn divrem(&self, den: &Self) -> (Self, Self) {
        assert!(!den.is_zero(), "polynomial division by zero");
        if self.coeffs.len() < den.coeffs.len() {
            return (Poly::zero(), self.clone());
        }
        let dd = den.coeffs.len() - 1;
        let lead_inv = den
            .leading()
            .expect("nonzero divisor")
            .inv()
            .expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![F::zero(); qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dd].clone();
            if top.is_zero() {
                continue;
            }
            let c = top.mul(&lead_inv);
            for (j, dc) in den.coeffs.iter().enumerate() {
                if dc.is_zero() {
                    continue;
                }
                rem[i + j] = rem[i + j].sub(&c.mul(dc));
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Poly::from_coeffs(quot), Poly::from_coeffs(rem))
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, den: &Self) -> Option<Self> {
        let (q, r) = self.divrem(den);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    /// The power `k` when the polynomial is a single term `c * q^k`.
    pub fn monomial_power(&self) -> Option<usize> {
        let nz: Vec<usize> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect();
        if nz.len() == 1 {
            Some(nz[0])
        } else {
            None
        }
    }

    /// Monic greatest common divisor. Panics if both inputs are zero.
    pub fn gcd(&self, rhs: &Self) -> Self {
        assert!(
            !(self.is_zero() && rhs.is_zero()),
            "gcd of two zero polynomials"
        );
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() {
            return self.monic();
        }
        // Units and monomials resolve structurally.
        if self.degree_or_zero() == 0 || rhs.degree_or_zero() == 0 {
            return Poly::one();
        }
        if let Some(k) = self.monomial_power() {
            let m = k.min(rhs.trailing_zeros());
            return Poly::monomial(F::one(), m);
        }
        if let Some(k) = rhs.monomial_power() {
            let m = k.min(self.trailing_zeros());
            return Poly::monomial(F::one(), m);
        }
        let tz = self.trailing_zeros().min(rhs.trailing_zeros());
        if tz > 0 {
            return self
                .div_qpow(tz)
                .gcd(&rhs.div_qpow(tz))
                .mul_qpow(tz);
        }
        if self == rhs {
            return self.monic();
        }
        // Mod-p screen: when full-degree images have a constant gcd, so do
        // the polynomials themselves, and most gcd calls end here.
        if crate::modeval::coprime_by_image(self, rhs) {
            return Poly::one();
        }
        if let Some(g) = F::poly_gcd_impl(self, rhs) {
            return g;
        }
        // Generic Euclid with monic normalization each step.
        let mut a = self.monic();
        let mut b = rhs.monic();
        if a.coeffs.len() < b.coeffs.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Substitute `q -> q^m`.
    pub fn subst_power(&self, m: usize) -> Self {
        assert!(m >= 1, "substitution power must be positive");
        if self.is_zero() || m == 1 {
            return self.clone();
        }
        let mut coeffs = vec![F::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[i * m] = c.clone();
            }
        }
        Poly { coeffs }
    }

    /// Substitute `q -> -q`.
    pub fn subst_neg(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { c.neg() } else { c.clone() })
            .collect();
        Poly::from_coeffs(coeffs)
    }

    /// Evaluate at a field point.
    pub fn eval(&self, x: &F) -> F {
        let mut acc = F::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Evaluate the mod-`p` image at `x`; `None` when a coefficient has no
    /// residue (denominator divisible by `p`, or a parametric field).
    pub fn eval_mod(&self, x: u64, p: u64) -> Option<u64> {
        let mut acc: u64 = 0;
        for c in self.coeffs.iter().rev() {
            let r = c.residue(p)?;
            acc = ((acc as u128 * x as u128 + r as u128) % p as u128) as u64;
        }
        Some(acc)
    }

    /// The mod-`p` coefficient image, low to high. `None` if any coefficient
    /// has no residue.
    pub fn image_mod(&self, p: u64) -> Option<Vec<u64>> {
        self.coeffs.iter().map(|c| c.residue(p)).collect()
    }

    /// Map coefficients into another field.
    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> Poly<G> {
        Poly::from_coeffs(self.coeffs.iter().map(f).collect())
    }

    /// Number of trailing zero coefficients (the multiplicity of the root
    /// q = 0). Zero polynomial reports 0.
    pub fn trailing_zeros(&self) -> usize {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0)
    }

    /// Divide by `q^k`; panics if not exactly divisible.
    pub fn div_qpow(&self, k: usize) -> Self {
        if k == 0 || self.is_zero() {
            return self.clone();
        }
        assert!(self.trailing_zeros() >= k, "not divisible by q^{k}");
        Poly {
            coeffs: self.coeffs[k..].to_vec(),
        }
    }
}

impl<F: Field> std::fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<F: Field> std::fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let cs = c.to_string();
            let (sign, mag) = match cs.strip_prefix('-') {
                Some(rest) => ("-", rest.to_string()),
                None => ("+", cs),
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else {
                write!(f, " {sign} ")?;
            }
            let needs_coeff = mag != "1" || i == 0;
            let wrapped = if mag.contains(' ') || mag.contains('/') {
                format!("({mag})")
            } else {
                mag
            };
            match (needs_coeff, i) {
                (true, 0) => write!(f, "{wrapped}")?,
                (true, 1) => write!(f, "{wrapped}*q")?,
                (true, _) => write!(f, "{wrapped}*q^{i}")?,
                (false, 1) => write!(f, "q")?,
                (false, _) => write!(f, "q^{i}")?,
            }
        }
        Ok(())
    }
}

/// Moebius function.
pub fn mobius(n: u64) -> i64 {
    assert!(n >= 1, "mobius requires n >= 1");
    let mut m = n;
    let mut factors = 0;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            m /= p;
            if m % p == 0 {
                return 0;
            }
            factors += 1;
        }
        p += 1;
    }
    if m > 1 {
        factors += 1;
    }
    if factors % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler totient.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut m = n;
    let mut phi = n;
    let mut p = 2u64;
    while p * p <= m {
        if m % p == 0 {
            phi -= phi / p;
            while m % p == 0 {
                m /= p;
            }
        }
        p += 1;
    }
    if m > 1 {
        phi -= phi / m;
    }
    phi
}

/// Sorted divisors of `n`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1);
    let mut ds = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            ds.push(d);
            if d != n / d {
                ds.push(n / d);
            }
        }
        d += 1;
    }
    ds.sort_unstable();
    ds
}

fn cyclo_cache() -> &'static Mutex<HashMap<u64, Poly<BigRational>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Poly<BigRational>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, by recursive exact division:
/// `Phi_n = (q^n - 1) / prod_{d|n, d<n} Phi_d`.
pub fn cyclotomic(n: u64) -> Poly<BigRational> {
    assert!(n >= 1, "cyclotomic requires n >= 1");
    if let Some(p) = cyclo_cache().lock().expect("cyclo cache").get(&n) {
        return p.clone();
    }
    let result = if n == 1 {
        // q - 1
        Poly::from_i64_coeffs(&[-1, 1])
    } else {
        let mut num: Poly<BigRational> = Poly::monomial(Field::one(), n as usize)
            .sub(&Poly::one());
        for d in divisors(n) {
            if d < n {
                num = num
                    .div_exact(&cyclotomic(d))
                    .expect("cyclotomic division is exact");
            }
        }
        num
    };
    cyclo_cache()
        .lock()
        .expect("cyclo cache")
        .insert(n, result.clone());
    result
}

/// `cyclotomic` with coefficients mapped into an arbitrary field.
pub fn cyclotomic_in<F: Field>(n: u64) -> Poly<F> {
    cyclotomic(n).map_field(|c| F::from_rational(c))
}

/// Cyclotomic index decomposition of `Phi_n(q^2)` over `Q[q]`:
/// `Phi_n(q^2) = prod` of `Phi_t` for the returned indices `t`.
pub fn cyclo_q2_indices(n: u64) -> Vec<u64> {
    if n == 1 {
        vec![1, 2]
    } else if n % 2 == 0 {
        vec![2 * n]
    } else {
        vec![n, 2 * n]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    type P = Poly<BigRational>;

    fn p(coeffs: &[i64]) -> P {
        Poly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn arith_examples() {
        // (1+q) + (1-q) = 2
        assert_eq!(p(&[1, 1]).add(&p(&[1, -1])), p(&[2]));
        // (1-q)(1+q+q^2) = 1-q^3
        assert_eq!(p(&[1, -1]).mul(&p(&[1, 1, 1])), p(&[1, 0, 0, -1]));
        // x*0 = 0
        assert!(p(&[3, 5, 7]).mul(&P::zero()).is_zero());
    }

    #[test]
    fn divrem_examples() {
        // (q^3-1) / (q-1) = q^2+q+1 rem 0
        let (q1, r1) = p(&[-1, 0, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(q1, p(&[1, 1, 1]));
        assert!(r1.is_zero());
        // (q^2+1) / (q-1) = q+1 rem 2
        let (q2, r2) = p(&[1, 0, 1]).divrem(&p(&[-1, 1]));
        assert_eq!(q2, p(&[1, 1]));
        assert_eq!(r2, p(&[2]));
        // (q^5-1) / Phi_5 = q-1 rem 0
        let (q3, r3) = p(&[-1, 0, 0, 0, 0, 1]).divrem(&cyclotomic(5));
        assert_eq!(q3, p(&[-1, 1]));
        assert!(r3.is_zero());
    }

    #[test]
    #[should_panic(expected = "division by zero")]
    fn divrem_by_zero_panics() {
        let _ = p(&[1, 1]).divrem(&P::zero());
    }

    #[test]
    fn gcd_examples() {
        // gcd(q^4-1, q^6-1) = q^2-1
        let g = p(&[-1, 0, 0, 0, 1]).gcd(&p(&[-1, 0, 0, 0, 0, 0, 1]));
        assert_eq!(g, p(&[-1, 0, 1]));
        // gcd(Phi_5, q-1) = 1
        assert!(cyclotomic(5).gcd(&p(&[-1, 1])).is_one());
        // gcd(0, q+1) = q+1
        assert_eq!(P::zero().gcd(&p(&[1, 1])), p(&[1, 1]));
    }

    #[test]
    #[should_panic(expected = "gcd of two zero")]
    fn gcd_zero_zero_panics() {
        let _ = P::zero().gcd(&P::zero());
    }

    #[test]
    fn subst_examples() {
        // 1+q at m=3 -> 1+q^3
        assert_eq!(p(&[1, 1]).subst_power(3), p(&[1, 0, 0, 1]));
        // Phi_5(q^2) = 1+q^2+q^4+q^6+q^8
        assert_eq!(
            cyclotomic(5).subst_power(2),
            p(&[1, 0, 1, 0, 1, 0, 1, 0, 1])
        );
        // constants are fixed
        assert_eq!(p(&[7]).subst_power(4), p(&[7]));
    }

    #[test]
    fn mobius_examples() {
        assert_eq!(mobius(1), 1);
        assert_eq!(mobius(4), 0);
        assert_eq!(mobius(30), -1);
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic(1), p(&[-1, 1]));
        assert_eq!(cyclotomic(4), p(&[1, 0, 1]));
        // Oracle for n=6: prod_{d|6} Phi_d = q^6 - 1, solved by exact division.
        let q6m1 = p(&[-1, 0, 0, 0, 0, 0, 1]);
        let expect = q6m1
            .div_exact(&cyclotomic(1))
            .unwrap()
            .div_exact(&cyclotomic(2))
            .unwrap()
            .div_exact(&cyclotomic(3))
            .unwrap();
        assert_eq!(cyclotomic(6), expect);
        assert_eq!(cyclotomic(6), p(&[1, -1, 1]));
    }

    #[test]
    fn cyclotomic_product_invariant() {
        // prod_{d|n} Phi_d = q^n - 1 for all n <= 60
        for n in 1..=60u64 {
            let mut prod: P = Poly::one();
            for d in divisors(n) {
                prod = prod.mul(&cyclotomic(d));
            }
            let mut expect = Poly::monomial(BigRational::from_integer(1.into()), n as usize);
            expect = expect.sub(&Poly::one());
            assert_eq!(prod, expect, "n = {n}");
            assert_eq!(cyclotomic(n).degree_or_zero() as u64, euler_phi(n));
        }
    }

    #[test]
    fn cyclotomic_negation_invariant() {
        // Phi_n(q) * Phi_n(-q) = Phi_n(q^2) for odd n in (1, 45]
        for n in (3..=45u64).step_by(2) {
            let phi = cyclotomic(n);
            let lhs = phi.mul(&phi.subst_neg());
            // Phi_n(-q) = +-Phi_2n; normalize sign by comparing monic forms
            assert_eq!(lhs.monic(), phi.subst_power(2).monic(), "n = {n}");
            assert_eq!(lhs, phi.subst_power(2), "sign mismatch at n = {n}");
        }
    }

    #[test]
    fn qint_factorization_invariant() {
        // [n]_q = prod_{d|n, d>1} Phi_d for n <= 60
        for n in 1..=60u64 {
            let qint: P = Poly::from_coeffs(vec![Field::one(); n as usize]);
            let mut prod: P = Poly::one();
            for d in divisors(n) {
                if d > 1 {
                    prod = prod.mul(&cyclotomic(d));
                }
            }
            assert_eq!(qint, prod, "n = {n}");
        }
    }

    #[test]
    fn mobius_cyclotomic_oracle() {
        // Alternate construction: Phi_n = prod_{d|n} (q^{n/d} - 1)^{mu(d)},
        // cross-checked for a spread of n.
        for n in [2u64, 6, 12, 15, 30, 36, 49] {
            let mut num: P = Poly::one();
            let mut den: P = Poly::one();
            for d in divisors(n) {
                let pow = n / d;
                let base: P = Poly::monomial(Field::one(), pow as usize).sub(&Poly::one());
                match mobius(d) {
                    1 => num = num.mul(&base),
                    -1 => den = den.mul(&base),
                    _ => {}
                }
            }
            assert_eq!(num.div_exact(&den).unwrap(), cyclotomic(n), "n = {n}");
        }
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        prop::collection::vec(-6i64..=6, 0..8)
            .prop_map(|v| Poly::from_i64_coeffs(&v))
    }

    proptest! {
        #[test]
        fn divrem_roundtrip(num in arb_poly(), den in arb_poly()) {
            prop_assume!(!den.is_zero());
            let (quot, rem) = num.divrem(&den);
            prop_assert_eq!(quot.mul(&den).add(&rem), num);
            prop_assert!(rem.is_zero() || rem.degree() < den.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b);
            prop_assert!(g.is_monic());
            if !a.is_zero() {
                prop_assert!(a.div_exact(&g).is_some());
            }
            if !b.is_zero() {
                prop_assert!(b.div_exact(&g).is_some());
            }
        }

        #[test]
        fn gcd_with_zero_is_monic_self(a in arb_poly()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a.gcd(&P::zero()), a.monic());
        }

        #[test]
        fn mul_matches_random_eval(a in arb_poly(), b in arb_poly()) {
            let p = crate::modeval::SCREEN_PRIME;
            let x = 123_456_789u64;
            let lhs = a.mul(&b).eval_mod(x, p).unwrap();
            let ra = a.eval_mod(x, p).unwrap();
            let rb = b.eval_mod(x, p).unwrap();
            prop_assert_eq!(lhs, ((ra as u128 * rb as u128) % p as u128) as u64);
        }
    }
}
