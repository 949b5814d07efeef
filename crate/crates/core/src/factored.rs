//! Semi-factored rational functions.
//!
//! Truncated q-series have denominators that are huge as dense polynomials
//! but trivial as factored objects: products of `q^j - 1`, `q^j - a`, and
//! plain `q` powers. [`FactoredRatFunc`] keeps the denominator as a multiset
//! of monic low-term atoms so that sums, congruence checks, and the final
//! reduction to a canonical [`RatFunc`] never run a large polynomial gcd —
//! divisibility is settled by exact division against known factors, with a
//! mod-p screen to reject non-divisors cheaply.
//!
//! [`SumAccumulator`] adds up a hypergeometric-style series given the k-th
//! term ratio, carrying the partial sum over the growing factored
//! denominator.

use std::collections::BTreeMap;

use crate::field::Field;
use crate::modeval::{ModImage, SCREEN_PRIME};
use crate::poly::{cyclotomic_in, divisors, Poly};
use crate::ratfunc::RatFunc;

/// Which `X` multiplies `q^e` in a `(1 - X q^e)` factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum XPart {
    One,
    A,
    AInv,
}

/// `scalar * num * prod(num_atoms) / prod(den_atoms)`, atoms monic and
/// non-constant. Zero is `scalar = 0` with everything else trivial.
#[derive(Clone, Debug)]
pub struct FactoredRatFunc<F: Field> {
    scalar: F,
    num: Poly<F>,
    num_atoms: BTreeMap<Poly<F>, u32>,
    den_atoms: BTreeMap<Poly<F>, u32>,
}

fn atom_q<F: Field>() -> Poly<F> {
    Poly::monomial(F::one(), 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum AtomClass {
    /// The monomial `q`.
    QMonomial,
    /// `q^j - 1`.
    OneMinusQ(u64),
    /// Anything else (parametric atoms, opaque factors from the DSL).
    Other,
}

pub(crate) fn classify_atom<F: Field>(p: &Poly<F>) -> AtomClass {
    let coeffs = p.coeffs();
    if coeffs.len() == 2 && coeffs[0].is_zero() && coeffs[1].is_one() {
        return AtomClass::QMonomial;
    }
    if coeffs.len() >= 2
        && coeffs[0].neg().is_one()
        && coeffs[coeffs.len() - 1].is_one()
        && coeffs[1..coeffs.len() - 1].iter().all(|c| c.is_zero())
    {
        return AtomClass::OneMinusQ((coeffs.len() - 1) as u64);
    }
    AtomClass::Other
}

impl<F: Field> FactoredRatFunc<F> {
    pub fn one() -> Self {
        FactoredRatFunc {
            scalar: F::one(),
            num: Poly::one(),
            num_atoms: BTreeMap::new(),
            den_atoms: BTreeMap::new(),
        }
    }

    pub fn zero() -> Self {
        FactoredRatFunc {
            scalar: F::zero(),
            num: Poly::one(),
            num_atoms: BTreeMap::new(),
            den_atoms: BTreeMap::new(),
        }
    }

    pub fn from_scalar(c: F) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        FactoredRatFunc {
            scalar: c,
            num: Poly::one(),
            num_atoms: BTreeMap::new(),
            den_atoms: BTreeMap::new(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        Self::from_scalar(F::from_i64(v))
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        FactoredRatFunc {
            scalar: F::one(),
            num: p,
            num_atoms: BTreeMap::new(),
            den_atoms: BTreeMap::new(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.scalar.is_zero() || self.num.is_zero()
    }

    fn set_zero(&mut self) {
        *self = Self::zero();
    }

    /// Total degree `(num side) - (den side)` of the unreduced fraction.
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            return 0;
        }
        let mut d = self.num.degree_or_zero() as i64;
        for (a, m) in &self.num_atoms {
            d += (a.degree_or_zero() as i64) * (*m as i64);
        }
        for (a, m) in &self.den_atoms {
            d -= (a.degree_or_zero() as i64) * (*m as i64);
        }
        d
    }

    fn push_atom(map_into: &mut BTreeMap<Poly<F>, u32>, map_cancel: &mut BTreeMap<Poly<F>, u32>, atom: Poly<F>, mult: u32) {
        if mult == 0 {
            return;
        }
        debug_assert!(atom.is_monic() && atom.degree_or_zero() >= 1);
        if let Some(e) = map_cancel.get_mut(&atom) {
            let cancelled = mult.min(*e);
            *e -= cancelled;
            if *e == 0 {
                map_cancel.remove(&atom);
            }
            if mult > cancelled {
                *map_into.entry(atom).or_insert(0) += mult - cancelled;
            }
        } else {
            *map_into.entry(atom).or_insert(0) += mult;
        }
    }

    pub fn mul_num_atom(&mut self, atom: Poly<F>, mult: u32) {
        if self.is_zero() {
            return;
        }
        Self::push_atom(&mut self.num_atoms, &mut self.den_atoms, atom, mult);
    }

    pub fn mul_den_atom(&mut self, atom: Poly<F>, mult: u32) {
        if self.is_zero() {
            return;
        }
        Self::push_atom(&mut self.den_atoms, &mut self.num_atoms, atom, mult);
    }

    pub fn mul_scalar(&mut self, c: &F) {
        if c.is_zero() {
            self.set_zero();
        } else if !self.is_zero() {
            self.scalar = self.scalar.mul(c);
        }
    }

    pub fn div_scalar(&mut self, c: &F) {
        let inv = c.inv().expect("division by zero scalar");
        self.mul_scalar(&inv);
    }

    /// Multiply by `q^e` (negative e goes to the denominator).
    pub fn mul_qpow(&mut self, e: i64) {
        if e > 0 {
            self.mul_num_atom(atom_q(), e as u32);
        } else if e < 0 {
            self.mul_den_atom(atom_q(), (-e) as u32);
        }
    }

    /// Multiply by `(1 - X q^e)`. Requires the parametric field for
    /// `X != One`.
    pub fn mul_one_minus(&mut self, x: XPart, e: i64) {
        let (scalar, atom, den_pow) = one_minus_parts::<F>(x, e);
        self.mul_scalar(&scalar);
        if let Some(a) = atom {
            self.mul_num_atom(a, 1);
        }
        if den_pow > 0 {
            self.mul_den_atom(atom_q(), den_pow);
        }
    }

    /// Divide by `(1 - X q^e)`; panics if the factor is zero.
    pub fn div_one_minus(&mut self, x: XPart, e: i64) {
        let (scalar, atom, den_pow) = one_minus_parts::<F>(x, e);
        assert!(!scalar.is_zero(), "division by zero factor (1 - q^0)");
        self.div_scalar(&scalar);
        if let Some(a) = atom {
            self.mul_den_atom(a, 1);
        }
        if den_pow > 0 {
            self.mul_num_atom(atom_q(), den_pow);
        }
    }

    /// Multiply by the q-integer `[m]` in `q^stretch`:
    /// `(1 - q^{stretch*m}) / (1 - q^{stretch})`. `m = 0` yields zero;
    /// negative `m` is the rational-function extension.
    pub fn mul_qint(&mut self, m: i64, stretch: i64) {
        assert!(stretch >= 1);
        if m == 0 {
            self.set_zero();
            return;
        }
        self.mul_one_minus(XPart::One, stretch * m);
        self.div_one_minus(XPart::One, stretch);
    }

    pub fn div_qint(&mut self, m: i64, stretch: i64) {
        assert!(stretch >= 1 && m != 0, "division by q-integer zero");
        self.div_one_minus(XPart::One, stretch * m);
        self.mul_one_minus(XPart::One, stretch);
    }

    /// Multiply by the q-shifted factorial `prod_{j<k} (1 - X q^{t+jd})`.
    pub fn mul_poch(&mut self, x: XPart, t: i64, d: i64, k: u64) {
        assert!(d >= 1);
        for j in 0..k as i64 {
            self.mul_one_minus(x, t + j * d);
        }
    }

    pub fn div_poch(&mut self, x: XPart, t: i64, d: i64, k: u64) {
        assert!(d >= 1);
        for j in 0..k as i64 {
            self.div_one_minus(x, t + j * d);
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        let mut out = self.clone();
        out.scalar = out.scalar.mul(&rhs.scalar);
        if !rhs.num.is_one() {
            out.num = out.num.mul(&rhs.num);
        }
        for (a, m) in &rhs.num_atoms {
            out.mul_num_atom(a.clone(), *m);
        }
        for (a, m) in &rhs.den_atoms {
            out.mul_den_atom(a.clone(), *m);
        }
        out
    }

    /// Reciprocal. The dense numerator part becomes a denominator atom.
    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        let mut out = FactoredRatFunc {
            scalar: self.scalar.inv().expect("nonzero"),
            num: Poly::one(),
            num_atoms: self.den_atoms.clone(),
            den_atoms: self.num_atoms.clone(),
        };
        if !self.num.is_one() {
            let lead = self.num.leading().expect("nonzero").clone();
            if self.num.degree_or_zero() == 0 {
                out.div_scalar(&lead);
            } else {
                let monic = self.num.monic();
                out.div_scalar(&lead);
                out.mul_den_atom(monic, 1);
            }
        }
        out
    }

    pub fn div(&self, rhs: &Self) -> Self {
        self.mul(&rhs.inv())
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        if !out.is_zero() {
            out.scalar = out.scalar.neg();
        }
        out
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// The dense numerator `scalar * num * prod(num_atoms)`.
    pub fn materialize_num(&self) -> Poly<F> {
        if self.is_zero() {
            return Poly::zero();
        }
        let mut atoms: Vec<(&Poly<F>, u32)> =
            self.num_atoms.iter().map(|(a, m)| (a, *m)).collect();
        atoms.sort_by_key(|(a, _)| a.degree_or_zero());
        let mut acc = self.num.scale(&self.scalar);
        for (a, m) in atoms {
            if classify_atom(a) == AtomClass::QMonomial {
                acc = acc.mul_qpow(m as usize);
            } else {
                for _ in 0..m {
                    acc = acc.mul(a);
                }
            }
        }
        acc
    }

    /// The dense denominator `prod(den_atoms)`.
    pub fn materialize_den(&self) -> Poly<F> {
        let mut atoms: Vec<(&Poly<F>, u32)> =
            self.den_atoms.iter().map(|(a, m)| (a, *m)).collect();
        atoms.sort_by_key(|(a, _)| a.degree_or_zero());
        let mut acc: Poly<F> = Poly::one();
        for (a, m) in atoms {
            if classify_atom(a) == AtomClass::QMonomial {
                acc = acc.mul_qpow(m as usize);
            } else {
                for _ in 0..m {
                    acc = acc.mul(a);
                }
            }
        }
        acc
    }

    pub(crate) fn den_atoms(&self) -> &BTreeMap<Poly<F>, u32> {
        &self.den_atoms
    }

    pub fn add(&self, rhs: &Self) -> Self {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let mut lcm: BTreeMap<Poly<F>, u32> = self.den_atoms.clone();
        for (a, m) in &rhs.den_atoms {
            let e = lcm.entry(a.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let mut n1 = self.materialize_num();
        for (a, m) in &lcm {
            let have = self.den_atoms.get(a).copied().unwrap_or(0);
            n1 = mul_atom_pow(n1, a, *m - have);
        }
        let mut n2 = rhs.materialize_num();
        for (a, m) in &lcm {
            let have = rhs.den_atoms.get(a).copied().unwrap_or(0);
            n2 = mul_atom_pow(n2, a, *m - have);
        }
        let num = n1.add(&n2);
        if num.is_zero() {
            return Self::zero();
        }
        FactoredRatFunc {
            scalar: F::one(),
            num,
            num_atoms: BTreeMap::new(),
            den_atoms: lcm,
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    /// Full reduction to a canonical rational function. Denominator atoms of
    /// the form `q^j - 1` are split into cyclotomics and peeled off the
    /// numerator by exact division (mod-p screened); other atoms are peeled
    /// whole, with a gcd fallback for partial cancellation.
    pub fn into_ratfunc(&self) -> RatFunc<F> {
        if self.is_zero() {
            return RatFunc::zero();
        }
        let mut num = self.materialize_num();
        let mut cyclo_mult: BTreeMap<u64, u32> = BTreeMap::new();
        let mut q_power: u32 = 0;
        let mut others: Vec<(Poly<F>, u32)> = Vec::new();
        for (atom, mult) in &self.den_atoms {
            match classify_atom(atom) {
                AtomClass::QMonomial => q_power += *mult,
                AtomClass::OneMinusQ(j) => {
                    for d in divisors(j) {
                        *cyclo_mult.entry(d).or_insert(0) += *mult;
                    }
                }
                AtomClass::Other => others.push((atom.clone(), *mult)),
            }
        }

        // q powers cancel against trailing zeros.
        let tz = num.trailing_zeros().min(q_power as usize);
        num = num.div_qpow(tz);
        q_power -= tz as u32;

        let mut screen = ModImage::of(&num, SCREEN_PRIME);
        let mut den_parts: Vec<(Poly<F>, u32)> = Vec::new();
        if q_power > 0 {
            den_parts.push((atom_q(), q_power));
        }
        for (d, mult) in &cyclo_mult {
            let phi: Poly<F> = cyclotomic_in(*d);
            let phi_img = ModImage::of(&phi, SCREEN_PRIME);
            let mut remaining = *mult;
            while remaining > 0 {
                let screen_ok = match (&mut screen, &phi_img) {
                    (Some(s), Some(pi)) => {
                        let mut trial = ModImage {
                            coeffs: s.coeffs.clone(),
                            p: s.p,
                        };
                        if trial.try_div(pi) {
                            Some(trial)
                        } else {
                            None
                        }
                    }
                    _ => None,
                };
                if screen.is_some() && phi_img.is_some() && screen_ok.is_none() {
                    break;
                }
                match num.div_exact(&phi) {
                    Some(quot) => {
                        num = quot;
                        if let Some(t) = screen_ok {
                            screen = Some(t);
                        }
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining > 0 {
                den_parts.push((phi, remaining));
            }
        }
        // Non-cyclotomic atoms: peel whole copies, then refine partial
        // cancellation with small gcds.
        for (atom, mult) in others {
            let mut remaining = mult;
            while remaining > 0 {
                match num.div_exact(&atom) {
                    Some(q) => {
                        num = q;
                        remaining -= 1;
                    }
                    None => break,
                }
            }
            if remaining == 0 {
                continue;
            }
            let mut g = num.gcd(&atom);
            if g.degree_or_zero() == 0 {
                den_parts.push((atom, remaining));
                continue;
            }
            // One copy cancels partially; the rest stay whole.
            num = num.div_exact(&g).expect("gcd divides");
            let mut reduced = atom.div_exact(&g).expect("gcd divides");
            loop {
                g = num.gcd(&reduced);
                if g.degree_or_zero() == 0 {
                    break;
                }
                num = num.div_exact(&g).expect("gcd divides");
                reduced = reduced.div_exact(&g).expect("gcd divides");
            }
            if reduced.degree_or_zero() > 0 {
                den_parts.push((reduced, 1));
            }
            if remaining > 1 {
                den_parts.push((atom, remaining - 1));
            }
        }
        den_parts.sort_by_key(|(p, _)| p.degree_or_zero());
        let mut den: Poly<F> = Poly::one();
        for (p, m) in den_parts {
            den = mul_atom_pow(den, &p, m);
        }
        RatFunc::from_reduced(num, den)
    }
}

fn mul_atom_pow<F: Field>(mut acc: Poly<F>, atom: &Poly<F>, mult: u32) -> Poly<F> {
    if mult == 0 {
        return acc;
    }
    if classify_atom(atom) == AtomClass::QMonomial {
        return acc.mul_qpow(mult as usize);
    }
    for _ in 0..mult {
        acc = acc.mul(atom);
    }
    acc
}

/// Decompose `(1 - X q^e)` as `scalar * atom / q^den_pow` with a monic atom.
fn one_minus_parts<F: Field>(x: XPart, e: i64) -> (F, Option<Poly<F>>, u32) {
    let a = || F::var_a().expect("parametric coefficient field required for a-factors");
    match x {
        XPart::One => {
            if e > 0 {
                // 1 - q^e = -(q^e - 1)
                let atom = Poly::monomial(F::one(), e as usize).sub(&Poly::one());
                (F::one().neg(), Some(atom), 0)
            } else if e == 0 {
                (F::zero(), None, 0)
            } else {
                // 1 - q^-m = (q^m - 1)/q^m
                let m = (-e) as usize;
                let atom = Poly::monomial(F::one(), m).sub(&Poly::one());
                (F::one(), Some(atom), m as u32)
            }
        }
        XPart::A => {
            if e > 0 {
                // 1 - a q^e = -a (q^e - 1/a)
                let av = a();
                let ainv = av.inv().expect("a invertible");
                let atom = Poly::monomial(F::one(), e as usize).sub(&Poly::constant(ainv));
                (av.neg(), Some(atom), 0)
            } else if e == 0 {
                (F::one().sub(&a()), None, 0)
            } else {
                // 1 - a q^-m = (q^m - a)/q^m
                let m = (-e) as usize;
                let atom = Poly::monomial(F::one(), m).sub(&Poly::constant(a()));
                (F::one(), Some(atom), m as u32)
            }
        }
        XPart::AInv => {
            if e > 0 {
                // 1 - q^e/a = -(1/a)(q^e - a)
                let av = a();
                let atom = Poly::monomial(F::one(), e as usize).sub(&Poly::constant(av.clone()));
                (av.inv().expect("a invertible").neg(), Some(atom), 0)
            } else if e == 0 {
                let av = a();
                (F::one().sub(&av.inv().expect("a invertible")), None, 0)
            } else {
                // 1 - q^-m/a = (q^m - 1/a)/q^m
                let m = (-e) as usize;
                let av = a();
                let atom = Poly::monomial(F::one(), m)
                    .sub(&Poly::constant(av.inv().expect("a invertible")));
                (F::one(), Some(atom), m as u32)
            }
        }
    }
}

/// Incremental summation of a series whose consecutive-term ratios are
/// factored rational functions. The partial sum is carried over the common
/// factored denominator; no gcd is ever taken.
pub struct SumAccumulator<F: Field> {
    term_num: Poly<F>,
    den: BTreeMap<Poly<F>, u32>,
    sum_num: Poly<F>,
}

impl<F: Field> SumAccumulator<F> {
    pub fn new(first_term: &FactoredRatFunc<F>) -> Self {
        let term_num = first_term.materialize_num();
        SumAccumulator {
            sum_num: term_num.clone(),
            term_num,
            den: first_term.den_atoms.clone(),
        }
    }

    /// `term *= ratio; sum += term`.
    pub fn step(&mut self, ratio: &FactoredRatFunc<F>) {
        assert!(!ratio.is_zero(), "zero term ratio");
        let mut tn = self.term_num.scale(&ratio.scalar);
        if !ratio.num.is_one() {
            tn = tn.mul(&ratio.num);
        }
        for (atom, mult) in &ratio.num_atoms {
            tn = mul_atom_pow(tn, atom, *mult);
        }
        // Denominator atoms of the ratio either cancel into the term
        // numerator or extend the common denominator.
        let mut new_den: Vec<(Poly<F>, u32)> = Vec::new();
        for (atom, mult) in &ratio.den_atoms {
            let mut outstanding = *mult;
            while outstanding > 0 {
                match tn.div_exact(atom) {
                    Some(q) => {
                        tn = q;
                        outstanding -= 1;
                    }
                    None => break,
                }
            }
            if outstanding > 0 {
                new_den.push((atom.clone(), outstanding));
            }
        }
        for (atom, mult) in new_den {
            let sn = std::mem::replace(&mut self.sum_num, Poly::zero());
            self.sum_num = mul_atom_pow(sn, &atom, mult);
            *self.den.entry(atom).or_insert(0) += mult;
        }
        self.term_num = tn;
        self.sum_num = self.sum_num.add(&self.term_num);
    }

    pub fn finish(self) -> FactoredRatFunc<F> {
        if self.sum_num.is_zero() {
            return FactoredRatFunc::zero();
        }
        FactoredRatFunc {
            scalar: F::one(),
            num: self.sum_num,
            num_atoms: BTreeMap::new(),
            den_atoms: self.den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ParamField;
    use num_rational::BigRational;

    type Fr = FactoredRatFunc<BigRational>;
    type R = RatFunc<BigRational>;

    fn p(coeffs: &[i64]) -> Poly<BigRational> {
        Poly::from_i64_coeffs(coeffs)
    }

    #[test]
    fn one_minus_and_reduction() {
        // (1-q^2)/(1-q^4) reduces to 1/(1+q^2)
        let mut f = Fr::one();
        f.mul_one_minus(XPart::One, 2);
        f.div_one_minus(XPart::One, 4);
        let r = f.into_ratfunc();
        assert_eq!(r, R::new(Poly::one(), p(&[1, 0, 1])));
    }

    #[test]
    fn negative_exponents() {
        // (1 - q^-2) = (q^2-1)/q^2
        let mut f = Fr::one();
        f.mul_one_minus(XPart::One, -2);
        let r = f.into_ratfunc();
        assert_eq!(r, R::new(p(&[-1, 0, 1]), p(&[0, 0, 1])));
    }

    #[test]
    fn qint_builder() {
        let mut f = Fr::one();
        f.mul_qint(5, 1);
        assert_eq!(f.into_ratfunc(), R::from_poly(p(&[1, 1, 1, 1, 1])));
        let mut g = Fr::one();
        g.mul_qint(3, 2);
        assert_eq!(g.into_ratfunc(), R::from_poly(p(&[1, 0, 1, 0, 1])));
        // [-3] = -q^-3 [3]
        let mut h = Fr::one();
        h.mul_qint(-3, 1);
        let expect = R::from_poly(p(&[1, 1, 1]))
            .neg()
            .mul(&R::qpow(-3));
        assert_eq!(h.into_ratfunc(), expect);
    }

    #[test]
    fn add_with_common_denominator() {
        // 1/(1-q) + 1/(1-q^2) = (2+q)/(1-q^2) ... checked against RatFunc.
        let mut x = Fr::one();
        x.div_one_minus(XPart::One, 1);
        let mut y = Fr::one();
        y.div_one_minus(XPart::One, 2);
        let sum = x.add(&y);
        let expect = R::new(Poly::one(), p(&[1, -1])).add(&R::new(Poly::one(), p(&[1, 0, -1])));
        assert_eq!(sum.into_ratfunc(), expect);
    }

    #[test]
    fn parametric_atoms() {
        // (1 - a q)(1 - q/a) over Q(a): check a few coefficients via RatFunc.
        let mut f = FactoredRatFunc::<ParamField>::one();
        f.mul_one_minus(XPart::A, 1);
        f.mul_one_minus(XPart::AInv, 1);
        let r = f.into_ratfunc();
        // = 1 - (a + 1/a) q + q^2
        let a = <ParamField as Field>::var_a().unwrap();
        let mid = a.add(&a.inv().unwrap()).neg();
        let expect = Poly::from_coeffs(vec![
            <ParamField as Field>::one(),
            mid,
            <ParamField as Field>::one(),
        ]);
        assert_eq!(r, RatFunc::from_poly(expect));
    }

    #[test]
    fn accumulator_matches_direct_sum() {
        // sum_{k=0}^{5} q^k / (q^2;q^2)_k, built incrementally, against the
        // same sum assembled from scratch with RatFunc arithmetic.
        let direct = (0..=5u64)
            .map(|k| {
                let mut t = Fr::one();
                t.mul_qpow(k as i64);
                t.div_poch(XPart::One, 2, 2, k);
                t.into_ratfunc()
            })
            .fold(R::zero(), |acc, t| acc.add(&t));

        let first = Fr::one();
        let mut acc = SumAccumulator::new(&first);
        for k in 1..=5i64 {
            let mut ratio = Fr::one();
            ratio.mul_qpow(1);
            ratio.div_one_minus(XPart::One, 2 * k);
            acc.step(&ratio);
        }
        assert_eq!(acc.finish().into_ratfunc(), direct);
    }

    #[test]
    fn inverse_roundtrip() {
        let mut f = Fr::one();
        f.mul_one_minus(XPart::One, 3);
        f.div_one_minus(XPart::One, 5);
        f.mul_qpow(-2);
        f.mul_scalar(&<BigRational as Field>::from_i64(7));
        let prod = f.mul(&f.inv());
        assert!(prod.into_ratfunc().is_one());
    }
}
