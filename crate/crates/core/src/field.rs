//! Coefficient fields for the polynomial engine.
//!
//! Two fields are used in practice: the rationals `Q` (backed by
//! [`BigRational`]) and the rational-function field `Q(a)` in the parameter
//! `a` (see [`ParamField`]). Everything downstream — polynomials, rational
//! functions, q-series — is generic over [`Field`], so the same machinery
//! serves both.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::poly::Poly;
use crate::ratfunc::RatFunc;

/// An exact field of coefficients.
///
/// `Ord` is required so values can serve as map keys; the order has no
/// arithmetic meaning for `Q(a)`.
pub trait Field:
    Clone + PartialEq + Eq + PartialOrd + Ord + std::fmt::Debug + std::fmt::Display + Send + Sync
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;

    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    fn from_rational(r: &BigRational) -> Self;

    fn from_i64(v: i64) -> Self;

    /// The distinguished parameter `a`, when the field has one.
    fn var_a() -> Option<Self> {
        None
    }

    /// The value as a plain rational, when it is one (constants of `Q(a)`
    /// qualify). Used to classify polynomial factors structurally.
    fn to_rational(&self) -> Option<BigRational>;

    /// Residue modulo a word-size prime, for probabilistic screening.
    /// `None` when the field or the value cannot be mapped (e.g. the
    /// denominator vanishes mod `p`, or the field is `Q(a)`).
    fn residue(&self, p: u64) -> Option<u64>;

    /// Field-specific polynomial gcd, overriding the generic Euclidean
    /// fallback. Returns `None` to use the fallback.
    fn poly_gcd_impl(_lhs: &Poly<Self>, _rhs: &Poly<Self>) -> Option<Poly<Self>>
    where
        Self: Sized,
    {
        None
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|i| self.mul(&i))
    }
}

/// Reduce a `BigInt` modulo a u64 prime into `[0, p)`.
pub(crate) fn bigint_mod_u64(x: &BigInt, p: u64) -> u64 {
    let m = x.mod_floor(&BigInt::from(p));
    m.to_u64().expect("mod_floor result fits in u64")
}

/// Modular exponentiation on u64 (via u128 intermediates).
pub(crate) fn pow_mod_u64(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

/// Inverse of `x` modulo a prime `p` (Fermat). Panics if `x ≡ 0`.
pub(crate) fn inv_mod_u64(x: u64, p: u64) -> u64 {
    assert!(x % p != 0, "inverse of zero mod {p}");
    pow_mod_u64(x, p - 2, p)
}

impl Field for BigRational {
    fn zero() -> Self {
        <BigRational as Zero>::zero()
    }
    fn one() -> Self {
        <BigRational as One>::one()
    }
    fn is_zero(&self) -> bool {
        <Self as Zero>::is_zero(self)
    }
    fn is_one(&self) -> bool {
        <Self as One>::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if <Self as Zero>::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn to_rational(&self) -> Option<BigRational> {
        Some(self.clone())
    }
    fn residue(&self, p: u64) -> Option<u64> {
        let den = bigint_mod_u64(self.denom(), p);
        if den == 0 {
            return None;
        }
        let num = bigint_mod_u64(self.numer(), p);
        Some(((num as u128 * inv_mod_u64(den, p) as u128) % p as u128) as u64)
    }
    fn poly_gcd_impl(lhs: &Poly<Self>, rhs: &Poly<Self>) -> Option<Poly<Self>> {
        Some(rational_poly_gcd(lhs, rhs))
    }
}

/// The field `Q(a)`: reduced fractions of polynomials in the parameter `a`.
pub type ParamField = RatFunc<BigRational>;

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn is_one(&self) -> bool {
        RatFunc::is_one(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        RatFunc::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        RatFunc::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        RatFunc::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFunc::checked_inv(self)
    }
    fn from_rational(r: &BigRational) -> Self {
        RatFunc::from_poly(Poly::constant(F::from_rational(r)))
    }
    fn from_i64(v: i64) -> Self {
        RatFunc::from_poly(Poly::constant(F::from_i64(v)))
    }
    fn var_a() -> Option<Self> {
        Some(RatFunc::from_poly(Poly::monomial(F::one(), 1)))
    }
    fn to_rational(&self) -> Option<BigRational> {
        if self.num().degree_or_zero() == 0 && self.den().is_one() {
            self.num().coeff(0).to_rational()
        } else {
            None
        }
    }
    /// Partial ring homomorphism `F(x) -> Z_p` sending the inner variable to
    /// a fixed point; good enough for screening.
    fn residue(&self, p: u64) -> Option<u64> {
        const INNER_POINT: u64 = 1_234_577;
        let den = self.den().eval_mod(INNER_POINT, p)?;
        if den == 0 {
            return None;
        }
        let num = self.num().eval_mod(INNER_POINT, p)?;
        Some(((num as u128 * inv_mod_u64(den, p) as u128) % p as u128) as u64)
    }
    fn poly_gcd_impl(lhs: &Poly<Self>, rhs: &Poly<Self>) -> Option<Poly<Self>> {
        Some(fraction_field_poly_gcd(lhs, rhs))
    }
}

/// Gcd of polynomials whose coefficients live in a fraction field `F(x)`:
/// clear denominators into `F[x][q]`, then run a primitive polynomial
/// remainder sequence there. Naive Euclid over `F(x)` blows coefficient
/// sizes up exponentially; keeping the sequence primitive does not.
fn fraction_field_poly_gcd<F: Field>(
    lhs: &Poly<RatFunc<F>>,
    rhs: &Poly<RatFunc<F>>,
) -> Poly<RatFunc<F>> {
    if lhs.is_zero() {
        return rhs.monic();
    }
    if rhs.is_zero() {
        return lhs.monic();
    }
    let mut a = clear_inner_denominators(lhs);
    let mut b = clear_inner_denominators(rhs);
    make_primitive(&mut a);
    make_primitive(&mut b);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        if b.iter().all(|c| c.is_zero()) {
            let coeffs = a
                .into_iter()
                .map(|c| RatFunc::from_poly(c))
                .collect::<Vec<_>>();
            return Poly::from_coeffs(coeffs).monic();
        }
        let r = inner_pseudo_rem(&a, &b);
        a = b;
        b = r;
        make_primitive(&mut b);
    }
}

fn clear_inner_denominators<F: Field>(p: &Poly<RatFunc<F>>) -> Vec<Poly<F>> {
    let mut l: Poly<F> = Poly::one();
    for c in p.coeffs() {
        if c.is_zero() {
            continue;
        }
        let g = l.gcd(c.den());
        l = l.mul(&c.den().div_exact(&g).expect("gcd divides"));
    }
    p.coeffs()
        .iter()
        .map(|c| {
            if c.is_zero() {
                Poly::zero()
            } else {
                c.num()
                    .mul(&l.div_exact(c.den()).expect("lcm divisible by den"))
            }
        })
        .collect()
}

fn inner_trim<F: Field>(v: &mut Vec<Poly<F>>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn make_primitive<F: Field>(v: &mut Vec<Poly<F>>) {
    inner_trim(v);
    if v.is_empty() {
        return;
    }
    // Divide out the (monic) gcd of the coefficients.
    let mut content: Poly<F> = Poly::zero();
    for c in v.iter() {
        if c.is_zero() {
            continue;
        }
        content = if content.is_zero() {
            c.monic()
        } else {
            content.gcd(c)
        };
        if content.degree_or_zero() == 0 {
            break;
        }
    }
    if content.degree_or_zero() > 0 {
        for c in v.iter_mut() {
            if !c.is_zero() {
                *c = c.div_exact(&content).expect("content divides");
            }
        }
    }
    // Scale out the leading scalar so coefficient sizes stay controlled.
    let lead_scalar = v
        .last()
        .expect("nonzero")
        .leading()
        .expect("nonzero")
        .clone();
    if !lead_scalar.is_one() {
        let inv = lead_scalar.inv().expect("unit");
        for c in v.iter_mut() {
            *c = c.scale(&inv);
        }
    }
}

/// Pseudo-remainder in `(F[x])[q]`: repeatedly scale by the divisor's
/// leading coefficient and subtract.
fn inner_pseudo_rem<F: Field>(a: &[Poly<F>], b: &[Poly<F>]) -> Vec<Poly<F>> {
    let db = b.len() - 1;
    let mut r: Vec<Poly<F>> = a.to_vec();
    inner_trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let lb = b.last().expect("b nonzero").clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r.last().expect("nonzero").clone();
        for c in r.iter_mut() {
            *c = c.mul(&lb);
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let idx = shift + i;
            r[idx] = r[idx].sub(&lead.mul(bc));
        }
        inner_trim(&mut r);
        if r.is_empty() {
            return r;
        }
    }
    r
}

/// Polynomial gcd over `Q` via the primitive polynomial remainder sequence
/// over `Z`. Coefficient growth stays polynomial, unlike the naive rational
/// Euclidean algorithm.
fn rational_poly_gcd(lhs: &Poly<BigRational>, rhs: &Poly<BigRational>) -> Poly<BigRational> {
    if lhs.is_zero() {
        return rhs.monic();
    }
    if rhs.is_zero() {
        return lhs.monic();
    }
    let mut a = clear_denominators(lhs);
    let mut b = clear_denominators(rhs);
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    primitive_part(&mut a);
    primitive_part(&mut b);
    loop {
        if b.iter().all(|c| c.is_zero()) {
            trim(&mut a);
            let monic_div = a.last().expect("nonzero").clone();
            let coeffs = a
                .into_iter()
                .map(|c| BigRational::new(c, monic_div.clone()))
                .collect();
            return Poly::from_coeffs(coeffs);
        }
        let r = pseudo_rem(&a, &b);
        a = b;
        b = r;
        primitive_part(&mut b);
    }
}

fn clear_denominators(p: &Poly<BigRational>) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in p.coeffs() {
        l = l.lcm(c.denom());
    }
    p.coeffs()
        .iter()
        .map(|c| c.numer() * (&l / c.denom()))
        .collect()
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

fn primitive_part(v: &mut Vec<BigInt>) {
    trim(v);
    if v.is_empty() {
        return;
    }
    let mut g = BigInt::zero();
    for c in v.iter() {
        g = g.gcd(c);
    }
    if v.last().map_or(false, |c| c.is_negative()) {
        g = -g;
    }
    if !g.is_one() {
        for c in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// One step of pseudo-division: returns the pseudo-remainder of `a` by `b`
/// (both nonzero, deg a >= deg b not required).
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r: Vec<BigInt> = a.to_vec();
    trim(&mut r);
    if r.len() < b.len() {
        return r;
    }
    let lb = b.last().expect("b nonzero").clone();
    while r.len() >= b.len() {
        let dr = r.len() - 1;
        let lead = r.last().expect("nonzero").clone();
        // r = lb*r - lead*q^(dr-db)*b
        for c in r.iter_mut() {
            *c = &*c * &lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            let idx = shift + i;
            let sub = &lead * bc;
            r[idx] = &r[idx] - sub;
        }
        trim(&mut r);
        if r.is_empty() {
            return r;
        }
    }
    r
}
