//! Rational functions: reduced fractions of two polynomials with a monic
//! denominator. This is the value domain for every truncated q-series, and —
//! read in the variable `a` — the coefficient field `Q(a)` itself.

use crate::field::Field;
use crate::poly::Poly;

/// A fraction `num/den` in lowest terms. Invariants: `den` is nonzero and
/// monic, `gcd(num, den) = 1`, and zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatFunc<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Construct and reduce. Panics on a zero denominator.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        if num.is_zero() {
            return RatFunc {
                num,
                den: Poly::one(),
            };
        }
        if den.degree_or_zero() == 0 {
            let inv = den.leading().expect("nonzero").inv().expect("unit");
            return RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        // Cheap structural paths before the general gcd: monomial
        // denominators and exact divisibility both occur constantly.
        let tz = num.trailing_zeros().min(den.trailing_zeros());
        let (num, den) = if tz > 0 {
            (num.div_qpow(tz), den.div_qpow(tz))
        } else {
            (num, den)
        };
        if let Some(q) = num.div_exact(&den) {
            return RatFunc {
                num: q,
                den: Poly::one(),
            };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.degree_or_zero() > 0 {
            (
                num.div_exact(&g).expect("gcd divides"),
                den.div_exact(&g).expect("gcd divides"),
            )
        } else {
            (num, den)
        };
        Self::from_reduced(num, den)
    }

    /// Wrap an already-coprime pair, normalizing the denominator monic.
    pub(crate) fn from_reduced(num: Poly<F>, den: Poly<F>) -> Self {
        debug_assert!(!den.is_zero());
        let lead = den.leading().expect("nonzero").clone();
        if lead.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lead.inv().expect("unit");
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn from_i64(v: i64) -> Self {
        RatFunc::from_poly(Poly::constant(F::from_i64(v)))
    }

    /// `q^e`, with negative exponents represented by a monomial denominator.
    pub fn qpow(e: i64) -> Self {
        if e >= 0 {
            RatFunc::from_poly(Poly::monomial(F::one(), e as usize))
        } else {
            RatFunc {
                num: Poly::one(),
                den: Poly::monomial(F::one(), (-e) as usize),
            }
        }
    }

    pub fn zero() -> Self {
        RatFunc::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        RatFunc::from_poly(Poly::one())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    /// `deg num - deg den`; zero reports 0.
    pub fn degree(&self) -> i64 {
        if self.is_zero() {
            0
        } else {
            self.num.degree_or_zero() as i64 - self.den.degree_or_zero() as i64
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, false)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add_signed(rhs, true)
    }

    // Classic rational addition: with reduced inputs and g = gcd(d1, d2),
    // the only factors the result can drop live in g, so the final
    // reduction gcd runs against g instead of the whole denominator.
    fn add_signed(&self, rhs: &Self, negate: bool) -> Self {
        if self.is_zero() {
            return if negate { rhs.neg() } else { rhs.clone() };
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let combine = |a: &Poly<F>, b: &Poly<F>| if negate { a.sub(b) } else { a.add(b) };
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(combine(&self.num, &rhs.num));
        }
        // Accumulating sums almost always have nested denominators; exact
        // division is far cheaper than the honest gcd.
        let g = if self.den.degree_or_zero() == 0 || rhs.den.degree_or_zero() == 0 {
            Poly::one()
        } else if rhs.den.div_exact(&self.den).is_some() {
            self.den.clone()
        } else if self.den.div_exact(&rhs.den).is_some() {
            rhs.den.clone()
        } else {
            self.den.gcd(&rhs.den)
        };
        if g.degree_or_zero() == 0 {
            let num = combine(&self.num.mul(&rhs.den), &rhs.num.mul(&self.den));
            return RatFunc::from_reduced(num, self.den.mul(&rhs.den));
        }
        let d1g = self.den.div_exact(&g).expect("gcd divides");
        let d2g = rhs.den.div_exact(&g).expect("gcd divides");
        let num = combine(&self.num.mul(&d2g), &rhs.num.mul(&d1g));
        if num.is_zero() {
            return RatFunc::zero();
        }
        let h = num.gcd(&g);
        if h.degree_or_zero() == 0 {
            return RatFunc::from_reduced(num, self.den.mul(&d2g));
        }
        let num = num.div_exact(&h).expect("gcd divides");
        let den = self.den.div_exact(&h).expect("gcd divides").mul(&d2g);
        RatFunc::from_reduced(num, den)
    }

    pub fn neg(&self) -> Self {
        RatFunc {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        // Cross-reduce first so the final gcd is usually trivial.
        let g1 = if self.num.is_zero() || rhs.den.degree_or_zero() == 0 {
            Poly::one()
        } else {
            self.num.gcd(&rhs.den)
        };
        let g2 = if rhs.num.is_zero() || self.den.degree_or_zero() == 0 {
            Poly::one()
        } else {
            rhs.num.gcd(&self.den)
        };
        let n1 = if g1.is_one() {
            self.num.clone()
        } else {
            self.num.div_exact(&g1).expect("gcd divides")
        };
        let d2 = if g1.is_one() {
            rhs.den.clone()
        } else {
            rhs.den.div_exact(&g1).expect("gcd divides")
        };
        let n2 = if g2.is_one() {
            rhs.num.clone()
        } else {
            rhs.num.div_exact(&g2).expect("gcd divides")
        };
        let d1 = if g2.is_one() {
            self.den.clone()
        } else {
            self.den.div_exact(&g2).expect("gcd divides")
        };
        RatFunc::new(n1.mul(&n2), d1.mul(&d2))
    }

    /// Reciprocal; `None` for zero.
    pub fn checked_inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(RatFunc::from_reduced(self.den.clone(), self.num.clone()))
    }

    /// Division; panics on a zero divisor (see `checked_div`).
    pub fn div(&self, rhs: &Self) -> Self {
        self.checked_div(rhs).expect("division by zero rational function")
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.checked_inv().map(|i| self.mul(&i))
    }

    pub fn pow_i64(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.checked_inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let mut acc = RatFunc::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// Evaluate coefficient-wise into another field (e.g. specialize `a`).
    /// `None` if the denominator evaluates to zero.
    pub fn map_eval<G: Field>(&self, f: impl Fn(&F) -> G) -> Option<RatFunc<G>> {
        let num = self.num.map_field(&f);
        let den = self.den.map_field(&f);
        if den.is_zero() {
            return None;
        }
        Some(RatFunc::new(num, den))
    }
}

impl<F: Field> std::fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl<F: Field> std::fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
