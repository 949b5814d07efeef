//! The classical (q -> 1) side: exact rational Pochhammers, p-adic
//! valuations, the Morita p-adic Gamma function at finite precision, and the
//! supercongruence checks on truncated Ramanujan-type sums.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::modeval::is_prime_u64;

#[derive(Debug, Error)]
pub enum PAdicError {
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
}

fn hyp(msg: impl Into<String>) -> PAdicError {
    PAdicError::Hypothesis(msg.into())
}

/// A residue modulo `p^k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PAdicResidue {
    pub prime: u64,
    pub precision: u32,
    pub value: u64,
}

impl PAdicResidue {
    pub fn modulus(&self) -> u64 {
        self.prime.pow(self.precision)
    }

    /// Reduce to a lower precision.
    pub fn truncate(&self, precision: u32) -> PAdicResidue {
        assert!(precision <= self.precision);
        PAdicResidue {
            prime: self.prime,
            precision,
            value: self.value % self.prime.pow(precision),
        }
    }

    pub fn mul(&self, rhs: &PAdicResidue) -> PAdicResidue {
        assert_eq!((self.prime, self.precision), (rhs.prime, rhs.precision));
        PAdicResidue {
            value: mulmod(self.value, rhs.value, self.modulus()),
            ..*self
        }
    }

    pub fn inv(&self) -> Option<PAdicResidue> {
        inv_mod(self.value, self.modulus()).map(|value| PAdicResidue { value, ..*self })
    }

    pub fn neg(&self) -> PAdicResidue {
        let m = self.modulus();
        PAdicResidue {
            value: (m - self.value % m) % m,
            ..*self
        }
    }
}

fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Inverse modulo an arbitrary modulus via extended Euclid.
fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(m as i128) as u64)
}

/// p-adic valuation of a rational; `None` encodes +infinity (x = 0).
pub fn val_p(x: &BigRational, p: u64) -> Option<i64> {
    assert!(is_prime_u64(p), "val_p requires a prime, got {p}");
    if x.is_zero() {
        return None;
    }
    let pb = BigInt::from(p);
    let mut v: i64 = 0;
    let mut num = x.numer().abs();
    while (&num % &pb).is_zero() {
        num /= &pb;
        v += 1;
    }
    let mut den = x.denom().clone();
    while (&den % &pb).is_zero() {
        den /= &pb;
        v -= 1;
    }
    Some(v)
}

/// Exact rising factorial `(a)_n = a (a+1) ... (a+n-1)`.
pub fn pochhammer(a: &BigRational, n: u64) -> BigRational {
    let mut acc = BigRational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += BigRational::one();
    }
    acc
}

/// Residue of a p-integral rational mod `p^k`.
fn rational_residue(x: &BigRational, p: u64, k: u32) -> Result<u64, PAdicError> {
    let pk = p.pow(k);
    let pkb = BigInt::from(pk);
    let den = x.denom().mod_floor(&pkb).to_u64().expect("fits");
    if den % p == 0 {
        return Err(hyp(format!("{x} is not {p}-integral")));
    }
    let num = x.numer().mod_floor(&pkb).to_u64().expect("fits");
    let inv = inv_mod(den, pk).expect("unit");
    Ok(mulmod(num, inv, pk))
}

/// The Morita p-adic Gamma function mod `p^k`, by continuity: take the
/// integer `m` in `[1, p^k]` congruent to `x`, then
/// `(-1)^m prod_{0<j<m, p∤j} j`.
pub fn gamma_p(x: &BigRational, p: u64, k: u32) -> Result<PAdicResidue, PAdicError> {
    if !is_prime_u64(p) || p < 3 {
        return Err(hyp(format!("{p} is not an odd prime")));
    }
    if k < 1 {
        return Err(hyp("precision must be positive"));
    }
    let pk = p
        .checked_pow(k)
        .ok_or_else(|| hyp(format!("p^k overflows u64 for p={p}, k={k}")))?;
    let r = rational_residue(x, p, k)?;
    let m = if r == 0 { pk } else { r };
    let mut prod: u64 = 1;
    for j in 1..m {
        if j % p != 0 {
            prod = mulmod(prod, j, pk);
        }
    }
    let value = if m % 2 == 1 { (pk - prod) % pk } else { prod };
    Ok(PAdicResidue {
        prime: p,
        precision: k,
        value,
    })
}

/// The logarithmic-derivative residue `G_1(a) mod p`, computed as the finite
/// difference `(Gamma_p(a+p)/Gamma_p(a) - 1)/p` from the precision-2
/// expansion `Gamma_p(a + bp) == Gamma_p(a)(1 + G_1(a) b p) (mod p^2)`.
pub fn g1_fd(a: &BigRational, p: u64) -> Result<PAdicResidue, PAdicError> {
    let g0 = gamma_p(a, p, 2)?;
    let shifted = a + BigRational::from_integer(BigInt::from(p));
    let g1 = gamma_p(&shifted, p, 2)?;
    let ratio = g1.mul(&g0.inv().expect("gamma value is a unit"));
    let p2 = p * p;
    let diff = (ratio.value + p2 - 1) % p2;
    debug_assert_eq!(diff % p, 0, "ratio must be 1 mod p");
    Ok(PAdicResidue {
        prime: p,
        precision: 1,
        value: (diff / p) % p,
    })
}

/// Which classical weight multiplies the summand.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Weight {
    Linear,
    Cubic,
}

/// Exact rational `sum_{k=0}^{upper} (8k+1)^w (1/4)_k^4 / k!^4`.
pub fn classical_sum(weight: Weight, upper: u64) -> BigRational {
    let quarter = BigRational::new(BigInt::one(), BigInt::from(4));
    let mut acc = BigRational::zero();
    let mut poch_over_fact = BigRational::one(); // (1/4)_k / k!
    for k in 0..=upper {
        let lin = BigRational::from_integer(BigInt::from(8 * k + 1));
        let w = match weight {
            Weight::Linear => lin,
            Weight::Cubic => {
                let sq = &lin * &lin;
                sq * &lin
            }
        };
        let quartic = {
            let sq = &poch_over_fact * &poch_over_fact;
            &sq * &sq
        };
        acc += w * quartic;
        // advance to k+1
        let next = (&quarter + BigRational::from_integer(BigInt::from(k)))
            / BigRational::from_integer(BigInt::from(k + 1));
        poch_over_fact *= next;
    }
    acc
}

/// The classical claims checkable on the p-adic side.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassicalClaim {
    /// Truncation at (p-1)/4 vs the Gamma-form closed value, mod p^3.
    G2,
    /// Truncation at p-1 vs the same closed value, mod p^3.
    G2Full,
    /// Cubic-weight truncation at (p-1)/4 vs the negated closed value.
    G2Cubed,
    /// Cubic-weight truncation at p-1.
    G2CubedFull,
    /// The two closed forms (Pochhammer ratio times p vs the Gamma
    /// expression) agree mod p^3.
    Eq15,
    /// Dwork-type: truncation at (p^r-1)/4 vs the closed factor times the
    /// truncation at (p^{r-1}-1)/4, mod p^{4r}. Conjectural.
    SwisherG3,
}

impl ClassicalClaim {
    pub fn id(&self) -> &'static str {
        match self {
            ClassicalClaim::G2 => "g2",
            ClassicalClaim::G2Full => "g2_full",
            ClassicalClaim::G2Cubed => "g2_cubed",
            ClassicalClaim::G2CubedFull => "g2_cubed_full",
            ClassicalClaim::Eq15 => "eq15",
            ClassicalClaim::SwisherG3 => "swisher_g3",
        }
    }

    pub fn from_id(id: &str) -> Option<ClassicalClaim> {
        [
            ClassicalClaim::G2,
            ClassicalClaim::G2Full,
            ClassicalClaim::G2Cubed,
            ClassicalClaim::G2CubedFull,
            ClassicalClaim::Eq15,
            ClassicalClaim::SwisherG3,
        ]
        .into_iter()
        .find(|c| c.id() == id)
    }

    pub fn conjectural(&self) -> bool {
        matches!(self, ClassicalClaim::SwisherG3)
    }
}

/// Outcome of a classical check: the congruence holds iff the achieved
/// valuation reaches the requirement. `achieved_valuation` is capped at the
/// working precision (the difference is only known modulo `p^precision`).
#[derive(Clone, Debug)]
pub struct ClassicalOutcome {
    pub holds: bool,
    pub required_valuation: i64,
    pub achieved_valuation: Option<i64>,
    pub precision: u32,
    pub conjectural: bool,
    pub note: String,
}

fn require_one_mod_four(p: u64) -> Result<(), PAdicError> {
    if !is_prime_u64(p) {
        return Err(hyp(format!("{p} is not prime")));
    }
    if p % 4 != 1 {
        return Err(hyp(format!("{p} is not congruent to 1 mod 4")));
    }
    Ok(())
}

fn quarter() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4))
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// The Gamma-form closed value `p Gamma_p(1/2) Gamma_p(1/4) / Gamma_p(3/4)`
/// as an exact integer representative mod `p^(k+1)` (the leading `p` raises
/// the usable precision by one).
fn gamma_form_value(p: u64, k: u32) -> Result<BigRational, PAdicError> {
    let g_half = gamma_p(&half(), p, k)?;
    let g_quarter = gamma_p(&quarter(), p, k)?;
    let g_three_quarter = gamma_p(&(quarter() * BigRational::from_integer(3.into())), p, k)?;
    let combo = g_half
        .mul(&g_quarter)
        .mul(&g_three_quarter.inv().expect("unit"));
    Ok(BigRational::from_integer(BigInt::from(combo.value)) * BigRational::from_integer(p.into()))
}

/// Valuation of the difference, capped at the precision the right side is
/// known to.
fn capped_valuation(diff: &BigRational, p: u64, precision: u32) -> Option<i64> {
    val_p(diff, p).map(|v| v.min(precision as i64))
}

fn outcome(
    diff: &BigRational,
    p: u64,
    required: i64,
    precision: u32,
    conjectural: bool,
    note: String,
) -> ClassicalOutcome {
    let achieved = capped_valuation(diff, p, precision);
    ClassicalOutcome {
        holds: achieved.map_or(true, |v| v >= required),
        required_valuation: required,
        achieved_valuation: achieved,
        precision,
        conjectural,
        note,
    }
}

/// Run a classical check at prime `p` (`p == 1 (mod 4)`); `r` only applies
/// to the Dwork-type claim (`r >= 2`).
pub fn check_classical(
    claim: ClassicalClaim,
    p: u64,
    r: u32,
) -> Result<ClassicalOutcome, PAdicError> {
    require_one_mod_four(p)?;
    match claim {
        ClassicalClaim::G2 | ClassicalClaim::G2Full => {
            let prec = 5u32; // report overshoot beyond the required p^3
            let upper = if claim == ClassicalClaim::G2 {
                (p - 1) / 4
            } else {
                p - 1
            };
            let lhs = classical_sum(Weight::Linear, upper);
            let rhs = gamma_form_value(p, prec - 1)?;
            Ok(outcome(
                &(lhs - rhs),
                p,
                3,
                prec,
                false,
                "truncated sum vs p*Gamma_p(1/2)Gamma_p(1/4)/Gamma_p(3/4)".into(),
            ))
        }
        ClassicalClaim::G2Cubed | ClassicalClaim::G2CubedFull => {
            let prec = 5u32;
            let upper = if claim == ClassicalClaim::G2Cubed {
                (p - 1) / 4
            } else {
                p - 1
            };
            let lhs = classical_sum(Weight::Cubic, upper);
            let rhs = -gamma_form_value(p, prec - 1)?;
            Ok(outcome(
                &(lhs - rhs),
                p,
                3,
                prec,
                false,
                "cubic-weight sum vs -p*Gamma_p(1/2)Gamma_p(1/4)/Gamma_p(3/4)".into(),
            ))
        }
        ClassicalClaim::Eq15 => {
            let prec = 4u32;
            let m = (p - 1) / 4;
            let poch_form = pochhammer(&half(), m) / pochhammer(&BigRational::one(), m)
                * BigRational::from_integer(p.into());
            let gamma_form = gamma_form_value(p, prec - 1)?;
            Ok(outcome(
                &(poch_form - gamma_form),
                p,
                3,
                prec,
                false,
                "Pochhammer-form closed value vs Gamma-form closed value".into(),
            ))
        }
        ClassicalClaim::SwisherG3 => {
            if r < 2 {
                return Err(hyp(format!("the Dwork-type claim requires r >= 2, got {r}")));
            }
            let required = 4 * (r as i64);
            let prec = required as u32;
            // sign factor (-1)^{(p^2-1)/8}; for p == 1 (mod 4) this equals
            // (-1)^{(p-1)/4} -- both are computed and cross-checked.
            let s1 = if ((p * p - 1) / 8) % 2 == 0 { 1i64 } else { -1 };
            let s2 = if ((p - 1) / 4) % 2 == 0 { 1i64 } else { -1 };
            if s1 != s2 {
                return Ok(ClassicalOutcome {
                    holds: false,
                    required_valuation: required,
                    achieved_valuation: None,
                    precision: prec,
                    conjectural: true,
                    note: format!(
                        "sign discrepancy: (-1)^((p^2-1)/8) = {s1} but (-1)^((p-1)/4) = {s2}"
                    ),
                });
            }
            let g_half = gamma_p(&half(), p, prec)?;
            let g_quarter = gamma_p(&quarter(), p, prec)?;
            let combo = g_half.mul(&g_quarter).mul(&g_quarter);
            let mut factor = BigRational::from_integer(BigInt::from(combo.value))
                * BigRational::from_integer(p.into());
            if s1 > 0 {
                factor = -factor;
            }
            let pr = BigInt::from(p).pow(r);
            let pr1 = BigInt::from(p).pow(r - 1);
            let upper_hi = ((&pr - BigInt::one()) / BigInt::from(4u32))
                .to_u64()
                .ok_or_else(|| hyp("p^r too large"))?;
            let upper_lo = ((&pr1 - BigInt::one()) / BigInt::from(4u32))
                .to_u64()
                .ok_or_else(|| hyp("p^(r-1) too large"))?;
            let lhs = classical_sum(Weight::Linear, upper_hi);
            let rhs = factor * classical_sum(Weight::Linear, upper_lo);
            Ok(outcome(
                &(lhs - rhs),
                p,
                required,
                prec + 1,
                true,
                format!("Dwork-type comparison at levels p^{r} and p^{}", r - 1),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn val_p_examples() {
        assert_eq!(val_p(&rat(50, 3), 5), Some(2));
        assert_eq!(val_p(&rat(1, 25), 5), Some(-2));
        assert_eq!(val_p(&rat(0, 1), 7), None);
    }

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&rat(1, 4), 0), rat(1, 1));
        assert_eq!(pochhammer(&rat(1, 4), 2), rat(5, 16));
        assert_eq!(pochhammer(&rat(1, 2), 3), rat(15, 8));
    }

    #[test]
    fn gamma_p_examples() {
        // Gamma_5(1) = -1, i.e. 124 mod 125
        let g = gamma_p(&rat(1, 1), 5, 3).unwrap();
        assert_eq!(g.value, 124);
        // 1/2 == 3 (mod 5): Gamma_5(3) = (-1)^3 * 1 * 2 = -2 == 3, and
        // 3^2 == -1 (mod 5), consistent with Gamma_p(1/2)^2 = (-1)^{(p+1)/2}
        let g = gamma_p(&rat(1, 2), 5, 1).unwrap();
        assert_eq!(g.value, 3);
        assert_eq!((g.value * g.value) % 5, 4);
        let g = gamma_p(&rat(2, 1), 7, 2).unwrap();
        assert_eq!(g.value, 1);
        // non p-integral argument rejected
        assert!(gamma_p(&rat(1, 5), 5, 2).is_err());
    }

    #[test]
    fn gamma_half_square_identity() {
        for p in [5u64, 7, 13, 17] {
            for k in 1..=3u32 {
                let pk = p.pow(k);
                let g = gamma_p(&rat(1, 2), p, k).unwrap();
                let sq = mulmod(g.value, g.value, pk);
                let expect = if (p + 1) / 2 % 2 == 0 { 1 } else { pk - 1 };
                assert_eq!(sq, expect, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn gamma_quarter_reflection() {
        // Gamma_p(1/4) Gamma_p(3/4) = -(-1)^{(p-1)/4} for p == 1 (mod 4)
        for p in [5u64, 13, 17] {
            for k in 1..=3u32 {
                let pk = p.pow(k);
                let a = gamma_p(&rat(1, 4), p, k).unwrap();
                let b = gamma_p(&rat(3, 4), p, k).unwrap();
                let prod = mulmod(a.value, b.value, pk);
                let expect = if ((p - 1) / 4) % 2 == 0 { pk - 1 } else { 1 };
                assert_eq!(prod, expect, "p={p} k={k}");
            }
        }
    }

    #[test]
    fn gamma_pochhammer_identity() {
        // (a)_n = (-1)^n Gamma_p(a+n)/Gamma_p(a) when everything is a unit
        for (p, a, n) in [
            (5u64, rat(1, 4), 3u64),
            (13, rat(1, 2), 5),
            (7, rat(2, 1), 4),
            (13, rat(3, 4), 7),
        ] {
            for k in 1..=3u32 {
                let pk = p.pow(k);
                let poch = pochhammer(&a, n);
                if val_p(&poch, p) != Some(0) {
                    continue;
                }
                let lhs = rational_residue(&poch, p, k).unwrap();
                let num = gamma_p(&(a.clone() + BigRational::from_integer(n.into())), p, k)
                    .unwrap();
                let den = gamma_p(&a, p, k).unwrap();
                let mut rhs = num.mul(&den.inv().unwrap());
                if n % 2 == 1 {
                    rhs = rhs.neg();
                }
                assert_eq!(lhs, rhs.value, "p={p} a={a} n={n} k={k} pk={pk}");
            }
        }
    }

    #[test]
    fn g1_symmetry_and_expansion() {
        // G_1(a) = G_1(1-a)
        let l = g1_fd(&rat(1, 4), 13).unwrap();
        let r = g1_fd(&rat(3, 4), 13).unwrap();
        assert_eq!(l, r);
        // continuity at precision 1: a and a+p agree
        let x = g1_fd(&rat(1, 4), 5).unwrap();
        let y = g1_fd(&(rat(1, 4) + rat(5, 1)), 5).unwrap();
        assert_eq!(x, y);
        // numeric value at (1/4, 5): oracle is gamma_p at precision 2 via
        // the defining expansion with b in {1, 2, 3}
        for p in [5u64, 13] {
            for a in [rat(1, 4), rat(1, 2), rat(2, 1)] {
                let g1 = g1_fd(&a, p).unwrap();
                let base = gamma_p(&a, p, 2).unwrap();
                for b in 1u64..=3 {
                    let shifted = gamma_p(
                        &(a.clone() + BigRational::from_integer((b * p).into())),
                        p,
                        2,
                    )
                    .unwrap();
                    // Gamma_p(a + bp) == Gamma_p(a)(1 + G_1(a) b p) (mod p^2)
                    let expect = base.mul(&PAdicResidue {
                        prime: p,
                        precision: 2,
                        value: (1 + g1.value * b % p * p) % (p * p),
                    });
                    assert_eq!(shifted.value, expect.value, "p={p} a={a} b={b}");
                }
            }
        }
    }

    #[test]
    fn gamma_precision_coherence() {
        for p in [5u64, 13] {
            for x in [rat(1, 4), rat(1, 2), rat(7, 3)] {
                let hi = gamma_p(&x, p, 3).unwrap();
                let lo = gamma_p(&x, p, 2).unwrap();
                assert_eq!(hi.truncate(2), lo, "p={p} x={x}");
            }
        }
    }

    #[test]
    fn classical_sum_examples() {
        assert_eq!(classical_sum(Weight::Linear, 0), rat(1, 1));
        assert_eq!(classical_sum(Weight::Linear, 1), rat(265, 256));
        assert_eq!(classical_sum(Weight::Cubic, 1), rat(985, 256));
    }

    #[test]
    fn truncation_tail_valuation() {
        // val_p((1/4)_k / k!) >= 1 for (p-1)/4 < k <= p-1
        for p in [5u64, 13] {
            for k in ((p - 1) / 4 + 1)..=(p - 1) {
                let v = pochhammer(&rat(1, 4), k) / pochhammer(&rat(1, 1), k);
                assert!(val_p(&v, p).map_or(true, |x| x >= 1), "p={p} k={k}");
            }
        }
    }

    #[test]
    fn check_classical_examples() {
        // proved congruences
        let r = check_classical(ClassicalClaim::G2, 5, 0).unwrap();
        assert!(r.holds && !r.conjectural);
        assert!(r.achieved_valuation.unwrap() >= 3);
        let r = check_classical(ClassicalClaim::Eq15, 13, 0).unwrap();
        assert!(r.holds);
        // the Dwork-type conjecture at (5, 2): expect valuation >= 8
        let r = check_classical(ClassicalClaim::SwisherG3, 5, 2).unwrap();
        assert!(r.conjectural);
        assert!(r.holds, "achieved {:?}", r.achieved_valuation);
        assert!(r.achieved_valuation.unwrap() >= 8);
        // hypothesis violations
        assert!(check_classical(ClassicalClaim::G2, 7, 0).is_err());
        assert!(check_classical(ClassicalClaim::G2, 9, 0).is_err());
        assert!(check_classical(ClassicalClaim::SwisherG3, 5, 1).is_err());
    }
}
