//! Modular images of polynomials: probabilistic screening for divisibility
//! and the random-evaluation cross-check used by the test suites.

use crate::field::{inv_mod_u64, Field};
use crate::poly::Poly;

/// A fixed 62-bit prime used for screening and random-evaluation checks.
/// (First prime above 2^61; verified by `screen_prime_is_prime` below.)
pub const SCREEN_PRIME: u64 = 2305843009213693967;

/// Deterministic Miller-Rabin for u64.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = crate::field::pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The mod-p image of a polynomial, usable for cheap division screening.
pub struct ModImage {
    pub coeffs: Vec<u64>,
    pub p: u64,
}

impl ModImage {
    pub fn of<F: Field>(poly: &Poly<F>, p: u64) -> Option<ModImage> {
        Some(ModImage {
            coeffs: poly.image_mod(p)?,
            p,
        })
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&mut self) -> bool {
        self.trim();
        self.coeffs.is_empty()
    }

    /// Try dividing the image by the image of `den`. Returns false if the
    /// remainder is nonzero mod p (so exact division certainly fails) or if
    /// the divisor image degenerates; on success replaces self with the
    /// quotient image.
    pub fn try_div(&mut self, den: &ModImage) -> bool {
        debug_assert_eq!(self.p, den.p);
        let p = self.p;
        let mut d = den.coeffs.clone();
        while d.last() == Some(&0) {
            d.pop();
        }
        if d.is_empty() {
            return false;
        }
        self.trim();
        if self.coeffs.is_empty() {
            return true;
        }
        if self.coeffs.len() < d.len() {
            return false;
        }
        let dd = d.len() - 1;
        let lead_inv = inv_mod_u64(d[dd], p);
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dd;
        let mut quot = vec![0u64; qlen];
        for i in (0..qlen).rev() {
            let top = rem[i + dd];
            if top == 0 {
                continue;
            }
            let c = ((top as u128 * lead_inv as u128) % p as u128) as u64;
            for (j, &dc) in d.iter().enumerate() {
                if dc == 0 {
                    continue;
                }
                let sub = (c as u128 * dc as u128) % p as u128;
                let cur = rem[i + j] as u128;
                rem[i + j] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
            quot[i] = c;
        }
        if rem[..dd].iter().any(|&c| c != 0) {
            return false;
        }
        self.coeffs = quot;
        true
    }
}

/// Euclidean gcd degree of two nonzero u64-coefficient polynomials mod p.
fn image_gcd_degree(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> usize {
    let trim = |v: &mut Vec<u64>| {
        while v.last() == Some(&0) {
            v.pop();
        }
    };
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a mod b
        let db = b.len() - 1;
        let lead_inv = inv_mod_u64(b[db], p);
        while a.len() >= b.len() {
            let da = a.len() - 1;
            let c = ((a[da] as u128 * lead_inv as u128) % p as u128) as u64;
            let shift = da - db;
            for (j, &bc) in b.iter().enumerate() {
                let sub = (c as u128 * bc as u128) % p as u128;
                let cur = a[shift + j] as u128;
                a[shift + j] = ((cur + p as u128 - sub) % p as u128) as u64;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
        trim(&mut b);
    }
    a.len().saturating_sub(1)
}

/// True when the mod-p images of both polynomials keep full degree and have
/// a constant gcd — which certifies the exact gcd is constant too. False
/// means "unknown".
pub fn coprime_by_image<F: Field>(a: &Poly<F>, b: &Poly<F>) -> bool {
    let p = SCREEN_PRIME;
    let (ia, ib) = match (a.image_mod(p), b.image_mod(p)) {
        (Some(x), Some(y)) => (x, y),
        _ => return false,
    };
    // Leading coefficients must survive so image degrees match.
    if ia.last() == Some(&0) || ib.last() == Some(&0) || ia.is_empty() || ib.is_empty() {
        return false;
    }
    image_gcd_degree(ia, ib, p) == 0
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    #[test]
    fn screen_prime_is_prime() {
        assert!(SCREEN_PRIME > 1 << 61);
        assert!(SCREEN_PRIME < 1 << 62);
        assert!(is_prime_u64(SCREEN_PRIME));
        // and is the first prime above 2^61
        for n in (1u64 << 61)..SCREEN_PRIME {
            assert!(!is_prime_u64(n));
        }
    }

    #[test]
    fn image_division_screens() {
        type P = Poly<BigRational>;
        let a: P = Poly::from_i64_coeffs(&[-1, 0, 0, 0, 0, 1]); // q^5 - 1
        let b: P = Poly::from_i64_coeffs(&[-1, 1]); // q - 1
        let c: P = Poly::from_i64_coeffs(&[1, 1]); // q + 1
        let mut img = ModImage::of(&a, SCREEN_PRIME).unwrap();
        assert!(img.try_div(&ModImage::of(&b, SCREEN_PRIME).unwrap()));
        assert!(!img.try_div(&ModImage::of(&c, SCREEN_PRIME).unwrap()));
    }
}
