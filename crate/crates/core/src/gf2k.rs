//! Arithmetic in the binary extension field GF(2^κ) for κ in 1..=64.
//!
//! Elements are κ-bit patterns read as polynomials over GF(2) reduced modulo a
//! fixed irreducible polynomial. Addition is XOR; multiplication is a
//! carry-less product in a 128-bit accumulator followed by reduction.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};
use std::str::FromStr;

use rand::RngCore;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Low-order terms (everything below x^κ) of one irreducible polynomial per κ.
///
/// Trinomials x^κ + x^k + 1 with the smallest k where one exists, otherwise
/// pentanomials x^κ + x^a + x^b + x^c + 1 minimizing (a, b, c) lexicographically.
const REDUCTION_TABLE: [u64; 64] = [
    0x1, 0x3, 0x3, 0x3, 0x5, 0x3, 0x3, 0x1b, // 1..=8
    0x3, 0x9, 0x5, 0x9, 0x1b, 0x21, 0x3, 0x2b, // 9..=16
    0x9, 0x9, 0x27, 0x9, 0x5, 0x3, 0x21, 0x1b, // 17..=24
    0x9, 0x1b, 0x27, 0x3, 0x5, 0x3, 0x9, 0x8d, // 25..=32
    0x401, 0x81, 0x5, 0x201, 0x53, 0x63, 0x11, 0x39, // 33..=40
    0x9, 0x81, 0x59, 0x21, 0x1b, 0x3, 0x21, 0x2d, // 41..=48
    0x201, 0x1d, 0x4b, 0x9, 0x47, 0x201, 0x81, 0x95, // 49..=56
    0x11, 0x80001, 0x95, 0x3, 0x27, 0x20000001, 0x3, 0x1b, // 57..=64
];

/// Widths at or below this are re-checked for irreducibility by trial division.
const TRIAL_DIVISION_MAX_KAPPA: u32 = 20;

pub const MAX_KAPPA: u32 = 64;

/// A concrete field GF(2^κ): the width plus the reduction polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    kappa: u32,
    /// Reduction polynomial without its leading x^κ term.
    low: u64,
}

impl Field {
    /// The field of width `kappa` using the built-in reduction polynomial.
    pub fn new(kappa: u32) -> Result<Self> {
        if !(1..=MAX_KAPPA).contains(&kappa) {
            return Err(Error::UnsupportedKappa(kappa));
        }
        Self::with_reduction(kappa, REDUCTION_TABLE[kappa as usize - 1])
    }

    /// A field with a caller-supplied reduction polynomial `x^kappa + low`.
    ///
    /// For κ ≤ 20 the polynomial is checked by trial division; wider
    /// polynomials are trusted.
    pub fn with_reduction(kappa: u32, low: u64) -> Result<Self> {
        if !(1..=MAX_KAPPA).contains(&kappa) {
            return Err(Error::UnsupportedKappa(kappa));
        }
        if kappa < 64 && low >> kappa != 0 {
            return Err(Error::ValueOutOfRange { value: low, kappa });
        }
        let field = Field { kappa, low };
        if kappa <= TRIAL_DIVISION_MAX_KAPPA && !is_irreducible_by_trial(field.reduction_poly()) {
            return Err(Error::Reducible(field.reduction_poly()));
        }
        Ok(field)
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    /// Full reduction polynomial including the x^κ bit.
    pub fn reduction_poly(&self) -> u128 {
        (1u128 << self.kappa) | self.low as u128
    }

    /// |F| = 2^κ.
    pub fn order(&self) -> u128 {
        1u128 << self.kappa
    }

    pub fn mask(&self) -> u64 {
        if self.kappa == 64 {
            u64::MAX
        } else {
            (1u64 << self.kappa) - 1
        }
    }

    /// Bytes per serialized element, ⌈κ/8⌉.
    pub fn byte_len(&self) -> usize {
        self.kappa.div_ceil(8) as usize
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if value & !self.mask() != 0 {
            return Err(Error::ValueOutOfRange { value, kappa: self.kappa });
        }
        Ok(FieldElement { value, field: *self })
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { value: 0, field: *self }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement { value: 1, field: *self }
    }

    /// Uniform draw from F.
    pub fn sample<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement { value: rng.next_u64() & self.mask(), field: *self }
    }

    /// Uniform draw from F \ {0}, by rejection.
    pub fn sample_nonzero<R: RngCore + ?Sized>(&self, rng: &mut R) -> FieldElement {
        loop {
            let e = self.sample(rng);
            if !e.is_zero() {
                return e;
            }
        }
    }

    /// `count` pairwise-distinct draws from F \ {0}.
    pub fn sample_distinct_nonzero<R: RngCore + ?Sized>(&self, count: usize, rng: &mut R) -> Result<Vec<FieldElement>> {
        if count as u128 > self.order() - 1 {
            return Err(Error::Infeasible(format!(
                "{count} distinct nonzero points requested from GF(2^{})",
                self.kappa
            )));
        }
        let mut out: Vec<FieldElement> = Vec::with_capacity(count);
        while out.len() < count {
            let e = self.sample_nonzero(rng);
            if !out.contains(&e) {
                out.push(e);
            }
        }
        Ok(out)
    }

    /// Every element of the field, in increasing bit-pattern order.
    ///
    /// Only sensible for small κ.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let field = *self;
        (0..=self.mask()).map(move |value| FieldElement { value, field })
    }

    /// Serialized form: κ as one byte, then the reduction polynomial as
    /// nine little-endian bytes including the x^κ bit.
    pub fn to_bytes(&self) -> [u8; 10] {
        let mut out = [0u8; 10];
        out[0] = self.kappa as u8;
        out[1..].copy_from_slice(&self.reduction_poly().to_le_bytes()[..9]);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() != 10 {
            return Err(Error::Decode(format!("field header must be 10 bytes, got {}", bytes.len())));
        }
        let kappa = bytes[0] as u32;
        let mut wide = [0u8; 16];
        wide[..9].copy_from_slice(&bytes[1..]);
        let poly = u128::from_le_bytes(wide);
        if !(1..=MAX_KAPPA).contains(&kappa) || poly >> kappa != 1 {
            return Err(Error::Decode(format!("bad field header for kappa {kappa}")));
        }
        Self::with_reduction(kappa, (poly & ((1u128 << kappa) - 1)) as u64)
    }

    fn check(&self, other: &Field) -> Result<()> {
        if self != other {
            return Err(Error::FieldMismatch { left: self.kappa, right: other.kappa });
        }
        Ok(())
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        reduce(clmul(a, b), self.kappa, self.low)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{})", self.kappa)
    }
}

/// Carry-less 64×64 → 128 product.
fn clmul(a: u64, b: u64) -> u128 {
    let a = a as u128;
    let mut b = b;
    let mut acc = 0u128;
    while b != 0 {
        let bit = b.trailing_zeros();
        acc ^= a << bit;
        b &= b - 1;
    }
    acc
}

/// Reduce a product of two κ-bit values modulo x^κ + low.
fn reduce(mut value: u128, kappa: u32, low: u64) -> u64 {
    let modulus = (1u128 << kappa) | low as u128;
    while value >> kappa != 0 {
        let top = 127 - value.leading_zeros();
        value ^= modulus << (top - kappa);
    }
    value as u64
}

fn poly_degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_rem(mut a: u128, m: u128) -> u128 {
    let dm = poly_degree(m);
    while a != 0 && poly_degree(a) >= dm {
        a ^= m << (poly_degree(a) - dm);
    }
    a
}

fn is_irreducible_by_trial(poly: u128) -> bool {
    let deg = poly_degree(poly);
    if deg <= 1 {
        return deg == 1;
    }
    // any factorization has a factor of degree <= deg/2
    let limit = 1u128 << (deg / 2 + 1);
    (2u128..limit).all(|divisor| poly_rem(poly, divisor) != 0)
}

/// An element of GF(2^κ), tagged with its field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    value: u64,
    field: Field,
}

impl FieldElement {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn checked_add(self, rhs: Self) -> Result<Self> {
        self.field.check(&rhs.field)?;
        Ok(FieldElement { value: self.value ^ rhs.value, field: self.field })
    }

    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        self.field.check(&rhs.field)?;
        Ok(FieldElement { value: self.field.mul_raw(self.value, rhs.value), field: self.field })
    }

    pub fn pow(self, mut exp: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while exp != 0 {
            if exp & 1 == 1 {
                acc = self.field.mul_raw(acc, base);
            }
            base = self.field.mul_raw(base, base);
            exp >>= 1;
        }
        FieldElement { value: acc, field: self.field }
    }

    /// Multiplicative inverse via a^(2^κ − 2).
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let exp = (self.field.order() - 2) as u64;
        Ok(self.pow(exp))
    }

    /// ⌈κ/8⌉ little-endian bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        self.value.to_le_bytes()[..self.field.byte_len()].to_vec()
    }

    pub fn from_bytes(field: Field, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != field.byte_len() {
            return Err(Error::Decode(format!(
                "element of {field} needs {} bytes, got {}",
                field.byte_len(),
                bytes.len()
            )));
        }
        let mut wide = [0u8; 8];
        wide[..bytes.len()].copy_from_slice(bytes);
        field.element(u64::from_le_bytes(wide)).map_err(|e| Error::Decode(e.to_string()))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.value)
    }
}

// Operator forms panic on mixed fields; use the checked_* methods when the
// operands come from untrusted input.
impl Add for FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: Self) -> Self {
        self.checked_add(rhs).expect("field mismatch in addition")
    }
}

// characteristic 2: subtraction is addition
impl Sub for FieldElement {
    type Output = FieldElement;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Self) -> Self {
        self + rhs
    }
}

impl Mul for FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("field mismatch in multiplication")
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

/// A dyadic rational `mantissa · 2^exponent`, used for the error parameter so
/// the field-size bound can be compared exactly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon {
    mantissa: u64,
    exponent: i32,
}

impl Epsilon {
    pub fn new(mantissa: u64, exponent: i32) -> Result<Self> {
        if mantissa == 0 {
            return Err(Error::Config("epsilon must be positive".into()));
        }
        let shift = mantissa.trailing_zeros();
        let eps = Epsilon { mantissa: mantissa >> shift, exponent: exponent + shift as i32 };
        if !eps.is_below_one() {
            return Err(Error::Config(format!("epsilon {eps} must be < 1")));
        }
        Ok(eps)
    }

    /// Exact conversion of a finite positive f64 (every such f64 is dyadic).
    pub fn from_f64(value: f64) -> Result<Self> {
        if !value.is_finite() || value <= 0.0 {
            return Err(Error::Config(format!("epsilon {value} must be positive and finite")));
        }
        let bits = value.to_bits();
        let raw_exp = ((bits >> 52) & 0x7ff) as i32;
        let frac = bits & ((1u64 << 52) - 1);
        let (mantissa, exponent) = if raw_exp == 0 { (frac, -1074) } else { (frac | (1u64 << 52), raw_exp - 1075) };
        Self::new(mantissa, exponent)
    }

    /// ε = n · 2^-κ exactly.
    pub fn from_bound(n: usize, kappa: u32) -> Result<Self> {
        Self::new(n as u64, -(kappa as i32))
    }

    pub fn mantissa(&self) -> u64 {
        self.mantissa
    }

    pub fn exponent(&self) -> i32 {
        self.exponent
    }

    pub fn to_f64(&self) -> f64 {
        self.mantissa as f64 * 2f64.powi(self.exponent)
    }

    fn is_below_one(&self) -> bool {
        // m · 2^e < 1
        if self.exponent >= 0 {
            return false;
        }
        let e = (-self.exponent) as u32;
        e >= 64 || self.mantissa < (1u64 << e)
    }

    /// Whether n · 2^-κ ≤ ε.
    pub fn admits(&self, n: usize, kappa: u32) -> bool {
        // n ≤ m · 2^(e + κ)
        let shift = self.exponent as i64 + kappa as i64;
        let n = n as u128;
        let m = self.mantissa as u128;
        if shift >= 0 {
            shift >= 64 || n <= m << shift
        } else {
            let s = -shift;
            s < 64 && (n << s) <= m
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.mantissa, self.exponent)
    }
}

impl FromStr for Epsilon {
    type Err = Error;

    /// Accepts a decimal (`0.012`), `2^-k`, or `m*2^-k`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Config(format!("cannot parse epsilon '{s}'"));
        if let Some((lhs, rhs)) = s.split_once("2^") {
            let mantissa = match lhs.trim().trim_end_matches('*').trim() {
                "" => 1,
                m => m.parse::<u64>().map_err(|_| bad())?,
            };
            let exponent = rhs.trim().parse::<i32>().map_err(|_| bad())?;
            return Self::new(mantissa, exponent);
        }
        Self::from_f64(s.parse::<f64>().map_err(|_| bad())?)
    }
}

/// The field together with the party count and error bound it was sized for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FieldParams {
    pub field: Field,
    pub n: usize,
    pub epsilon: Epsilon,
}

impl FieldParams {
    /// Smallest κ with n · 2^-κ ≤ ε.
    pub fn from_error(n: usize, epsilon: Epsilon) -> Result<Self> {
        check_party_count(n)?;
        let kappa = (1..=MAX_KAPPA).find(|&k| epsilon.admits(n, k)).ok_or(Error::EpsilonTooSmall)?;
        Ok(FieldParams { field: Field::new(kappa)?, n, epsilon })
    }

    /// Fix κ directly; ε is then n · 2^-κ exactly.
    pub fn with_kappa(n: usize, kappa: u32) -> Result<Self> {
        check_party_count(n)?;
        let field = Field::new(kappa)?;
        let epsilon = Epsilon::from_bound(n, kappa)
            .map_err(|_| Error::Config(format!("GF(2^{kappa}) is too small for n = {n}")))?;
        Ok(FieldParams { field, n, epsilon })
    }

    pub fn kappa(&self) -> u32 {
        self.field.kappa()
    }
}

fn check_party_count(n: usize) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::Config(format!("n must be odd and >= 3, got {n}")));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha20Rng;

    fn gf16() -> Field {
        Field::new(4).unwrap()
    }

    fn e(field: Field, v: u64) -> FieldElement {
        field.element(v).unwrap()
    }

    /// Shift-and-add multiply followed by long division; shares no code with
    /// the clmul/reduce path.
    fn schoolbook_mul(a: u64, b: u64, modulus: u128) -> u64 {
        let mut product = 0u128;
        for i in 0..64 {
            for j in 0..64 {
                if (a >> i) & 1 == 1 && (b >> j) & 1 == 1 {
                    product ^= 1u128 << (i + j);
                }
            }
        }
        let deg = 127 - modulus.leading_zeros();
        for bit in (deg..128).rev() {
            if (product >> bit) & 1 == 1 {
                product ^= modulus << (bit - deg);
            }
        }
        product as u64
    }

    #[test]
    fn params_from_error_examples() {
        let p = FieldParams::from_error(3, Epsilon::from_f64(0.5).unwrap()).unwrap();
        assert_eq!(p.kappa(), 3);
        let p = FieldParams::from_error(3, Epsilon::from_f64(0.012).unwrap()).unwrap();
        assert_eq!(p.kappa(), 8);
        let tiny = Epsilon::new(1, -70).unwrap();
        assert_eq!(FieldParams::from_error(3, tiny), Err(Error::EpsilonTooSmall));
    }

    #[test]
    fn params_from_error_is_minimal_against_float_oracle() {
        for n in [3usize, 5, 7, 21] {
            for eps in [0.5, 0.3, 0.1, 0.012, 1e-3, 1e-6, 1e-12] {
                let p = FieldParams::from_error(n, Epsilon::from_f64(eps).unwrap()).unwrap();
                let k = p.kappa() as i32;
                assert!(n as f64 * 2f64.powi(-k) <= eps);
                assert!(n as f64 * 2f64.powi(-(k - 1)) > eps);
            }
        }
    }

    #[test]
    fn params_reject_even_or_small_n() {
        let eps = Epsilon::from_f64(0.1).unwrap();
        assert!(matches!(FieldParams::from_error(4, eps), Err(Error::Config(_))));
        assert!(matches!(FieldParams::from_error(1, eps), Err(Error::Config(_))));
        assert!(FieldParams::with_kappa(5, 2).is_err());
    }

    #[test]
    fn epsilon_parsing() {
        assert_eq!("2^-70".parse::<Epsilon>().unwrap(), Epsilon::new(1, -70).unwrap());
        assert_eq!("3*2^-8".parse::<Epsilon>().unwrap(), Epsilon::new(3, -8).unwrap());
        assert_eq!("0.5".parse::<Epsilon>().unwrap(), Epsilon::new(1, -1).unwrap());
        assert!("1.5".parse::<Epsilon>().is_err());
        assert!("abc".parse::<Epsilon>().is_err());
    }

    #[test]
    fn bound_check_is_exact_at_the_boundary() {
        let eps = Epsilon::from_bound(3, 8).unwrap();
        assert!(eps.admits(3, 8));
        assert!(!eps.admits(3, 7));
        assert!(!eps.admits(4, 8));
    }

    #[test]
    fn add_examples() {
        let f = gf16();
        assert_eq!(e(f, 0x3) + e(f, 0x5), e(f, 0x6));
        for v in 0..16 {
            assert_eq!(e(f, v) + e(f, v), f.zero());
            assert_eq!(e(f, v) + f.zero(), e(f, v));
        }
    }

    #[test]
    fn mul_examples() {
        let f = gf16();
        assert_eq!(e(f, 0x2) * e(f, 0x8), e(f, 0x3));
        assert_eq!(e(f, 0x6) * e(f, 0x6), e(f, 0x7));
        for v in 0..16 {
            assert_eq!(e(f, v) * f.one(), e(f, v));
        }
    }

    #[test]
    fn inv_examples() {
        let f = gf16();
        assert_eq!(f.one().inv().unwrap(), f.one());
        assert_eq!(e(f, 0x2).inv().unwrap(), e(f, 0x9));
        assert_eq!(e(f, 0x3).inv().unwrap(), e(f, 0xE));
        assert_eq!(f.zero().inv(), Err(Error::ZeroInverse));
    }

    #[test]
    fn inv_matches_exhaustive_search() {
        for kappa in 1..=8 {
            let f = Field::new(kappa).unwrap();
            for a in f.elements().skip(1) {
                let by_search = f.elements().find(|b| (a * *b).value() == 1).unwrap();
                assert_eq!(a.inv().unwrap(), by_search);
            }
        }
    }

    #[test]
    fn mismatched_fields_error() {
        let a = gf16().one();
        let b = Field::new(8).unwrap().one();
        assert!(matches!(a.checked_add(b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.checked_mul(b), Err(Error::FieldMismatch { .. })));
        assert!(gf16().element(16).is_err());
    }

    #[test]
    fn mul_agrees_with_schoolbook_exhaustively_up_to_kappa_8() {
        for kappa in 1..=8 {
            let f = Field::new(kappa).unwrap();
            for a in f.elements() {
                for b in f.elements() {
                    let expect = schoolbook_mul(a.value(), b.value(), f.reduction_poly());
                    assert_eq!((a * b).value(), expect, "kappa {kappa}: {a} * {b}");
                }
            }
        }
    }

    #[test]
    fn mul_agrees_with_schoolbook_on_wide_fields() {
        let mut rng = ChaCha20Rng::seed_from_u64(11);
        for kappa in [16, 31, 32, 33, 63, 64] {
            let f = Field::new(kappa).unwrap();
            for _ in 0..200 {
                let a = f.sample(&mut rng);
                let b = f.sample(&mut rng);
                assert_eq!((a * b).value(), schoolbook_mul(a.value(), b.value(), f.reduction_poly()));
            }
        }
    }

    /// Rabin's test: f of degree k is irreducible iff x^(2^k) ≡ x (mod f) and
    /// gcd(x^(2^(k/p)) − x, f) = 1 for each prime p | k.
    fn rabin_irreducible(f: u128) -> bool {
        let k = 127 - f.leading_zeros();
        let mulmod = |a: u128, b: u128| -> u128 {
            let mut acc = 0u128;
            let mut a = a;
            let mut b = b;
            while b != 0 {
                if b & 1 == 1 {
                    acc ^= a;
                }
                b >>= 1;
                a <<= 1;
                if (a >> k) & 1 == 1 {
                    a ^= f;
                }
            }
            acc
        };
        let frobenius = |times: u32| -> u128 {
            let mut x = 2u128;
            for _ in 0..times {
                x = mulmod(x, x);
            }
            x
        };
        let gcd = |mut a: u128, mut b: u128| -> u128 {
            while b != 0 {
                let r = poly_rem(a, b);
                a = b;
                b = r;
            }
            a
        };
        if k == 1 {
            return true;
        }
        if frobenius(k) != 2 {
            return false;
        }
        let primes: Vec<u32> = (2..=k).filter(|p| k.is_multiple_of(*p) && (2..*p).all(|d| p % d != 0)).collect();
        primes.iter().all(|p| gcd(f, frobenius(k / p) ^ 2) == 1)
    }

    #[test]
    fn every_table_entry_is_irreducible() {
        for kappa in 1..=64 {
            let f = Field::new(kappa).unwrap();
            assert!(rabin_irreducible(f.reduction_poly()), "kappa {kappa}");
        }
        assert_eq!(Field::new(4).unwrap().reduction_poly(), 0b10011);
        assert_eq!(Field::new(8).unwrap().reduction_poly(), 0x11b);
        assert_eq!(Field::new(64).unwrap().reduction_poly(), (1u128 << 64) | 0x1b);
    }

    #[test]
    fn reducible_polynomial_is_rejected() {
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2
        assert!(matches!(Field::with_reduction(4, 0b0101), Err(Error::Reducible(_))));
        assert!(matches!(Field::new(0), Err(Error::UnsupportedKappa(0))));
        assert!(matches!(Field::new(65), Err(Error::UnsupportedKappa(65))));
    }

    #[test]
    fn sampling_is_deterministic_under_seed() {
        let f = Field::new(16).unwrap();
        let draw = |seed| {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            (0..32).map(|_| f.sample(&mut rng)).collect::<Vec<_>>()
        };
        assert_eq!(draw(7), draw(7));
        assert_ne!(draw(7), draw(8));
    }

    #[test]
    fn uniform_sampling_passes_chi_square() {
        let f = Field::new(3).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(2024);
        let draws = 100_000;
        let mut counts = [0u64; 8];
        for _ in 0..draws {
            counts[f.sample(&mut rng).value() as usize] += 1;
        }
        let expected = draws as f64 / 8.0;
        let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
        // chi-square, 7 degrees of freedom, alpha = 0.01
        assert!(chi2 < 18.475, "chi2 = {chi2}");
    }

    #[test]
    fn sample_nonzero_never_yields_zero() {
        let f = Field::new(3).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(5);
        assert!((0..100_000).all(|_| !f.sample_nonzero(&mut rng).is_zero()));
    }

    #[test]
    fn distinct_sampling() {
        let f = Field::new(2).unwrap();
        let mut rng = ChaCha20Rng::seed_from_u64(1);
        let pts = f.sample_distinct_nonzero(3, &mut rng).unwrap();
        let mut values: Vec<u64> = pts.iter().map(|p| p.value()).collect();
        values.sort();
        assert_eq!(values, vec![1, 2, 3]);
        assert!(f.sample_distinct_nonzero(4, &mut rng).is_err());
    }

    #[test]
    fn serialization_layout() {
        let f = Field::new(12).unwrap();
        let x = f.element(0xabc).unwrap();
        assert_eq!(x.to_bytes(), vec![0xbc, 0x0a]);
        assert_eq!(FieldElement::from_bytes(f, &[0xbc, 0x0a]).unwrap(), x);
        assert!(FieldElement::from_bytes(f, &[0xff, 0xff]).is_err());

        let header = Field::new(64).unwrap().to_bytes();
        assert_eq!(header[0], 64);
        assert_eq!(&header[1..], &[0x1b, 0, 0, 0, 0, 0, 0, 0, 1]);
        for kappa in [1, 4, 8, 33, 64] {
            let f = Field::new(kappa).unwrap();
            assert_eq!(Field::from_bytes(&f.to_bytes()).unwrap(), f);
        }
    }

    fn arb_triple(kappa: u32) -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
        let f = Field::new(kappa).unwrap();
        let m = f.mask();
        (0..=m, 0..=m, 0..=m).prop_map(move |(a, b, c)| (e(f, a), e(f, b), e(f, c)))
    }

    fn arb_kappa_triple() -> impl Strategy<Value = (FieldElement, FieldElement, FieldElement)> {
        (1u32..=64).prop_flat_map(arb_triple)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(10_000))]

        #[test]
        fn field_axioms((a, b, c) in arb_kappa_triple()) {
            prop_assert_eq!((a + b) + c, a + (b + c));
            prop_assert_eq!((a * b) * c, a * (b * c));
            prop_assert_eq!(a + b, b + a);
            prop_assert_eq!(a * b, b * a);
            prop_assert_eq!(a * (b + c), a * b + a * c);
        }

        #[test]
        fn inverse_roundtrip((a, _, _) in arb_kappa_triple()) {
            prop_assume!(!a.is_zero());
            prop_assert_eq!(a * a.inv().unwrap(), a.field().one());
        }
    }
}
