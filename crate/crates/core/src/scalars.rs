//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.
//!
//! Every scalar carries its field. Arithmetic operators panic when the
//! operands live in different fields or when dividing by zero; the
//! `try_*` methods report the same conditions as [`ScalarError`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("modulus {0} is too large (must be below 2^62)")]
    ModulusTooLarge(u64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
    #[error("cannot parse field {0:?}")]
    ParseField(String),
}

/// The field a scalar lives in: the rationals or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

const MAX_MODULUS: u64 = 1 << 62;

impl Field {
    /// GF(p), checking that `p` is prime.
    pub fn prime(p: u64) -> Result<Field, ScalarError> {
        if p >= MAX_MODULUS {
            return Err(ScalarError::ModulusTooLarge(p));
        }
        if !is_prime_u64(p) {
            return Err(ScalarError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    /// 0 for the rationals, `p` for GF(p).
    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.int(0)
    }

    pub fn one(self) -> Scalar {
        self.int(1)
    }

    pub fn int(self, n: i64) -> Scalar {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(self, n: &BigInt) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(p) => Scalar::Modular {
                residue: reduce_bigint(n, p),
                modulus: p,
            },
        }
    }

    /// The image of `num/den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, ScalarError> {
        self.int(num).try_div(&self.int(den))
    }

    /// The image of a rational number in this field.
    pub fn from_rational(self, r: &BigRational) -> Result<Scalar, ScalarError> {
        match self {
            Field::Rational => Ok(Scalar::Rational(r.clone())),
            Field::Prime(_) => self.from_bigint(r.numer()).try_div(&self.from_bigint(r.denom())),
        }
    }

    /// Parses a scalar and coerces it into this field.
    ///
    /// Rational text (`"3"`, `"-2/5"`) is mapped into GF(p) when needed;
    /// `"r mod p"` text must name this field's prime.
    pub fn parse_scalar(self, text: &str) -> Result<Scalar, ScalarError> {
        let s: Scalar = text.parse()?;
        match (&s, self) {
            (Scalar::Rational(r), f) => f.from_rational(r),
            (Scalar::Modular { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(s),
            _ => Err(ScalarError::FieldMismatch(s.field(), self)),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rational);
        }
        let p = t
            .strip_prefix("Fp:")
            .and_then(|rest| rest.trim().parse::<u64>().ok())
            .ok_or_else(|| ScalarError::ParseField(s.to_string()))?;
        Field::prime(p)
    }
}

impl Serialize for Field {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Field {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Modular { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { residue, .. } => *residue == 1,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            Scalar::Modular { .. } => None,
        }
    }

    fn check_field(&self, other: &Scalar) -> Result<(), ScalarError> {
        if self.field() == other.field() {
            Ok(())
        } else {
            Err(ScalarError::FieldMismatch(self.field(), other.field()))
        }
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Modular { residue: a, modulus: p }, Scalar::Modular { residue: b, .. }) => {
                Scalar::Modular {
                    residue: ((*a as u128 + *b as u128) % *p as u128) as u64,
                    modulus: *p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        Ok(match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Modular { residue: a, modulus: p }, Scalar::Modular { residue: b, .. }) => {
                Scalar::Modular {
                    residue: mul_mod(*a, *b, *p),
                    modulus: *p,
                }
            }
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar, ScalarError> {
        self.check_field(other)?;
        self.try_mul(&other.inv()?)
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: pow_mod(*residue, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    fn neg_ref(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: if *residue == 0 { 0 } else { modulus - residue },
                modulus: *modulus,
            },
        }
    }

    /// Integer power; negative exponents invert first.
    pub fn pow(&self, e: i64) -> Result<Scalar, ScalarError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let n = e.unsigned_abs();
        Ok(match base {
            Scalar::Rational(r) => Scalar::Rational(num_traits::pow(r, n as usize)),
            Scalar::Modular { residue, modulus } => Scalar::Modular {
                residue: pow_mod(residue, n, modulus),
                modulus,
            },
        })
    }

    /// True for positive rationals and for residues in `1..=p/2`.
    ///
    /// Used to pick a deterministic representative among `±x`.
    pub fn is_canonical_sign(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_positive(),
            Scalar::Modular { residue, modulus } => *residue != 0 && *residue <= modulus / 2,
        }
    }

    /// An exact square root, if one exists in the field.
    ///
    /// Returns the root with canonical sign (see [`Scalar::is_canonical_sign`]),
    /// or zero for zero.
    pub fn sqrt(&self) -> Option<Scalar> {
        if self.is_zero() {
            return Some(self.clone());
        }
        match self {
            Scalar::Rational(r) => {
                if r.is_negative() {
                    return None;
                }
                let n = exact_isqrt(r.numer())?;
                let d = exact_isqrt(r.denom())?;
                Some(Scalar::Rational(BigRational::new(n, d)))
            }
            Scalar::Modular { residue, modulus } => {
                let root = tonelli_shanks(*residue, *modulus)?;
                let other = (modulus - root) % modulus;
                let pick = if root <= modulus / 2 { root } else { other };
                Some(Scalar::Modular {
                    residue: pick,
                    modulus: *modulus,
                })
            }
        }
    }

    /// Height of a rational (`max(|num|, den)`); the residue for GF(p).
    pub fn height(&self) -> BigInt {
        match self {
            Scalar::Rational(r) => r.numer().abs().max(r.denom().clone()),
            Scalar::Modular { residue, .. } => BigInt::from(*residue),
        }
    }

    /// `|x| > 1` for rationals; always false in GF(p).
    pub fn exceeds_one_in_magnitude(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.numer().abs() > *r.denom(),
            Scalar::Modular { .. } => false,
        }
    }

    /// Multiplicative order if it is at most `bound`.
    pub fn order_at_most(&self, bound: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let one = self.field().one();
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc == one {
                return Some(k);
            }
            acc = &acc * self;
        }
        None
    }
}

fn exact_isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

fn reduce_bigint(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn tonelli_shanks(n: u64, p: u64) -> Option<u64> {
    let n = n % p;
    if n == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(n);
    }
    if pow_mod(n, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(n, q, p);
    let mut r = pow_mod(n, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n % b == 0 {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { residue, modulus } => write!(f, "{residue} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = ScalarError;

    /// Accepts `"n"`, `"n/d"` (rational) and `"r mod p"` (prime field).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ScalarError::Parse(s.to_string());
        let t = s.trim();
        if let Some((r, p)) = t.split_once(" mod ") {
            let p: u64 = p.trim().parse().map_err(|_| err())?;
            let field = Field::prime(p)?;
            let r: BigInt = r.trim().parse().map_err(|_| err())?;
            return Ok(field.from_bigint(&r));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| err())?;
        let den: BigInt = den.parse().map_err(|_| err())?;
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        let s = String::deserialize(de)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// A total order for deterministic output. In GF(p) it compares residues and
/// carries no algebraic meaning.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a.cmp(b),
            (Scalar::Rational(_), Scalar::Modular { .. }) => Ordering::Less,
            (Scalar::Modular { .. }, Scalar::Rational(_)) => Ordering::Greater,
            (
                Scalar::Modular { residue: a, modulus: p },
                Scalar::Modular { residue: b, modulus: q },
            ) => (p, a).cmp(&(q, b)),
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<BigRational> for Scalar {
    fn from(r: BigRational) -> Self {
        Scalar::Rational(r)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Field::Rational.int(n)
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                self.$checked(rhs).unwrap_or_else(|e| panic!("scalar {}: {e}", stringify!($method)))
            }
        }
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<Scalar> for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

binop!(Add, add, try_add);
binop!(Sub, sub, try_sub);
binop!(Mul, mul, try_mul);
binop!(Div, div, try_div);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        self.neg_ref()
    }
}

/// The rational `num/den` (test and example helper).
pub fn rat(num: i64, den: i64) -> Scalar {
    Field::Rational.ratio(num, den).expect("nonzero denominator")
}

/// The rational integer `n` (test and example helper).
pub fn int(n: i64) -> Scalar {
    Field::Rational.int(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f7() -> Field {
        Field::prime(7).unwrap()
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(rat(6, -4).to_string(), "-3/2");
        assert_eq!(int(5).to_string(), "5");
        assert_eq!(f7().int(-1).to_string(), "6 mod 7");
        assert_eq!("-3/2".parse::<Scalar>().unwrap(), rat(-3, 2));
        assert_eq!("10 mod 7".parse::<Scalar>().unwrap(), f7().int(3));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("3 mod 8".parse::<Scalar>().is_err());
    }

    #[test]
    fn field_parse() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("Fp:11".parse::<Field>().unwrap(), Field::Prime(11));
        assert!("Fp:12".parse::<Field>().is_err());
        assert_eq!(Field::Prime(11).characteristic(), 11);
    }

    #[test]
    fn coercion_into_prime_field() {
        let f = f7();
        assert_eq!(f.parse_scalar("1/2").unwrap(), f.int(4));
        assert!(f.parse_scalar("1/7").is_err());
        assert!(Field::Rational.parse_scalar("1 mod 7").is_err());
    }

    #[test]
    fn checked_errors() {
        assert_eq!(int(1).try_div(&int(0)), Err(ScalarError::DivisionByZero));
        assert!(matches!(int(1).try_add(&f7().one()), Err(ScalarError::FieldMismatch(..))));
        assert!(int(0).pow(-1).is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(rat(2, 3).pow(3).unwrap(), rat(8, 27));
        assert_eq!(rat(2, 3).pow(-2).unwrap(), rat(9, 4));
        assert_eq!(f7().int(3).pow(6).unwrap(), f7().one());
        assert_eq!(f7().int(3).pow(0).unwrap(), f7().one());
        assert_eq!(f7().int(3).pow(-1).unwrap(), f7().int(5));
        assert_eq!(f7().int(0).pow(3).unwrap(), f7().zero());
    }

    #[test]
    fn square_roots() {
        assert_eq!(rat(9, 4).sqrt(), Some(rat(3, 2)));
        assert_eq!(rat(2, 1).sqrt(), None);
        assert_eq!(rat(-1, 1).sqrt(), None);
        let f = Field::prime(13).unwrap();
        let r = f.int(10).sqrt().unwrap();
        assert_eq!(&r * &r, f.int(10));
        assert!(f.int(5).sqrt().is_none());
    }

    #[test]
    fn primality() {
        let small: Vec<u64> = (0..40).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]);
        assert!(is_prime_u64(1_000_000_007));
        assert!(!is_prime_u64(3_215_031_751));
    }

    #[test]
    fn canonical_sign() {
        assert!(int(3).is_canonical_sign());
        assert!(!int(-3).is_canonical_sign());
        assert!(f7().int(3).is_canonical_sign());
        assert!(!f7().int(4).is_canonical_sign());
    }

    fn small_rat() -> impl Strategy<Value = Scalar> {
        (-50i64..50, 1i64..20).prop_map(|(n, d)| rat(n, d))
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in small_rat(), b in small_rat(), c in small_rat()) {
            prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
            prop_assert_eq!(&(&a - &b) + &b, a.clone());
            if !b.is_zero() {
                prop_assert_eq!(&(&a / &b) * &b, a.clone());
            }
            let text = a.to_string();
            prop_assert_eq!(text.parse::<Scalar>().unwrap(), a);
        }

        #[test]
        fn prime_field_axioms(a in 0i64..101, b in 1i64..101) {
            let f = Field::prime(101).unwrap();
            let (a, b) = (f.int(a), f.int(b));
            prop_assert_eq!(&(&a / &b) * &b, a.clone());
            prop_assert_eq!(b.pow(100).unwrap(), f.one());
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
