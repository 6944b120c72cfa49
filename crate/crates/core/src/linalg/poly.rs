use std::fmt;

use serde::{Serialize, Serializer};

use crate::scalars::{Field, Scalar};

/// Univariate polynomial with coefficients in ascending degree, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(field: Field, mut coeffs: Vec<Scalar>) -> Poly {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: Field) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn constant(c: Scalar) -> Poly {
        let f = c.field();
        Poly::new(f, vec![c])
    }

    /// `x - r`.
    pub fn linear_root(r: &Scalar) -> Poly {
        let f = r.field();
        Poly::new(f, vec![-r, f.one()])
    }

    /// `c x^k`.
    pub fn monomial(c: Scalar, k: usize) -> Poly {
        let f = c.field();
        let mut v = vec![f.zero(); k];
        v.push(c);
        Poly::new(f, v)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Scalar {
        self.coeffs.get(k).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Scalar {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| &self.coeff(k) + &other.coeff(k)).collect())
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new(self.field, (0..n).map(|k| &self.coeff(k) - &other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Poly::new(self.field, out)
    }

    pub fn scale(&self, c: &Scalar) -> Poly {
        Poly::new(self.field, self.coeffs.iter().map(|v| v * c).collect())
    }

    /// Quotient and remainder. Panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.leading().inv().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return (Poly::zero(self.field), Poly::zero(self.field));
        };
        if nd < dd {
            return (Poly::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let c = &rem[k + dd] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = &rem[k + j] - &(&c * dc);
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Poly::new(self.field, quot), Poly::new(self.field, rem))
    }

    pub fn derivative(&self) -> Poly {
        Poly::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * &self.field.int(k as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading().inv().expect("nonzero leading coefficient"))
    }

    /// Monic greatest common divisor (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^e mod modulus`.
    pub fn pow_mod(&self, mut e: u64, modulus: &Poly) -> Poly {
        let mut base = self.div_rem(modulus).1;
        let mut acc = Poly::constant(self.field.one()).div_rem(modulus).1;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).div_rem(modulus).1;
            }
            base = base.mul(&base).div_rem(modulus).1;
            e >>= 1;
        }
        acc
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*x")?,
                _ => write!(f, "({c})*x^{k}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the list of coefficients in ascending degree.
impl Serialize for Poly {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        self.coeffs.serialize(ser)
    }
}
