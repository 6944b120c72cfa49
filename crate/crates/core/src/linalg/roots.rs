//! Roots of polynomials inside the working field.
//!
//! Over the rationals the candidates come from p-adic lifting: a root modulo a
//! small good prime is lifted by Newton iteration and turned back into a
//! fraction by rational reconstruction, then checked exactly. Over GF(p) the
//! field is scanned when small and split by Cantor-Zassenhaus otherwise.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Poly;
use crate::scalars::{is_prime_u64, Field, Scalar};

const SCAN_LIMIT: u64 = 1 << 12;

/// Roots in the polynomial's own field with multiplicities, sorted.
pub fn roots_in_field(f: &Poly) -> Vec<(Scalar, usize)> {
    if f.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let field = f.field();
    let mut candidates = match field {
        Field::Rational => rational_candidates(f),
        Field::Prime(p) => prime_field_roots(f, p),
    };
    candidates.sort();
    candidates.dedup();
    candidates
        .into_iter()
        .filter_map(|r| {
            let m = multiplicity(f, &r);
            (m > 0).then_some((r, m))
        })
        .collect()
}

/// Number of times `x - r` divides `f` (zero if `f` is zero).
pub fn multiplicity(f: &Poly, r: &Scalar) -> usize {
    if f.is_zero() {
        return 0;
    }
    let lin = Poly::linear_root(r);
    let mut g = f.clone();
    let mut m = 0;
    loop {
        let (q, rem) = g.div_rem(&lin);
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        g = q;
    }
}

fn rational_candidates(f: &Poly) -> Vec<Scalar> {
    let mut out = Vec::new();
    let mut g = f.clone();
    if g.coeff(0).is_zero() {
        out.push(Field::Rational.zero());
        let k = (0..).find(|&k| !g.coeff(k).is_zero()).unwrap();
        g = Poly::new(Field::Rational, g.coeffs()[k..].to_vec());
    }
    if g.degree().unwrap_or(0) == 0 {
        return out;
    }
    let sqfree = g.div_rem(&g.gcd(&g.derivative())).0;
    let ints = primitive_integer_coeffs(&sqfree);
    out.extend(
        lifted_candidates(&ints)
            .into_iter()
            .map(|r| Scalar::Rational(r)),
    );
    out
}

/// Scales a rational polynomial to coprime integer coefficients.
fn primitive_integer_coeffs(f: &Poly) -> Vec<BigInt> {
    let rats: Vec<&BigRational> = f.coeffs().iter().map(|c| c.as_rational().unwrap()).collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    ints.into_iter().map(|v| v / &g).collect()
}

fn eval_int(c: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    c.iter().rev().fold(BigInt::zero(), |acc, a| (acc * x + a).mod_floor(m))
}

fn derivative_int(c: &[BigInt]) -> Vec<BigInt> {
    c.iter().enumerate().skip(1).map(|(k, a)| a * BigInt::from(k)).collect()
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Candidate rational roots of a square-free integer polynomial with nonzero
/// constant term.
fn lifted_candidates(c: &[BigInt]) -> Vec<BigRational> {
    let n = c.len() - 1;
    let lead = &c[n];
    let tail = &c[0];
    if n == 1 {
        return vec![BigRational::new(-tail, lead.clone())];
    }
    // A root a/b has |a| <= |tail| and |b| <= |lead|; reconstruction needs a
    // modulus above twice the square of that bound.
    let bound = {
        let h = tail.abs().max(lead.abs());
        BigInt::from(2) * &h * &h
    };
    let deriv = derivative_int(c);
    let p = good_prime(c);
    let pb = BigInt::from(p);
    let mut out = Vec::new();
    for r0 in 0..p {
        let r0 = BigInt::from(r0);
        if !eval_int(c, &r0, &pb).is_zero() {
            continue;
        }
        let mut r = r0;
        let mut m = pb.clone();
        while m <= bound {
            m = &m * &m;
            let fr = eval_int(c, &r, &m);
            let inv = mod_inverse(&eval_int(&deriv, &r, &m), &m).expect("simple root stays simple");
            r = (&r - fr * inv).mod_floor(&m);
        }
        if let Some(q) = reconstruct(&r, &m) {
            out.push(q);
        }
    }
    out
}

/// Smallest prime not dividing the leading coefficient that keeps the
/// polynomial square-free.
fn good_prime(c: &[BigInt]) -> u64 {
    let n = c.len() - 1;
    (3u64..)
        .filter(|&p| is_prime_u64(p))
        .find(|&p| {
            let f = Field::Prime(p);
            if (&c[n] % BigInt::from(p)).is_zero() {
                return false;
            }
            let g = Poly::new(f, c.iter().map(|v| f.from_bigint(v)).collect());
            g.gcd(&g.derivative()).degree() == Some(0)
        })
        .expect("some prime is good")
}

/// Rational reconstruction: the fraction a/b with |a|, b <= sqrt(m/2)
/// congruent to r modulo m, if any.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let lim = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), r.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > lim {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > lim || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

fn prime_field_roots(f: &Poly, p: u64) -> Vec<Scalar> {
    let field = Field::Prime(p);
    if p <= SCAN_LIMIT {
        return (0..p as i64).map(|v| field.int(v)).filter(|v| f.eval(v).is_zero()).collect();
    }
    // Product of the distinct linear factors: gcd(f, x^p - x).
    let x = Poly::monomial(field.one(), 1);
    let f = f.monic();
    let xp = x.pow_mod(p, &f);
    let h = f.gcd(&xp.sub(&x));
    let mut out = Vec::new();
    split_linear(&h, p, &mut out);
    out
}

fn split_linear(h: &Poly, p: u64, out: &mut Vec<Scalar>) {
    let field = Field::Prime(p);
    match h.degree() {
        None | Some(0) => {}
        Some(1) => out.push(-&h.monic().coeff(0)),
        Some(deg) => {
            for a in 0i64.. {
                let shift = Poly::new(field, vec![field.int(a), field.one()]);
                let w = shift.pow_mod((p - 1) / 2, h).sub(&Poly::constant(field.one()));
                let g = h.gcd(&w);
                let dg = g.degree().unwrap_or(0);
                if dg > 0 && dg < deg {
                    split_linear(&g, p, out);
                    split_linear(&h.div_rem(&g).0, p, out);
                    return;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::{int, rat};
    use proptest::prelude::*;

    fn from_roots(roots: &[(Scalar, usize)], extra: &Poly) -> Poly {
        roots.iter().fold(extra.clone(), |acc, (r, m)| {
            (0..*m).fold(acc, |a, _| a.mul(&Poly::linear_root(r)))
        })
    }

    #[test]
    fn simple_rational_roots() {
        let f = from_roots(&[(rat(3, 2), 1), (int(-7), 2), (int(0), 1)], &Poly::constant(int(5)));
        let got = roots_in_field(&f);
        assert_eq!(got, vec![(int(-7), 2), (int(0), 1), (rat(3, 2), 1)]);
    }

    #[test]
    fn irreducible_has_no_roots() {
        let f = Poly::new(Field::Rational, vec![int(-2), int(0), int(1)]);
        assert!(roots_in_field(&f).is_empty());
    }

    #[test]
    fn large_prime_field_splitting() {
        let f = Field::prime(1_000_003).unwrap();
        let roots: Vec<(Scalar, usize)> = vec![(f.int(5), 1), (f.int(999_000), 2), (f.int(0), 1)];
        // x^2 + 1 has no roots since 1_000_003 = 3 mod 4.
        let extra = Poly::new(f, vec![f.one(), f.zero(), f.one()]);
        let poly = from_roots(&roots, &extra);
        let mut expect = roots.clone();
        expect.sort();
        assert_eq!(roots_in_field(&poly), expect);
    }

    proptest! {
        #[test]
        fn recovers_planted_rational_roots(
            planted in proptest::collection::vec(((-30i64..30), (1i64..12), 1usize..3), 0..4),
            c in 1i64..20,
        ) {
            let mut roots: Vec<(Scalar, usize)> = Vec::new();
            for (a, b, m) in planted {
                let r = rat(a, b);
                match roots.iter_mut().find(|(s, _)| *s == r) {
                    Some(e) => e.1 += m,
                    None => roots.push((r, m)),
                }
            }
            roots.sort();
            // x^2 + c has no rational roots.
            let extra = Poly::new(Field::Rational, vec![int(c), int(0), int(3)]);
            prop_assert_eq!(roots_in_field(&from_roots(&roots, &extra)), roots);
        }

        #[test]
        fn prime_scan_matches_brute_force(coeffs in proptest::collection::vec(0i64..31, 2..7)) {
            let f = Field::prime(31).unwrap();
            let poly = Poly::new(f, coeffs.iter().map(|&v| f.int(v)).collect());
            prop_assume!(poly.degree().unwrap_or(0) > 0);
            let got: Vec<Scalar> = roots_in_field(&poly).into_iter().map(|(r, _)| r).collect();
            let brute: Vec<Scalar> = (0..31).map(|v| f.int(v)).filter(|v| poly.eval(v).is_zero()).collect();
            prop_assert_eq!(got, brute);
        }
    }
}
