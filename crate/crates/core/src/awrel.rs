//! Askey-Wilson relations satisfied by a Leonard pair.

use serde::Serialize;
use thiserror::Error;

use crate::leonard::{a_scalars, extract_parameter_array, LeonardError, LeonardSystem};
use crate::linalg::Matrix;
use crate::parray::{fundamental_beta, FamilyParams, ParameterArray, ParrayError};
use crate::scalars::{Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AwError {
    #[error("{quantity} is not constant: differs at i = {index}")]
    NotConstantAcrossI { quantity: &'static str, index: usize },
    #[error("expected {expected} diagonal scalars, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("no closed-form coefficients for family {0}")]
    NoClosedForm(&'static str),
    #[error(transparent)]
    Parray(#[from] ParrayError),
    #[error(transparent)]
    Leonard(#[from] LeonardError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Coefficients of the two Askey-Wilson relations
/// `A²A* - βAA*A + A*A² - γ(AA* + A*A) - ϱA* = γ*A² + ωA + ηI` and its dual.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct AwCoefficients {
    pub beta: Scalar,
    pub gamma: Scalar,
    pub gamma_star: Scalar,
    pub rho: Scalar,
    pub rho_star: Scalar,
    pub omega: Scalar,
    pub eta: Scalar,
    pub eta_star: Scalar,
}

/// Value of `f(i)` for every `i` in `range`, failing unless all agree.
fn constant<I: Iterator<Item = usize>>(
    quantity: &'static str,
    mut range: I,
    f: impl Fn(usize) -> Scalar,
) -> Result<Scalar, AwError> {
    let first = f(range.next().expect("nonempty range"));
    for i in range {
        if f(i) != first {
            return Err(AwError::NotConstantAcrossI { quantity, index: i });
        }
    }
    Ok(first)
}

/// `θ` extended to indices `-1..=d+1` (stored shifted by one) so that
/// `γ = θ_{i-1} - βθ_i + θ_{i+1}` also holds at `i = 0` and `i = d`.
fn extend(th: &[Scalar], beta: &Scalar, gamma: &Scalar) -> Vec<Scalar> {
    let d = th.len() - 1;
    let before = &(gamma + &(beta * &th[0])) - &th[1];
    let after = &(gamma + &(beta * &th[d])) - &th[d - 1];
    let mut out = Vec::with_capacity(d + 3);
    out.push(before);
    out.extend(th.iter().cloned());
    out.push(after);
    out
}

/// Coefficients from the eigenvalue sequences and the diagonal scalars `a_i`,
/// `a*_i` of the same system; each is checked to be independent of `i`.
pub fn aw_coefficients(pa: &ParameterArray, a: &[Scalar], a_star: &[Scalar]) -> Result<AwCoefficients, AwError> {
    let d = pa.d();
    for v in [a, a_star] {
        if v.len() != d + 1 {
            return Err(AwError::LengthMismatch { expected: d + 1, got: v.len() });
        }
    }
    let beta = fundamental_beta(pa)?;
    let (th, ths) = (&pa.theta, &pa.theta_star);
    let gamma_of = |t: &[Scalar], i: usize| &(&t[i - 1] - &(&beta * &t[i])) + &t[i + 1];
    let gamma = constant("gamma", 1..d, |i| gamma_of(th, i))?;
    let gamma_star = constant("gamma_star", 1..d, |i| gamma_of(ths, i))?;
    let rho_of = |t: &[Scalar], g: &Scalar, i: usize| {
        let (p, c) = (&t[i - 1], &t[i]);
        &(&(&(p * p) - &(&(&beta * p) * c)) + &(c * c)) - &(g * &(p + c))
    };
    let rho = constant("rho", 1..=d, |i| rho_of(th, &gamma, i))?;
    let rho_star = constant("rho_star", 1..=d, |i| rho_of(ths, &gamma_star, i))?;

    // Shifted by one: t[k + 1] = θ_k for k in -1..=d+1.
    let t = extend(th, &beta, &gamma);
    let ts = extend(ths, &beta, &gamma_star);
    let omega = constant("omega", 1..=d, |i| {
        let k = i + 1;
        &(&(&a_star[i] * &(&t[k] - &t[k + 1])) + &(&a_star[i - 1] * &(&t[k - 1] - &t[k - 2])))
            - &(&gamma_star * &(&t[k - 1] + &t[k]))
    })?;
    let eta = constant("eta", 0..=d, |i| {
        let k = i + 1;
        &(&(&(&a_star[i] * &(&t[k] - &t[k - 1])) * &(&t[k] - &t[k + 1])) - &(&gamma_star * &(&t[k] * &t[k])))
            - &(&omega * &t[k])
    })?;
    let eta_star = constant("eta_star", 0..=d, |i| {
        let k = i + 1;
        &(&(&(&a[i] * &(&ts[k] - &ts[k - 1])) * &(&ts[k] - &ts[k + 1])) - &(&gamma * &(&ts[k] * &ts[k])))
            - &(&omega * &ts[k])
    })?;
    Ok(AwCoefficients { beta, gamma, gamma_star, rho, rho_star, omega, eta, eta_star })
}

/// Coefficients of a Leonard system, computed from its own parameter array and
/// diagonal scalars.
pub fn system_coefficients(sys: &LeonardSystem) -> Result<AwCoefficients, AwError> {
    let pa = extract_parameter_array(sys)?;
    let (a, a_star) = a_scalars(sys)?;
    aw_coefficients(&pa, &a, &a_star)
}

/// The specialised coefficients for the closed-form arrays: `γ = γ* = η = η* = 0`
/// with `ϱ`, `ϱ*`, `ω` depending on the family.
pub fn closed_form_coefficients(fam: &FamilyParams, d: usize) -> Result<AwCoefficients, AwError> {
    let f = fam.field();
    let zero = f.zero();
    let one = f.one();
    let di = d as i64;
    let (beta, rho, omega) = match fam {
        FamilyParams::Krawtchouk { s } => (f.int(2), f.int(4), &f.int(-2) * &(s + &s.inv()?)),
        FamilyParams::BannaiIto { tau, .. } => (f.int(-2), f.int(4), &f.int(4 * (di + 1)) * tau),
        FamilyParams::QRacahCompact { q, s } | FamilyParams::QRacahLT { q, s } | FamilyParams::QRacahEven { q, s } => {
            let qinv = q.inv()?;
            let q2m1 = &(q * q) - &one;
            let rho = &q.pow(di - 2)? * &(&q2m1 * &q2m1);
            let qm1 = q - &one;
            let omega = -&(&(&(&qinv * &(&qm1 * &qm1)) * &(&q.pow(di + 1)? + &one)) * &(s + &(&s.inv()? * &q.pow(di - 1)?)));
            (q + &qinv, rho, omega)
        }
        other => return Err(AwError::NoClosedForm(other.name())),
    };
    Ok(AwCoefficients {
        beta,
        gamma: zero.clone(),
        gamma_star: zero.clone(),
        rho: rho.clone(),
        rho_star: rho,
        omega,
        eta: zero.clone(),
        eta_star: zero,
    })
}

/// Left side minus right side of each relation.
pub fn aw_residuals(a: &Matrix, a_star: &Matrix, c: &AwCoefficients) -> (Matrix, Matrix) {
    let one_side = |x: &Matrix, y: &Matrix, g: &Scalar, g_other: &Scalar, rho: &Scalar, eta: &Scalar| {
        let xx = x * x;
        let xy = x * y;
        let yx = y * x;
        let lhs = &(&(&(&xx * y) - &(&(&xy * x).scale(&c.beta))) + &(&yx * x)) - &(&(&xy + &yx).scale(g));
        let lhs = &lhs - &y.scale(rho);
        let rhs = &(&xx.scale(g_other) + &x.scale(&c.omega)) + &Matrix::identity(x.field(), x.dim()).scale(eta);
        &lhs - &rhs
    };
    (
        one_side(a, a_star, &c.gamma, &c.gamma_star, &c.rho, &c.eta),
        one_side(a_star, a, &c.gamma_star, &c.gamma, &c.rho_star, &c.eta_star),
    )
}

/// Both relations hold exactly.
pub fn verify_aw_relations(a: &Matrix, a_star: &Matrix, c: &AwCoefficients) -> bool {
    if a.dim() != a_star.dim() || a.field() != a_star.field() {
        return false;
    }
    let (r1, r2) = aw_residuals(a, a_star, c);
    r1.is_zero() && r2.is_zero()
}

/// Pairs `(i, j)`, `i < j`, `|i - j| > 1`, where
/// `θ_i² - βθ_iθ_j + θ_j² - γ(θ_i + θ_j) - ϱ` vanishes.
pub fn aw_tridiagonality_check(eigs: &[Scalar], c: &AwCoefficients) -> Vec<(usize, usize)> {
    let n = eigs.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 2..n {
            let (x, y) = (&eigs[i], &eigs[j]);
            let v = &(&(&(&(x * x) - &(&(&c.beta * x) * y)) + &(y * y)) - &(&c.gamma * &(x + y))) - &c.rho;
            if v.is_zero() {
                out.push((i, j));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make_family;
    use crate::leonard::find_leonard_orderings;
    use crate::parray::closed_form;
    use crate::scalars::{int, Field};

    fn system_for(fam: &FamilyParams, d: usize) -> LeonardSystem {
        let (a, b) = make_family(fam, d).unwrap().to_dense();
        let pa = closed_form(fam, d).unwrap();
        find_leonard_orderings(&a, &b)
            .unwrap()
            .into_iter()
            .find(|s| s.theta() == pa.theta.as_slice() && s.theta_star() == pa.theta_star.as_slice())
            .expect("closed-form ordering present")
    }

    #[test]
    fn krawtchouk_coefficients() {
        let fam = FamilyParams::Krawtchouk { s: int(2) };
        let c = system_coefficients(&system_for(&fam, 3)).unwrap();
        assert_eq!(c, closed_form_coefficients(&fam, 3).unwrap());
        assert_eq!(c.omega, int(-5));
        assert_eq!(c.rho, int(4));
    }

    #[test]
    fn bannai_ito_coefficients() {
        // tau = 1 is inadmissible at d = 4, but the formula itself still applies.
        let formal = closed_form_coefficients(&FamilyParams::BannaiIto { tau: int(1), epsilon: 1 }, 4).unwrap();
        assert_eq!(formal.omega, int(20));
        assert_eq!(formal.rho, int(4));
        let fam = FamilyParams::BannaiIto { tau: int(2), epsilon: -1 };
        let c = system_coefficients(&system_for(&fam, 4)).unwrap();
        assert_eq!(c.omega, int(40));
        assert_eq!(c, closed_form_coefficients(&fam, 4).unwrap());
    }

    #[test]
    fn qracah_coefficients() {
        let fam = FamilyParams::QRacahCompact { q: int(2), s: int(3) };
        let sys = system_for(&fam, 3);
        let c = system_coefficients(&sys).unwrap();
        assert_eq!(c.rho, int(18));
        assert_eq!(c, closed_form_coefficients(&fam, 3).unwrap());
        assert!(verify_aw_relations(&sys.a, &sys.a_star, &c));
        assert!(aw_tridiagonality_check(sys.theta(), &c).is_empty());
    }

    #[test]
    fn perturbed_omega_fails() {
        let fam = FamilyParams::Krawtchouk { s: int(3) };
        let (a, b) = make_family(&fam, 4).unwrap().to_dense();
        let mut c = closed_form_coefficients(&fam, 4).unwrap();
        assert!(verify_aw_relations(&a, &b, &c));
        c.omega = &c.omega + &int(1);
        assert!(!verify_aw_relations(&a, &b, &c));
    }

    #[test]
    fn zero_matrices() {
        let z = Matrix::zeros(Field::Rational, 3);
        let c = AwCoefficients {
            beta: int(0),
            gamma: int(0),
            gamma_star: int(0),
            rho: int(0),
            rho_star: int(0),
            omega: int(0),
            eta: int(0),
            eta_star: int(0),
        };
        assert!(verify_aw_relations(&z, &z, &c));
    }

    #[test]
    fn tridiagonality_examples() {
        let mut c = closed_form_coefficients(&FamilyParams::Krawtchouk { s: int(2) }, 4).unwrap();
        let eigs: Vec<Scalar> = [4, 2, 0, -2, -4].iter().map(|&v| int(v)).collect();
        assert!(aw_tridiagonality_check(&eigs, &c).is_empty());
        c.gamma = int(0);
        let contrived: Vec<Scalar> = (0..4).map(int).collect();
        assert_eq!(aw_tridiagonality_check(&contrived, &c), vec![(0, 2), (1, 3)]);
    }
}
