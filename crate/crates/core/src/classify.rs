//! Identifying which explicit family a zero-diagonal TD-TD Leonard pair is
//! equivalent to, with a checkable witness.
//!
//! Two pairs are equivalent when one is obtained from the other by nonzero
//! scalar multiples of each matrix, an optional anti-diagonal transpose, and
//! conjugation by an invertible diagonal matrix.

use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::awrel::AwCoefficients;
use crate::families::{diagonal_witness, make_family, FamilyError, FamilySpec, TDTDPair, ZeroDiagTD};
use crate::leonard::{analyze, extract_parameter_array, LeonardError};
use crate::linalg::Matrix;
use crate::parray::{fundamental_beta, is_opposite_symmetric, FamilyParams, ParameterArray, ParrayError};
use crate::scalars::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("not a zero-diagonal tridiagonal pair: {0}")]
    NotZeroDiagTD(String),
    #[error("diameter {0} is too small to classify")]
    DiameterTooSmall(usize),
    #[error("not a Leonard pair: {condition}")]
    NotLeonardPair { condition: String, detail: Option<String> },
    #[error("{0} lies outside the working field")]
    FieldExtensionRequired(String),
    #[error("q = {q} has multiplicative order {order} <= 2d")]
    RootOfUnityQ { q: Scalar, order: u64 },
    #[error("characteristic {p} too small for d = {d}: {why}")]
    CharacteristicTooSmall { p: u64, d: usize, why: &'static str },
    #[error("classification failed: {0}")]
    ClassificationFailed(String),
    #[error(transparent)]
    Leonard(LeonardError),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

impl From<LeonardError> for ClassifyError {
    fn from(e: LeonardError) -> Self {
        match e {
            LeonardError::FieldExtensionRequired => ClassifyError::FieldExtensionRequired("an eigenvalue".into()),
            other => ClassifyError::Leonard(other),
        }
    }
}

impl From<ParrayError> for ClassifyError {
    fn from(e: ParrayError) -> Self {
        ClassifyError::ClassificationFailed(e.to_string())
    }
}

fn failed(msg: impl Into<String>) -> ClassifyError {
    ClassifyError::ClassificationFailed(msg.into())
}

/// One solved or checked equation in a classification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranscriptStep {
    pub equation: String,
    pub reference: String,
    pub solved: BTreeMap<String, String>,
}

/// Family, scalars and diagonal witness for a classified pair.
///
/// Scaling the input by `(xi, xi_star)`, anti-transposing both matrices when
/// `anti_transpose` is set, and conjugating by `diag(diagonal)` yields exactly
/// the dense pair of `make_family(family, d)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationResult {
    pub family: FamilyParams,
    pub d: usize,
    pub xi: Scalar,
    pub xi_star: Scalar,
    pub diagonal: Vec<Scalar>,
    pub anti_transpose: bool,
    pub transcript: Vec<TranscriptStep>,
}

impl ClassificationResult {
    /// The input pair after scaling and the optional anti-transpose.
    pub fn transform(&self, a: &Matrix, a_star: &Matrix) -> (Matrix, Matrix) {
        let (m, ms) = (a.scale(&self.xi), a_star.scale(&self.xi_star));
        if self.anti_transpose {
            (m.anti_transpose(), ms.anti_transpose())
        } else {
            (m, ms)
        }
    }

    /// Recomputes the witness against the family's matrices.
    pub fn verify(&self, a: &Matrix, a_star: &Matrix) -> bool {
        let Ok(target) = make_family(&self.family, self.d) else {
            return false;
        };
        let (fa, fs) = target.to_dense();
        let (m, ms) = self.transform(a, a_star);
        if m.dim() != fa.dim() || m.field() != fa.field() {
            return false;
        }
        match (m.conjugate_by_diagonal(&self.diagonal), ms.conjugate_by_diagonal(&self.diagonal)) {
            (Ok(x), Ok(y)) => x == fa && y == fs,
            _ => false,
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "family": FamilySpec::new(self.family.clone(), self.d).to_json(),
            "xi": self.xi,
            "xi_star": self.xi_star,
            "diagonal": self.diagonal,
            "anti_transpose": self.anti_transpose,
            "transcript": self.transcript,
        })
    }
}

#[derive(Default)]
struct Transcript(Vec<TranscriptStep>);

impl Transcript {
    fn push(&mut self, equation: &str, reference: &str, solved: &[(&str, String)]) {
        self.0.push(TranscriptStep {
            equation: equation.to_string(),
            reference: reference.to_string(),
            solved: solved.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
        });
    }
}

enum Branch {
    Small,
    Krawtchouk,
    BannaiIto,
    QRacah(Scalar),
}

fn canonical(x: Scalar) -> Scalar {
    if x.is_canonical_sign() {
        x
    } else {
        -&x
    }
}

/// Root of `q² - βq + 1`; of the reciprocal pair, the one with `|q| > 1` over
/// the rationals and the smaller residue over GF(p).
fn recover_q(beta: &Scalar) -> Result<Scalar, ClassifyError> {
    let f = beta.field();
    let two = f.int(2);
    let disc = &(beta * beta) - &f.int(4);
    let r = disc.sqrt().ok_or_else(|| ClassifyError::FieldExtensionRequired(format!("a root of q^2 - ({beta})q + 1")))?;
    let q1 = (beta + &r).try_div(&two)?;
    let q2 = q1.inv()?;
    let pick_first = match f {
        Field::Rational => q1.exceeds_one_in_magnitude(),
        Field::Prime(_) => q1.height() <= q2.height(),
    };
    Ok(if pick_first { q1 } else { q2 })
}

fn all_equal(v: &[Scalar]) -> bool {
    v.windows(2).all(|w| w[0] == w[1])
}

/// Every consecutive ratio `v[i+1] / v[i]` equals `r`.
fn constant_ratio(v: &[Scalar], r: &Scalar) -> bool {
    v.windows(2).all(|w| &w[1] == &(&w[0] * r))
}

/// Classifies a zero-diagonal TD-TD Leonard pair.
pub fn classify(a: &Matrix, a_star: &Matrix) -> Result<ClassificationResult, ClassifyError> {
    if a.dim() != a_star.dim() || a.field() != a_star.field() {
        return Err(ClassifyError::NotZeroDiagTD("matrices differ in size or field".into()));
    }
    if a.dim() < 2 {
        return Err(ClassifyError::DiameterTooSmall(a.dim().saturating_sub(1)));
    }
    for m in [a, a_star] {
        ZeroDiagTD::from_dense(m).map_err(|e| ClassifyError::NotZeroDiagTD(e.to_string()))?;
    }
    let d = a.dim() - 1;
    let f = a.field();
    let mut tr = Transcript::default();

    let analysis = analyze(a, a_star)?;
    let Some(sys) = analysis.systems.first() else {
        let (condition, detail) = analysis
            .report
            .first_failure()
            .map(|c| (c.condition.to_string(), c.detail.clone()))
            .unwrap_or_else(|| ("no Leonard system ordering".to_string(), None));
        return Err(ClassifyError::NotLeonardPair { condition, detail });
    };
    let pa = extract_parameter_array(sys)?;
    if !is_opposite_symmetric(&pa) {
        return Err(failed("parameter array is not opposite-symmetric"));
    }
    tr.push(
        "theta_{d-i} = -theta_i, theta*_{d-i} = -theta*_i",
        "zero-diagonal pairs are isomorphic to their opposite",
        &[("theta_0", pa.theta[0].to_string()), ("theta*_0", pa.theta_star[0].to_string())],
    );

    let (branch, target) = choose_branch(&pa, d, &mut tr)?;
    if target.is_zero() {
        return Err(ClassifyError::CharacteristicTooSmall { p: f.characteristic(), d, why: "target eigenvalue vanishes" });
    }
    let xi = canonical(target.try_div(&pa.theta[0])?);
    let xi_star = canonical(target.try_div(&pa.theta_star[0])?);
    tr.push(
        "xi * theta_0 = +-target, xi* * theta*_0 = +-target",
        "rescale to the standard eigenvalue sequence; sign fixed canonically",
        &[("xi", xi.to_string()), ("xi_star", xi_star.to_string())],
    );

    let mut m = a.scale(&xi);
    let mut ms = a_star.scale(&xi_star);
    let normalize = |m: &Matrix, ms: &Matrix| TDTDPair::from_dense(m, ms).map(|p| p.0).map_err(|e| failed(e.to_string()));
    let mut pair = normalize(&m, &ms)?;
    let mut anti = false;
    let anti_transpose = |m: &mut Matrix, ms: &mut Matrix, anti: &mut bool| -> Result<TDTDPair, ClassifyError> {
        *m = m.anti_transpose();
        *ms = ms.anti_transpose();
        *anti = true;
        normalize(m, ms)
    };

    let family = match branch {
        Branch::Krawtchouk => {
            if !all_equal(&pair.x) || !all_equal(&pair.y) {
                return Err(failed("x or y is not constant at beta = 2"));
            }
            let s = pair.x[0].clone();
            let sum = &s + &s.inv()?;
            if &pair.x[0] + &pair.y[0] != sum {
                return Err(failed("x_1 + y_1 != s + 1/s"));
            }
            tr.push("x_i = x_1, y_i = y_1, x_1 + y_1 = s + s^-1", "constant bands at beta = 2; s := x_1", &[("s", s.to_string())]);
            FamilyParams::Krawtchouk { s }
        }
        Branch::BannaiIto => {
            let e = pair.x[0].clone();
            let epsilon: i8 = if e.is_one() {
                1
            } else if (-&e).is_one() {
                -1
            } else {
                return Err(failed(format!("x_1 = {e} is not +-1 at beta = -2")));
            };
            let alternating = |v: &[Scalar]| v.iter().enumerate().all(|(i, c)| if i % 2 == 0 { *c == e } else { *c == -&e });
            if !alternating(&pair.x) || !alternating(&pair.y) {
                return Err(failed("x or y does not alternate at beta = -2"));
            }
            // z_1 = d(1 + epsilon tau) x_1^-2 with x_1 = epsilon.
            let tau = &e * &(&pair.z[0].try_div(&f.int(d as i64))? - &f.one());
            tr.push(
                "x_i = y_i = (-1)^(i-1) x_1, x_1 = epsilon, z_1 = d(1 + epsilon tau)",
                "alternating bands at beta = -2",
                &[("epsilon", epsilon.to_string()), ("tau", tau.to_string())],
            );
            FamilyParams::BannaiIto { tau, epsilon }
        }
        Branch::QRacah(q) => {
            let qinv = q.inv()?;
            if constant_ratio(&pair.x, &q) {
                pair = anti_transpose(&mut m, &mut ms, &mut anti)?;
                tr.push("x_i / x_{i-1} = q", "reduced to x ratio q^-1 by anti-diagonal transpose", &[]);
            }
            if !constant_ratio(&pair.x, &qinv) {
                return Err(failed("x ratio is neither q nor q^-1"));
            }
            let s = pair.x[0].clone();
            let prod = &pair.x[0] * &pair.y[0];
            let qd1 = q.pow(d as i64 - 1)?;
            if constant_ratio(&pair.y, &qinv) {
                if prod == qd1 {
                    let note = if pair.x[0] == pair.y[0] { "x_1 = y_1 also holds; compact form preferred" } else { "" };
                    tr.push(
                        "x_i / x_{i-1} = y_i / y_{i-1} = q^-1, x_1 y_1 = q^(d-1)",
                        &format!("geometric bands, compact case {note}").trim_end().to_string(),
                        &[("s", s.to_string())],
                    );
                    FamilyParams::QRacahCompact { q, s }
                } else if pair.x[0] == pair.y[0] && d % 2 == 0 {
                    tr.push("x_i / x_{i-1} = y_i / y_{i-1} = q^-1, x_1 = y_1", "geometric bands, even case", &[("s", s.to_string())]);
                    FamilyParams::QRacahEven { q, s }
                } else {
                    return Err(failed("equal ratios but neither x_1 y_1 = q^(d-1) nor x_1 = y_1"));
                }
            } else if constant_ratio(&pair.y, &q) {
                if !prod.is_one() {
                    return Err(failed("opposite ratios but x_1 y_1 != 1"));
                }
                tr.push("x_i / x_{i-1} = q^-1, y_i / y_{i-1} = q, x_1 y_1 = 1", "geometric bands, opposite ratios", &[("s", s.to_string())]);
                FamilyParams::QRacahLT { q, s }
            } else {
                return Err(failed("y ratio is neither q nor q^-1"));
            }
        }
        Branch::Small if d == 1 => {
            let s = pair.x[0].clone();
            tr.push("z_1 = 1, y_1 = x_1^-1", "diameter one", &[("s", s.to_string())]);
            FamilyParams::D1 { s }
        }
        Branch::Small => {
            let (x1, x2) = (pair.x[0].clone(), pair.x[1].clone());
            if (&x1 + &x2).is_zero() {
                if !(&x1 * &x1).is_one() {
                    return Err(failed("x_1 + x_2 = 0 but x_1^2 != 1"));
                }
                if !x1.is_one() {
                    pair = anti_transpose(&mut m, &mut ms, &mut anti)?;
                }
                let (y, z) = (pair.y[0].clone(), pair.z[0].clone());
                tr.push(
                    "x_1 + x_2 = 0, x_1^2 = 1",
                    if anti { "x_1 = -1: anti-diagonal transpose" } else { "x_1 = 1" },
                    &[("y", y.to_string()), ("z", z.to_string())],
                );
                FamilyParams::D2a { y, z }
            } else {
                let z = pair.z[0].clone();
                tr.push("x_1 + x_2 != 0", "s := x_1, t := x_2, z := z_1", &[("s", x1.to_string()), ("t", x2.to_string()), ("z", z.to_string())]);
                FamilyParams::D2b { s: x1, t: x2, z }
            }
        }
    };

    let target = make_family(&family, d).map_err(|e: FamilyError| failed(format!("{} is not constructible: {e}", family.name())))?;
    let (fa, fs) = target.to_dense();
    let diagonal = diagonal_witness(&m, &ms, &fa, &fs).ok_or_else(|| failed(format!("no diagonal witness for {}", family.name())))?;
    tr.push("D^-1 (xi A) D = F, D^-1 (xi* A*) D = F*", "diagonal witness against the family matrices", &[]);
    Ok(ClassificationResult { family, d, xi, xi_star, diagonal, anti_transpose: anti, transcript: tr.0 })
}

/// Picks the family branch and the target value of `theta_0` after rescaling.
fn choose_branch(pa: &ParameterArray, d: usize, tr: &mut Transcript) -> Result<(Branch, Scalar), ClassifyError> {
    let f = pa.field();
    let p = f.characteristic();
    if d <= 2 {
        return Ok((Branch::Small, f.one()));
    }
    let beta = fundamental_beta(pa)?;
    let di = d as i64;
    if beta == f.int(2) {
        tr.push("beta = 2", "Krawtchouk branch, theta_i = d - 2i", &[("beta", beta.to_string())]);
        return Ok((Branch::Krawtchouk, f.int(di)));
    }
    if beta == f.int(-2) {
        if p != 0 && p <= d as u64 + 1 {
            return Err(ClassifyError::CharacteristicTooSmall { p, d, why: "beta = -2 needs d + 1 != 0" });
        }
        tr.push("beta = -2", "Bannai-Ito branch, theta_0 = -d", &[("beta", beta.to_string())]);
        return Ok((Branch::BannaiIto, f.int(-di)));
    }
    let q = recover_q(&beta)?;
    if let Some(order) = q.order_at_most(2 * d as u64) {
        return Err(ClassifyError::RootOfUnityQ { q, order });
    }
    tr.push(
        "q^2 - beta q + 1 = 0",
        "q-Racah branch, theta_i = q^i - q^(d-i); |q| > 1 or smaller residue",
        &[("beta", beta.to_string()), ("q", q.to_string())],
    );
    let target = &f.one() - &q.pow(di)?;
    Ok((Branch::QRacah(q), target))
}

/// A named entrywise Askey-Wilson equation evaluated at index `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryResidual {
    pub equation: &'static str,
    pub i: usize,
    pub value: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidualReport {
    pub residuals: Vec<EntryResidual>,
}

impl ResidualReport {
    pub fn all_zero(&self) -> bool {
        self.residuals.iter().all(|r| r.value.is_zero())
    }

    pub fn nonzero(&self) -> impl Iterator<Item = &EntryResidual> {
        self.residuals.iter().filter(|r| !r.value.is_zero())
    }
}

pub const X_RECURRENCE: &str = "x_{i-1} - beta x_i + x_{i+1}";
pub const Y_RECURRENCE: &str = "y_{i-1} - beta y_i + y_{i+1}";
pub const X_PRODUCT: &str = "x_{i-1} x_i - beta x_{i-1} x_{i+1} + x_i x_{i+1}";
pub const Y_PRODUCT: &str = "y_{i-1} y_i - beta y_{i-1} y_{i+1} + y_i y_{i+1}";
pub const SUB_FIRST: &str = "subdiagonal of the first relation";
pub const SUP_FIRST: &str = "superdiagonal of the first relation";
pub const SUB_SECOND: &str = "subdiagonal of the second relation";
pub const SUP_SECOND: &str = "superdiagonal of the second relation";
pub const TOP_ENDPOINT: &str = "top endpoint";
pub const BOTTOM_ENDPOINT: &str = "bottom endpoint";

/// Entrywise form of the Askey-Wilson relations (with `γ = γ* = η = η* = 0`)
/// for a normalized pair, plus the two endpoint identities tying the pair to
/// its parameter array. All residuals vanish for a Leonard pair.
pub fn aw_entry_equations(pair: &TDTDPair, c: &AwCoefficients, pa: &ParameterArray) -> ResidualReport {
    let d = pair.d();
    let zero = pair.field().zero();
    // 1-based with zero padding outside 1..=d.
    let pad = |v: &[Scalar]| {
        let mut out = vec![zero.clone()];
        out.extend(v.iter().cloned());
        out.push(zero.clone());
        out
    };
    let (x, y, z) = (pad(&pair.x), pad(&pair.y), pad(&pair.z));
    let b = &c.beta;
    let mut res = Vec::new();
    let mut push = |equation, i, value| res.push(EntryResidual { equation, i, value });

    for i in 2..d {
        for (name, v) in [(X_RECURRENCE, &x), (Y_RECURRENCE, &y)] {
            push(name, i, &(&v[i - 1] - &(b * &v[i])) + &v[i + 1]);
        }
        for (name, v) in [(X_PRODUCT, &x), (Y_PRODUCT, &y)] {
            push(name, i, &(&(&v[i - 1] * &v[i]) - &(&(b * &v[i - 1]) * &v[i + 1])) + &(&v[i] * &v[i + 1]));
        }
    }
    for i in 1..=d {
        for (name, u, w) in [(SUB_FIRST, &x, &y), (SUP_FIRST, &y, &x)] {
            let t1 = &z[i - 1] * &(&(&u[i] - &(b * &u[i - 1])) + &w[i - 1]);
            let t2 = &z[i] * &(&(&u[i] + &u[i]) - &(b * &w[i]));
            let t3 = &z[i + 1] * &(&(&u[i] - &(b * &u[i + 1])) + &w[i + 1]);
            push(name, i, &(&(&(&t1 + &t2) + &t3) - &(&c.rho * &u[i])) - &c.omega);
        }
        for (name, u, w) in [(SUB_SECOND, &x, &y), (SUP_SECOND, &y, &x)] {
            let t1 = &z[i - 1] * &(&(&(&w[i - 1] * &u[i - 1]) - &(&(b * &w[i - 1]) * &u[i])) + &(&u[i - 1] * &u[i]));
            let t2 = &z[i] * &(&(&(&w[i] * &u[i]) + &(&w[i] * &u[i])) - &(b * &(&u[i] * &u[i])));
            let t3 = &z[i + 1] * &(&(&(&w[i + 1] * &u[i + 1]) - &(&(b * &w[i + 1]) * &u[i])) + &(&u[i] * &u[i + 1]));
            push(name, i, &(&(&(&t1 + &t2) + &t3) - &c.rho_star) - &(&c.omega * &u[i]));
        }
    }
    let (th, ts) = (&pa.theta, &pa.theta_star);
    let top = &(&(&(&(&y[1] * &y[1]) * &z[1]) * &(&x[1] - &y[2]))
        + &(&(&y[1] * &y[2]) * &(&pa.varphi[0] + &(&th[0] * &(&ts[0] - &ts[1])))))
        - &(&ts[0] * &(&(&ts[0] * &y[1]) - &(&ts[1] * &y[2])));
    push(TOP_ENDPOINT, 1, top);
    let bottom = &(&(&(&z[d] * &(&x[d - 1] - &y[d])) + &pa.varphi[d - 1]) + &(&ts[d] * &(&th[d] - &th[d - 1])))
        + &(&th[d] * &(&(&th[d - 1] * &x[d]) - &(&th[d] * &x[d - 1])));
    push(BOTTOM_ENDPOINT, d, bottom);
    ResidualReport { residuals: res }
}
