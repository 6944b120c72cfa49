//! Parameter arrays `({θ_i}, {θ*_i}, {φ_i}, {ϕ_i})` and the closed forms
//! attached to each family of zero-diagonal TD-TD Leonard pairs.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalars::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParrayError {
    #[error("inadmissible parameters: {0}")]
    InadmissibleParams(String),
    #[error("{0} requires an even diameter, got {1}")]
    OddDiameter(&'static str, usize),
    #[error("{family} requires d = {expected}, got {got}")]
    DiameterMismatch {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("diameter {0} is too small (need d >= {1})")]
    DiameterTooSmall(usize, usize),
    #[error("eigenvalue ratios are not constant: {0}")]
    NotConstant(String),
    #[error("scaling factor is zero")]
    ZeroScale,
    #[error("malformed parameter array: {0}")]
    Malformed(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// `θ` and `θ*` have `d+1` entries; `varphi` (φ) and `phi` (ϕ) have `d`
/// entries, with `varphi[0]` holding φ_1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ParameterArrayJson", into = "ParameterArrayJson")]
pub struct ParameterArray {
    pub theta: Vec<Scalar>,
    pub theta_star: Vec<Scalar>,
    pub varphi: Vec<Scalar>,
    pub phi: Vec<Scalar>,
}

#[derive(Serialize, Deserialize)]
struct ParameterArrayJson {
    d: usize,
    theta: Vec<Scalar>,
    theta_star: Vec<Scalar>,
    varphi: Vec<Scalar>,
    phi: Vec<Scalar>,
}

impl From<ParameterArray> for ParameterArrayJson {
    fn from(pa: ParameterArray) -> Self {
        ParameterArrayJson {
            d: pa.d(),
            theta: pa.theta,
            theta_star: pa.theta_star,
            varphi: pa.varphi,
            phi: pa.phi,
        }
    }
}

impl TryFrom<ParameterArrayJson> for ParameterArray {
    type Error = ParrayError;

    fn try_from(j: ParameterArrayJson) -> Result<Self, Self::Error> {
        ParameterArray::new(j.theta, j.theta_star, j.varphi, j.phi).and_then(|pa| {
            if pa.d() == j.d {
                Ok(pa)
            } else {
                Err(ParrayError::Malformed(format!("d = {} but theta has {} entries", j.d, pa.theta.len())))
            }
        })
    }
}

/// One group of conditions in [`validate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionCheck {
    pub condition: &'static str,
    pub passed: bool,
    pub failures: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<ConditionCheck>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, condition: &str) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| c.condition == condition)
    }

    pub fn first_failure(&self) -> Option<&ConditionCheck> {
        self.checks.iter().find(|c| !c.passed)
    }
}

pub const DISTINCT: &str = "eigenvalues distinct";
pub const NONZERO: &str = "split sequences nonzero";
pub const VARPHI_IDENTITY: &str = "first split sequence identity";
pub const PHI_IDENTITY: &str = "second split sequence identity";
pub const RATIOS: &str = "eigenvalue ratios equal and constant";

/// The three D4 moves on a Leonard system: reverse `E*`, reverse `E`, or both.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum D4 {
    #[serde(rename = "down")]
    Down,
    #[serde(rename = "Down")]
    DoubleDown,
    #[serde(rename = "downDown")]
    DownDoubleDown,
}

impl ParameterArray {
    pub fn new(
        theta: Vec<Scalar>,
        theta_star: Vec<Scalar>,
        varphi: Vec<Scalar>,
        phi: Vec<Scalar>,
    ) -> Result<ParameterArray, ParrayError> {
        let n = theta.len();
        if n < 2 || theta_star.len() != n || varphi.len() != n - 1 || phi.len() != n - 1 {
            return Err(ParrayError::Malformed(format!(
                "lengths {}, {}, {}, {}",
                n,
                theta_star.len(),
                varphi.len(),
                phi.len()
            )));
        }
        let f = theta[0].field();
        if theta.iter().chain(&theta_star).chain(&varphi).chain(&phi).any(|v| v.field() != f) {
            return Err(ParrayError::Malformed("entries from different fields".into()));
        }
        Ok(ParameterArray { theta, theta_star, varphi, phi })
    }

    pub fn d(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn field(&self) -> Field {
        self.theta[0].field()
    }

    /// φ_i for `1 <= i <= d`.
    pub fn varphi_at(&self, i: usize) -> &Scalar {
        &self.varphi[i - 1]
    }

    /// ϕ_i for `1 <= i <= d`.
    pub fn phi_at(&self, i: usize) -> &Scalar {
        &self.phi[i - 1]
    }
}

fn distinct(v: &[Scalar]) -> Vec<String> {
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if v[i] == v[j] {
                out.push(format!("entries {i} and {j} coincide"));
            }
        }
    }
    out
}

/// Right-hand side of the identity expressing φ_i (`first = true`) or ϕ_i
/// through ϕ_1 (resp. φ_1) and the eigenvalues.
fn split_identity_rhs(pa: &ParameterArray, i: usize, first: bool) -> Scalar {
    let d = pa.d();
    let (th, ths) = (&pa.theta, &pa.theta_star);
    let denom = &th[0] - &th[d];
    let sum = (0..i).fold(pa.field().zero(), |acc, l| &acc + &(&(&th[l] - &th[d - l]) / &denom));
    if first {
        &(pa.phi_at(1) * &sum) + &(&(&ths[i] - &ths[0]) * &(&th[i - 1] - &th[d]))
    } else {
        &(pa.varphi_at(1) * &sum) + &(&(&ths[i] - &ths[0]) * &(&th[d - i + 1] - &th[0]))
    }
}

/// `(θ_{i-2} - θ_{i+1}) / (θ_{i-1} - θ_i)` for `2 <= i <= d-1`.
fn ratio(th: &[Scalar], i: usize) -> Option<Scalar> {
    (&th[i - 2] - &th[i + 1]).try_div(&(&th[i - 1] - &th[i])).ok()
}

/// Checks the five conditions characterising a parameter array.
pub fn validate(pa: &ParameterArray) -> ValidationReport {
    let d = pa.d();
    let mut checks = Vec::with_capacity(5);

    let mut fails: Vec<String> = distinct(&pa.theta).into_iter().map(|s| format!("theta: {s}")).collect();
    fails.extend(distinct(&pa.theta_star).into_iter().map(|s| format!("theta_star: {s}")));
    let distinct_ok = fails.is_empty();
    checks.push(ConditionCheck { condition: DISTINCT, passed: distinct_ok, failures: fails });

    let mut fails = Vec::new();
    for i in 1..=d {
        if pa.varphi_at(i).is_zero() {
            fails.push(format!("varphi_{i} = 0"));
        }
        if pa.phi_at(i).is_zero() {
            fails.push(format!("phi_{i} = 0"));
        }
    }
    checks.push(ConditionCheck { condition: NONZERO, passed: fails.is_empty(), failures: fails });

    for (name, first) in [(VARPHI_IDENTITY, true), (PHI_IDENTITY, false)] {
        let mut fails = Vec::new();
        if !distinct_ok {
            fails.push("not evaluated: eigenvalues not distinct".to_string());
        } else {
            for i in 1..=d {
                let lhs = if first { pa.varphi_at(i) } else { pa.phi_at(i) };
                let rhs = split_identity_rhs(pa, i, first);
                if *lhs != rhs {
                    fails.push(format!("i={i}: {lhs} != {rhs}"));
                }
            }
        }
        checks.push(ConditionCheck { condition: name, passed: fails.is_empty(), failures: fails });
    }

    let mut fails = Vec::new();
    if d >= 3 {
        if !distinct_ok {
            fails.push("not evaluated: eigenvalues not distinct".to_string());
        } else {
            let r0 = ratio(&pa.theta, 2);
            for i in 2..d {
                let r = ratio(&pa.theta, i);
                let rs = ratio(&pa.theta_star, i);
                if r != rs {
                    fails.push(format!("i={i}: theta ratio differs from theta_star ratio"));
                }
                if r != r0 {
                    fails.push(format!("i={i}: ratio differs from i=2"));
                }
            }
        }
    }
    checks.push(ConditionCheck { condition: RATIOS, passed: fails.is_empty(), failures: fails });
    ValidationReport { checks }
}

/// One less than the common eigenvalue ratio.
pub fn fundamental_beta(pa: &ParameterArray) -> Result<Scalar, ParrayError> {
    let d = pa.d();
    if d < 3 {
        return Err(ParrayError::DiameterTooSmall(d, 3));
    }
    let report = validate(pa);
    for name in [DISTINCT, RATIOS] {
        let c = report.check(name).expect("present");
        if !c.passed {
            return Err(ParrayError::NotConstant(c.failures.join("; ")));
        }
    }
    Ok(&ratio(&pa.theta, 2).expect("distinct eigenvalues") - &pa.field().one())
}

/// The parameter array of the relative system under a D4 move.
pub fn d4_relative(pa: &ParameterArray, which: D4) -> ParameterArray {
    let rev = |v: &[Scalar]| v.iter().rev().cloned().collect::<Vec<_>>();
    match which {
        D4::Down => ParameterArray {
            theta: pa.theta.clone(),
            theta_star: rev(&pa.theta_star),
            varphi: rev(&pa.phi),
            phi: rev(&pa.varphi),
        },
        D4::DoubleDown => ParameterArray {
            theta: rev(&pa.theta),
            theta_star: pa.theta_star.clone(),
            varphi: pa.phi.clone(),
            phi: pa.varphi.clone(),
        },
        D4::DownDoubleDown => ParameterArray {
            theta: rev(&pa.theta),
            theta_star: rev(&pa.theta_star),
            varphi: rev(&pa.varphi),
            phi: rev(&pa.phi),
        },
    }
}

/// The array of `(ξA, ξ*A*)`.
pub fn affine_scale(pa: &ParameterArray, xi: &Scalar, xi_star: &Scalar) -> Result<ParameterArray, ParrayError> {
    if xi.is_zero() || xi_star.is_zero() {
        return Err(ParrayError::ZeroScale);
    }
    let both = xi * xi_star;
    Ok(ParameterArray {
        theta: pa.theta.iter().map(|v| v * xi).collect(),
        theta_star: pa.theta_star.iter().map(|v| v * xi_star).collect(),
        varphi: pa.varphi.iter().map(|v| v * &both).collect(),
        phi: pa.phi.iter().map(|v| v * &both).collect(),
    })
}

/// `θ_i + θ_{d-i} = 0`, `θ*_i + θ*_{d-i} = 0`, `φ_i = φ_{d-i+1}`, `ϕ_i = ϕ_{d-i+1}`.
pub fn is_opposite_symmetric(pa: &ParameterArray) -> bool {
    let d = pa.d();
    let anti = |v: &[Scalar]| (0..=d).all(|i| (&v[i] + &v[d - i]).is_zero());
    let pal = |v: &[Scalar]| (0..d).all(|i| v[i] == v[d - 1 - i]);
    anti(&pa.theta) && anti(&pa.theta_star) && pal(&pa.varphi) && pal(&pa.phi)
}

/// Parameters of the explicit families.
///
/// `Krawtchouk`, `BannaiIto` and the three q-Racah variants exist for general
/// `d`; `D1`, `D2a`, `D2b` are the small-diameter pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilyParams {
    Krawtchouk { s: Scalar },
    BannaiIto { tau: Scalar, epsilon: i8 },
    QRacahCompact { q: Scalar, s: Scalar },
    QRacahLT { q: Scalar, s: Scalar },
    QRacahEven { q: Scalar, s: Scalar },
    D1 { s: Scalar },
    D2a { y: Scalar, z: Scalar },
    D2b { s: Scalar, t: Scalar, z: Scalar },
}

impl FamilyParams {
    /// Wire name of the family.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyParams::Krawtchouk { .. } => "krawtchouk",
            FamilyParams::BannaiIto { .. } => "bannai_ito",
            FamilyParams::QRacahCompact { .. } => "qracah_compact",
            FamilyParams::QRacahLT { .. } => "qracah_lt",
            FamilyParams::QRacahEven { .. } => "qracah_even",
            FamilyParams::D1 { .. } => "d1",
            FamilyParams::D2a { .. } => "d2a",
            FamilyParams::D2b { .. } => "d2b",
        }
    }

    /// Named scalar parameters, in a fixed order.
    pub fn scalars(&self) -> Vec<(&'static str, Scalar)> {
        match self {
            FamilyParams::Krawtchouk { s } | FamilyParams::D1 { s } => vec![("s", s.clone())],
            FamilyParams::BannaiIto { tau, .. } => vec![("tau", tau.clone())],
            FamilyParams::QRacahCompact { q, s }
            | FamilyParams::QRacahLT { q, s }
            | FamilyParams::QRacahEven { q, s } => vec![("q", q.clone()), ("s", s.clone())],
            FamilyParams::D2a { y, z } => vec![("y", y.clone()), ("z", z.clone())],
            FamilyParams::D2b { s, t, z } => vec![("s", s.clone()), ("t", t.clone()), ("z", z.clone())],
        }
    }

    pub fn field(&self) -> Field {
        self.scalars()[0].1.field()
    }

    fn check_fields(&self) -> Result<(), ParrayError> {
        let f = self.field();
        if let Some((name, v)) = self.scalars().into_iter().find(|(_, v)| v.field() != f) {
            return Err(ScalarError::FieldMismatch(v.field(), f)).map_err(|e| {
                ParrayError::InadmissibleParams(format!("parameter {name}: {e}"))
            });
        }
        Ok(())
    }
}

fn inadmissible(msg: impl Into<String>) -> ParrayError {
    ParrayError::InadmissibleParams(msg.into())
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<(), ParrayError> {
    if cond {
        Ok(())
    } else {
        Err(inadmissible(msg()))
    }
}

/// Checks the admissibility conditions under which the family's closed-form
/// array is a parameter array and its TD-TD pair exists.
pub fn check_admissible(fam: &FamilyParams, d: usize) -> Result<(), ParrayError> {
    fam.check_fields()?;
    if d == 0 {
        return Err(ParrayError::DiameterTooSmall(0, 1));
    }
    let f = fam.field();
    let ch = f.characteristic();
    let one = f.one();
    require(ch != 2, || "characteristic 2".into())?;
    for (name, v) in fam.scalars() {
        if matches!(fam, FamilyParams::BannaiIto { .. }) {
            break;
        }
        require(!v.is_zero(), || format!("{name} must be nonzero"))?;
    }
    let char_above_d = || require(ch == 0 || ch > d as u64, || format!("characteristic {ch} must be 0 or greater than d = {d}"));
    match fam {
        FamilyParams::Krawtchouk { s } => {
            char_above_d()?;
            require(&(s * s) != &one, || "s^2 = 1".into())?;
        }
        FamilyParams::BannaiIto { tau, epsilon } => {
            require(*epsilon == 1 || *epsilon == -1, || format!("epsilon = {epsilon} is not 1 or -1"))?;
            if d % 2 == 1 {
                return Err(ParrayError::OddDiameter("bannai_ito", d));
            }
            char_above_d()?;
            for k in (1 - d as i64..=d as i64 - 1).step_by(2) {
                require(*tau != f.int(k), || format!("tau = {k} lies among 1-d, 3-d, ..., d-1"))?;
            }
        }
        FamilyParams::QRacahCompact { q, s } | FamilyParams::QRacahLT { q, s } | FamilyParams::QRacahEven { q, s } => {
            for i in 1..=d as i64 {
                require(!q.pow(i)?.is_one(), || format!("q^i = 1 at i={i}"))?;
            }
            for i in 0..d as i64 {
                require(q.pow(i)? != -&one, || format!("q^i = -1 at i={i}"))?;
            }
            let s2 = s * s;
            for i in 0..d as i64 {
                require(s2 != q.pow(2 * i)?, || format!("s^2 = q^(2i) at i={i}"))?;
            }
            match fam {
                FamilyParams::QRacahLT { .. } => {
                    for i in 0..=(2 * d as i64 - 2) {
                        require(s2 != q.pow(i)?, || format!("s^2 = q^i at i={i}"))?;
                    }
                }
                FamilyParams::QRacahEven { .. } if d % 2 == 1 => {
                    return Err(ParrayError::OddDiameter("qracah_even", d));
                }
                _ => {}
            }
        }
        FamilyParams::D1 { s } => {
            if d != 1 {
                return Err(ParrayError::DiameterMismatch { family: "d1", expected: 1, got: d });
            }
            require(&(s * s) != &one, || "s^2 = 1".into())?;
        }
        FamilyParams::D2a { y, z } => {
            if d != 2 {
                return Err(ParrayError::DiameterMismatch { family: "d2a", expected: 2, got: d });
            }
            require(*y != one, || "y = 1".into())?;
            require(*y != -&one, || "y = -1".into())?;
            require(*z != one, || "z = 1".into())?;
            require(!(y * z).is_one(), || "yz = 1".into())?;
            require(&(y + &one) * z != f.int(2), || "(y+1)z = 2".into())?;
        }
        FamilyParams::D2b { s, t, z } => {
            if d != 2 {
                return Err(ParrayError::DiameterMismatch { family: "d2b", expected: 2, got: d });
            }
            require(!(s * s).is_one(), || "s^2 = 1".into())?;
            require(!(t * t).is_one(), || "t^2 = 1".into())?;
            require(!(s + t).is_zero(), || "s + t = 0".into())?;
            require(*z != one, || "z = 1".into())?;
        }
    }
    Ok(())
}

/// The closed-form parameter array of a family, after checking admissibility.
pub fn closed_form(fam: &FamilyParams, d: usize) -> Result<ParameterArray, ParrayError> {
    check_admissible(fam, d)?;
    let f = fam.field();
    let int = |n: i64| f.int(n);
    let di = d as i64;
    let pa = match fam {
        FamilyParams::Krawtchouk { s } => {
            let th: Vec<Scalar> = (0..=di).map(|i| int(di - 2 * i)).collect();
            let sinv = s.inv()?;
            let minus = &(s + &sinv) - &int(2);
            let plus = &(s + &sinv) + &int(2);
            let w = |i: i64| int(i * (di - i + 1));
            ParameterArray {
                theta: th.clone(),
                theta_star: th,
                varphi: (1..=di).map(|i| &w(i) * &minus).collect(),
                phi: (1..=di).map(|i| &w(i) * &plus).collect(),
            }
        }
        FamilyParams::BannaiIto { tau, .. } => {
            let th: Vec<Scalar> = (0..=di).map(|i| if i % 2 == 0 { int(2 * i - di) } else { int(di - 2 * i) }).collect();
            let varphi = (1..=di)
                .map(|i| {
                    if i % 2 == 0 {
                        &int(2 * i) * &(&int(di - 2 * i + 1) + tau)
                    } else {
                        &int(-2 * (di - i + 1)) * &(&int(di - 2 * i + 1) - tau)
                    }
                })
                .collect();
            let phi = (1..=di)
                .map(|i| {
                    if i % 2 == 0 {
                        &int(-2 * i) * &(&int(di - 2 * i + 1) - tau)
                    } else {
                        &int(2 * (di - i + 1)) * &(&int(di - 2 * i + 1) + tau)
                    }
                })
                .collect();
            ParameterArray { theta: th.clone(), theta_star: th, varphi, phi }
        }
        FamilyParams::QRacahCompact { q, s } | FamilyParams::QRacahLT { q, s } | FamilyParams::QRacahEven { q, s } => {
            qracah_array(q, s, d)?
        }
        FamilyParams::D1 { s } => {
            let sinv = s.inv()?;
            ParameterArray {
                theta: vec![int(1), int(-1)],
                theta_star: vec![int(1), int(-1)],
                varphi: vec![&(s + &sinv) - &int(2)],
                phi: vec![&(s + &sinv) + &int(2)],
            }
        }
        FamilyParams::D2a { y, z } => {
            let yz1 = &(y + &int(1)) * z;
            let v = &yz1 - &int(2);
            ParameterArray {
                theta: vec![int(1), int(0), int(-1)],
                theta_star: vec![int(1), int(0), int(-1)],
                varphi: vec![v.clone(), v],
                phi: vec![yz1.clone(), yz1],
            }
        }
        FamilyParams::D2b { s, t, .. } => {
            let st = s + t;
            let v = &(&(s - &int(1)) * &(t - &int(1))) / &st;
            let w = &(&(s + &int(1)) * &(t + &int(1))) / &st;
            ParameterArray {
                theta: vec![int(1), int(0), int(-1)],
                theta_star: vec![int(1), int(0), int(-1)],
                varphi: vec![v.clone(), v],
                phi: vec![w.clone(), w],
            }
        }
    };
    let report = validate(&pa);
    match report.first_failure() {
        None => Ok(pa),
        Some(c) => Err(inadmissible(format!("closed form fails '{}': {}", c.condition, c.failures.join("; ")))),
    }
}

/// `θ_i = θ*_i = q^i - q^{d-i}` with the q-Racah split sequences.
pub fn qracah_array(q: &Scalar, s: &Scalar, d: usize) -> Result<ParameterArray, ParrayError> {
    let f = q.field();
    let one = f.one();
    let di = d as i64;
    let qp = |k: i64| q.pow(k);
    let th = (0..=di).map(|i| Ok(&qp(i)? - &qp(di - i)?)).collect::<Result<Vec<_>, ScalarError>>()?;
    let sinv = s.inv()?;
    let mut varphi = Vec::with_capacity(d);
    let mut phi = Vec::with_capacity(d);
    for i in 1..=di {
        let base = &(&qp(i)? - &one) * &(&qp(di - i + 1)? - &one);
        let (a, b) = (qp(i - 1)?, qp(di - i)?);
        varphi.push(&(&(&base * &(s - &a)) * &(s - &b)) * &sinv);
        phi.push(&(&(&base * &(s + &a)) * &(s + &b)) * &sinv);
    }
    Ok(ParameterArray { theta: th.clone(), theta_star: th, varphi, phi })
}
