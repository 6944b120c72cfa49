//! Zero-diagonal tridiagonal matrices, TD-TD pairs in normal form, and the
//! explicit families of Leonard pairs.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::linalg::{Matrix, Poly};
use crate::parray::{check_admissible, FamilyParams, ParrayError};
use crate::scalars::{Field, Scalar, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error(transparent)]
    Params(#[from] ParrayError),
    #[error("not a zero-diagonal tridiagonal matrix: {0}")]
    NotZeroDiagTD(String),
    #[error("not irreducible: {0}")]
    NotIrreducible(String),
    #[error("index {i} out of range for d = {d}")]
    IndexOutOfRange { i: usize, d: usize },
    #[error("malformed family spec: {0}")]
    BadSpec(String),
    #[error(transparent)]
    Scalar(#[from] ScalarError),
}

/// Irreducible tridiagonal matrix with zero diagonal, given by its bands.
/// `sub[i-1]` is entry `(i, i-1)` and `sup[i-1]` is entry `(i-1, i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ZeroDiagTD {
    pub sub: Vec<Scalar>,
    pub sup: Vec<Scalar>,
}

impl ZeroDiagTD {
    pub fn new(sub: Vec<Scalar>, sup: Vec<Scalar>) -> Result<ZeroDiagTD, FamilyError> {
        if sub.is_empty() || sub.len() != sup.len() {
            return Err(FamilyError::NotZeroDiagTD(format!("band lengths {} and {}", sub.len(), sup.len())));
        }
        let f = sub[0].field();
        if sub.iter().chain(&sup).any(|v| v.field() != f) {
            return Err(FamilyError::NotZeroDiagTD("entries from different fields".into()));
        }
        for (k, (a, b)) in sub.iter().zip(&sup).enumerate() {
            if a.is_zero() || b.is_zero() {
                return Err(FamilyError::NotIrreducible(format!("zero band entry at position {}", k + 1)));
            }
        }
        Ok(ZeroDiagTD { sub, sup })
    }

    pub fn d(&self) -> usize {
        self.sub.len()
    }

    pub fn field(&self) -> Field {
        self.sub[0].field()
    }

    pub fn to_dense(&self) -> Matrix {
        let n = self.d() + 1;
        let mut m = Matrix::zeros(self.field(), n);
        for i in 1..n {
            m.set(i, i - 1, self.sub[i - 1].clone());
            m.set(i - 1, i, self.sup[i - 1].clone());
        }
        m
    }

    pub fn from_dense(m: &Matrix) -> Result<ZeroDiagTD, FamilyError> {
        let n = m.dim();
        if n < 2 {
            return Err(FamilyError::NotZeroDiagTD(format!("dimension {n} < 2")));
        }
        for i in 0..n {
            for j in 0..n {
                let band = i.abs_diff(j) == 1;
                if !band && !m.get(i, j).is_zero() {
                    return Err(FamilyError::NotZeroDiagTD(format!("nonzero entry at ({i}, {j})")));
                }
            }
        }
        ZeroDiagTD::new(
            (1..n).map(|i| m.get(i, i - 1).clone()).collect(),
            (1..n).map(|i| m.get(i - 1, i).clone()).collect(),
        )
    }

    /// `sub_i * sup_i`, invariant under diagonal conjugation.
    pub fn band_products(&self) -> Vec<Scalar> {
        self.sub.iter().zip(&self.sup).map(|(a, b)| a * b).collect()
    }

    /// `D = diag(1, x_1, x_1 x_2, ...)`; `D^{-1} M D` has subdiagonal all 1.
    pub fn normalizer(&self) -> Vec<Scalar> {
        let mut d = vec![self.field().one()];
        for x in &self.sub {
            let next = d.last().unwrap() * x;
            d.push(next);
        }
        d
    }
}

/// A zero-diagonal TD-TD pair in normal form: `A` has subdiagonal 1 and
/// superdiagonal `z`; `A*` has subdiagonal `x` and superdiagonal `y_i z_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TDTDPair {
    pub x: Vec<Scalar>,
    pub y: Vec<Scalar>,
    pub z: Vec<Scalar>,
}

impl TDTDPair {
    pub fn new(x: Vec<Scalar>, y: Vec<Scalar>, z: Vec<Scalar>) -> Result<TDTDPair, FamilyError> {
        let d = x.len();
        if d == 0 || y.len() != d || z.len() != d {
            return Err(FamilyError::NotZeroDiagTD(format!("vector lengths {}, {}, {}", d, y.len(), z.len())));
        }
        for (name, v) in [("x", &x), ("y", &y), ("z", &z)] {
            if let Some(i) = v.iter().position(Scalar::is_zero) {
                return Err(FamilyError::NotIrreducible(format!("{name}_{} = 0", i + 1)));
            }
        }
        Ok(TDTDPair { x, y, z })
    }

    pub fn d(&self) -> usize {
        self.x.len()
    }

    pub fn field(&self) -> Field {
        self.x[0].field()
    }

    pub fn a(&self) -> ZeroDiagTD {
        ZeroDiagTD {
            sub: vec![self.field().one(); self.d()],
            sup: self.z.clone(),
        }
    }

    pub fn a_star(&self) -> ZeroDiagTD {
        ZeroDiagTD {
            sub: self.x.clone(),
            sup: self.y.iter().zip(&self.z).map(|(y, z)| y * z).collect(),
        }
    }

    pub fn to_dense(&self) -> (Matrix, Matrix) {
        (self.a().to_dense(), self.a_star().to_dense())
    }

    /// Normalizes a pair of zero-diagonal TD matrices by conjugating with the
    /// diagonal matrix that turns `A`'s subdiagonal into ones. Returns the pair
    /// and that diagonal.
    pub fn from_dense(a: &Matrix, a_star: &Matrix) -> Result<(TDTDPair, Vec<Scalar>), FamilyError> {
        let ta = ZeroDiagTD::from_dense(a)?;
        let ts = ZeroDiagTD::from_dense(a_star)?;
        if ta.d() != ts.d() || ta.field() != ts.field() {
            return Err(FamilyError::NotZeroDiagTD("matrices differ in size or field".into()));
        }
        let dg = ta.normalizer();
        let na = ZeroDiagTD::from_dense(&a.conjugate_by_diagonal(&dg).expect("invertible"))?;
        let ns = ZeroDiagTD::from_dense(&a_star.conjugate_by_diagonal(&dg).expect("invertible"))?;
        let y = ns.sup.iter().zip(&na.sup).map(|(b, z)| b / z).collect();
        Ok((TDTDPair::new(ns.sub, y, na.sup)?, dg))
    }
}

/// `π(d, i)`: the sum of `z_{l_1} ... z_{l_i}` over `1 <= l_1 < ... < l_i <= d`
/// with consecutive gaps at least 2.
pub fn pi_sum(z: &[Scalar], i: usize) -> Result<Scalar, FamilyError> {
    let d = z.len();
    if i > d.div_ceil(2) {
        return Err(FamilyError::IndexOutOfRange { i, d });
    }
    let f = z.first().map(Scalar::field).unwrap_or(Field::Rational);
    // table[n][k] = π(n, k); π(-1, k) is handled as π(0, k).
    let mut table: Vec<Vec<Scalar>> = Vec::with_capacity(d + 1);
    for n in 0..=d {
        let row = (0..=i)
            .map(|k| {
                if k == 0 {
                    return f.one();
                }
                if n == 0 {
                    return f.zero();
                }
                let skip = &table[n - 1][k];
                let prev2 = if n >= 2 { &table[n - 2][k - 1] } else { &table[0][k - 1] };
                skip + &(&z[n - 1] * prev2)
            })
            .collect();
        table.push(row);
    }
    Ok(table[d][i].clone())
}

/// `det(xI - M) = Σ_i (-1)^i π(d, i) x^{d-2i+1}`, with `π` taken over the band
/// products of `M`.
pub fn char_poly_formula(m: &ZeroDiagTD) -> Poly {
    let d = m.d();
    let f = m.field();
    let z = m.band_products();
    let mut coeffs = vec![f.zero(); d + 2];
    for i in 0..=(d + 1) / 2 {
        let p = pi_sum(&z, i).expect("index in range");
        coeffs[d + 1 - 2 * i] = if i % 2 == 0 { p } else { -p };
    }
    Poly::new(f, coeffs)
}

/// The TD-TD pair of a family at diameter `d`.
pub fn make_family(fam: &FamilyParams, d: usize) -> Result<TDTDPair, FamilyError> {
    check_admissible(fam, d)?;
    let f = fam.field();
    let int = |n: i64| f.int(n);
    let one = f.one();
    let di = d as i64;
    let range = 1..=di;
    let (x, y, z): (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) = match fam {
        FamilyParams::Krawtchouk { s } => {
            let sinv = s.inv()?;
            (
                vec![s.clone(); d],
                vec![sinv; d],
                range.map(|i| int(i * (di - i + 1))).collect(),
            )
        }
        FamilyParams::BannaiIto { tau, epsilon } => {
            let e = int(*epsilon as i64);
            let alt: Vec<Scalar> = range.clone().map(|i| if i % 2 == 1 { e.clone() } else { -&e }).collect();
            let et = &e * tau;
            let z = range
                .map(|i| {
                    if i % 2 == 0 {
                        &int(i) * &(&int(di - i + 1) - &et)
                    } else {
                        &int(di - i + 1) * &(&int(i) + &et)
                    }
                })
                .collect();
            (alt.clone(), alt, z)
        }
        FamilyParams::QRacahCompact { q, s } => {
            let sinv = s.inv()?;
            let mut x = Vec::with_capacity(d);
            let mut y = Vec::with_capacity(d);
            let mut z = Vec::with_capacity(d);
            for i in range {
                x.push(s * &q.pow(1 - i)?);
                y.push(&sinv * &q.pow(di - i)?);
                z.push(&(&q.pow(i - 1)? * &(&q.pow(i)? - &one)) * &(&q.pow(di - i + 1)? - &one));
            }
            (x, y, z)
        }
        FamilyParams::QRacahLT { q, s } => {
            if d < 2 {
                return Err(ParrayError::DiameterTooSmall(d, 2).into());
            }
            let sinv = s.inv()?;
            let s2 = s * s;
            let qp = |k: i64| q.pow(k);
            let mut x = Vec::with_capacity(d);
            let mut y = Vec::with_capacity(d);
            let mut z = Vec::with_capacity(d);
            for i in range {
                x.push(s * &qp(1 - i)?);
                y.push(&sinv * &qp(i - 1)?);
                let zi = if i == 1 {
                    (&(&(&qp(1)? - &one) * &(&qp(di)? - &one)) * &(&s2 - &qp(di)?)).try_div(&(&s2 - &qp(1)?))?
                } else if i == di {
                    (&(&(&qp(di - 1)? * &(&qp(1)? - &one)) * &(&qp(di)? - &one)) * &(&s2 - &qp(di - 2)?))
                        .try_div(&(&s2 - &qp(2 * di - 3)?))?
                } else {
                    let num = &(&(&(&qp(i - 1)? * &(&qp(i)? - &one)) * &(&qp(di - i + 1)? - &one)) * &(&s2 - &qp(i - 2)?))
                        * &(&s2 - &qp(di + i - 1)?);
                    let den = &(&s2 - &qp(2 * i - 3)?) * &(&s2 - &qp(2 * i - 1)?);
                    num.try_div(&den)?
                };
                z.push(zi);
            }
            (x, y, z)
        }
        FamilyParams::QRacahEven { q, s } => {
            let s2inv = (s * s).inv()?;
            let qp = |k: i64| q.pow(k);
            let mut x = Vec::with_capacity(d);
            let mut z = Vec::with_capacity(d);
            for i in range {
                x.push(s * &qp(1 - i)?);
                let zi = if i % 2 == 0 {
                    &(&qp(di)? * &(&qp(i)? - &one)) * &(&one - &(&s2inv * &qp(i - 2)?))
                } else {
                    -&(&(&qp(i - 1)? * &(&qp(di - i + 1)? - &one)) * &(&one - &(&s2inv * &qp(di + i - 1)?)))
                };
                z.push(zi);
            }
            (x.clone(), x, z)
        }
        FamilyParams::D1 { s } => (vec![s.clone()], vec![s.inv()?], vec![one]),
        FamilyParams::D2a { y, z } => {
            let zz = vec![z.clone(), &one - z];
            let ybar2 = &(y * z) - &one;
            let y2 = ybar2.try_div(&zz[1])?;
            (vec![one.clone(), -&one], vec![y.clone(), y2], zz)
        }
        FamilyParams::D2b { s, t, z } => {
            let st = s + t;
            let yt1 = &(t * z) + &(&(&one - &(t * t)) / &st);
            let yt2 = &(-&(s * z)) + &(&(&one + &(s * t)) / &st);
            let zz = vec![z.clone(), &one - z];
            let y = vec![yt1.try_div(&zz[0])?, yt2.try_div(&zz[1])?];
            (vec![s.clone(), t.clone()], y, zz)
        }
    };
    TDTDPair::new(x, y, z).map_err(|e| match e {
        FamilyError::NotIrreducible(m) => FamilyError::Params(ParrayError::InadmissibleParams(format!("degenerate entry: {m}"))),
        other => other,
    })
}

/// Diagonal `D` with `D_0 = 1` such that `D^{-1} A D = B` and
/// `D^{-1} A* D = B*`, for zero-diagonal TD inputs. `None` if no such `D`.
pub fn diagonal_witness(a: &Matrix, a_star: &Matrix, b: &Matrix, b_star: &Matrix) -> Option<Vec<Scalar>> {
    let n = a.dim();
    if [a_star.dim(), b.dim(), b_star.dim()].iter().any(|&m| m != n) || n == 0 {
        return None;
    }
    let f = a.field();
    if [a_star.field(), b.field(), b_star.field()].iter().any(|&g| g != f) {
        return None;
    }
    // (D^{-1} A D)_{i,i-1} = A_{i,i-1} D_{i-1} / D_i.
    let mut dg = vec![f.one()];
    for i in 1..n {
        let ratio = a.get(i, i - 1).try_div(b.get(i, i - 1)).ok()?;
        let next = dg.last().unwrap() * &ratio;
        if next.is_zero() {
            return None;
        }
        dg.push(next);
    }
    let ok = a.conjugate_by_diagonal(&dg).ok()? == *b && a_star.conjugate_by_diagonal(&dg).ok()? == *b_star;
    ok.then_some(dg)
}

/// Diagonal equivalence of two TD-TD pairs.
pub fn equivalent(p: &TDTDPair, q: &TDTDPair) -> Option<Vec<Scalar>> {
    let (a, a_star) = p.to_dense();
    let (b, b_star) = q.to_dense();
    diagonal_witness(&a, &a_star, &b, &b_star)
}

/// `diag((-1)^i)`; conjugating a zero-diagonal TD matrix by it negates the matrix.
pub fn sign_flip_diagonal(field: Field, n: usize) -> Vec<Scalar> {
    (0..n).map(|i| if i % 2 == 0 { field.one() } else { -field.one() }).collect()
}

/// A family together with its diameter; the wire format is
/// `{"family": name, "d": int, "params": {...}}` with an optional `"field"`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub params: FamilyParams,
    pub d: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    family: String,
    d: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<Field>,
    params: BTreeMap<String, serde_json::Value>,
}

impl FamilySpec {
    pub fn new(params: FamilyParams, d: usize) -> FamilySpec {
        FamilySpec { params, d }
    }

    pub fn build(&self) -> Result<TDTDPair, FamilyError> {
        make_family(&self.params, self.d)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut params = BTreeMap::new();
        for (k, v) in self.params.scalars() {
            params.insert(k.to_string(), serde_json::Value::String(v.to_string()));
        }
        if let FamilyParams::BannaiIto { epsilon, .. } = &self.params {
            params.insert("epsilon".into(), serde_json::Value::from(*epsilon));
        }
        let field = self.params.field();
        serde_json::to_value(RawSpec {
            family: self.params.name().into(),
            d: self.d,
            field: (field != Field::Rational).then_some(field),
            params,
        })
        .expect("serializable")
    }

    /// Parses the wire format. `default_field` applies when the spec has no
    /// `"field"` key; rational parameter text is mapped into that field.
    pub fn from_json(v: &serde_json::Value, default_field: Field) -> Result<FamilySpec, FamilyError> {
        let raw: RawSpec = serde_json::from_value(v.clone()).map_err(|e| FamilyError::BadSpec(e.to_string()))?;
        let field = raw.field.unwrap_or(default_field);
        let get = |k: &str| -> Result<Scalar, FamilyError> {
            let val = raw.params.get(k).ok_or_else(|| FamilyError::BadSpec(format!("missing parameter {k}")))?;
            let text = match val {
                serde_json::Value::String(s) => s.clone(),
                serde_json::Value::Number(n) => n.to_string(),
                _ => return Err(FamilyError::BadSpec(format!("parameter {k} must be a string or integer"))),
            };
            Ok(field.parse_scalar(&text)?)
        };
        let params = match raw.family.as_str() {
            "krawtchouk" => FamilyParams::Krawtchouk { s: get("s")? },
            "bannai_ito" => {
                let eps = raw
                    .params
                    .get("epsilon")
                    .and_then(|e| e.as_i64().or_else(|| e.as_str().and_then(|s| s.parse().ok())))
                    .ok_or_else(|| FamilyError::BadSpec("epsilon must be 1 or -1".into()))?;
                if eps != 1 && eps != -1 {
                    return Err(FamilyError::BadSpec("epsilon must be 1 or -1".into()));
                }
                FamilyParams::BannaiIto { tau: get("tau")?, epsilon: eps as i8 }
            }
            "qracah_compact" => FamilyParams::QRacahCompact { q: get("q")?, s: get("s")? },
            "qracah_lt" => FamilyParams::QRacahLT { q: get("q")?, s: get("s")? },
            "qracah_even" => FamilyParams::QRacahEven { q: get("q")?, s: get("s")? },
            "d1" => FamilyParams::D1 { s: get("s")? },
            "d2a" => FamilyParams::D2a { y: get("y")?, z: get("z")? },
            "d2b" => FamilyParams::D2b { s: get("s")?, t: get("t")?, z: get("z")? },
            other => return Err(FamilyError::BadSpec(format!("unknown family {other:?}"))),
        };
        Ok(FamilySpec { params, d: raw.d })
    }
}
