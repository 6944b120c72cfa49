//! Command-line front end. Every command reads and writes JSON with scalars
//! as strings; object keys come out sorted.

use std::collections::BTreeMap;
use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::awrel::{aw_residuals, aw_tridiagonality_check, closed_form_coefficients, system_coefficients, verify_aw_relations};
use crate::classify::{aw_entry_equations, classify, ClassifyError};
use crate::families::{char_poly_formula, FamilySpec, TDTDPair, ZeroDiagTD};
use crate::leonard::{analyze, extract_parameter_array, LeonardError};
use crate::linalg::Matrix;
use crate::parray::{
    check_admissible, closed_form, d4_relative, fundamental_beta, is_opposite_symmetric, validate, FamilyParams,
    ParameterArray, D4,
};
use crate::scalars::{Field, Scalar};

#[derive(Debug, Parser)]
#[command(name = "leonard", version, about = "Zero-diagonal TD-TD Leonard pairs in exact arithmetic")]
pub struct Cli {
    /// Working field: Q or Fp:<p>.
    #[arg(long, global = true, default_value = "Q")]
    pub field: Field,
    /// Input JSON file (standard input if omitted).
    #[arg(long = "in", global = true)]
    pub input: Option<PathBuf>,
    /// Output file (standard output if omitted).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Diameter override for `construct`; filter for `corpus`.
    #[arg(long, global = true)]
    pub d: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Family spec -> dense matrix pair.
    Construct,
    /// Matrix pair -> Leonard pair report and parameter array.
    Verify,
    /// Matrix pair -> family, scalars, diagonal witness and transcript.
    Classify,
    /// Parameter array -> condition report, beta, D4 relatives.
    Parray,
    /// Matrix pair -> Askey-Wilson coefficients and residuals.
    Awcheck,
    /// Zero-diagonal TD bands -> characteristic polynomial two ways.
    Charpoly,
    /// Runs the full family grid and prints a summary to standard error.
    Corpus,
}

/// A command's JSON result; `ok` is false when a check failed.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub value: Value,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Unreadable input or field problems (exit status 2).
    Input { kind: &'static str, message: String },
    /// A mathematical check failed before a report could be produced (exit status 1).
    Failure { kind: &'static str, message: String },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Failure { .. } => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Input { kind, message } | CliError::Failure { kind, message } => (kind, message),
        };
        json!({"error": kind, "message": message})
    }
}

fn input_err(kind: &'static str, e: impl ToString) -> CliError {
    CliError::Input { kind, message: e.to_string() }
}

fn failure(kind: &'static str, e: impl ToString) -> CliError {
    CliError::Failure { kind, message: e.to_string() }
}

fn leonard_err(e: LeonardError) -> CliError {
    match e {
        LeonardError::FieldExtensionRequired => input_err("FieldExtensionRequired", e),
        LeonardError::Linalg(_) => input_err("BadInput", e),
        other => failure("LeonardError", other),
    }
}

/// Parses the CLI, runs it against the real filesystem and returns the exit status.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    run(&cli)
}

pub fn run(cli: &Cli) -> i32 {
    let result = read_input(cli).and_then(|text| dispatch(cli.command, cli.field, cli.d, &text));
    match result {
        Ok(out) => {
            let text = serde_json::to_string_pretty(&out.value).expect("serializable") + "\n";
            let written = match &cli.out {
                Some(p) => std::fs::write(p, text).map_err(|e| input_err("Io", e)),
                None => {
                    print!("{text}");
                    Ok(())
                }
            };
            match written {
                Ok(()) if out.ok => 0,
                Ok(()) => 1,
                Err(e) => report(&e),
            }
        }
        Err(e) => report(&e),
    }
}

fn report(e: &CliError) -> i32 {
    eprintln!("{}", e.to_json());
    e.exit_code()
}

fn read_input(cli: &Cli) -> Result<String, CliError> {
    if cli.command == Command::Corpus {
        return Ok(String::new());
    }
    match &cli.input {
        Some(p) => std::fs::read_to_string(p).map_err(|e| input_err("Io", format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(|e| input_err("Io", e))?;
            Ok(s)
        }
    }
}

/// Runs one command on already-read input text.
pub fn dispatch(cmd: Command, field: Field, d: Option<usize>, input: &str) -> Result<Outcome, CliError> {
    let parse = || serde_json::from_str::<Value>(input).map_err(|e| input_err("ParseError", e));
    match cmd {
        Command::Construct => construct(&parse()?, field, d),
        Command::Verify => verify(&parse()?, field),
        Command::Classify => classify_cmd(&parse()?, field),
        Command::Parray => parray_cmd(&parse()?, field),
        Command::Awcheck => awcheck(&parse()?, field),
        Command::Charpoly => charpoly(&parse()?, field),
        Command::Corpus => Ok(corpus(field, d)),
    }
}

fn matrix_from(v: &Value, key: &str, field: Field) -> Result<Matrix, CliError> {
    let mut m = v.get(key).cloned().ok_or_else(|| input_err("ParseError", format!("missing key {key:?}")))?;
    if let Value::Object(obj) = &mut m {
        obj.entry("field").or_insert_with(|| Value::String(field.to_string()));
    }
    serde_json::from_value(m).map_err(|e| input_err("ParseError", format!("{key}: {e}")))
}

fn pair_from(v: &Value, field: Field) -> Result<(Matrix, Matrix), CliError> {
    let a = matrix_from(v, "a", field)?;
    let b = matrix_from(v, "a_star", field)?;
    if a.field() != b.field() {
        return Err(input_err("FieldMismatch", format!("a is over {} but a_star over {}", a.field(), b.field())));
    }
    if a.dim() != b.dim() {
        return Err(input_err("DimensionMismatch", format!("{} vs {}", a.dim(), b.dim())));
    }
    Ok((a, b))
}

fn pair_json(a: &Matrix, b: &Matrix) -> Value {
    json!({"a": a, "a_star": b})
}

fn scalar_list(v: &Value, key: &str, field: Field) -> Result<Vec<Scalar>, CliError> {
    let arr = v
        .get(key)
        .and_then(Value::as_array)
        .ok_or_else(|| input_err("ParseError", format!("missing list {key:?}")))?;
    arr.iter()
        .map(|x| {
            let text = match x {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.to_string(),
                other => return Err(input_err("ParseError", format!("{key}: not a scalar: {other}"))),
            };
            field.parse_scalar(&text).map_err(|e| input_err("ParseError", format!("{key}: {e}")))
        })
        .collect()
}

fn field_of(v: &Value, default: Field) -> Result<Field, CliError> {
    match v.get("field") {
        None => Ok(default),
        Some(Value::String(s)) => s.parse().map_err(|e| input_err("FieldError", e)),
        Some(other) => Err(input_err("FieldError", format!("bad field {other}"))),
    }
}

fn construct(v: &Value, field: Field, d: Option<usize>) -> Result<Outcome, CliError> {
    let mut spec = FamilySpec::from_json(v, field).map_err(|e| input_err("BadSpec", e))?;
    if let Some(d) = d {
        spec.d = d;
    }
    let pair = spec.build().map_err(|e| failure("InadmissibleParams", e))?;
    let (a, b) = pair.to_dense();
    let mut out = pair_json(&a, &b);
    out["family"] = spec.to_json();
    Ok(Outcome { value: out, ok: true })
}

fn verify(v: &Value, field: Field) -> Result<Outcome, CliError> {
    let (a, b) = pair_from(v, field)?;
    let analysis = analyze(&a, &b).map_err(leonard_err)?;
    let pa = match analysis.systems.first() {
        Some(sys) => Some(extract_parameter_array(sys).map_err(leonard_err)?),
        None => None,
    };
    let mut out = pair_json(&a, &b);
    out["leonard_pair"] = json!(analysis.report.leonard_pair);
    out["report"] = json!(analysis.report);
    out["parameter_array"] = json!(pa);
    Ok(Outcome { value: out, ok: analysis.report.leonard_pair })
}

fn classify_cmd(v: &Value, field: Field) -> Result<Outcome, CliError> {
    let (a, b) = pair_from(v, field)?;
    match classify(&a, &b) {
        Ok(r) => {
            let verified = r.verify(&a, &b);
            let mut out = r.to_json();
            out["verified"] = json!(verified);
            Ok(Outcome { value: out, ok: verified })
        }
        Err(e) => Err(match &e {
            ClassifyError::NotZeroDiagTD(_) => input_err("NotZeroDiagTD", e),
            ClassifyError::FieldExtensionRequired(_) => input_err("FieldExtensionRequired", e),
            ClassifyError::CharacteristicTooSmall { .. } => input_err("CharacteristicTooSmall", e),
            ClassifyError::DiameterTooSmall(_) => input_err("DiameterTooSmall", e),
            ClassifyError::NotLeonardPair { .. } => failure("NotLeonardPair", e),
            ClassifyError::RootOfUnityQ { .. } => failure("RootOfUnityQ", e),
            _ => failure("ClassificationFailed", e),
        }),
    }
}

fn parray_cmd(v: &Value, field: Field) -> Result<Outcome, CliError> {
    let field = field_of(v, field)?;
    let pa = ParameterArray::new(
        scalar_list(v, "theta", field)?,
        scalar_list(v, "theta_star", field)?,
        scalar_list(v, "varphi", field)?,
        scalar_list(v, "phi", field)?,
    )
    .map_err(|e| input_err("Malformed", e))?;
    if let Some(d) = v.get("d").and_then(Value::as_u64) {
        if d as usize != pa.d() {
            return Err(input_err("Malformed", format!("d = {d} but theta has {} entries", pa.d() + 1)));
        }
    }
    let report = validate(&pa);
    let relatives: BTreeMap<String, ParameterArray> = [D4::Down, D4::DoubleDown, D4::DownDoubleDown]
        .into_iter()
        .map(|m| (serde_json::to_value(m).unwrap().as_str().unwrap().to_string(), d4_relative(&pa, m)))
        .collect();
    let ok = report.all_passed();
    Ok(Outcome {
        value: json!({
            "parameter_array": pa,
            "valid": ok,
            "report": report,
            "beta": fundamental_beta(&pa).ok(),
            "d4_relatives": relatives,
            "opposite_symmetric": is_opposite_symmetric(&pa),
        }),
        ok,
    })
}

fn awcheck(v: &Value, field: Field) -> Result<Outcome, CliError> {
    let (a, b) = pair_from(v, field)?;
    let analysis = analyze(&a, &b).map_err(leonard_err)?;
    let Some(sys) = analysis.systems.first() else {
        let cond = analysis.report.first_failure().map(|c| c.condition).unwrap_or("no system");
        return Err(failure("NotLeonardPair", cond));
    };
    let c = system_coefficients(sys).map_err(|e| failure("AwError", e))?;
    let holds = verify_aw_relations(&a, &b, &c);
    let (r1, r2) = aw_residuals(&a, &b, &c);
    let violations = aw_tridiagonality_check(sys.theta(), &c);
    let entry = TDTDPair::from_dense(&a, &b)
        .ok()
        .zip(extract_parameter_array(sys).ok())
        .map(|((pair, _), pa)| aw_entry_equations(&pair, &c, &pa).all_zero());
    Ok(Outcome {
        value: json!({
            "coefficients": c,
            "relations_hold": holds,
            "residuals": {"first": r1, "second": r2},
            "tridiagonality_violations": violations,
            "entry_equations_vanish": entry,
        }),
        ok: holds,
    })
}

fn charpoly(v: &Value, field: Field) -> Result<Outcome, CliError> {
    let field = field_of(v, field)?;
    let m = ZeroDiagTD::new(scalar_list(v, "sub", field)?, scalar_list(v, "sup", field)?).map_err(|e| input_err("NotZeroDiagTD", e))?;
    let formula = char_poly_formula(&m);
    let det = m.to_dense().char_poly();
    let equal = formula == det;
    Ok(Outcome { value: json!({"formula": formula, "determinant": det, "equal": equal}), ok: equal })
}

/// The acceptance grid of family instances, restricted to admissible ones.
pub fn corpus_grid(field: Field) -> Vec<FamilySpec> {
    let p = |t: &str| field.parse_scalar(t).ok();
    let mut out = Vec::new();
    let mut add = |fam: Option<FamilyParams>, d: usize| {
        if let Some(f) = fam {
            if check_admissible(&f, d).is_ok() {
                out.push(FamilySpec::new(f, d));
            }
        }
    };
    for d in 3..=6 {
        for s in ["2", "3", "1/2"] {
            add(p(s).map(|s| FamilyParams::Krawtchouk { s }), d);
        }
    }
    for d in [4, 6] {
        for tau in ["0", "2"] {
            for epsilon in [1, -1] {
                add(p(tau).map(|tau| FamilyParams::BannaiIto { tau, epsilon }), d);
            }
        }
    }
    for d in 3..=5 {
        for q in ["2", "3", "1/2"] {
            for s in ["3", "5", "1/3"] {
                let (Some(q), Some(s)) = (p(q), p(s)) else { continue };
                add(Some(FamilyParams::QRacahCompact { q: q.clone(), s: s.clone() }), d);
                add(Some(FamilyParams::QRacahLT { q: q.clone(), s: s.clone() }), d);
                if d % 2 == 0 {
                    add(Some(FamilyParams::QRacahEven { q, s }), d);
                }
            }
        }
    }
    for s in ["2", "3"] {
        add(p(s).map(|s| FamilyParams::D1 { s }), 1);
    }
    add(p("3").zip(p("2")).map(|(y, z)| FamilyParams::D2a { y, z }), 2);
    add(p("5").zip(p("1/2")).map(|(y, z)| FamilyParams::D2a { y, z }), 2);
    if let (Some(s), Some(t), Some(z)) = (p("2"), p("3"), p("5")) {
        add(Some(FamilyParams::D2b { s, t, z }), 2);
    }
    out
}

/// Checks one grid instance end to end.
pub fn corpus_record(spec: &FamilySpec) -> Value {
    let mut rec = json!({"family": spec.to_json()});
    let Ok(pair) = spec.build() else {
        rec["error"] = json!("construction failed");
        rec["ok"] = json!(false);
        return rec;
    };
    let (a, b) = pair.to_dense();
    let systems = analyze(&a, &b).map(|an| an.systems).unwrap_or_default();
    let closed = closed_form(&spec.params, spec.d).ok();
    let parray_matches = closed.as_ref().is_some_and(|pa| {
        systems
            .iter()
            .filter(|s| s.theta() == pa.theta.as_slice() && s.theta_star() == pa.theta_star.as_slice())
            .any(|s| extract_parameter_array(s).ok().as_ref() == Some(pa))
    });
    let aw = if spec.d >= 3 {
        closed_form_coefficients(&spec.params, spec.d).ok().map(|c| verify_aw_relations(&a, &b, &c))
    } else {
        None
    };
    let classified = classify(&a, &b);
    let witness_ok = classified.as_ref().is_ok_and(|r| r.verify(&a, &b));
    let ok = !systems.is_empty() && parray_matches && aw != Some(false) && witness_ok;
    rec["leonard_pair"] = json!(!systems.is_empty());
    rec["parray_matches_closed_form"] = json!(parray_matches);
    rec["aw_relations_hold"] = json!(aw);
    rec["classified_as"] = match &classified {
        Ok(r) => FamilySpec::new(r.family.clone(), r.d).to_json(),
        Err(e) => json!({"error": e.to_string()}),
    };
    rec["witness_verified"] = json!(witness_ok);
    rec["ok"] = json!(ok);
    rec
}

fn corpus(field: Field, d: Option<usize>) -> Outcome {
    let grid: Vec<FamilySpec> = corpus_grid(field).into_iter().filter(|s| d.is_none_or(|d| s.d == d)).collect();
    let records: Vec<Value> = grid.par_iter().map(corpus_record).collect();
    let mut table: BTreeMap<&str, (usize, usize)> = BTreeMap::new();
    for (spec, rec) in grid.iter().zip(&records) {
        let e = table.entry(spec.params.name()).or_default();
        e.1 += 1;
        if rec["ok"] == json!(true) {
            e.0 += 1;
        }
    }
    eprintln!("{:<16} {:>6} {:>6}", "family", "passed", "total");
    for (name, (pass, total)) in &table {
        eprintln!("{name:<16} {pass:>6} {total:>6}");
    }
    let ok = table.values().all(|(p, t)| p == t);
    Outcome { value: json!({"field": field, "instances": records}), ok }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_text(cmd: Command, input: &str) -> Result<Outcome, CliError> {
        dispatch(cmd, Field::Rational, None, input)
    }

    #[test]
    fn construct_verify_classify_pipeline() {
        let built = run_text(Command::Construct, r#"{"family":"krawtchouk","d":3,"params":{"s":"2"}}"#).unwrap();
        assert_eq!(built.value["a"]["entries"][0][1], "3");
        assert_eq!(built.value["a"]["entries"][1][2], "4");
        let verified = run_text(Command::Verify, &built.value.to_string()).unwrap();
        assert!(verified.ok);
        let classified = run_text(Command::Classify, &verified.value.to_string()).unwrap();
        assert!(classified.ok);
        assert_eq!(classified.value["family"]["family"], "krawtchouk");
        let s = classified.value["family"]["params"]["s"].as_str().unwrap();
        assert!(s == "2" || s == "1/2");
    }

    #[test]
    fn error_kinds() {
        let e = run_text(Command::Verify, "not json").unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run_text(Command::Construct, r#"{"family":"krawtchouk","d":3,"params":{"s":"1"}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        let e = dispatch(Command::Charpoly, "Fp:6".parse().unwrap_or(Field::Rational), None, r#"{"field":"Fp:6","sub":["1"],"sup":["1"]}"#)
            .unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn charpoly_and_parray() {
        let out = run_text(Command::Charpoly, r#"{"sub":["1","1","1"],"sup":["2","3","5"]}"#).unwrap();
        assert!(out.ok);
        let pa = r#"{"theta":["1","-1"],"theta_star":["1","-1"],"varphi":["1/2"],"phi":["9/2"]}"#;
        let out = run_text(Command::Parray, pa).unwrap();
        assert!(out.ok);
        assert_eq!(out.value["opposite_symmetric"], true);
    }

    #[test]
    fn prime_field_flag_coerces() {
        let f = Field::prime(101).unwrap();
        let out = dispatch(Command::Construct, f, Some(4), r#"{"family":"krawtchouk","d":3,"params":{"s":"1/2"}}"#).unwrap();
        assert_eq!(out.value["a"]["dim"], 5);
        assert_eq!(out.value["a"]["field"], "Fp:101");
    }
}
