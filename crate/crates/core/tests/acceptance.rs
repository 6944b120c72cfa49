//! Acceptance suite: one PASS/FAIL line per criterion, exact comparisons only.

use std::process::ExitCode;
use std::time::Instant;

use leonard::awrel::{closed_form_coefficients, system_coefficients, verify_aw_relations, AwCoefficients};
use leonard::classify::{classify, ClassifyError};
use leonard::families::{char_poly_formula, make_family, sign_flip_diagonal, FamilyError, ZeroDiagTD};
use leonard::leonard::{
    analyze, diagonal_from_parameter_array, extract_parameter_array, split_sequence, trace_split_sequence, LeonardSystem,
};
use leonard::parray::{check_admissible, d4_relative, validate, FamilyParams, ParameterArray, ParrayError, D4};
use leonard::{Field, Matrix, Poly, Scalar};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------- grid

fn sc(f: Field, t: &str) -> Scalar {
    f.parse_scalar(t).unwrap()
}

fn grid(f: Field) -> Vec<(FamilyParams, usize)> {
    let mut out = Vec::new();
    for d in 3..=6 {
        for s in ["2", "3", "1/2"] {
            out.push((FamilyParams::Krawtchouk { s: sc(f, s) }, d));
        }
    }
    for d in [4, 6] {
        for tau in ["0", "2"] {
            for epsilon in [1, -1] {
                out.push((FamilyParams::BannaiIto { tau: sc(f, tau), epsilon }, d));
            }
        }
    }
    for d in 3..=5 {
        for q in ["2", "3", "1/2"] {
            for s in ["3", "5", "1/3"] {
                let (q, s) = (sc(f, q), sc(f, s));
                out.push((FamilyParams::QRacahCompact { q: q.clone(), s: s.clone() }, d));
                out.push((FamilyParams::QRacahLT { q: q.clone(), s: s.clone() }, d));
                if d % 2 == 0 {
                    out.push((FamilyParams::QRacahEven { q, s }, d));
                }
            }
        }
    }
    out.retain(|(fam, d)| check_admissible(fam, *d).is_ok());
    out
}

struct Instance {
    fam: FamilyParams,
    d: usize,
    a: Matrix,
    a_star: Matrix,
    systems: Vec<LeonardSystem>,
}

fn instances(f: Field) -> Vec<Instance> {
    grid(f)
        .into_iter()
        .map(|(fam, d)| {
            let (a, a_star) = make_family(&fam, d).unwrap().to_dense();
            let systems = analyze(&a, &a_star).map(|x| x.systems).unwrap_or_default();
            Instance { fam, d, a, a_star, systems }
        })
        .collect()
}

fn label(i: &Instance) -> String {
    let ps: Vec<String> = i.fam.scalars().iter().map(|(k, v)| format!("{k}={v}")).collect();
    format!("{} d={} {}", i.fam.name(), i.d, ps.join(","))
}

// ------------------------------------------------ closed-form oracles
//
// General parametrisations by fundamental parameter, instantiated for each
// family; written independently of the library's array builders.

fn half(f: Field, n: i64) -> Scalar {
    f.ratio(n, 2).unwrap()
}

/// beta = 2 with the given (alpha, mu, h) and tau.
fn affine_array(f: Field, d: usize, (al, mu, h): (&Scalar, &Scalar, &Scalar), tau: &Scalar) -> ParameterArray {
    let di = d as i64;
    let th: Vec<Scalar> = (0..=di)
        .map(|i| &(al + &(mu * &(&f.int(i) - &half(f, di)))) + &(h * &f.int(i * (di - i))))
        .collect();
    let mm = &(mu * mu) / &f.int(2);
    let mut varphi = Vec::new();
    let mut phi = Vec::new();
    for i in 1..=di {
        let w = f.int(i * (di - i + 1));
        let lin = &f.int(i) - &half(f, di + 1);
        let quad = &(h * h) * &f.int((i - 1) * (di - i));
        let cross = &(h * mu) + &(mu * h);
        let anti = &(h * mu) - &(mu * h);
        varphi.push(&w * &(&(&(tau - &mm) + &(&cross * &lin)) + &quad));
        phi.push(&w * &(&(&(tau + &mm) + &(&anti * &lin)) + &quad));
    }
    ParameterArray::new(th.clone(), th, varphi, phi).unwrap()
}

/// beta = -2, d even, with (alpha, sigma, h) and tau.
fn alternating_array(f: Field, d: usize, (al, sg, h): (&Scalar, &Scalar, &Scalar), tau: &Scalar) -> ParameterArray {
    let di = d as i64;
    let th: Vec<Scalar> = (0..=di)
        .map(|i| {
            let lin = h * &(&f.int(i) - &half(f, di));
            if i % 2 == 0 {
                &(al + sg) + &lin
            } else {
                &(al - sg) - &lin
            }
        })
        .collect();
    let mut varphi = Vec::new();
    let mut phi = Vec::new();
    for i in 1..=di {
        let hh = &(h * h) * &(&f.int(i) - &half(f, di + 1));
        let (sh, hs) = (sg * h, sg * h);
        if i % 2 == 0 {
            varphi.push(&f.int(i) * &(&(&(tau - &sh) - &hs) - &hh));
            phi.push(&f.int(i) * &(&(&(tau - &sh) + &hs) + &hh));
        } else {
            let w = f.int(di - i + 1);
            varphi.push(&w * &(&(&(tau + &sh) + &hs) + &hh));
            phi.push(&w * &(&(&(tau + &sh) - &hs) - &hh));
        }
    }
    ParameterArray::new(th.clone(), th, varphi, phi).unwrap()
}

/// beta = q + 1/q with (alpha, mu, h) and tau.
fn geometric_array(q: &Scalar, d: usize, (al, mu, h): (&Scalar, &Scalar, &Scalar), tau: &Scalar) -> ParameterArray {
    let f = q.field();
    let di = d as i64;
    let qp = |k: i64| q.pow(k).unwrap();
    let th: Vec<Scalar> = (0..=di).map(|i| &(al + &(mu * &qp(i))) + &(h * &qp(di - i))).collect();
    let one = f.one();
    let mut varphi = Vec::new();
    let mut phi = Vec::new();
    for i in 1..=di {
        let w = &(&qp(i) - &one) * &(&qp(di - i + 1) - &one);
        varphi.push(&w * &(&(tau - &(&(mu * mu) * &qp(i - 1))) - &(&(h * h) * &qp(di - i))));
        phi.push(&w * &(&(tau - &(&(h * mu) * &qp(i - 1))) - &(&(mu * h) * &qp(di - i))));
    }
    ParameterArray::new(th.clone(), th, varphi, phi).unwrap()
}

fn oracle_array(fam: &FamilyParams, d: usize) -> ParameterArray {
    let f = fam.field();
    let zero = f.zero();
    match fam {
        FamilyParams::Krawtchouk { s } => affine_array(f, d, (&zero, &f.int(-2), &zero), &(s + &s.inv().unwrap())),
        FamilyParams::BannaiIto { tau, .. } => alternating_array(f, d, (&zero, &zero, &f.int(2)), &(&f.int(2) * tau)),
        FamilyParams::QRacahCompact { q, s } | FamilyParams::QRacahLT { q, s } | FamilyParams::QRacahEven { q, s } => {
            let tau = s + &(&q.pow(d as i64 - 1).unwrap() / s);
            geometric_array(q, d, (&zero, &f.one(), &-f.one()), &tau)
        }
        other => panic!("no oracle for {}", other.name()),
    }
}

fn system_with(inst: &Instance, pa: &ParameterArray) -> Option<LeonardSystem> {
    inst.systems
        .iter()
        .find(|s| s.theta() == pa.theta.as_slice() && s.theta_star() == pa.theta_star.as_slice())
        .cloned()
}

// ------------------------------------------------------------ criteria

fn c1_family_grid(insts: &[Instance], fp: &[Instance]) -> Check {
    for inst in insts.iter().chain(fp) {
        ensure(!inst.systems.is_empty(), || format!("{}: not a Leonard pair", label(inst)))?;
        let oracle = oracle_array(&inst.fam, inst.d);
        ensure(validate(&oracle).all_passed(), || format!("{}: oracle array fails validation", label(inst)))?;
        let sys = system_with(inst, &oracle).ok_or_else(|| format!("{}: no system with the closed-form ordering", label(inst)))?;
        let pa = extract_parameter_array(&sys).map_err(|e| format!("{}: {e}", label(inst)))?;
        ensure(pa == oracle, || format!("{}: extracted {pa:?} != closed form", label(inst)))?;
    }
    Ok(format!("{} instances over Q, {} over GF(1000003)", insts.len(), fp.len()))
}

fn c2_char_poly() -> Check {
    let f = Field::Rational;
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let rand_nonzero = |rng: &mut ChaCha8Rng| loop {
        let v = f.ratio(rng.gen_range(-40..=40), rng.gen_range(1..=9)).unwrap();
        if !v.is_zero() {
            return v;
        }
    };
    // Displayed expansions as index sets of z.
    let d5: [(usize, Vec<Vec<usize>>); 3] = [
        (4, vec![vec![1], vec![2], vec![3], vec![4], vec![5]]),
        (2, vec![vec![1, 3], vec![1, 4], vec![1, 5], vec![2, 4], vec![2, 5], vec![3, 5]]),
        (0, vec![vec![1, 3, 5]]),
    ];
    let d6: [(usize, Vec<Vec<usize>>); 3] = [
        (5, (1..=6).map(|i| vec![i]).collect()),
        (
            3,
            vec![
                vec![1, 3], vec![1, 4], vec![1, 5], vec![1, 6], vec![2, 4],
                vec![2, 5], vec![2, 6], vec![3, 5], vec![3, 6], vec![4, 6],
            ],
        ),
        (1, vec![vec![1, 3, 5], vec![1, 3, 6], vec![1, 4, 6], vec![2, 4, 6]]),
    ];
    for (d, terms) in [(5usize, &d5), (6usize, &d6)] {
        for _ in 0..50 {
            let z: Vec<Scalar> = (0..d).map(|_| rand_nonzero(&mut rng)).collect();
            let mut coeffs = vec![f.zero(); d + 2];
            coeffs[d + 1] = f.one();
            for (k, (pow, sets)) in terms.iter().enumerate() {
                let sum = sets
                    .iter()
                    .fold(f.zero(), |acc, s| &acc + &s.iter().fold(f.one(), |p, &i| &p * &z[i - 1]));
                coeffs[*pow] = if k % 2 == 0 { -&sum } else { sum };
            }
            let displayed = Poly::new(f, coeffs);
            let m = ZeroDiagTD::new(vec![f.one(); d], z.clone()).unwrap();
            let formula = char_poly_formula(&m);
            let det = m.to_dense().char_poly();
            ensure(formula == displayed && det == displayed, || format!("d={d} z={z:?}: mismatch with displayed expansion"))?;
        }
    }
    for k in 0..200 {
        let d = 1 + k % 8;
        let sub: Vec<Scalar> = (0..d).map(|_| rand_nonzero(&mut rng)).collect();
        let sup: Vec<Scalar> = (0..d).map(|_| rand_nonzero(&mut rng)).collect();
        let m = ZeroDiagTD::new(sub, sup).unwrap();
        ensure(char_poly_formula(&m) == m.to_dense().char_poly(), || format!("random instance {k} (d={d}) differs"))?;
    }
    Ok("100 worked-example checks, 200 random instances".into())
}

fn perturbations(c: &AwCoefficients) -> Vec<(&'static str, AwCoefficients)> {
    let one = c.beta.field().one();
    let mut out = Vec::new();
    macro_rules! bump {
        ($($field:ident),*) => {$(
            let mut p = c.clone();
            p.$field = &p.$field + &one;
            out.push((stringify!($field), p));
        )*};
    }
    bump!(beta, gamma, gamma_star, rho, rho_star, omega, eta, eta_star);
    out
}

fn c3_askey_wilson(insts: &[Instance]) -> Check {
    let mut perturbed = 0;
    for inst in insts {
        let c = closed_form_coefficients(&inst.fam, inst.d).map_err(|e| format!("{}: {e}", label(inst)))?;
        let f = inst.a.field();
        let expect_rho = match &inst.fam {
            FamilyParams::Krawtchouk { .. } | FamilyParams::BannaiIto { .. } => f.int(4),
            FamilyParams::QRacahCompact { q, .. } | FamilyParams::QRacahLT { q, .. } | FamilyParams::QRacahEven { q, .. } => {
                let t = &(q * q) - &f.one();
                &q.pow(inst.d as i64 - 2).unwrap() * &(&t * &t)
            }
            _ => unreachable!(),
        };
        ensure(c.rho == expect_rho && c.rho_star == expect_rho, || format!("{}: rho = {}", label(inst), c.rho))?;
        ensure(verify_aw_relations(&inst.a, &inst.a_star, &c), || format!("{}: relations fail", label(inst)))?;
        let general = system_coefficients(&inst.systems[0]).map_err(|e| format!("{}: {e}", label(inst)))?;
        ensure(general == c, || format!("{}: general coefficients {general:?} != specialised", label(inst)))?;
        for (name, p) in perturbations(&c) {
            ensure(!verify_aw_relations(&inst.a, &inst.a_star, &p), || format!("{}: still holds with {name} + 1", label(inst)))?;
            perturbed += 1;
        }
    }
    Ok(format!("{} instances, {perturbed} perturbations rejected", insts.len()))
}

fn random_diagonal(f: Field, n: usize, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    (0..n)
        .map(|_| loop {
            let v = f.ratio(rng.gen_range(-9..=9), rng.gen_range(1..=7)).unwrap();
            if !v.is_zero() {
                break v;
            }
        })
        .collect()
}

fn same_tag(a: &FamilyParams, b: &FamilyParams) -> bool {
    a.name() == b.name()
}

fn c4_classifier(insts: &[Instance], fp: &[Instance]) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut runs = 0;
    let mut exact = 0;
    for inst in insts.iter().chain(fp) {
        let f = inst.a.field();
        let mut inputs = vec![("plain".to_string(), inst.a.clone(), inst.a_star.clone())];
        for k in 0..3 {
            let dg = random_diagonal(f, inst.d + 1, &mut rng);
            inputs.push((
                format!("conjugation {k}"),
                inst.a.conjugate_by_diagonal(&dg).unwrap(),
                inst.a_star.conjugate_by_diagonal(&dg).unwrap(),
            ));
        }
        inputs.push(("anti-transpose".into(), inst.a.anti_transpose(), inst.a_star.anti_transpose()));
        for (how, a, b) in inputs {
            let r = classify(&a, &b).map_err(|e| format!("{} ({how}): {e}", label(inst)))?;
            ensure(same_tag(&r.family, &inst.fam), || format!("{} ({how}): classified as {}", label(inst), r.family.name()))?;
            ensure(r.verify(&a, &b), || format!("{} ({how}): witness does not re-verify", label(inst)))?;
            // Direct recomputation of the witness.
            let (fa, fs) = make_family(&r.family, r.d).unwrap().to_dense();
            let (m, ms) = r.transform(&a, &b);
            let dm = Matrix::diagonal(f, &r.diagonal);
            let dinv = dm.inverse().unwrap();
            ensure(&(&dinv * &m) * &dm == fa && &(&dinv * &ms) * &dm == fs, || format!("{} ({how}): D^-1 M D differs", label(inst)))?;
            runs += 1;
            if r.family == inst.fam {
                exact += 1;
            }
        }
    }
    Ok(format!("{runs} classifications verified ({exact} with identical parameters)"))
}

fn c5_small_diameter() -> Check {
    let f = Field::Rational;
    let r = |t: &str| sc(f, t);
    let one = f.one();
    let two = f.int(2);
    let mut reached = std::collections::BTreeSet::new();
    let expect_small = |fam: &FamilyParams| -> ParameterArray {
        let (th, varphi, phi) = match fam {
            FamilyParams::D1 { s } => {
                let t = s + &s.inv().unwrap();
                (vec![one.clone(), -&one], vec![&t - &two], vec![&t + &two])
            }
            FamilyParams::D2a { y, z } => {
                let t = &(y + &one) * z;
                (vec![one.clone(), f.zero(), -&one], vec![&t - &two; 2], vec![t.clone(); 2])
            }
            FamilyParams::D2b { s, t, .. } => {
                let st = s + t;
                let v = &(&(s - &one) * &(t - &one)) / &st;
                let w = &(&(s + &one) * &(t + &one)) / &st;
                (vec![one.clone(), f.zero(), -&one], vec![v; 2], vec![w; 2])
            }
            _ => unreachable!(),
        };
        ParameterArray::new(th.clone(), th, varphi, phi).unwrap()
    };
    let cases: Vec<(FamilyParams, usize)> = vec![
        (FamilyParams::D1 { s: r("2") }, 1),
        (FamilyParams::D1 { s: r("-3/5") }, 1),
        (FamilyParams::D2a { y: r("3"), z: r("2") }, 2),
        (FamilyParams::D2a { y: r("-5/2"), z: r("1/3") }, 2),
        (FamilyParams::D2b { s: r("2"), t: r("3"), z: r("5") }, 2),
        (FamilyParams::D2b { s: r("-1/2"), t: r("7"), z: r("2/3") }, 2),
    ];
    for (fam, d) in &cases {
        let (a, b) = make_family(fam, *d).map_err(|e| format!("{fam:?}: {e}"))?.to_dense();
        let systems = analyze(&a, &b).map_err(|e| e.to_string())?.systems;
        let pa = expect_small(fam);
        let sys = systems
            .iter()
            .find(|s| s.theta() == pa.theta.as_slice() && s.theta_star() == pa.theta_star.as_slice())
            .ok_or_else(|| format!("{fam:?}: no Leonard system with the displayed ordering"))?;
        let got = extract_parameter_array(sys).map_err(|e| e.to_string())?;
        ensure(got == pa, || format!("{fam:?}: array {got:?}"))?;
        for (anti, (x, y)) in [(false, (a.clone(), b.clone())), (true, (a.anti_transpose(), b.anti_transpose()))] {
            let res = classify(&x, &y).map_err(|e| format!("{fam:?} anti={anti}: {e}"))?;
            ensure(same_tag(&res.family, fam) && res.verify(&x, &y), || format!("{fam:?} anti={anti}: got {:?}", res.family))?;
            if *d == 2 {
                let outcome = match (&res.family, res.anti_transpose) {
                    (FamilyParams::D2a { .. }, false) => "d2a",
                    (FamilyParams::D2a { .. }, true) => "anti-transposed d2a",
                    _ => "d2b",
                };
                reached.insert(outcome);
            }
        }
    }
    ensure(reached.len() == 3, || format!("only reached {reached:?}"))?;
    Ok(format!("{} instances; d=2 outcomes {reached:?}", cases.len()))
}

fn c6_parray_calculus(insts: &[Instance]) -> Check {
    for (k, inst) in insts.iter().enumerate() {
        let sys = &inst.systems[0];
        let pa = extract_parameter_array(sys).map_err(|e| e.to_string())?;
        if k < 10 {
            for m in [D4::Down, D4::DoubleDown, D4::DownDoubleDown] {
                let rel = extract_parameter_array(&sys.relative(m)).map_err(|e| e.to_string())?;
                ensure(rel == d4_relative(&pa, m), || format!("{}: {m:?} relative differs", label(inst)))?;
            }
        }
        let a: Vec<Scalar> = sys.e_star.idempotents.iter().map(|e| (e * &sys.a).trace()).collect();
        let a_star: Vec<Scalar> = sys.e.idempotents.iter().map(|e| (e * &sys.a_star).trace()).collect();
        ensure((a, a_star) == diagonal_from_parameter_array(&pa), || format!("{}: a_i identities fail", label(inst)))?;
        let (varphi, _) = split_sequence(sys).map_err(|e| e.to_string())?;
        let (phi_down, _) = split_sequence(&sys.relative(D4::DoubleDown)).map_err(|e| e.to_string())?;
        let (tv, tp) = trace_split_sequence(sys).map_err(|e| e.to_string())?;
        ensure(tv == varphi && tp == phi_down, || format!("{}: trace split sequences differ", label(inst)))?;
    }
    Ok(format!("D4 table on 10 instances; a_i and trace formulas on {}", insts.len()))
}

fn c7_opposite_symmetry(insts: &[Instance]) -> Check {
    for inst in insts {
        let d = inst.d;
        for sys in &inst.systems {
            let pa = extract_parameter_array(sys).map_err(|e| e.to_string())?;
            let anti = |v: &[Scalar]| (0..=d).all(|i| v[d - i] == -&v[i]);
            let pal = |v: &[Scalar]| (0..d).all(|i| v[i] == v[d - 1 - i]);
            ensure(anti(&pa.theta) && anti(&pa.theta_star) && pal(&pa.varphi) && pal(&pa.phi), || {
                format!("{}: array not opposite-symmetric", label(inst))
            })?;
        }
        let dg = sign_flip_diagonal(inst.a.field(), d + 1);
        let minus_one = -inst.a.field().one();
        ensure(
            inst.a.conjugate_by_diagonal(&dg).unwrap() == inst.a.scale(&minus_one)
                && inst.a_star.conjugate_by_diagonal(&dg).unwrap() == inst.a_star.scale(&minus_one),
            || format!("{}: sign flip does not negate", label(inst)),
        )?;
    }
    Ok(format!("{} instances, all four systems each", insts.len()))
}

fn expect_inadmissible(fam: FamilyParams, d: usize, needle: &str) -> Result<(), String> {
    match make_family(&fam, d) {
        Err(FamilyError::Params(ParrayError::InadmissibleParams(msg))) if msg.contains(needle) => Ok(()),
        other => Err(format!("{fam:?} d={d}: expected InadmissibleParams({needle}), got {other:?}")),
    }
}

fn c8_negative() -> Check {
    let f = Field::Rational;
    expect_inadmissible(FamilyParams::Krawtchouk { s: f.int(1) }, 4, "s^2 = 1")?;
    expect_inadmissible(FamilyParams::Krawtchouk { s: f.int(-1) }, 3, "s^2 = 1")?;
    expect_inadmissible(FamilyParams::BannaiIto { tau: f.int(3), epsilon: 1 }, 4, "tau = 3")?;
    expect_inadmissible(FamilyParams::QRacahCompact { q: f.int(2), s: f.int(4) }, 3, "s^2 = q^(2i)")?;
    expect_inadmissible(FamilyParams::QRacahLT { q: f.int(3), s: f.int(-9) }, 4, "s^2 = q^(2i)")?;
    let f2 = Field::prime(2).unwrap();
    expect_inadmissible(FamilyParams::Krawtchouk { s: f2.one() }, 3, "characteristic 2")?;
    expect_inadmissible(FamilyParams::D1 { s: f2.one() }, 1, "characteristic 2")?;

    let (a, b) = make_family(&FamilyParams::Krawtchouk { s: f.int(2) }, 3).unwrap().to_dense();
    let mut bad = b.clone();
    bad.set(1, 0, b.get(1, 0) * &f.int(2));
    bad.set(0, 1, b.get(0, 1) / &f.int(2));
    let condition = match classify(&a, &bad) {
        Err(ClassifyError::NotLeonardPair { condition, .. }) => condition,
        other => return Err(format!("perturbed pair: expected NotLeonardPair, got {other:?}")),
    };
    Ok(format!("5 admissibility violations, characteristic 2 twice, perturbed pair fails '{condition}'"))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let insts = instances(Field::Rational);
    let fp = instances(Field::prime(1_000_003).unwrap());
    let criteria: Vec<(&str, Box<dyn Fn() -> Check + '_>)> = vec![
        ("family verification grid", Box::new(|| c1_family_grid(&insts, &fp))),
        ("characteristic polynomial", Box::new(c2_char_poly)),
        ("Askey-Wilson relations", Box::new(|| c3_askey_wilson(&insts))),
        ("classifier round trip", Box::new(|| c4_classifier(&insts, &fp))),
        ("diameters one and two", Box::new(c5_small_diameter)),
        ("parameter-array calculus", Box::new(|| c6_parray_calculus(&insts))),
        ("opposite symmetry", Box::new(|| c7_opposite_symmetry(&insts))),
        ("negative cases", Box::new(c8_negative)),
    ];
    let mut failures = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = t.elapsed().as_secs_f64();
        match result {
            Ok(msg) => println!("PASS {}. {name}: {msg} [{secs:.1}s]", k + 1),
            Err(msg) => {
                failures += 1;
                println!("FAIL {}. {name}: {msg} [{secs:.1}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed in {:.1}s", criteria.len() - failures, criteria.len(), start.elapsed().as_secs_f64());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
