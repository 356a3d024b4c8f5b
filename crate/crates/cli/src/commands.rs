use std::io::Read;
use std::path::Path;

use serde_json::{json, Value};

use rekit::baxter::{a_spectral, check_spectral_re, check_spectral_ybe, s_spectral, SPECTRAL_VAR};
use rekit::json::{check_report, document, FamilyJson, MatrixJson};
use rekit::kmatrix::{assemble, classify, enumerate_families, minimal_polynomial_class};
use rekit::rmatrix::{r_breve, r_graded, s_hat};
use rekit::verifier::{
    check_braid, check_hecke, check_re, check_re_graded, check_ybe, lemma_equivalence,
    lemma_system_residuals, support_pattern_crosscheck, DEFAULT_BOUND,
};
use rekit::{
    CheckMode, Classification, Grading, KFamily, KParams, MinimalPolynomialClass, Scalar,
    SquareMatrix,
};

use crate::{Check, ClassifyArgs, Command, CrosscheckArgs, MemberArgs, Mode, VerifyArgs};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] rekit::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
}

type Result<T> = std::result::Result<T, CliError>;

/// A JSON document and whether the command succeeded.
pub struct Output {
    pub doc: Value,
    pub ok: bool,
}

impl Output {
    fn ok(doc: Value) -> Output {
        Output { doc, ok: true }
    }
}

pub fn run(cmd: Command) -> Result<Output> {
    match cmd {
        Command::GenR(a) => {
            let g = grading(&a.grading)?;
            Ok(Output::ok(document(json!({
                "grading": g.to_string(),
                "matrix": MatrixJson::from_tensor(&r_breve(&g)).to_value(),
            }))))
        }
        Command::GenS(a) => {
            let g = grading(&a.grading)?;
            Ok(Output::ok(document(json!({
                "grading": g.to_string(),
                "matrix": MatrixJson::from_tensor(s_hat(&g).matrix()).to_value(),
            }))))
        }
        Command::Families(a) => families(&grading(&a.grading)?),
        Command::Assemble(a) => assemble_cmd(&a),
        Command::Verify(a) => verify(&a),
        Command::Crosscheck(a) => crosscheck(&a),
        Command::Baxterize(a) => baxterize(&a),
        Command::Classify(a) => classify_cmd(&a),
    }
}

fn grading(s: &str) -> Result<Grading> {
    s.parse().map_err(|_| {
        CliError::Usage(format!(
            "invalid grading `{s}`: expected a string over 0 and 1"
        ))
    })
}

fn family_value(f: &KFamily, n: usize, p: Option<&KParams>) -> Value {
    let mut v = FamilyJson::new(f, n, p).to_value();
    v["descriptor"] = json!(f.to_string());
    v
}

fn families(g: &Grading) -> Result<Output> {
    let n = g.dim();
    let list: Vec<Value> = enumerate_families(g)
        .iter()
        .map(|f| family_value(f, n, None))
        .collect();
    Ok(Output::ok(document(json!({
        "grading": g.to_string(),
        "families": list,
    }))))
}

/// The descriptor with generic parameters, overridden by `--param`.
fn member(
    g: &Grading,
    family: &str,
    overrides: &[String],
) -> Result<(KFamily, KParams, SquareMatrix)> {
    let n = g.dim();
    let f: KFamily = family.parse()?;
    f.validate(g)?;
    let mut p = KParams::generic(&f, n);
    for item in overrides {
        let (name, value) = item
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("parameter `{item}` is not NAME=VALUE")))?;
        let value = Scalar::parse_infer(value.trim())?;
        match name.trim() {
            "lambda" => p.lambda = value,
            "mu" if p.mu.is_some() => p.mu = Some(value),
            other => {
                let slot = other
                    .strip_prefix('y')
                    .and_then(|i| i.parse::<usize>().ok())
                    .and_then(|i| p.y.get_mut(&i));
                match slot {
                    Some(y) => *y = value,
                    None => {
                        return Err(CliError::Usage(format!(
                            "`{other}` is not a parameter of {f}"
                        )))
                    }
                }
            }
        }
    }
    let a = assemble(&f, &p, n)?;
    Ok((f, p, a))
}

fn require_family(a: &MemberArgs) -> Result<&str> {
    a.family
        .as_deref()
        .ok_or_else(|| CliError::Usage("--family is required".into()))
}

fn assemble_cmd(a: &MemberArgs) -> Result<Output> {
    let g = grading(&a.grading)?;
    let (f, p, m) = member(&g, require_family(a)?, &a.params)?;
    Ok(Output::ok(document(json!({
        "grading": g.to_string(),
        "family": family_value(&f, g.dim(), Some(&p)),
        "matrix": MatrixJson::from_square(&m).to_value(),
    }))))
}

/// A bare matrix document, or any document with a `matrix` field.
fn read_matrix(path: Option<&Path>) -> Result<SquareMatrix> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)?,
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let v: Value = serde_json::from_str(&text)?;
    let doc = if v.get("matrix").is_some() {
        &v["matrix"]
    } else {
        &v
    };
    Ok(MatrixJson::from_value(doc)?.to_square()?)
}

fn mode(a: &VerifyArgs) -> CheckMode {
    match a.mode {
        Mode::Symbolic => CheckMode::Symbolic,
        Mode::Random => CheckMode::Random {
            seed: a.seed,
            trials: a.trials,
            bound: DEFAULT_BOUND,
        },
    }
}

fn verify(a: &VerifyArgs) -> Result<Output> {
    let g = grading(&a.member.grading)?;
    let n = g.dim();
    let mode = mode(a);
    let name = match a.check {
        Check::Hecke => "hecke",
        Check::Braid => "braid",
        Check::Ybe => "ybe",
        Check::Re => "re",
        Check::ReGraded => "re-graded",
        Check::Lemma => "lemma",
        Check::SpectralYbe => "spectral-ybe",
        Check::SpectralRe => "spectral-re",
    };
    let k_matrix = || -> Result<(SquareMatrix, Option<(KFamily, KParams)>)> {
        match (&a.matrix, &a.member.family) {
            (Some(path), _) => {
                let m = read_matrix(Some(path))?;
                if m.n() != n {
                    return Err(CliError::Usage(format!(
                        "matrix has dimension {} but the grading has {n}",
                        m.n()
                    )));
                }
                Ok((m, None))
            }
            (None, Some(f)) => {
                let (f, p, m) = member(&g, f, &a.member.params)?;
                Ok((m, Some((f, p))))
            }
            (None, None) => Err(CliError::Usage(format!(
                "`verify {name}` needs --family or --matrix"
            ))),
        }
    };
    let residual = match a.check {
        Check::Hecke => check_hecke(s_hat(&g).matrix(), mode)?,
        Check::Braid => check_braid(s_hat(&g).matrix(), mode)?,
        Check::Ybe => check_ybe(&r_breve(&g), mode)?,
        Check::Re => check_re(s_hat(&g).matrix(), &k_matrix()?.0, mode)?,
        Check::ReGraded => check_re_graded(&r_graded(&g), &k_matrix()?.0, &g, mode)?,
        Check::SpectralYbe => check_spectral_ybe(&s_hat(&g), mode)?,
        Check::SpectralRe => {
            let (m, fp) = k_matrix()?;
            let (f, p) = fp.ok_or_else(|| {
                CliError::Usage("`verify spectral-re` needs --family to choose the branch".into())
            })?;
            check_spectral_re(&s_hat(&g), &a_spectral(&m, &f, &p)?, mode)?
        }
        Check::Lemma => return lemma(&g, &k_matrix()?.0),
    };
    let mut doc = check_report(name, &g, &residual);
    if let Some(f) = &a.member.family {
        doc["family"] = json!(f);
    }
    Ok(Output {
        doc,
        ok: residual.is_zero,
    })
}

fn lemma(g: &Grading, a: &SquareMatrix) -> Result<Output> {
    let residuals = lemma_system_residuals(a, g)?;
    let first = residuals.iter().find(|r| !r.value.is_zero());
    let witness = first.map(|r| {
        json!({
            "equation": r.equation.name(),
            "indices": r.indices,
            "value": r.value.to_canonical_string(),
        })
    });
    Ok(Output {
        doc: document(json!({
            "check": "lemma",
            "grading": g.to_string(),
            "mode": "symbolic",
            "equations": residuals.len(),
            "zero": first.is_none(),
            "witness": witness,
        })),
        ok: first.is_none(),
    })
}

fn crosscheck(a: &CrosscheckArgs) -> Result<Output> {
    let gradings = match (&a.grading, a.n) {
        (Some(g), _) => vec![grading(g)?],
        (None, Some(n)) if n >= 1 => Grading::all(n),
        _ => return Err(CliError::Usage("--n must be at least 1".into())),
    };
    let mut results = Vec::new();
    let mut all_passed = true;
    for g in &gradings {
        let report = support_pattern_crosscheck(g, a.seed)?;
        let lemma = lemma_equivalence(g, a.samples, a.seed)?;
        let passed = report.passed() && lemma.passed();
        all_passed &= passed;
        let patterns: Vec<Value> = report
            .patterns
            .iter()
            .map(|p| {
                json!({
                    "pairs": p.pair.pairs().map(|(i, s)| [i, s]).collect::<Vec<_>>(),
                    "status": format!("{:?}", p.status).to_lowercase(),
                    "expected_solvable": p.expected_solvable(),
                    "families": p.families.iter().map(|f| f.to_string()).collect::<Vec<_>>(),
                    "parametrization_ok": p.parametrization_ok,
                    "violations": p.violations.iter().map(|v| json!({
                        "family": v.family.to_string(),
                        "relation": v.relation,
                        "detected": v.detected,
                    })).collect::<Vec<_>>(),
                    "passed": p.passed(),
                })
            })
            .collect();
        results.push(json!({
            "grading": g.to_string(),
            "patterns": patterns,
            "lemma": {
                "samples": lemma.samples,
                "solutions": lemma.solutions,
                "disagreements": lemma.disagreements.len(),
            },
            "passed": passed,
        }));
    }
    Ok(Output {
        doc: document(json!({
            "check": "crosscheck",
            "seed": a.seed,
            "results": results,
            "passed": all_passed,
        })),
        ok: all_passed,
    })
}

fn baxterize(a: &MemberArgs) -> Result<Output> {
    let g = grading(&a.grading)?;
    let s = s_hat(&g);
    let Some(family) = &a.family else {
        let sx = s_spectral(&s)?;
        return Ok(Output::ok(document(json!({
            "grading": g.to_string(),
            "spectral_variable": SPECTRAL_VAR,
            "matrix": MatrixJson::from_tensor(&sx.value).to_value(),
        }))));
    };
    let (f, p, m) = member(&g, family, &a.params)?;
    let class = match minimal_polynomial_class(&f, g.dim()) {
        MinimalPolynomialClass::Quadratic => "quadratic",
        MinimalPolynomialClass::Cubic => "cubic",
    };
    let ax = a_spectral(&m, &f, &p)?;
    Ok(Output::ok(document(json!({
        "grading": g.to_string(),
        "family": family_value(&f, g.dim(), Some(&p)),
        "class": class,
        "spectral_variable": SPECTRAL_VAR,
        "matrix": MatrixJson::from_square(&ax.value).to_value(),
    }))))
}

fn classify_cmd(a: &ClassifyArgs) -> Result<Output> {
    let g = grading(&a.grading)?;
    let m = read_matrix(a.matrix.as_deref())?;
    if m.n() != g.dim() {
        return Err(CliError::Usage(format!(
            "matrix has dimension {} but the grading has {}",
            m.n(),
            g.dim()
        )));
    }
    let n = g.dim();
    let (body, ok) = match classify(&m, &g) {
        Classification::Member(f, p) => (
            json!({"result": "member", "family": family_value(&f, n, Some(&p))}),
            true,
        ),
        Classification::Unsplit {
            family,
            trace,
            product,
            y,
        } => (
            json!({
                "result": "unsplit",
                "family": family_value(&family, n, None),
                "trace": trace.to_canonical_string(),
                "product": product.to_canonical_string(),
                "y": y.iter().map(|(i, v)| (i.to_string(), json!(v.to_canonical_string()))).collect::<serde_json::Map<_, _>>(),
            }),
            true,
        ),
        Classification::NotASolution => (json!({"result": "not-a-solution"}), false),
    };
    let mut doc = document(body);
    doc["grading"] = json!(g.to_string());
    Ok(Output { doc, ok })
}
