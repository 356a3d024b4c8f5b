//! JSON transport for scalars, matrices, family members and check reports.
//!
//! Scalars travel as canonical strings `"(num)/(den)"`. Matrices are
//! `{"n": N, "entries": [[row, col, "<scalar>"], ...]}` with 1-based indices;
//! tensor matrices use the flattened pair index `(i-1)N + j` and keep `n = N`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::kmatrix::{AdmissiblePair, KFamily, KParams};
use crate::scalar::{Ring, Scalar};
use crate::tensor::{SparseMatrix, SquareMatrix, TensorMatrix};
use crate::verifier::{CheckMode, Residual};

/// Version tag carried by every top-level document.
pub const SCHEMA: &str = "re-kit/1";

fn parse_err(e: serde_json::Error) -> Error {
    Error::Parse(e.to_string())
}

/// Parses scalar strings into one common ring.
fn parse_scalars<'a, I: IntoIterator<Item = &'a str>>(items: I) -> Result<Vec<Scalar>> {
    let parsed = items
        .into_iter()
        .map(Scalar::parse_infer)
        .collect::<Result<Vec<_>>>()?;
    let ring = parsed.iter().fold(Ring::empty(), |r, s| r.union(s.ring()));
    parsed.iter().map(|s| s.to_ring(&ring)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub n: usize,
    pub entries: Vec<(usize, usize, String)>,
}

impl MatrixJson {
    fn from_sparse(n: usize, m: &SparseMatrix) -> MatrixJson {
        MatrixJson {
            n,
            entries: m
                .entries()
                .map(|(r, c, v)| (r, c, v.to_canonical_string()))
                .collect(),
        }
    }

    pub fn from_square(a: &SquareMatrix) -> MatrixJson {
        Self::from_sparse(a.n(), a.as_sparse())
    }

    pub fn from_tensor(t: &TensorMatrix) -> MatrixJson {
        Self::from_sparse(t.n(), t.as_sparse())
    }

    fn entries_parsed(&self) -> Result<Vec<(usize, usize, Scalar)>> {
        let values = parse_scalars(self.entries.iter().map(|e| e.2.as_str()))?;
        Ok(self
            .entries
            .iter()
            .zip(values)
            .map(|(e, v)| (e.0, e.1, v))
            .collect())
    }

    pub fn to_square(&self) -> Result<SquareMatrix> {
        SquareMatrix::from_entries(self.n, self.entries_parsed()?)
    }

    pub fn to_tensor(&self) -> Result<TensorMatrix> {
        let mut t = TensorMatrix::zero(self.n);
        for (r, c, v) in self.entries_parsed()? {
            t.set(r, c, v)?;
        }
        Ok(t)
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_value(v: &Value) -> Result<MatrixJson> {
        MatrixJson::deserialize(v).map_err(parse_err)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsJson {
    pub lambda: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<String>,
    #[serde(default)]
    pub y: BTreeMap<usize, String>,
}

/// A family descriptor with optional parameters.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyJson {
    pub kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_minus: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_plus: Option<usize>,
    #[serde(rename = "Y")]
    pub y_set: Vec<usize>,
    pub sigma: BTreeMap<usize, usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<ParamsJson>,
}

impl FamilyJson {
    pub fn new(f: &KFamily, n: usize, params: Option<&KParams>) -> FamilyJson {
        let pair = f.pair();
        let (b_minus, b_plus, b) = match f {
            KFamily::Type1 { b_minus, b_plus } => (Some(*b_minus), Some(*b_plus), None),
            KFamily::Type2 { b, .. } => (Some(pair.b_minus()), Some(pair.b_plus(n)), Some(*b)),
        };
        FamilyJson {
            kind: f.kind().to_string(),
            b_minus,
            b_plus,
            y_set: pair.y().to_vec(),
            sigma: pair.pairs().collect(),
            b,
            params: params.map(|p| ParamsJson {
                lambda: p.lambda.to_canonical_string(),
                mu: p.mu.as_ref().map(Scalar::to_canonical_string),
                y: p.y
                    .iter()
                    .map(|(i, v)| (*i, v.to_canonical_string()))
                    .collect(),
            }),
        }
    }

    /// The descriptor, checked for internal consistency.
    pub fn family(&self) -> Result<KFamily> {
        let bad = |m: &str| Error::InvalidFamily(m.to_string());
        let f = match self.kind.as_str() {
            "type1" => KFamily::Type1 {
                b_minus: self.b_minus.ok_or_else(|| bad("type1 needs b_minus"))?,
                b_plus: self.b_plus.ok_or_else(|| bad("type1 needs b_plus"))?,
            },
            "type2" => KFamily::Type2 {
                // Parity is validated against a grading later.
                pair: AdmissiblePair::unchecked(self.sigma.iter().map(|(i, s)| (*i, *s)).collect()),
                b: self.b.ok_or_else(|| bad("type2 needs b"))?,
            },
            other => return Err(bad(&format!("unknown kind `{other}`"))),
        };
        let pair = f.pair();
        if pair.y() != self.y_set.as_slice()
            || pair.pairs().collect::<BTreeMap<_, _>>() != self.sigma
        {
            return Err(bad("Y and sigma disagree with the descriptor"));
        }
        Ok(f)
    }

    pub fn params(&self) -> Result<Option<KParams>> {
        let Some(p) = &self.params else {
            return Ok(None);
        };
        let mut texts = vec![p.lambda.as_str()];
        texts.extend(p.mu.as_deref());
        texts.extend(p.y.values().map(String::as_str));
        let mut values = parse_scalars(texts)?.into_iter();
        let lambda = values.next().expect("lambda present");
        let mu = p.mu.as_ref().map(|_| values.next().expect("mu present"));
        let y = p.y.keys().copied().zip(values).collect();
        Ok(Some(KParams { lambda, mu, y }))
    }

    pub fn to_value(&self) -> Value {
        serde_json::to_value(self).expect("plain data")
    }

    pub fn from_value(v: &Value) -> Result<FamilyJson> {
        FamilyJson::deserialize(v).map_err(parse_err)
    }
}

/// JSON report of a residual check.
pub fn check_report(check: &str, grading: &Grading, res: &Residual) -> Value {
    let witness = res.witness.as_ref().map(|w| {
        let mut v = json!({
            "row": w.row,
            "col": w.col,
            "value": w.value.to_canonical_string(),
        });
        if let Some(t) = w.trial {
            v["trial"] = json!(t);
        }
        v
    });
    let mut v = json!({
        "schema": SCHEMA,
        "check": check,
        "grading": grading.to_string(),
        "mode": res.mode.name(),
        "zero": res.is_zero,
        "witness": witness,
    });
    if let CheckMode::Random { seed, trials, .. } = res.mode {
        v["seed"] = json!(seed);
        v["trials"] = json!(trials);
    }
    v
}

/// Wraps a payload in a top-level document carrying [`SCHEMA`].
pub fn document(fields: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA });
    if let (Some(out), Value::Object(map)) = (v.as_object_mut(), fields) {
        out.extend(map);
    }
    v
}
