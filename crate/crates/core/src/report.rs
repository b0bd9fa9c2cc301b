//! Verification results and JSON code reports.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::classical::{ClassicalClaims, ParityCheckMatrix};
use crate::css::{CssCode, QuantumDistance};
use crate::distance::Distance;
use crate::field::GaloisField;
use crate::gf2::BitMatrix;
use crate::tanner::analyze;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    /// A published claim disagrees with the computation but the run goes on.
    Flag,
    /// Not decidable within the configured search limits.
    Info,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Flag => "FLAG",
            Status::Info => "INFO",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, status: Status, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            status,
            detail: detail.into(),
        }
    }

    pub fn pass_if(name: impl Into<String>, ok: bool, detail: impl Into<String>) -> Self {
        Self::new(name, if ok { Status::Pass } else { Status::Fail }, detail)
    }

    /// PASS iff `computed == claim`.
    pub fn compare(name: impl Into<String>, claim: i64, computed: i64) -> Self {
        Self::pass_if(
            name,
            claim == computed,
            format!("claim {claim} computed {computed}"),
        )
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.status, self.name, self.detail)
    }
}

pub fn any_failed(checks: &[Check]) -> bool {
    checks.iter().any(|c| c.status == Status::Fail)
}

fn shape(h: &BitMatrix) -> Value {
    json!([h.n_rows(), h.n_cols()])
}

fn claimed(claim: impl Serialize, computed: impl Serialize) -> Value {
    json!({ "paper_claim": claim, "computed": computed })
}

fn common(s: u32, n: usize) -> Map<String, Value> {
    let field = GaloisField::new(s).expect("s validated by the caller");
    let mut m = Map::new();
    m.insert("s".into(), json!(s));
    m.insert("q".into(), json!(field.order()));
    m.insert("n".into(), json!(n));
    m.insert("field_polynomial".into(), json!(field.modulus_string()));
    m.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
    m
}

/// JSON report of a classical construction. Keys come out sorted.
pub fn classical_report(
    h: &ParityCheckMatrix,
    distance: Option<Distance>,
    witness_weight: Option<usize>,
    checks: &[Check],
) -> Value {
    let claims = ClassicalClaims::for_construction(h.construction, h.s);
    let rank = h.rank();
    let mut m = common(h.s, h.n());
    m.insert("kind".into(), json!("classical"));
    m.insert("construction".into(), json!(h.construction.name()));
    m.insert("shape".into(), shape(&h.h));
    m.insert("rank".into(), claimed(claims.rank, rank));
    m.insert("k".into(), claimed(claims.k, h.n() - rank));
    m.insert(
        "d".into(),
        json!({
            "paper_claim": claims.d,
            "computed": distance,
            "witness_weight": witness_weight,
        }),
    );
    m.insert("tanner".into(), json!(analyze(&h.h)));
    m.insert("checks".into(), json!(checks));
    Value::Object(m)
}

/// JSON report of a CSS code, with Tanner statistics of each check matrix
/// and of the stacked stabilizer matrix `[A | B]`.
pub fn quantum_report(
    code: &CssCode,
    distance: Option<&QuantumDistance>,
    checks: &[Check],
) -> Value {
    let mut m = common(code.s(), code.n());
    m.insert("kind".into(), json!("quantum"));
    m.insert("family".into(), json!(code.family.map(|f| f.name())));
    m.insert(
        "shape".into(),
        json!({ "hx": shape(&code.hx.h), "hz": shape(&code.hz.h) }),
    );
    m.insert(
        "rank".into(),
        json!({ "hx": code.rank_x, "hz": code.rank_z }),
    );
    let claims = code.claims();
    m.insert("K".into(), claimed(claims.map(|c| c.k), code.k()));
    m.insert(
        "stabilizer_count".into(),
        claimed(claims.map(|c| c.stabilizer_count), code.stabilizer_count()),
    );
    m.insert(
        "D".into(),
        json!({
            "paper_claim": claims.map(|c| json!({ "lower": c.d_lower, "exact": c.d_exact })),
            "computed": distance,
        }),
    );
    let hx = analyze(&code.hx.h);
    let tanner = if code.hx == code.hz {
        json!({ "hx": hx, "hz": hx, "stabilizer": analyze(&code.stabilizer_matrix().combined()) })
    } else {
        json!({
            "hx": hx,
            "hz": analyze(&code.hz.h),
            "stabilizer": analyze(&code.stabilizer_matrix().combined()),
        })
    };
    m.insert("tanner".into(), tanner);
    m.insert("checks".into(), json!(checks));
    Value::Object(m)
}

/// Adds run metadata. Only used when a stamped (non-canonical) report is asked for.
pub fn stamp(report: &mut Value, command_line: &str, unix_time: u64) {
    if let Value::Object(m) = report {
        m.insert(
            "stamp".into(),
            json!({ "command_line": command_line, "unix_time": unix_time }),
        );
    }
}

pub fn set_seed(report: &mut Value, seed: u64) {
    if let Value::Object(m) = report {
        m.insert("seed".into(), json!(seed));
    }
}
