//! CSS stabilizer codes assembled from the classical parity checks.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::classical::{
    build_h_se, build_h_sea, build_h_sk, build_m_pi_prime, pow, Claim, ParityCheckMatrix,
};
use crate::distance::{min_distance_filtered, Distance, SearchLimits};
use crate::error::{shape_mismatch, Error, Result};
use crate::geometry::{HyperovalPartition, PlaneModel};
use crate::gf2::{twisted_inner_product, BitMatrix, RowSpace, SymplecticVector};
use crate::report::{Check, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CssFamily {
    /// Symmetric, from `M'_pi`.
    Pi,
    /// Asymmetric, `H_X = H_sk`, `H_Z = H_se`.
    Asym,
    /// Symmetric, from `H_sk`.
    SymSk,
    /// Symmetric, from `H_seA`.
    SymSe,
}

impl CssFamily {
    pub const ALL: [CssFamily; 4] = [
        CssFamily::Pi,
        CssFamily::Asym,
        CssFamily::SymSk,
        CssFamily::SymSe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CssFamily::Pi => "pi",
            CssFamily::Asym => "asym",
            CssFamily::SymSk => "sym-sk",
            CssFamily::SymSe => "sym-se",
        }
    }

    pub fn is_symmetric(self) -> bool {
        self != CssFamily::Asym
    }
}

impl fmt::Display for CssFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CssFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CssFamily::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::Invalid(format!("unknown family '{s}'")))
    }
}

/// A stabilizer check matrix `[A | B]` (X part, Z part).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerCheckMatrix {
    pub a: BitMatrix,
    pub b: BitMatrix,
}

impl StabilizerCheckMatrix {
    /// `[[H_X, 0], [0, H_Z]]`.
    pub fn from_css(hx: &BitMatrix, hz: &BitMatrix) -> Result<Self> {
        if hx.n_cols() != hz.n_cols() {
            return Err(shape_mismatch("from_css", hx.n_cols(), hz.n_cols()));
        }
        let n = hx.n_cols();
        Ok(Self {
            a: hx.vstack(&BitMatrix::zeros(hz.n_rows(), n))?,
            b: BitMatrix::zeros(hx.n_rows(), n).vstack(hz)?,
        })
    }

    pub fn n(&self) -> usize {
        self.a.n_cols()
    }

    /// The stabilizer condition `A·B^t + B·A^t = 0`.
    pub fn is_valid(&self) -> Result<bool> {
        validate_stabilizer(&self.a, &self.b)
    }

    /// Same condition checked row pair by row pair with the twisted inner
    /// product.
    pub fn rows_commute(&self) -> Result<bool> {
        let rows: Vec<SymplecticVector> = self
            .a
            .rows()
            .iter()
            .zip(self.b.rows())
            .map(|(x, z)| SymplecticVector::new(x.clone(), z.clone()))
            .collect::<Result<_>>()?;
        for (i, u) in rows.iter().enumerate() {
            for v in &rows[i + 1..] {
                if twisted_inner_product(u, v)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The full `[A | B]` matrix of width `2n`.
    pub fn combined(&self) -> BitMatrix {
        self.a
            .hstack(&self.b)
            .expect("row counts agree by construction")
    }
}

/// True iff `A·B^t + B·A^t = 0` over GF(2).
pub fn validate_stabilizer(a: &BitMatrix, b: &BitMatrix) -> Result<bool> {
    if a.shape() != b.shape() {
        return Err(shape_mismatch(
            "validate_stabilizer",
            format!("{:?}", a.shape()),
            format!("{:?}", b.shape()),
        ));
    }
    let ab = a.mul_transpose(b)?;
    let ba = b.mul_transpose(a)?;
    Ok(ab.add(&ba)?.is_zero())
}

/// Published closed-form parameters of a CSS family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumClaims {
    pub n: i64,
    pub k: Claim,
    pub d_lower: i64,
    /// Set when the distance is stated as an equality.
    pub d_exact: Option<i64>,
    pub stabilizer_count: i64,
}

impl QuantumClaims {
    pub fn for_family(family: CssFamily, s: u32) -> Self {
        let (p4, p3, p2) = (pow(4, s), pow(3, s), pow(2, s));
        let half = pow(2, s - 1);
        match family {
            CssFamily::Pi => Self {
                n: p4 + p2 + 2,
                k: Claim::exact(p4 - 2 * p3 + p2),
                d_lower: p2 + 2,
                d_exact: Some(p2 + 2),
                stabilizer_count: pow(2, 2 * s + 1) + pow(2, s + 1) + 2,
            },
            CssFamily::Asym => Self {
                n: p4,
                k: Claim::range(p4 - 2 * p3 + 2, p4 - 2 * p3 + p2 - 1),
                d_lower: half + 1,
                d_exact: None,
                stabilizer_count: p4 + p2 + 1,
            },
            CssFamily::SymSk => Self {
                n: p4,
                k: Claim::range(p4 - 2 * p3 - 2, p4 - 2 * p3 + pow(2, s + 1)),
                d_lower: half + 1,
                d_exact: None,
                stabilizer_count: p4 - p2,
            },
            CssFamily::SymSe => Self {
                n: p4 + p2 + 2,
                k: Claim::exact(p4 - 2 * p3 + p2),
                d_lower: half + 2,
                d_exact: None,
                stabilizer_count: p4 + 3 * p2 + 2,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CssCode {
    pub family: Option<CssFamily>,
    pub hx: ParityCheckMatrix,
    pub hz: ParityCheckMatrix,
    pub rank_x: usize,
    pub rank_z: usize,
}

impl CssCode {
    pub fn n(&self) -> usize {
        self.hx.n()
    }

    /// Number of encoded qubits, `n - rank(H_X) - rank(H_Z)`.
    pub fn k(&self) -> usize {
        self.n() - self.rank_x - self.rank_z
    }

    pub fn stabilizer_count(&self) -> usize {
        self.hx.h.n_rows() + self.hz.h.n_rows()
    }

    pub fn s(&self) -> u32 {
        self.hx.s
    }

    pub fn stabilizer_matrix(&self) -> StabilizerCheckMatrix {
        StabilizerCheckMatrix::from_css(&self.hx.h, &self.hz.h).expect("lengths checked on build")
    }

    pub fn claims(&self) -> Option<QuantumClaims> {
        self.family.map(|f| QuantumClaims::for_family(f, self.s()))
    }
}

/// `H_X = H_Z = H`; requires `H·H^t = 0`.
pub fn build_symmetric_css(h: &ParityCheckMatrix) -> Result<CssCode> {
    if !h.h.is_self_orthogonal() {
        return Err(Error::NotSelfOrthogonal);
    }
    let rank = h.rank();
    Ok(CssCode {
        family: None,
        hx: h.clone(),
        hz: h.clone(),
        rank_x: rank,
        rank_z: rank,
    })
}

/// `H_X = h1`, `H_Z = h2`; requires `h1·h2^t = 0`.
pub fn build_asymmetric_css(h1: &ParityCheckMatrix, h2: &ParityCheckMatrix) -> Result<CssCode> {
    if h1.n() != h2.n() {
        return Err(shape_mismatch("build_asymmetric_css", h1.n(), h2.n()));
    }
    if !h1.h.mul_transpose(&h2.h)?.is_zero() {
        return Err(Error::NotOrthogonal);
    }
    Ok(CssCode {
        family: None,
        hx: h1.clone(),
        hz: h2.clone(),
        rank_x: h1.rank(),
        rank_z: h2.rank(),
    })
}

pub fn build_family_in(
    family: CssFamily,
    plane: &PlaneModel,
    partition: &HyperovalPartition,
) -> Result<CssCode> {
    let mut code = match family {
        CssFamily::Pi => build_symmetric_css(&build_m_pi_prime(plane))?,
        CssFamily::Asym => {
            build_asymmetric_css(&build_h_sk(plane, partition), &build_h_se(plane, partition))?
        }
        CssFamily::SymSk => build_symmetric_css(&build_h_sk(plane, partition))?,
        CssFamily::SymSe => build_symmetric_css(&build_h_sea(plane, partition))?,
    };
    code.family = Some(family);
    Ok(code)
}

pub fn build_family(family: CssFamily, s: u32) -> Result<CssCode> {
    let plane = PlaneModel::build(s)?;
    let partition = HyperovalPartition::standard(&plane)?;
    build_family_in(family, &plane, &partition)
}

/// Coset distance of each sector and their minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuantumDistance {
    /// Lightest Z-type logical: `ker(H_X) \ rowspace(H_Z)`.
    pub z_logical: Distance,
    /// Lightest X-type logical: `ker(H_Z) \ rowspace(H_X)`.
    pub x_logical: Distance,
    pub overall: Distance,
}

fn sector_distance(
    checks: &BitMatrix,
    stabilizers: &BitMatrix,
    limits: SearchLimits,
) -> Result<Distance> {
    let space = RowSpace::new(stabilizers);
    let (d, _) = min_distance_filtered(checks, limits, |v| !space.contains(v))?;
    Ok(d)
}

/// Minimum weight of a nontrivial logical operator. Exact when the kernels
/// are small enough to enumerate, otherwise a weight-capped bound.
pub fn quantum_distance(code: &CssCode, limits: SearchLimits) -> Result<QuantumDistance> {
    if code.k() == 0 {
        return Ok(QuantumDistance {
            z_logical: Distance::Infinite,
            x_logical: Distance::Infinite,
            overall: Distance::Infinite,
        });
    }
    let z_logical = sector_distance(&code.hx.h, &code.hz.h, limits)?;
    let x_logical = if code.hx == code.hz {
        z_logical
    } else {
        sector_distance(&code.hz.h, &code.hx.h, limits)?
    };
    Ok(QuantumDistance {
        z_logical,
        x_logical,
        overall: z_logical.min(x_logical),
    })
}

/// Computed parameters against the published ones, one entry per field.
pub fn paper_claim_report(code: &CssCode, distance: Option<&QuantumDistance>) -> Vec<Check> {
    let Some(claims) = code.claims() else {
        return Vec::new();
    };
    let tag = code.family.map(|f| f.name()).unwrap_or("css");
    let mut out = Vec::new();

    let n = code.n() as i64;
    out.push(Check::compare(format!("{tag}: n"), claims.n, n));

    let k = code.k() as i64;
    let k_status = if claims.k.contains(k) {
        Status::Pass
    } else {
        Status::Fail
    };
    out.push(Check::new(
        format!("{tag}: K"),
        k_status,
        format!("claim {} computed {k}", claims.k),
    ));

    out.push(Check::compare(
        format!("{tag}: stabilizer count"),
        claims.stabilizer_count,
        code.stabilizer_count() as i64,
    ));

    if let Some(d) = distance {
        out.extend(distance_checks(tag, &claims, d.overall));
    }
    out
}

fn distance_checks(tag: &str, claims: &QuantumClaims, d: Distance) -> Vec<Check> {
    let lower = claims.d_lower;
    let mut out = Vec::new();
    let name = format!("{tag}: D >= {lower}");
    out.push(match d {
        Distance::Infinite => Check::new(name, Status::Pass, "K = 0, no logical operators"),
        Distance::Exact(v) if v as i64 >= lower => {
            Check::new(name, Status::Pass, format!("exact D = {v}"))
        }
        Distance::Exact(v) => Check::new(name, Status::Fail, format!("exact D = {v}")),
        Distance::AtLeast(v) if v as i64 >= lower => {
            Check::new(name, Status::Pass, format!("certified D >= {v}"))
        }
        Distance::AtLeast(v) => Check::new(
            name,
            Status::Info,
            format!("search capped, only D >= {v} certified"),
        ),
    });
    if let Some(eq) = claims.d_exact {
        let name = format!("{tag}: D = {eq}");
        out.push(match d {
            Distance::Exact(v) if v as i64 == eq => {
                Check::new(name, Status::Pass, format!("exact D = {v}"))
            }
            Distance::Exact(v) => Check::new(
                name,
                Status::Flag,
                format!("exact D = {v} differs from the stated equality"),
            ),
            Distance::Infinite => Check::new(name, Status::Info, "K = 0, no logical operators"),
            other => Check::new(
                name,
                Status::Info,
                format!("equality not decidable, computed D {other}"),
            ),
        });
    }
    out
}
