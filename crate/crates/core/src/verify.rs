//! Full sweep of geometric invariants and published code parameters.

use std::fmt;

use crate::classical::{
    build_construction, distance_witness, min_distance_oracle, pow, ClassicalClaims, Construction,
    ParityCheckMatrix,
};
use crate::css::{
    build_family_in, build_symmetric_css, paper_claim_report, quantum_distance, CssFamily,
};
use crate::distance::{Distance, SearchLimits};
use crate::error::{Error, Result};
use crate::geometry::{HyperovalPartition, PlaneModel};
use crate::report::{Check, Status};
use crate::tanner::overlap_spectrum;

/// What a verification run covers. Geometry checks always run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    All,
    Family(CssFamily),
    Construction(Construction),
}

impl Target {
    pub fn constructions(self) -> Vec<Construction> {
        use Construction::*;
        match self {
            Target::All => Construction::ALL.to_vec(),
            Target::Construction(c) => vec![c],
            Target::Family(CssFamily::Pi) => vec![MPi, MPiPrime],
            Target::Family(CssFamily::Asym) => vec![HSk, HSe],
            Target::Family(CssFamily::SymSk) => vec![HSk],
            Target::Family(CssFamily::SymSe) => vec![HSeA, HSe],
        }
    }

    pub fn families(self) -> Vec<CssFamily> {
        match self {
            Target::All => CssFamily::ALL.to_vec(),
            Target::Family(f) => vec![f],
            Target::Construction(_) => Vec::new(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::All => f.write_str("all"),
            Target::Family(x) => write!(f, "{x}"),
            Target::Construction(c) => write!(f, "{c}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub limits: SearchLimits,
    /// Skip every minimum-distance computation.
    pub skip_distance: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            limits: SearchLimits::with_cap(DEFAULT_DISTANCE_CAP),
            skip_distance: false,
        }
    }
}

pub const DEFAULT_DISTANCE_CAP: usize = 5;

pub fn verify(s: u32, target: Target, opts: VerifyOptions) -> Result<Vec<Check>> {
    let plane = PlaneModel::build(s)?;
    let partition = HyperovalPartition::standard(&plane)?;
    let mut out = geometry_checks(&plane, &partition);
    for c in target.constructions() {
        out.extend(classical_checks(c, &plane, &partition, opts)?);
    }
    for f in target.families() {
        out.extend(quantum_checks(f, &plane, &partition, opts)?);
    }
    Ok(out)
}

pub fn geometry_checks(plane: &PlaneModel, partition: &HyperovalPartition) -> Vec<Check> {
    let q = plane.q() as i64;
    let mut out = vec![
        Check::compare("plane: points", q * q + q + 1, plane.num_points() as i64),
        Check::compare("plane: lines", q * q + q + 1, plane.num_lines() as i64),
    ];
    let per_line = (0..plane.num_lines()).all(|l| plane.points_on_line(l).len() as i64 == q + 1);
    let per_point =
        (0..plane.num_points()).all(|p| plane.lines_through_point(p).len() as i64 == q + 1);
    out.push(Check::pass_if(
        "plane: q+1 points on every line",
        per_line,
        "",
    ));
    out.push(Check::pass_if(
        "plane: q+1 lines through every point",
        per_point,
        "",
    ));

    let m = plane.incidence_matrix();
    let pairs = plane.num_points() * (plane.num_points() - 1) / 2;
    let only_one = |spec: std::collections::BTreeMap<usize, usize>| {
        spec.len() == 1 && spec.get(&1) == Some(&pairs)
    };
    out.push(Check::pass_if(
        "plane: two lines meet in exactly one point",
        only_one(overlap_spectrum(&m)),
        "",
    ));
    out.push(Check::pass_if(
        "plane: two points lie on exactly one line",
        only_one(overlap_spectrum(&m.transpose())),
        "",
    ));

    let non_hyper = partition.non_hyperoval_points(plane);
    let count_on = |p: usize, lines: &[usize]| {
        plane
            .lines_through_point(p)
            .iter()
            .filter(|l| lines.binary_search(l).is_ok())
            .count() as i64
    };
    let uniform =
        |lines: &[usize], expected: i64| non_hyper.iter().all(|&p| count_on(p, lines) == expected);
    out.push(Check::compare(
        "table: hyperoval points",
        q + 2,
        partition.hyperoval.len() as i64,
    ));
    out.push(Check::compare(
        "table: secant lines",
        (q * q + 3 * q + 2) / 2,
        partition.secant_lines.len() as i64,
    ));
    out.push(Check::compare(
        "table: skew lines",
        (q * q - q) / 2,
        partition.skew_lines.len() as i64,
    ));
    out.push(Check::pass_if(
        "table: secant lines through each non-hyperoval point",
        uniform(&partition.secant_lines, (q + 2) / 2),
        format!("expected {}", (q + 2) / 2),
    ));
    out.push(Check::pass_if(
        "table: skew lines through each non-hyperoval point",
        uniform(&partition.skew_lines, q / 2),
        format!("expected {}", q / 2),
    ));
    out
}

/// Mismatches against the published `h-se` rank and dimension are flagged,
/// not failed: that dimension conflicts with the rank it is derived from.
fn claim_status(c: Construction, ok: bool) -> Status {
    match (ok, c) {
        (true, _) => Status::Pass,
        (false, Construction::HSe) => Status::Flag,
        (false, _) => Status::Fail,
    }
}

fn expected_witness_weight(c: Construction, q: usize) -> usize {
    match c {
        Construction::HSk => q,
        _ => q + 2,
    }
}

pub fn classical_checks(
    c: Construction,
    plane: &PlaneModel,
    partition: &HyperovalPartition,
    opts: VerifyOptions,
) -> Result<Vec<Check>> {
    let s = plane.s();
    let h = build_construction(c, plane, partition);
    let claims = ClassicalClaims::for_construction(c, s);
    let rank = h.rank() as i64;
    let n = h.n() as i64;
    let k = n - rank;
    let mut out = vec![Check::compare(format!("{c}: n"), claims.n, n)];
    out.push(Check::new(
        format!("{c}: rank"),
        claim_status(c, claims.rank.contains(rank)),
        format!("claim {} computed {rank}", claims.rank),
    ));
    out.push(Check::new(
        format!("{c}: k"),
        claim_status(c, claims.k.contains(k)),
        format!("claim {} computed {k} (n - rank)", claims.k),
    ));
    if c == Construction::HSe {
        let derived = pow(4, s) - pow(3, s) - 1;
        out.push(Check::new(
            format!("{c}: k from rank 3^s+1"),
            claim_status(c, k == derived),
            format!("4^s-3^s-1 = {derived}, computed {k}"),
        ));
    }

    match c {
        Construction::MPi => {}
        Construction::HSe => {
            let rejected = matches!(build_symmetric_css(&h), Err(Error::NotSelfOrthogonal));
            out.push(Check::pass_if(
                format!("{c}: rejected as a symmetric CSS check"),
                rejected,
                "H·H^t != 0",
            ));
        }
        _ => out.push(Check::pass_if(
            format!("{c}: self-orthogonal"),
            h.h.is_self_orthogonal(),
            "H·H^t = 0",
        )),
    }

    let witness = distance_witness(c, plane, partition)?;
    let w = witness.weight();
    out.push(Check::pass_if(
        format!("{c}: witness codeword"),
        w == expected_witness_weight(c, plane.q()) && claims.d.upper >= w as i64,
        format!("weight {w}, so d <= {w}"),
    ));

    if !opts.skip_distance {
        out.push(classical_distance_check(&h, &claims, w, opts.limits));
    }
    Ok(out)
}

fn classical_distance_check(
    h: &ParityCheckMatrix,
    claims: &ClassicalClaims,
    witness_weight: usize,
    limits: SearchLimits,
) -> Check {
    let c = h.construction;
    let name = format!("{c}: d");
    match min_distance_oracle(h, limits) {
        Ok((Distance::Exact(d), _)) => Check::pass_if(
            name,
            claims.d.contains(d as i64),
            format!("claim {} computed d_exact = {d}", claims.d),
        ),
        Ok((Distance::AtLeast(lo), _)) if lo == witness_weight => Check::pass_if(
            name,
            claims.d.contains(lo as i64),
            format!(
                "claim {} computed d_exact = {lo} (search bound meets witness)",
                claims.d
            ),
        ),
        Ok((Distance::AtLeast(lo), _)) if (lo as i64) > claims.d.upper => Check::new(
            name,
            Status::Fail,
            format!("claim {} but search certifies d >= {lo}", claims.d),
        ),
        Ok((Distance::AtLeast(lo), _)) => Check::new(
            name,
            Status::Info,
            format!(
                "claim {}; bounds only: {lo} <= d <= {witness_weight}",
                claims.d
            ),
        ),
        Ok((Distance::Infinite, _)) => {
            Check::new(name, Status::Fail, "code has no nonzero codeword")
        }
        Err(e) => Check::new(name, Status::Info, format!("not computed: {e}")),
    }
}

pub fn quantum_checks(
    f: CssFamily,
    plane: &PlaneModel,
    partition: &HyperovalPartition,
    opts: VerifyOptions,
) -> Result<Vec<Check>> {
    let code = match build_family_in(f, plane, partition) {
        Ok(code) => code,
        Err(e) => {
            return Ok(vec![Check::new(
                format!("{f}: build"),
                Status::Fail,
                e.to_string(),
            )])
        }
    };
    let mut out = vec![Check::pass_if(
        format!("{f}: H_X·H_Z^t = 0"),
        code.hx.h.mul_transpose(&code.hz.h)?.is_zero(),
        "",
    )];
    let stab = code.stabilizer_matrix();
    out.push(Check::pass_if(
        format!("{f}: A·B^t + B·A^t = 0"),
        stab.is_valid()?,
        format!("{} stabilizers", code.stabilizer_count()),
    ));
    out.push(Check::pass_if(
        format!("{f}: all stabilizer pairs commute"),
        stab.rows_commute()?,
        "twisted inner product",
    ));

    let distance = if opts.skip_distance {
        None
    } else {
        match quantum_distance(&code, opts.limits) {
            Ok(d) => Some(d),
            Err(e) => {
                out.push(Check::new(
                    format!("{f}: D"),
                    Status::Info,
                    format!("not computed: {e}"),
                ));
                None
            }
        }
    };
    out.extend(paper_claim_report(&code, distance.as_ref()));
    Ok(out)
}
