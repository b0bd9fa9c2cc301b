//! The projective plane PG(2, 2^s), the conic `y^2 = xz`, its nucleus and
//! the secant/skew split of lines relative to the resulting hyperoval.
//!
//! Points and lines are normalized so the first nonzero coordinate is 1 and
//! are indexed in lexicographic order of their coordinates. With that
//! normalization the order is `[0,0,1]`, then `[0,1,z]`, then `[1,y,z]`, so
//! indices are computed directly instead of looked up.

use crate::error::{Error, Result};
use crate::field::{FieldElement, GaloisField};
use crate::gf2::BitMatrix;

fn normalize(field: &GaloisField, mut t: [FieldElement; 3]) -> Option<[FieldElement; 3]> {
    let lead = *t.iter().find(|&&c| c != 0)?;
    let inv = field.inv(lead)?;
    for c in &mut t {
        *c = field.mul(*c, inv);
    }
    Some(t)
}

fn canonical_index(q: usize, t: [FieldElement; 3]) -> usize {
    let [x, y, z] = t.map(usize::from);
    match (x, y) {
        (1, _) => 1 + q + y * q + z,
        (0, 1) => 1 + z,
        _ => 0,
    }
}

/// A point `[x, y, z]`, normalized so its first nonzero coordinate is 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectivePoint {
    pub coords: [FieldElement; 3],
}

/// A line `(a, b, c)`: the points with `ax + by + cz = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProjectiveLine {
    pub coeffs: [FieldElement; 3],
}

impl ProjectivePoint {
    /// Normalizes any nonzero representative; `None` for `(0, 0, 0)`.
    pub fn new(field: &GaloisField, coords: [FieldElement; 3]) -> Option<Self> {
        normalize(field, coords).map(|coords| Self { coords })
    }
}

impl ProjectiveLine {
    pub fn new(field: &GaloisField, coeffs: [FieldElement; 3]) -> Option<Self> {
        normalize(field, coeffs).map(|coeffs| Self { coeffs })
    }
}

/// True iff `ax + by + cz = 0`.
pub fn incidence(field: &GaloisField, p: &ProjectivePoint, l: &ProjectiveLine) -> bool {
    let [x, y, z] = p.coords;
    let [a, b, c] = l.coeffs;
    field.mul(a, x) ^ field.mul(b, y) ^ field.mul(c, z) == 0
}

/// PG(2, 2^s) with both incidence directions materialized.
#[derive(Clone, Debug)]
pub struct PlaneModel {
    field: GaloisField,
    points: Vec<ProjectivePoint>,
    lines: Vec<ProjectiveLine>,
    points_on_line: Vec<Vec<usize>>,
    lines_through_point: Vec<Vec<usize>>,
}

impl PlaneModel {
    pub fn build(s: u32) -> Result<Self> {
        let field = GaloisField::new(s)?;
        let q = field.order();
        let mut triples = Vec::with_capacity(q * q + q + 1);
        for x in field.elements() {
            for y in field.elements() {
                for z in field.elements() {
                    let t = [x, y, z];
                    if normalize(&field, t) == Some(t) {
                        triples.push(t);
                    }
                }
            }
        }
        triples.sort_unstable();
        debug_assert!(triples
            .iter()
            .enumerate()
            .all(|(i, &t)| canonical_index(q, t) == i));

        let points: Vec<_> = triples
            .iter()
            .map(|&coords| ProjectivePoint { coords })
            .collect();
        let lines: Vec<_> = triples
            .iter()
            .map(|&coeffs| ProjectiveLine { coeffs })
            .collect();

        let mut points_on_line = Vec::with_capacity(lines.len());
        for line in &lines {
            let (u, v) = kernel_basis(line.coeffs);
            let mut on = Vec::with_capacity(q + 1);
            on.push(canonical_index(q, normalize(&field, v).expect("nonzero")));
            for t in field.elements() {
                let w = [0, 1, 2].map(|k| u[k] ^ field.mul(t, v[k]));
                on.push(canonical_index(q, normalize(&field, w).expect("nonzero")));
            }
            on.sort_unstable();
            points_on_line.push(on);
        }
        let mut lines_through_point = vec![Vec::with_capacity(q + 1); points.len()];
        for (li, on) in points_on_line.iter().enumerate() {
            for &pi in on {
                lines_through_point[pi].push(li);
            }
        }

        Ok(Self {
            field,
            points,
            lines,
            points_on_line,
            lines_through_point,
        })
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn s(&self) -> u32 {
        self.field.degree()
    }

    pub fn q(&self) -> usize {
        self.field.order()
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn lines(&self) -> &[ProjectiveLine] {
        &self.lines
    }

    pub fn num_points(&self) -> usize {
        self.points.len()
    }

    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Sorted indices of the points on line `l`.
    pub fn points_on_line(&self, l: usize) -> &[usize] {
        &self.points_on_line[l]
    }

    /// Sorted indices of the lines through point `p`.
    pub fn lines_through_point(&self, p: usize) -> &[usize] {
        &self.lines_through_point[p]
    }

    pub fn point_index(&self, p: &ProjectivePoint) -> usize {
        canonical_index(self.q(), p.coords)
    }

    pub fn line_index(&self, l: &ProjectiveLine) -> usize {
        canonical_index(self.q(), l.coeffs)
    }

    pub fn is_incident(&self, point: usize, line: usize) -> bool {
        self.points_on_line[line].binary_search(&point).is_ok()
    }

    /// The unique line through two distinct points.
    pub fn line_through(&self, a: usize, b: usize) -> Option<usize> {
        if a == b {
            return None;
        }
        self.lines_through_point[a]
            .iter()
            .copied()
            .find(|&l| self.is_incident(b, l))
    }

    /// Incidence matrix `M_pi`: rows are lines, columns are points.
    pub fn incidence_matrix(&self) -> BitMatrix {
        let mut m = BitMatrix::zeros(self.num_lines(), self.num_points());
        for (l, on) in self.points_on_line.iter().enumerate() {
            for &p in on {
                m.set(l, p, true);
            }
        }
        m
    }
}

/// Two independent vectors spanning `{w : a w0 + b w1 + c w2 = 0}`.
/// Uses characteristic 2: `a·b + b·a = 0`.
fn kernel_basis([a, b, c]: [FieldElement; 3]) -> ([FieldElement; 3], [FieldElement; 3]) {
    if a != 0 {
        ([b, a, 0], [c, 0, a])
    } else if b != 0 {
        ([1, 0, 0], [0, c, b])
    } else {
        ([1, 0, 0], [0, 1, 0])
    }
}

/// Point indices of the conic `y^2 = xz`, i.e. `{[1, t, t^2]} ∪ {[0, 0, 1]}`.
pub fn standard_conic(plane: &PlaneModel) -> Vec<usize> {
    let f = plane.field();
    plane
        .points()
        .iter()
        .enumerate()
        .filter(|(_, p)| {
            let [x, y, z] = p.coords;
            f.square(y) == f.mul(x, z)
        })
        .map(|(i, _)| i)
        .collect()
}

/// Lines meeting `conic` in exactly one point.
pub fn tangent_lines(plane: &PlaneModel, conic: &[usize]) -> Vec<usize> {
    let member = membership(plane.num_points(), conic);
    (0..plane.num_lines())
        .filter(|&l| {
            plane
                .points_on_line(l)
                .iter()
                .filter(|&&p| member[p])
                .count()
                == 1
        })
        .collect()
}

/// The common point of all tangents to `conic`.
///
/// Fails if the tangents are not concurrent or the common point lies on the
/// conic, either of which means the input is not a conic over an even-order
/// field.
pub fn nucleus(plane: &PlaneModel, conic: &[usize]) -> Result<usize> {
    let tangents = tangent_lines(plane, conic);
    if tangents.len() != conic.len() {
        return Err(Error::Geometry(format!(
            "expected {} tangents, found {}",
            conic.len(),
            tangents.len()
        )));
    }
    let common: Vec<usize> = (0..plane.num_points())
        .filter(|&p| tangents.iter().all(|&l| plane.is_incident(p, l)))
        .collect();
    match common.as_slice() {
        [p] if !conic.contains(p) => Ok(*p),
        [p] => Err(Error::Geometry(format!(
            "tangents meet on the conic at {p}"
        ))),
        _ => Err(Error::Geometry(format!(
            "tangents are not concurrent ({} common points)",
            common.len()
        ))),
    }
}

fn membership(n: usize, set: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in set {
        m[i] = true;
    }
    m
}

/// A regular hyperoval and the induced secant/skew classification of lines.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperovalPartition {
    pub conic_points: Vec<usize>,
    pub nucleus: usize,
    /// Sorted conic points plus the nucleus.
    pub hyperoval: Vec<usize>,
    pub secant_lines: Vec<usize>,
    pub skew_lines: Vec<usize>,
}

impl HyperovalPartition {
    /// Conic `y^2 = xz`, its computed nucleus, and the line classification.
    pub fn standard(plane: &PlaneModel) -> Result<Self> {
        let conic = standard_conic(plane);
        let nucleus = nucleus(plane, &conic)?;
        classify_lines(plane, &conic, nucleus)
    }

    pub fn is_hyperoval_point(&self, p: usize) -> bool {
        self.hyperoval.binary_search(&p).is_ok()
    }

    /// Points off the hyperoval, in canonical order.
    pub fn non_hyperoval_points(&self, plane: &PlaneModel) -> Vec<usize> {
        (0..plane.num_points())
            .filter(|&p| !self.is_hyperoval_point(p))
            .collect()
    }
}

/// Splits all lines into secant (2 hyperoval points) and skew (none).
pub fn classify_lines(
    plane: &PlaneModel,
    conic: &[usize],
    nucleus: usize,
) -> Result<HyperovalPartition> {
    let mut hyperoval = conic.to_vec();
    hyperoval.push(nucleus);
    hyperoval.sort_unstable();
    hyperoval.dedup();
    if hyperoval.len() != plane.q() + 2 {
        return Err(Error::Geometry(format!(
            "hyperoval has {} points, expected {}",
            hyperoval.len(),
            plane.q() + 2
        )));
    }
    let member = membership(plane.num_points(), &hyperoval);
    let mut secant_lines = Vec::new();
    let mut skew_lines = Vec::new();
    for l in 0..plane.num_lines() {
        let hits = plane
            .points_on_line(l)
            .iter()
            .filter(|&&p| member[p])
            .count();
        match hits {
            0 => skew_lines.push(l),
            2 => secant_lines.push(l),
            k => {
                return Err(Error::Geometry(format!(
                    "line {l} meets the hyperoval in {k} points"
                )))
            }
        }
    }
    let mut conic_points = conic.to_vec();
    conic_points.sort_unstable();
    Ok(HyperovalPartition {
        conic_points,
        nucleus,
        hyperoval,
        secant_lines,
        skew_lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fano_plane_sizes() {
        let plane = PlaneModel::build(1).unwrap();
        assert_eq!(plane.num_points(), 7);
        assert_eq!(plane.num_lines(), 7);
        for l in 0..7 {
            assert_eq!(plane.points_on_line(l).len(), 3);
        }
        assert_eq!(PlaneModel::build(2).unwrap().num_points(), 21);
        assert_eq!(PlaneModel::build(3).unwrap().num_lines(), 73);
    }

    #[test]
    fn incidence_examples() {
        let f = GaloisField::new(2).unwrap();
        let p = ProjectivePoint::new(&f, [1, 0, 0]).unwrap();
        let l_z = ProjectiveLine::new(&f, [0, 0, 1]).unwrap();
        let l_x = ProjectiveLine::new(&f, [1, 0, 0]).unwrap();
        assert!(incidence(&f, &p, &l_z));
        assert!(!incidence(&f, &p, &l_x));
        assert!(ProjectivePoint::new(&f, [0, 0, 0]).is_none());
    }

    #[test]
    fn normalization_scales_to_leading_one() {
        let f = GaloisField::new(2).unwrap();
        // 2·[1,1,3] = [2,2,1]
        let p = ProjectivePoint::new(&f, [2, 2, 1]).unwrap();
        assert_eq!(p.coords, [1, 1, 3]);
    }

    #[test]
    fn fano_conic() {
        let plane = PlaneModel::build(1).unwrap();
        let conic = standard_conic(&plane);
        let coords: Vec<_> = conic.iter().map(|&i| plane.points()[i].coords).collect();
        assert_eq!(coords, vec![[0, 0, 1], [1, 0, 0], [1, 1, 1]]);
        assert_eq!(tangent_lines(&plane, &conic).len(), 3);
    }

    #[test]
    fn nucleus_is_zero_one_zero() {
        for s in 1..=3 {
            let plane = PlaneModel::build(s).unwrap();
            let conic = standard_conic(&plane);
            let n = nucleus(&plane, &conic).unwrap();
            assert_eq!(plane.points()[n].coords, [0, 1, 0]);
            assert!(!conic.contains(&n));
        }
    }

    #[test]
    fn nucleus_rejects_non_conic() {
        let plane = PlaneModel::build(2).unwrap();
        // a line is not a conic: every other line is "tangent" to it
        let line = plane.points_on_line(0).to_vec();
        assert!(nucleus(&plane, &line).is_err());
    }

    #[test]
    fn classify_counts_small() {
        let plane = PlaneModel::build(2).unwrap();
        let part = HyperovalPartition::standard(&plane).unwrap();
        assert_eq!(part.secant_lines.len(), 15);
        assert_eq!(part.skew_lines.len(), 6);
        for p in part.non_hyperoval_points(&plane) {
            let secants = plane
                .lines_through_point(p)
                .iter()
                .filter(|l| part.secant_lines.contains(l))
                .count();
            assert_eq!(secants, 3);
            assert_eq!(plane.lines_through_point(p).len() - secants, 2);
        }
    }
}
