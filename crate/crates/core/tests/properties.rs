use proptest::prelude::*;

use pgqldpc::alist::{from_alist, to_alist};
use pgqldpc::bp::BpOptions;
use pgqldpc::css::{build_family, CssCode, CssFamily};
use pgqldpc::geometry::PlaneModel;
use pgqldpc::gf2::{BitMatrix, BitVector};
use pgqldpc::sim::{syndrome, CssDecoder, PauliErrorVector};

fn matrix() -> impl Strategy<Value = BitMatrix> {
    (1usize..12, 1usize..40).prop_flat_map(|(m, n)| {
        proptest::collection::vec(proptest::collection::vec(0u8..2, n), m)
            .prop_map(move |rows| BitMatrix::from_bit_rows(n, &rows))
    })
}

fn bits(n: usize) -> impl Strategy<Value = BitVector> {
    proptest::collection::vec(0u8..2, n).prop_map(|b| BitVector::from_bits(&b))
}

fn pauli(n: usize) -> impl Strategy<Value = PauliErrorVector> {
    (bits(n), bits(n)).prop_map(|(e_x, e_z)| PauliErrorVector { e_x, e_z })
}

fn combination(rows: &BitMatrix, pick: &BitVector) -> BitVector {
    let mut v = BitVector::zeros(rows.n_cols());
    for i in pick.support() {
        v.xor_assign(rows.row(i));
    }
    v
}

fn codes() -> Vec<CssCode> {
    CssFamily::ALL
        .iter()
        .map(|&f| build_family(f, 2).unwrap())
        .collect()
}

proptest! {
    #[test]
    fn alist_round_trip(h in matrix()) {
        prop_assert_eq!(from_alist(&to_alist(&h)).unwrap(), h);
    }

    #[test]
    fn rank_plus_nullity(h in matrix()) {
        let basis = h.nullspace_basis();
        prop_assert_eq!(h.rank() + basis.n_rows(), h.n_cols());
        for v in basis.rows() {
            prop_assert!(h.mul_vec(v).unwrap().is_zero());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn syndrome_is_linear(e1 in pauli(16), e2 in pauli(16)) {
        // asym and sym-sk at s = 2 have 16 qubits
        for code in codes().into_iter().filter(|c| c.n() == 16) {
            let (a_x, a_z) = syndrome(&code, &e1).unwrap();
            let (b_x, b_z) = syndrome(&code, &e2).unwrap();
            let (c_x, c_z) = syndrome(&code, &e1.add(&e2)).unwrap();
            prop_assert_eq!(c_x, a_x.xor(&b_x));
            prop_assert_eq!(c_z, a_z.xor(&b_z));
        }
    }

    /// Multiplying an error by X stabilizers (rows of H_X, on e_x) or Z
    /// stabilizers (rows of H_Z, on e_z) changes neither the syndrome nor
    /// the decoding verdict.
    #[test]
    fn stabilizers_are_transparent(
        e in pauli(16),
        pick_x in bits(12),
        pick_z in bits(12),
        p in 0.005f64..0.1,
    ) {
        let code = build_family(CssFamily::Asym, 2).unwrap();
        let (hx, hz) = (&code.hx.h, &code.hz.h);
        let mut px = pick_x.to_bits();
        px.resize(hx.n_rows(), 0);
        let mut pz = pick_z.to_bits();
        pz.resize(hz.n_rows(), 0);
        let shifted = PauliErrorVector {
            e_x: e.e_x.xor(&combination(hx, &BitVector::from_bits(&px))),
            e_z: e.e_z.xor(&combination(hz, &BitVector::from_bits(&pz))),
        };
        prop_assert_eq!(syndrome(&code, &e).unwrap(), syndrome(&code, &shifted).unwrap());
        let decoder = CssDecoder::new(&code, BpOptions::default());
        let a = decoder.correct(&e, p);
        let b = decoder.correct(&shifted, p);
        prop_assert_eq!(a.logical_failure, b.logical_failure);
        prop_assert_eq!(a.converged, b.converged);
    }
}

#[test]
fn plane_axioms_for_small_fields() {
    for s in 1..=4 {
        let plane = PlaneModel::build(s).unwrap();
        let q = plane.q();
        for a in 0..plane.num_points() {
            for b in a + 1..plane.num_points() {
                let common: Vec<_> = plane
                    .lines_through_point(a)
                    .iter()
                    .filter(|l| plane.lines_through_point(b).contains(l))
                    .collect();
                assert_eq!(common.len(), 1, "s={s} points {a},{b}");
            }
        }
        for l in 0..plane.num_lines() {
            assert_eq!(plane.points_on_line(l).len(), q + 1);
        }
    }
}
