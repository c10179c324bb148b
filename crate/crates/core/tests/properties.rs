//! Property tests for the structural invariants: graded commutation,
//! duality, spatiality and the three round trips.

#![allow(clippy::needless_range_loop)]

use proptest::prelude::*;

use emdk_core::exterior::{PForm, COMP_COUNT};
use emdk_core::fields::{decompose_f, reconstruct_f, Velocity};
use emdk_core::media::{build_from_zeta, extract_zeta, ConstitutiveZ};
use emdk_core::sem::{drive_to_tensor, tensor_to_drive, DriveForms};

fn arb_form(degree: usize) -> impl Strategy<Value = PForm> {
    prop::collection::vec(-1.0f64..1.0, COMP_COUNT[degree])
        .prop_map(move |c| PForm::from_components(degree, &c))
}

fn arb_rapidity() -> impl Strategy<Value = [f64; 3]> {
    [-1.2f64..1.2, -1.2f64..1.2, -1.2f64..1.2]
}

fn arb_self_adjoint() -> impl Strategy<Value = ConstitutiveZ> {
    prop::collection::vec(-1.0f64..1.0, 36).prop_map(|v| {
        let mut m = [[0.0; 6]; 6];
        for (k, val) in v.into_iter().enumerate() {
            m[k / 6][k % 6] = val;
        }
        ConstitutiveZ::from_matrix6(&m).self_adjoint_part()
    })
}

proptest! {
    #[test]
    fn wedge_graded_commutation(
        p in 0usize..=2,
        q in 0usize..=2,
        a_comps in prop::collection::vec(-1.0f64..1.0, 6),
        b_comps in prop::collection::vec(-1.0f64..1.0, 6),
    ) {
        let a = PForm::from_components(p, &a_comps[..COMP_COUNT[p]]);
        let b = PForm::from_components(q, &b_comps[..COMP_COUNT[q]]);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        let sign = if (p * q) % 2 == 0 { 1.0 } else { -1.0 };
        if p + q <= 4 {
            prop_assert!((ab - ba.scale(sign)).max_abs() <= 1e-12);
        } else {
            prop_assert!(ab.is_degenerate() && ab.max_abs() == 0.0);
        }
    }

    #[test]
    fn hodge_is_a_signed_involution(p in 0usize..=4, comps in prop::collection::vec(-1.0f64..1.0, 6)) {
        let a = PForm::from_components(p, &comps[..COMP_COUNT[p]]);
        let sign = if (p + 1) % 2 == 0 { 1.0 } else { -1.0 };
        prop_assert!((a.hodge().hodge() - a.scale(sign)).max_abs() <= 1e-14);
    }

    #[test]
    fn decomposition_round_trip(f in arb_form(2), w in arb_rapidity()) {
        let u = Velocity::from_rapidity(&w);
        let dec = decompose_f(&f, &u);
        prop_assert!(dec.spatiality_violation(&u) <= 1e-12);
        let back = reconstruct_f(&dec, &u).unwrap();
        prop_assert!((back - f).max_abs() <= 1e-12);
    }

    #[test]
    fn zeta_round_trip_on_self_adjoint_media(z in arb_self_adjoint(), w in arb_rapidity()) {
        let v = Velocity::from_rapidity(&w);
        let blocks = extract_zeta(&z, &v);
        let rebuilt = build_from_zeta(&blocks).unwrap();
        let err = rebuilt
            .matrix6()
            .iter()
            .flatten()
            .zip(z.matrix6().iter().flatten())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0f64, f64::max);
        prop_assert!(err <= 1e-12);
    }

    #[test]
    fn drive_tensor_round_trip(comps in prop::collection::vec(-1.0f64..1.0, 16)) {
        let tau = DriveForms {
            tau: [
                PForm::from_components(3, &comps[0..4]),
                PForm::from_components(3, &comps[4..8]),
                PForm::from_components(3, &comps[8..12]),
                PForm::from_components(3, &comps[12..16]),
            ],
        };
        let back = tensor_to_drive(&drive_to_tensor(&tau));
        prop_assert!(back.max_abs_diff(&tau) <= 1e-14);
    }
}
