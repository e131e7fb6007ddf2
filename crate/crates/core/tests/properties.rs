use farey_poly::cf::CfExpansion;
use farey_poly::conjecture::decompose_reduced;
use farey_poly::format::{
    from_json, rows_from_csv, rows_to_csv, to_json, PolyBody, PolyRecord, RootRow,
};
use farey_poly::oracle::oracle_phi_parabolic;
use farey_poly::recursion::PhiEngine;
use farey_poly::ring::PolyZ;
use farey_poly::slope::{continued_fraction, mediant, ominus, parents};
use farey_poly::word::{cyclic_reduce, farey_word, free_reduce, Generator};
use farey_poly::Slope;
use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

fn slope(q_max: u64) -> impl Strategy<Value = Slope> {
    (1..=q_max)
        .prop_flat_map(|q| (0..=q, Just(q)))
        .prop_filter_map("reduced", |(p, q)| {
            (p.gcd(&q) == 1).then(|| Slope::new(p, q).unwrap())
        })
}

/// `Φ_s(−z)`.
fn reflect(p: &PolyZ) -> PolyZ {
    let c: Vec<BigInt> = p
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
        .collect();
    PolyZ::new(c)
}

proptest! {
    #[test]
    fn word_shape(s in slope(200)) {
        let w = farey_word(s).unwrap();
        prop_assert_eq!(w.len() as u64, 2 * s.q());
        for (i, l) in w.letters().iter().enumerate() {
            let g = if i % 2 == 0 { Generator::Y } else { Generator::X };
            prop_assert_eq!(l.generator, g);
        }
        prop_assert_eq!(free_reduce(&w), w.clone());
        prop_assert_eq!(cyclic_reduce(&w).len(), w.len());
    }

    #[test]
    fn parents_and_expansions(s in slope(10_000)) {
        prop_assume!(s != Slope::ZERO);
        let (a, b) = parents(s).unwrap();
        prop_assert_eq!(mediant(a, b).unwrap(), s);
        if s.q() > 1 {
            let (odd, even) = continued_fraction(s).unwrap();
            prop_assert_eq!(odd.value().unwrap(), s);
            prop_assert_eq!(even.value().unwrap(), s);
            prop_assert_eq!(CfExpansion::finite(odd.prefix().to_vec()).unwrap().value().unwrap(), s);
        }
    }

    #[test]
    fn parabolic_triangle(s in slope(80)) {
        prop_assume!(s.q() > 1);
        let (a, b) = parents(s).unwrap();
        let mut e = PhiEngine::parabolic();
        let sum = e.phi(s) + e.phi(ominus(a, b).unwrap()) + e.phi(a) * e.phi(b);
        prop_assert_eq!(sum, PolyZ::from_i64s(&[8]));
    }

    #[test]
    fn degree_and_leading(s in slope(80)) {
        let p = PhiEngine::parabolic().phi(s);
        prop_assert_eq!(p.degree(), Some(s.q() as usize));
        let lead = p.leading().unwrap().clone();
        prop_assert!(lead == BigInt::from(1) || lead == BigInt::from(-1));
    }

    #[test]
    fn recursion_matches_oracle(s in slope(30)) {
        prop_assert_eq!(PhiEngine::parabolic().phi(s), oracle_phi_parabolic(s).unwrap());
    }

    #[test]
    fn reflection_symmetry(s in slope(60)) {
        let mirror = Slope::new(s.q() - s.p(), s.q()).unwrap();
        let mut e = PhiEngine::parabolic();
        prop_assert_eq!(e.phi(mirror), reflect(&e.phi(s)));
        let mut h = PhiEngine::homogeneous();
        prop_assert_eq!(h.phi(mirror), reflect(&h.phi(s)));
    }

    #[test]
    fn reduced_is_signed_square(s in slope(40)) {
        let phi = PhiEngine::parabolic().phi_reduced(s);
        let d = decompose_reduced(&phi);
        prop_assert!(d.is_some(), "{}", s);
        prop_assert_eq!(d.unwrap().expand(), phi);
    }

    #[test]
    fn json_round_trip(s in slope(60), homog in any::<bool>()) {
        let body = if homog {
            PolyBody::Homogeneous(PhiEngine::homogeneous().phi(s))
        } else {
            PolyBody::Parabolic(PhiEngine::parabolic().phi(s))
        };
        let rec = PolyRecord { slope: s, body };
        let text = to_json(&rec);
        let back = from_json(&text).unwrap();
        prop_assert_eq!(&back, &rec);
        prop_assert_eq!(to_json(&back), text);
    }

    #[test]
    fn csv_round_trip(rows in prop::collection::vec((-1e6f64..1e6, -1e6f64..1e6, 0u64..100, 1u64..100, 0f64..1.0), 0..20)) {
        let rows: Vec<RootRow> =
            rows.into_iter().map(|(re, im, p, q, residual)| RootRow { re, im, p, q, residual }).collect();
        prop_assert_eq!(rows_from_csv(&rows_to_csv(&rows)).unwrap(), rows);
    }
}
