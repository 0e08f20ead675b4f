use proptest::prelude::*;
use slnrectify_core::autoword::apply_word_matrix;
use slnrectify_core::exactalg::{GroebnerBudget, Scalar, ScalarMatrix, UniPoly};
use slnrectify_core::sl2bridge::{ams_straighten, attempt_divisibility, lift_plane_word, C3Triple, PlaneMove, PlaneTameWord};

fn point(a: i64, b: i64, c: i64) -> ScalarMatrix {
    let a = Scalar::from_int(if a == 0 { 1 } else { a });
    let (b, c) = (Scalar::from_int(b), Scalar::from_int(c));
    let d = &(&Scalar::from_int(1) + &(&b * &c)) / &a;
    ScalarMatrix::from_rows(vec![vec![a, b], vec![c, d]]).unwrap()
}

fn elementary(axis: usize, coeffs: Vec<i64>) -> PlaneMove {
    let mut cs = vec![0];
    cs.extend(coeffs);
    PlaneMove::Elementary {
        axis,
        h: UniPoly::from_ints(&cs),
    }
}

proptest! {
    #[test]
    fn lifted_words_act_on_first_columns(
        axes in prop::collection::vec(1usize..=2, 1..4),
        coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..3), 4),
        a in -5i64..=5, b in -5i64..=5, c in -5i64..=5,
    ) {
        let moves: Vec<PlaneMove> = axes.iter().zip(coeffs).map(|(&ax, cs)| elementary(ax, cs)).collect();
        let w = PlaneTameWord { moves };
        let lifted = lift_plane_word(&w).unwrap();
        let x = point(a, b, c);
        let y = apply_word_matrix(&lifted, &x).unwrap();
        let mut v = (x[(0, 0)].clone(), x[(1, 0)].clone());
        for m in &w.moves {
            v = m.apply_point((&v.0, &v.1));
        }
        prop_assert_eq!((y[(0, 0)].clone(), y[(1, 0)].clone()), v);
    }

    #[test]
    fn straightening_undoes_tame_images(
        axes in prop::collection::vec(1usize..=2, 1..4),
        coeffs in prop::collection::vec(prop::collection::vec(-3i64..=3, 1..3), 4),
    ) {
        let moves: Vec<PlaneMove> = axes.iter().zip(coeffs).map(|(&ax, cs)| elementary(ax, cs)).collect();
        let w = PlaneTameWord { moves };
        let (x, z) = w.apply(&UniPoly::one(), &UniPoly::t()).unwrap();
        let (back, rp) = ams_straighten(&x, &z, GroebnerBudget::default()).unwrap();
        prop_assert!(rp.is_identity());
        prop_assert_eq!(back.apply(&x, &z).unwrap(), (UniPoly::one(), UniPoly::t()));
    }

    #[test]
    fn divisibility_successes_replay(g1 in prop::collection::vec(-2i64..=2, 1..4), g2 in prop::collection::vec(-2i64..=2, 2..4), seed in 0u64..50) {
        let tr = C3Triple::new(UniPoly::from_ints(&g1), UniPoly::from_ints(&g2), UniPoly::t());
        if let Ok((w, out)) = attempt_divisibility(&tr, seed, 4) {
            prop_assert!(out.is_divisible());
            prop_assert_eq!(w.apply(&tr).unwrap(), out);
        }
    }
}
