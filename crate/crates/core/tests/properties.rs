use rand::Rng;
use maslov_core::bundle::{EighthTurn, QuarterTurn};
use maslov_core::generate::{self, UnitaryLoop};
use maslov_core::*;
use proptest::prelude::*;

const TOL: Tolerances = Tolerances::DEFAULT;

fn regroup(frame: &LagrangianFrame, seed: u64) -> LagrangianFrame {
    let g = generate::invertible_matrix(&mut generate::rng(seed), frame.n());
    LagrangianFrame::new(frame.columns() * g, &TOL).unwrap()
}

fn assert_send_sync<T: Send + Sync>() {}

#[test]
fn public_types_are_thread_safe() {
    assert_send_sync::<LagrangianFrame>();
    assert_send_sync::<LagrangianPath>();
    assert_send_sync::<SymQuadForm>();
    assert_send_sync::<IsotropicSubspace>();
    assert_send_sync::<PhaseChart>();
    assert_send_sync::<MaslovError>();
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn right_action_of_gl_changes_nothing(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = generate::rng(seed);
        let a = generate::random_lagrangian(&mut rng, n);
        let b = generate::random_lagrangian(&mut rng, n);
        let a2 = regroup(&a, seed ^ 1);
        prop_assert!(a.same_subspace(&a2, &TOL).unwrap());
        prop_assert_eq!(intersection_dim(&a, &b, &TOL).unwrap(), intersection_dim(&a2, &b, &TOL).unwrap());
        let (m1, m2) = (transversality_margin(&a, &b).unwrap(), transversality_margin(&a2, &b).unwrap());
        prop_assert!((m1 - m2).abs() < 1e-9);
        let (z1, z2) = (a.det_squared_phase(&TOL).unwrap(), a2.det_squared_phase(&TOL).unwrap());
        prop_assert!(((z1.re - z2.re).powi(2) + (z1.im - z2.im).powi(2)).sqrt() < 1e-9);
    }

    #[test]
    fn crossing_form_is_frame_independent(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = generate::rng(seed);
        let [alpha, gamma, beta, _] = generate::random_quadruple(&mut rng, n).unwrap();
        let q = graph_form(&alpha, &beta, &gamma, &TOL).unwrap();
        let q2 = graph_form(&regroup(&alpha, seed), &regroup(&beta, seed ^ 2), &regroup(&gamma, seed ^ 3), &TOL)
            .unwrap();
        prop_assert_eq!(q.inertia(), q2.inertia());
    }

    #[test]
    fn crossing_form_kernel_is_the_intersection(seed in any::<u64>(), n in 1usize..4, k in 0usize..4) {
        let k = k.min(n);
        let mut rng = generate::rng(seed);
        let u = generate::random_unitary(&mut rng, n);
        // γ = graph of diag(0,…,0, d) over the horizontal, k zeros
        let mut d = Matrix::zeros(n, n);
        for i in k..n {
            d[(i, i)] = if rng.random::<bool>() { 1.0 } else { -1.0 } * (0.5 + rng.random::<f64>());
        }
        let apply = |f: &LagrangianFrame| LagrangianFrame::new(&u * f.columns(), &TOL).unwrap();
        let alpha = apply(&LagrangianFrame::horizontal(n));
        let beta = apply(&LagrangianFrame::vertical(n));
        let gamma = apply(&LagrangianFrame::graph(&d, &TOL).unwrap());
        let q = graph_form(&alpha, &beta, &gamma, &TOL).unwrap();
        prop_assert_eq!(q.inertia().zero, intersection_dim(&alpha, &gamma, &TOL).unwrap());
        prop_assert_eq!(q.inertia().zero, k);
    }

    #[test]
    fn signature_is_congruence_invariant_and_odd(seed in any::<u64>(), m in 1usize..7) {
        let mut rng = generate::rng(seed);
        let spectrum = generate::random_spectrum(&mut rng, m, 0.1, 3.0);
        let q = generate::symmetric_with_spectrum(&mut rng, &spectrum);
        let g = generate::invertible_matrix(&mut rng, m);
        let s = signature(&SymQuadForm::new(q.clone()).unwrap());
        prop_assert_eq!(s, signature(&SymQuadForm::new(g.transpose() * &q * &g).unwrap()));
        prop_assert_eq!(-s, signature(&SymQuadForm::new(-q).unwrap()));
    }

    #[test]
    fn split_adds_up(seed in any::<u64>(), m in 1usize..7, p in 1usize..7) {
        let p = p.min(m);
        let mut rng = generate::rng(seed);
        let spectrum = generate::random_spectrum(&mut rng, m, 0.1, 3.0);
        let q = SymQuadForm::new(generate::symmetric_with_spectrum(&mut rng, &spectrum)).unwrap();
        let v = generate::gaussian_matrix(&mut rng, m, p);
        let (a, b) = signature_split(&q, &v, &TOL).unwrap();
        prop_assert_eq!(a + b, q.signature());
    }

    #[test]
    fn block_diagonal_signature_adds(seed in any::<u64>(), m1 in 1usize..4, m2 in 1usize..4) {
        let mut rng = generate::rng(seed);
        let s1 = generate::random_spectrum(&mut rng, m1, 0.1, 3.0);
        let s2 = generate::random_spectrum(&mut rng, m2, 0.1, 3.0);
        let a = generate::symmetric_with_spectrum(&mut rng, &s1);
        let b = generate::symmetric_with_spectrum(&mut rng, &s2);
        let mut block = Matrix::zeros(m1 + m2, m1 + m2);
        block.view_mut((0, 0), (m1, m1)).copy_from(&a);
        block.view_mut((m1, m1), (m2, m2)).copy_from(&b);
        let total = signature(&SymQuadForm::new(block).unwrap());
        prop_assert_eq!(total, signature(&SymQuadForm::new(a).unwrap()) + signature(&SymQuadForm::new(b).unwrap()));
    }

    #[test]
    fn hormander_index_is_antisymmetric(seed in any::<u64>(), n in 1usize..4) {
        let mut rng = generate::rng(seed);
        let [a, ap, b, bp] = generate::random_quadruple(&mut rng, n).unwrap();
        let m = HormanderMethod::Signature;
        let s = hormander_index(&a, &ap, &b, &bp, m, &TOL).unwrap();
        prop_assert_eq!(s, -hormander_index(&ap, &a, &b, &bp, m, &TOL).unwrap());
        prop_assert_eq!(s, -hormander_index(&a, &ap, &bp, &b, m, &TOL).unwrap());
        prop_assert!(s.unsigned_abs() as usize <= n);
    }

    #[test]
    fn reversal_negates_winding(seed in any::<u64>(), n in 1usize..4, k in -3i64..4) {
        let mut rng = generate::rng(seed);
        let path = UnitaryLoop::random(&mut rng, n, k, 0.6).resolved(32, &TOL).unwrap();
        prop_assert_eq!(winding_index(&path, &TOL).unwrap().index, k);
        prop_assert_eq!(winding_index(&path.reversed(), &TOL).unwrap().index, -k);
    }

    #[test]
    fn symplectic_maps_preserve_the_crossing_count(seed in any::<u64>(), k in -2i64..3) {
        let mut rng = generate::rng(seed);
        let path = UnitaryLoop::random(&mut rng, 2, k, 0.5).resolved(64, &TOL).unwrap();
        let alpha = generate::random_lagrangian_avoiding(&mut rng, 2, &[path.first()], 1e-2).unwrap();
        let u = generate::random_unitary(&mut rng, 2);
        let moved = path.map_frames(|f| f.transform(&u, &TOL), &TOL).unwrap();
        let moved_alpha = alpha.transform(&u, &TOL).unwrap();
        let c1 = crossing_index(&path.refined(4, &TOL).unwrap(), &alpha, &BetaChoice::Auto, &TOL);
        let c2 = crossing_index(&moved.refined(4, &TOL).unwrap(), &moved_alpha, &BetaChoice::Auto, &TOL);
        if let (Ok(c1), Ok(c2)) = (c1, c2) {
            prop_assert_eq!(c1.index, k);
            prop_assert_eq!(c2.index, k);
        }
    }

    #[test]
    fn holonomy_is_a_homomorphism(a in -1000i64..1000, b in -1000i64..1000) {
        prop_assert_eq!(holonomy_value(a + b), holonomy_value(a) * holonomy_value(b));
        prop_assert_eq!(holonomy_value(a + 4), holonomy_value(a));
        prop_assert_eq!(holonomy_value(a) * holonomy_value(a).inverse(), QuarterTurn::ONE);
        prop_assert_eq!(EighthTurn::new(2 * a), holonomy_value(a).to_eighth());
    }
}
