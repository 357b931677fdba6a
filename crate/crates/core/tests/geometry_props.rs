use mosub::geometry::{
    derive_next_frame, dot, from_plane, norm, orthonormal_complement, to_plane, Frame,
    PlaneCoords, SeededRng,
};
use proptest::prelude::*;

fn unit(v: Vec<f64>) -> Option<Vec<f64>> {
    let n = norm(&v);
    (n > 1e-3).then(|| v.iter().map(|x| x / n).collect())
}

/// A random frame in dimension `n` with a seeded second direction.
fn frame_strategy() -> impl Strategy<Value = Frame> {
    (2usize..12)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(-10.0..10.0f64, n),
                prop::collection::vec(-1.0..1.0f64, n),
                any::<u64>(),
            )
        })
        .prop_filter_map("degenerate direction", |(origin, raw, seed)| {
            let d1 = unit(raw)?;
            let d2 = orthonormal_complement(&d1, &mut SeededRng::new(seed)).ok()?;
            Frame::new(origin, d1, d2).ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn plane_round_trip(frame in frame_strategy(), a in -100.0..100.0f64, b in -100.0..100.0f64) {
        let p = to_plane(&frame, &from_plane(&frame, PlaneCoords::new(a, b))).unwrap();
        let scale = 1.0 + a.abs().max(b.abs()) + norm(frame.origin());
        prop_assert!((p.alpha - a).abs() <= 1e-12 * scale);
        prop_assert!((p.beta - b).abs() <= 1e-12 * scale);
    }
}

proptest! {
    #[test]
    fn complement_is_orthonormal(raw in prop::collection::vec(-1.0..1.0f64, 2..40), seed in any::<u64>()) {
        let Some(d1) = unit(raw) else { return Ok(()) };
        let d2 = orthonormal_complement(&d1, &mut SeededRng::new(seed)).unwrap();
        prop_assert!((norm(&d2) - 1.0).abs() <= 1e-12);
        prop_assert!(dot(&d1, &d2).abs() <= 1e-10);
    }

    #[test]
    fn complement_is_reproducible(raw in prop::collection::vec(-1.0..1.0f64, 2..20), seed in any::<u64>()) {
        let Some(d1) = unit(raw) else { return Ok(()) };
        let a = orthonormal_complement(&d1, &mut SeededRng::new(seed)).unwrap();
        let b = orthonormal_complement(&d1, &mut SeededRng::new(seed)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn next_frame_keeps_the_plane(
        frame in frame_strategy(),
        step in (-5.0..5.0f64, -5.0..5.0f64),
        others in prop::collection::vec((-5.0..5.0f64, -5.0..5.0f64), 6),
    ) {
        prop_assume!(step.0.hypot(step.1) > 1e-6);
        let x_next = from_plane(&frame, PlaneCoords::new(step.0, step.1));
        let next = derive_next_frame(&frame, &x_next).unwrap();
        prop_assert!((norm(next.d1()) - 1.0).abs() <= 1e-12);
        prop_assert!((norm(next.d2()) - 1.0).abs() <= 1e-12);
        prop_assert!(dot(next.d1(), next.d2()).abs() <= 1e-10);
        prop_assert_eq!(next.origin(), &x_next[..]);
        let mut points = vec![frame.origin().to_vec(), x_next.clone()];
        points.extend(others.iter().map(|&(a, b)| from_plane(&frame, PlaneCoords::new(a, b))));
        for y in &points {
            prop_assert!(next.off_plane_residual(y).unwrap() <= 1e-8);
        }
    }
}

#[test]
fn fixed_seed_gives_the_same_direction() {
    let mut e1 = vec![0.0; 5];
    e1[0] = 1.0;
    let a = orthonormal_complement(&e1, &mut SeededRng::new(42)).unwrap();
    let b = orthonormal_complement(&e1, &mut SeededRng::new(42)).unwrap();
    assert_eq!(a, b);
    let c = orthonormal_complement(&e1, &mut SeededRng::new(43)).unwrap();
    assert_ne!(a, c);
}
