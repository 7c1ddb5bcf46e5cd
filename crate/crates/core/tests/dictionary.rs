use hymcg::hyp::{classify_curve, cut_profile, cut_profile_with, lift_multicurve, CurveKind};
use hymcg::strata::{count_vertex_orbits, curve_vertices, subset_elements, Group, LaminarFamily, Variant};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn family(g: u32, target: usize, seed: u64) -> LaminarFamily {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    LaminarFamily::random(2 * g + 2, Variant::Full, target, &mut rng).unwrap()
}

#[test]
fn nonseparating_classes_are_the_b_vertices() {
    for g in 1..=5u32 {
        let n = 2 * g + 2;
        let ns = curve_vertices(n, Variant::Full)
            .unwrap()
            .into_iter()
            .filter(|&s| classify_curve(&subset_elements(s), i64::from(g)).unwrap().kind == CurveKind::NonseparatingInvariant)
            .collect::<Vec<_>>();
        assert_eq!(ns, curve_vertices(n, Variant::B).unwrap());
        assert_eq!(ns.len() as u64, count_vertex_orbits(n, Variant::B, Group::Pure).unwrap());
    }
}

#[test]
fn maximal_families_cut_into_hyperbolic_pieces() {
    // not always pants: a pants piece with monodromy (1,1,0) lifts to a four-holed sphere
    for g in 2..=4u32 {
        for seed in 0..20 {
            let f = family(g, (2 * g - 1) as usize, seed);
            let p = cut_profile(&f, i64::from(g)).unwrap();
            assert!(p.components.iter().all(|c| c.euler_characteristic() <= -1), "{f}");
            assert!(p.upstairs_simplex_size as u32 <= 3 * g - 3);
        }
    }
    let four_holed = LaminarFamily::parse(8, "[[2,3],[4,5,6],[2,3,4,5,6]]").unwrap();
    let p = cut_profile(&four_holed, 3).unwrap();
    assert!(p.components.iter().any(|c| (c.genus, c.boundary) == (0, 4)));
}

proptest! {
    #[test]
    fn euler_and_riemann_hurwitz(g in 1u32..=5, target in 0usize..=9, seed in any::<u64>()) {
        let f = family(g, target.min((2 * g - 1) as usize), seed);
        for merge in [true, false] {
            let p = cut_profile_with(&f, i64::from(g), merge).unwrap();
            prop_assert!(p.euler_conserved());
            prop_assert!(p.swapped_pairs_consistent());
            if !merge {
                prop_assert!(p.riemann_hurwitz_holds());
            }
            let d = p.to_disconnected().unwrap();
            prop_assert_eq!(d.euler_characteristic(), 2 - 2 * i64::from(g));
        }
    }

    #[test]
    fn upstairs_size_counts_lifts(g in 2u32..=5, target in 0usize..=9, seed in any::<u64>()) {
        let f = family(g, target.min((2 * g - 1) as usize), seed);
        let l = lift_multicurve(&f, i64::from(g)).unwrap();
        let pairs = l.classes.iter().filter(|c| matches!(c.kind, CurveKind::SwappedPair { .. })).count();
        prop_assert_eq!(l.upstairs_simplex_size, f.len() + pairs);
        for c in &l.classes {
            if let Some((a, b)) = c.kind.genera() {
                let extra = u32::from(!c.kind.is_separating());
                prop_assert_eq!(a + b + extra, g);
            }
        }
    }
}
