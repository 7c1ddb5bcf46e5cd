//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Run with `cargo test -p hymcg-core --test acceptance`.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use hymcg::hyp::{cut_profile, stabilizer_profile, CurveKind, Flavor, Lattice};
use hymcg::strata::{self, complex_dimension, count_vertex_orbits, curve_vertices, homology, Group, LaminarFamily, Variant};
use hymcg::symplectic::{self, braid_relation_failures, evaluate, group_closure, level_membership, sp_order, ModMatrix};
use hymcg::words::{perm_group_order, Letter, TwistWord};
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 0x5eed_2024;

struct Outcome {
    ok: bool,
    detail: String,
}

fn pass(detail: impl Into<String>) -> Outcome {
    Outcome { ok: true, detail: detail.into() }
}

fn fail(detail: impl Into<String>) -> Outcome {
    Outcome { ok: false, detail: detail.into() }
}

fn factorial(n: u64) -> u64 {
    (1..=n).product()
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn involution_identity() -> Outcome {
    for g in 1..=6 {
        let m = evaluate(&TwistWord::involution(g).unwrap());
        if !m.is_minus_identity() {
            return fail(format!("g={g}: product is not -I"));
        }
    }
    pass("evaluate(involution word) = -I for g=1..6")
}

fn braid_relations() -> Outcome {
    for g in 1..=6 {
        let failures = braid_relation_failures(g).unwrap();
        if !failures.is_empty() {
            return fail(format!("g={g}: {} relations fail", failures.len()));
        }
    }
    pass("braid and commutation relations exact for g=1..6")
}

fn rho_w_surjective() -> Outcome {
    for g in 1..=4u64 {
        let order = perm_group_order(g as i64).unwrap();
        if order != factorial(2 * g + 2) {
            return fail(format!("g={g}: image order {order}, expected {}", factorial(2 * g + 2)));
        }
    }
    for g in 1..=6 {
        if !TwistWord::involution(g).unwrap().rho_w().is_identity() {
            return fail(format!("g={g}: involution acts nontrivially on Weierstrass points"));
        }
    }
    pass("image of rho_W is S_{2g+2} for g=1..4; involution acts trivially for g=1..6")
}

fn squares_mod_3() -> Outcome {
    let gens: Vec<ModMatrix> = symplectic::chain_transvections_mod(2, 3)
        .unwrap()
        .iter()
        .map(|t| t.mul(t))
        .collect();
    let closure = match group_closure(&gens, symplectic::DEFAULT_CLOSURE_CAP) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let expected = sp_order(2, 3).unwrap();
    let has_minus = closure.contains(&ModMatrix::minus_identity(4, 3));
    let msg = format!("order {} (Sp(4,3) has {expected}), contains -I: {has_minus}", closure.order());
    if BigUint::from(closure.order()) == expected && expected == BigUint::from(51840u32) && has_minus {
        pass(msg)
    } else {
        fail(msg)
    }
}

/// Words likely to land in the level-2 subgroup: even exponents, and conjugates of squares.
fn sample_word(rng: &mut ChaCha8Rng, g: u32) -> TwistWord {
    let len = rng.gen_range(0..12);
    match rng.gen_range(0..3) {
        0 => TwistWord::random(g, len, 4, rng),
        1 => {
            let letters = (0..len)
                .map(|_| {
                    let e = 2 * rng.gen_range(1..=3i64) * if rng.gen_bool(0.5) { 1 } else { -1 };
                    Letter::new(rng.gen_range(1..=2 * g + 1), e)
                })
                .collect();
            TwistWord::new(g, letters).unwrap()
        }
        _ => {
            let u = TwistWord::random(g, len, 3, rng);
            let sq = TwistWord::generator(g, rng.gen_range(1..=2 * g + 1)).unwrap().pow(2);
            u.concat(&sq).unwrap().concat(&u.inverse()).unwrap()
        }
    }
}

fn mod_2_consistency() -> Outcome {
    let gens = symplectic::chain_transvections_mod(2, 2).unwrap();
    let closure = match group_closure(&gens, symplectic::DEFAULT_CLOSURE_CAP) {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    if closure.order() != 720 || sp_order(2, 2).unwrap() != BigUint::from(720u32) {
        return fail(format!("mod-2 closure has order {}", closure.order()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let mut in_level = 0;
    // genus 1 is excluded: there S_4 -> Sp(2, Z/2) = S_3 has a kernel
    for i in 0..10_000 {
        let g = rng.gen_range(2..=4);
        let w = sample_word(&mut rng, g);
        if level_membership(&w, 2).unwrap() {
            in_level += 1;
            if !w.rho_w().is_identity() {
                return fail(format!("sample {i}: {w} is in level 2 but rho_W = {}", w.rho_w()));
            }
        }
    }
    pass(format!("mod-2 closure order 720; 10000 words at g=2..4, {in_level} in level 2, all with trivial rho_W"))
}

/// Curves on S_{0,n} as unordered splittings {S, complement}, straight from subsets.
fn brute_force_curves(n: u32, b_only: bool) -> u64 {
    let all = (1u64 << n) - 1;
    let mut seen = BTreeSet::new();
    for s in 1..all {
        let k = s.count_ones();
        if k < 2 || k > n - 2 || (b_only && k != 2 && k != n - 2) {
            continue;
        }
        seen.insert(s.min(all ^ s));
    }
    seen.len() as u64
}

fn orbit_counts() -> Outcome {
    let mut problems = Vec::new();
    for n in 4..=10u32 {
        let full = count_vertex_orbits(n, Variant::Full, Group::Pure).unwrap();
        let full_formula = (1u64 << (n - 1)) - u64::from(n) - 1;
        let full_brute = brute_force_curves(n, false);
        if full != full_formula || full != full_brute {
            problems.push(format!("n={n} full: computed {full}, formula {full_formula}, brute force {full_brute}"));
        }
        let b = count_vertex_orbits(n, Variant::B, Group::Pure).unwrap();
        let b_formula = binomial(u64::from(n), 2);
        let b_brute = brute_force_curves(n, true);
        if b != b_formula || b != b_brute {
            problems.push(format!("n={n} b: computed {b}, formula C(n,2)={b_formula}, brute force {b_brute}"));
        }
    }
    if problems.is_empty() {
        pass("2^(n-1)-n-1 and C(n,2) match brute force for n=4..10")
    } else {
        fail(problems.join("; "))
    }
}

fn dimension_theorem() -> Outcome {
    for n in 4..=12u32 {
        let expected = if n == 4 { 0 } else { (n / 2 - 1) as usize };
        match complex_dimension(n, Variant::B) {
            Ok(d) if d == expected => {}
            Ok(d) => return fail(format!("n={n}: dimension {d}, expected {expected}")),
            Err(e) => return fail(format!("n={n}: {e}")),
        }
    }
    pass("dim C_b(S_{0,n}) = floor(n/2)-1 for n=5..12, 0 for n=4")
}

fn small_n_coincidence() -> Outcome {
    for n in [4, 5] {
        if curve_vertices(n, Variant::B).unwrap() != curve_vertices(n, Variant::Full).unwrap() {
            return fail(format!("n={n}: vertex sets differ"));
        }
    }
    pass("b and full vertex sets agree for n=4,5")
}

fn homology_sanity() -> Outcome {
    let h = homology(5, Variant::Full, 5, strata::DEFAULT_SIMPLEX_CAP).unwrap();
    if h.f_vector != [10, 15] || h.betti != [1, 6] {
        return fail(format!("n=5: f={:?}, betti={:?}", h.f_vector, h.betti));
    }
    for n in 4..=7 {
        for variant in [Variant::Full, Variant::B] {
            let h = homology(n, variant, n as usize, strata::DEFAULT_SIMPLEX_CAP).unwrap();
            if !h.complete || h.euler_from_betti() != h.euler_from_f_vector() {
                return fail(format!("n={n} {variant:?}: Euler characteristic mismatch"));
            }
        }
    }
    pass("n=5: f=(10,15), b=(1,6); Euler characteristics agree for n<=7")
}

fn dictionary_conservation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 0xd1c7);
    for g in 2..=5u32 {
        let n = 2 * g + 2;
        for i in 0..1000 {
            let target = rng.gen_range(0..=(n - 3) as usize);
            let f = LaminarFamily::random(n, Variant::Full, target, &mut rng).unwrap();
            let p = cut_profile(&f, i64::from(g)).unwrap();
            if !p.euler_conserved() || !p.riemann_hurwitz_holds() || !p.swapped_pairs_consistent() {
                return fail(format!("g={g} sample {i}: {f} violates conservation"));
            }
            for c in &p.classes {
                if let CurveKind::SeparatingInvariant { genus_left, genus_right } = c.kind {
                    if genus_left + genus_right != g {
                        return fail(format!("g={g}: {c} breaks genus additivity"));
                    }
                }
            }
        }
    }
    pass("1000 random families per g=2..5: Euler conservation, Riemann-Hurwitz, genus additivity")
}

fn stabilizer_exponents() -> Outcome {
    let (mut b_vertices, mut odd_vertices) = (0, 0);
    for side in curve_vertices(6, Variant::Full).unwrap() {
        let f = LaminarFamily::from_masks(6, vec![side]).unwrap();
        let s = stabilizer_profile(&f, 2, Flavor::PureOriented).unwrap();
        let expected = match s.classes[0].kind {
            CurveKind::NonseparatingInvariant => Lattice::TwoZ,
            CurveKind::SeparatingInvariant { .. } => Lattice::Z,
            CurveKind::SwappedPair { .. } => return fail(format!("{f}: swapped pair at genus 2")),
        };
        if s.twist_generators.len() != 1 || s.twist_generators[0].lattice != expected {
            return fail(format!("{f}: wrong twist lattice"));
        }
        if side.count_ones() % 2 == 0 {
            b_vertices += 1;
        } else {
            odd_vertices += 1;
        }
    }
    let msg = format!("{b_vertices} b-vertices with 2Z, {odd_vertices} odd-side vertices with Z");
    if b_vertices == 15 && odd_vertices == 10 {
        pass(msg)
    } else {
        fail(msg)
    }
}

fn main() -> ExitCode {
    type Check = fn() -> Outcome;
    let criteria: [(&str, Check, Duration); 11] = [
        ("involution identity", involution_identity, Duration::from_secs(1)),
        ("braid relations", braid_relations, Duration::from_secs(1)),
        ("rho_W surjectivity", rho_w_surjective, Duration::from_secs(10)),
        ("squares generate mod 3", squares_mod_3, Duration::from_secs(120)),
        ("mod-2 consistency", mod_2_consistency, Duration::from_secs(30)),
        ("orbit counts", orbit_counts, Duration::from_secs(10)),
        ("dimension theorem", dimension_theorem, Duration::from_secs(60)),
        ("small-n coincidence", small_n_coincidence, Duration::from_secs(1)),
        ("homology sanity", homology_sanity, Duration::from_secs(60)),
        ("dictionary conservation", dictionary_conservation, Duration::from_secs(60)),
        ("stabilizer exponents", stabilizer_exponents, Duration::from_secs(1)),
    ];
    let mut failures = 0;
    for (i, (name, check, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut out = check();
        let elapsed = start.elapsed();
        if out.ok && elapsed > *limit {
            out = fail(format!("{} (took {elapsed:.2?}, limit {limit:?})", out.detail));
        }
        if !out.ok {
            failures += 1;
        }
        println!(
            "{} {:>2}. {name}: {} [{elapsed:.2?}]",
            if out.ok { "PASS" } else { "FAIL" },
            i + 1,
            out.detail
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
