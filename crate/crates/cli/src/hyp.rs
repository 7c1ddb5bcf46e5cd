use anyhow::{Context, Result};
use clap::{Subcommand, ValueEnum};
use hymcg::hyp::{classify_curve, cut_profile_with, lift_multicurve, stabilizer_profile, Action, CurveKind, Flavor};
use hymcg::strata::{LaminarFamily, Variant};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{emit, Status};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum FlavorArg {
    Full,
    PureOriented,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Lift of the curve cutting off a subset of {2, ..., 2g+2}.
    Classify {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        /// Comma-separated branch points, e.g. 3,4,5.
        #[arg(long, value_delimiter = ',', required = true)]
        subset: Vec<u32>,
    },
    /// Lift of a whole family.
    Lift {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long, default_value = "[]")]
        family: String,
    },
    /// Components of S_g cut along the lifted multicurve.
    Cut {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long, default_value = "[]")]
        family: String,
        /// Keep the annulus between the two lifts of a 2-point curve.
        #[arg(long)]
        raw: bool,
    },
    /// Structural profile of the stabilizer of the lifted simplex.
    Stab {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long, default_value = "[]")]
        family: String,
        #[arg(long, value_enum, default_value = "pure-oriented")]
        flavor: FlavorArg,
    },
    /// Euler conservation and Riemann-Hurwitz over random families.
    ConservationCheck {
        #[arg(long, visible_alias = "g")]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn family(genus: i64, literal: &str) -> Result<LaminarFamily> {
    let n = u32::try_from(2 * genus + 2)
        .ok()
        .filter(|_| genus >= 1)
        .with_context(|| format!("genus must be at least 1, got {genus}"))?;
    Ok(LaminarFamily::parse(n, literal)?)
}

fn action_text(a: Action) -> String {
    match a {
        Action::Invariant => "invariant".into(),
        Action::SwappedWith(j) => format!("swapped with #{j}"),
    }
}

pub fn run(cmd: Cmd, json: bool) -> Result<Status> {
    match cmd {
        Cmd::Classify { genus, subset } => {
            let c = classify_curve(&subset, genus)?;
            emit(json, &c, &c)?;
        }
        Cmd::Lift { genus, family: lit } => {
            let lift = lift_multicurve(&family(genus, &lit)?, genus)?;
            let mut lines: Vec<String> = lift.classes.iter().map(|c| format!("{:?}: {c}", c.subset)).collect();
            lines.push(format!("upstairs simplex size {}", lift.upstairs_simplex_size));
            emit(json, &lift, lines.join("\n"))?;
        }
        Cmd::Cut { genus, family: lit, raw } => {
            let p = cut_profile_with(&family(genus, &lit)?, genus, !raw)?;
            let lines: Vec<String> = p
                .components
                .iter()
                .enumerate()
                .map(|(i, c)| {
                    format!(
                        "#{i}: genus {}, {} boundary, {} branch, {}",
                        c.genus,
                        c.boundary,
                        c.branch,
                        action_text(c.action)
                    )
                })
                .collect();
            emit(json, &p, lines.join("\n"))?;
        }
        Cmd::Stab {
            genus,
            family: lit,
            flavor,
        } => {
            let flavor = match flavor {
                FlavorArg::Full => Flavor::Full,
                FlavorArg::PureOriented => Flavor::PureOriented,
            };
            let s = stabilizer_profile(&family(genus, &lit)?, genus, flavor)?;
            let mut lines: Vec<String> = s
                .twist_generators
                .iter()
                .map(|t| format!("{:?} about {:?} ({}): lattice {}", t.kind, s.classes[t.curve].subset, s.classes[t.curve], t.lattice))
                .collect();
            lines.push(format!("{} cut factors; symmetry part of order {}", s.cut_factors.len(), s.symmetry_part));
            emit(json, &s, lines.join("\n"))?;
        }
        Cmd::ConservationCheck { genus, seed, samples } => {
            let n = 2 * genus + 2;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failure = None;
            for _ in 0..samples {
                let target = rng.gen_range(0..=(n.saturating_sub(3)) as usize);
                let f = LaminarFamily::random(n, Variant::Full, target, &mut rng)?;
                let p = cut_profile_with(&f, i64::from(genus), true)?;
                let additive = p.classes.iter().all(|c| match c.kind {
                    CurveKind::SeparatingInvariant { genus_left, genus_right } => genus_left + genus_right == genus,
                    _ => true,
                });
                if !(p.euler_conserved() && p.riemann_hurwitz_holds() && p.swapped_pairs_consistent() && additive) {
                    failure = Some(f);
                    break;
                }
            }
            let ok = failure.is_none();
            let text = match &failure {
                None => format!("OK: {samples} random families conserve Euler characteristic"),
                Some(f) => format!("FAIL: {f}"),
            };
            emit(json, &json!({ "genus": genus, "seed": seed, "samples": samples, "ok": ok, "failure": failure }), text)?;
            return Ok(Status::from_check(ok));
        }
    }
    Ok(Status::Ok)
}
