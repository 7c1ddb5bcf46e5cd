use anyhow::{bail, Context, Result};
use clap::Subcommand;
use hymcg::symplectic::{
    braid_relation_failures, chain_transvections_mod, evaluate, evaluate_mod, group_closure, level_membership, sp_order,
    transvection_power, ChainClasses, ModMatrix, SympMatrix, DEFAULT_CLOSURE_CAP,
};
use hymcg::words::{Letter, TwistWord};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::{emit, Status};

pub const CAP_VAR: &str = "HYMCG_CLOSURE_CAP";

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Matrix of a word, over Z or reduced mod m.
    Eval {
        #[arg(long, visible_alias = "g")]
        genus: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        modulus: Option<i64>,
    },
    /// Whether a word acts trivially on H_1(S; Z/m). Exits 1 if not.
    Level {
        #[arg(long, visible_alias = "g")]
        genus: u32,
        #[arg(long)]
        word: String,
        #[arg(long)]
        modulus: i64,
    },
    /// Verify braid and commutation relations among the chain transvections.
    BraidCheck {
        #[arg(long, visible_alias = "g")]
        genus: i64,
    },
    /// Order of the group generated by the chain transvections mod m.
    Closure {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long)]
        modulus: i64,
        /// Use the squares of the transvections as generators.
        #[arg(long)]
        squares: bool,
        /// Element cap; defaults to $HYMCG_CLOSURE_CAP, then 10^7.
        #[arg(long)]
        cap: Option<usize>,
    },
    /// Verify that the involution word evaluates to -I.
    InvolutionCheck {
        #[arg(long, visible_alias = "g")]
        genus: i64,
    },
    /// |Sp(2g, F_p)|.
    SpOrder {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long)]
        prime: u64,
    },
    /// Homology classes of the chain curves, with a basis check.
    Chain {
        #[arg(long, visible_alias = "g")]
        genus: i64,
    },
    /// Matrix of t_i^e.
    Transvection {
        #[arg(long, visible_alias = "g")]
        genus: i64,
        #[arg(long)]
        index: usize,
        #[arg(long, default_value = "1", allow_negative_numbers = true)]
        exponent: BigInt,
        #[arg(long)]
        modulus: Option<u32>,
    },
    /// Random words in the level-2 subgroup must act trivially on Weierstrass points.
    PurityCheck {
        #[arg(long, visible_alias = "g", default_value_t = 2)]
        genus: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
}

fn closure_cap(flag: Option<usize>) -> Result<usize> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var(CAP_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{CAP_VAR}={v} is not a count")),
        Err(_) => Ok(DEFAULT_CLOSURE_CAP),
    }
}

/// Random words, half of them with only even exponents so the level-2 case is not vacuous.
fn sample(rng: &mut ChaCha8Rng, genus: u32) -> TwistWord {
    let len = rng.gen_range(0..12);
    let w = TwistWord::random(genus, len, 4, rng);
    if rng.gen_bool(0.5) {
        return w;
    }
    let doubled = w
        .letters()
        .iter()
        .map(|l| Letter::new(l.index, &l.exponent * 2))
        .collect();
    TwistWord::new(genus, doubled).expect("same genus")
}

pub fn run(cmd: Cmd, json: bool) -> Result<Status> {
    match cmd {
        Cmd::Eval { genus, word, modulus } => {
            let w = TwistWord::parse(genus, &word)?;
            let m = match modulus {
                None => SympMatrix::from(&evaluate(&w)),
                Some(m) => SympMatrix::from(&evaluate_mod(&w, m)?),
            };
            let text = match modulus {
                None => evaluate(&w).to_string(),
                Some(md) => evaluate_mod(&w, md)?.to_string(),
            };
            emit(json, &m, text.trim_end())?;
            Ok(Status::Ok)
        }
        Cmd::Level { genus, word, modulus } => {
            let w = TwistWord::parse(genus, &word)?;
            let member = level_membership(&w, modulus)?;
            emit(json, &json!({ "word": w, "modulus": modulus, "member": member }), member)?;
            Ok(Status::from_check(member))
        }
        Cmd::BraidCheck { genus } => {
            let failures = braid_relation_failures(genus)?;
            let text = if failures.is_empty() {
                "OK: all braid and commutation relations hold".to_string()
            } else {
                let lines: Vec<String> = failures.iter().map(|f| format!("FAIL: {} != {}", f.lhs, f.rhs)).collect();
                lines.join("\n")
            };
            emit(json, &json!({ "genus": genus, "ok": failures.is_empty(), "failures": failures }), text)?;
            Ok(Status::from_check(failures.is_empty()))
        }
        Cmd::Closure {
            genus,
            modulus,
            squares,
            cap,
        } => {
            let mut gens = chain_transvections_mod(genus, modulus)?;
            if squares {
                gens = gens.iter().map(|t| t.mul(t)).collect();
            }
            let closure = group_closure(&gens, closure_cap(cap)?)?;
            let size = gens[0].size();
            let contains_minus = closure.contains(&ModMatrix::minus_identity(size, gens[0].modulus()));
            let sp = sp_order(genus, modulus as u64).ok();
            let mut text = format!("order {}", closure.order());
            if let Some(sp) = &sp {
                text.push_str(&format!(" (|Sp({},{modulus})| = {sp})", size));
            }
            text.push_str(&format!("; contains -I: {contains_minus}"));
            let value = json!({
                "genus": genus,
                "modulus": modulus,
                "squares": squares,
                "order": closure.order(),
                "spOrder": sp.map(|s| s.to_string()),
                "containsMinusIdentity": contains_minus,
            });
            emit(json, &value, text)?;
            Ok(Status::Ok)
        }
        Cmd::InvolutionCheck { genus } => {
            let m = evaluate(&TwistWord::involution(genus)?);
            let ok = m.is_minus_identity();
            let text = if ok { "OK: -I".to_string() } else { format!("FAIL: not -I\n{m}") };
            emit(json, &json!({ "genus": genus, "ok": ok, "matrix": SympMatrix::from(&m) }), text.trim_end())?;
            Ok(Status::from_check(ok))
        }
        Cmd::SpOrder { genus, prime } => {
            let order = sp_order(genus, prime)?;
            emit(json, &json!({ "genus": genus, "prime": prime, "order": order.to_string() }), &order)?;
            Ok(Status::Ok)
        }
        Cmd::Chain { genus } => {
            let chain = ChainClasses::new(genus)?;
            let check = chain.check();
            let mut lines: Vec<String> = chain
                .vectors
                .iter()
                .enumerate()
                .map(|(i, v)| format!("c{}: {v:?}", i + 1))
                .collect();
            lines.push(match &check {
                Ok(()) => "OK: chain pattern, primitive, spans H_1".to_string(),
                Err(e) => format!("FAIL: {e}"),
            });
            let value = json!({ "genus": genus, "vectors": chain.vectors, "ok": check.is_ok() });
            emit(json, &value, lines.join("\n"))?;
            Ok(Status::from_check(check.is_ok()))
        }
        Cmd::Transvection {
            genus,
            index,
            exponent,
            modulus,
        } => {
            let chain = ChainClasses::new(genus)?;
            if index == 0 || index > chain.vectors.len() {
                bail!("index must lie in 1..={}", chain.vectors.len());
            }
            let t = transvection_power(&chain.vectors[index - 1], &exponent)?;
            let (value, text) = match modulus {
                None => (SympMatrix::from(&t), t.to_string()),
                Some(m) => {
                    if m < 2 {
                        bail!("modulus must be at least 2");
                    }
                    let r = t.reduce_mod(m);
                    (SympMatrix::from(&r), r.to_string())
                }
            };
            emit(json, &value, text.trim_end())?;
            Ok(Status::Ok)
        }
        Cmd::PurityCheck { genus, seed, samples } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut in_level = 0usize;
            let mut counterexample = None;
            for _ in 0..samples {
                let w = sample(&mut rng, genus);
                if level_membership(&w, 2)? {
                    in_level += 1;
                    if !w.rho_w().is_identity() {
                        counterexample = Some(w);
                        break;
                    }
                }
            }
            let ok = counterexample.is_none();
            let text = match &counterexample {
                None => format!("OK: {in_level} of {samples} words in level 2, all act trivially"),
                Some(w) => format!("FAIL: {w} is in level 2 but permutes Weierstrass points by {}", w.rho_w()),
            };
            let value = json!({
                "genus": genus,
                "seed": seed,
                "samples": samples,
                "inLevel": in_level,
                "ok": ok,
                "counterexample": counterexample,
            });
            emit(json, &value, text)?;
            Ok(Status::from_check(ok))
        }
    }
}
