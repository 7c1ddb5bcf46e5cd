use anyhow::Result;
use clap::Subcommand;
use hymcg::words::{perm_group_order, TwistWord};
use serde_json::json;

use crate::{emit, Status};

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Merge adjacent powers of the same twist and drop zero exponents.
    Reduce {
        #[arg(long, visible_alias = "g")]
        genus: u32,
        /// Word such as "t1 t2^-3 t1".
        #[arg(long)]
        word: String,
    },
    /// Permutation of the 2g+2 Weierstrass points.
    Rhow {
        #[arg(long, visible_alias = "g")]
        genus: u32,
        #[arg(long)]
        word: String,
    },
    /// The chain word of the hyperelliptic involution.
    Involution {
        #[arg(long, visible_alias = "g")]
        genus: i64,
    },
    /// Order of the image of the Weierstrass action (g <= 4).
    Order {
        #[arg(long, visible_alias = "g")]
        genus: i64,
    },
}

pub fn run(cmd: Cmd, json: bool) -> Result<Status> {
    match cmd {
        Cmd::Reduce { genus, word } => {
            let w = TwistWord::parse(genus, &word)?.reduce();
            emit(json, &w, &w)?;
        }
        Cmd::Rhow { genus, word } => {
            let p = TwistWord::parse(genus, &word)?.rho_w();
            emit(json, &p, &p)?;
        }
        Cmd::Involution { genus } => {
            let w = TwistWord::involution(genus)?;
            emit(json, &w, &w)?;
        }
        Cmd::Order { genus } => {
            let order = perm_group_order(genus)?;
            emit(json, &json!({ "genus": genus, "order": order }), order)?;
        }
    }
    Ok(Status::Ok)
}
