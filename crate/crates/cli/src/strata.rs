use anyhow::Result;
use clap::{Subcommand, ValueEnum};
use hymcg::strata::{
    complex_dimension, count_vertex_orbits, enumerate_simplices, family_to_tree, homology, Group, LaminarFamily,
    Variant, DEFAULT_SIMPLEX_CAP,
};
use serde_json::json;

use crate::{emit, Status};

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum VariantArg {
    Full,
    B,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Full => Variant::Full,
            VariantArg::B => Variant::B,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum GroupArg {
    Pure,
    Full,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Self {
        match g {
            GroupArg::Pure => Group::Pure,
            GroupArg::Full => Group::Full,
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Number of vertex orbits.
    Count {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "pure")]
        group: GroupArg,
    },
    /// Orbit representatives of simplices of one dimension.
    Enum {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        dim: usize,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, value_enum, default_value = "pure")]
        group: GroupArg,
    },
    /// Dimension of the quotient complex.
    Dim {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
    },
    /// Integral homology of the pure quotient complex.
    Homology {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "full")]
        variant: VariantArg,
        #[arg(long, default_value_t = 3)]
        max_dim: usize,
        #[arg(long, default_value_t = DEFAULT_SIMPLEX_CAP)]
        cap: usize,
    },
    /// Stable tree of a family, in Graphviz DOT.
    Dot {
        #[arg(long)]
        n: u32,
        /// Family literal such as "[[2,3],[2,3,4]]".
        #[arg(long, default_value = "[]")]
        family: String,
    },
    /// Stable tree of a family.
    Tree {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value = "[]")]
        family: String,
    },
}

pub fn run(cmd: Cmd, json: bool) -> Result<Status> {
    match cmd {
        Cmd::Count { n, variant, group } => {
            let c = count_vertex_orbits(n, variant.into(), group.into())?;
            emit(json, &c, c)?;
        }
        Cmd::Enum {
            n,
            dim,
            variant,
            group,
        } => {
            let fams = enumerate_simplices(n, dim, variant.into(), group.into())?;
            let text: Vec<String> = fams.iter().map(ToString::to_string).collect();
            emit(json, &fams, text.join("\n"))?;
        }
        Cmd::Dim { n, variant } => {
            let d = complex_dimension(n, variant.into())?;
            emit(json, &d, d)?;
        }
        Cmd::Homology {
            n,
            variant,
            max_dim,
            cap,
        } => {
            let h = homology(n, variant.into(), max_dim, cap)?;
            let mut lines = vec![format!("f-vector: {:?}", h.f_vector)];
            for (k, b) in h.betti.iter().enumerate() {
                let torsion = &h.torsion[k];
                if torsion.is_empty() {
                    lines.push(format!("H_{k}: rank {b}"));
                } else {
                    lines.push(format!("H_{k}: rank {b}, torsion Z/{}", torsion.join(" + Z/")));
                }
            }
            if !h.complete {
                lines.push(format!("(truncated at dimension {max_dim})"));
            }
            emit(json, &h, lines.join("\n"))?;
        }
        Cmd::Dot { n, family } => {
            // DOT is already machine-readable; --json wraps it for uniformity
            let dot = family_to_tree(&LaminarFamily::parse(n, &family)?).to_dot();
            emit(json, &json!({ "dot": dot }), dot.trim_end())?;
        }
        Cmd::Tree { n, family } => {
            let tree = family_to_tree(&LaminarFamily::parse(n, &family)?);
            let mut lines: Vec<String> = tree
                .vertices
                .iter()
                .enumerate()
                .map(|(i, v)| format!("v{i}: legs {:?}", v.legs))
                .collect();
            lines.extend(tree.edges.iter().map(|(a, b)| format!("v{a} -- v{b}")));
            emit(json, &tree, lines.join("\n"))?;
        }
    }
    Ok(Status::Ok)
}
