use anyhow::Result;
use clap::{Args, Subcommand};
use hymcg::surface::{HyperellipticSurface, Surface};
use serde_json::json;

use crate::{emit, Status};

#[derive(Args, Debug)]
pub struct TypeArgs {
    #[arg(long, visible_alias = "g", allow_negative_numbers = true)]
    genus: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    punctures: i64,
    #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
    boundary: i64,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Euler characteristic and hyperbolicity of S_{g,n}^b.
    Info(TypeArgs),
    /// Quotient by the hyperelliptic involution, with a Riemann-Hurwitz check.
    Quotient {
        #[command(flatten)]
        ty: TypeArgs,
        /// Fixed points in the interior (defaults to what the other two leave of 2g+2).
        #[arg(long, allow_negative_numbers = true)]
        w_points: Option<i64>,
        /// Punctures fixed by the involution.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        w_punctures: i64,
        /// Boundary circles fixed by the involution.
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        w_boundary: i64,
    },
}

pub fn run(cmd: Cmd, json: bool) -> Result<Status> {
    match cmd {
        Cmd::Info(ty) => {
            let s = Surface::new(ty.genus, ty.punctures, ty.boundary)?;
            let value = json!({
                "surface": s,
                "eulerCharacteristic": s.euler_characteristic(),
                "hyperbolic": s.is_hyperbolic(),
            });
            let text = format!(
                "{s}: chi = {}, {}",
                s.euler_characteristic(),
                if s.is_hyperbolic() { "hyperbolic" } else { "not hyperbolic" }
            );
            emit(json, &value, text)?;
            Ok(Status::Ok)
        }
        Cmd::Quotient {
            ty,
            w_points,
            w_punctures,
            w_boundary,
        } => {
            let base = Surface::new(ty.genus, ty.punctures, ty.boundary)?;
            let w_points = w_points.unwrap_or(2 * ty.genus + 2 - w_punctures - w_boundary);
            let h = HyperellipticSurface::new(base, w_points, w_punctures, w_boundary)?;
            let q = h.quotient();
            let rh = q.riemann_hurwitz_holds(&h);
            let value = json!({ "surface": h, "quotient": q, "riemannHurwitz": rh });
            let text = format!(
                "{base} / involution = {} with {} branch points; Riemann-Hurwitz {}",
                q.quotient,
                q.branch_points,
                if rh { "holds" } else { "FAILS" }
            );
            emit(json, &value, text)?;
            Ok(Status::from_check(rh))
        }
    }
}
