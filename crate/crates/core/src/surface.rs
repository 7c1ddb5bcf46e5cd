//! Topological types of surfaces and hyperelliptic surfaces.
//!
//! A surface `S_{g,n}^k` is recorded only by its genus, number of punctures and
//! number of boundary circles. A hyperelliptic surface additionally records how
//! many of the fixed points of the involution are interior Weierstrass points,
//! punctures, or boundary circles; together these always number `2g + 2`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("invalid topological type (g={genus}, n={punctures}, k={boundary}): counts must be non-negative")]
    InvalidTopologicalType {
        genus: i64,
        punctures: i64,
        boundary: i64,
    },
    #[error("invalid hyperelliptic data: {}", format_violations(.0))]
    InvalidHyperelliptic(Vec<Violation>),
}

/// A single broken constraint of a hyperelliptic fixed-locus assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// `wPoints + wPunctures + wBoundary` differs from `2g + 2`.
    FixedLocusMismatch { expected: i64, found: i64 },
    /// The non-fixed punctures or boundary circles cannot be paired by the involution.
    PairingViolation { what: &'static str, remainder: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::FixedLocusMismatch { expected, found } => {
                write!(f, "fixed locus has {found} elements, expected 2g+2 = {expected}")
            }
            Violation::PairingViolation { what, remainder } => {
                write!(f, "{remainder} non-fixed {what} cannot be swapped in pairs")
            }
        }
    }
}

fn format_violations(v: &[Violation]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join("; ")
}

impl SurfaceError {
    pub fn violations(&self) -> &[Violation] {
        match self {
            SurfaceError::InvalidHyperelliptic(v) => v,
            _ => &[],
        }
    }

    pub fn has_fixed_locus_mismatch(&self) -> bool {
        self.violations()
            .iter()
            .any(|v| matches!(v, Violation::FixedLocusMismatch { .. }))
    }

    pub fn has_pairing_violation(&self) -> bool {
        self.violations()
            .iter()
            .any(|v| matches!(v, Violation::PairingViolation { .. }))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Surface {
    pub genus: u32,
    pub punctures: u32,
    pub boundary: u32,
}

impl Surface {
    pub fn new(genus: i64, punctures: i64, boundary: i64) -> Result<Self, SurfaceError> {
        let conv = |x: i64| u32::try_from(x).ok();
        match (conv(genus), conv(punctures), conv(boundary)) {
            (Some(genus), Some(punctures), Some(boundary)) => Ok(Surface {
                genus,
                punctures,
                boundary,
            }),
            _ => Err(SurfaceError::InvalidTopologicalType {
                genus,
                punctures,
                boundary,
            }),
        }
    }

    pub fn closed(genus: u32) -> Self {
        Surface {
            genus,
            punctures: 0,
            boundary: 0,
        }
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * i64::from(self.genus) - i64::from(self.punctures) - i64::from(self.boundary)
    }

    pub fn is_hyperbolic(&self) -> bool {
        self.euler_characteristic() < 0
    }

    /// The interior `S \ ∂S`: every boundary circle becomes a puncture.
    pub fn interior(&self) -> Self {
        Surface {
            genus: self.genus,
            punctures: self.punctures + self.boundary,
            boundary: 0,
        }
    }

    /// The closed surface obtained by filling punctures and capping boundary circles.
    pub fn filled(&self) -> Self {
        Surface::closed(self.genus)
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.genus, self.punctures)?;
        if self.boundary > 0 {
            write!(f, "^{}", self.boundary)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", try_from = "RawHyperelliptic")]
pub struct HyperellipticSurface {
    pub base: Surface,
    pub w_points: u32,
    pub w_punctures: u32,
    pub w_boundary: u32,
}

#[derive(Deserialize)]
#[serde(rename_all = "camelCase")]
struct RawHyperelliptic {
    base: Surface,
    w_points: u32,
    w_punctures: u32,
    w_boundary: u32,
}

impl TryFrom<RawHyperelliptic> for HyperellipticSurface {
    type Error = SurfaceError;

    fn try_from(raw: RawHyperelliptic) -> Result<Self, Self::Error> {
        HyperellipticSurface::new(
            raw.base,
            i64::from(raw.w_points),
            i64::from(raw.w_punctures),
            i64::from(raw.w_boundary),
        )
    }
}

impl HyperellipticSurface {
    /// Validates a fixed-locus assignment. All violated constraints are reported together.
    pub fn new(base: Surface, w_points: i64, w_punctures: i64, w_boundary: i64) -> Result<Self, SurfaceError> {
        let mut violations = Vec::new();
        let expected = 2 * i64::from(base.genus) + 2;
        let found = w_points + w_punctures + w_boundary;
        if w_points < 0 || w_punctures < 0 || w_boundary < 0 || found != expected {
            violations.push(Violation::FixedLocusMismatch { expected, found });
        }
        let free_punctures = i64::from(base.punctures) - w_punctures;
        if free_punctures < 0 || free_punctures % 2 != 0 {
            violations.push(Violation::PairingViolation {
                what: "punctures",
                remainder: free_punctures,
            });
        }
        let free_boundary = i64::from(base.boundary) - w_boundary;
        if free_boundary < 0 || free_boundary % 2 != 0 {
            violations.push(Violation::PairingViolation {
                what: "boundary circles",
                remainder: free_boundary,
            });
        }
        if !violations.is_empty() {
            return Err(SurfaceError::InvalidHyperelliptic(violations));
        }
        Ok(HyperellipticSurface {
            base,
            w_points: w_points as u32,
            w_punctures: w_punctures as u32,
            w_boundary: w_boundary as u32,
        })
    }

    /// The closed genus-g surface with its `2g + 2` Weierstrass points.
    pub fn closed(genus: u32) -> Self {
        HyperellipticSurface {
            base: Surface::closed(genus),
            w_points: 2 * genus + 2,
            w_punctures: 0,
            w_boundary: 0,
        }
    }

    pub fn fixed_locus_size(&self) -> u32 {
        self.w_points + self.w_punctures + self.w_boundary
    }

    pub fn quotient(&self) -> QuotientProfile {
        let quotient = Surface {
            genus: 0,
            punctures: self.w_punctures + (self.base.punctures - self.w_punctures) / 2,
            boundary: self.w_boundary + (self.base.boundary - self.w_boundary) / 2,
        };
        let profile = QuotientProfile {
            quotient,
            branch_points: self.w_points,
        };
        debug_assert!(profile.riemann_hurwitz_holds(self));
        profile
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct QuotientProfile {
    pub quotient: Surface,
    pub branch_points: u32,
}

impl QuotientProfile {
    /// Checks both forms of Riemann–Hurwitz for the double cover `source -> quotient`:
    /// on the open surfaces only interior branch points correct the count, while on
    /// the closed-up surfaces all `2g + 2` fixed points do.
    pub fn riemann_hurwitz_holds(&self, source: &HyperellipticSurface) -> bool {
        let open = source.base.euler_characteristic()
            == 2 * self.quotient.euler_characteristic() - i64::from(self.branch_points);
        let closed = source.base.filled().euler_characteristic()
            == 2 * self.quotient.filled().euler_characteristic() - i64::from(source.fixed_locus_size());
        self.quotient.genus == 0 && self.branch_points == source.w_points && open && closed
    }
}

/// A possibly disconnected hyperelliptic surface: components fixed by the
/// involution, plus components swapped in pairs (recorded once per pair).
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DisconnectedHyperelliptic {
    pub fixed: Vec<HyperellipticSurface>,
    pub swapped_pairs: Vec<Surface>,
}

impl DisconnectedHyperelliptic {
    pub fn component_count(&self) -> usize {
        self.fixed.len() + 2 * self.swapped_pairs.len()
    }

    pub fn euler_characteristic(&self) -> i64 {
        let fixed: i64 = self.fixed.iter().map(|h| h.base.euler_characteristic()).sum();
        let swapped: i64 = self.swapped_pairs.iter().map(|s| s.euler_characteristic()).sum();
        fixed + 2 * swapped
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_and_hyperbolicity() {
        let s = Surface::new(0, 3, 0).unwrap();
        assert_eq!(s.euler_characteristic(), -1);
        assert!(s.is_hyperbolic());
        let s = Surface::new(2, 0, 0).unwrap();
        assert_eq!(s.euler_characteristic(), -2);
        assert!(s.is_hyperbolic());
        let s = Surface::new(1, 0, 0).unwrap();
        assert_eq!(s.euler_characteristic(), 0);
        assert!(!s.is_hyperbolic());
    }

    #[test]
    fn negative_counts_rejected() {
        assert!(matches!(
            Surface::new(-1, 0, 0),
            Err(SurfaceError::InvalidTopologicalType { .. })
        ));
        assert!(Surface::new(0, 0, -2).is_err());
    }

    #[test]
    fn hyperelliptic_constructor() {
        assert!(HyperellipticSurface::new(Surface::closed(2), 6, 0, 0).is_ok());
        let torus = Surface::new(1, 1, 0).unwrap();
        assert!(HyperellipticSurface::new(torus, 3, 1, 0).is_ok());

        let err = HyperellipticSurface::new(Surface::new(2, 2, 0).unwrap(), 6, 1, 0).unwrap_err();
        assert!(err.has_fixed_locus_mismatch());
        assert!(err.has_pairing_violation());
    }

    #[test]
    fn boundary_pairing() {
        let s = Surface::new(1, 0, 3).unwrap();
        let err = HyperellipticSurface::new(s, 4, 0, 0).unwrap_err();
        assert!(!err.has_fixed_locus_mismatch());
        assert!(err.has_pairing_violation());
        assert!(HyperellipticSurface::new(s, 3, 0, 1).is_ok());
    }

    #[test]
    fn quotients() {
        let q = HyperellipticSurface::closed(2).quotient();
        assert_eq!(q.quotient, Surface::closed(0));
        assert_eq!(q.branch_points, 6);
        assert_eq!(2 * 2 - 6, Surface::closed(2).euler_characteristic());

        let h = HyperellipticSurface::new(Surface::new(1, 1, 0).unwrap(), 3, 1, 0).unwrap();
        let q = h.quotient();
        assert_eq!(q.quotient, Surface::new(0, 1, 0).unwrap());
        assert_eq!(q.branch_points, 3);
        assert!(q.riemann_hurwitz_holds(&h));

        let h = HyperellipticSurface::new(Surface::new(2, 4, 0).unwrap(), 6, 0, 0).unwrap();
        let q = h.quotient();
        assert_eq!(q.quotient, Surface::new(0, 2, 0).unwrap());
        assert_eq!(q.branch_points, 6);
        assert!(q.riemann_hurwitz_holds(&h));
    }

    #[test]
    fn derived_variants() {
        let s = Surface::new(3, 2, 4).unwrap();
        assert_eq!(s.interior(), Surface::new(3, 6, 0).unwrap());
        assert_eq!(s.interior().euler_characteristic(), s.euler_characteristic());
        assert_eq!(s.filled(), Surface::closed(3));
    }

    #[test]
    fn json_field_names() {
        let h = HyperellipticSurface::new(Surface::new(1, 1, 0).unwrap(), 3, 1, 0).unwrap();
        let v: serde_json::Value = serde_json::to_value(h).unwrap();
        assert_eq!(v["base"]["genus"], 1);
        assert_eq!(v["base"]["punctures"], 1);
        assert_eq!(v["base"]["boundary"], 0);
        assert_eq!(v["wPoints"], 3);
        assert_eq!(v["wPunctures"], 1);
        assert_eq!(v["wBoundary"], 0);
        let q = serde_json::to_value(h.quotient()).unwrap();
        assert_eq!(q["branchPoints"], 3);
        let back: HyperellipticSurface = serde_json::from_value(v).unwrap();
        assert_eq!(back, h);
    }

    #[test]
    fn json_rejects_invalid_fixed_locus() {
        let bad = r#"{"base":{"genus":2,"punctures":0,"boundary":0},"wPoints":5,"wPunctures":0,"wBoundary":0}"#;
        assert!(serde_json::from_str::<HyperellipticSurface>(bad).is_err());
    }
}
