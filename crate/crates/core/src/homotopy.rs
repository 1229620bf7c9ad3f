//! Defect-classification bookkeeping: the probe-dimension rule and a
//! lookup table of homotopy groups for the order-parameter spaces the
//! library works with.  Pure table lookup — nothing here computes homotopy
//! groups; entries outside the table come back as [`GroupLabel::Unknown`].

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

/// Order-parameter spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Space {
    S1,
    S2,
    S3,
    /// The n-sphere for general n >= 1.
    Sn(u32),
    Rp2,
    Rp3,
    So3,
    Cp1,
    /// SU(2)/U(1), the monopole vacuum manifold (a 2-sphere).
    Su2ModU1,
    /// SU(2)/SO(3), the spinor-to-rotation identification.
    Su2ModSo3,
}

impl Space {
    pub fn as_str(&self) -> &'static str {
        match self {
            Space::S1 => "S1",
            Space::S2 => "S2",
            Space::S3 => "S3",
            Space::Sn(_) => "Sn",
            Space::Rp2 => "RP2",
            Space::Rp3 => "RP3",
            Space::So3 => "SO3",
            Space::Cp1 => "CP1",
            Space::Su2ModU1 => "SU2/U1",
            Space::Su2ModSo3 => "SU2/SO3",
        }
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::Sn(k) => write!(f, "S{k}"),
            other => f.write_str(other.as_str()),
        }
    }
}

impl FromStr for Space {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S1" | "s1" => Ok(Space::S1),
            "S2" | "s2" => Ok(Space::S2),
            "S3" | "s3" => Ok(Space::S3),
            "RP2" | "rp2" => Ok(Space::Rp2),
            "RP3" | "rp3" => Ok(Space::Rp3),
            "SO3" | "so3" | "SO(3)" => Ok(Space::So3),
            "CP1" | "cp1" | "CP(1)" => Ok(Space::Cp1),
            "SU2/U1" | "su2/u1" | "SU2modU1" => Ok(Space::Su2ModU1),
            "SU2/SO3" | "su2/so3" | "SU2modSO3" => Ok(Space::Su2ModSo3),
            other => {
                // General spheres: "S4", "S5", ...
                if let Some(rest) = other.strip_prefix('S').or_else(|| other.strip_prefix('s')) {
                    if let Ok(k) = rest.parse::<u32>() {
                        if k >= 1 {
                            return Ok(Space::Sn(k));
                        }
                    }
                }
                Err(Error::UnknownName(other.to_string()))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GroupLabel {
    Z,
    Z2,
    Trivial,
    Unknown,
}

impl GroupLabel {
    pub fn as_str(&self) -> &'static str {
        match self {
            GroupLabel::Z => "Z",
            GroupLabel::Z2 => "Z_2",
            GroupLabel::Trivial => "trivial",
            GroupLabel::Unknown => "unknown",
        }
    }
}

impl fmt::Display for GroupLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A classified defect sector: the group pi_n(M) and a one-line citation of
/// the table row that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub group: GroupLabel,
    pub source: String,
}

fn entry(group: GroupLabel, source: impl Into<String>) -> Classification {
    Classification { group, source: source.into() }
}

/// Probe dimension for a d-dimensional defect in an m-dimensional medium:
/// the defect is encircled by an n-sphere with n = m - d - 1.
pub fn probe_dimension(medium_dim: u32, defect_dim: u32) -> Result<u32> {
    if defect_dim >= medium_dim {
        return Err(Error::Invalid(format!(
            "defect dimension {defect_dim} must be below the medium dimension {medium_dim}"
        )));
    }
    Ok(medium_dim - defect_dim - 1)
}

fn classify_sphere(k: u32, n: u32) -> Classification {
    if n == 0 {
        return entry(GroupLabel::Trivial, format!("S^{k} is connected"));
    }
    if n < k {
        if n == 1 {
            return entry(
                GroupLabel::Trivial,
                format!("pi_1(S^{k}) = 0 for k >= 2 (simply connected)"),
            );
        }
        return entry(GroupLabel::Trivial, format!("pi_{n}(S^{k}) = 0 for n < k"));
    }
    if n == k {
        return entry(GroupLabel::Z, format!("pi_{n}(S^{n}) = Z"));
    }
    if k == 1 {
        return entry(
            GroupLabel::Trivial,
            "pi_n(S^1) = 0 for n >= 2 (contractible universal cover)",
        );
    }
    entry(GroupLabel::Unknown, format!("pi_{n}(S^{k}) is outside the table"))
}

fn classify_projective(k: u32, n: u32) -> Classification {
    if n == 1 {
        return entry(GroupLabel::Z2, format!("pi_1(RP^{k}) = Z_2 (antipodal identification)"));
    }
    // The sphere double-covers RP^k, so the higher groups coincide.
    let base = classify_sphere(k, n);
    Classification {
        group: base.group,
        source: format!("pi_{n}(RP^{k}) = pi_{n}(S^{k}); {}", base.source),
    }
}

/// Look up pi_n of the given space.
pub fn classify(space: Space, n: u32) -> Classification {
    match space {
        Space::S1 => classify_sphere(1, n),
        Space::S2 => classify_sphere(2, n),
        Space::S3 => classify_sphere(3, n),
        Space::Sn(k) => classify_sphere(k, n),
        Space::Rp2 => classify_projective(2, n),
        Space::Rp3 => classify_projective(3, n),
        Space::So3 => {
            let base = classify_projective(3, n);
            Classification {
                group: base.group,
                source: format!("SO(3) = RP^3; {}", base.source),
            }
        }
        Space::Cp1 => {
            let base = classify_sphere(2, n);
            Classification {
                group: base.group,
                source: format!("CP^1 = S^2; {}", base.source),
            }
        }
        Space::Su2ModU1 => {
            if n == 2 {
                entry(GroupLabel::Z, "pi_2(SU(2)/U(1)) = pi_1(U(1)) = Z")
            } else {
                let base = classify_sphere(2, n);
                Classification {
                    group: base.group,
                    source: format!("SU(2)/U(1) = S^2; {}", base.source),
                }
            }
        }
        Space::Su2ModSo3 => {
            if n == 2 {
                entry(GroupLabel::Z2, "pi_2(SU(2)/SO(3)) = pi_1(SO(3)) = Z_2")
            } else {
                entry(
                    GroupLabel::Unknown,
                    format!("pi_{n}(SU(2)/SO(3)) is outside the table"),
                )
            }
        }
    }
}
