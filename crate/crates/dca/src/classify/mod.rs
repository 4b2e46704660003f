//! Membership tests for the discrete convexity classes.
//!
//! Every test is a definitional enumeration over the finite domain. A failed
//! test carries a [`Witness`] that [`recheck`] can confirm by direct
//! evaluation, independently of the search that produced it.

mod functions;
mod profile;
mod sets;
mod witness;

use std::fmt;
use std::str::FromStr;

use serde_json::{json, Value};

use crate::error::DcaError;
use crate::model::{LatticeFunction, LatticeSet};

pub use functions::{is_box, quadratic_multimodular, to_bidiagonal_preimage};
pub use profile::{dim2_crosscheck, lnat_profile, Dim2Bits, LNatProfile};
pub use witness::{recheck, recheck_set, Witness};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SetClass {
    IntegerBox,
    IntegrallyConvexSet,
    LNatSet,
    LSet,
    MNatSet,
    MSet,
    MultimodularSet,
    DmcSet,
    JumpSystem,
    SeJump,
    CpJump,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FnClass {
    SeparableConvex,
    IntegrallyConvex,
    LNat,
    L,
    MNat,
    M,
    Multimodular,
    GlobalDmc,
    LocalDmc,
    JumpMNat,
    JumpM,
    Submodular,
    Supermodular,
}

impl SetClass {
    pub const ALL: [SetClass; 11] = [
        SetClass::IntegerBox,
        SetClass::IntegrallyConvexSet,
        SetClass::LNatSet,
        SetClass::LSet,
        SetClass::MNatSet,
        SetClass::MSet,
        SetClass::MultimodularSet,
        SetClass::DmcSet,
        SetClass::JumpSystem,
        SetClass::SeJump,
        SetClass::CpJump,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SetClass::IntegerBox => "integer-box",
            SetClass::IntegrallyConvexSet => "ic-set",
            SetClass::LNatSet => "lnat-set",
            SetClass::LSet => "l-set",
            SetClass::MNatSet => "mnat-set",
            SetClass::MSet => "m-set",
            SetClass::MultimodularSet => "multimodular-set",
            SetClass::DmcSet => "dmc-set",
            SetClass::JumpSystem => "jump-system",
            SetClass::SeJump => "se-jump",
            SetClass::CpJump => "cp-jump",
        }
    }

    /// The function class whose indicator test coincides with this set test.
    pub fn indicator_class(self) -> Option<FnClass> {
        Some(match self {
            SetClass::IntegerBox => FnClass::SeparableConvex,
            SetClass::IntegrallyConvexSet => FnClass::IntegrallyConvex,
            SetClass::LNatSet => FnClass::LNat,
            SetClass::LSet => FnClass::L,
            SetClass::MNatSet => FnClass::MNat,
            SetClass::MSet => FnClass::M,
            SetClass::MultimodularSet => FnClass::Multimodular,
            SetClass::DmcSet => FnClass::GlobalDmc,
            SetClass::SeJump => FnClass::JumpMNat,
            SetClass::CpJump => FnClass::JumpM,
            SetClass::JumpSystem => return None,
        })
    }
}

impl FnClass {
    pub const ALL: [FnClass; 13] = [
        FnClass::SeparableConvex,
        FnClass::IntegrallyConvex,
        FnClass::LNat,
        FnClass::L,
        FnClass::MNat,
        FnClass::M,
        FnClass::Multimodular,
        FnClass::GlobalDmc,
        FnClass::LocalDmc,
        FnClass::JumpMNat,
        FnClass::JumpM,
        FnClass::Submodular,
        FnClass::Supermodular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FnClass::SeparableConvex => "separable-convex",
            FnClass::IntegrallyConvex => "integrally-convex",
            FnClass::LNat => "lnat",
            FnClass::L => "l",
            FnClass::MNat => "mnat",
            FnClass::M => "m",
            FnClass::Multimodular => "multimodular",
            FnClass::GlobalDmc => "global-dmc",
            FnClass::LocalDmc => "local-dmc",
            FnClass::JumpMNat => "jump-mnat",
            FnClass::JumpM => "jump-m",
            FnClass::Submodular => "submodular",
            FnClass::Supermodular => "supermodular",
        }
    }

    /// The set class that the effective domain of a member belongs to.
    pub fn domain_class(self) -> Option<SetClass> {
        Some(match self {
            FnClass::SeparableConvex => SetClass::IntegerBox,
            FnClass::IntegrallyConvex => SetClass::IntegrallyConvexSet,
            FnClass::LNat => SetClass::LNatSet,
            FnClass::L => SetClass::LSet,
            FnClass::MNat => SetClass::MNatSet,
            FnClass::M => SetClass::MSet,
            FnClass::Multimodular => SetClass::MultimodularSet,
            FnClass::GlobalDmc | FnClass::LocalDmc => SetClass::DmcSet,
            FnClass::JumpMNat => SetClass::SeJump,
            FnClass::JumpM => SetClass::CpJump,
            FnClass::Submodular | FnClass::Supermodular => return None,
        })
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for FnClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SetClass {
    type Err = DcaError;
    fn from_str(s: &str) -> Result<SetClass, DcaError> {
        SetClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| DcaError::InvalidArgument(format!("unknown set class `{s}`")))
    }
}

impl FromStr for FnClass {
    type Err = DcaError;
    fn from_str(s: &str) -> Result<FnClass, DcaError> {
        FnClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| DcaError::InvalidArgument(format!("unknown function class `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    Exact,
    /// Verified for every pair whose required partners stay inside the window.
    WindowCertified,
}

impl Certification {
    pub fn name(self) -> &'static str {
        match self {
            Certification::Exact => "exact",
            Certification::WindowCertified => "window-certified",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Witness>,
    pub certification: Certification,
}

impl Verdict {
    pub fn yes() -> Verdict {
        Verdict { holds: true, witness: None, certification: Certification::Exact }
    }

    pub fn no(w: Witness) -> Verdict {
        Verdict { holds: false, witness: Some(w), certification: Certification::Exact }
    }

    pub(crate) fn from_witness(w: Option<Witness>) -> Verdict {
        match w {
            None => Verdict::yes(),
            Some(w) => Verdict::no(w),
        }
    }

    pub fn window_certified(mut self) -> Verdict {
        self.certification = Certification::WindowCertified;
        self
    }

    pub fn to_json(&self) -> Value {
        json!({
            "holds": self.holds,
            "certification": self.certification.name(),
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

pub fn check_fn(f: &LatticeFunction, c: FnClass) -> Verdict {
    functions::check(f, c)
}

pub fn check_set(s: &LatticeSet, c: SetClass) -> Verdict {
    sets::check(s, c)
}

/// Verdicts for every function class, in enumeration order.
pub fn classify_fn_all(f: &LatticeFunction) -> Vec<(FnClass, Verdict)> {
    FnClass::ALL.iter().map(|&c| (c, check_fn(f, c))).collect()
}

pub fn classify_set_all(s: &LatticeSet) -> Vec<(SetClass, Verdict)> {
    SetClass::ALL.iter().map(|&c| (c, check_set(s, c))).collect()
}
