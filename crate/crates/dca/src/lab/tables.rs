//! The closure tables as data. Each cell names a class, an operation, the
//! expected answer, and for "no" answers the fixtures that refute closure.

use std::fmt;
use std::str::FromStr;

use crate::classify::{FnClass, SetClass};
use crate::error::DcaError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    SetsCoordinate,
    SetsStructural,
    FnsCoordinate,
    FnsValue,
    Conjugacy,
}

impl TableId {
    pub const ALL: [TableId; 5] =
        [TableId::SetsCoordinate, TableId::SetsStructural, TableId::FnsCoordinate, TableId::FnsValue, TableId::Conjugacy];

    pub fn name(self) -> &'static str {
        match self {
            TableId::SetsCoordinate => "sets-coordinate",
            TableId::SetsStructural => "sets-structural",
            TableId::FnsCoordinate => "fns-coordinate",
            TableId::FnsValue => "fns-value",
            TableId::Conjugacy => "conjugacy",
        }
    }

    pub fn caption(self) -> &'static str {
        match self {
            TableId::SetsCoordinate => "Operations on discrete convex sets via simple coordinate changes",
            TableId::SetsStructural => "Operations on discrete convex sets",
            TableId::FnsCoordinate => "Operations on discrete convex functions via coordinate changes",
            TableId::FnsValue => "Operations on discrete convex functions related to function values",
            TableId::Conjugacy => "Conjugacy operations on discrete convex functions",
        }
    }

    pub fn is_set_table(self) -> bool {
        matches!(self, TableId::SetsCoordinate | TableId::SetsStructural)
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = DcaError;
    fn from_str(s: &str) -> Result<TableId, DcaError> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| DcaError::InvalidArgument(format!("unknown table `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RowClass {
    Set(SetClass),
    Fn(FnClass),
}

impl RowClass {
    pub fn name(self) -> &'static str {
        match self {
            RowClass::Set(c) => c.name(),
            RowClass::Fn(c) => c.name(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OpKind {
    Shift,
    InvertAll,
    InvertSigns,
    Permute,
    /// Variable scaling with α = 2.
    Varscale,
    ValueScale,
    Restrict,
    Project,
    /// S ∩ B for sets, f + φ with φ separable convex for functions.
    IntersectBox,
    AddSeparable,
    Intersect,
    AddGeneral,
    MinkowskiBox,
    ConvolveSeparable,
    MinkowskiGeneral,
    ConvolveGeneral,
    ConvexExtension,
    IntegralBiconjugacy,
    ConjugateClass,
}

impl OpKind {
    pub fn name(self) -> &'static str {
        match self {
            OpKind::Shift => "shift",
            OpKind::InvertAll => "invert-all",
            OpKind::InvertSigns => "invert-signs",
            OpKind::Permute => "permute",
            OpKind::Varscale => "varscale",
            OpKind::ValueScale => "value-scale",
            OpKind::Restrict => "restrict",
            OpKind::Project => "project",
            OpKind::IntersectBox => "intersect-box",
            OpKind::AddSeparable => "add-separable",
            OpKind::Intersect => "intersect",
            OpKind::AddGeneral => "add",
            OpKind::MinkowskiBox => "minkowski-box",
            OpKind::ConvolveSeparable => "convolve-separable",
            OpKind::MinkowskiGeneral => "minkowski",
            OpKind::ConvolveGeneral => "convolve",
            OpKind::ConvexExtension => "convex-extension",
            OpKind::IntegralBiconjugacy => "integral-biconjugacy",
            OpKind::ConjugateClass => "conjugate-class",
        }
    }

    pub fn columns(t: TableId) -> &'static [OpKind] {
        use OpKind::*;
        match t {
            TableId::SetsCoordinate | TableId::FnsCoordinate => &[Shift, InvertAll, InvertSigns, Permute, Varscale],
            TableId::SetsStructural => &[Restrict, Project, IntersectBox, Intersect, MinkowskiBox, MinkowskiGeneral],
            TableId::FnsValue => {
                &[ValueScale, Restrict, Project, AddSeparable, AddGeneral, ConvolveSeparable, ConvolveGeneral]
            }
            TableId::Conjugacy => &[ConvexExtension, IntegralBiconjugacy, ConjugateClass],
        }
    }

    /// Whether a second operand is a box (sets) or separable convex (functions).
    pub fn second_is_separable(self) -> bool {
        matches!(self, OpKind::IntersectBox | OpKind::AddSeparable | OpKind::MinkowskiBox | OpKind::ConvolveSeparable)
    }

    pub fn is_binary(self) -> bool {
        matches!(
            self,
            OpKind::IntersectBox
                | OpKind::AddSeparable
                | OpKind::Intersect
                | OpKind::AddGeneral
                | OpKind::MinkowskiBox
                | OpKind::ConvolveSeparable
                | OpKind::MinkowskiGeneral
                | OpKind::ConvolveGeneral
        )
    }
}

impl fmt::Display for OpKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Expected {
    Yes,
    No,
    /// No statement is made; the cell is never asserted either way.
    NotApplicable,
}

impl Expected {
    pub fn symbol(self) -> &'static str {
        match self {
            Expected::Yes => "Y",
            Expected::No => "N",
            Expected::NotApplicable => "-",
        }
    }
}

/// A fixture object that leaves the class, and the objects it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Refutation {
    pub fixture: &'static str,
    /// Operands that must lie in the row's class.
    pub inputs: &'static [&'static str],
    /// The object that must not.
    pub result: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cell {
    pub table: TableId,
    pub class: RowClass,
    pub op: OpKind,
    pub expected: Expected,
    pub refutations: Vec<Refutation>,
}

const fn r(fixture: &'static str, inputs: &'static [&'static str], result: &'static str) -> Refutation {
    Refutation { fixture, inputs, result }
}

fn set_rows() -> [SetClass; 10] {
    use SetClass::*;
    [IntegerBox, IntegrallyConvexSet, LNatSet, LSet, MNatSet, MSet, MultimodularSet, DmcSet, SeJump, CpJump]
}

fn fn_rows() -> [FnClass; 11] {
    use FnClass::*;
    [SeparableConvex, IntegrallyConvex, LNat, L, MNat, M, Multimodular, GlobalDmc, LocalDmc, JumpMNat, JumpM]
}

fn set_refutation(table: TableId, c: SetClass, op: OpKind) -> Vec<Refutation> {
    use OpKind::*;
    use SetClass::*;
    match (table, c, op) {
        (TableId::SetsCoordinate, IntegrallyConvexSet, Varscale) => vec![r("scICsetNG422", &["S"], "T")],
        (TableId::SetsCoordinate, LNatSet | LSet | DmcSet, InvertSigns) => vec![r("lsetsigninv", &["S"], "T")],
        (TableId::SetsCoordinate, MNatSet | MSet | MultimodularSet, InvertSigns) => {
            vec![r("msetsigninv", &["S"], "T")]
        }
        (TableId::SetsCoordinate, MNatSet | SeJump, Varscale) => vec![r("mnatsetscdim3", &["S"], "T")],
        (TableId::SetsCoordinate, MSet | CpJump, Varscale) => vec![r("msetscdim3", &["S"], "T")],
        (TableId::SetsCoordinate, MultimodularSet, Permute) => vec![r("mmsetperm", &["S"], "T")],
        (TableId::SetsStructural, IntegrallyConvexSet, Intersect) => vec![r("icsetinter", &["S1", "S2"], "T")],
        (TableId::SetsStructural, IntegrallyConvexSet, MinkowskiGeneral) => {
            vec![r("icdim2sumhole", &["S1", "S2"], "T"), r("minkow3lnatset", &["S1", "S23"], "S")]
        }
        (TableId::SetsStructural, LNatSet, MinkowskiGeneral) => vec![r("lnatsetMsum", &["S1", "S2"], "T")],
        (TableId::SetsStructural, LSet, Restrict) => vec![r("lsetrestr", &["S"], "T")],
        (TableId::SetsStructural, LSet, IntersectBox) => vec![r("lsetboxinter", &["S"], "T")],
        (TableId::SetsStructural, LSet, MinkowskiGeneral) => vec![r("lsetsum", &["S1", "S2"], "T")],
        (TableId::SetsStructural, MNatSet, Intersect) => vec![r("mnatsetinter", &["S1", "S2"], "S0")],
        (TableId::SetsStructural, MSet | CpJump, Project) => vec![r("msetproj", &["S"], "T")],
        (TableId::SetsStructural, MSet | SeJump | CpJump, Intersect) => vec![r("msetinter", &["S1", "S2"], "S0")],
        (TableId::SetsStructural, MSet | CpJump, MinkowskiBox) => vec![r("msetboxsum", &["S"], "T")],
        (TableId::SetsStructural, MultimodularSet, Project) => vec![r("mmsetproj", &["S"], "T")],
        (TableId::SetsStructural, MultimodularSet, MinkowskiBox) => vec![r("mmsetMsum", &["S1"], "T")],
        (TableId::SetsStructural, MultimodularSet, MinkowskiGeneral) => vec![r("mmsetMsum", &["S1", "S2"], "T")],
        (TableId::SetsStructural, DmcSet, MinkowskiBox) => vec![r("dicdim3set", &["S"], "T")],
        (TableId::SetsStructural, DmcSet, MinkowskiGeneral) => {
            vec![r("icdim2sumhole", &["S1", "S2"], "T"), r("lnatsetMsum", &["S1", "S2"], "T")]
        }
        _ => vec![],
    }
}

fn fn_refutation(table: TableId, c: FnClass, op: OpKind) -> Vec<Refutation> {
    use FnClass::*;
    use OpKind::*;
    match (table, c, op) {
        (TableId::FnsCoordinate, IntegrallyConvex, Varscale) => {
            vec![r("scICfnNG422", &["f"], "g"), r("scICfnNG422indic", &["f"], "g")]
        }
        (TableId::FnsCoordinate, LNat | L | GlobalDmc, InvertSigns) => vec![r("lfnsigninv", &["f"], "g")],
        (TableId::FnsCoordinate, LocalDmc, InvertSigns) => vec![r("lfnsigninv3", &["f"], "g")],
        (TableId::FnsCoordinate, MNat | Multimodular, InvertSigns) => vec![r("mfnsigninv", &["f"], "g")],
        (TableId::FnsCoordinate, M, InvertSigns) => vec![r("msetsigninv", &["S"], "T")],
        (TableId::FnsCoordinate, Multimodular, Permute) => {
            vec![r("mmfnperm1", &["f"], "g"), r("mmfnperm1", &["f"], "h"), r("mmfnperm3", &["f"], "g")]
        }
        (TableId::FnsCoordinate, MNat | JumpMNat, Varscale) => vec![r("mnatsetscdim3", &["S"], "T")],
        (TableId::FnsCoordinate, M | JumpM, Varscale) => vec![r("msetscdim3", &["S"], "T")],
        (TableId::FnsValue, IntegrallyConvex, AddGeneral) => vec![r("icsetinter", &["S1", "S2"], "T")],
        (TableId::FnsValue, IntegrallyConvex, ConvolveGeneral) => {
            vec![r("icdim2sumhole", &["S1", "S2"], "T"), r("minkow3lnatfn", &["f1", "f2", "f3"], "h")]
        }
        (TableId::FnsValue, LNat, ConvolveGeneral) => vec![r("lnatsetMsum", &["S1", "S2"], "T")],
        (TableId::FnsValue, L, Restrict) => vec![r("lfnrestr", &["f"], "g")],
        (TableId::FnsValue, L, AddSeparable) => vec![r("lsetboxinter", &["S"], "T")],
        (TableId::FnsValue, L, ConvolveGeneral) => vec![r("lsetsum", &["S1", "S2"], "T")],
        (TableId::FnsValue, MNat | M | JumpMNat | JumpM, AddGeneral) => vec![r("msetinter", &["S1", "S2"], "S0")],
        (TableId::FnsValue, M | JumpM, Project) => vec![r("mfnproj", &["f"], "g")],
        (TableId::FnsValue, M | JumpM, ConvolveSeparable) => vec![r("msetboxsum", &["S"], "T")],
        (TableId::FnsValue, Multimodular, Project) => vec![r("mmfnproj3", &["f"], "g")],
        (TableId::FnsValue, Multimodular, ConvolveSeparable) => vec![r("mmsetMsum", &["S1"], "T")],
        (TableId::FnsValue, Multimodular, ConvolveGeneral) => vec![r("mmsetMsum", &["S1", "S2"], "T")],
        (TableId::FnsValue, GlobalDmc | LocalDmc, ConvolveSeparable) => {
            vec![r("dicdim3indic", &["f"], "h"), r("dicdim3fn", &["f"], "h")]
        }
        (TableId::FnsValue, GlobalDmc | LocalDmc, ConvolveGeneral) => {
            vec![r("dicdim3indic", &["f", "phi"], "h"), r("dicdim3fn", &["f", "phi"], "h")]
        }
        (TableId::Conjugacy, JumpMNat | JumpM, ConvexExtension | IntegralBiconjugacy) => {
            vec![r("jumpdim1", &["S"], "S")]
        }
        _ => vec![],
    }
}

/// The "N" entries, exactly as printed.
fn is_no(table: TableId, class: RowClass, op: OpKind) -> bool {
    match class {
        RowClass::Set(c) => !set_refutation(table, c, op).is_empty(),
        RowClass::Fn(c) => !fn_refutation(table, c, op).is_empty(),
    }
}

/// Every cell of one table, row by row.
pub fn table(t: TableId) -> Vec<Cell> {
    let rows: Vec<RowClass> = if t.is_set_table() {
        set_rows().into_iter().map(RowClass::Set).collect()
    } else {
        fn_rows().into_iter().map(RowClass::Fn).collect()
    };
    let mut out = Vec::new();
    for class in rows {
        for &op in OpKind::columns(t) {
            let refutations = match class {
                RowClass::Set(c) => set_refutation(t, c, op),
                RowClass::Fn(c) => fn_refutation(t, c, op),
            };
            let expected = if op == OpKind::ConjugateClass {
                let RowClass::Fn(c) = class else { unreachable!() };
                if crate::conjugacy::conjugate_class(c).is_some() {
                    Expected::Yes
                } else {
                    Expected::NotApplicable
                }
            } else if is_no(t, class, op) {
                Expected::No
            } else {
                Expected::Yes
            };
            out.push(Cell { table: t, class, op, expected, refutations });
        }
    }
    out
}

pub fn all_cells() -> Vec<Cell> {
    TableId::ALL.into_iter().flat_map(table).collect()
}

/// Compact grid as printed, one row per class: `Y`, `N` or `-`.
pub fn grid(t: TableId) -> Vec<(String, String)> {
    let cols = OpKind::columns(t).len();
    table(t)
        .chunks(cols)
        .map(|row| (row[0].class.name().to_string(), row.iter().map(|c| c.expected.symbol()).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cell_counts() {
        let counts: Vec<usize> = TableId::ALL.iter().map(|&t| table(t).len()).collect();
        assert_eq!(counts, vec![50, 60, 55, 77, 33]);
    }

    #[test]
    fn grids_read_as_printed() {
        let rows = |t| grid(t).into_iter().map(|(_, g)| g).collect::<Vec<_>>();
        assert_eq!(
            rows(TableId::SetsCoordinate),
            ["YYYYY", "YYYYN", "YYNYY", "YYNYY", "YYNYN", "YYNYN", "YYNNY", "YYNYY", "YYYYN", "YYYYN"]
        );
        assert_eq!(
            rows(TableId::SetsStructural),
            ["YYYYYY", "YYYNYN", "YYYYYN", "NYNYYN", "YYYNYY", "YNYNNY", "YNYYNN", "YYYYNN", "YYYNYY", "YNYNNY"]
        );
        assert_eq!(
            rows(TableId::FnsCoordinate),
            ["YYYYY", "YYYYN", "YYNYY", "YYNYY", "YYNYN", "YYNYN", "YYNNY", "YYNYY", "YYNYY", "YYYYN", "YYYYN"]
        );
        assert_eq!(
            rows(TableId::FnsValue),
            [
                "YYYYYYY", "YYYYNYN", "YYYYYYN", "YNYNYYN", "YYYYNYY", "YYNYNNY", "YYNYYNN", "YYYYYNN", "YYYYYNN",
                "YYYYNYY", "YYNYNNY"
            ]
        );
        assert_eq!(
            rows(TableId::Conjugacy),
            ["YYY", "YY-", "YYY", "YYY", "YYY", "YYY", "YYY", "YY-", "YY-", "NN-", "NN-"]
        );
    }

    #[test]
    fn names_parse_back() {
        for t in TableId::ALL {
            assert_eq!(t.name().parse::<TableId>().unwrap(), t);
        }
    }
}
