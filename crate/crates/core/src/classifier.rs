//! Decision procedure: case label, complete set of optimal words and the
//! joint spectral radius of a pair.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;

use crate::characters::{radius, AlgebraicRadius, CharError, CharacterContext};
use crate::geometry::{
    axes_relation, classify_element, coherent_orientation, fixed_points, well_oriented, ArcMeet, AxesRelation,
    ElementClass, GeometryError,
};
use crate::matrix::{Mat2, MatrixError, MatrixPair};
use crate::scalars::{chebyshev, QuadExt};
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClassifyError {
    #[error(transparent)]
    Matrix(#[from] MatrixError),
    #[error("matrix {0} is elliptic")]
    Elliptic(String),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Char(#[from] CharError),
    #[error("traces must satisfy 2 <= tr A < tr B, got {0} and {1}")]
    TraceOrder(String, String),
    #[error("tr((AB)^3) = {0} and tr((AB^2)^2) = {1} differ by less than 2")]
    Dichotomy(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Case {
    Commuting,
    IIntersecting,
    IIParallel1,
    IIParallel2,
    IIParallelUnequal,
    IIIEqualTraceWellOriented,
    IV1,
    IV2,
    IV3a,
    IV3b,
    OutOfScope(String),
}

impl Case {
    pub fn label(&self) -> &'static str {
        match self {
            Case::Commuting => "Commuting",
            Case::IIntersecting => "I_Intersecting",
            Case::IIParallel1 => "II_Parallel_1",
            Case::IIParallel2 => "II_Parallel_2",
            Case::IIParallelUnequal => "II_ParallelUnequal",
            Case::IIIEqualTraceWellOriented => "III_EqualTraceWellOriented",
            Case::IV1 => "IV_1",
            Case::IV2 => "IV_2",
            Case::IV3a => "IV_3a",
            Case::IV3b => "IV_3b",
            Case::OutOfScope(_) => "OutOfScope",
        }
    }

    pub fn is_in_scope(&self) -> bool {
        !matches!(self, Case::OutOfScope(_))
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Case::OutOfScope(why) => write!(f, "OutOfScope({why})"),
            other => f.write_str(other.label()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairClassification {
    pub case: Case,
    /// `A` and `B` were exchanged so that `tr A <= tr B`; reported words use
    /// the exchanged alphabet.
    pub swapped: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OptimalitySet {
    /// Sorted Lyndon words.
    Finite(Vec<Word>),
    /// Every word that is not a proper power.
    AllNonPowers,
}

impl OptimalitySet {
    fn of(words: &[&str]) -> Self {
        let mut v: Vec<Word> = words.iter().map(|w| w.parse().expect("literal word")).collect();
        v.sort();
        OptimalitySet::Finite(v)
    }

    /// A word whose radius is the joint spectral radius.
    pub fn representative(&self) -> Word {
        match self {
            OptimalitySet::Finite(v) => v[0].clone(),
            OptimalitySet::AllNonPowers => "ab".parse().expect("literal word"),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            OptimalitySet::Finite(_) => "finite",
            OptimalitySet::AllNonPowers => "all_non_powers",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JsrReport {
    pub optimal: OptimalitySet,
    pub radius: AlgebraicRadius,
}

impl JsrReport {
    pub fn float_approx(&self, digits: u32) -> String {
        self.radius.approx(digits)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Classification {
    pub classification: PairClassification,
    /// `None` exactly when the case is out of scope.
    pub report: Option<JsrReport>,
    /// The pair in the reported alphabet, sign-normalized.
    pub pair: MatrixPair<QuadExt>,
}

impl Classification {
    pub fn case(&self) -> &Case {
        &self.classification.case
    }

    pub fn optimal(&self) -> Option<&OptimalitySet> {
        self.report.as_ref().map(|r| &r.optimal)
    }
}

/// Case (IV) sub-branch from the traces of `A`, `B`, `AB` of an integer pair.
pub fn iv_branch(tr_a: &BigInt, tr_b: &BigInt, tr_ab: &BigInt) -> Result<Case, ClassifyError> {
    let two = BigInt::from(2);
    if !(&two <= tr_a && tr_a < tr_b) {
        return Err(ClassifyError::TraceOrder(tr_a.to_string(), tr_b.to_string()));
    }
    let y2 = chebyshev(2, tr_b);
    match tr_ab.cmp(&y2) {
        Ordering::Less => Ok(Case::IV1),
        Ordering::Equal => Ok(Case::IV2),
        Ordering::Greater => {
            let t3 = chebyshev(3, tr_ab);
            let t2 = chebyshev(2, &(tr_ab * tr_b - tr_a));
            let gap = &t3 - &t2;
            if gap < two && -&gap < two {
                return Err(ClassifyError::Dichotomy(t3.to_string(), t2.to_string()));
            }
            Ok(if t3 > t2 { Case::IV3a } else { Case::IV3b })
        }
    }
}

fn finish(case: Case, optimal: Option<OptimalitySet>, swapped: bool, pair: MatrixPair<QuadExt>) -> Result<Classification, ClassifyError> {
    let report = match optimal {
        Some(optimal) => {
            let ctx = CharacterContext::Matrices(pair.clone());
            let radius = radius(&optimal.representative(), &ctx)?;
            Some(JsrReport { optimal, radius })
        }
        None => None,
    };
    Ok(Classification { classification: PairClassification { case, swapped }, report, pair })
}

fn out_of_scope(why: &str, swapped: bool, pair: MatrixPair<QuadExt>) -> Result<Classification, ClassifyError> {
    finish(Case::OutOfScope(why.to_string()), None, swapped, pair)
}

pub fn classify_pair(a: &Mat2<QuadExt>, b: &Mat2<QuadExt>) -> Result<Classification, ClassifyError> {
    let pair = MatrixPair::new(a.normalize_sign(), b.normalize_sign())?;
    for m in [&pair.a, &pair.b] {
        if classify_element(m) == ElementClass::Elliptic {
            return Err(ClassifyError::Elliptic(m.to_string()));
        }
    }
    let (ta, tb) = (pair.a.tr(), pair.b.tr());

    if pair.a.commutes_with(&pair.b) {
        let words: &[&str] = match ta.cmp(&tb) {
            Ordering::Less => &["b"],
            Ordering::Equal => &["a", "b"],
            Ordering::Greater => &["a"],
        };
        return finish(Case::Commuting, Some(OptimalitySet::of(words)), false, pair);
    }

    let Some((plus, minus)) = coherent_orientation(&pair.a, &pair.b)? else {
        return out_of_scope("not coherently oriented", false, pair);
    };

    let swapped = ta > tb;
    let pair = if swapped { pair.swapped() } else { pair };
    let (a, b) = (&pair.a, &pair.b);
    let equal = ta == tb;
    let class_a = classify_element(a);
    let class_b = classify_element(b);
    let both_hyperbolic = class_a == ElementClass::Hyperbolic && class_b == ElementClass::Hyperbolic;
    let axes = if both_hyperbolic { Some(axes_relation(a, b)?) } else { None };

    if axes == Some(AxesRelation::Intersecting) {
        let words: &[&str] = if equal { &["a", "b"] } else { &["b"] };
        return finish(Case::IIntersecting, Some(OptimalitySet::of(words)), swapped, pair);
    }

    let parabolic_shares = !both_hyperbolic && {
        let (ap, am) = fixed_points(a)?;
        let (bp, bm) = fixed_points(b)?;
        ap == bp || ap == bm || am == bp || am == bm
    };
    if axes == Some(AxesRelation::AsymptoticallyParallel) || parabolic_shares {
        if !equal {
            return finish(Case::IIParallelUnequal, Some(OptimalitySet::of(&["b"])), swapped, pair);
        }
        return match plus.meet(&minus) {
            ArcMeet::Points(1) => finish(Case::IIParallel1, Some(OptimalitySet::of(&["a", "b"])), swapped, pair),
            ArcMeet::Disjoint => finish(Case::IIParallel2, Some(OptimalitySet::AllNonPowers), swapped, pair),
            _ => out_of_scope("parallel pair with overlapping arcs", swapped, pair),
        };
    }

    let well = well_oriented(a, b)?;
    if equal && well {
        return finish(Case::IIIEqualTraceWellOriented, Some(OptimalitySet::of(&["ab"])), swapped, pair);
    }
    if !well {
        return out_of_scope("coherently but not well oriented, unclassified configuration", swapped, pair);
    }
    let Some(int_pair) = pair.to_integer() else {
        return out_of_scope("real-entry case IV; counterexamples exist", swapped, pair);
    };
    let (ia, ib) = (int_pair.a.tr(), int_pair.b.tr());
    let iab = int_pair.a.mul(&int_pair.b).tr();
    let case = iv_branch(&ia, &ib, &iab)?;
    let words: &[&str] = match case {
        Case::IV1 => &["b"],
        Case::IV3a => &["ab"],
        _ => &["abb"],
    };
    finish(case, Some(OptimalitySet::of(words)), swapped, pair)
}
