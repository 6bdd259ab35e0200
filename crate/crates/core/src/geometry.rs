//! Boundary dynamics on the projective line: fixed points, cyclic order,
//! invariant arcs and the relative position of translation axes.
//!
//! Counterclockwise on the boundary means increasing real coordinate,
//! wrapping from `+inf` through `inf` to `-inf`.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;

use crate::matrix::Mat2;
use crate::scalars::{QuadExt, RatInterval, Rational, ScalarError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("matrix is elliptic")]
    Elliptic,
    #[error("matrix is plus or minus the identity")]
    Identity,
    #[error("matrices commute")]
    Commuting,
    #[error("betweenness needs three distinct points")]
    NotDistinct,
    #[error("expected hyperbolic matrices")]
    NotHyperbolic,
    #[error("pair is not coherently oriented")]
    NotCoherent,
    #[error("the arcs I+ and I- intersect")]
    ArcsMeet,
    #[error("fixed points are not representable in a single quadratic field: {0}")]
    UnsupportedField(ScalarError),
    #[error("could not separate values within {0} bits")]
    Undecided(u32),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementClass {
    Identity,
    Elliptic,
    Parabolic,
    Hyperbolic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AxesRelation {
    Intersecting,
    AsymptoticallyParallel,
    Ultraparallel,
}

/// Point of the projective line. `Infinity` sorts after every finite point,
/// which turns the linear order into the cyclic one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BoundaryPoint {
    Finite(QuadExt),
    Infinity,
}

impl BoundaryPoint {
    pub fn finite(x: impl Into<QuadExt>) -> Self {
        BoundaryPoint::Finite(x.into())
    }

    /// Image under `x -> (a x + b) / (c x + d)`.
    pub fn apply(&self, m: &Mat2<QuadExt>) -> Result<BoundaryPoint, ScalarError> {
        let (num, den) = match self {
            BoundaryPoint::Infinity => (m.a11.clone(), m.a21.clone()),
            BoundaryPoint::Finite(x) => (
                m.a11.checked_mul(x)?.checked_add(&m.a12)?,
                m.a21.checked_mul(x)?.checked_add(&m.a22)?,
            ),
        };
        if den.is_zero() {
            Ok(BoundaryPoint::Infinity)
        } else {
            Ok(BoundaryPoint::Finite(num.checked_div(&den)?))
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Finite(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

impl fmt::Debug for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `β` is met when traveling counterclockwise from `α` to `γ`.
pub fn betweenness(alpha: &BoundaryPoint, beta: &BoundaryPoint, gamma: &BoundaryPoint) -> Result<bool, GeometryError> {
    if alpha == beta || beta == gamma || alpha == gamma {
        return Err(GeometryError::NotDistinct);
    }
    Ok(strictly_between(alpha, beta, gamma))
}

fn strictly_between(a: &BoundaryPoint, b: &BoundaryPoint, c: &BoundaryPoint) -> bool {
    (a < b && b < c) || (b < c && c < a) || (c < a && a < b)
}

/// Closed arc from `start` counterclockwise to `end`; a single point when
/// the endpoints coincide.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BoundaryInterval {
    pub start: BoundaryPoint,
    pub end: BoundaryPoint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArcMeet {
    Disjoint,
    /// Finitely many common points (one or two shared endpoints).
    Points(usize),
    Overlap,
}

impl BoundaryInterval {
    pub fn new(start: BoundaryPoint, end: BoundaryPoint) -> Self {
        BoundaryInterval { start, end }
    }

    pub fn singleton(p: BoundaryPoint) -> Self {
        BoundaryInterval { start: p.clone(), end: p }
    }

    pub fn is_singleton(&self) -> bool {
        self.start == self.end
    }

    /// Interior point, excluding the endpoints.
    pub fn interior_contains(&self, p: &BoundaryPoint) -> bool {
        !self.is_singleton() && *p != self.start && *p != self.end && strictly_between(&self.start, p, &self.end)
    }

    pub fn contains(&self, p: &BoundaryPoint) -> bool {
        *p == self.start || *p == self.end || self.interior_contains(p)
    }

    pub fn meet(&self, other: &BoundaryInterval) -> ArcMeet {
        if self.is_singleton() || other.is_singleton() {
            let (pt, arc) = if self.is_singleton() { (&self.start, other) } else { (&other.start, self) };
            return if arc.contains(pt) { ArcMeet::Points(1) } else { ArcMeet::Disjoint };
        }
        if self == other
            || self.interior_contains(&other.start)
            || self.interior_contains(&other.end)
            || other.interior_contains(&self.start)
            || other.interior_contains(&self.end)
        {
            return ArcMeet::Overlap;
        }
        let shared = [&self.start, &self.end].iter().filter(|p| **p == &other.start || **p == &other.end).count();
        if shared == 0 {
            ArcMeet::Disjoint
        } else {
            ArcMeet::Points(shared)
        }
    }
}

impl fmt::Display for BoundaryInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_singleton() {
            write!(f, "{{{}}}", self.start)
        } else {
            write!(f, "[{}, {}]", self.start, self.end)
        }
    }
}

fn two() -> QuadExt {
    QuadExt::from(2)
}

pub fn classify_element(m: &Mat2<QuadExt>) -> ElementClass {
    if m.is_scalar_identity() {
        return ElementClass::Identity;
    }
    match m.tr().abs().cmp(&two()) {
        Ordering::Less => ElementClass::Elliptic,
        Ordering::Equal => ElementClass::Parabolic,
        Ordering::Greater => ElementClass::Hyperbolic,
    }
}

/// `(attracting, repelling)`; both equal the unique fixed point when `m` is
/// parabolic.
pub fn fixed_points(m: &Mat2<QuadExt>) -> Result<(BoundaryPoint, BoundaryPoint), GeometryError> {
    match classify_element(m) {
        ElementClass::Elliptic => return Err(GeometryError::Elliptic),
        ElementClass::Identity => return Err(GeometryError::Identity),
        _ => {}
    }
    let m = m.normalize_sign();
    let unsupported = GeometryError::UnsupportedField;
    let t = m.tr();
    let disc = t.checked_mul(&t).and_then(|s| s.checked_sub(&QuadExt::from(4))).map_err(unsupported)?;
    let root = disc.sqrt().ok_or(GeometryError::UnsupportedField(ScalarError::NoSquareRoot(disc.to_string())))?;
    let diff = m.a11.checked_sub(&m.a22).map_err(unsupported)?;
    if m.a21.is_zero() {
        // upper triangular: inf has eigenvalue a11, the other point eigenvalue a22
        if diff.is_zero() {
            return Ok((BoundaryPoint::Infinity, BoundaryPoint::Infinity));
        }
        let other = BoundaryPoint::Finite(m.a12.checked_div(&(-diff.clone())).map_err(unsupported)?);
        return Ok(if diff.signum() == Ordering::Greater {
            (BoundaryPoint::Infinity, other)
        } else {
            (other, BoundaryPoint::Infinity)
        });
    }
    // eigenvector (x, 1) has eigenvalue c x + d = (tr +- root) / 2
    let denom = m.a21.checked_mul(&two()).map_err(unsupported)?;
    let plus = diff.checked_add(&root).and_then(|v| v.checked_div(&denom)).map_err(unsupported)?;
    let minus = diff.checked_sub(&root).and_then(|v| v.checked_div(&denom)).map_err(unsupported)?;
    Ok((BoundaryPoint::Finite(plus), BoundaryPoint::Finite(minus)))
}

/// Direction in which a parabolic element pushes the points it moves.
fn moves_counterclockwise(m: &Mat2<QuadExt>, fixed: &BoundaryPoint) -> Result<bool, GeometryError> {
    let probe = [0, 1, -1]
        .into_iter()
        .map(BoundaryPoint::finite)
        .find(|p| p != fixed)
        .expect("a fixed point excludes at most one probe");
    let image = probe.apply(m).map_err(GeometryError::UnsupportedField)?;
    Ok(strictly_between(fixed, &probe, &image))
}

struct Dynamics {
    class: ElementClass,
    attracting: BoundaryPoint,
    repelling: BoundaryPoint,
    matrix: Mat2<QuadExt>,
}

impl Dynamics {
    fn of(m: &Mat2<QuadExt>) -> Result<Self, GeometryError> {
        let (attracting, repelling) = fixed_points(m)?;
        Ok(Dynamics { class: classify_element(m), attracting, repelling, matrix: m.normalize_sign() })
    }

    /// Whether the arc from `own` (this element's attracting point) to
    /// `other`, in the given direction, is mapped into itself.
    fn keeps(&self, arc: &BoundaryInterval, own_is_start: bool) -> Result<bool, GeometryError> {
        match self.class {
            ElementClass::Hyperbolic => Ok(!arc.interior_contains(&self.repelling)),
            _ => {
                let ccw = moves_counterclockwise(&self.matrix, &self.attracting)?;
                Ok(if own_is_start { !ccw } else { ccw })
            }
        }
    }
}

/// The arc spanned by the attracting points of `a` and `b` that both map
/// into itself, per the definition of coherent orientation.
fn invariant_arc(a: &Mat2<QuadExt>, b: &Mat2<QuadExt>) -> Result<Option<BoundaryInterval>, GeometryError> {
    let da = Dynamics::of(a)?;
    let db = Dynamics::of(b)?;
    if da.attracting == db.attracting {
        return Ok(Some(BoundaryInterval::singleton(da.attracting)));
    }
    let forward = BoundaryInterval::new(da.attracting.clone(), db.attracting.clone());
    if da.keeps(&forward, true)? && db.keeps(&forward, false)? {
        return Ok(Some(forward));
    }
    let backward = BoundaryInterval::new(db.attracting.clone(), da.attracting.clone());
    if da.keeps(&backward, false)? && db.keeps(&backward, true)? {
        return Ok(Some(backward));
    }
    Ok(None)
}

fn inverse(m: &Mat2<QuadExt>) -> Mat2<QuadExt> {
    m.inv().expect("unimodular input")
}

/// `Some((I+, I-))` when the pair is coherently oriented.
pub fn coherent_orientation(
    a: &Mat2<QuadExt>,
    b: &Mat2<QuadExt>,
) -> Result<Option<(BoundaryInterval, BoundaryInterval)>, GeometryError> {
    if a.commutes_with(b) {
        return Err(GeometryError::Commuting);
    }
    let Some(plus) = invariant_arc(a, b)? else { return Ok(None) };
    let Some(minus) = invariant_arc(&inverse(a), &inverse(b))? else { return Ok(None) };
    Ok(Some((plus, minus)))
}

pub fn well_oriented(a: &Mat2<QuadExt>, b: &Mat2<QuadExt>) -> Result<bool, GeometryError> {
    Ok(coherent_orientation(a, b)?.is_some() && coherent_orientation(a, &inverse(b))?.is_none())
}

pub fn axes_relation(a: &Mat2<QuadExt>, b: &Mat2<QuadExt>) -> Result<AxesRelation, GeometryError> {
    if a.commutes_with(b) {
        return Err(GeometryError::Commuting);
    }
    if classify_element(a) != ElementClass::Hyperbolic || classify_element(b) != ElementClass::Hyperbolic {
        return Err(GeometryError::NotHyperbolic);
    }
    let (ap, am) = fixed_points(a)?;
    let (bp, bm) = fixed_points(b)?;
    if ap == bp || ap == bm || am == bp || am == bm {
        return Ok(AxesRelation::AsymptoticallyParallel);
    }
    let arc = BoundaryInterval::new(ap, am);
    if arc.interior_contains(&bp) != arc.interior_contains(&bm) {
        Ok(AxesRelation::Intersecting)
    } else {
        Ok(AxesRelation::Ultraparallel)
    }
}

/// Enclosure of the spectral radius `(t + sqrt(t^2 - 4)) / 2` for `t >= 2`.
fn radius_enclosure(t: &QuadExt, bits: u32) -> RatInterval {
    let two = Rational::from_integer(2.into());
    let four = Rational::from_integer(4.into());
    let ti = t.enclose(bits);
    let lo_t = ti.lo().clone().max(two.clone());
    let hi_t = ti.hi().clone().max(two.clone());
    let lo = (&lo_t + RatInterval::sqrt_of(&(&lo_t * &lo_t - &four), bits).lo()) / &two;
    let hi = (&hi_t + RatInterval::sqrt_of(&(&hi_t * &hi_t - &four), bits).hi()) / &two;
    RatInterval::new(lo, hi)
}

const MAX_BITS: u32 = 1 << 14;

/// Order of `ρ(AB)` against `ρ(A) ρ(B)` for a coherently oriented hyperbolic
/// pair whose arcs are disjoint.
pub fn trichotomy_check(a: &Mat2<QuadExt>, b: &Mat2<QuadExt>) -> Result<Ordering, GeometryError> {
    if classify_element(a) != ElementClass::Hyperbolic || classify_element(b) != ElementClass::Hyperbolic {
        return Err(GeometryError::NotHyperbolic);
    }
    let (plus, minus) = coherent_orientation(a, b)?.ok_or(GeometryError::NotCoherent)?;
    if plus.meet(&minus) != ArcMeet::Disjoint {
        return Err(GeometryError::ArcsMeet);
    }
    if axes_relation(a, b)? == AxesRelation::AsymptoticallyParallel {
        return Ok(Ordering::Equal);
    }
    let (a, b) = (a.normalize_sign(), b.normalize_sign());
    let (ta, tb, tab) = (a.tr(), b.tr(), a.mul(&b).tr());
    let mut bits = 32;
    while bits <= MAX_BITS {
        let prod = radius_enclosure(&ta, bits).mul(&radius_enclosure(&tb, bits));
        let rab = radius_enclosure(&tab, bits);
        if rab.hi() < prod.lo() {
            return Ok(Ordering::Less);
        }
        if rab.lo() > prod.hi() {
            return Ok(Ordering::Greater);
        }
        bits *= 2;
    }
    Err(GeometryError::Undecided(MAX_BITS))
}

/// The nonnegative-entry criterion for coherent orientation.
pub fn has_nonnegative_entries(m: &Mat2<QuadExt>) -> bool {
    m.entries().iter().all(|x| x.signum() != Ordering::Less)
}
