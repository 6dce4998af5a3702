//! Intermediate value solvers over sampled functions.
//!
//! All solvers scan adjacent sample pairs in `[a, b]` looking for brackets,
//! pairs whose values straddle the target `l` (inclusive). Among all bracket
//! endpoints the one with the smallest `|f(c) - l|` wins, ties going to the
//! smaller `c`.
//!
//! * [`fuzzy_intermediate`] works for any data and bounds the residual by
//!   half the largest adjacent jump.
//! * [`discrete_intermediate`] checks the grid preconditions (`q` covers the
//!   domain spacing, the codomain grid is no finer than `r`, `f` is
//!   `(q, r)`-continuous, everything lies on the codomain grid) and returns
//!   an exact hit.
//! * [`digital_intermediate`] is the integer-grid case with `q = r = 1`.

use serde::Serialize;

use crate::continuity::{defect_profile, FuzzyParams};
use crate::error::{Error, Precondition, Result};
use crate::function::SampledFunction;
use crate::set::DiscreteSet;

/// Relative slack used when snapping values onto a codomain grid.
pub const GRID_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Guarantee {
    Exact,
    /// `residual <= bound`.
    Fuzzy { bound: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Witness {
    pub c: f64,
    pub value: f64,
    pub target: f64,
    /// `|f(c) - target|`.
    pub residual: f64,
    pub guarantee: Guarantee,
    /// `a < c < b`.
    pub interior: bool,
}

/// The set of admissible values of the function.
#[derive(Debug, Clone, PartialEq)]
pub enum CodomainGrid {
    /// `{ k * spacing : k in Z }`.
    Uniform { spacing: f64 },
    Explicit(DiscreteSet),
}

impl CodomainGrid {
    pub fn uniform(spacing: f64) -> Result<Self> {
        if spacing > 0.0 && spacing.is_finite() {
            Ok(CodomainGrid::Uniform { spacing })
        } else {
            Err(Error::InvalidSpacing(spacing))
        }
    }

    /// Lower inner bound of the grid; infinite for a one-point grid.
    pub fn lib(&self) -> f64 {
        match self {
            CodomainGrid::Uniform { spacing } => *spacing,
            CodomainGrid::Explicit(set) => set.lib().unwrap_or(f64::INFINITY),
        }
    }

    /// Grid node that `y` sits on, up to [`GRID_SLACK`].
    pub fn node_of(&self, y: f64) -> Option<i64> {
        match self {
            CodomainGrid::Uniform { spacing } => {
                let k = (y / spacing).round();
                ((y / spacing - k).abs() <= GRID_SLACK && k.abs() < 9.0e15).then_some(k as i64)
            }
            CodomainGrid::Explicit(set) => {
                let pts = set.points();
                let slack = GRID_SLACK * set.lib().unwrap_or(1.0);
                let i = pts.partition_point(|&p| p < y);
                [i.checked_sub(1), Some(i)]
                    .into_iter()
                    .flatten()
                    .filter(|&j| j < pts.len())
                    .find(|&j| (pts[j] - y).abs() <= slack)
                    .map(|j| j as i64)
            }
        }
    }

    pub fn contains(&self, y: f64) -> bool {
        self.node_of(y).is_some()
    }

    /// Needed by the sign-change (`l = 0`) form.
    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }
}

fn violated(which: Precondition, detail: impl Into<String>) -> Error {
    Error::PreconditionViolated {
        which,
        detail: detail.into(),
    }
}

/// Restriction of `f` to `[a, b]` after checking both ends are domain points.
fn bracket(f: &SampledFunction, a: f64, b: f64) -> Result<SampledFunction> {
    for end in [a, b] {
        if !f.domain().contains(end) {
            return Err(Error::PointNotInDomain(end));
        }
    }
    if a > b {
        return Err(violated(Precondition::Bracket, format!("a = {a} > b = {b}")));
    }
    Ok(f.restrict(a, b).expect("a is a domain point"))
}

fn check_range(f: &SampledFunction, a: f64, b: f64, l: f64) -> Result<()> {
    let (fa, fb) = (f.get(a).unwrap(), f.get(b).unwrap());
    let (lo, hi) = (fa.min(fb), fa.max(fb));
    if lo <= l && l <= hi {
        Ok(())
    } else {
        Err(Error::TargetOutOfRange { target: l, lo, hi })
    }
}

/// Best bracket endpoint on an already restricted function: `(index, residual)`.
fn scan(g: &SampledFunction, l: f64) -> (usize, f64) {
    let v = g.values();
    if v.len() == 1 {
        return (0, (v[0] - l).abs());
    }
    let mut best: Option<(usize, f64)> = None;
    for i in 0..v.len() - 1 {
        let (d0, d1) = (v[i] - l, v[i + 1] - l);
        let straddles = (d0 <= 0.0 && d1 >= 0.0) || (d0 >= 0.0 && d1 <= 0.0);
        if !straddles {
            continue;
        }
        for (j, d) in [(i, d0.abs()), (i + 1, d1.abs())] {
            if best.is_none_or(|(bj, bd)| d < bd || (d == bd && j < bj)) {
                best = Some((j, d));
            }
        }
    }
    best.expect("endpoint values straddle the target, so some adjacent pair does")
}

fn witness(g: &SampledFunction, a: f64, b: f64, l: f64, guarantee: Guarantee) -> Witness {
    let (i, residual) = scan(g, l);
    let c = g.points()[i];
    Witness {
        c,
        value: g.values()[i],
        target: l,
        residual,
        guarantee,
        interior: a < c && c < b,
    }
}

/// Point `c` in `[a, b]` with `|f(c) - l|` at most half the largest adjacent
/// jump of `f` on `[a, b]`.
pub fn fuzzy_intermediate(f: &SampledFunction, a: f64, b: f64, l: f64) -> Result<Witness> {
    let g = bracket(f, a, b)?;
    check_range(f, a, b, l)?;
    let bound = g.max_adjacent_jump() / 2.0;
    Ok(witness(&g, a, b, l, Guarantee::Fuzzy { bound }))
}

/// Exact hit `f(c) = l` for a `(q, r)`-continuous `f` whose domain spacing on
/// `[a, b]` is at most `q` and whose values live on a grid no finer than `r`.
///
/// `f(c)` and `l` are on the same grid node; the reported residual is zero
/// whenever both carry the same floating-point representation of that node.
pub fn discrete_intermediate(
    f: &SampledFunction,
    codomain: &CodomainGrid,
    a: f64,
    b: f64,
    l: f64,
    params: FuzzyParams,
) -> Result<Witness> {
    let g = bracket(f, a, b)?;
    check_range(f, a, b, l)?;
    let (q, r) = (params.q(), params.r());

    let uib = g.domain().uib().unwrap_or(0.0);
    if q < uib {
        return Err(violated(
            Precondition::QTooSmall,
            format!("q = {q} < uib = {uib} on [{a}, {b}]"),
        ));
    }
    let lib = codomain.lib();
    if lib < r {
        return Err(violated(
            Precondition::CodomainTooFine,
            format!("codomain lib = {lib} < r = {r}"),
        ));
    }
    if let Some((x, y)) = f.pairs().find(|&(_, y)| !codomain.contains(y)) {
        return Err(violated(
            Precondition::ValueOffGrid,
            format!("f({x}) = {y} is not on the codomain grid"),
        ));
    }
    let Some(target_node) = codomain.node_of(l) else {
        return Err(violated(
            Precondition::TargetOffGrid,
            format!("target {l} is not on the codomain grid"),
        ));
    };
    // values are only pinned to their nodes up to the grid slack
    let node_slack = if lib.is_finite() { 2.0 * GRID_SLACK * lib } else { 0.0 };
    let profile = defect_profile(f, q);
    if profile.global > r + node_slack {
        return Err(violated(
            Precondition::Continuity,
            format!(
                "defect {} at x = {} exceeds r = {r} for q = {q}",
                profile.global, profile.argmax
            ),
        ));
    }

    let w = witness(&g, a, b, l, Guarantee::Exact);
    assert_eq!(
        codomain.node_of(w.value),
        Some(target_node),
        "discrete IVT preconditions hold but no exact hit was found"
    );
    Ok(w)
}

fn as_integer(x: f64) -> Option<i64> {
    (x.fract() == 0.0 && x.abs() < 9.0e15).then_some(x as i64)
}

/// Integer-grid intermediate value: for `f` on consecutive integers with
/// `|f(k + 1) - f(k)| <= 1` and `f(m) < l < f(n)` (or reversed), finds
/// `m < c < n` with `f(c) = l`.
pub fn digital_intermediate(f: &SampledFunction, m: i64, n: i64, l: i64) -> Result<Witness> {
    let xs: Option<Vec<i64>> = f.points().iter().map(|&x| as_integer(x)).collect();
    let ys: Option<Vec<i64>> = f.values().iter().map(|&y| as_integer(y)).collect();
    let (Some(xs), Some(ys)) = (xs, ys) else {
        return Err(Error::NotIntegerGrid);
    };
    if xs.windows(2).any(|w| w[1] - w[0] != 1) {
        return Err(Error::NotIntegerGrid);
    }
    if let Some(i) = ys.windows(2).position(|w| (w[1] - w[0]).abs() > 1) {
        return Err(Error::NotDigitallyContinuous { at: xs[i] });
    }
    let index = |k: i64| {
        let i = k - xs[0];
        (0..xs.len() as i64)
            .contains(&i)
            .then_some(i as usize)
            .ok_or(Error::PointNotInDomain(k as f64))
    };
    let (im, in_) = (index(m)?, index(n)?);
    if m >= n {
        return Err(violated(Precondition::Bracket, format!("m = {m} >= n = {n}")));
    }
    let (fm, fn_) = (ys[im], ys[in_]);
    if !((fm < l && l < fn_) || (fm > l && l > fn_)) {
        return Err(Error::TargetOutOfOpenRange { target: l, fm, fn_ });
    }
    let i = (im + 1..in_)
        .find(|&i| ys[i] == l)
        .expect("unit steps between f(m) and f(n) pass through every integer between them");
    Ok(Witness {
        c: xs[i] as f64,
        value: ys[i] as f64,
        target: l as f64,
        residual: 0.0,
        guarantee: Guarantee::Exact,
        interior: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn f(pairs: &[(f64, f64)]) -> SampledFunction {
        SampledFunction::from_pairs(pairs, 0.0).unwrap()
    }

    /// Samples `k / per` for `k = 0..=n`.
    fn stepped(per: f64, n: usize, rule: impl Fn(f64) -> f64) -> SampledFunction {
        let pts: Vec<f64> = (0..=n).map(|k| k as f64 / per).collect();
        SampledFunction::sample(DiscreteSet::new(&pts, 0.0).unwrap(), rule).unwrap()
    }

    fn line_fixture() -> SampledFunction {
        f(&[(0.0, -0.2), (0.5, 0.0), (1.0, 0.2), (1.5, 0.4)])
    }

    #[test]
    fn fuzzy_endpoint_hit() {
        let g = f(&[(0.0, 1.0), (1.0, 3.0), (2.0, 2.0)]);
        let w = fuzzy_intermediate(&g, 0.0, 2.0, 1.0).unwrap();
        assert_eq!((w.c, w.residual, w.interior), (0.0, 0.0, false));
    }

    #[test]
    fn fuzzy_jump_fixture() {
        let pts: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
        let g = SampledFunction::sample(DiscreteSet::new(&pts, 0.0).unwrap(), |x| {
            if x < 0.5 {
                x
            } else {
                x + 0.3
            }
        })
        .unwrap();
        let w = fuzzy_intermediate(&g, 0.0, 1.0, 0.6).unwrap();
        assert_eq!(w.c, 0.49);
        assert!((w.residual - 0.11).abs() < 1e-12);
        let jump = g.max_adjacent_jump();
        assert!((jump - 0.31).abs() < 1e-12);
        assert!(w.residual < jump);
        assert_eq!(w.guarantee, Guarantee::Fuzzy { bound: jump / 2.0 });
    }

    #[test]
    fn fuzzy_value_gap_fixture() {
        let g = stepped(1000.0, 1000, |x| if x <= 0.5 { x * x * x } else { x });
        let w = fuzzy_intermediate(&g, 0.0, 1.0, 0.3).unwrap();
        assert_eq!(w.c, 0.5);
        assert!((w.residual - 0.175).abs() < 1e-12);
        assert!(w.residual < 0.375);
    }

    #[test]
    fn fuzzy_errors() {
        let g = line_fixture();
        assert!(matches!(
            fuzzy_intermediate(&g, 0.0, 1.5, 99.0),
            Err(Error::TargetOutOfRange { .. })
        ));
        assert_eq!(
            fuzzy_intermediate(&g, 0.1, 1.5, 0.0),
            Err(Error::PointNotInDomain(0.1))
        );
        assert!(matches!(
            fuzzy_intermediate(&g, 1.5, 0.0, 0.0),
            Err(Error::PreconditionViolated { which: Precondition::Bracket, .. })
        ));
    }

    #[test]
    fn discrete_examples() {
        let g = line_fixture();
        let y = CodomainGrid::uniform(0.2).unwrap();
        let p = FuzzyParams::new(0.5, 0.2).unwrap();
        let w = discrete_intermediate(&g, &y, 0.0, 1.5, 0.2, p).unwrap();
        assert_eq!((w.c, w.residual, w.guarantee), (1.0, 0.0, Guarantee::Exact));
        assert!(w.interior);
        let w = discrete_intermediate(&g, &y, 0.0, 1.5, 0.0, p).unwrap();
        assert_eq!((w.c, w.residual), (0.5, 0.0));
        assert!(y.contains_zero());
    }

    #[test]
    fn discrete_preconditions() {
        let which = |r: Result<Witness>| match r {
            Err(Error::PreconditionViolated { which, .. }) => which,
            other => panic!("expected precondition failure, got {other:?}"),
        };
        let g = f(&[(0.0, 0.0), (1.0, 2.0)]);
        let ints = CodomainGrid::uniform(1.0).unwrap();
        let p = FuzzyParams::new(1.0, 1.0).unwrap();
        assert_eq!(
            which(discrete_intermediate(&g, &ints, 0.0, 1.0, 1.0, p)),
            Precondition::Continuity
        );

        let g = line_fixture();
        let y = CodomainGrid::uniform(0.2).unwrap();
        let p = |q, r| FuzzyParams::new(q, r).unwrap();
        assert_eq!(
            which(discrete_intermediate(&g, &y, 0.0, 1.5, 0.2, p(0.4, 0.2))),
            Precondition::QTooSmall
        );
        assert_eq!(
            which(discrete_intermediate(&g, &y, 0.0, 1.5, 0.2, p(0.5, 0.3))),
            Precondition::CodomainTooFine
        );
        assert_eq!(
            which(discrete_intermediate(&g, &y, 0.0, 1.5, 0.1, p(0.5, 0.2))),
            Precondition::TargetOffGrid
        );
        let off = f(&[(0.0, -0.2), (0.5, 0.05), (1.0, 0.2)]);
        assert_eq!(
            which(discrete_intermediate(&off, &y, 0.0, 1.0, 0.2, p(0.5, 0.2))),
            Precondition::ValueOffGrid
        );
        assert!(matches!(
            discrete_intermediate(&g, &y, 0.0, 1.5, 1.0, p(0.5, 0.2)),
            Err(Error::TargetOutOfRange { .. })
        ));
    }

    #[test]
    fn explicit_codomain() {
        let g = line_fixture();
        let y = CodomainGrid::Explicit(DiscreteSet::new(&[-0.2, 0.0, 0.2, 0.4, 1.0], 0.0).unwrap());
        assert_eq!(y.lib(), 0.2);
        let p = FuzzyParams::new(0.5, 0.2).unwrap();
        let w = discrete_intermediate(&g, &y, 0.0, 1.5, 0.2, p).unwrap();
        assert_eq!(w.c, 1.0);
        assert!(!y.contains(0.1));
    }

    #[test]
    fn grid_membership_tolerates_decimal_rounding() {
        let y = CodomainGrid::uniform(0.2).unwrap();
        assert_eq!(y.node_of(0.6), Some(3));
        assert_eq!(y.node_of(-1.4), Some(-7));
        assert_eq!(y.node_of(0.61), None);
    }

    #[test]
    fn digital_examples() {
        let g = f(&[(0.0, 3.0), (1.0, 2.0), (2.0, 2.0), (3.0, 1.0), (4.0, 0.0), (5.0, -1.0)]);
        let w = digital_intermediate(&g, 0, 5, 0).unwrap();
        assert_eq!((w.c, w.residual, w.guarantee), (4.0, 0.0, Guarantee::Exact));

        let id = stepped(1.0, 10, |x| x);
        assert_eq!(digital_intermediate(&id, 0, 10, 7).unwrap().c, 7.0);

        let jump = f(&[(0.0, 0.0), (1.0, 2.0)]);
        assert_eq!(
            digital_intermediate(&jump, 0, 1, 1),
            Err(Error::NotDigitallyContinuous { at: 0 })
        );
        assert!(matches!(
            digital_intermediate(&id, 0, 10, 0),
            Err(Error::TargetOutOfOpenRange { .. })
        ));
        let frac = f(&[(0.0, 0.0), (1.0, 0.5)]);
        assert_eq!(digital_intermediate(&frac, 0, 1, 0), Err(Error::NotIntegerGrid));
        let holes = f(&[(0.0, 0.0), (2.0, 1.0)]);
        assert_eq!(digital_intermediate(&holes, 0, 2, 0), Err(Error::NotIntegerGrid));
        assert_eq!(
            digital_intermediate(&id, 0, 11, 5),
            Err(Error::PointNotInDomain(11.0))
        );
    }

    fn walk() -> impl Strategy<Value = (SampledFunction, f64)> {
        (
            prop::collection::vec((0.1f64..2.0, -1.0f64..1.0), 2..40),
            0.05f64..1.0,
        )
            .prop_map(|(steps, r)| {
                let (mut x, mut y) = (0.0, 0.0);
                let mut pairs = vec![(0.0, 0.0)];
                for (dx, dy) in steps {
                    x += dx;
                    y += dy * r;
                    pairs.push((x, y));
                }
                (SampledFunction::from_pairs(&pairs, 0.0).unwrap(), r)
            })
    }

    proptest! {
        #[test]
        fn orientation_symmetry((g, _) in walk(), t in 0.0f64..1.0) {
            let (a, b) = (g.domain().min(), g.domain().max());
            let (fa, fb) = (g.get(a).unwrap(), g.get(b).unwrap());
            let l = fa + t * (fb - fa);
            let neg = SampledFunction::new(g.domain().clone(), g.values().iter().map(|v| -v).collect()).unwrap();
            let w1 = fuzzy_intermediate(&g, a, b, l).unwrap();
            let w2 = fuzzy_intermediate(&neg, a, b, -l).unwrap();
            prop_assert_eq!(w1.c, w2.c);
            prop_assert_eq!(w1.residual, w2.residual);
        }

        #[test]
        fn fuzzy_residual_bounds((g, r) in walk(), t in 0.0f64..1.0) {
            let (a, b) = (g.domain().min(), g.domain().max());
            let (fa, fb) = (g.get(a).unwrap(), g.get(b).unwrap());
            let l = fa.min(fb) + t * (fa - fb).abs();
            let w = fuzzy_intermediate(&g, a, b, l).unwrap();
            let jump = g.max_adjacent_jump();
            prop_assert!(w.residual <= jump / 2.0);
            let uib = g.domain().uib().unwrap();
            prop_assert!(w.residual <= defect_profile(&g, uib).global / 2.0);
            prop_assert!(w.residual < r);
            prop_assert_eq!(w.residual, (g.get(w.c).unwrap() - l).abs());
        }
    }
}
