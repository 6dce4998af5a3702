//! Finite discrete sets of reals and their adjacency structure.
//!
//! A [`DiscreteSet`] is a strictly increasing list of finite reals. All of
//! its structural quantities (gaps, lower and upper inner bounds,
//! uniformity) are defined through *adjacent* points only.

use serde::Serialize;

use crate::error::{Error, Result};

/// How a set was produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Origin {
    Explicit,
    /// Points `u * k` for every integer `k` with `m < k < n`.
    UniformGrid { spacing: f64, m: i64, n: i64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteSet {
    points: Vec<f64>,
    origin: Origin,
}

/// Lower/upper inner bounds and uniformity of a set.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SetStats {
    /// Minimum distance between adjacent points; `None` for a singleton.
    pub lib: Option<f64>,
    /// Maximum distance between adjacent points; `None` for a singleton.
    pub uib: Option<f64>,
    pub uniform: bool,
    /// Common adjacent distance, defined iff the set is uniform with at least two points.
    pub spacing: Option<f64>,
}

/// Open interval `(lo, hi)`; `lo` may be `-inf` and `hi` may be `+inf` for rays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Gap {
    pub lo: f64,
    pub hi: f64,
}

impl Gap {
    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo < x && x < self.hi
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapReport {
    pub interior_gaps: Vec<Gap>,
    pub left_ray: Gap,
    pub right_ray: Gap,
}

fn check_tol(tol: f64) -> Result<()> {
    if tol >= 0.0 {
        Ok(())
    } else {
        Err(Error::InvalidTolerance(tol))
    }
}

/// Sorts `values` remembering input positions and reports the first adjacent
/// pair within `tol`. Shared by set and function construction.
pub(crate) fn sort_distinct(values: &[f64], tol: f64) -> Result<Vec<usize>> {
    check_tol(tol)?;
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
        return Err(Error::NonFinite { index, value });
    }
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&i, &j| values[i].total_cmp(&values[j]).then(i.cmp(&j)));
    for w in order.windows(2) {
        let (lo, hi) = (values[w[0]], values[w[1]]);
        if hi - lo <= tol {
            let (first, second) = (w[0].min(w[1]), w[0].max(w[1]));
            return Err(Error::DuplicatePoint {
                first,
                second,
                value_first: values[first],
                value_second: values[second],
            });
        }
    }
    Ok(order)
}

impl DiscreteSet {
    /// Builds a set from arbitrary-order values, rejecting any two values
    /// that differ by at most `tol`.
    pub fn new(values: &[f64], tol: f64) -> Result<Self> {
        let order = sort_distinct(values, tol)?;
        Ok(DiscreteSet {
            points: order.into_iter().map(|i| values[i]).collect(),
            origin: Origin::Explicit,
        })
    }

    /// The finite window `{ u * k : m < k < n }` of the uniform grid with spacing `u`.
    pub fn uniform_grid(u: f64, m: i64, n: i64) -> Result<Self> {
        if !(u > 0.0 && u.is_finite()) {
            return Err(Error::InvalidSpacing(u));
        }
        if n.saturating_sub(m) < 2 {
            return Err(Error::EmptyWindow { m, n });
        }
        let points = ((m + 1)..n).map(|k| k as f64 * u).collect();
        Ok(DiscreteSet {
            points,
            origin: Origin::UniformGrid { spacing: u, m, n },
        })
    }

    /// Wraps points already known to be finite and strictly increasing.
    pub(crate) fn from_sorted_unchecked(points: Vec<f64>) -> Self {
        debug_assert!(!points.is_empty());
        debug_assert!(points.windows(2).all(|w| w[0] < w[1]));
        DiscreteSet {
            points,
            origin: Origin::Explicit,
        }
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn origin(&self) -> Origin {
        self.origin
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    /// Always false; kept for the `len`/`is_empty` pairing.
    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn min(&self) -> f64 {
        self.points[0]
    }

    pub fn max(&self) -> f64 {
        self.points[self.points.len() - 1]
    }

    /// Index of `x` if it is exactly a point of the set.
    pub fn index_of(&self, x: f64) -> Option<usize> {
        self.points.binary_search_by(|p| p.total_cmp(&x)).ok()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.index_of(x).is_some()
    }

    /// Distances between consecutive points, left to right.
    pub fn adjacent_distances(&self) -> impl Iterator<Item = f64> + '_ {
        self.points.windows(2).map(|w| w[1] - w[0])
    }

    pub fn gaps(&self) -> GapReport {
        GapReport {
            interior_gaps: self
                .points
                .windows(2)
                .map(|w| Gap { lo: w[0], hi: w[1] })
                .collect(),
            left_ray: Gap {
                lo: f64::NEG_INFINITY,
                hi: self.min(),
            },
            right_ray: Gap {
                lo: self.max(),
                hi: f64::INFINITY,
            },
        }
    }

    pub fn stats(&self) -> SetStats {
        let mut dists = self.adjacent_distances();
        let Some(first) = dists.next() else {
            return SetStats {
                lib: None,
                uib: None,
                uniform: true,
                spacing: None,
            };
        };
        let (lib, uib) = dists.fold((first, first), |(lo, hi), d| (lo.min(d), hi.max(d)));
        let uniform = lib == uib;
        SetStats {
            lib: Some(lib),
            uib: Some(uib),
            uniform,
            spacing: uniform.then_some(lib),
        }
    }

    /// Lower inner bound, `None` for a singleton.
    pub fn lib(&self) -> Option<f64> {
        self.adjacent_distances().reduce(f64::min)
    }

    /// Upper inner bound, `None` for a singleton.
    pub fn uib(&self) -> Option<f64> {
        self.adjacent_distances().reduce(f64::max)
    }

    /// The points lying in the closed interval `[lo, hi]`, as an index range.
    pub fn window(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let start = self.points.partition_point(|&p| p < lo);
        let end = self.points.partition_point(|&p| p <= hi);
        start..end.max(start)
    }

    /// The subset of points in `[lo, hi]`, or `None` when there are none.
    pub fn restrict(&self, lo: f64, hi: f64) -> Option<DiscreteSet> {
        let range = self.window(lo, hi);
        (!range.is_empty()).then(|| Self::from_sorted_unchecked(self.points[range].to_vec()))
    }

    /// Index of a point of `self` within `tol` of `x`, if any.
    fn match_within(&self, x: f64, tol: f64) -> Option<usize> {
        let i = self.points.partition_point(|&p| p < x);
        [i.checked_sub(1), Some(i)]
            .into_iter()
            .flatten()
            .filter(|&j| j < self.points.len())
            .find(|&j| (self.points[j] - x).abs() <= tol)
    }

    /// Merges two sets. A point of `other` within `tol` of a point of `self`
    /// is dropped so the representative from `self` is kept.
    pub fn union(&self, other: &DiscreteSet, tol: f64) -> Result<DiscreteSet> {
        check_tol(tol)?;
        let mut merged: Vec<f64> = self.points.clone();
        merged.extend(
            other
                .points
                .iter()
                .copied()
                .filter(|&y| self.match_within(y, tol).is_none()),
        );
        merged.sort_by(f64::total_cmp);
        merged.dedup();
        Ok(Self::from_sorted_unchecked(merged))
    }

    /// Returns `(self ∩ other, self \ other)` under `tol`-matching. Points
    /// are always taken from `self`; empty results are `None`.
    pub fn intersect_and_difference(
        &self,
        other: &DiscreteSet,
        tol: f64,
    ) -> Result<(Option<DiscreteSet>, Option<DiscreteSet>)> {
        check_tol(tol)?;
        let (inter, diff): (Vec<f64>, Vec<f64>) = self
            .points
            .iter()
            .partition(|&&x| other.match_within(x, tol).is_some());
        let wrap = |v: Vec<f64>| (!v.is_empty()).then(|| Self::from_sorted_unchecked(v));
        Ok((wrap(inter), wrap(diff)))
    }
}
