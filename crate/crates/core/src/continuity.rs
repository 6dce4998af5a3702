//! Continuity defects and `(q, r)`-continuity verdicts for sampled functions.
//!
//! On a finite domain the ε-δ condition "for every ε > 0 there is δ > 0 with
//! `|a - x| < q + δ  ⟹  |f(x) - f(a)| < r + ε`" is equivalent to
//! "`|a - x| <= q  ⟹  |f(x) - f(a)| <= r` for every sample `x`". The smallest
//! such `r` is the *defect* of `f` at `a`:
//!
//! ```text
//! defect(a, q) = max { |f(x) - f(a)| : x in domain, |x - a| <= q }
//! ```
//!
//! Distances are compared exactly in floating point. Grid data whose
//! spacing is not a power of two rarely has adjacent distances equal to
//! the decimal `q` the caller has in mind; inflate `q` slightly in that case.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::function::{MonotoneClass, SampledFunction};
use crate::set::DiscreteSet;

/// Domain slack `q` and codomain slack `r`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FuzzyParams {
    q: f64,
    r: f64,
}

impl FuzzyParams {
    pub fn new(q: f64, r: f64) -> Result<Self> {
        // NaN fails both comparisons
        if !(q >= 0.0) {
            return Err(Error::InvalidParameter { name: "q", value: q });
        }
        if !(r >= 0.0) {
            return Err(Error::InvalidParameter { name: "r", value: r });
        }
        Ok(FuzzyParams { q, r })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn r(&self) -> f64 {
        self.r
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PointDefect {
    pub a: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DefectProfile {
    pub q: f64,
    pub per_point: Vec<PointDefect>,
    /// Maximum of the per-point defects.
    pub global: f64,
    /// Leftmost point attaining `global`.
    pub argmax: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapCertificate {
    /// Longest interior gap of the domain.
    pub domain_gap_sup: f64,
    /// Longest interior gap of the image.
    pub image_gap_sup: f64,
    pub monotone: MonotoneClass,
}

impl GapCertificate {
    /// Any strictly monotone function with these gap bounds is `r`-continuous
    /// for every `r` strictly above `image_gap_sup`.
    pub fn certifies(&self, r: f64) -> bool {
        r > self.image_gap_sup
    }
}

fn within(a: f64, x: f64, q: f64) -> bool {
    (a - x).abs() <= q
}

/// Minimal `r` such that `f` is `(q, r)`-continuous at the domain point `a`.
pub fn defect_at(f: &SampledFunction, a: f64, q: f64) -> Result<f64> {
    let q = if q >= 0.0 { q } else { 0.0 };
    let i = f.domain().index_of(a).ok_or(Error::PointNotInDomain(a))?;
    let pts = f.points();
    let lo = pts[..i].partition_point(|&x| !within(a, x, q));
    let hi = i + pts[i..].partition_point(|&x| within(a, x, q));
    let fa = f.values()[i];
    Ok(f.values()[lo..hi]
        .iter()
        .map(|&y| (y - fa).abs())
        .fold(0.0, f64::max))
}

/// Per-point defects and their maximum, in linear time.
///
/// The window `{ j : |x_j - x_i| <= q }` is contiguous and both of its ends
/// move right as `i` does, so running max/min deques give each window's
/// extreme values. A negative or NaN `q` behaves like `q = 0`.
pub fn defect_profile(f: &SampledFunction, q: f64) -> DefectProfile {
    let q = if q >= 0.0 { q } else { 0.0 };
    let pts = f.points();
    let vals = f.values();
    let n = pts.len();
    let mut maxq: VecDeque<usize> = VecDeque::new();
    let mut minq: VecDeque<usize> = VecDeque::new();
    let (mut lo, mut hi) = (0usize, 0usize);
    let mut per_point = Vec::with_capacity(n);
    let (mut global, mut argmax) = (0.0f64, pts[0]);

    for i in 0..n {
        while hi < n && within(pts[i], pts[hi], q) {
            while maxq.back().is_some_and(|&j| vals[j] <= vals[hi]) {
                maxq.pop_back();
            }
            maxq.push_back(hi);
            while minq.back().is_some_and(|&j| vals[j] >= vals[hi]) {
                minq.pop_back();
            }
            minq.push_back(hi);
            hi += 1;
        }
        while !within(pts[i], pts[lo], q) {
            lo += 1;
        }
        while maxq.front().is_some_and(|&j| j < lo) {
            maxq.pop_front();
        }
        while minq.front().is_some_and(|&j| j < lo) {
            minq.pop_front();
        }
        let fa = vals[i];
        let top = vals[*maxq.front().expect("window contains i")];
        let bottom = vals[*minq.front().expect("window contains i")];
        let defect = (top - fa).max(fa - bottom);
        if defect > global {
            global = defect;
            argmax = pts[i];
        }
        per_point.push(PointDefect { a: pts[i], defect });
    }

    DefectProfile {
        q,
        per_point,
        global,
        argmax,
    }
}

/// Whether `f` is `(q, r)`-continuous at every point of its domain.
pub fn is_qr_continuous(f: &SampledFunction, params: FuzzyParams) -> bool {
    defect_profile(f, params.q).global <= params.r
}

/// Whether `f` is `(q, r)`-continuous at the domain point `a`.
pub fn is_qr_continuous_at(f: &SampledFunction, a: f64, params: FuzzyParams) -> Result<bool> {
    Ok(defect_at(f, a, params.q)? <= params.r)
}

/// Every function on `set` is `(q, r)`-continuous for all `r >= 0` as soon as
/// `q` is below the returned value. `None` for a singleton, where any `q` works.
pub fn trivial_continuity_bound(set: &DiscreteSet) -> Option<f64> {
    set.lib()
}

pub fn gap_certificate(f: &SampledFunction) -> Result<GapCertificate> {
    let monotone = f.monotone_class();
    if !monotone.is_strict() {
        return Err(Error::NotStrictlyMonotone);
    }
    Ok(GapCertificate {
        domain_gap_sup: f.domain().uib().unwrap_or(0.0),
        image_gap_sup: f.image().uib().unwrap_or(0.0),
        monotone,
    })
}
