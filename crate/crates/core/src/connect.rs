//! r-connectedness of finite unions of closed intervals and points.
//!
//! A set is r-disconnected when it splits into nonempty parts `A`, `B` with
//! `dist(a, B) > r` for every `a` in `A`. For a finite union of closed
//! pieces on the line this happens exactly when some gap between
//! consecutive pieces is longer than `r`: any split that interleaves pieces
//! puts two pieces from different sides next to each other.

use serde::Serialize;

use crate::continuity::{is_qr_continuous, FuzzyParams};
use crate::error::{Error, Result};
use crate::function::SampledFunction;
use crate::set::DiscreteSet;

/// Closed interval `[lo, hi]`; a point when `lo == hi`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Piece {
    pub lo: f64,
    pub hi: f64,
}

impl Piece {
    pub fn point(x: f64) -> Self {
        Piece { lo: x, hi: x }
    }

    pub fn dist(&self, c: f64) -> f64 {
        if c < self.lo {
            self.lo - c
        } else if c > self.hi {
            c - self.hi
        } else {
            0.0
        }
    }
}

/// Sorted, pairwise disjoint, non-touching closed pieces.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct RealSubset {
    pieces: Vec<Piece>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentDecomposition {
    pub r: f64,
    pub components: Vec<RealSubset>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ImageConnectedness {
    pub domain_q_connected: bool,
    pub f_qr_continuous: bool,
    pub image_r_connected: bool,
    /// False only if a q-connected domain, a (q, r)-continuous function and an
    /// r-disconnected image were observed together, which cannot happen.
    pub consistent: bool,
}

impl RealSubset {
    /// Sorts the pieces and merges any that overlap or touch.
    pub fn new(pieces: impl IntoIterator<Item = (f64, f64)>) -> Result<Self> {
        let mut raw: Vec<Piece> = Vec::new();
        for (lo, hi) in pieces {
            if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
                return Err(Error::InvalidInterval { lo, hi });
            }
            raw.push(Piece { lo, hi });
        }
        if raw.is_empty() {
            return Err(Error::EmptySet);
        }
        raw.sort_by(|a, b| a.lo.total_cmp(&b.lo));
        let mut merged: Vec<Piece> = Vec::with_capacity(raw.len());
        for p in raw {
            match merged.last_mut() {
                Some(last) if p.lo <= last.hi => last.hi = last.hi.max(p.hi),
                _ => merged.push(p),
            }
        }
        Ok(RealSubset { pieces: merged })
    }

    pub fn from_points(points: &[f64]) -> Result<Self> {
        Self::new(points.iter().map(|&x| (x, x)))
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    /// Gaps between consecutive pieces, left to right.
    pub fn gap_lengths(&self) -> impl Iterator<Item = f64> + '_ {
        self.pieces.windows(2).map(|w| w[1].lo - w[0].hi)
    }

    pub fn dist(&self, c: f64) -> f64 {
        self.pieces.iter().map(|p| p.dist(c)).fold(f64::INFINITY, f64::min)
    }

    pub fn contains(&self, c: f64) -> bool {
        self.dist(c) == 0.0
    }

    pub fn is_r_connected(&self, r: f64) -> bool {
        self.gap_lengths().all(|g| g <= r)
    }

    /// Maximal r-connected components, cut at every gap longer than `r`.
    pub fn r_components(&self, r: f64) -> ComponentDecomposition {
        let mut components = Vec::new();
        let mut current = vec![self.pieces[0]];
        for w in self.pieces.windows(2) {
            if w[1].lo - w[0].hi > r {
                components.push(RealSubset {
                    pieces: std::mem::take(&mut current),
                });
            }
            current.push(w[1]);
        }
        components.push(RealSubset { pieces: current });
        ComponentDecomposition { r, components }
    }

    /// A mutually r-disconnecting split `(A, B)` cut at the first gap
    /// longer than `r`, if the set is r-disconnected.
    pub fn disconnecting_split(&self, r: f64) -> Option<(RealSubset, RealSubset)> {
        let cut = self.gap_lengths().position(|g| g > r)? + 1;
        Some((
            RealSubset {
                pieces: self.pieces[..cut].to_vec(),
            },
            RealSubset {
                pieces: self.pieces[cut..].to_vec(),
            },
        ))
    }
}

/// `inf { |a - c| : a in set }`.
pub fn dist_to_set(c: f64, set: &RealSubset) -> f64 {
    set.dist(c)
}

pub fn is_r_connected(set: &RealSubset, r: f64) -> bool {
    set.is_r_connected(r)
}

pub fn r_components(set: &RealSubset, r: f64) -> ComponentDecomposition {
    set.r_components(r)
}

fn point_set(set: &DiscreteSet) -> RealSubset {
    RealSubset {
        pieces: set.points().iter().map(|&x| Piece::point(x)).collect(),
    }
}

/// Evaluates the hypotheses and conclusion of "q-connected domain and
/// (q, r)-continuous f give an r-connected image" on the samples.
pub fn image_connectedness_check(f: &SampledFunction, params: FuzzyParams) -> ImageConnectedness {
    let domain_q_connected = point_set(f.domain()).is_r_connected(params.q());
    let f_qr_continuous = is_qr_continuous(f, params);
    let image_r_connected = point_set(&f.image()).is_r_connected(params.r());
    ImageConnectedness {
        domain_q_connected,
        f_qr_continuous,
        image_r_connected,
        consistent: !(domain_q_connected && f_qr_continuous && !image_r_connected),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn subset(pieces: &[(f64, f64)]) -> RealSubset {
        RealSubset::new(pieces.iter().copied()).unwrap()
    }

    #[test]
    fn construction_merges() {
        let s = subset(&[(2.0, 3.0), (0.0, 1.0), (1.0, 1.5), (2.5, 2.7)]);
        assert_eq!(s.pieces(), &[Piece { lo: 0.0, hi: 1.5 }, Piece { lo: 2.0, hi: 3.0 }]);
        assert_eq!(RealSubset::new(Vec::new()).unwrap_err(), Error::EmptySet);
        assert!(matches!(
            RealSubset::new([(1.0, 0.0)]),
            Err(Error::InvalidInterval { .. })
        ));
    }

    #[test]
    fn distances() {
        assert_eq!(dist_to_set(0.5, &subset(&[(0.0, 1.0)])), 0.0);
        assert_eq!(dist_to_set(2.0, &subset(&[(0.0, 1.0)])), 1.0);
        assert_eq!(dist_to_set(0.0, &subset(&[(1.0, 1.0), (2.0, 3.0)])), 1.0);
        assert!(subset(&[(0.0, 1.0)]).contains(1.0));
    }

    #[test]
    fn connectedness_examples() {
        assert!(is_r_connected(&RealSubset::from_points(&[0.0, 0.7]).unwrap(), 1.0));
        assert!(!is_r_connected(&RealSubset::from_points(&[0.0, 1.1]).unwrap(), 1.0));
        assert!(!is_r_connected(&RealSubset::from_points(&[1.0, 4.0]).unwrap(), 1.0));
        assert!(is_r_connected(&subset(&[(0.0, 1.0), (1.7, 3.0)]), 1.0));
        assert!(!is_r_connected(&subset(&[(0.0, 1.0), (2.6, 3.0)]), 1.0));
        for r in [0.0, 1e-9, 5.0] {
            assert!(is_r_connected(&subset(&[(-2.0, 7.0)]), r));
        }
    }

    #[test]
    fn components() {
        let s = RealSubset::from_points(&[0.0, 0.5, 2.0, 2.4, 5.0]).unwrap();
        let sizes = |d: &ComponentDecomposition| {
            d.components
                .iter()
                .map(|c| c.pieces().iter().map(|p| p.lo).collect::<Vec<_>>())
                .collect::<Vec<_>>()
        };
        assert_eq!(
            sizes(&r_components(&s, 1.0)),
            vec![vec![0.0, 0.5], vec![2.0, 2.4], vec![5.0]]
        );
        assert_eq!(
            sizes(&r_components(&s, 1.5)),
            vec![vec![0.0, 0.5, 2.0, 2.4], vec![5.0]]
        );
        assert_eq!(r_components(&subset(&[(0.0, 4.0)]), 0.0).components.len(), 1);

        let (a, b) = s.disconnecting_split(1.0).unwrap();
        assert_eq!(a.pieces().len(), 2);
        for p in a.pieces() {
            assert!(b.dist(p.lo) > 1.0 && b.dist(p.hi) > 1.0);
        }
        assert!(s.disconnecting_split(3.0).is_none());
    }

    #[test]
    fn image_check() {
        let grid = DiscreteSet::uniform_grid(0.5, -1, 12).unwrap();
        let p = FuzzyParams::new(0.5, 0.2).unwrap();
        let stair = SampledFunction::new(
            grid.clone(),
            (0..grid.len()).map(|k| 0.2 * (k / 2) as f64).collect(),
        )
        .unwrap();
        let rep = image_connectedness_check(&stair, FuzzyParams::new(0.5, 0.2 + 1e-12).unwrap());
        assert!(rep.domain_q_connected && rep.f_qr_continuous && rep.image_r_connected);
        assert!(rep.consistent);

        let flat = SampledFunction::sample(grid.clone(), |_| 3.0).unwrap();
        let rep = image_connectedness_check(&flat, FuzzyParams::new(0.5, 0.0).unwrap());
        assert!(rep.image_r_connected && rep.consistent);

        let jump = SampledFunction::sample(grid, |x| if x < 2.0 { 0.0 } else { 10.0 }).unwrap();
        let rep = image_connectedness_check(&jump, p);
        assert!(rep.domain_q_connected);
        assert!(!rep.f_qr_continuous);
        assert!(!rep.image_r_connected);
        assert!(rep.consistent);
    }
}
