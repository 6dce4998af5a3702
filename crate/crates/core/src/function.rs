//! Functions known only on the points of a [`DiscreteSet`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::set::{sort_distinct, DiscreteSet};

#[derive(Debug, Clone, PartialEq)]
pub struct SampledFunction {
    domain: DiscreteSet,
    values: Vec<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MonotoneClass {
    StrictlyIncreasing,
    StrictlyDecreasing,
    Neither,
}

impl MonotoneClass {
    pub fn is_strict(self) -> bool {
        self != MonotoneClass::Neither
    }
}

impl SampledFunction {
    /// Builds a function from `(x, y)` pairs in any order.
    pub fn from_pairs(pairs: &[(f64, f64)], tol: f64) -> Result<Self> {
        let xs: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let order = sort_distinct(&xs, tol).map_err(|e| match e {
            Error::DuplicatePoint {
                first,
                second,
                value_first,
                value_second,
            } => Error::DuplicateAbscissa {
                first,
                second,
                value_first,
                value_second,
            },
            other => other,
        })?;
        if let Some((index, &(_, value))) =
            pairs.iter().enumerate().find(|(_, p)| !p.1.is_finite())
        {
            return Err(Error::NonFinite { index, value });
        }
        let points = order.iter().map(|&i| pairs[i].0).collect();
        let values = order.iter().map(|&i| pairs[i].1).collect();
        Ok(SampledFunction {
            domain: DiscreteSet::from_sorted_unchecked(points),
            values,
        })
    }

    /// Pairs `values[i]` with `domain.points()[i]`.
    pub fn new(domain: DiscreteSet, values: Vec<f64>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::LengthMismatch {
                values: values.len(),
                domain: domain.len(),
            });
        }
        if let Some((index, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { index, value });
        }
        Ok(SampledFunction { domain, values })
    }

    /// Samples `f` at every point of `domain`.
    pub fn sample(domain: DiscreteSet, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = domain.points().iter().map(|&x| f(x)).collect();
        Self::new(domain, values)
    }

    pub fn domain(&self) -> &DiscreteSet {
        &self.domain
    }

    pub fn points(&self) -> &[f64] {
        self.domain.points()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Stored value at a domain point, `None` off the domain.
    pub fn get(&self, x: f64) -> Option<f64> {
        self.domain.index_of(x).map(|i| self.values[i])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.points().iter().copied().zip(self.values.iter().copied())
    }

    /// Restriction to the domain points inside `[lo, hi]`.
    pub fn restrict(&self, lo: f64, hi: f64) -> Option<SampledFunction> {
        let range = self.domain.window(lo, hi);
        if range.is_empty() {
            return None;
        }
        Some(SampledFunction {
            domain: DiscreteSet::from_sorted_unchecked(self.points()[range.clone()].to_vec()),
            values: self.values[range].to_vec(),
        })
    }

    /// Largest `|f(x_{i+1}) - f(x_i)|` over adjacent samples; 0 for a singleton.
    pub fn max_adjacent_jump(&self) -> f64 {
        self.values
            .windows(2)
            .map(|w| (w[1] - w[0]).abs())
            .fold(0.0, f64::max)
    }

    /// The image as a set of distinct values.
    pub fn image(&self) -> DiscreteSet {
        let mut v = self.values.clone();
        v.sort_by(f64::total_cmp);
        v.dedup();
        DiscreteSet::from_sorted_unchecked(v)
    }

    pub fn monotone_class(&self) -> MonotoneClass {
        let v = &self.values;
        if v.windows(2).all(|w| w[0] < w[1]) {
            MonotoneClass::StrictlyIncreasing
        } else if v.windows(2).all(|w| w[0] > w[1]) {
            MonotoneClass::StrictlyDecreasing
        } else {
            MonotoneClass::Neither
        }
    }

    /// Swaps abscissae and values of a strictly monotone function.
    pub fn invert_monotone(&self) -> Result<SampledFunction> {
        let (mut points, mut values) = (self.values.clone(), self.points().to_vec());
        match self.monotone_class() {
            MonotoneClass::StrictlyIncreasing => {}
            MonotoneClass::StrictlyDecreasing => {
                points.reverse();
                values.reverse();
            }
            MonotoneClass::Neither => return Err(Error::NotStrictlyMonotone),
        }
        Ok(SampledFunction {
            domain: DiscreteSet::from_sorted_unchecked(points),
            values,
        })
    }

    pub fn step_extension(&self) -> StepExtension<'_> {
        StepExtension { base: self }
    }
}

/// Piecewise-constant total extension: `g(x) = f(a_k)` for `a_k <= x < a_{k+1}`,
/// clamped to the first value left of the domain.
#[derive(Debug, Clone, Copy)]
pub struct StepExtension<'a> {
    base: &'a SampledFunction,
}

impl StepExtension<'_> {
    pub fn base(&self) -> &SampledFunction {
        self.base
    }

    pub fn eval(&self, x: f64) -> f64 {
        let k = self.base.points().partition_point(|&p| p <= x);
        self.base.values[k.saturating_sub(1)]
    }
}
