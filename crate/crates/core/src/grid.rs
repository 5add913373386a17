//! Sampled curves and grid construction.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Axis labels, units and free-form provenance of a curve.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CurveMeta {
    pub x_label: String,
    pub x_unit: String,
    pub y_label: String,
    pub y_unit: String,
    #[serde(default)]
    pub attributes: BTreeMap<String, serde_json::Value>,
}

impl CurveMeta {
    pub fn new(x_label: &str, x_unit: &str, y_label: &str, y_unit: &str) -> Self {
        Self {
            x_label: x_label.into(),
            x_unit: x_unit.into(),
            y_label: y_label.into(),
            y_unit: y_unit.into(),
            attributes: BTreeMap::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        let v = serde_json::to_value(value).unwrap_or(serde_json::Value::Null);
        self.attributes.insert(key.into(), v);
        self
    }
}

/// `(x, y)` table with strictly increasing abscissa.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveGrid<T> {
    pub abscissa: Vec<T>,
    pub ordinate: Vec<T>,
    pub meta: CurveMeta,
}

impl<T: Real> CurveGrid<T> {
    pub fn new(abscissa: Vec<T>, ordinate: Vec<T>, meta: CurveMeta) -> Result<Self> {
        let g = Self {
            abscissa,
            ordinate,
            meta,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.abscissa.len() != self.ordinate.len() {
            return Err(Error::Domain(format!(
                "curve has {} abscissae but {} ordinates",
                self.abscissa.len(),
                self.ordinate.len()
            )));
        }
        check_increasing(&self.abscissa)
    }

    pub fn len(&self) -> usize {
        self.abscissa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.abscissa.is_empty()
    }

    pub fn points(&self) -> impl Iterator<Item = (T, T)> + '_ {
        self.abscissa.iter().copied().zip(self.ordinate.iter().copied())
    }
}

pub(crate) fn check_increasing<T: Real>(xs: &[T]) -> Result<()> {
    if xs.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("grid values must be finite".into()));
    }
    if xs.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::Domain("grid must be strictly increasing".into()));
    }
    Ok(())
}

/// `n ≥ 2` evenly spaced points from `a` to `b` inclusive.
pub fn linspace<T: Real>(a: T, b: T, n: usize) -> Result<Vec<T>> {
    if n < 2 || !(a < b) {
        return Err(Error::Domain(format!(
            "linspace needs a < b and n >= 2, got [{a}, {b}], n = {n}"
        )));
    }
    let step = (b - a) / T::from_usize_lossy(n - 1);
    let mut v: Vec<T> = (0..n).map(|i| a + step * T::from_usize_lossy(i)).collect();
    v[n - 1] = b;
    Ok(v)
}

/// `n ≥ 2` logarithmically spaced points from `a > 0` to `b` inclusive.
pub fn logspace<T: Real>(a: T, b: T, n: usize) -> Result<Vec<T>> {
    if !(a > T::zero()) {
        return Err(Error::Domain(format!("logspace needs a > 0, got {a}")));
    }
    let mut v: Vec<T> = linspace(a.ln(), b.ln(), n)?
        .into_iter()
        .map(T::exp)
        .collect();
    v[0] = a;
    v[n - 1] = b;
    Ok(v)
}
