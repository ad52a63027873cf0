use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

const GRID_POINTS: usize = 1000;

/// Positive, non-decreasing weighting function used by the generalized
/// proportional redistribution rules.
#[derive(Clone)]
pub struct ShapingFunction {
    name: String,
    func: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ShapingFunction {
    /// Wraps `func`, spot-checking positivity and monotonicity on a grid
    /// over (0, 1].
    pub fn new<F>(name: impl Into<String>, func: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        let mut previous = f64::NEG_INFINITY;
        for k in 1..=GRID_POINTS {
            let x = k as f64 / GRID_POINTS as f64;
            let y = func(x);
            if !(y.is_finite() && y > 0.0) {
                return Err(Error::NonIncreasingShaper(format!("{name}({x}) = {y}")));
            }
            if y < previous - 1e-12 * previous.abs() {
                return Err(Error::NonIncreasingShaper(format!("{name} decreases near {x}")));
            }
            previous = y;
        }
        Ok(ShapingFunction {
            name,
            func: Arc::new(func),
        })
    }

    pub fn identity() -> Self {
        Self::new("x", |x| x).expect("identity is increasing")
    }

    /// x ↦ x^exponent, exponent ≥ 0.
    pub fn power(exponent: f64) -> Result<Self> {
        if !(exponent >= 0.0 && exponent.is_finite()) {
            return Err(Error::NonIncreasingShaper(format!("x^{exponent}")));
        }
        Self::new(format!("x^{exponent}"), move |x: f64| x.powf(exponent))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn eval(&self, x: f64) -> f64 {
        (self.func)(x)
    }
}

impl fmt::Debug for ShapingFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("ShapingFunction").field(&self.name).finish()
    }
}
