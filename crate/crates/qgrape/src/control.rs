use crate::error::{GrapeError, Result};

/// Piecewise-constant control fields: K fields times M steps of length dt.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseControl {
    n_fields: usize,
    n_steps: usize,
    dt: f64,
    /// values[k * n_steps + j] = field k at step j.
    values: Vec<f64>,
    /// Per-field inclusive box bounds.
    bounds: Vec<(f64, f64)>,
}

impl PiecewiseControl {
    pub fn new(
        n_fields: usize,
        n_steps: usize,
        dt: f64,
        values: Vec<f64>,
        bounds: Vec<(f64, f64)>,
    ) -> Result<Self> {
        if values.len() != n_fields * n_steps {
            return Err(GrapeError::InvalidControls(format!(
                "expected {} values, got {}",
                n_fields * n_steps,
                values.len()
            )));
        }
        if bounds.len() != n_fields {
            return Err(GrapeError::InvalidControls(format!(
                "expected {} bounds, got {}",
                n_fields,
                bounds.len()
            )));
        }
        if dt <= 0.0 {
            return Err(GrapeError::InvalidControls("dt must be positive".into()));
        }
        let ctl = Self {
            n_fields,
            n_steps,
            dt,
            values,
            bounds,
        };
        for k in 0..n_fields {
            let (lo, hi) = ctl.bounds[k];
            if lo > hi {
                return Err(GrapeError::InvalidControls(format!(
                    "field {k}: lower bound {lo} above upper bound {hi}"
                )));
            }
            for j in 0..n_steps {
                let v = ctl.value(k, j);
                if v < lo - 1e-12 || v > hi + 1e-12 {
                    return Err(GrapeError::InvalidControls(format!(
                        "field {k} step {j}: value {v} outside [{lo}, {hi}]"
                    )));
                }
            }
        }
        Ok(ctl)
    }

    pub fn zeros(n_fields: usize, n_steps: usize, dt: f64, bounds: Vec<(f64, f64)>) -> Self {
        Self::new(
            n_fields,
            n_steps,
            dt,
            vec![0.0; n_fields * n_steps],
            bounds,
        )
        .expect("zero controls satisfy any bounds containing zero")
    }

    pub fn n_fields(&self) -> usize {
        self.n_fields
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn duration(&self) -> f64 {
        self.dt * self.n_steps as f64
    }

    pub fn bounds(&self) -> &[(f64, f64)] {
        &self.bounds
    }

    #[inline]
    pub fn value(&self, field: usize, step: usize) -> f64 {
        self.values[field * self.n_steps + step]
    }

    /// All field values at one step, in field order.
    pub fn step_values(&self, step: usize) -> Vec<f64> {
        (0..self.n_fields).map(|k| self.value(k, step)).collect()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// Replace the flat value vector, clamping into bounds.
    pub fn with_values_clamped(&self, values: Vec<f64>) -> Self {
        let mut out = self.clone();
        out.values = values;
        for k in 0..out.n_fields {
            let (lo, hi) = out.bounds[k];
            for j in 0..out.n_steps {
                let v = &mut out.values[k * out.n_steps + j];
                *v = v.clamp(lo, hi);
            }
        }
        out
    }

    /// Re-grid to a new duration with the same number of steps (dt rescales,
    /// values copy over unchanged).
    pub fn rescaled_duration(&self, new_duration: f64) -> Self {
        let mut out = self.clone();
        out.dt = new_duration / self.n_steps as f64;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_and_bounds_validation() {
        assert!(PiecewiseControl::new(2, 3, 0.1, vec![0.0; 5], vec![(-1.0, 1.0); 2]).is_err());
        assert!(PiecewiseControl::new(1, 2, 0.1, vec![0.0, 3.0], vec![(-1.0, 1.0)]).is_err());
        let c = PiecewiseControl::new(
            2,
            3,
            0.5,
            vec![0.1, 0.2, 0.3, -0.1, -0.2, -0.3],
            vec![(-1.0, 1.0); 2],
        )
        .unwrap();
        assert_eq!(c.value(1, 2), -0.3);
        assert_eq!(c.duration(), 1.5);
        assert_eq!(c.step_values(1), vec![0.2, -0.2]);
    }

    #[test]
    fn clamping_respects_bounds() {
        let c = PiecewiseControl::zeros(1, 4, 0.2, vec![(-0.5, 0.5)]);
        let c2 = c.with_values_clamped(vec![2.0, -2.0, 0.1, 0.0]);
        assert_eq!(c2.values(), &[0.5, -0.5, 0.1, 0.0]);
    }
}
