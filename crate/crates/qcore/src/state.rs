use crate::error::{QcoreError, Result};
use crate::scalar::{c_zero, Cx, Scalar};

/// Normalized complex amplitude vector over a finite Hilbert space.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVectorG<S: Scalar> {
    amps: Vec<Cx<S>>,
}

impl<S: Scalar> StateVectorG<S> {
    /// Wrap amplitudes that are already normalized (within 1e-12 for f64).
    pub fn new(amps: Vec<Cx<S>>) -> Result<Self> {
        let n2: S = amps.iter().map(|a| a.norm_sqr()).sum();
        let dev = (n2.sqrt() - S::one()).abs();
        if dev > Self::norm_tol() {
            return Err(QcoreError::NotNormalized {
                deviation: dev.as_f64(),
            });
        }
        Ok(Self { amps })
    }

    /// Normalize arbitrary nonzero amplitudes.
    pub fn from_unnormalized(amps: Vec<Cx<S>>) -> Result<Self> {
        let n2: S = amps.iter().map(|a| a.norm_sqr()).sum();
        let norm = n2.sqrt();
        if norm < S::cst(1e-300) {
            return Err(QcoreError::NotNormalized { deviation: 1.0 });
        }
        let inv = S::one() / norm;
        Ok(Self {
            amps: amps.into_iter().map(|a| a * inv).collect(),
        })
    }

    /// Computational basis state |k> in a `dim`-dimensional space.
    pub fn basis(dim: usize, k: usize) -> Self {
        assert!(k < dim, "basis index out of range");
        let mut amps = vec![c_zero(); dim];
        amps[k] = Cx::new(S::one(), S::zero());
        Self { amps }
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amps(&self) -> &[Cx<S>] {
        &self.amps
    }

    pub fn amp(&self, k: usize) -> Cx<S> {
        self.amps[k]
    }

    pub fn norm(&self) -> S {
        let n2: S = self.amps.iter().map(|a| a.norm_sqr()).sum();
        n2.sqrt()
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> Result<Cx<S>> {
        if self.dim() != other.dim() {
            return Err(QcoreError::DimMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .fold(c_zero::<S>(), |acc, (a, b)| acc + a.conj() * b))
    }

    /// Renormalize in place; guards against slow drift in long propagations.
    pub fn renormalize(&mut self) {
        let n = self.norm();
        let inv = S::one() / n;
        for a in &mut self.amps {
            *a = *a * inv;
        }
    }

    fn norm_tol() -> S {
        let eps4 = S::epsilon() * S::cst(4.0);
        let t = S::cst(1e-12);
        if t > eps4 {
            t
        } else {
            eps4
        }
    }
}

/// |<a|b>|^2 — symmetric, global-phase invariant, in [0, 1].
pub fn fidelity_state<S: Scalar>(a: &StateVectorG<S>, b: &StateVectorG<S>) -> Result<S> {
    let z = a.inner(b)?;
    let f = z.norm_sqr();
    Ok(if f > S::one() { S::one() } else { f })
}
