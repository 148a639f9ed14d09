use crate::error::{QcoreError, Result};
use crate::scalar::{c_real, c_zero, Cx, Scalar};
use crate::state::StateVectorG;

/// Dense complex square matrix over a finite Hilbert space.
///
/// `hermitian_hint` records that the matrix was validated as Hermitian at
/// construction; spectral routines require it.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperatorG<S: Scalar> {
    dim: usize,
    entries: Vec<Cx<S>>, // row-major, dim x dim
    hermitian_hint: bool,
}

impl<S: Scalar> DenseOperatorG<S> {
    pub fn zeros(dim: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        Self {
            dim,
            entries: vec![c_zero(); dim * dim],
            hermitian_hint: false,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = c_real(S::one());
        }
        m.hermitian_hint = true;
        m
    }

    /// General (not necessarily Hermitian) matrix from row-major entries.
    pub fn from_entries(dim: usize, entries: Vec<Cx<S>>) -> Result<Self> {
        if entries.len() != dim * dim {
            return Err(QcoreError::DimMismatch {
                expected: dim * dim,
                got: entries.len(),
            });
        }
        Ok(Self {
            dim,
            entries,
            hermitian_hint: false,
        })
    }

    /// Hermitian matrix; validates max |H - H^dag| < 1e-12 and sets the hint.
    pub fn hermitian(dim: usize, entries: Vec<Cx<S>>) -> Result<Self> {
        let mut m = Self::from_entries(dim, entries)?;
        let asym = m.asymmetry();
        if asym > S::cst(1e-12) {
            return Err(QcoreError::NotHermitian {
                asymmetry: asym.as_f64(),
            });
        }
        m.hermitian_hint = true;
        Ok(m)
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Cx<S>) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m.entries[i * dim + j] = f(i, j);
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_hermitian_hint(&self) -> bool {
        self.hermitian_hint
    }

    /// Re-check Hermiticity and set the hint (used after arithmetic).
    pub fn into_hermitian(mut self) -> Result<Self> {
        let asym = self.asymmetry();
        if asym > S::cst(1e-12) {
            return Err(QcoreError::NotHermitian {
                asymmetry: asym.as_f64(),
            });
        }
        self.hermitian_hint = true;
        Ok(self)
    }

    /// Max entrywise |H - H^dag|.
    pub fn asymmetry(&self) -> S {
        let mut worst = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let d = self.get(i, j) - self.get(j, i).conj();
                let m = d.norm();
                if m > worst {
                    worst = m;
                }
            }
        }
        worst
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Cx<S> {
        self.entries[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Cx<S>) {
        self.entries[i * self.dim + j] = v;
        self.hermitian_hint = false;
    }

    pub fn entries(&self) -> &[Cx<S>] {
        &self.entries
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zeros(self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                out.entries[j * self.dim + i] = self.get(i, j).conj();
            }
        }
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    pub fn matmul(&self, other: &Self) -> Result<Self> {
        if self.dim != other.dim {
            return Err(QcoreError::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let n = self.dim;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik.norm_sqr() == S::zero() {
                    continue;
                }
                let row_b = &other.entries[k * n..(k + 1) * n];
                let row_o = &mut out.entries[i * n..(i + 1) * n];
                for j in 0..n {
                    row_o[j] = row_o[j] + aik * row_b[j];
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_entries(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_entries(other, |a, b| a - b)
    }

    pub fn scale(&self, s: Cx<S>) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = *e * s;
        }
        out.hermitian_hint = false;
        out
    }

    pub fn scale_real(&self, s: S) -> Self {
        let mut out = self.clone();
        for e in &mut out.entries {
            *e = *e * s;
        }
        // real scaling preserves Hermiticity
        out.hermitian_hint = self.hermitian_hint;
        out
    }

    fn zip_entries(&self, other: &Self, f: impl Fn(Cx<S>, Cx<S>) -> Cx<S>) -> Result<Self> {
        if self.dim != other.dim {
            return Err(QcoreError::DimMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        let mut out = self.clone();
        for (e, o) in out.entries.iter_mut().zip(&other.entries) {
            *e = f(*e, *o);
        }
        out.hermitian_hint = self.hermitian_hint && other.hermitian_hint;
        Ok(out)
    }

    pub fn apply(&self, psi: &StateVectorG<S>) -> Result<StateVectorG<S>> {
        if self.dim != psi.dim() {
            return Err(QcoreError::DimMismatch {
                expected: self.dim,
                got: psi.dim(),
            });
        }
        let n = self.dim;
        let mut out = vec![c_zero(); n];
        for i in 0..n {
            let mut acc = c_zero::<S>();
            let row = &self.entries[i * n..(i + 1) * n];
            for j in 0..n {
                acc = acc + row[j] * psi.amp(j);
            }
            out[i] = acc;
        }
        // Unitaries preserve the norm to rounding; renormalize to keep the
        // invariant over long products.
        StateVectorG::from_unnormalized(out)
    }

    /// Apply without renormalizing (for non-unitary maps, e.g. projectors).
    pub fn apply_raw(&self, psi: &StateVectorG<S>) -> Result<Vec<Cx<S>>> {
        if self.dim != psi.dim() {
            return Err(QcoreError::DimMismatch {
                expected: self.dim,
                got: psi.dim(),
            });
        }
        let n = self.dim;
        let mut out = vec![c_zero(); n];
        for i in 0..n {
            let mut acc = c_zero::<S>();
            let row = &self.entries[i * n..(i + 1) * n];
            for j in 0..n {
                acc = acc + row[j] * psi.amp(j);
            }
            out[i] = acc;
        }
        Ok(out)
    }

    pub fn trace(&self) -> Cx<S> {
        let mut t = c_zero::<S>();
        for i in 0..self.dim {
            t = t + self.get(i, i);
        }
        t
    }

    /// <psi| self |psi>.
    pub fn expectation(&self, psi: &StateVectorG<S>) -> Result<Cx<S>> {
        let hpsi = self.apply_raw(psi)?;
        Ok(psi
            .amps()
            .iter()
            .zip(&hpsi)
            .fold(c_zero::<S>(), |acc, (a, b)| acc + a.conj() * *b))
    }

    pub fn max_abs_entry(&self) -> S {
        self.entries
            .iter()
            .map(|e| e.norm())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }

    /// Max entrywise |U^dag U - 1|; zero for a unitary.
    pub fn unitarity_deviation(&self) -> S {
        let prod = self.adjoint().matmul(self).expect("same dim");
        let mut worst = S::zero();
        for i in 0..self.dim {
            for j in 0..self.dim {
                let want = if i == j { S::one() } else { S::zero() };
                let d = (prod.get(i, j) - c_real(want)).norm();
                if d > worst {
                    worst = d;
                }
            }
        }
        worst
    }
}

/// Kronecker product; the left factor is the most significant index block.
pub fn kron<S: Scalar>(a: &DenseOperatorG<S>, b: &DenseOperatorG<S>) -> DenseOperatorG<S> {
    let (na, nb) = (a.dim(), b.dim());
    let n = na * nb;
    let mut out = DenseOperatorG::zeros(n);
    for ia in 0..na {
        for ja in 0..na {
            let aij = a.get(ia, ja);
            if aij.norm_sqr() == S::zero() {
                continue;
            }
            for ib in 0..nb {
                for jb in 0..nb {
                    let v = aij * b.get(ib, jb);
                    out.entries[(ia * nb + ib) * n + (ja * nb + jb)] = v;
                }
            }
        }
    }
    if a.hermitian_hint && b.hermitian_hint {
        out.hermitian_hint = true;
    }
    out
}

/// (1/d^2) |Tr(V^dag U)|^2 — global-phase-invariant unitary overlap.
pub fn fidelity_unitary<S: Scalar>(u: &DenseOperatorG<S>, v: &DenseOperatorG<S>) -> Result<S> {
    if u.dim() != v.dim() {
        return Err(QcoreError::DimMismatch {
            expected: u.dim(),
            got: v.dim(),
        });
    }
    let d = S::from_usize(u.dim()).unwrap();
    let tr = v.adjoint().matmul(u)?.trace();
    let f = tr.norm_sqr() / (d * d);
    Ok(if f > S::one() { S::one() } else { f })
}

/// Project `psi` with projector `P` and renormalize.
///
/// Returns the post-measurement state and the branch probability <psi|P|psi>.
pub fn project_and_renormalize<S: Scalar>(
    psi: &StateVectorG<S>,
    p: &DenseOperatorG<S>,
) -> Result<(StateVectorG<S>, S)> {
    let p2 = p.matmul(p)?;
    let dev = p2.sub(p)?.max_abs_entry();
    if dev > S::cst(1e-10) {
        return Err(QcoreError::NotProjector {
            deviation: dev.as_f64(),
        });
    }
    let prob = p.expectation(psi)?.re;
    if prob < S::cst(1e-14) {
        return Err(QcoreError::ImpossibleBranch {
            prob: prob.as_f64(),
        });
    }
    let raw = p.apply_raw(psi)?;
    let state = StateVectorG::from_unnormalized(raw)?;
    Ok((state, prob))
}
