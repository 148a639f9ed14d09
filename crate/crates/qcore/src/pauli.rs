use std::collections::BTreeMap;

use crate::error::{QcoreError, Result};
use crate::op::{kron, DenseOperatorG};
use crate::paulis;
use crate::scalar::{c_i, c_one, c_zero, Cx, Scalar};

/// Coefficients with modulus below this are pruned from sums.
pub const PRUNE_TOL: f64 = 1e-14;

/// Default cap on dense conversion (2^12 = 4096).
pub const DENSE_SITE_CAP: usize = 12;

/// Single-site Pauli letter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PauliOp {
    I,
    X,
    Y,
    Z,
}

impl PauliOp {
    /// Single-site product a*b = i^k * c. Returns (k mod 4, c).
    fn mul(self, other: PauliOp) -> (u8, PauliOp) {
        use PauliOp::*;
        match (self, other) {
            (I, p) | (p, I) => (0, p),
            (X, X) | (Y, Y) | (Z, Z) => (0, I),
            (X, Y) => (1, Z),
            (Y, X) => (3, Z),
            (Y, Z) => (1, X),
            (Z, Y) => (3, X),
            (Z, X) => (1, Y),
            (X, Z) => (3, Y),
        }
    }

    pub fn dense<S: Scalar>(self) -> DenseOperatorG<S> {
        match self {
            PauliOp::I => DenseOperatorG::identity(2),
            PauliOp::X => paulis::sigma_x(),
            PauliOp::Y => paulis::sigma_y(),
            PauliOp::Z => paulis::sigma_z(),
        }
    }
}

fn i_power<S: Scalar>(k: u8) -> Cx<S> {
    match k % 4 {
        0 => c_one(),
        1 => c_i(),
        2 => -c_one::<S>(),
        _ => -c_i::<S>(),
    }
}

/// One multi-site Pauli string with a complex prefactor.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliStringG<S: Scalar> {
    pub coeff: Cx<S>,
    pub letters: Vec<PauliOp>,
}

impl<S: Scalar> PauliStringG<S> {
    pub fn new(coeff: Cx<S>, letters: Vec<PauliOp>) -> Self {
        Self { coeff, letters }
    }

    pub fn identity(n_sites: usize) -> Self {
        Self {
            coeff: c_one(),
            letters: vec![PauliOp::I; n_sites],
        }
    }

    pub fn n_sites(&self) -> usize {
        self.letters.len()
    }
}

/// Exact symbolic product of two strings via per-site multiplication.
pub fn pauli_mul<S: Scalar>(a: &PauliStringG<S>, b: &PauliStringG<S>) -> Result<PauliStringG<S>> {
    if a.n_sites() != b.n_sites() {
        return Err(QcoreError::SiteCountMismatch {
            a: a.n_sites(),
            b: b.n_sites(),
        });
    }
    let mut phase = 0u8;
    let mut letters = Vec::with_capacity(a.n_sites());
    for (&x, &y) in a.letters.iter().zip(&b.letters) {
        let (k, op) = x.mul(y);
        phase = (phase + k) % 4;
        letters.push(op);
    }
    Ok(PauliStringG {
        coeff: a.coeff * b.coeff * i_power::<S>(phase),
        letters,
    })
}

/// Linear combination of Pauli strings, keyed by letters.
///
/// Terms with |coeff| < `PRUNE_TOL` are dropped; the map is ordered so that
/// iteration (and hence all reductions) is deterministic.
#[derive(Debug, Clone, PartialEq)]
pub struct PauliSumG<S: Scalar> {
    n_sites: usize,
    terms: BTreeMap<Vec<PauliOp>, Cx<S>>,
}

impl<S: Scalar> PauliSumG<S> {
    pub fn zero(n_sites: usize) -> Self {
        Self {
            n_sites,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_string(s: PauliStringG<S>) -> Self {
        let mut out = Self::zero(s.n_sites());
        out.add_string(&s);
        out
    }

    /// Build a single term from (site, letter) pairs; unlisted sites are I.
    pub fn term(n_sites: usize, coeff: Cx<S>, ops: &[(usize, PauliOp)]) -> Self {
        let mut letters = vec![PauliOp::I; n_sites];
        for &(site, op) in ops {
            assert!(site < n_sites, "site index out of range");
            letters[site] = op;
        }
        Self::from_string(PauliStringG::new(coeff, letters))
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<PauliOp>, &Cx<S>)> {
        self.terms.iter()
    }

    pub fn coeff_of(&self, letters: &[PauliOp]) -> Cx<S> {
        self.terms.get(letters).copied().unwrap_or_else(c_zero)
    }

    pub fn add_string(&mut self, s: &PauliStringG<S>) {
        assert_eq!(s.n_sites(), self.n_sites, "site-count mismatch");
        let entry = self
            .terms
            .entry(s.letters.clone())
            .or_insert_with(c_zero);
        *entry = *entry + s.coeff;
        if entry.norm() < S::cst(PRUNE_TOL) {
            self.terms.remove(&s.letters);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.n_sites != other.n_sites {
            return Err(QcoreError::SiteCountMismatch {
                a: self.n_sites,
                b: other.n_sites,
            });
        }
        let mut out = self.clone();
        for (letters, &coeff) in &other.terms {
            let entry = out.terms.entry(letters.clone()).or_insert_with(c_zero);
            *entry = *entry + coeff;
            if entry.norm() < S::cst(PRUNE_TOL) {
                out.terms.remove(letters);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(-c_one::<S>()))
    }

    pub fn scale(&self, s: Cx<S>) -> Self {
        let mut out = Self::zero(self.n_sites);
        if s.norm() == S::zero() {
            return out;
        }
        for (letters, &coeff) in &self.terms {
            let c = coeff * s;
            if c.norm() >= S::cst(PRUNE_TOL) {
                out.terms.insert(letters.clone(), c);
            }
        }
        out
    }

    pub fn scale_real(&self, s: S) -> Self {
        self.scale(Cx::new(s, S::zero()))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.n_sites != other.n_sites {
            return Err(QcoreError::SiteCountMismatch {
                a: self.n_sites,
                b: other.n_sites,
            });
        }
        let mut out = Self::zero(self.n_sites);
        for (la, &ca) in &self.terms {
            let sa = PauliStringG::new(ca, la.clone());
            for (lb, &cb) in &other.terms {
                let sb = PauliStringG::new(cb, lb.clone());
                let prod = pauli_mul(&sa, &sb)?;
                out.add_string(&prod);
            }
        }
        Ok(out)
    }

    /// Hermitian adjoint: conjugate every coefficient (strings are self-adjoint).
    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.n_sites);
        for (letters, &coeff) in &self.terms {
            out.terms.insert(letters.clone(), coeff.conj());
        }
        out
    }

    /// Hermitian iff every coefficient is real within 1e-12.
    pub fn is_hermitian(&self) -> bool {
        self.terms
            .values()
            .all(|c| c.im.abs() <= S::cst(1e-12))
    }

    /// Largest coefficient modulus (0 for the zero sum).
    pub fn max_coeff(&self) -> S {
        self.terms
            .values()
            .map(|c| c.norm())
            .fold(S::zero(), |a, b| if b > a { b } else { a })
    }
}

/// [a, b] = ab - ba, pruned.
pub fn pauli_commutator<S: Scalar>(a: &PauliSumG<S>, b: &PauliSumG<S>) -> Result<PauliSumG<S>> {
    let ab = a.mul(b)?;
    let ba = b.mul(a)?;
    ab.sub(&ba)
}

/// Tr(a^dag b) = 2^N * sum over matching strings of conj(c_a) * c_b.
///
/// Distinct Pauli strings are trace orthogonal, so only shared keys
/// contribute.
pub fn pauli_hs_inner<S: Scalar>(a: &PauliSumG<S>, b: &PauliSumG<S>) -> Result<Cx<S>> {
    if a.n_sites() != b.n_sites() {
        return Err(QcoreError::SiteCountMismatch {
            a: a.n_sites(),
            b: b.n_sites(),
        });
    }
    let dim = S::cst(2.0).powi(a.n_sites() as i32);
    let mut acc = c_zero::<S>();
    for (letters, &ca) in &a.terms {
        if let Some(&cb) = b.terms.get(letters) {
            acc = acc + ca.conj() * cb;
        }
    }
    Ok(acc * Cx::new(dim, S::zero()))
}

/// Dense 2^N x 2^N matrix by Kronecker products; site 1 is the leftmost
/// factor. Capped at `DENSE_SITE_CAP` sites.
pub fn pauli_to_dense<S: Scalar>(s: &PauliSumG<S>) -> Result<DenseOperatorG<S>> {
    pauli_to_dense_capped(s, DENSE_SITE_CAP)
}

pub fn pauli_to_dense_capped<S: Scalar>(
    s: &PauliSumG<S>,
    cap: usize,
) -> Result<DenseOperatorG<S>> {
    let n = s.n_sites();
    if n > cap {
        return Err(QcoreError::DenseCapExceeded { n_sites: n, cap });
    }
    let dim = 1usize << n;
    let mut out = DenseOperatorG::zeros(dim);
    for (letters, &coeff) in &s.terms {
        let mut m = letters[0].dense::<S>();
        for &op in &letters[1..] {
            m = kron(&m, &op.dense::<S>());
        }
        out = out.add(&m.scale(coeff))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use PauliOp::*;

    type Sum = PauliSumG<f64>;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    #[test]
    fn single_site_commutator_xy() {
        // [X, Y] = 2i Z
        let x = Sum::term(1, one(), &[(0, X)]);
        let y = Sum::term(1, one(), &[(0, Y)]);
        let c = pauli_commutator(&x, &y).unwrap();
        assert_eq!(c.n_terms(), 1);
        let z = c.coeff_of(&[Z]);
        assert_abs_diff_eq!(z.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(z.im, 2.0, epsilon = 1e-15);
    }

    #[test]
    fn disjoint_sites_commute() {
        let x1 = Sum::term(2, one(), &[(0, X)]);
        let x2 = Sum::term(2, one(), &[(1, X)]);
        let c = pauli_commutator(&x1, &x2).unwrap();
        assert_eq!(c.n_terms(), 0);
    }

    #[test]
    fn zz_with_x_commutator() {
        // [Z1 Z2, X1] = 2i Y1 Z2 (value frozen from the brute-force 4x4
        // matrix commutator below)
        let zz = Sum::term(2, one(), &[(0, Z), (1, Z)]);
        let x1 = Sum::term(2, one(), &[(0, X)]);
        let c = pauli_commutator(&zz, &x1).unwrap();
        let got = c.coeff_of(&[Y, Z]);
        assert_abs_diff_eq!(got.re, 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(got.im, 2.0, epsilon = 1e-15);

        // dense oracle
        let dense_sym = pauli_to_dense(&c).unwrap();
        let a = pauli_to_dense(&zz).unwrap();
        let b = pauli_to_dense(&x1).unwrap();
        let dense_direct = a.matmul(&b).unwrap().sub(&b.matmul(&a).unwrap()).unwrap();
        assert!(dense_sym.sub(&dense_direct).unwrap().max_abs_entry() < 1e-13);
    }

    #[test]
    fn hs_inner_values() {
        let x = Sum::term(1, one(), &[(0, X)]);
        let y = Sum::term(1, one(), &[(0, Y)]);
        assert_abs_diff_eq!(pauli_hs_inner(&x, &x).unwrap().re, 2.0, epsilon = 1e-15);
        assert_abs_diff_eq!(pauli_hs_inner(&x, &y).unwrap().norm(), 0.0, epsilon = 1e-15);

        let zz = Sum::term(3, one(), &[(0, Z), (1, Z)]);
        assert_abs_diff_eq!(pauli_hs_inner(&zz, &zz).unwrap().re, 8.0, epsilon = 1e-15);
    }

    #[test]
    fn dense_conversion_ordering() {
        // Z on site 1 of a 1-site system
        let z = Sum::term(1, one(), &[(0, Z)]);
        let d = pauli_to_dense(&z).unwrap();
        assert_abs_diff_eq!(d.get(0, 0).re, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(d.get(1, 1).re, -1.0, epsilon = 1e-15);

        // X on site 1 of two sites = sigma_x (x) 1
        let x1 = Sum::term(2, one(), &[(0, X)]);
        let d = pauli_to_dense(&x1).unwrap();
        let want = crate::op::kron(
            &crate::paulis::sigma_x::<f64>(),
            &DenseOperatorG::identity(2),
        );
        assert!(d.sub(&want).unwrap().max_abs_entry() < 1e-15);

        // linearity: 0.5 X1 Y2
        let xy = Sum::term(2, Complex64::new(0.5, 0.0), &[(0, X), (1, Y)]);
        let d = pauli_to_dense(&xy).unwrap();
        let want = crate::op::kron(
            &crate::paulis::sigma_x::<f64>(),
            &crate::paulis::sigma_y::<f64>(),
        )
        .scale(Complex64::new(0.5, 0.0));
        assert!(d.sub(&want).unwrap().max_abs_entry() < 1e-15);
    }

    #[test]
    fn dense_cap_enforced() {
        let s = Sum::term(13, one(), &[(0, X)]);
        assert!(matches!(
            pauli_to_dense(&s),
            Err(QcoreError::DenseCapExceeded { .. })
        ));
    }

    #[test]
    fn pruning_removes_cancelled_terms() {
        let x = Sum::term(1, one(), &[(0, X)]);
        let diff = x.sub(&x).unwrap();
        assert_eq!(diff.n_terms(), 0);
    }

    #[test]
    fn hermiticity_check() {
        let h = Sum::term(2, one(), &[(0, X), (1, Y)]);
        assert!(h.is_hermitian());
        let ah = h.scale(Complex64::new(0.0, 1.0));
        assert!(!ah.is_hermitian());
    }

    #[test]
    fn site_count_mismatch_rejected() {
        let a = Sum::term(2, one(), &[(0, X)]);
        let b = Sum::term(3, one(), &[(0, X)]);
        assert!(pauli_commutator(&a, &b).is_err());
        assert!(pauli_hs_inner(&a, &b).is_err());
    }
}
