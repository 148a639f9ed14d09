use crate::error::{QcoreError, Result};
use crate::op::DenseOperatorG;
use crate::scalar::{c_real, c_zero, Cx, Scalar};

/// Eigendecomposition of a Hermitian operator.
///
/// Eigenvalues ascending; `vectors` holds the matching eigenvectors as
/// columns, so H V = V diag(E).
#[derive(Debug, Clone)]
pub struct HermEig<S: Scalar> {
    pub values: Vec<S>,
    pub vectors: DenseOperatorG<S>,
}

const JACOBI_MAX_DIM: usize = 64;
const MAX_SWEEPS: usize = 60;

/// Diagonalize a Hermitian operator.
///
/// Cyclic Jacobi rotations up to dim 64, Householder tridiagonalization
/// plus implicit-shift QL above. Convergence threshold 1e-12 * ||H||_F
/// (floored at a few machine epsilons for narrower scalar types).
pub fn herm_eig<S: Scalar>(h: &DenseOperatorG<S>) -> Result<HermEig<S>> {
    if !h.is_hermitian_hint() {
        let asym = h.asymmetry();
        if asym > S::cst(1e-12) {
            return Err(QcoreError::NotHermitian {
                asymmetry: asym.as_f64(),
            });
        }
    }
    let n = h.dim();
    let (mut values, mut vectors) = if n <= JACOBI_MAX_DIM {
        jacobi(h)?
    } else {
        tridiag_ql(h)?
    };
    sort_ascending(&mut values, &mut vectors);
    Ok(HermEig { values, vectors })
}

/// U = exp(-i H t) via the spectral decomposition of H; unitary.
///
/// Dimension 2 uses the closed form
/// exp(-i(a0 + a.sigma)t) = e^{-i a0 t}(cos(|a|t) - i sin(|a|t) a_hat.sigma).
pub fn expm_herm<S: Scalar>(h: &DenseOperatorG<S>, t: S) -> Result<DenseOperatorG<S>> {
    if h.dim() == 2 {
        if !h.is_hermitian_hint() {
            let asym = h.asymmetry();
            if asym > S::cst(1e-12) {
                return Err(QcoreError::NotHermitian {
                    asymmetry: asym.as_f64(),
                });
            }
        }
        return Ok(expm_herm_2x2(h, t));
    }
    let eig = herm_eig(h)?;
    Ok(expm_from_eig(&eig, t))
}

fn expm_herm_2x2<S: Scalar>(h: &DenseOperatorG<S>, t: S) -> DenseOperatorG<S> {
    let half = S::cst(0.5);
    let a0 = (h.get(0, 0).re + h.get(1, 1).re) * half;
    let ax = h.get(0, 1).re;
    let ay = h.get(1, 0).im;
    let az = (h.get(0, 0).re - h.get(1, 1).re) * half;
    let a = (ax * ax + ay * ay + az * az).sqrt();
    let phase = Cx::from_polar(S::one(), -a0 * t);
    let (cosat, sinc) = if a * t.abs() < S::cst(1e-300) {
        (S::one(), t)
    } else {
        ((a * t).cos(), (a * t).sin() / a)
    };
    // cos(at) 1 - i sin(at)/a * (ax X + ay Y + az Z)
    let mi = Cx::new(S::zero(), -sinc);
    let m00 = (Cx::new(cosat, S::zero()) + mi * c_real(az)) * phase;
    let m11 = (Cx::new(cosat, S::zero()) - mi * c_real(az)) * phase;
    let m01 = mi * Cx::new(ax, -ay) * phase;
    let m10 = mi * Cx::new(ax, ay) * phase;
    DenseOperatorG::from_entries(2, vec![m00, m01, m10, m11]).expect("2x2")
}

/// exp(-i H t) from a precomputed eigendecomposition.
pub fn expm_from_eig<S: Scalar>(eig: &HermEig<S>, t: S) -> DenseOperatorG<S> {
    let n = eig.values.len();
    let v = &eig.vectors;
    // U = V diag(e^{-i E t}) V^dag
    let phases: Vec<Cx<S>> = eig
        .values
        .iter()
        .map(|&e| Cx::from_polar(S::one(), -e * t))
        .collect();
    let mut out = DenseOperatorG::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = c_zero::<S>();
            for k in 0..n {
                acc = acc + v.get(i, k) * phases[k] * v.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    out
}

/// Apply f to the spectrum: V diag(f(E)) V^dag.
pub fn herm_function<S: Scalar>(eig: &HermEig<S>, f: impl Fn(S) -> S) -> DenseOperatorG<S> {
    let n = eig.values.len();
    let v = &eig.vectors;
    let fe: Vec<S> = eig.values.iter().map(|&e| f(e)).collect();
    let mut out = DenseOperatorG::zeros(n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = c_zero::<S>();
            for k in 0..n {
                acc = acc + v.get(i, k) * c_real(fe[k]) * v.get(j, k).conj();
            }
            out.set(i, j, acc);
        }
    }
    out
}

fn convergence_tol<S: Scalar>(norm: S) -> S {
    let spec = S::cst(1e-12) * norm;
    let floor = S::epsilon() * S::cst(8.0) * norm;
    if spec > floor {
        spec
    } else {
        floor
    }
}

fn frob_norm<S: Scalar>(a: &[Cx<S>]) -> S {
    a.iter()
        .map(|e| e.norm_sqr())
        .fold(S::zero(), |acc, x| acc + x)
        .sqrt()
}

fn off_norm<S: Scalar>(a: &[Cx<S>], n: usize) -> S {
    let mut s = S::zero();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s = s + a[i * n + j].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn jacobi<S: Scalar>(h: &DenseOperatorG<S>) -> Result<(Vec<S>, DenseOperatorG<S>)> {
    let n = h.dim();
    let mut a: Vec<Cx<S>> = h.entries().to_vec();
    let mut v: Vec<Cx<S>> = DenseOperatorG::<S>::identity(n).entries().to_vec();
    let norm = frob_norm(&a);
    if norm == S::zero() {
        return Ok((vec![S::zero(); n], DenseOperatorG::identity(n)));
    }
    let tol = convergence_tol(norm);

    let mut sweeps = 0;
    while off_norm(&a, n) > tol {
        sweeps += 1;
        if sweeps > MAX_SWEEPS {
            return Err(QcoreError::EigNoConvergence {
                sweeps,
                off: off_norm(&a, n).as_f64(),
            });
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                let m = apq.norm();
                if m <= S::epsilon() * norm {
                    continue;
                }
                // Phase that makes the (p,q) entry real, then a real
                // Jacobi rotation on the (p,q) block.
                let u = apq.conj() / c_real(m); // unit modulus
                let app = a[p * n + p].re;
                let aqq = a[q * n + q].re;
                let tau = (aqq - app) / (S::cst(2.0) * m);
                let t = {
                    let root = (S::one() + tau * tau).sqrt();
                    if tau >= S::zero() {
                        S::one() / (tau + root)
                    } else {
                        -S::one() / (-tau + root)
                    }
                };
                let c = S::one() / (S::one() + t * t).sqrt();
                let s = t * c;

                // R has R[pp]=c, R[pq]=s, R[qp]=-s*u, R[qq]=c*u.
                // Columns: M <- M R
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = aip * c_real(c) - aiq * u * c_real(s);
                    a[i * n + q] = aip * c_real(s) + aiq * u * c_real(c);
                }
                // Rows: M <- R^dag M
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = apj * c_real(c) - aqj * u.conj() * c_real(s);
                    a[q * n + j] = apj * c_real(s) + aqj * u.conj() * c_real(c);
                }
                // Clean the eliminated pair and enforce real diagonal.
                a[p * n + q] = c_zero();
                a[q * n + p] = c_zero();
                a[p * n + p] = c_real(a[p * n + p].re);
                a[q * n + q] = c_real(a[q * n + q].re);

                for i in 0..n {
                    let vip = v[i * n + p];
                    let viq = v[i * n + q];
                    v[i * n + p] = vip * c_real(c) - viq * u * c_real(s);
                    v[i * n + q] = vip * c_real(s) + viq * u * c_real(c);
                }
            }
        }
    }

    let values: Vec<S> = (0..n).map(|i| a[i * n + i].re).collect();
    let vectors = DenseOperatorG::from_entries(n, v).expect("square");
    Ok((values, vectors))
}

/// Householder reduction to real symmetric tridiagonal form, then
/// implicit-shift QL with eigenvector accumulation.
fn tridiag_ql<S: Scalar>(h: &DenseOperatorG<S>) -> Result<(Vec<S>, DenseOperatorG<S>)> {
    let n = h.dim();
    let mut a: Vec<Cx<S>> = h.entries().to_vec();
    // Accumulated transform Q: columns will carry eigenvectors at the end.
    let mut q: Vec<Cx<S>> = DenseOperatorG::<S>::identity(n).entries().to_vec();

    // Householder tridiagonalization.
    for k in 0..n.saturating_sub(2) {
        // x = a[k+1.., k]
        let mut xnorm2 = S::zero();
        for i in (k + 1)..n {
            xnorm2 = xnorm2 + a[i * n + k].norm_sqr();
        }
        let xnorm = xnorm2.sqrt();
        if xnorm <= S::epsilon() * frob_norm(&a) {
            continue;
        }
        let x0 = a[(k + 1) * n + k];
        let alpha = if x0.norm() > S::zero() {
            (x0 / c_real(x0.norm())) * c_real(xnorm)
        } else {
            c_real(xnorm)
        };
        // v = x + alpha e1 (supported on rows k+1..n)
        let mut vvec = vec![c_zero(); n];
        for i in (k + 1)..n {
            vvec[i] = a[i * n + k];
        }
        vvec[k + 1] = vvec[k + 1] + alpha;
        let vn2: S = vvec.iter().map(|z| z.norm_sqr()).sum();
        if vn2 <= S::zero() {
            continue;
        }
        let beta = S::cst(2.0) / vn2;

        // p = beta * A v
        let mut p = vec![c_zero(); n];
        for i in 0..n {
            let mut acc = c_zero::<S>();
            for j in (k + 1)..n {
                acc = acc + a[i * n + j] * vvec[j];
            }
            p[i] = acc * c_real(beta);
        }
        // gamma = beta/2 * v^dag p (real)
        let vp = vvec
            .iter()
            .zip(&p)
            .fold(c_zero::<S>(), |acc, (vi, pi)| acc + vi.conj() * *pi);
        let gamma = vp * c_real(beta / S::cst(2.0));
        // u = p - gamma v; A <- A - v u^dag - u v^dag
        let u: Vec<Cx<S>> = p
            .iter()
            .zip(&vvec)
            .map(|(pi, vi)| *pi - gamma * *vi)
            .collect();
        for i in 0..n {
            for j in 0..n {
                let upd = vvec[i] * u[j].conj() + u[i] * vvec[j].conj();
                a[i * n + j] = a[i * n + j] - upd;
            }
        }
        // Q <- Q (I - beta v v^dag)
        for i in 0..n {
            let mut acc = c_zero::<S>();
            for j in (k + 1)..n {
                acc = acc + q[i * n + j] * vvec[j];
            }
            let acc = acc * c_real(beta);
            for j in (k + 1)..n {
                q[i * n + j] = q[i * n + j] - acc * vvec[j].conj();
            }
        }
    }

    // Phase similarity to make the sub/super-diagonal real non-negative.
    let mut d = vec![S::zero(); n];
    let mut e = vec![S::zero(); n]; // e[i] couples i and i+1 (e[n-1] unused)
    let mut phase = vec![c_real(S::one()); n];
    for i in 0..n {
        d[i] = a[i * n + i].re;
    }
    for i in 0..n - 1 {
        let sub = a[(i + 1) * n + i];
        let m = sub.norm();
        // phase[i+1]: conj(phase[i+1]) * sub * phase[i] = |sub|
        phase[i + 1] = if m > S::zero() {
            (sub / c_real(m)) * phase[i]
        } else {
            phase[i]
        };
        e[i] = m;
    }
    // Q <- Q * diag(phase)
    for i in 0..n {
        for j in 0..n {
            q[i * n + j] = q[i * n + j] * phase[j];
        }
    }

    // Implicit-shift QL on (d, e), rotations accumulated into Q.
    ql_implicit(&mut d, &mut e, &mut q, n)?;

    let vectors = DenseOperatorG::from_entries(n, q).expect("square");
    Ok((d, vectors))
}

fn ql_implicit<S: Scalar>(d: &mut [S], e: &mut [S], q: &mut [Cx<S>], n: usize) -> Result<()> {
    let two = S::cst(2.0);
    for l in 0..n {
        let mut iter = 0usize;
        loop {
            // Find a negligible off-diagonal element.
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= S::epsilon() * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 50 {
                return Err(QcoreError::EigNoConvergence {
                    sweeps: iter,
                    off: e[l].as_f64(),
                });
            }
            // Shift from the 2x2 at l.
            let mut g = (d[l + 1] - d[l]) / (two * e[l]);
            let mut r = (g * g + S::one()).sqrt();
            let sign_r = if g >= S::zero() { r } else { -r };
            g = d[m] - d[l] + e[l] / (g + sign_r);
            let mut s = S::one();
            let mut c = S::one();
            let mut p = S::zero();
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = (f * f + g * g).sqrt();
                e[i + 1] = r;
                if r == S::zero() {
                    d[i + 1] = d[i + 1] - p;
                    e[m] = S::zero();
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + two * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                // Rotate eigenvector columns i and i+1.
                for row in 0..n {
                    let qi = q[row * n + i];
                    let qi1 = q[row * n + i + 1];
                    q[row * n + i + 1] = qi * c_real(s) + qi1 * c_real(c);
                    q[row * n + i] = qi * c_real(c) - qi1 * c_real(s);
                }
            }
            if underflow {
                continue;
            }
            d[l] = d[l] - p;
            e[l] = g;
            e[m] = S::zero();
        }
    }
    Ok(())
}

fn sort_ascending<S: Scalar>(values: &mut [S], vectors: &mut DenseOperatorG<S>) {
    let n = values.len();
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| values[i].partial_cmp(&values[j]).unwrap());
    let old_vals = values.to_vec();
    let old = vectors.clone();
    for (new_col, &src) in idx.iter().enumerate() {
        values[new_col] = old_vals[src];
        for row in 0..n {
            vectors.set(row, new_col, old.get(row, src));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paulis::{sigma_x, sigma_z};
    use approx::assert_abs_diff_eq;
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_hermitian(n: usize, seed: u64) -> DenseOperatorG<f64> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut m = DenseOperatorG::zeros(n);
        for i in 0..n {
            m.set(i, i, Complex64::new(rng.gen_range(-1.0..1.0), 0.0));
            for j in (i + 1)..n {
                let v = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                m.set(i, j, v);
                m.set(j, i, v.conj());
            }
        }
        m.into_hermitian().unwrap()
    }

    fn residual(h: &DenseOperatorG<f64>, eig: &HermEig<f64>) -> f64 {
        // max |(H V - V diag(E))_ij|
        let n = h.dim();
        let hv = h.matmul(&eig.vectors).unwrap();
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in 0..n {
                let want = eig.vectors.get(i, j) * eig.values[j];
                let d = (hv.get(i, j) - want).norm();
                worst = worst.max(d);
            }
        }
        worst
    }

    #[test]
    fn pauli_z_spectrum() {
        let eig = herm_eig(&sigma_z::<f64>()).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[1], 1.0, epsilon = 1e-14);
    }

    #[test]
    fn two_level_spectrum() {
        // Delta sigma_x + nu sigma_z with Delta=1, nu=2 -> +-sqrt(5)
        let h = sigma_x::<f64>()
            .add(&sigma_z::<f64>().scale_real(2.0))
            .unwrap();
        let eig = herm_eig(&h).unwrap();
        assert_abs_diff_eq!(eig.values[0], -5.0f64.sqrt(), epsilon = 1e-13);
        assert_abs_diff_eq!(eig.values[1], 5.0f64.sqrt(), epsilon = 1e-13);
    }

    #[test]
    fn random_8x8_residual() {
        let h = random_hermitian(8, 42);
        let eig = herm_eig(&h).unwrap();
        let emax = eig.values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        assert!(residual(&h, &eig) < 1e-10 * emax.max(1.0));
        // columns orthonormal
        assert!(eig.vectors.unitarity_deviation() < 1e-12);
    }

    #[test]
    fn large_dim_uses_ql_and_matches_jacobi() {
        let h = random_hermitian(80, 7);
        let eig = herm_eig(&h).unwrap();
        let emax = eig.values.iter().fold(0.0f64, |a, &b| a.max(b.abs()));
        assert!(residual(&h, &eig) < 1e-10 * emax.max(1.0));
        assert!(eig.vectors.unitarity_deviation() < 1e-11);
        // eigenvalues match the Jacobi path run on the same matrix
        let (mut jv, mut jvecs) = jacobi(&h).unwrap();
        sort_ascending(&mut jv, &mut jvecs);
        for (a, b) in eig.values.iter().zip(&jv) {
            assert_abs_diff_eq!(a, b, epsilon = 1e-10);
        }
    }

    #[test]
    fn non_hermitian_rejected_with_asymmetry() {
        let mut m = DenseOperatorG::<f64>::zeros(2);
        m.set(0, 1, Complex64::new(1.0, 0.0));
        let err = herm_eig(&m).unwrap_err();
        match err {
            QcoreError::NotHermitian { asymmetry } => assert!(asymmetry > 0.9),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn expm_identity_at_zero_time() {
        let h = random_hermitian(4, 3);
        let u = expm_herm(&h, 0.0).unwrap();
        let id = DenseOperatorG::identity(4);
        assert!(u.sub(&id).unwrap().max_abs_entry() < 1e-13);
    }

    #[test]
    fn expm_sigma_x_half_pi() {
        // exp(-i sigma_x pi/2) = -i sigma_x
        let u = expm_herm(&sigma_x::<f64>(), std::f64::consts::FRAC_PI_2).unwrap();
        let want = sigma_x::<f64>().scale(Complex64::new(0.0, -1.0));
        assert!(u.sub(&want).unwrap().max_abs_entry() < 1e-13);
    }

    #[test]
    fn expm_sigma_z_diagonal() {
        let t = 0.7;
        let u = expm_herm(&sigma_z::<f64>(), t).unwrap();
        assert_abs_diff_eq!(u.get(0, 0).re, t.cos(), epsilon = 1e-13);
        assert_abs_diff_eq!(u.get(0, 0).im, -t.sin(), epsilon = 1e-13);
        assert_abs_diff_eq!(u.get(1, 1).re, t.cos(), epsilon = 1e-13);
        assert_abs_diff_eq!(u.get(1, 1).im, t.sin(), epsilon = 1e-13);
        assert!(u.get(0, 1).norm() < 1e-14);
    }

    #[test]
    fn expm_unitarity() {
        for seed in 0..5 {
            let h = random_hermitian(6, seed);
            let u = expm_herm(&h, 1.3).unwrap();
            assert!(u.unitarity_deviation() < 1e-10);
        }
    }
}
