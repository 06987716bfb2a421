//! Pointwise numeric operations on bivector pencils: recursion-operator
//! samples, minimal-polynomial certification, finite-difference Nijenhuis
//! tensors and degeneracy ranks.

use num_complex::Complex64;

use crate::numeric::{self, CMat};

use super::{BipoissonError, PolyBivector};

/// Tolerances used by the pointwise diagnostics.
pub const RANK_REL_TOL: f64 = 1e-8;
pub const LOCUS_TOL: f64 = 1e-6;
const SYMPLECTIC_COND_TOL: f64 = 1e-10;

/// Recursion-operator matrix at a chart point, together with the point.
#[derive(Clone, Debug)]
pub struct RecursionOperatorSample {
    pub point: Vec<Complex64>,
    pub matrix: CMat,
}

impl RecursionOperatorSample {
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let coeffs = numeric::charpoly(&self.matrix);
        numeric::poly_roots(&coeffs)
    }

    /// Every eigenvalue of a pencil recursion operator has even algebraic
    /// multiplicity; verify up to a clustering tolerance.
    pub fn has_even_multiplicities(&self, cluster_tol: f64) -> bool {
        let eig = self.eigenvalues();
        let scale = eig.iter().map(|z| z.norm()).fold(1.0, f64::max);
        numeric::cluster_roots(&eig, cluster_tol * scale)
            .iter()
            .all(|(_, m)| m % 2 == 0)
    }
}

/// `R = sharp(Q) o sharp(P)^{-1}` evaluated at a point; errors when `P` is
/// not symplectic there.
pub fn recursion_operator_at(
    p: &PolyBivector,
    q: &PolyBivector,
    point: &[Complex64],
) -> Result<RecursionOperatorSample, BipoissonError> {
    p.same_chart(q)?;
    let pm = p.eval(point)?;
    let qm = q.eval(point)?;
    let scale = numeric::max_abs(&pm).max(1.0);
    let det = numeric::det(&pm);
    if det.norm() < SYMPLECTIC_COND_TOL * scale.powi(pm.nrows() as i32) {
        return Err(BipoissonError::NotSymplecticHere);
    }
    let p_inv = pm
        .clone()
        .try_inverse()
        .ok_or(BipoissonError::NotSymplecticHere)?;
    Ok(RecursionOperatorSample { point: point.to_vec(), matrix: qm * p_inv })
}

/// True iff the monic polynomial `mu` (descending complex coefficients)
/// annihilates `R` within `tol` while no proper monic divisor does.
pub fn minimal_polynomial_check(
    r: &RecursionOperatorSample,
    mu: &[Complex64],
    tol: f64,
) -> bool {
    let scale = numeric::op_norm(&r.matrix).max(1.0);
    if eval_matrix_poly(mu, &r.matrix) > tol * scale {
        return false;
    }
    // cluster the roots of mu and enumerate proper divisors
    let roots = numeric::poly_roots(mu);
    let root_scale = roots.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let clusters = numeric::cluster_roots(&roots, 1e-6 * root_scale);
    let mults: Vec<usize> = clusters.iter().map(|(_, m)| *m).collect();
    let total: usize = mults.iter().sum();
    let mut counters = vec![0usize; clusters.len()];
    loop {
        // advance the multi-index
        let mut idx = 0;
        loop {
            if idx == counters.len() {
                return true; // enumeration finished, no proper divisor annihilates
            }
            counters[idx] += 1;
            if counters[idx] <= mults[idx] {
                break;
            }
            counters[idx] = 0;
            idx += 1;
        }
        let deg: usize = counters.iter().sum();
        if deg == total {
            continue; // full polynomial, not proper
        }
        let mut div = vec![Complex64::new(1.0, 0.0)];
        for (ci, (root, _)) in counters.iter().zip(clusters.iter()) {
            for _ in 0..*ci {
                div = poly_mul_linear(&div, *root);
            }
        }
        if eval_matrix_poly(&div, &r.matrix) <= tol * scale {
            return false;
        }
    }
}

fn poly_mul_linear(coeffs: &[Complex64], root: Complex64) -> Vec<Complex64> {
    // multiply descending-coefficient polynomial by (x - root)
    let mut out = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
    for (i, &c) in coeffs.iter().enumerate() {
        out[i] += c;
        out[i + 1] -= c * root;
    }
    out
}

fn eval_matrix_poly(coeffs: &[Complex64], m: &CMat) -> f64 {
    let n = m.nrows();
    let mut acc = CMat::zeros(n, n);
    for &co in coeffs {
        acc = acc * m + CMat::identity(n, n) * co;
    }
    numeric::op_norm(&acc)
}

/// Nijenhuis tensor of the recursion-operator field at a point, evaluated on
/// coordinate frame vectors with central finite differences of step `step`.
#[derive(Clone, Debug)]
pub struct NijenhuisSample {
    /// comps[d][a][b] = N^d(e_a, e_b)
    pub comps: Vec<Vec<Vec<Complex64>>>,
    pub max_abs: f64,
}

pub fn nijenhuis_tensor(
    p: &PolyBivector,
    q: &PolyBivector,
    point: &[Complex64],
    step: f64,
) -> Result<NijenhuisSample, BipoissonError> {
    p.same_chart(q)?;
    let n = p.chart().dim();
    let r0 = recursion_operator_at(p, q, point)?.matrix;
    // dR[c] = dR / dx_c by central differences along the real axis of each
    // complex coordinate (entries are holomorphic)
    let mut dr = Vec::with_capacity(n);
    for cdir in 0..n {
        let mut plus = point.to_vec();
        plus[cdir] += Complex64::new(step, 0.0);
        let mut minus = point.to_vec();
        minus[cdir] -= Complex64::new(step, 0.0);
        let rp = recursion_operator_at(p, q, &plus)?.matrix;
        let rm = recursion_operator_at(p, q, &minus)?.matrix;
        dr.push((rp - rm) / Complex64::new(2.0 * step, 0.0));
    }
    let mut comps = vec![vec![vec![Complex64::new(0.0, 0.0); n]; n]; n];
    let mut max_abs = 0.0f64;
    for a in 0..n {
        for b in 0..n {
            for d in 0..n {
                let mut acc = Complex64::new(0.0, 0.0);
                for cidx in 0..n {
                    acc += r0[(cidx, a)] * dr[cidx][(d, b)] - r0[(cidx, b)] * dr[cidx][(d, a)];
                    acc += r0[(d, cidx)] * (dr[b][(cidx, a)] - dr[a][(cidx, b)]);
                }
                comps[d][a][b] = acc;
                max_abs = max_abs.max(acc.norm());
            }
        }
    }
    Ok(NijenhuisSample { comps, max_abs })
}

/// Rank of `Q - lambda0 P` at a point on the degeneracy locus.
pub fn degeneracy_rank(
    p: &PolyBivector,
    q: &PolyBivector,
    lambda0: Complex64,
    point: &[Complex64],
) -> Result<usize, BipoissonError> {
    p.same_chart(q)?;
    let pm = p.eval(point)?;
    let qm = q.eval(point)?;
    let pencil = &qm - &pm * lambda0;
    // on-locus test: mu(lambda0) = Pf(lambda0 P - Q)/Pf(P) must vanish
    let pf_p = numeric::pfaffian(&pm);
    let pf_pencil = numeric::pfaffian(&(&pm * lambda0 - &qm));
    let scale = pf_p.norm().max(1e-300) * (1.0 + lambda0.norm()).powi((pm.nrows() / 2) as i32);
    let mu_val = pf_pencil.norm() / scale;
    if mu_val > LOCUS_TOL {
        return Err(BipoissonError::PointNotOnLocus { lambda: lambda0, value: mu_val });
    }
    Ok(numeric::rank(&pencil, RANK_REL_TOL))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charts::{chart_bivectors, SurfaceModel};
    use crate::numeric::cr;

    fn remark_pair(n: usize) -> (PolyBivector, PolyBivector) {
        chart_bivectors(n, SurfaceModel::PlaneZU).unwrap()
    }

    fn root_point(zs: &[f64], us: &[f64]) -> Vec<Complex64> {
        let mut pt = Vec::new();
        for (z, u) in zs.iter().zip(us.iter()) {
            pt.push(cr(*z));
            pt.push(cr(*u));
        }
        pt
    }

    #[test]
    fn recursion_operator_is_multiplication_by_root() {
        let (p1, p2) = remark_pair(1);
        let r = recursion_operator_at(&p1, &p2, &root_point(&[5.0], &[2.0])).unwrap();
        let expect = CMat::identity(2, 2) * cr(5.0);
        assert!(numeric::max_abs(&(&r.matrix - &expect)) < 1e-12);
    }

    #[test]
    fn recursion_operator_q_equals_p_is_identity() {
        let (p1, _) = remark_pair(2);
        let pt = root_point(&[0.3, 1.7], &[1.0, -2.0]);
        let r = recursion_operator_at(&p1, &p1, &pt).unwrap();
        assert!(numeric::max_abs(&(&r.matrix - &CMat::identity(4, 4))) < 1e-12);
    }

    #[test]
    fn recursion_operator_diagonal_in_root_basis() {
        let (p1, p2) = remark_pair(2);
        let pt = root_point(&[0.0, 1.0], &[0.4, -0.9]);
        let r = recursion_operator_at(&p1, &p2, &pt).unwrap();
        let mut expect = CMat::zeros(4, 4);
        expect[(2, 2)] = cr(1.0);
        expect[(3, 3)] = cr(1.0);
        assert!(numeric::max_abs(&(&r.matrix - &expect)) < 1e-12);
        assert!(r.has_even_multiplicities(1e-6));
    }

    #[test]
    fn degenerate_p_rejected() {
        let (p1, p2) = remark_pair(1);
        // P2 = z dz^du degenerates at z = 0
        let res = recursion_operator_at(&p2, &p1, &root_point(&[0.0], &[1.0]));
        assert!(matches!(res, Err(BipoissonError::NotSymplecticHere)));
    }

    #[test]
    fn minimal_polynomial_examples() {
        let m5 = CMat::identity(2, 2) * cr(5.0);
        let r = RecursionOperatorSample { point: vec![], matrix: m5 };
        // mu = x - 5
        assert!(minimal_polynomial_check(&r, &[cr(1.0), cr(-5.0)], 1e-8));

        let mut d = CMat::zeros(4, 4);
        d[(2, 2)] = cr(1.0);
        d[(3, 3)] = cr(1.0);
        let r = RecursionOperatorSample { point: vec![], matrix: d };
        // mu = x(x-1) is minimal
        assert!(minimal_polynomial_check(&r, &[cr(1.0), cr(-1.0), cr(0.0)], 1e-8));
        // x^2(x-1) annihilates but is not minimal
        assert!(!minimal_polynomial_check(
            &r,
            &[cr(1.0), cr(-1.0), cr(0.0), cr(0.0)],
            1e-8
        ));
        // x alone does not annihilate
        assert!(!minimal_polynomial_check(&r, &[cr(1.0), cr(0.0)], 1e-8));
    }

    #[test]
    fn nijenhuis_vanishes_for_remark_pair() {
        let (p1, p2) = remark_pair(2);
        let pt = root_point(&[0.31, 1.25], &[0.7, -0.4]);
        let n1 = nijenhuis_tensor(&p1, &p2, &pt, 1e-3).unwrap();
        assert!(n1.max_abs < 1e-6, "residual {}", n1.max_abs);
        // identity pencil: R = Id exactly, N = 0 to rounding
        let n_id = nijenhuis_tensor(&p1, &p1, &pt, 1e-3).unwrap();
        assert!(n_id.max_abs < 1e-12);
    }

    #[test]
    fn nijenhuis_fd_second_order() {
        // rho = z^2 pencil member against P1: a genuine bi-Poisson pair with
        // nonconstant R; the FD residual must drop by >= 3 when halving
        let (p1, p2) = remark_pair(2);
        let rho = [
            crate::exact::GaussRational::zero(),
            crate::exact::GaussRational::zero(),
            crate::exact::GaussRational::one(),
        ];
        let q = crate::bipoisson::magri_rho(&p1, &p2, &rho).unwrap();
        let pt = root_point(&[0.9, -0.6], &[0.2, 1.1]);
        let coarse = nijenhuis_tensor(&p1, &q, &pt, 2e-2).unwrap().max_abs;
        let fine = nijenhuis_tensor(&p1, &q, &pt, 1e-2).unwrap().max_abs;
        // N vanishes in exact arithmetic; the FD residual is pure truncation
        if coarse > 1e-10 {
            assert!(coarse / fine.max(1e-300) >= 3.0, "coarse {coarse} fine {fine}");
        }
        assert!(nijenhuis_tensor(&p1, &q, &pt, 1e-3).unwrap().max_abs < 1e-6);
    }

    #[test]
    fn degeneracy_rank_examples() {
        let (p1, p2) = remark_pair(2);
        // lambda0 = z1 at a point with distinct roots -> rank 2n-2 = 2
        let pt = root_point(&[0.8, -1.4], &[2.0, 0.5]);
        let rank = degeneracy_rank(&p1, &p2, cr(0.8), &pt).unwrap();
        assert_eq!(rank, 2);

        // n = 1: rank 0
        let (q1, q2) = remark_pair(1);
        let pt1 = root_point(&[1.3], &[0.2]);
        assert_eq!(degeneracy_rank(&q1, &q2, cr(1.3), &pt1).unwrap(), 0);

        // off-locus point rejected
        assert!(matches!(
            degeneracy_rank(&p1, &p2, cr(5.0), &pt),
            Err(BipoissonError::PointNotOnLocus { .. })
        ));
    }
}
