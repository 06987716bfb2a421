//! Coordinate models of transverse Hilbert-scheme charts over a symplectic
//! surface: the (q,p) polynomial chart, the root chart, conversions between
//! them, the canonical map, and the induced bivector pair.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::bipoisson::{BipoissonError, Chart, PolyBivector};
use crate::exact::{MultiPoly, PolyMatrix};
use crate::numeric::{self, cr, CMat};

/// Relative root-collision tolerance for chart-boundary detection.
pub const COLLISION_TOL: f64 = 1e-7;

#[derive(Debug, thiserror::Error)]
pub enum ChartError {
    #[error("chart boundary: roots collide (separation {sep:.3e})")]
    ChartBoundary { sep: f64 },
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("q must be monic (leading coefficient {0})")]
    NotMonic(Complex64),
    #[error(transparent)]
    Bipoisson(#[from] BipoissonError),
}

/// Surface model fixed by the symplectic form and the projection:
/// the plane with `omega = dz ^ du`, or the cylinder with
/// `omega = dz ^ dp / p` (fibre coordinate `p` away from 0).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SurfaceModel {
    PlaneZU,
    CylinderZP,
}

/// Point of the (q,p) chart: a monic polynomial `q` of degree n and a
/// polynomial `p` of degree at most n-1. Coefficients are stored descending;
/// `q` includes its leading 1.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TransversePoint {
    pub q: Vec<Complex64>,
    pub p: Vec<Complex64>,
}

impl TransversePoint {
    pub fn new(q: Vec<Complex64>, p: Vec<Complex64>) -> Result<Self, ChartError> {
        if q.is_empty() {
            return Err(ChartError::DegreeMismatch { expected: 1, got: 0 });
        }
        if (q[0] - cr(1.0)).norm() > 1e-12 {
            return Err(ChartError::NotMonic(q[0]));
        }
        let n = q.len() - 1;
        if p.len() > n {
            return Err(ChartError::DegreeMismatch { expected: n, got: p.len() });
        }
        let mut p_padded = vec![cr(0.0); n - p.len()];
        p_padded.extend(p);
        Ok(TransversePoint { q, p: p_padded })
    }

    pub fn degree(&self) -> usize {
        self.q.len() - 1
    }

    pub fn eval_q(&self, z: Complex64) -> Complex64 {
        numeric::eval_poly(&self.q, z)
    }

    pub fn eval_p(&self, z: Complex64) -> Complex64 {
        numeric::eval_poly(&self.p, z)
    }

    /// Canonical map: coefficients of `q` after the leading 1, descending.
    pub fn canonical_map(&self) -> Vec<Complex64> {
        self.q[1..].to_vec()
    }

    /// Coefficient-chart coordinates: q-coefficients descending (after the
    /// leading 1), then p-coefficients descending.
    pub fn coeff_coords(&self) -> Vec<Complex64> {
        let mut v = self.q[1..].to_vec();
        v.extend(self.p.iter().copied());
        v
    }
}

/// Point of the root chart: pairwise-distinct roots with fibre values.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RootChartPoint {
    pub roots: Vec<Complex64>,
    pub values: Vec<Complex64>,
}

impl RootChartPoint {
    pub fn new(roots: Vec<Complex64>, values: Vec<Complex64>) -> Result<Self, ChartError> {
        if roots.len() != values.len() {
            return Err(ChartError::DegreeMismatch { expected: roots.len(), got: values.len() });
        }
        Ok(RootChartPoint { roots, values })
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    fn min_separation(&self) -> f64 {
        let mut sep = f64::INFINITY;
        for i in 0..self.roots.len() {
            for j in (i + 1)..self.roots.len() {
                sep = sep.min((self.roots[i] - self.roots[j]).norm());
            }
        }
        sep
    }

    fn scale(&self) -> f64 {
        self.roots.iter().map(|z| z.norm()).fold(1.0, f64::max)
    }

    /// Root-chart coordinates interleaved as (z1, u1, ..., zn, un).
    pub fn chart_coords(&self) -> Vec<Complex64> {
        let mut v = Vec::with_capacity(2 * self.roots.len());
        for (z, u) in self.roots.iter().zip(self.values.iter()) {
            v.push(*z);
            v.push(*u);
        }
        v
    }
}

/// Expand `q = prod (z - z_i)` and Lagrange-interpolate `p` through
/// `(z_i, u_i)`. Errors at chart boundaries (root collisions).
pub fn roots_to_coeffs(r: &RootChartPoint) -> Result<TransversePoint, ChartError> {
    let n = r.degree();
    if n > 1 {
        let sep = r.min_separation();
        if sep <= COLLISION_TOL * r.scale() {
            return Err(ChartError::ChartBoundary { sep });
        }
    }
    // expand the monic product
    let mut q = vec![cr(1.0)];
    for &z in &r.roots {
        let mut next = vec![cr(0.0); q.len() + 1];
        for (i, &c) in q.iter().enumerate() {
            next[i] += c;
            next[i + 1] -= c * z;
        }
        q = next;
    }
    // Lagrange interpolation of p
    let mut p = vec![cr(0.0); n];
    for i in 0..n {
        // basis polynomial prod_{j != i} (z - z_j) / (z_i - z_j)
        let mut basis = vec![cr(1.0)];
        let mut denom = cr(1.0);
        for j in 0..n {
            if j == i {
                continue;
            }
            let mut next = vec![cr(0.0); basis.len() + 1];
            for (t, &c) in basis.iter().enumerate() {
                next[t] += c;
                next[t + 1] -= c * r.roots[j];
            }
            basis = next;
            denom *= r.roots[i] - r.roots[j];
        }
        let w = r.values[i] / denom;
        let offset = n - basis.len();
        for (t, &c) in basis.iter().enumerate() {
            p[offset + t] += w * c;
        }
    }
    TransversePoint::new(q, p)
}

/// Roots of `q` as companion-matrix eigenvalues, with `u_i = p(z_i)`.
/// Errors when `q` has (near-)multiple roots.
pub fn coeffs_to_roots(t: &TransversePoint) -> Result<RootChartPoint, ChartError> {
    let roots = numeric::poly_roots(&t.q);
    let point = RootChartPoint {
        values: roots.iter().map(|&z| t.eval_p(z)).collect(),
        roots,
    };
    if point.degree() > 1 {
        let sep = point.min_separation();
        if sep <= COLLISION_TOL * point.scale() {
            return Err(ChartError::ChartBoundary { sep });
        }
    }
    Ok(point)
}

/// The bivector pair on the root chart of the chosen surface model:
/// plane: `P1 = sum d/dz_i ^ d/du_i`, `P2 = sum z_i d/dz_i ^ d/du_i`;
/// cylinder: `P1 = sum p_i d/dz_i ^ d/dp_i`, `P2 = sum z_i p_i d/dz_i ^ d/dp_i`.
pub fn chart_bivectors(
    n: usize,
    model: SurfaceModel,
) -> Result<(PolyBivector, PolyBivector), BipoissonError> {
    let fibre = match model {
        SurfaceModel::PlaneZU => "u",
        SurfaceModel::CylinderZP => "p",
    };
    let chart = Chart::interleaved(n, "z", fibre);
    let dim = 2 * n;
    let build = |with_z: bool| -> PolyMatrix {
        PolyMatrix::from_fn(dim, dim, |r, c| {
            if r / 2 != c / 2 || r == c {
                return MultiPoly::from_int(0);
            }
            let i = r / 2 + 1;
            let mut coeff = match model {
                SurfaceModel::PlaneZU => MultiPoly::from_int(1),
                SurfaceModel::CylinderZP => MultiPoly::var(&format!("p{i}")),
            };
            if with_z {
                coeff = coeff.mul(&MultiPoly::var(&format!("z{i}")));
            }
            if r % 2 == 0 {
                coeff
            } else {
                coeff.neg()
            }
        })
    };
    let p1 = PolyBivector::new(chart.clone(), build(false))?;
    let p2 = PolyBivector::new(chart, build(true))?;
    Ok((p1, p2))
}

/// Numeric Jacobian of the chart change (roots, values) -> (q-coeffs,
/// p-coeffs) at a root-chart point, by central differences.
fn chart_change_jacobian(r: &RootChartPoint) -> Result<CMat, ChartError> {
    let n = r.degree();
    let h = 1e-5 * r.scale();
    let mut jac = CMat::zeros(2 * n, 2 * n);
    for col in 0..(2 * n) {
        let perturb = |sign: f64| -> Result<Vec<Complex64>, ChartError> {
            let mut rp = r.clone();
            if col % 2 == 0 {
                rp.roots[col / 2] += cr(sign * h);
            } else {
                rp.values[col / 2] += cr(sign * h);
            }
            Ok(roots_to_coeffs(&rp)?.coeff_coords())
        };
        let plus = perturb(1.0)?;
        let minus = perturb(-1.0)?;
        for row in 0..(2 * n) {
            jac[(row, col)] = (plus[row] - minus[row]) / cr(2.0 * h);
        }
    }
    Ok(jac)
}

/// Push the root-chart bivector pair forward to the coefficient chart at `t`:
/// `P -> J P J^T` with the numeric chart-change Jacobian.
pub fn pushforward_bivectors_qp(
    t: &TransversePoint,
    model: SurfaceModel,
) -> Result<(CMat, CMat), ChartError> {
    let root_pt = coeffs_to_roots(t)?;
    let (p1, p2) = chart_bivectors(t.degree(), model)?;
    let coords = root_pt.chart_coords();
    let m1 = p1.eval(&coords)?;
    let m2 = p2.eval(&coords)?;
    let jac = chart_change_jacobian(&root_pt)?;
    let jt = jac.transpose();
    Ok((&jac * &m1 * &jt, &jac * &m2 * &jt))
}

/// Monic pencil Pfaffian polynomial at a point, from constant antisymmetric
/// matrices: coefficients (descending, starting with 1) of
/// `Pf(lambda P - Q)/Pf(P)`, recovered by interpolation at n+1 nodes.
pub fn pencil_pfaffian_poly(p: &CMat, q: &CMat) -> Vec<Complex64> {
    let n = p.nrows() / 2;
    let pf_p = numeric::pfaffian(p);
    // interpolation nodes: scaled roots of unity, radius away from spectrum
    let scale = 1.0 + numeric::max_abs(q) / numeric::max_abs(p).max(1e-12);
    let nodes: Vec<Complex64> = (0..=n)
        .map(|k| {
            Complex64::from_polar(scale, 2.0 * std::f64::consts::PI * k as f64 / (n + 1) as f64)
        })
        .collect();
    let vals: Vec<Complex64> = nodes
        .iter()
        .map(|&lm| numeric::pfaffian(&(p * lm - q)) / pf_p)
        .collect();
    solve_vandermonde(&nodes, &vals)
}

/// Solve for descending polynomial coefficients through (nodes, values).
pub(crate) fn solve_vandermonde(nodes: &[Complex64], vals: &[Complex64]) -> Vec<Complex64> {
    let m = nodes.len();
    let mut a = CMat::zeros(m, m);
    for (r, &x) in nodes.iter().enumerate() {
        let mut pw = cr(1.0);
        for c in 0..m {
            a[(r, m - 1 - c)] = pw;
            pw *= x;
        }
    }
    let b = nalgebra::DVector::from_column_slice(vals);
    let sol = a.lu().solve(&b).expect("Vandermonde solve");
    sol.iter().copied().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_to_coeffs_example() {
        // roots (1,2), values (3,4) -> q = z^2 - 3z + 2, p = z + 2
        let r = RootChartPoint::new(vec![cr(1.0), cr(2.0)], vec![cr(3.0), cr(4.0)]).unwrap();
        let t = roots_to_coeffs(&r).unwrap();
        for (got, want) in t.q.iter().zip([1.0, -3.0, 2.0]) {
            assert!((got - cr(want)).norm() < 1e-12);
        }
        for (got, want) in t.p.iter().zip([1.0, 2.0]) {
            assert!((got - cr(want)).norm() < 1e-12);
        }
    }

    #[test]
    fn single_root_chart() {
        let r = RootChartPoint::new(vec![cr(0.0)], vec![cr(7.5)]).unwrap();
        let t = roots_to_coeffs(&r).unwrap();
        assert_eq!(t.q.len(), 2);
        assert!((t.q[1]).norm() < 1e-15);
        assert!((t.p[0] - cr(7.5)).norm() < 1e-15);
    }

    #[test]
    fn coeffs_to_roots_examples() {
        // q = z^2 - 1, p = 7 -> roots +-1, both values 7
        let t = TransversePoint::new(vec![cr(1.0), cr(0.0), cr(-1.0)], vec![cr(7.0)]).unwrap();
        let r = coeffs_to_roots(&t).unwrap();
        let mut roots: Vec<f64> = r.roots.iter().map(|z| z.re).collect();
        roots.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((roots[0] + 1.0).abs() < 1e-10 && (roots[1] - 1.0).abs() < 1e-10);
        for v in &r.values {
            assert!((v - cr(7.0)).norm() < 1e-10);
        }

        // inverse of the two-root example
        let t = TransversePoint::new(
            vec![cr(1.0), cr(-3.0), cr(2.0)],
            vec![cr(1.0), cr(2.0)],
        )
        .unwrap();
        let r = coeffs_to_roots(&t).unwrap();
        let mut pairs: Vec<(f64, f64)> = r
            .roots
            .iter()
            .zip(r.values.iter())
            .map(|(z, u)| (z.re, u.re))
            .collect();
        pairs.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        assert!((pairs[0].0 - 1.0).abs() < 1e-10 && (pairs[0].1 - 3.0).abs() < 1e-10);
        assert!((pairs[1].0 - 2.0).abs() < 1e-10 && (pairs[1].1 - 4.0).abs() < 1e-10);

        // double root -> chart boundary
        let t = TransversePoint::new(vec![cr(1.0), cr(-2.0), cr(1.0)], vec![cr(0.0)]).unwrap();
        assert!(matches!(coeffs_to_roots(&t), Err(ChartError::ChartBoundary { .. })));
    }

    #[test]
    fn roundtrip_coeffs_roots_coeffs() {
        let t = TransversePoint::new(
            vec![cr(1.0), Complex64::new(0.3, -0.7), cr(-1.2), Complex64::new(0.0, 0.4)],
            vec![Complex64::new(1.0, 1.0), cr(0.5), cr(-2.0)],
        )
        .unwrap();
        let r = coeffs_to_roots(&t).unwrap();
        let t2 = roots_to_coeffs(&r).unwrap();
        for (a, b) in t.q.iter().zip(t2.q.iter()) {
            assert!((a - b).norm() < 1e-10);
        }
        for (a, b) in t.p.iter().zip(t2.p.iter()) {
            assert!((a - b).norm() < 1e-10);
        }
    }

    #[test]
    fn chart_bivector_formulas() {
        let (p1, p2) = chart_bivectors(1, SurfaceModel::PlaneZU).unwrap();
        assert_eq!(p1.comp().get(0, 1).to_string(), "1");
        assert_eq!(p2.comp().get(0, 1).to_string(), "z1");
        let (c1, c2) = chart_bivectors(1, SurfaceModel::CylinderZP).unwrap();
        assert_eq!(c1.comp().get(0, 1).to_string(), "p1");
        assert_eq!(c2.comp().get(0, 1).to_string(), "p1*z1");

        let (q1, q2) = chart_bivectors(2, SurfaceModel::PlaneZU).unwrap();
        assert_eq!(q1.comp().get(2, 3).to_string(), "1");
        assert_eq!(q2.comp().get(2, 3).to_string(), "z2");
        assert!(q1.comp().get(0, 2).is_zero());
        assert!(q2.comp().get(1, 3).is_zero());
    }

    #[test]
    fn cylinder_pair_is_bi_poisson() {
        let (p1, p2) = chart_bivectors(2, SurfaceModel::CylinderZP).unwrap();
        let v = crate::bipoisson::is_poisson_pair(&p1, &p2).unwrap();
        assert!(v.all());
    }

    #[test]
    fn pushforward_antisymmetric_and_n1_trivial() {
        // n = 1: the chart change is (z,u) -> (-z, u): P1 is unchanged
        let t = TransversePoint::new(vec![cr(1.0), cr(-0.4)], vec![cr(0.9)]).unwrap();
        let (m1, m2) = pushforward_bivectors_qp(&t, SurfaceModel::PlaneZU).unwrap();
        assert!(numeric::is_antisymmetric(&m1, 1e-9));
        assert!(numeric::is_antisymmetric(&m2, 1e-9));
        assert!((m1[(0, 1)] + cr(1.0)).norm() < 1e-7 || (m1[(0, 1)] - cr(1.0)).norm() < 1e-7);
    }

    #[test]
    fn pushed_pencil_pfaffian_equals_q() {
        let t = TransversePoint::new(
            vec![cr(1.0), Complex64::new(-0.5, 0.3), Complex64::new(0.9, -0.2)],
            vec![cr(1.2), Complex64::new(0.0, -0.8)],
        )
        .unwrap();
        let (m1, m2) = pushforward_bivectors_qp(&t, SurfaceModel::PlaneZU).unwrap();
        let mu = pencil_pfaffian_poly(&m1, &m2);
        assert_eq!(mu.len(), t.q.len());
        for (a, b) in mu.iter().zip(t.q.iter()) {
            assert!((a - b).norm() < 1e-8, "mu {a} vs q {b}");
        }
    }

    #[test]
    fn canonical_map_readoff() {
        let t = TransversePoint::new(vec![cr(1.0), cr(-3.0), cr(2.0)], vec![]).unwrap();
        let cm = t.canonical_map();
        assert!((cm[0] - cr(-3.0)).norm() < 1e-15);
        assert!((cm[1] - cr(2.0)).norm() < 1e-15);
        let zn = TransversePoint::new(vec![cr(1.0), cr(0.0), cr(0.0)], vec![]).unwrap();
        assert!(zn.canonical_map().iter().all(|z| z.norm() < 1e-15));
    }
}
