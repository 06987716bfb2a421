//! Exact operations on polynomial bivectors: Schouten brackets, pencil
//! Pfaffian polynomials and Magri-Morosi deformations.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::exact::{GaussRational, MultiPoly, PolyMatrix};

use super::{fresh_lambda, BipoissonError, Chart, PolyBivector};

/// Fully antisymmetric rank-3 array of polynomials; only components with
/// `i < j < k` are stored.
#[derive(Clone, Debug)]
pub struct Trivector {
    chart: Chart,
    comps: BTreeMap<(usize, usize, usize), MultiPoly>,
}

impl Trivector {
    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    /// Component with full antisymmetry in the indices.
    pub fn get(&self, i: usize, j: usize, k: usize) -> MultiPoly {
        if i == j || j == k || i == k {
            return MultiPoly::from_int(0);
        }
        let mut idx = [i, j, k];
        let mut sign = 1i64;
        // insertion sort, tracking the permutation parity
        for a in 1..3 {
            let mut b = a;
            while b > 0 && idx[b - 1] > idx[b] {
                idx.swap(b - 1, b);
                sign = -sign;
                b -= 1;
            }
        }
        match self.comps.get(&(idx[0], idx[1], idx[2])) {
            Some(p) => p.scale(&GaussRational::from_int(sign)),
            None => MultiPoly::from_int(0),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.values().all(|p| p.is_zero())
    }

    pub fn max_abs_at(&self, point: &[num_complex::Complex64]) -> Result<f64, BipoissonError> {
        let mut map = BTreeMap::new();
        for (name, &v) in self.chart.coords().iter().zip(point.iter()) {
            map.insert(name.clone(), v);
        }
        let mut best = 0.0f64;
        for p in self.comps.values() {
            best = best.max(p.eval_complex(&map)?.norm());
        }
        Ok(best)
    }
}

/// Schouten bracket of two polynomial bivectors, in coordinates:
/// `[P,Q]^{ijk} = sum_l (P^{li} d_l Q^{jk} + Q^{li} d_l P^{jk}) + cyclic(i,j,k)`.
pub fn schouten_bracket(
    p: &PolyBivector,
    q: &PolyBivector,
) -> Result<Trivector, BipoissonError> {
    p.same_chart(q)?;
    let chart = p.chart().clone();
    let n = chart.dim();
    let coords = chart.coords().to_vec();
    let mut comps = BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let mut acc = MultiPoly::from_int(0);
                for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                    for l in 0..n {
                        let dq = q.comp().get(b, c).diff(&coords[l])?;
                        let dp = p.comp().get(b, c).diff(&coords[l])?;
                        acc = acc
                            .add(&p.comp().get(l, a).mul(&dq))
                            .add(&q.comp().get(l, a).mul(&dp));
                    }
                }
                if !acc.is_zero() {
                    comps.insert((i, j, k), acc);
                }
            }
        }
    }
    Ok(Trivector { chart, comps })
}

/// Exact Poisson/compatibility verdict for a candidate pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PoissonVerdict {
    pub poisson_p: bool,
    pub poisson_q: bool,
    pub compatible: bool,
}

impl PoissonVerdict {
    pub fn all(&self) -> bool {
        self.poisson_p && self.poisson_q && self.compatible
    }
}

pub fn is_poisson_pair(
    p: &PolyBivector,
    q: &PolyBivector,
) -> Result<PoissonVerdict, BipoissonError> {
    Ok(PoissonVerdict {
        poisson_p: schouten_bracket(p, p)?.is_zero(),
        poisson_q: schouten_bracket(q, q)?.is_zero(),
        compatible: schouten_bracket(p, q)?.is_zero(),
    })
}

/// Monic degree-n polynomial in the pencil parameter whose square is the
/// characteristic polynomial of the recursion operator.
/// `coeffs[k]` multiplies `lambda^{n-k}`; `coeffs[0] = 1`.
#[derive(Clone, Debug)]
pub struct PfaffPoly {
    coeffs: Vec<MultiPoly>,
}

impl PfaffPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[MultiPoly] {
        &self.coeffs
    }

    /// Rebuild the full two-variable polynomial `mu(lambda)`.
    pub fn as_poly(&self, lambda: &str) -> MultiPoly {
        let lam = MultiPoly::var(lambda);
        let n = self.degree() as u32;
        let mut acc = MultiPoly::from_int(0);
        for (k, c) in self.coeffs.iter().enumerate() {
            acc = acc.add(&lam.pow(n - k as u32).mul(c));
        }
        acc
    }

    /// Evaluate the coefficient list at a chart point: monic descending
    /// complex coefficients.
    pub fn eval_coeffs(
        &self,
        chart: &Chart,
        point: &[num_complex::Complex64],
    ) -> Result<Vec<num_complex::Complex64>, BipoissonError> {
        let mut map = BTreeMap::new();
        for (name, &v) in chart.coords().iter().zip(point.iter()) {
            map.insert(name.clone(), v);
        }
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.eval_complex(&map)?);
        }
        Ok(out)
    }
}

/// Pfaffian polynomial of the pencil `(P, Q)`:
/// `mu(lambda) = Pf(lambda P - Q) / Pf(P)`, normalized monic in lambda.
pub fn pfaffian_polynomial(
    p: &PolyBivector,
    q: &PolyBivector,
) -> Result<PfaffPoly, BipoissonError> {
    p.same_chart(q)?;
    let lambda = fresh_lambda(p.chart());
    let pf_p = p.comp().pfaffian()?;
    if pf_p.is_zero() {
        return Err(BipoissonError::DegeneratePencil);
    }
    let lam = MultiPoly::var(&lambda);
    let pencil = p.comp().scale(&lam).sub(q.comp());
    let pf_pencil = pencil.pfaffian()?;
    let mu = pf_pencil
        .exact_div(&pf_p)
        .ok_or(BipoissonError::NonPolynomialQuotient)?;
    let n = p.chart().dim() / 2;
    let mut coeffs = Vec::with_capacity(n + 1);
    for k in 0..=n {
        coeffs.push(mu.coeff_of_power(&lambda, (n - k) as u32));
    }
    debug_assert!(coeffs[0] == MultiPoly::from_int(1), "mu is monic by construction");
    Ok(PfaffPoly { coeffs })
}

/// Exact characteristic polynomial of the recursion operator for a pencil
/// whose symplectic member has constant invertible components. Returns the
/// polynomial in the fresh pencil variable.
pub fn recursion_charpoly(
    p: &PolyBivector,
    q: &PolyBivector,
) -> Result<MultiPoly, BipoissonError> {
    p.same_chart(q)?;
    let n = p.chart().dim();
    for r in 0..n {
        for c in 0..n {
            if !p.comp().get(r, c).is_constant() {
                return Err(BipoissonError::NonPolynomialQuotient);
            }
        }
    }
    let det = p.comp().det()?;
    if det.is_zero() {
        return Err(BipoissonError::DegeneratePencil);
    }
    let adj = p.comp().adjugate()?;
    let det_inv = MultiPoly::constant(
        GaussRational::one() / det.constant_value(),
    );
    let p_inv = adj.scale(&det_inv);
    let r_matrix = q.comp().matmul(&p_inv);
    let lambda = fresh_lambda(p.chart());
    Ok(r_matrix.charpoly(&lambda)?)
}

/// Magri-Morosi deformation: the bivector with sharp map `rho(R)` composed
/// with the sharp map of `P`, where `R` is the recursion operator of the
/// pencil. `rho` is given by ascending Gaussian-rational coefficients.
/// Fails when any entry leaves the polynomial class.
pub fn magri_rho(
    p: &PolyBivector,
    q: &PolyBivector,
    rho: &[GaussRational],
) -> Result<PolyBivector, BipoissonError> {
    p.same_chart(q)?;
    if rho.is_empty() {
        return Err(BipoissonError::EmptyRho);
    }
    let n = p.chart().dim();
    let det_p = p.comp().det()?;
    if det_p.is_zero() {
        return Err(BipoissonError::DegeneratePencil);
    }
    let adj_p = p.comp().adjugate()?;
    let mut acc = PolyMatrix::zeros(n, n);
    // k = 0 term
    acc = acc.add(&p.comp().scale(&MultiPoly::constant(rho[0].clone())));
    // k >= 1 terms: rho_k Q (P^{-1} Q)^{k-1} = rho_k Q (adj(P) Q)^{k-1} / det(P)^{k-1}
    let mut numerator = q.comp().clone(); // Q (adjP Q)^{k-1} for current k
    let mut det_power = MultiPoly::from_int(1); // det(P)^{k-1}
    for (k, ck) in rho.iter().enumerate().skip(1) {
        if k > 1 {
            numerator = numerator.matmul(&adj_p).matmul(q.comp());
            det_power = det_power.mul(&det_p);
        }
        if !ck.is_zero() {
            let term = PolyMatrix::from_fn(n, n, |r, c| {
                numerator.get(r, c).exact_div(&det_power).unwrap_or_else(|| {
                    // flag failure by an impossible marker handled below
                    MultiPoly::var("__nonpoly__")
                })
            });
            for r in 0..n {
                for c in 0..n {
                    if term.get(r, c).degree_in("__nonpoly__").unwrap_or(0) > 0 {
                        return Err(BipoissonError::LeavesPolynomialClass);
                    }
                }
            }
            acc = acc.add(&term.scale(&MultiPoly::constant(ck.clone())));
        }
    }
    PolyBivector::new(p.chart().clone(), acc)
}
