//! Shared double-precision helpers: complex Pfaffians, characteristic
//! polynomials, polynomial roots via companion matrices, numeric ranks.

use nalgebra::DMatrix;
use num_complex::Complex64;

pub type CMat = DMatrix<Complex64>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Max-abs entry of a complex matrix.
pub fn max_abs(m: &CMat) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn is_antisymmetric(m: &CMat, tol: f64) -> bool {
    if m.nrows() != m.ncols() {
        return false;
    }
    let scale = max_abs(m).max(1.0);
    for r in 0..m.nrows() {
        for s in 0..=r {
            if (m[(r, s)] + m[(s, r)]).norm() > tol * scale {
                return false;
            }
        }
    }
    true
}

/// Pfaffian of a complex antisymmetric matrix by Parlett-Reid elimination
/// with partial pivoting. Returns 0 for structurally singular input.
pub fn pfaffian(m: &CMat) -> Complex64 {
    let n = m.nrows();
    assert_eq!(n, m.ncols(), "pfaffian needs a square matrix");
    assert!(n % 2 == 0, "pfaffian needs even size");
    let mut a = m.clone();
    let mut pf = cr(1.0);
    let mut k = 0;
    while k < n {
        // pivot on the largest entry in row k beyond the diagonal
        let mut p = k + 1;
        let mut best = a[(k, p)].norm();
        for i in (k + 2)..n {
            let v = a[(k, i)].norm();
            if v > best {
                best = v;
                p = i;
            }
        }
        if best == 0.0 {
            return cr(0.0);
        }
        if p != k + 1 {
            a.swap_rows(p, k + 1);
            a.swap_columns(p, k + 1);
            pf = -pf;
        }
        let pivot = a[(k, k + 1)];
        pf *= pivot;
        for i in (k + 2)..n {
            let t = a[(k, i)] / pivot;
            if t.norm() == 0.0 {
                continue;
            }
            for j in 0..n {
                let v = a[(k + 1, j)];
                a[(i, j)] -= t * v;
            }
            for j in 0..n {
                let v = a[(j, k + 1)];
                a[(j, i)] -= t * v;
            }
        }
        k += 2;
    }
    pf
}

/// Characteristic polynomial coefficients `[1, c1, ..., cn]` of a complex
/// matrix (`det(lambda I - M) = lambda^n + c1 lambda^{n-1} + ... + cn`),
/// via Faddeev-LeVerrier.
pub fn charpoly(m: &CMat) -> Vec<Complex64> {
    let n = m.nrows();
    assert_eq!(n, m.ncols());
    let ident = CMat::identity(n, n);
    let mut coeffs = vec![cr(1.0)];
    let mut mk = m.clone();
    for k in 1..=n {
        let ck = -mk.trace() / cr(k as f64);
        coeffs.push(ck);
        if k < n {
            mk = m * (mk + &ident * ck);
        }
    }
    coeffs
}

pub fn det(m: &CMat) -> Complex64 {
    m.clone().lu().determinant()
}

/// Horner evaluation of a monic-descending coefficient list.
pub fn eval_poly(coeffs: &[Complex64], x: Complex64) -> Complex64 {
    let mut acc = cr(0.0);
    for &co in coeffs {
        acc = acc * x + co;
    }
    acc
}

/// Roots of the polynomial with descending coefficients `coeffs`
/// (not necessarily monic), as companion-matrix eigenvalues.
pub fn poly_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    // strip leading zeros
    let mut cs: Vec<Complex64> = coeffs.to_vec();
    while cs.len() > 1 && cs[0].norm() == 0.0 {
        cs.remove(0);
    }
    let n = cs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let lead = cs[0];
    let monic: Vec<Complex64> = cs.iter().map(|&v| v / lead).collect();
    if n == 1 {
        return vec![-monic[1]];
    }
    let mut comp = CMat::zeros(n, n);
    for i in 1..n {
        comp[(i, i - 1)] = cr(1.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -monic[n - i];
    }
    let mut roots = match comp.clone().try_schur(1.0e-13, 2000) {
        Some(schur) => {
            let t = schur.unpack().1;
            (0..n).map(|i| t[(i, i)]).collect::<Vec<_>>()
        }
        None => durand_kerner(&monic),
    };
    roots.sort_by(|a, b| {
        a.re.partial_cmp(&b.re).unwrap().then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// Durand-Kerner fallback for monic descending coefficients.
fn durand_kerner(monic: &[Complex64]) -> Vec<Complex64> {
    let n = monic.len() - 1;
    let radius = 1.0
        + monic.iter().skip(1).map(|z| z.norm()).fold(0.0, f64::max);
    let mut xs: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, th)
        })
        .collect();
    for _ in 0..200 {
        let mut moved = 0.0f64;
        for i in 0..n {
            let mut denom = cr(1.0);
            for j in 0..n {
                if j != i {
                    denom *= xs[i] - xs[j];
                }
            }
            let step = eval_poly(monic, xs[i]) / denom;
            xs[i] -= step;
            moved = moved.max(step.norm());
        }
        if moved < 1e-14 * radius {
            break;
        }
    }
    xs
}

pub fn singular_values(m: &CMat) -> Vec<f64> {
    let svd = m.clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.partial_cmp(a).unwrap());
    sv
}

/// Numeric rank: singular values above `rel_tol` times the largest count.
pub fn rank(m: &CMat, rel_tol: f64) -> usize {
    let sv = singular_values(m);
    let top = sv.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > rel_tol * top).count()
}

/// Group roots into clusters of radius `tol`, returning (center, multiplicity).
pub fn cluster_roots(roots: &[Complex64], tol: f64) -> Vec<(Complex64, usize)> {
    let mut clusters: Vec<(Complex64, usize)> = Vec::new();
    for &r in roots {
        if let Some(cl) = clusters.iter_mut().find(|(ctr, _)| (*ctr - r).norm() <= tol) {
            let (ctr, cnt) = *cl;
            let new_cnt = cnt + 1;
            *cl = ((ctr * cr(cnt as f64) + r) / cr(new_cnt as f64), new_cnt);
        } else {
            clusters.push((r, 1));
        }
    }
    clusters
}

/// Operator 2-norm estimate (largest singular value).
pub fn op_norm(m: &CMat) -> f64 {
    singular_values(m).first().copied().unwrap_or(0.0)
}
