use std::collections::BTreeSet;

use super::scalar::GaussRational;
use super::{ExactError, MultiPoly};

/// Rectangular matrix of polynomials over a shared variable context.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<MultiPoly>,
}

impl PolyMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        Self::from_entries(rows, cols, entries)
    }

    pub fn from_entries(rows: usize, cols: usize, entries: Vec<MultiPoly>) -> Self {
        assert_eq!(entries.len(), rows * cols);
        // unify the variable contexts of all entries
        let names: BTreeSet<String> =
            entries.iter().flat_map(|p| p.vars().iter().cloned()).collect();
        let entries = entries.into_iter().map(|p| p.promoted(&names)).collect();
        PolyMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| MultiPoly::from_int(0))
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |r, c| MultiPoly::from_int((r == c) as i64))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &MultiPoly {
        &self.entries[r * self.cols + c]
    }

    pub fn transpose(&self) -> PolyMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).add(other.get(r, c)))
    }

    pub fn sub(&self, other: &PolyMatrix) -> PolyMatrix {
        self.add(&other.scale_int(-1))
    }

    pub fn scale(&self, s: &MultiPoly) -> PolyMatrix {
        Self::from_fn(self.rows, self.cols, |r, c| self.get(r, c).mul(s))
    }

    pub fn scale_int(&self, s: i64) -> PolyMatrix {
        let c = GaussRational::from_int(s);
        Self::from_fn(self.rows, self.cols, |r, q| self.get(r, q).scale(&c))
    }

    pub fn matmul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "shape mismatch");
        Self::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = MultiPoly::from_int(0);
            for k in 0..self.cols {
                acc = acc.add(&self.get(r, k).mul(other.get(k, c)));
            }
            acc
        })
    }

    pub fn trace(&self) -> MultiPoly {
        assert_eq!(self.rows, self.cols);
        let mut acc = MultiPoly::from_int(0);
        for r in 0..self.rows {
            acc = acc.add(self.get(r, r));
        }
        acc
    }

    pub fn is_antisymmetric(&self) -> bool {
        if self.rows != self.cols {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..=r {
                if !self.get(r, c).add(self.get(c, r)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Characteristic polynomial `det(lambda*I - M)` via the
    /// Faddeev-LeVerrier recurrence; exact over Gaussian rationals.
    pub fn charpoly(&self, lambda: &str) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        for e in &self.entries {
            if e.vars().iter().any(|v| v == lambda) {
                return Err(ExactError::VariableCollision(lambda.to_string()));
            }
        }
        let coeffs = self.faddeev_leverrier().0;
        let lam = MultiPoly::var(lambda);
        let n = self.rows as u32;
        let mut acc = lam.pow(n);
        for (k, c) in coeffs.iter().enumerate() {
            acc = acc.add(&lam.pow(n - 1 - k as u32).mul(c));
        }
        Ok(acc)
    }

    /// Faddeev-LeVerrier sequence: returns (charpoly coefficients c_1..c_n,
    /// adjugate matrix). `det = (-1)^n c_n`, `adj = (-1)^{n-1} (M_{n-1} + c_{n-1} I)`.
    fn faddeev_leverrier(&self) -> (Vec<MultiPoly>, PolyMatrix) {
        let n = self.rows;
        let ident = PolyMatrix::identity(n);
        let mut coeffs: Vec<MultiPoly> = Vec::with_capacity(n);
        let mut mk = self.clone();
        let mut prev_for_adj = ident.clone(); // M_{k-1} + c_{k-1} I at loop exit
        for k in 1..=n {
            let ck = mk
                .trace()
                .scale(&GaussRational::from_ratio(-1, k as i64));
            coeffs.push(ck.clone());
            if k < n {
                let shifted = mk.add(&ident.scale(&ck));
                prev_for_adj = shifted.clone();
                mk = self.matmul(&shifted);
            }
        }
        let sign = if (n - 1) % 2 == 0 { 1 } else { -1 };
        let adj = if n == 1 { ident } else { prev_for_adj.scale_int(sign) };
        (coeffs, adj)
    }

    pub fn det(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let n = self.rows;
        let coeffs = self.faddeev_leverrier().0;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        Ok(coeffs[n - 1].scale(&GaussRational::from_int(sign)))
    }

    /// Adjugate: `M * adj(M) = det(M) * I`.
    pub fn adjugate(&self) -> Result<PolyMatrix, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        Ok(self.faddeev_leverrier().1)
    }

    /// Pfaffian of an antisymmetric even-size matrix by recursive expansion
    /// along the first row. Sign convention: the block-diagonal matrix with
    /// `[[0,1],[-1,0]]` blocks has Pfaffian +1.
    pub fn pfaffian(&self) -> Result<MultiPoly, ExactError> {
        if self.rows != self.cols {
            return Err(ExactError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if self.rows % 2 != 0 {
            return Err(ExactError::OddPfaffian(self.rows));
        }
        if !self.is_antisymmetric() {
            return Err(ExactError::NotAntisymmetric);
        }
        let idx: Vec<usize> = (0..self.rows).collect();
        Ok(self.pf_rec(&idx))
    }

    fn pf_rec(&self, idx: &[usize]) -> MultiPoly {
        if idx.is_empty() {
            return MultiPoly::from_int(1);
        }
        let mut acc = MultiPoly::from_int(0);
        let first = idx[0];
        for (j, &col) in idx.iter().enumerate().skip(1) {
            let a = self.get(first, col);
            if a.is_zero() {
                continue;
            }
            let rest: Vec<usize> = idx
                .iter()
                .enumerate()
                .filter(|(t, _)| *t != 0 && *t != j)
                .map(|(_, &v)| v)
                .collect();
            let sign = if j % 2 == 1 { 1 } else { -1 };
            acc = acc.add(&a.scale(&GaussRational::from_int(sign)).mul(&self.pf_rec(&rest)));
        }
        acc
    }
}
