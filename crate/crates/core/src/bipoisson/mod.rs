//! Polynomial bivector fields on even-dimensional coordinate charts:
//! Schouten brackets, Poisson/compatibility verdicts, recursion operators,
//! Pfaffian polynomials, Nijenhuis tensors, Magri-Morosi deformations and
//! degeneracy-rank diagnostics.

mod descriptor;
mod numeric_ops;
mod symbolic;

pub use descriptor::{BivectorDescriptor, ChartDescriptor, EntryDescriptor};
pub use numeric_ops::{
    degeneracy_rank, minimal_polynomial_check, nijenhuis_tensor, recursion_operator_at,
    NijenhuisSample, RecursionOperatorSample,
};
pub use symbolic::{
    is_poisson_pair, magri_rho, pfaffian_polynomial, recursion_charpoly, schouten_bracket,
    PfaffPoly, PoissonVerdict, Trivector,
};

use std::collections::BTreeSet;

use crate::exact::{ExactError, MultiPoly, PolyMatrix};

/// Even-dimensional coordinate chart with ordered, distinct coordinate names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chart {
    coords: Vec<String>,
}

impl Chart {
    pub fn new(coords: Vec<String>) -> Result<Self, BipoissonError> {
        if coords.is_empty() || coords.len() % 2 != 0 {
            return Err(BipoissonError::OddChart(coords.len()));
        }
        let set: BTreeSet<&String> = coords.iter().collect();
        if set.len() != coords.len() {
            return Err(BipoissonError::DuplicateCoordinate);
        }
        Ok(Chart { coords })
    }

    /// Root chart z1,u1,...,zn,un with the fibre coordinate named `fibre`.
    pub fn interleaved(n: usize, base: &str, fibre: &str) -> Self {
        let mut coords = Vec::with_capacity(2 * n);
        for i in 1..=n {
            coords.push(format!("{base}{i}"));
            coords.push(format!("{fibre}{i}"));
        }
        Chart { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[String] {
        &self.coords
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.coords.iter().position(|c| c == name)
    }
}

/// Antisymmetric matrix of polynomials over a chart: a polynomial bivector
/// field. Convention: the component matrix `comp[i][j]` is the coefficient
/// of `d/dx_i wedge d/dx_j` (i < j), and the sharp map sends a covector
/// `alpha` to the vector `comp * alpha`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyBivector {
    chart: Chart,
    comp: PolyMatrix,
}

impl PolyBivector {
    pub fn new(chart: Chart, comp: PolyMatrix) -> Result<Self, BipoissonError> {
        if comp.rows() != chart.dim() || comp.cols() != chart.dim() {
            return Err(BipoissonError::DimensionMismatch {
                chart: chart.dim(),
                matrix: comp.rows(),
            });
        }
        if !comp.is_antisymmetric() {
            return Err(BipoissonError::NotAntisymmetric);
        }
        for r in 0..comp.rows() {
            for c in 0..comp.cols() {
                for v in comp.get(r, c).vars() {
                    if comp.get(r, c).degree_in(v).unwrap_or(0) > 0 && chart.index_of(v).is_none() {
                        return Err(BipoissonError::ForeignVariable(v.clone()));
                    }
                }
            }
        }
        // promote all entries to the full chart context so coordinate
        // derivatives are always defined
        let names: BTreeSet<String> = chart.coords.iter().cloned().collect();
        let comp = PolyMatrix::from_fn(chart.dim(), chart.dim(), |r, c| {
            comp.get(r, c).promoted(&names)
        });
        Ok(PolyBivector { chart, comp })
    }

    pub fn zero(chart: Chart) -> Self {
        let n = chart.dim();
        Self::new(chart, PolyMatrix::zeros(n, n)).expect("zero bivector is valid")
    }

    pub fn chart(&self) -> &Chart {
        &self.chart
    }

    pub fn comp(&self) -> &PolyMatrix {
        &self.comp
    }

    pub fn same_chart(&self, other: &PolyBivector) -> Result<(), BipoissonError> {
        if self.chart != other.chart {
            return Err(BipoissonError::ChartMismatch);
        }
        Ok(())
    }

    /// Evaluate the component matrix at a complex point (chart order).
    pub fn eval(&self, point: &[num_complex::Complex64]) -> Result<crate::numeric::CMat, BipoissonError> {
        if point.len() != self.chart.dim() {
            return Err(BipoissonError::BadPoint { expected: self.chart.dim(), got: point.len() });
        }
        let mut map = std::collections::BTreeMap::new();
        for (name, &v) in self.chart.coords.iter().zip(point.iter()) {
            map.insert(name.clone(), v);
        }
        let n = self.chart.dim();
        let mut m = crate::numeric::CMat::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                m[(r, c)] = self.comp.get(r, c).eval_complex(&map)?;
            }
        }
        Ok(m)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum BipoissonError {
    #[error("chart dimension must be even and positive, got {0}")]
    OddChart(usize),
    #[error("duplicate coordinate name")]
    DuplicateCoordinate,
    #[error("chart mismatch")]
    ChartMismatch,
    #[error("component matrix is {matrix}x{matrix} but chart has dim {chart}")]
    DimensionMismatch { chart: usize, matrix: usize },
    #[error("component matrix is not antisymmetric")]
    NotAntisymmetric,
    #[error("entry uses variable `{0}` which is not a chart coordinate")]
    ForeignVariable(String),
    #[error("bivector is not symplectic here")]
    NotSymplecticHere,
    #[error("degenerate pencil: Pf of the symplectic member vanishes identically")]
    DegeneratePencil,
    #[error("Pfaffian quotient has non-polynomial coefficients")]
    NonPolynomialQuotient,
    #[error("deformation leaves polynomial class")]
    LeavesPolynomialClass,
    #[error("point is not on the degeneracy locus (|mu({lambda})| = {value:.3e})")]
    PointNotOnLocus { lambda: num_complex::Complex64, value: f64 },
    #[error("point has {got} coordinates, chart has {expected}")]
    BadPoint { expected: usize, got: usize },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("polynomial coefficients of rho must be nonempty")]
    EmptyRho,
}

/// Fresh variable name not colliding with the chart coordinates.
pub(crate) fn fresh_lambda(chart: &Chart) -> String {
    let mut name = "lambda".to_string();
    while chart.coords().iter().any(|c| *c == name) {
        name.push('_');
    }
    name
}

pub(crate) fn std_symplectic_comp(n2: usize) -> PolyMatrix {
    PolyMatrix::from_fn(n2, n2, |r, c| {
        if r / 2 == c / 2 && r % 2 == 0 && c % 2 == 1 {
            MultiPoly::from_int(1)
        } else if r / 2 == c / 2 && r % 2 == 1 && c % 2 == 0 {
            MultiPoly::from_int(-1)
        } else {
            MultiPoly::from_int(0)
        }
    })
}
