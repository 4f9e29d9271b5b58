//! Moving least squares: a weighted local polynomial fit collapsed into a
//! linear functional of the data values.
//!
//! For a query x the solver minimizes sum_i W(||x - x_i||) (p(x_i) - f_i)^2
//! over polynomials p spanned by the chosen basis, then reports the
//! coefficient vector a with fit value a . f, together with the normal
//! matrix E^T D^-1 E for diagnostics. Nodes outside a compact weight's
//! support are inactive and never touched; a node whose reciprocal weight
//! vanishes at the query pins the fit to that node's value exactly.

use crate::error::{Error, Result};
use crate::linalg;
use crate::weight::WeightSpec;

/// Threshold on the reciprocal condition number of the normal matrix;
/// below it the system is reported singular rather than solved.
const RCOND_MIN: f64 = 1e-12;

/// Relative pivot threshold for the design-matrix rank check.
const RANK_TOL: f64 = 1e-12;

/// Multivariate monomial basis of bounded total degree, constant first,
/// graded by total degree, leading variables carrying the higher powers
/// first within a grade.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialBasis {
    dim: usize,
    degree: u32,
    exponents: Vec<Vec<u32>>,
}

impl PolynomialBasis {
    /// All monomials in `dim` variables of total degree <= `degree`.
    pub fn monomials(dim: usize, degree: u32) -> Result<Self> {
        if dim == 0 {
            return Err(Error::EmptyBasisDimension);
        }
        let mut exponents = Vec::new();
        let mut prefix = Vec::with_capacity(dim);
        for grade in 0..=degree {
            fill_grade(dim, grade, &mut prefix, &mut exponents);
        }
        Ok(Self {
            dim,
            degree,
            exponents,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Value of the k-th basis monomial at x.
    ///
    /// # Panics
    /// If k is out of range or x has the wrong dimension.
    pub fn eval(&self, k: usize, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.dim);
        self.exponents[k]
            .iter()
            .zip(x)
            .map(|(&e, &v)| v.powi(e as i32))
            .product()
    }
}

fn fill_grade(dim: usize, remaining: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
    if dim == 1 {
        prefix.push(remaining);
        out.push(prefix.clone());
        prefix.pop();
        return;
    }
    for lead in (0..=remaining).rev() {
        prefix.push(lead);
        fill_grade(dim - 1, remaining - lead, prefix, out);
        prefix.pop();
    }
}

/// A fixed node set, polynomial basis, and weight; queries then produce
/// per-point assemblies and solutions.
#[derive(Clone, Debug)]
pub struct MlsProblem {
    nodes: Vec<Vec<f64>>,
    basis: PolynomialBasis,
    weight: WeightSpec,
}

/// The pieces of the normal equations at one query point.
#[derive(Clone, Debug)]
pub struct Assembly {
    /// Basis evaluated at every node: row i holds p_k(x_i).
    pub design: Vec<Vec<f64>>,
    /// Diagonal of D^-1, entries 1/(2 w_i); 0 marks an inactive node.
    pub inv_diag: Vec<f64>,
    /// Basis evaluated at the query point.
    pub rhs: Vec<f64>,
    /// Nodes with positive diagonal, ascending.
    pub active: Vec<usize>,
    /// Node whose reciprocal weight vanished at this query, if any; the
    /// fit collapses onto that node's value.
    pub pinned: Option<usize>,
}

/// Coefficient functional at one query point.
#[derive(Clone, Debug)]
pub struct MlsSolution {
    /// a, indexed by node; zero off the active set. The fit is a . f.
    pub coefficients: Vec<f64>,
    /// E^T D^-1 E over the active nodes; None on the pinned branch,
    /// where the normal system is never formed.
    pub normal: Option<Vec<Vec<f64>>>,
    pub active: Vec<usize>,
    pub pinned: Option<usize>,
}

/// Diagnostic report for the solvability conditions at a query point:
/// the basis spans constants, enough active nodes, full design rank.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct H1Report {
    pub has_constant: bool,
    pub enough_nodes: bool,
    pub full_rank: bool,
    pub active: usize,
    pub rank: usize,
}

impl H1Report {
    pub fn passed(&self) -> bool {
        self.has_constant && self.enough_nodes && self.full_rank
    }
}

impl MlsProblem {
    /// Nodes must be pairwise distinct, match the basis dimension, and
    /// number at least the basis size.
    pub fn new(nodes: Vec<Vec<f64>>, basis: PolynomialBasis, weight: WeightSpec) -> Result<Self> {
        for (i, node) in nodes.iter().enumerate() {
            if node.len() != basis.dim() {
                return Err(Error::PointDimensionMismatch {
                    expected: basis.dim(),
                    got: node.len(),
                });
            }
            for (j, other) in nodes.iter().enumerate().skip(i + 1) {
                if node == other {
                    return Err(Error::DuplicateNode { first: i, second: j });
                }
            }
        }
        if basis.len() > nodes.len() {
            return Err(Error::BasisLargerThanNodes {
                basis: basis.len(),
                nodes: nodes.len(),
            });
        }
        Ok(Self {
            nodes,
            basis,
            weight,
        })
    }

    /// One-dimensional problem over the given abscissae with the full
    /// monomial basis of the given degree.
    pub fn univariate(xs: &[f64], degree: u32, weight: WeightSpec) -> Result<Self> {
        let nodes = xs.iter().map(|&x| vec![x]).collect();
        Self::new(nodes, PolynomialBasis::monomials(1, degree)?, weight)
    }

    pub fn nodes(&self) -> &[Vec<f64>] {
        &self.nodes
    }

    pub fn basis(&self) -> &PolynomialBasis {
        &self.basis
    }

    pub fn weight(&self) -> &WeightSpec {
        &self.weight
    }

    fn distances(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.basis.dim() {
            return Err(Error::PointDimensionMismatch {
                expected: self.basis.dim(),
                got: x.len(),
            });
        }
        Ok(self
            .nodes
            .iter()
            .map(|node| {
                node.iter()
                    .zip(x)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .collect())
    }

    /// Builds the normal-equation pieces at x. Errors when the active
    /// design rows lose rank, or when a weight turns non-finite anywhere
    /// other than a pin at the nearest node.
    pub fn assemble(&self, x: &[f64]) -> Result<Assembly> {
        let dists = self.distances(x)?;
        let l = self.basis.len();
        let design: Vec<Vec<f64>> = self
            .nodes
            .iter()
            .map(|node| (0..l).map(|k| self.basis.eval(k, node)).collect())
            .collect();
        let rhs: Vec<f64> = (0..l).map(|k| self.basis.eval(k, x)).collect();
        let nearest = (0..dists.len())
            .min_by(|&a, &b| dists[a].total_cmp(&dists[b]))
            .expect("problems have at least one node");
        let mut inv_diag = vec![0.0; self.nodes.len()];
        let mut active = Vec::new();
        let mut pinned = None;
        for (i, &s) in dists.iter().enumerate() {
            let d = self.weight.normal_diag(s);
            if d.is_nan() {
                return Err(Error::NonFiniteWeight { s });
            }
            if d.is_infinite() {
                // Meaningful only as the interpolation limit at the
                // node closest to the query; anywhere else it is the
                // weight itself overflowing.
                if self.weight.interpolates_at_zero() && i == nearest {
                    pinned = Some(i);
                } else {
                    return Err(Error::NonFiniteWeight { s });
                }
            }
            if d > 0.0 {
                active.push(i);
            }
            inv_diag[i] = d;
        }
        if pinned.is_none() {
            let rows: Vec<&[f64]> = active.iter().map(|&i| design[i].as_slice()).collect();
            let rank = linalg::rank(&rows, RANK_TOL);
            if rank < l {
                return Err(Error::RankDeficient { rank, needed: l });
            }
        }
        Ok(Assembly {
            design,
            inv_diag,
            rhs,
            active,
            pinned,
        })
    }

    /// Coefficient functional at x: a = D^-1 E (E^T D^-1 E)^-1 c.
    pub fn solution(&self, x: &[f64]) -> Result<MlsSolution> {
        self.assemble(x)?.solve()
    }

    /// Fit value at x for the given data values.
    pub fn apply(&self, values: &[f64], x: &[f64]) -> Result<f64> {
        if values.len() != self.nodes.len() {
            return Err(Error::ValueCountMismatch {
                expected: self.nodes.len(),
                got: values.len(),
            });
        }
        let sol = self.solution(x)?;
        if let Some(i) = sol.pinned {
            return Ok(values[i]);
        }
        Ok(sol
            .active
            .iter()
            .map(|&i| sol.coefficients[i] * values[i])
            .sum())
    }

    /// Solvability diagnostics at x; never fails, unlike `assemble`.
    pub fn check_h1(&self, x: &[f64]) -> Result<H1Report> {
        let dists = self.distances(x)?;
        let l = self.basis.len();
        let has_constant = self
            .basis
            .exponents()
            .iter()
            .any(|e| e.iter().all(|&p| p == 0));
        let active: Vec<usize> = (0..self.nodes.len())
            .filter(|&i| self.weight.normal_diag(dists[i]) > 0.0)
            .collect();
        let rows: Vec<Vec<f64>> = active
            .iter()
            .map(|&i| (0..l).map(|k| self.basis.eval(k, &self.nodes[i])).collect())
            .collect();
        let row_refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
        let rank = linalg::rank(&row_refs, RANK_TOL);
        Ok(H1Report {
            has_constant,
            enough_nodes: l <= active.len(),
            full_rank: rank == l,
            active: active.len(),
            rank,
        })
    }
}

impl Assembly {
    /// Solves the weighted normal equations this assembly describes.
    pub fn solve(&self) -> Result<MlsSolution> {
        let m = self.design.len();
        let l = self.rhs.len();
        if let Some(p) = self.pinned {
            let mut coefficients = vec![0.0; m];
            coefficients[p] = 1.0;
            return Ok(MlsSolution {
                coefficients,
                normal: None,
                active: self.active.clone(),
                pinned: Some(p),
            });
        }
        let mut normal = vec![vec![0.0; l]; l];
        for &i in &self.active {
            let d = self.inv_diag[i];
            let row = &self.design[i];
            for k in 0..l {
                let dk = d * row[k];
                for q in k..l {
                    normal[k][q] += dk * row[q];
                }
            }
        }
        for k in 0..l {
            for q in 0..k {
                normal[k][q] = normal[q][k];
            }
        }
        let rcond = linalg::rcond(&normal);
        if rcond.is_nan() || rcond < RCOND_MIN {
            return Err(Error::SingularNormalMatrix { rcond });
        }
        let y = linalg::solve(&normal, &self.rhs)
            .ok_or(Error::SingularNormalMatrix { rcond })?;
        let mut coefficients = vec![0.0; m];
        for &i in &self.active {
            let dot: f64 = self.design[i].iter().zip(&y).map(|(a, b)| a * b).sum();
            coefficients[i] = self.inv_diag[i] * dot;
        }
        Ok(MlsSolution {
            coefficients,
            normal: Some(normal),
            active: self.active.clone(),
            pinned: None,
        })
    }
}
