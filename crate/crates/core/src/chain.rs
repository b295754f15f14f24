//! δ-wall chains: boundary matrix, finite- and strong-coupling corrections
//! and the characteristic determinant.
//!
//! For walls at `a_1 < … < a_n` with rescaled couplings `λ_i` the corrected
//! Green's function is
//!
//! ```text
//! g(x, x') = g0(x, x') - uᵀ W Λ⁻¹ v,   Λ = I + G0 W,
//! ```
//!
//! with `u_i = g0(x, a_i)`, `v_j = g0(a_j, x')`, `G0_ij = g0(a_i, a_j)` and
//! `W = diag(w(a_i) λ_i)` where `w` is the geometry's measure (1, ρ, r²).
//! As all `λ_i → ∞` this tends to `g0 - uᵀ G0⁻¹ v`, which vanishes on every
//! wall; `det G0 = 0` is then the characteristic equation.

use crate::greens::{FreeGreens, Geometry, UnitSystem};
use crate::specfun::SignLog;
use crate::{Error, Result};

/// Largest chain the dense solver accepts.
pub const MAX_WALLS: usize = 64;

/// Relative pivot below which a matrix is treated as sitting on a pole.
pub const NEAR_POLE_RATIO: f64 = 1e-12;

const SINGULAR_PIVOT: f64 = 1e-300;

#[derive(Debug, Clone, PartialEq)]
pub enum Couplings {
    /// Rescaled couplings `λ_i = 2m μ_i / ħ²`, one per wall.
    Finite(Vec<f64>),
    /// Impenetrable walls (strong-coupling limit).
    AllInfinite,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaChain {
    geometry: Geometry,
    positions: Vec<f64>,
    couplings: Couplings,
    units: UnitSystem,
}

impl DeltaChain {
    /// Chain with raw wall strengths `μ_i` (the coefficients of the δ's in
    /// the potential), converted to `λ_i = 2m μ_i / ħ²`.
    pub fn new(
        geometry: Geometry,
        positions: Vec<f64>,
        strengths: Vec<f64>,
        units: UnitSystem,
    ) -> Result<Self> {
        units.validate()?;
        let factor = units.coupling_factor();
        let lambdas = strengths.iter().map(|mu| mu * factor).collect();
        Self::with_couplings(geometry, positions, Couplings::Finite(lambdas), units)
    }

    /// Chain of impenetrable walls.
    pub fn impenetrable(geometry: Geometry, positions: Vec<f64>, units: UnitSystem) -> Result<Self> {
        Self::with_couplings(geometry, positions, Couplings::AllInfinite, units)
    }

    /// Chain with already rescaled couplings `λ_i`.
    pub fn with_couplings(
        geometry: Geometry,
        positions: Vec<f64>,
        couplings: Couplings,
        units: UnitSystem,
    ) -> Result<Self> {
        units.validate()?;
        let n = positions.len();
        if n == 0 {
            return Err(Error::Invalid("a chain needs at least one wall".into()));
        }
        if n > MAX_WALLS {
            return Err(Error::Invalid(format!("{n} walls exceeds the limit of {MAX_WALLS}")));
        }
        let domain = geometry.domain();
        for (i, &a) in positions.iter().enumerate() {
            if !a.is_finite() || !domain.contains(a) {
                return Err(Error::Invalid(format!(
                    "wall {i} at {a} is outside the {} domain",
                    geometry.name()
                )));
            }
        }
        if let Some(w) = positions.windows(2).find(|w| w[1] <= w[0]) {
            return Err(Error::Invalid(format!(
                "wall positions must be strictly increasing ({} then {})",
                w[0], w[1]
            )));
        }
        if let Couplings::Finite(lambdas) = &couplings {
            if lambdas.len() != n {
                return Err(Error::Invalid(format!(
                    "{} couplings for {n} walls (mixing finite and infinite walls is not supported)",
                    lambdas.len()
                )));
            }
            if let Some(l) = lambdas.iter().find(|l| !l.is_finite()) {
                return Err(Error::Invalid(format!(
                    "coupling {l} is not finite; use an all-infinite chain for impenetrable walls"
                )));
            }
        }
        Ok(DeltaChain { geometry, positions, couplings, units })
    }

    pub fn geometry(&self) -> Geometry {
        self.geometry
    }

    pub fn positions(&self) -> &[f64] {
        &self.positions
    }

    pub fn couplings(&self) -> &Couplings {
        &self.couplings
    }

    pub fn units(&self) -> &UnitSystem {
        &self.units
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Diagonal of `W`: `w(a_i) λ_i`.
    fn coupling_weights(&self, g0: &dyn FreeGreens) -> Result<Vec<f64>> {
        let Couplings::Finite(lambdas) = &self.couplings else {
            return Err(Error::Contract(
                "finite-coupling quantity requested on an all-infinite chain".into(),
            ));
        };
        self.positions.iter().zip(lambdas).map(|(&a, &l)| Ok(g0.weight(a)? * l)).collect()
    }
}

/// Dense row-major square matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    n: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(n: usize) -> Self {
        Matrix { n, data: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Invalid("matrix rows must form a square".into()));
        }
        Ok(Matrix { n, data: rows.concat() })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                for j in 0..n {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t[(j, i)] = self[(i, j)];
            }
        }
        t
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n).map(|i| self.row(i).iter().map(|x| x.abs()).sum::<f64>()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.n + j]
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `G0_ij = g0(a_i, a_j)` at one value of the spectral parameter.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryMatrix {
    pub entries: Matrix,
    pub param: f64,
}

/// `Λ = I + G0 W`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaMatrix {
    pub entries: Matrix,
    pub param: f64,
}

/// `P A = L U` with partial pivoting. `L` (unit diagonal) and `U` share
/// one array.
#[derive(Debug, Clone)]
pub struct LuFactors {
    lu: Matrix,
    perm: Vec<usize>,
    perm_sign: i8,
    norm: f64,
}

/// Factorise `a`. Fails with [`Error::Singular`] when a pivot falls below
/// 1e-300 in magnitude.
pub fn lu(a: &Matrix) -> Result<LuFactors> {
    let n = a.size();
    if n > MAX_WALLS {
        return Err(Error::Invalid(format!("{n}x{n} exceeds the {MAX_WALLS}x{MAX_WALLS} limit")));
    }
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(Error::Range("matrix has non-finite entries".into()));
    }
    let mut m = a.clone();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perm_sign = 1i8;
    for k in 0..n {
        let p = (k..n)
            .max_by(|&i, &j| m[(i, k)].abs().total_cmp(&m[(j, k)].abs()))
            .unwrap_or(k);
        let pivot = m[(p, k)];
        if pivot.abs() < SINGULAR_PIVOT {
            return Err(Error::Singular { column: k, pivot });
        }
        if p != k {
            for j in 0..n {
                m.data.swap(p * n + j, k * n + j);
            }
            perm.swap(p, k);
            perm_sign = -perm_sign;
        }
        for i in k + 1..n {
            let f = m[(i, k)] / pivot;
            m[(i, k)] = f;
            for j in k + 1..n {
                m[(i, j)] -= f * m[(k, j)];
            }
        }
    }
    Ok(LuFactors { lu: m, perm, perm_sign, norm: a.norm_inf() })
}

impl LuFactors {
    pub fn size(&self) -> usize {
        self.lu.size()
    }

    /// `perm[i]` is the row of `A` that ended up in row `i`.
    pub fn permutation(&self) -> &[usize] {
        &self.perm
    }

    pub fn lower(&self) -> Matrix {
        let n = self.size();
        let mut l = Matrix::identity(n);
        for i in 0..n {
            for j in 0..i {
                l[(i, j)] = self.lu[(i, j)];
            }
        }
        l
    }

    pub fn upper(&self) -> Matrix {
        let n = self.size();
        let mut u = Matrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                u[(i, j)] = self.lu[(i, j)];
            }
        }
        u
    }

    /// Determinant as a product of pivots, overflow-free.
    pub fn det(&self) -> SignLog {
        (0..self.size()).fold(SignLog::new(self.perm_sign, 0.0), |acc, i| {
            acc * SignLog::from_f64(self.lu[(i, i)])
        })
    }

    /// Smallest `|U_ii| / ‖A‖∞`.
    pub fn min_pivot_ratio(&self) -> f64 {
        (0..self.size()).map(|i| self.lu[(i, i)].abs() / self.norm).fold(f64::INFINITY, f64::min)
    }

    pub fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = self.size();
        assert_eq!(rhs.len(), n, "right-hand side length mismatch");
        let mut x: Vec<f64> = self.perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }

    fn check_pole(&self, param: f64) -> Result<()> {
        let ratio = self.min_pivot_ratio();
        if ratio < NEAR_POLE_RATIO {
            return Err(Error::NearPole { param, ratio });
        }
        Ok(())
    }
}

fn check_geometry(chain: &DeltaChain, g0: &dyn FreeGreens) -> Result<()> {
    let (c, g) = (chain.geometry, g0.geometry());
    if c != g && c != Geometry::Custom && g != Geometry::Custom {
        return Err(Error::Contract(format!(
            "{} chain paired with a {} Green's function",
            c.name(),
            g.name()
        )));
    }
    Ok(())
}

pub fn boundary_matrix(chain: &DeltaChain, g0: &dyn FreeGreens, param: f64) -> Result<BoundaryMatrix> {
    check_geometry(chain, g0)?;
    let a = &chain.positions;
    let n = a.len();
    let mut m = Matrix::zeros(n);
    for i in 0..n {
        for j in i..n {
            let g = g0.eval(a[i], a[j], param)?;
            m[(i, j)] = g;
            m[(j, i)] = g;
        }
    }
    Ok(BoundaryMatrix { entries: m, param })
}

pub fn lambda_matrix(g0_matrix: &BoundaryMatrix, chain: &DeltaChain, g0: &dyn FreeGreens) -> Result<LambdaMatrix> {
    let w = chain.coupling_weights(g0)?;
    let n = w.len();
    let mut m = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            m[(i, j)] += g0_matrix.entries[(i, j)] * w[j];
        }
    }
    Ok(LambdaMatrix { entries: m, param: g0_matrix.param })
}

/// `u_i = g0(x, a_i)` and `v_j = g0(a_j, x')`.
fn source_vectors(
    chain: &DeltaChain,
    g0: &dyn FreeGreens,
    x: f64,
    xp: f64,
    param: f64,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let u = chain.positions.iter().map(|&a| g0.eval(x, a, param)).collect::<Result<_>>()?;
    let v = chain.positions.iter().map(|&a| g0.eval(a, xp, param)).collect::<Result<_>>()?;
    Ok((u, v))
}

/// Values `g(a_i, x')` of the finite-coupling Green's function on the walls.
pub fn wall_values(chain: &DeltaChain, g0: &dyn FreeGreens, xp: f64, param: f64) -> Result<Vec<f64>> {
    let g0m = boundary_matrix(chain, g0, param)?;
    let lam = lambda_matrix(&g0m, chain, g0)?;
    let f = lu(&lam.entries).map_err(|e| singular_to_pole(e, param))?;
    f.check_pole(param)?;
    let v: Vec<f64> = chain.positions.iter().map(|&a| g0.eval(a, xp, param)).collect::<Result<_>>()?;
    Ok(f.solve(&v))
}

fn singular_to_pole(e: Error, param: f64) -> Error {
    match e {
        Error::Singular { .. } => Error::NearPole { param, ratio: 0.0 },
        e => e,
    }
}

/// Green's function of the chain at finite coupling.
pub fn greens_finite(chain: &DeltaChain, g0: &dyn FreeGreens, x: f64, xp: f64, param: f64) -> Result<f64> {
    let w = chain.coupling_weights(g0)?;
    let free = g0.eval(x, xp, param)?;
    let (u, _) = source_vectors(chain, g0, x, xp, param)?;
    let y = wall_values(chain, g0, xp, param)?;
    let correction: f64 = u.iter().zip(&w).zip(&y).map(|((u, w), y)| u * w * y).sum();
    Ok(free - correction)
}

/// Green's function with every wall impenetrable (Dirichlet on each `a_i`).
/// Couplings stored on the chain are ignored.
pub fn greens_strong(chain: &DeltaChain, g0: &dyn FreeGreens, x: f64, xp: f64, param: f64) -> Result<f64> {
    let g0m = boundary_matrix(chain, g0, param)?;
    let f = lu(&g0m.entries).map_err(|e| singular_to_pole(e, param))?;
    f.check_pole(param)?;
    let free = g0.eval(x, xp, param)?;
    let (u, v) = source_vectors(chain, g0, x, xp, param)?;
    Ok(free - dot(&u, &f.solve(&v)))
}

/// `det G0` as a [`SignLog`]; an exactly singular matrix yields zero.
pub fn char_func(chain: &DeltaChain, g0: &dyn FreeGreens, param: f64) -> Result<SignLog> {
    let g0m = boundary_matrix(chain, g0, param)?;
    match lu(&g0m.entries) {
        Ok(f) => Ok(f.det()),
        Err(Error::Singular { .. }) => Ok(SignLog::ZERO),
        Err(e) => Err(e),
    }
}
