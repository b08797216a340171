//! Coordinate tensor calculus: torsion, Lie derivatives, commutators,
//! characteristic coefficients, and pointwise rank tests.
//!
//! All index conventions are explicit in the formulas below; upper index
//! first, so `entries[i][j]` is L^i_j (row i, column j).

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::ring::{Elem, Mode, Rat};

#[derive(Debug, Error)]
pub enum TensorError {
    #[error("operator entries must form a square {expected}x{expected} matrix")]
    NotSquare { expected: usize },
    #[error("component count {got} does not match dimension {expected}")]
    BadLength { expected: usize, got: usize },
    #[error("point has {got} coordinates, expected {expected}")]
    PointLength { expected: usize, got: usize },
    #[error("entries disagree on variable count or mode")]
    IncoherentEntries,
}

/// A (1,1)-tensor field: `entries[i][j]` is L^i_j.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorField {
    n: usize,
    entries: Vec<Vec<Elem>>,
}

/// A vector field ξ^i.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub components: Vec<Elem>,
}

/// A covector field α_i.
#[derive(Debug, Clone, PartialEq)]
pub struct CovectorField {
    pub components: Vec<Elem>,
}

/// A (1,2)-tensor N^i_{jk}, antisymmetric in the lower pair. Stored densely;
/// the constructor asserts the antisymmetry rather than packing it away.
#[derive(Debug, Clone, PartialEq)]
pub struct Torsion12 {
    n: usize,
    components: Vec<Vec<Vec<Elem>>>,
}

// Tensor formulas only ever differentiate along coordinate directions that
// exist in the ring, so unwrap the range check once here.
fn pd(e: &Elem, a: usize) -> Elem {
    e.partial_derivative(a).expect("coordinate index within ring variables")
}

fn coherent(entries: impl Iterator<Item = (usize, Mode)>) -> bool {
    let mut seen: Option<(usize, Mode)> = None;
    for e in entries {
        match seen {
            None => seen = Some(e),
            Some(s) if s == e => {}
            Some(_) => return false,
        }
    }
    true
}

impl OperatorField {
    pub fn new(entries: Vec<Vec<Elem>>) -> Result<OperatorField, TensorError> {
        let n = entries.len();
        if entries.iter().any(|row| row.len() != n) {
            return Err(TensorError::NotSquare { expected: n });
        }
        if !coherent(entries.iter().flatten().map(|e| (e.num_vars(), e.mode()))) {
            return Err(TensorError::IncoherentEntries);
        }
        Ok(OperatorField { n, entries })
    }

    pub fn identity(n: usize, num_vars: usize, mode: Mode) -> OperatorField {
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Elem::one(num_vars, mode)
                        } else {
                            Elem::zero(num_vars, mode)
                        }
                    })
                    .collect()
            })
            .collect();
        OperatorField { n, entries }
    }

    pub fn zero(n: usize, num_vars: usize, mode: Mode) -> OperatorField {
        let entries =
            (0..n).map(|_| (0..n).map(|_| Elem::zero(num_vars, mode)).collect()).collect();
        OperatorField { n, entries }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn num_vars(&self) -> usize {
        self.entries[0][0].num_vars()
    }

    pub fn mode(&self) -> Mode {
        self.entries[0][0].mode()
    }

    pub fn entry(&self, i: usize, j: usize) -> &Elem {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Elem>] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(Elem::is_zero)
    }

    pub fn trace(&self) -> Elem {
        let mut t = Elem::zero(self.num_vars(), self.mode());
        for i in 0..self.n {
            t = t + &self.entries[i][i];
        }
        t
    }

    pub fn add(&self, other: &OperatorField) -> OperatorField {
        assert_eq!(self.n, other.n);
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.entries[i][j] + &other.entries[i][j]).collect())
            .collect();
        OperatorField { n: self.n, entries }
    }

    pub fn sub(&self, other: &OperatorField) -> OperatorField {
        assert_eq!(self.n, other.n);
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.entries[i][j] - &other.entries[i][j]).collect())
            .collect();
        OperatorField { n: self.n, entries }
    }

    pub fn scale(&self, c: &Elem) -> OperatorField {
        let entries = (0..self.n)
            .map(|i| (0..self.n).map(|j| &self.entries[i][j] * c).collect())
            .collect();
        OperatorField { n: self.n, entries }
    }

    pub fn matmul(&self, other: &OperatorField) -> OperatorField {
        assert_eq!(self.n, other.n);
        let n = self.n;
        let entries = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut s = Elem::zero(self.num_vars(), self.mode());
                        for a in 0..n {
                            s = s + &self.entries[i][a] * &other.entries[a][j];
                        }
                        s
                    })
                    .collect()
            })
            .collect();
        OperatorField { n, entries }
    }

    /// Determinant by Laplace expansion along the first column. Dimensions
    /// stay small (n <= 6), so no fraction-free machinery is needed here.
    pub fn determinant(&self) -> Elem {
        det_rec(&self.entries)
    }

    /// Adjugate matrix: adj(L)^i_j = cofactor C_{ji}, so L * adj(L) = det(L) * Id.
    pub fn adjugate(&self) -> OperatorField {
        let n = self.n;
        let mut entries = vec![vec![Elem::zero(self.num_vars(), self.mode()); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor: Vec<Vec<Elem>> = (0..n)
                    .filter(|&r| r != j)
                    .map(|r| {
                        (0..n).filter(|&c| c != i).map(|c| self.entries[r][c].clone()).collect()
                    })
                    .collect();
                let m = if minor.is_empty() {
                    Elem::one(self.num_vars(), self.mode())
                } else {
                    det_rec(&minor)
                };
                entries[i][j] = if (i + j) % 2 == 0 { m } else { m.neg() };
            }
        }
        OperatorField { n, entries }
    }

    /// Evaluate every entry at a rational point.
    pub fn evaluate(&self, point: &[Rat]) -> Result<Vec<Vec<Rat>>, TensorError> {
        if point.len() != self.num_vars() {
            return Err(TensorError::PointLength { expected: self.num_vars(), got: point.len() });
        }
        Ok(self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| e.evaluate(point).expect("length checked")).collect())
            .collect())
    }
}

fn det_rec(m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Elem::zero(m[0][0].num_vars(), m[0][0].mode());
    for r in 0..n {
        if m[r][0].is_zero() {
            continue;
        }
        let minor: Vec<Vec<Elem>> = (0..n)
            .filter(|&i| i != r)
            .map(|i| m[i][1..].to_vec())
            .collect();
        let term = &m[r][0] * &det_rec(&minor);
        acc = if r % 2 == 0 { acc + term } else { acc - term };
    }
    acc
}

impl VectorField {
    pub fn new(components: Vec<Elem>) -> Result<VectorField, TensorError> {
        if !coherent(components.iter().map(|e| (e.num_vars(), e.mode()))) {
            return Err(TensorError::IncoherentEntries);
        }
        Ok(VectorField { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Elem::is_zero)
    }

    /// Directional derivative ξ(f) = ξ^a ∂_a f.
    pub fn derive(&self, f: &Elem) -> Elem {
        let mut s = Elem::zero(f.num_vars(), f.mode());
        for (a, xi) in self.components.iter().enumerate() {
            s = s + xi * &pd(f, a);
        }
        s
    }

    pub fn sub(&self, other: &VectorField) -> VectorField {
        assert_eq!(self.dim(), other.dim());
        VectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Vec<Rat>, TensorError> {
        self.components
            .iter()
            .map(|e| {
                e.evaluate(point).map_err(|_| TensorError::PointLength {
                    expected: e.num_vars(),
                    got: point.len(),
                })
            })
            .collect()
    }
}

impl CovectorField {
    pub fn new(components: Vec<Elem>) -> Result<CovectorField, TensorError> {
        if !coherent(components.iter().map(|e| (e.num_vars(), e.mode()))) {
            return Err(TensorError::IncoherentEntries);
        }
        Ok(CovectorField { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Elem::is_zero)
    }

    pub fn sub(&self, other: &CovectorField) -> CovectorField {
        assert_eq!(self.dim(), other.dim());
        CovectorField {
            components: self
                .components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Torsion12 {
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn component(&self, i: usize, j: usize, k: usize) -> &Elem {
        &self.components[i][j][k]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().flatten().flatten().all(Elem::is_zero)
    }

    /// All (i, j, k) with a nonzero component, j < k (the j > k half is the
    /// negation by antisymmetry).
    pub fn nonzero_components(&self) -> Vec<(usize, usize, usize, Elem)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                for k in (j + 1)..self.n {
                    if !self.components[i][j][k].is_zero() {
                        out.push((i, j, k, self.components[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }
}

/// Nijenhuis torsion
/// N^i_{jk} = L^a_j ∂_a L^i_k − L^a_k ∂_a L^i_j − L^i_a (∂_j L^a_k − ∂_k L^a_j).
pub fn nijenhuis_torsion(l: &OperatorField) -> Torsion12 {
    let n = l.dim();
    let nv = l.num_vars();
    let mode = l.mode();
    let mut comps = vec![vec![vec![Elem::zero(nv, mode); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if j == k {
                    continue;
                }
                let mut s = Elem::zero(nv, mode);
                for a in 0..n {
                    s = s + l.entry(a, j) * &pd(l.entry(i, k), a);
                    s = s - l.entry(a, k) * &pd(l.entry(i, j), a);
                    s = s - l.entry(i, a)
                        * &(pd(l.entry(a, k), j)
                            - pd(l.entry(a, j), k));
                }
                comps[i][j][k] = s;
            }
        }
    }
    let t = Torsion12 { n, components: comps };
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                debug_assert!(
                    (&t.components[i][j][k] + &t.components[i][k][j]).is_zero(),
                    "torsion antisymmetry violated at ({i},{j},{k})"
                );
            }
        }
    }
    t
}

/// (ℒ_e L)^i_j = e^a ∂_a L^i_j − (∂_a e^i) L^a_j + L^i_a ∂_j e^a.
pub fn lie_derivative_operator(e: &VectorField, l: &OperatorField) -> OperatorField {
    let n = l.dim();
    assert_eq!(e.dim(), n);
    let nv = l.num_vars();
    let mode = l.mode();
    let mut entries = vec![vec![Elem::zero(nv, mode); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Elem::zero(nv, mode);
            for a in 0..n {
                s = s + &e.components[a] * &pd(l.entry(i, j), a);
                s = s - &pd(&e.components[i], a) * l.entry(a, j);
                s = s + l.entry(i, a) * &pd(&e.components[a], j);
            }
            entries[i][j] = s;
        }
    }
    OperatorField { n, entries }
}

/// [ξ, η]^i = ξ^a ∂_a η^i − η^a ∂_a ξ^i.
pub fn commutator(xi: &VectorField, eta: &VectorField) -> VectorField {
    let n = xi.dim();
    assert_eq!(eta.dim(), n);
    let components = (0..n)
        .map(|i| xi.derive(&eta.components[i]) - eta.derive(&xi.components[i]))
        .collect();
    VectorField { components }
}

/// Coefficients σ_1..σ_n of the monic characteristic polynomial
/// χ_L(t) = t^n + σ_1 t^{n−1} + … + σ_n, by the Faddeev–LeVerrier trace
/// recursion. Only divisions by the integers 1..n occur, so the computation
/// is exact over Q.
pub fn char_coefficients(l: &OperatorField) -> Vec<Elem> {
    let n = l.dim();
    let nv = l.num_vars();
    let mode = l.mode();
    let mut sigmas = Vec::with_capacity(n);
    let mut m = l.clone();
    for k in 1..=n {
        let ck = m.trace().scale(&-(Rat::from_integer(BigInt::from(k)).recip()));
        sigmas.push(ck.clone());
        if k < n {
            let shifted = m.add(&OperatorField::identity(n, nv, mode).scale(&ck));
            m = l.matmul(&shifted);
        }
    }
    sigmas
}

/// Dual (pullback) action: (L*α)_j = L^i_j α_i.
pub fn dual_apply(l: &OperatorField, alpha: &CovectorField) -> CovectorField {
    let n = l.dim();
    assert_eq!(alpha.dim(), n);
    let components = (0..n)
        .map(|j| {
            let mut s = Elem::zero(l.num_vars(), l.mode());
            for i in 0..n {
                s = s + l.entry(i, j) * &alpha.components[i];
            }
            s
        })
        .collect();
    CovectorField { components }
}

/// (Lξ)^i = L^i_a ξ^a.
pub fn apply_operator(l: &OperatorField, xi: &VectorField) -> VectorField {
    let n = l.dim();
    assert_eq!(xi.dim(), n);
    let components = (0..n)
        .map(|i| {
            let mut s = Elem::zero(l.num_vars(), l.mode());
            for a in 0..n {
                s = s + l.entry(i, a) * &xi.components[a];
            }
            s
        })
        .collect();
    VectorField { components }
}

pub fn operator_power(l: &OperatorField, m: u32) -> OperatorField {
    let mut acc = OperatorField::identity(l.dim(), l.num_vars(), l.mode());
    for _ in 0..m {
        acc = acc.matmul(l);
    }
    acc
}

/// Gradient covector df = (∂_1 f, …, ∂_n f). The covector has as many
/// components as the ring has variables.
pub fn differential(f: &Elem) -> CovectorField {
    let components = (0..f.num_vars()).map(|a| pd(f, a)).collect();
    CovectorField { components }
}

/// Rank of a rational matrix by fraction-free (Bareiss) elimination on the
/// integer matrix obtained by clearing row denominators.
pub fn rational_rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let lcm = row.iter().fold(BigInt::one(), |acc, r| {
                num_integer::lcm(acc, r.denom().clone())
            });
            row.iter().map(|r| r.numer() * (&lcm / r.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let mut rank = 0;
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let pivot = (row..nrows).find(|&r| !m[r][col].is_zero());
        let Some(p) = pivot else { continue };
        m.swap(row, p);
        for r in (row + 1)..nrows {
            for c in (col + 1)..ncols {
                let num = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = &num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// True when Id, L, …, L^{n−1} evaluated at `point` are linearly independent
/// as n² -vectors.
pub fn gl_regular_at(l: &OperatorField, point: &[Rat]) -> Result<bool, TensorError> {
    let n = l.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    for k in 0..n {
        let pk = operator_power(l, k as u32).evaluate(point)?;
        rows.push(pk.into_iter().flatten().collect());
    }
    Ok(rational_rank(&rows) == n)
}

/// True when ξ, Lξ, …, L^{n−1}ξ evaluated at `point` span the tangent space,
/// i.e. the determinant of their matrix is nonzero.
pub fn cyclic_at(xi: &VectorField, l: &OperatorField, point: &[Rat]) -> Result<bool, TensorError> {
    let n = l.dim();
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(n);
    let mut v = xi.clone();
    for _ in 0..n {
        rows.push(v.evaluate(point)?);
        v = apply_operator(l, &v);
    }
    Ok(rational_rank(&rows) == n)
}
