//! Structured degenerations of the generic symmetric matrix and their
//! determinantal data.
//!
//! A degeneration replaces each matrix entry by another variable or by
//! zero, acting on symmetric positions simultaneously, so the result is
//! again symmetric. Two families are built in: corner cloning, which
//! rewrites the trailing diagonal entry `x_{m,m}` as `x_{m-1,m-1}`, and
//! triangular sparsing of order `r`, which zeroes every entry with
//! `i + j > 2m - r`.

use num_rational::BigRational;
use num_traits::Zero;
use std::sync::Arc;

use crate::linalg::{adjugate_poly, matmul_poly, DetMemo};
use crate::ring::{Endomorphism, Poly, Ring, VarId};
use crate::Error;

/// A specialization of the generic symmetric matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Degeneration {
    /// No specialization at all.
    Generic { m: u32 },
    /// `x_{m,m} -> x_{m-1,m-1}`: the last diagonal entry clones its neighbor.
    MdClone { m: u32 },
    /// Zeros on every position with `i + j > 2m - r`, for `1 <= r <= m-2`.
    Sparse { m: u32, r: u32 },
    /// An arbitrary entry remap; unnamed positions stay fixed.
    General {
        m: u32,
        images: Vec<(VarId, Option<VarId>)>,
    },
}

impl Degeneration {
    pub fn m(&self) -> u32 {
        match *self {
            Degeneration::Generic { m }
            | Degeneration::MdClone { m }
            | Degeneration::Sparse { m, .. }
            | Degeneration::General { m, .. } => m,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Degeneration::Generic { .. } => "generic".to_string(),
            Degeneration::MdClone { .. } => "clone".to_string(),
            Degeneration::Sparse { r, .. } => format!("sparse(r={r})"),
            Degeneration::General { .. } => "general".to_string(),
        }
    }

    /// The induced ring endomorphism (entry remap as a variable map).
    pub fn endomorphism(&self, ring: &Arc<Ring>) -> Result<Endomorphism, Error> {
        match self {
            Degeneration::Generic { .. } => Ok(Endomorphism::identity(ring)),
            Degeneration::MdClone { m } => Endomorphism::from_pairs(
                ring,
                &[(VarId::new(*m, *m), Some(VarId::new(m - 1, m - 1)))],
            ),
            Degeneration::Sparse { m, r } => {
                let mut pairs = Vec::new();
                for i in 1..=*m {
                    for j in i..=*m {
                        if i + j > 2 * m - r {
                            pairs.push((VarId::new(i, j), None));
                        }
                    }
                }
                Endomorphism::from_pairs(ring, &pairs)
            }
            Degeneration::General { images, .. } => Endomorphism::from_pairs(ring, images),
        }
    }

    /// Builds the specialized matrix in the standard `x`-ring.
    pub fn build(&self) -> Result<DegenMatrix, Error> {
        self.build_with_prefix("x")
    }

    /// Builds the specialized matrix over a ring with the given display prefix.
    pub fn build_with_prefix(&self, prefix: &str) -> Result<DegenMatrix, Error> {
        let m = self.m();
        if !(2..=16).contains(&m) {
            return Err(Error::InvalidDegeneration(format!(
                "matrix size {m} out of range"
            )));
        }
        if let Degeneration::Sparse { r, .. } = self {
            if !(1..=m.saturating_sub(2)).contains(r) {
                return Err(Error::InvalidDegeneration(format!(
                    "sparsing order r={r} outside 1..={}",
                    m - 2
                )));
            }
        }
        let ring = Ring::symmetric_with_prefix(m, prefix);
        let endo = self.endomorphism(&ring)?;
        let mut entries = vec![vec![None; m as usize]; m as usize];
        for i in 1..=m {
            for j in 1..=m {
                entries[(i - 1) as usize][(j - 1) as usize] = endo.image(VarId::new(i, j));
            }
        }
        let mut surviving = Vec::new();
        for &v in ring.vars() {
            let occurs = entries
                .iter()
                .flatten()
                .any(|&e| e == Some(v));
            if occurs {
                surviving.push(v);
            }
        }
        Ok(DegenMatrix {
            m,
            ring,
            entries,
            degeneration: self.clone(),
            surviving,
        })
    }
}

/// Number of zeroed positions `(i, j)` with `i <= j` under sparsing of
/// order `r`: `(r+1)^2 / 4` for odd `r`, `r(r+2) / 4` for even `r`.
pub fn zero_count(r: u32) -> u64 {
    let r = r as u64;
    if r % 2 == 1 {
        (r + 1) * (r + 1) / 4
    } else {
        r * (r + 2) / 4
    }
}

/// A symmetric matrix whose entries are variables or zeros.
#[derive(Debug, Clone)]
pub struct DegenMatrix {
    m: u32,
    ring: Arc<Ring>,
    entries: Vec<Vec<Option<VarId>>>,
    degeneration: Degeneration,
    surviving: Vec<VarId>,
}

impl DegenMatrix {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn degeneration(&self) -> &Degeneration {
        &self.degeneration
    }

    /// Entry at 1-based position `(i, j)`; `None` encodes a zero.
    pub fn entry(&self, i: u32, j: u32) -> Option<VarId> {
        self.entries[(i - 1) as usize][(j - 1) as usize]
    }

    pub fn entry_poly(&self, i: u32, j: u32) -> Poly {
        match self.entry(i, j) {
            Some(v) => Poly::var(&self.ring, v),
            None => Poly::zero(&self.ring),
        }
    }

    /// The variables that occur somewhere in the matrix, in ring order.
    pub fn surviving_vars(&self) -> &[VarId] {
        &self.surviving
    }

    /// All positions `(i, j)` of the full grid occupied by the given
    /// variable; an off-diagonal variable occupies two mirror slots.
    pub fn slots_of(&self, v: VarId) -> Vec<(u32, u32)> {
        let mut slots = Vec::new();
        for i in 1..=self.m {
            for j in 1..=self.m {
                if self.entry(i, j) == Some(v) {
                    slots.push((i, j));
                }
            }
        }
        slots
    }

    pub fn to_poly_rows(&self) -> Vec<Vec<Poly>> {
        (1..=self.m)
            .map(|i| (1..=self.m).map(|j| self.entry_poly(i, j)).collect())
            .collect()
    }

    /// Determinant via memoized Laplace expansion.
    pub fn determinant(&self) -> Poly {
        DetMemo::new(&self.to_poly_rows()).det()
    }

    /// All signed cofactors and the determinant, sharing one minor memo.
    pub fn cofactors(&self) -> CofactorTable {
        let rows = self.to_poly_rows();
        let mut memo = DetMemo::new(&rows);
        let n = self.m as usize;
        let full = (1u32 << n) - 1;
        let det = memo.minor(full, full);
        let mut delta = vec![vec![Poly::zero(&self.ring); n]; n];
        for i in 0..n {
            for j in 0..n {
                let minor = memo.minor(full & !(1 << i), full & !(1 << j));
                delta[i][j] = if (i + j) % 2 == 0 { minor } else { -&minor };
            }
        }
        CofactorTable {
            m: self.m,
            ring: Arc::clone(&self.ring),
            det,
            delta,
        }
    }
}

/// The signed cofactors of a symmetric degeneration.
///
/// `delta(i, j)` is the signed cofactor of the `(i, j)` entry; symmetry of
/// the matrix forces `delta(i, j) = delta(j, i)`.
#[derive(Debug, Clone)]
pub struct CofactorTable {
    m: u32,
    ring: Arc<Ring>,
    det: Poly,
    delta: Vec<Vec<Poly>>,
}

impl CofactorTable {
    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn det(&self) -> &Poly {
        &self.det
    }

    /// Signed cofactor of the 1-based `(i, j)` entry.
    pub fn delta(&self, i: u32, j: u32) -> &Poly {
        &self.delta[(i - 1) as usize][(j - 1) as usize]
    }

    /// The adjugate matrix: `adj[i][j] = delta(j+1, i+1)`.
    pub fn adjugate(&self) -> Vec<Vec<Poly>> {
        let n = self.m as usize;
        (0..n)
            .map(|i| (0..n).map(|j| self.delta[j][i].clone()).collect())
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.m as usize;
        (0..n).all(|i| (i + 1..n).all(|j| self.delta[i][j] == self.delta[j][i]))
    }
}

/// Outcome of checking `M * adj(M) = adj(M) * M = det(M) * I` term-exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CauchyReport {
    pub passed: bool,
    /// First failing `(side, i, j)` with `side` 0 for `M*adj`, 1 for `adj*M`.
    pub failing_entry: Option<(u8, u32, u32)>,
}

/// Verifies both Cauchy cofactor identities for the matrix.
pub fn verify_cauchy(mat: &DegenMatrix) -> CauchyReport {
    let table = mat.cofactors();
    let rows = mat.to_poly_rows();
    let adj = table.adjugate();
    let n = mat.m() as usize;
    for (side, prod) in [matmul_poly(&rows, &adj), matmul_poly(&adj, &rows)]
        .into_iter()
        .enumerate()
    {
        for i in 0..n {
            for j in 0..n {
                let expected = if i == j {
                    table.det().clone()
                } else {
                    Poly::zero(mat.ring())
                };
                if prod[i][j] != expected {
                    return CauchyReport {
                        passed: false,
                        failing_entry: Some((side as u8, (i + 1) as u32, (j + 1) as u32)),
                    };
                }
            }
        }
    }
    CauchyReport {
        passed: true,
        failing_entry: None,
    }
}

/// Checks `adj(adj(M)) = det(M)^(m-2) * M` term-exactly.
pub fn adj_adj_identity(mat: &DegenMatrix) -> bool {
    let m = mat.m();
    let table = mat.cofactors();
    let adj = table.adjugate();
    let adj2 = adjugate_poly(&adj);
    let scale = table.det().pow(m - 2);
    let rows = mat.to_poly_rows();
    for i in 0..m as usize {
        for j in 0..m as usize {
            if adj2[i][j] != &scale * &rows[i][j] {
                return false;
            }
        }
    }
    true
}

/// Evaluates every entry of a polynomial matrix at a point.
pub fn eval_matrix(rows: &[Vec<Poly>], point: &crate::ring::RationalPoint) -> Vec<Vec<BigRational>> {
    rows.iter()
        .map(|row| row.iter().map(|p| p.evaluate(point)).collect())
        .collect()
}

/// True when all entries of a rational matrix are zero.
pub fn is_zero_matrix(rows: &[Vec<BigRational>]) -> bool {
    rows.iter().flatten().all(|x| x.is_zero())
}
