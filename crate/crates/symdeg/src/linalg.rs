//! Exact linear algebra over the rationals, plus memoized Laplace
//! determinants for matrices with polynomial entries.
//!
//! Ranks are computed fraction-free: rows are cleared to integers and
//! eliminated with the Bareiss one-step rule, so every intermediate value
//! is an exact minor of the input. Reduced echelon forms and nullspaces
//! stay in `BigRational`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Arc;

use crate::ring::{Poly, Ring};

/// Exact rank of a rational matrix via fraction-free elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let nr = rows.len();
    if nr == 0 {
        return 0;
    }
    let nc = rows[0].len();
    // Clear denominators row by row; row scaling preserves rank.
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            debug_assert_eq!(row.len(), nc);
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut prev = BigInt::one();
    let mut r = 0usize;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in (r + 1)..nr {
            for j in (c + 1)..nc {
                let num = &a[r][c] * &a[i][j] - &a[i][c] * &a[r][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    r
}

/// Exact determinant of a square rational matrix via fraction-free
/// Bareiss elimination. Row scalings used to clear denominators are
/// divided back out at the end.
pub fn det_rational(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    if n == 0 {
        return BigRational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "determinant needs a square matrix");
            let lcm = row
                .iter()
                .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            scale *= &lcm;
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();

    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for c in 0..n.saturating_sub(1) {
        let Some(p) = (c..n).find(|&i| !a[i][c].is_zero()) else {
            return BigRational::zero();
        };
        if p != c {
            a.swap(c, p);
            sign = -sign;
        }
        for i in (c + 1)..n {
            for j in (c + 1)..n {
                let num = &a[c][c] * &a[i][j] - &a[i][c] * &a[c][j];
                debug_assert!((&num % &prev).is_zero(), "Bareiss division not exact");
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[c][c].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if sign < 0 {
        det = -det;
    }
    BigRational::new(det, scale)
}

/// Reduces `mat` to reduced row echelon form in place; returns pivot columns.
pub fn rref(mat: &mut [Vec<BigRational>]) -> Vec<usize> {
    let nr = mat.len();
    if nr == 0 {
        return Vec::new();
    }
    let nc = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for j in c..nc {
            let v = &mat[r][j] * &inv;
            mat[r][j] = v;
        }
        for i in 0..nr {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for j in c..nc {
                    let v = &mat[i][j] - &factor * &mat[r][j];
                    mat[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Row-reduces `mat` while carrying a transform `t` with `t * input = output`.
/// Returns the pivot columns.
pub fn rref_with_transform(
    mat: &mut Vec<Vec<BigRational>>,
) -> (Vec<Vec<BigRational>>, Vec<usize>) {
    let nr = mat.len();
    let nc = if nr == 0 { 0 } else { mat[0].len() };
    // Augment with the identity, reduce, split off the transform.
    for (i, row) in mat.iter_mut().enumerate() {
        for k in 0..nr {
            row.push(if k == i {
                BigRational::one()
            } else {
                BigRational::zero()
            });
        }
    }
    // Restrict pivot search to the original columns.
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for c in 0..nc {
        if r == nr {
            break;
        }
        let Some(p) = (r..nr).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].recip();
        for j in 0..(nc + nr) {
            let v = &mat[r][j] * &inv;
            mat[r][j] = v;
        }
        for i in 0..nr {
            if i != r && !mat[i][c].is_zero() {
                let factor = mat[i][c].clone();
                for j in 0..(nc + nr) {
                    let v = &mat[i][j] - &factor * &mat[r][j];
                    mat[i][j] = v;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let transform = mat
        .iter_mut()
        .map(|row| row.split_off(nc))
        .collect();
    (transform, pivots)
}

/// A basis of the right nullspace `{x : A x = 0}`.
pub fn nullspace(rows: &[Vec<BigRational>], ncols: usize) -> Vec<Vec<BigRational>> {
    let mut mat: Vec<Vec<BigRational>> = rows.to_vec();
    for row in &mat {
        assert_eq!(row.len(), ncols);
    }
    let pivots = rref(&mut mat);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivot_set.contains(c)) {
        let mut vec = vec![BigRational::zero(); ncols];
        vec[free] = BigRational::one();
        for (r, &pc) in pivots.iter().enumerate() {
            vec[pc] = -mat[r][free].clone();
        }
        basis.push(vec);
    }
    basis
}

/// Memoized Laplace expansion over a square matrix of polynomials.
///
/// Minors are cached by `(row-set, column-set)` bitmask; when the matrix is
/// symmetric, transposed keys are unified, which lets a determinant share
/// its sub-minors with every cofactor. Expansion pivots on the row with the
/// fewest nonzero entries so that structurally sparse matrices stay cheap.
pub struct DetMemo<'a> {
    entries: &'a [Vec<Poly>],
    ring: Arc<Ring>,
    n: usize,
    symmetric: bool,
    memo: HashMap<(u32, u32), Poly>,
}

impl<'a> DetMemo<'a> {
    pub fn new(entries: &'a [Vec<Poly>]) -> Self {
        let n = entries.len();
        assert!(n > 0 && n <= 20, "matrix size out of supported range");
        for row in entries {
            assert_eq!(row.len(), n, "matrix must be square");
        }
        let ring = Arc::clone(entries[0][0].ring());
        let symmetric = (0..n).all(|i| (i + 1..n).all(|j| entries[i][j] == entries[j][i]));
        DetMemo {
            entries,
            ring,
            n,
            symmetric,
            memo: HashMap::new(),
        }
    }

    pub fn det(&mut self) -> Poly {
        let full = if self.n == 32 { u32::MAX } else { (1u32 << self.n) - 1 };
        self.minor(full, full)
    }

    /// Determinant of the submatrix on the given row and column bitmasks.
    pub fn minor(&mut self, rows: u32, cols: u32) -> Poly {
        debug_assert_eq!(rows.count_ones(), cols.count_ones());
        if rows == 0 {
            return Poly::one(&self.ring);
        }
        let key = if self.symmetric && rows > cols {
            (cols, rows)
        } else {
            (rows, cols)
        };
        if let Some(p) = self.memo.get(&key) {
            return p.clone();
        }
        let row_list: Vec<usize> = (0..self.n).filter(|&i| rows & (1 << i) != 0).collect();
        let col_list: Vec<usize> = (0..self.n).filter(|&j| cols & (1 << j) != 0).collect();
        // Pivot on the sparsest row of the submatrix.
        let (ri, &i) = row_list
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| {
                col_list
                    .iter()
                    .filter(|&&j| !self.entries[i][j].is_zero())
                    .count()
            })
            .expect("nonempty row set");
        let mut acc = Poly::zero(&self.ring);
        for (cj, &j) in col_list.iter().enumerate() {
            let e = &self.entries[i][j];
            if e.is_zero() {
                continue;
            }
            let sub = self.minor(rows & !(1 << i), cols & !(1 << j));
            let signed = if (ri + cj) % 2 == 0 { e * &sub } else { -&(e * &sub) };
            acc += &signed;
        }
        self.memo.insert(key, acc.clone());
        acc
    }
}

/// Determinant of a square polynomial matrix.
pub fn det_poly(entries: &[Vec<Poly>]) -> Poly {
    DetMemo::new(entries).det()
}

/// Adjugate of a square polynomial matrix: `adj[i][j]` is the signed
/// `(j, i)` cofactor, so `M * adj(M) = det(M) * I`.
pub fn adjugate_poly(entries: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = entries.len();
    let mut memo = DetMemo::new(entries);
    let full = (1u32 << n) - 1;
    let mut adj = vec![vec![Poly::zero(&Arc::clone(memo.entries[0][0].ring())); n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor = memo.minor(full & !(1 << j), full & !(1 << i));
            adj[i][j] = if (i + j) % 2 == 0 { minor } else { -&minor };
        }
    }
    adj
}

/// Multiplies two square polynomial matrices.
pub fn matmul_poly(a: &[Vec<Poly>], b: &[Vec<Poly>]) -> Vec<Vec<Poly>> {
    let n = a.len();
    let ring = Arc::clone(a[0][0].ring());
    let mut out = vec![vec![Poly::zero(&ring); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let prod = &a[i][k] * &b[k][j];
                out[i][j] += &prod;
            }
        }
    }
    out
}
