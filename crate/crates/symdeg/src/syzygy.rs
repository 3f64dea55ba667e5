//! Linear syzygies of the gradient ideal (cloned matrix) and of the
//! submaximal-minor ideal (sparsed matrix), plus an exact solver for the
//! space of all linear syzygies of an arbitrary generator list.
//!
//! Every constructed relation comes from the Cauchy cofactor identity
//! `M * adj(M) = det(M) * I`: dotting row `i` of `M` against cofactor
//! column `k` gives zero off the diagonal and `det(M)` on it, so
//! off-diagonal pairs yield relations with linear coefficients, and
//! differences of two diagonal pairs do as well. For the cloned matrix the
//! cofactors are rewritten in terms of the partial derivatives; for the
//! sparse matrix the cofactors themselves are the generators.

use num_rational::BigRational;
use num_traits::Zero;
use std::collections::HashMap;
use std::sync::Arc;

use crate::linalg;
use crate::matrix::Degeneration;
use crate::ring::{Poly, RationalPoint, Ring, VarId};
use crate::sampling::Sampler;
use crate::Error;

/// One linear syzygy: a vector of degree-one forms (or zeros) indexed like
/// the generator list, together with a tag naming its construction family.
#[derive(Debug, Clone)]
pub struct SyzygyVec {
    coeffs: Vec<Poly>,
    tag: String,
}

impl SyzygyVec {
    pub fn new(coeffs: Vec<Poly>, tag: impl Into<String>) -> Self {
        SyzygyVec {
            coeffs,
            tag: tag.into(),
        }
    }

    pub fn coeffs(&self) -> &[Poly] {
        &self.coeffs
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Every entry is either zero or homogeneous of degree exactly one.
    pub fn entries_are_linear(&self) -> bool {
        self.coeffs
            .iter()
            .all(|c| c.is_zero() || (c.degree() == Some(1) && c.is_homogeneous()))
    }
}

/// A list of linear syzygies of a fixed, ordered generator vector.
#[derive(Debug, Clone)]
pub struct LinearSyzygySet {
    ring: Arc<Ring>,
    generators: Vec<Poly>,
    labels: Vec<String>,
    vars: Vec<VarId>,
    syzygies: Vec<SyzygyVec>,
    generator_blocks: Vec<usize>,
    family_blocks: Vec<usize>,
}

/// Outcome of the triangular block-shape verification.
#[derive(Debug, Clone)]
pub struct BlockReport {
    /// Syzygies of family `b` have identically-zero coefficients on every
    /// generator block below block `b`.
    pub zero_pattern: bool,
    /// After dropping the first generator row, the diagonal blocks are
    /// square.
    pub diagonal_blocks_square: bool,
    /// Each diagonal block is invertible at a sampled rational point.
    pub diagonal_blocks_invertible: bool,
}

impl BlockReport {
    pub fn passed(&self) -> bool {
        self.zero_pattern && self.diagonal_blocks_square && self.diagonal_blocks_invertible
    }
}

impl LinearSyzygySet {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn syzygies(&self) -> &[SyzygyVec] {
        &self.syzygies
    }

    pub fn len(&self) -> usize {
        self.syzygies.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syzygies.is_empty()
    }

    /// Sizes of the generator blocks in the triangular presentation, when
    /// the set was built with one (empty for solved sets).
    pub fn generator_blocks(&self) -> &[usize] {
        &self.generator_blocks
    }

    /// Sizes of the syzygy families, aligned with `generator_blocks`.
    pub fn family_blocks(&self) -> &[usize] {
        &self.family_blocks
    }

    /// `sum_k s_k * gen_k == 0` term-exactly for every syzygy.
    pub fn all_annihilate(&self) -> bool {
        self.syzygies.iter().all(|s| {
            let mut acc = Poly::zero(&self.ring);
            for (c, g) in s.coeffs.iter().zip(&self.generators) {
                acc += &(c * g);
            }
            acc.is_zero()
        })
    }

    /// Every entry of every syzygy is a linear form or zero.
    pub fn entries_are_linear(&self) -> bool {
        self.syzygies.iter().all(|s| s.entries_are_linear())
    }

    /// The syzygy-by-generator coefficient matrix evaluated at a point.
    pub fn coefficient_matrix_at(&self, point: &RationalPoint) -> Vec<Vec<BigRational>> {
        self.syzygies
            .iter()
            .map(|s| s.coeffs.iter().map(|c| c.evaluate(point)).collect())
            .collect()
    }

    /// Rank of the coefficient matrix over the fraction field, certified
    /// from below as the maximum exact rank over seeded sample points.
    pub fn rank(&self, trials: u32, seed: u64) -> usize {
        if self.syzygies.is_empty() {
            return 0;
        }
        let mut sampler = Sampler::new(seed);
        let mut best = 0;
        for _ in 0..trials.max(1) {
            let pt = sampler.sample_point(&self.ring);
            best = best.max(linalg::rank(&self.coefficient_matrix_at(&pt)));
        }
        best
    }

    /// Flattens a syzygy into the coefficient vector of its entries over
    /// `(generator, variable)` pairs, the coordinates used for exact span
    /// arithmetic.
    fn flatten(&self, s: &SyzygyVec) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(self.generators.len() * self.vars.len());
        for c in &s.coeffs {
            for &v in &self.vars {
                out.push(c.coeff_of_var(v));
            }
        }
        out
    }

    /// Exact membership of a candidate syzygy in the span of this set.
    pub fn contains(&self, candidate: &SyzygyVec) -> bool {
        let mut rows: Vec<Vec<BigRational>> =
            self.syzygies.iter().map(|s| self.flatten(s)).collect();
        let base = linalg::rank(&rows);
        rows.push(self.flatten(candidate));
        linalg::rank(&rows) == base
    }

    /// Every syzygy of `other` lies in the span of this set. The two sets
    /// must index generators and variables identically.
    pub fn spans(&self, other: &LinearSyzygySet) -> bool {
        other.syzygies.iter().all(|s| self.contains(s))
    }

    /// Verifies the triangular block presentation: families touch no
    /// generator block below their own, and deleting the first generator
    /// row leaves square, generically invertible diagonal blocks.
    pub fn block_structure(&self, seed: u64) -> Result<BlockReport, Error> {
        if self.generator_blocks.is_empty() || self.family_blocks.is_empty() {
            return Err(Error::Unsupported(
                "this syzygy set carries no block presentation".to_string(),
            ));
        }
        if self.generator_blocks.len() != self.family_blocks.len()
            || self.generator_blocks.iter().sum::<usize>() != self.generators.len()
            || self.family_blocks.iter().sum::<usize>() != self.syzygies.len()
        {
            return Err(Error::Unsupported(
                "block presentation does not tile the coefficient matrix".to_string(),
            ));
        }

        let gen_starts: Vec<usize> = self
            .generator_blocks
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect();
        let fam_starts: Vec<usize> = self
            .family_blocks
            .iter()
            .scan(0, |acc, &s| {
                let start = *acc;
                *acc += s;
                Some(start)
            })
            .collect();
        let nblocks = self.generator_blocks.len();

        let mut zero_pattern = true;
        for b in 0..nblocks {
            let below = gen_starts[b] + self.generator_blocks[b];
            for s in &self.syzygies[fam_starts[b]..fam_starts[b] + self.family_blocks[b]] {
                if s.coeffs[below..].iter().any(|c| !c.is_zero()) {
                    zero_pattern = false;
                }
            }
        }

        // Dropping the first generator row must leave square diagonal
        // blocks: the first family matches block 1 shrunk by one, the rest
        // match their blocks exactly.
        let diagonal_blocks_square = self.generators.len() == self.syzygies.len() + 1
            && self.family_blocks[0] + 1 == self.generator_blocks[0]
            && (1..nblocks).all(|b| self.family_blocks[b] == self.generator_blocks[b]);

        let mut diagonal_blocks_invertible = diagonal_blocks_square;
        if diagonal_blocks_square {
            let mut sampler = Sampler::new(seed);
            let pt = sampler.sample_point(&self.ring);
            let full = self.coefficient_matrix_at(&pt);
            for b in 0..nblocks {
                // generator indices, skipping the deleted first row
                let g0 = if b == 0 { 1 } else { gen_starts[b] };
                let gsz = if b == 0 {
                    self.generator_blocks[0] - 1
                } else {
                    self.generator_blocks[b]
                };
                let block: Vec<Vec<BigRational>> = (fam_starts[b]
                    ..fam_starts[b] + self.family_blocks[b])
                    .map(|s| full[s][g0..g0 + gsz].to_vec())
                    .collect();
                if linalg::rank(&block) != gsz {
                    diagonal_blocks_invertible = false;
                }
            }
        }

        Ok(BlockReport {
            zero_pattern,
            diagonal_blocks_square,
            diagonal_blocks_invertible,
        })
    }
}

/// Accumulates coefficient vectors for one syzygy at a time.
struct Builder {
    coeffs: Vec<Poly>,
}

impl Builder {
    fn new(ring: &Arc<Ring>, n: usize) -> Self {
        Builder {
            coeffs: vec![Poly::zero(ring); n],
        }
    }

    fn add(&mut self, idx: usize, p: Poly) {
        self.coeffs[idx] += &p;
    }

    fn finish(self, tag: &str) -> SyzygyVec {
        SyzygyVec::new(self.coeffs, tag)
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// The constructed linear syzygies of the gradient of the cloned
/// determinant: for each column `k <= m-2` of the Cauchy identity one
/// relation per row `i` in `{k-1} ∪ {k+1..m}`, rewritten on the partial
/// derivatives (which doubles the coefficient of the diagonal partial),
/// plus two combined relations that use the corner identity
/// `f_{m-1,m-1} = delta(m-1,m-1) + delta(m,m)` to eliminate the two
/// cofactors that are not partial derivatives.
pub fn cloning_syzygies(m: u32) -> Result<LinearSyzygySet, Error> {
    if m < 3 {
        return Err(Error::InvalidDegeneration(format!(
            "cloning syzygies need a matrix of size at least 3, got {m}"
        )));
    }
    let mat = Degeneration::MdClone { m }.build()?;
    let ring = Arc::clone(mat.ring());
    let f = mat.determinant();
    let vars: Vec<VarId> = mat.surviving_vars().to_vec();
    let generators: Vec<Poly> = vars.iter().map(|&v| f.derivative(v)).collect();
    let labels: Vec<String> = vars.iter().map(|v| format!("f{v}")).collect();
    let index: HashMap<VarId, usize> = vars.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let idx = |i: u32, j: u32| index[&VarId::new(i, j)];
    let n = generators.len();

    let mut syzygies = Vec::new();
    let mut family_blocks = Vec::new();

    for k in 1..=m - 2 {
        let mut family = 0;
        let rows: Vec<u32> = (k.max(2) - 1..=m).filter(|&i| i != k).collect();
        for i in rows {
            let mut b = Builder::new(&ring, n);
            for j in 1..=m {
                let c = mat.entry_poly(i, j);
                if c.is_zero() {
                    continue;
                }
                if j == k {
                    b.add(idx(k, k), c.scale_int(2));
                } else {
                    b.add(idx(j.min(k), j.max(k)), c);
                }
            }
            let tag = if i == m {
                "sc3"
            } else if k == 1 {
                "sc1"
            } else {
                "sc2"
            };
            syzygies.push(b.finish(tag));
            family += 1;
        }
        family_blocks.push(family);
    }

    // corner mix: rows m-1 and m of the Cauchy identity against cofactor
    // columns m and m-1, whose unrepresentable cofactors pair into
    // f_{m-1,m-1}
    let mut a = Builder::new(&ring, n);
    for i in 1..=m - 2 {
        a.add(idx(i, m), Poly::var(&ring, VarId::new(i, m - 1)).scale(&half()));
        a.add(idx(i, m - 1), Poly::var(&ring, VarId::new(i, m)).scale(&half()));
    }
    a.add(idx(m - 1, m), Poly::var(&ring, VarId::new(m - 1, m - 1)));
    a.add(idx(m - 1, m - 1), Poly::var(&ring, VarId::new(m - 1, m)));
    syzygies.push(a.finish("sc4+sc5"));

    // trace difference: the two diagonal Cauchy relations for rows m-1 and
    // m sum to twice the determinant, which the row-1 diagonal relation
    // rewrites on the partials
    let mut bld = Builder::new(&ring, n);
    for i in 1..=m - 2 {
        bld.add(idx(i, m - 1), Poly::var(&ring, VarId::new(i, m - 1)).scale(&half()));
        bld.add(idx(i, m), Poly::var(&ring, VarId::new(i, m)).scale(&half()));
    }
    bld.add(idx(m - 1, m - 1), Poly::var(&ring, VarId::new(m - 1, m - 1)));
    bld.add(idx(m - 1, m), Poly::var(&ring, VarId::new(m - 1, m)));
    bld.add(idx(1, 1), Poly::term(&ring, -2, &[(1, 1, 1)]));
    for j in 2..=m {
        bld.add(idx(1, j), Poly::var(&ring, VarId::new(1, j)).scale_int(-1));
    }
    syzygies.push(bld.finish("sc6+sc7"));
    family_blocks.push(2);

    // generator blocks follow the row-major listing of the partials; the
    // last block holds the two `m-1`-row partials
    let generator_blocks: Vec<usize> = (1..=m - 1).map(|b| (m - b + 1) as usize).collect();

    Ok(LinearSyzygySet {
        ring,
        generators,
        labels,
        vars,
        syzygies,
        generator_blocks,
        family_blocks,
    })
}

/// Position of cofactor `(i,j)`, `i >= j`, in the column-major listing of
/// the lower triangle.
fn cofactor_index(m: u32, i: u32, j: u32) -> usize {
    let (i, j) = if i >= j { (i, j) } else { (j, i) };
    let mut offset = 0usize;
    for c in 1..j {
        offset += (m - c + 1) as usize;
    }
    offset + (i - j) as usize
}

/// The constructed linear syzygies of the full cofactor vector of the
/// sparsed matrix: the Cauchy relations for columns `k <= m-r` over rows
/// `{k-1} ∪ {k+1..m}` (entries beyond the zero boundary truncate), and for
/// each trailing column `m-r+l` the relations over rows `m-r..m-l`, the
/// `k = l` slot holding the difference of two diagonal Cauchy relations.
pub fn sparse_syzygies(m: u32, r: u32) -> Result<LinearSyzygySet, Error> {
    let mat = Degeneration::Sparse { m, r }.build()?;
    let ring = Arc::clone(mat.ring());
    let table = mat.cofactors();
    let vars: Vec<VarId> = mat.surviving_vars().to_vec();

    let mut generators = Vec::new();
    let mut labels = Vec::new();
    for j in 1..=m {
        for i in j..=m {
            generators.push(table.delta(i, j).clone());
            labels.push(format!("cof({i},{j})"));
        }
    }
    let n = generators.len();

    // one full Cauchy relation as a coefficient vector: row `i` of the
    // matrix against cofactor column `k`
    let relation = |i: u32, k: u32| -> Builder {
        let mut b = Builder::new(&ring, n);
        for j in 1..=m {
            let c = mat.entry_poly(i, j);
            if !c.is_zero() {
                b.add(cofactor_index(m, j, k), c);
            }
        }
        b
    };

    let mut syzygies = Vec::new();
    let mut family_blocks = Vec::new();

    for k in 1..=m - r {
        let rows: Vec<u32> = (k.max(2) - 1..=m).filter(|&i| i != k).collect();
        family_blocks.push(rows.len());
        for i in rows {
            let tag = if k == 1 { "eqsym1" } else { "eqsym2" };
            syzygies.push(relation(i, k).finish(tag));
        }
    }

    for l in 1..=r {
        family_blocks.push((r - l + 1) as usize);
        for k in 0..=r - l {
            if k == l {
                // difference of the diagonal Cauchy relations for rows
                // m-r+l and 1; both equal the determinant
                let mut b = relation(m - r + l, m - r + l);
                for j in 1..=m {
                    let c = mat.entry_poly(1, j);
                    if !c.is_zero() {
                        b.add(cofactor_index(m, j, 1), c.scale_int(-1));
                    }
                }
                syzygies.push(b.finish("eqsym3"));
            } else {
                syzygies.push(relation(m - r + k, m - r + l).finish("eqsym3"));
            }
        }
    }

    let generator_blocks: Vec<usize> = (1..=m).map(|b| (m - b + 1) as usize).collect();

    Ok(LinearSyzygySet {
        ring,
        generators,
        labels,
        vars,
        syzygies,
        generator_blocks,
        family_blocks,
    })
}

/// Solves for a basis of ALL linear syzygies of `gens` by exact nullspace
/// computation: the unknowns are the coefficients of one candidate linear
/// form (over `vars`) per generator, and each monomial of the combined
/// product contributes one homogeneous equation.
pub fn linear_syzygy_space(gens: &[Poly], vars: &[VarId]) -> Result<LinearSyzygySet, Error> {
    if gens.is_empty() {
        return Err(Error::Unsupported(
            "no generators given to the syzygy solver".to_string(),
        ));
    }
    let ring = Arc::clone(gens[0].ring());
    let degree = gens[0].degree();
    for g in gens {
        if !Arc::ptr_eq(g.ring(), &ring) && g.ring().as_ref() != ring.as_ref() {
            return Err(Error::MismatchedRings);
        }
        if !g.is_homogeneous() || g.degree() != degree {
            return Err(Error::Unsupported(
                "syzygy solver needs homogeneous generators of one degree".to_string(),
            ));
        }
    }

    let n = gens.len();
    let v = vars.len();
    // products x_w * gen_g, indexed by unknown g*v + w
    let mut products = Vec::with_capacity(n * v);
    for g in gens {
        for &w in vars {
            products.push(&Poly::var(&ring, w) * g);
        }
    }
    let mut row_of: HashMap<crate::ring::Monomial, usize> = HashMap::new();
    for p in &products {
        for (mono, _) in p.terms_desc() {
            let next = row_of.len();
            row_of.entry(mono.clone()).or_insert(next);
        }
    }
    let nrows = row_of.len();
    let mut rows = vec![vec![BigRational::zero(); n * v]; nrows];
    for (col, p) in products.iter().enumerate() {
        for (mono, c) in p.terms_desc() {
            rows[row_of[mono]][col] = c.clone();
        }
    }

    let basis = linalg::nullspace(&rows, n * v);
    let syzygies = basis
        .into_iter()
        .map(|vec| {
            let coeffs = (0..n)
                .map(|g| {
                    let mut form = Poly::zero(&ring);
                    for (w, &var) in vars.iter().enumerate() {
                        let c = &vec[g * v + w];
                        if !c.is_zero() {
                            form += &Poly::var(&ring, var).scale(c);
                        }
                    }
                    form
                })
                .collect();
            SyzygyVec::new(coeffs, "solved")
        })
        .collect();

    Ok(LinearSyzygySet {
        ring,
        generators: gens.to_vec(),
        labels: (0..n).map(|k| format!("gen{k}")).collect(),
        vars: vars.to_vec(),
        syzygies,
        generator_blocks: Vec::new(),
        family_blocks: Vec::new(),
    })
}

/// Builds the solved syzygy set for the gradient of a degeneration.
pub fn gradient_syzygy_space(degen: &Degeneration) -> Result<LinearSyzygySet, Error> {
    let mat = degen.build()?;
    let f = mat.determinant();
    if f.is_zero() {
        return Err(Error::Unsupported(
            "zero determinant has no gradient syzygies".to_string(),
        ));
    }
    let gens: Vec<Poly> = mat
        .surviving_vars()
        .iter()
        .map(|&v| f.derivative(v))
        .collect();
    linear_syzygy_space(&gens, mat.surviving_vars())
}

fn binom2(n: u32) -> usize {
    (n as usize * (n as usize - 1)) / 2
}

/// `C(m+1,2) - 2`, the expected count and rank for the cloning family.
pub fn expected_cloning_count(m: u32) -> usize {
    binom2(m + 1) - 2
}

/// `C(m+1,2) - 1`, the expected count and rank for the sparse family.
pub fn expected_sparse_count(m: u32) -> usize {
    binom2(m + 1) - 1
}
