//! Dual varieties and polar behavior of the degenerate determinants.
//!
//! The polar map of a hypersurface `V(f)` sends a point to the tuple of
//! first partials of `f`; the closure of the image of `V(f)` itself under
//! this map is the dual variety. For the determinantal degenerations built
//! by this crate the dual is cut out by minors of a "ladder" region of a
//! symmetric matrix in dual coordinates. This module constructs those
//! ladders exactly, substitutes cofactors for the dual coordinates to
//! verify containment or collapse, measures the dual dimension through
//! exact Hessian ranks at rational points sampled on the hypersurface, and
//! counts how many times `f` divides its own Hessian determinant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::BTreeSet;
use std::sync::Arc;

use crate::calculus::HessianData;
use crate::certificates::monomials_of_degree;
use crate::linalg::{self, det_poly};
use crate::matrix::{eval_matrix, CofactorTable, Degeneration};
use crate::ring::{Poly, RationalPoint, Ring, VarId};
use crate::sampling::{Sampler, MAX_RESAMPLE};
use crate::Error;

/// A family of equal-size minors of the symmetric matrix of dual
/// coordinates, restricted to a ladder-shaped set of positions.
///
/// The mask records which symmetric positions the ladder keeps; every
/// generator is a minor supported entirely on masked-in positions, and the
/// generators are pairwise distinct nonzero polynomials.
#[derive(Debug, Clone)]
pub struct MinorSystem {
    ring: Arc<Ring>,
    mask: Vec<VarId>,
    minor_size: u32,
    generators: Vec<Poly>,
}

impl MinorSystem {
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Symmetric positions kept by the ladder, in row-major order.
    pub fn mask(&self) -> &[VarId] {
        &self.mask
    }

    pub fn minor_size(&self) -> u32 {
        self.minor_size
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn contains_position(&self, i: u32, j: u32) -> bool {
        self.mask.binary_search(&VarId::new(i, j)).is_ok()
    }

    /// Structural self-check: generators are nonzero, pairwise distinct,
    /// homogeneous of the minor size, and supported inside the mask.
    pub fn verify(&self) -> bool {
        for (k, g) in self.generators.iter().enumerate() {
            if g.is_zero() || !g.is_homogeneous() || g.degree() != Some(self.minor_size) {
                return false;
            }
            if !g
                .support_vars()
                .iter()
                .all(|v| self.mask.binary_search(v).is_ok())
            {
                return false;
            }
            if self.generators[..k].contains(g) {
                return false;
            }
        }
        true
    }
}

/// Replaces every dual coordinate of `p` by the matching cofactor from
/// `table`, landing in the ring the cofactors live in.
pub fn substitute_cofactors(p: &Poly, table: &CofactorTable) -> Poly {
    let images: Vec<Poly> = p
        .ring()
        .vars()
        .iter()
        .map(|v| table.delta(v.row(), v.col()).clone())
        .collect();
    p.compose(&images)
}

/// All 2x2 minors of the symmetric matrix of `ring` whose four corner
/// positions all lie in `mask`, deduplicated (transposed rectangles give
/// the same polynomial).
fn two_by_two_ladder(ring: &Arc<Ring>, mask: &BTreeSet<VarId>) -> Vec<Poly> {
    let m = ring.matrix_size();
    let mut gens: Vec<Poly> = Vec::new();
    for i in 1..=m {
        for k in (i + 1)..=m {
            for j in 1..=m {
                for l in (j + 1)..=m {
                    let corners = [(i, j), (i, l), (k, j), (k, l)];
                    if !corners
                        .iter()
                        .all(|&(a, b)| mask.contains(&VarId::new(a, b)))
                    {
                        continue;
                    }
                    let gen = &(&Poly::var(ring, VarId::new(i, j))
                        * &Poly::var(ring, VarId::new(k, l)))
                        - &(&Poly::var(ring, VarId::new(i, l))
                            * &Poly::var(ring, VarId::new(k, j)));
                    if gen.is_zero() || gens.contains(&gen) {
                        continue;
                    }
                    gens.push(gen);
                }
            }
        }
    }
    gens
}

/// Ladder of 2x2 minors for the dual of the cloned determinant: the mask
/// keeps every symmetric position except the two lowest diagonal corners
/// `(m-1, m-1)` and `(m, m)`.
pub fn dual_ladder_clone(m: u32) -> Result<MinorSystem, Error> {
    if m < 3 {
        return Err(Error::Unsupported(format!(
            "the cloned ladder needs matrix size at least 3, got {m}"
        )));
    }
    let ring = Ring::symmetric_with_prefix(m, "y");
    let mask: BTreeSet<VarId> = ring
        .vars()
        .iter()
        .copied()
        .filter(|v| !(v.row() == v.col() && v.row() >= m - 1))
        .collect();
    let generators = two_by_two_ladder(&ring, &mask);
    Ok(MinorSystem {
        ring,
        mask: mask.into_iter().collect(),
        minor_size: 2,
        generators,
    })
}

/// Ladder of 2x2 minors for the dual of the sparsed determinant: the mask
/// keeps the positions `(i, j)` with `i + j <= 2m - r`, i.e. exactly the
/// positions that survive the sparsing.
pub fn dual_ladder_sparse(m: u32, r: u32) -> Result<MinorSystem, Error> {
    if m < 2 || r + 2 > m {
        return Err(Error::InvalidDegeneration(format!(
            "the sparse ladder needs 0 <= r <= m - 2, got m={m}, r={r}"
        )));
    }
    let ring = Ring::symmetric_with_prefix(m, "y");
    let mask: BTreeSet<VarId> = ring
        .vars()
        .iter()
        .copied()
        .filter(|v| v.row() + v.col() <= 2 * m - r)
        .collect();
    let generators = two_by_two_ladder(&ring, &mask);
    Ok(MinorSystem {
        ring,
        mask: mask.into_iter().collect(),
        minor_size: 2,
        generators,
    })
}

/// Checks that every ladder generator, after cofactor substitution, is
/// exactly divisible by the determinant — the algebraic form of "the image
/// of the polar map lies on the ladder variety".
pub fn ladder_divisibility_check(
    system: &MinorSystem,
    table: &CofactorTable,
) -> Result<bool, Error> {
    let f = table.det();
    if f.is_zero() {
        return Err(Error::ZeroDivisor);
    }
    for gen in system.generators() {
        let substituted = substitute_cofactors(gen, table);
        if substituted.divide_exact(f)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that every ladder generator collapses to the zero polynomial
/// after cofactor substitution (not merely to a multiple of the
/// determinant). This is the characteristic collapse of the polar ladder.
pub fn ladder_vanishing_check(system: &MinorSystem, table: &CofactorTable) -> bool {
    system
        .generators()
        .iter()
        .all(|g| substitute_cofactors(g, table).is_zero())
}

/// Outcome of testing the extra quadric that the dual of the cloned
/// determinant satisfies beyond the 2x2 ladder minors.
#[derive(Debug, Clone)]
pub struct QuadricReport {
    /// The quadric itself, in dual coordinates.
    pub quadric: Poly,
    /// After substituting cofactors (with the doubled diagonal coordinate
    /// standing for the sum of the two cloned cofactors), the quadric is
    /// exactly divisible by the determinant.
    pub divisible: bool,
    /// The quadric is not a rational combination of the ladder minors.
    pub outside_ladder_span: bool,
}

impl QuadricReport {
    pub fn passed(&self) -> bool {
        self.divisible && self.outside_ladder_span
    }
}

/// Builds the quadric `y_{1,1} y_{m-1,m-1} - y_{1,m-1}^2 - y_{1,m}^2` and
/// verifies that it vanishes on the image of the polar map of the cloned
/// determinant (via exact divisibility) while lying outside the linear
/// span of the ladder minors.
pub fn quadric_check_clone(m: u32) -> Result<QuadricReport, Error> {
    let ladder = dual_ladder_clone(m)?;
    let yring = Arc::clone(ladder.ring());
    let y = |i: u32, j: u32| Poly::var(&yring, VarId::new(i, j));
    let quadric = &(&y(1, 1) * &y(m - 1, m - 1))
        - &(&(&y(1, m - 1) * &y(1, m - 1)) + &(&y(1, m) * &y(1, m)));

    let mat = Degeneration::MdClone { m }.build()?;
    let table = mat.cofactors();
    // The doubled diagonal coordinate of the dual stands for the sum of
    // the two cofactors that the cloning identifies.
    let images: Vec<Poly> = yring
        .vars()
        .iter()
        .map(|v| {
            if v.row() == m - 1 && v.col() == m - 1 {
                table.delta(m - 1, m - 1) + table.delta(m, m)
            } else {
                table.delta(v.row(), v.col()).clone()
            }
        })
        .collect();
    let substituted = quadric.compose(&images);
    let divisible = substituted.divide_exact(table.det())?.is_some();

    // Exact span check on quadric coefficient vectors.
    let monoms = monomials_of_degree(&yring, yring.vars(), 2);
    let coeff_row = |p: &Poly| -> Vec<BigRational> {
        monoms.iter().map(|mono| p.coeff(mono)).collect()
    };
    let mut rows: Vec<Vec<BigRational>> = ladder.generators().iter().map(coeff_row).collect();
    let base_rank = linalg::rank(&rows);
    rows.push(coeff_row(&quadric));
    let outside_ladder_span = linalg::rank(&rows) > base_rank;

    Ok(QuadricReport {
        quadric,
        divisible,
        outside_ladder_span,
    })
}

/// Enumerates the `k`-element subsets of `{1, ..., n}` in lexicographic
/// order.
fn index_subsets(n: u32, k: usize) -> Vec<Vec<u32>> {
    fn rec(start: u32, n: u32, k: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let needed = k - cur.len();
        let mut v = start;
        while v + (needed as u32) - 1 <= n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
            v += 1;
        }
    }
    let mut out = Vec::new();
    if k == 0 {
        out.push(Vec::new());
        return out;
    }
    if (k as u32) > n {
        return out;
    }
    let mut cur = Vec::with_capacity(k);
    rec(1, n, k, &mut cur, &mut out);
    out
}

/// Minors of the dual-coordinate matrix that the polar map of the sparsed
/// determinant collapses to zero: all `(m-r)`-minors with row indices
/// `i_1 < ... < i_{m-r}` drawn from the first `m - 1` rows and column
/// indices bounded by `m - i_{m-r} + (m - r - 1)`.
pub fn polar_ladder_sparse(m: u32, r: u32) -> Result<MinorSystem, Error> {
    if m < 3 || r < 1 || r + 2 > m {
        return Err(Error::InvalidDegeneration(format!(
            "the polar ladder needs 1 <= r <= m - 2, got m={m}, r={r}"
        )));
    }
    let size = (m - r) as usize;
    let ring = Ring::symmetric_with_prefix(m, "y");
    let mut generators: Vec<Poly> = Vec::new();
    let mut mask: BTreeSet<VarId> = BTreeSet::new();
    for rows in index_subsets(m - 1, size) {
        let imax = rows[size - 1];
        let jmax = m - imax + (m - r - 1);
        for cols in index_subsets(jmax, size) {
            let entries: Vec<Vec<Poly>> = rows
                .iter()
                .map(|&i| {
                    cols.iter()
                        .map(|&j| Poly::var(&ring, VarId::new(i, j)))
                        .collect()
                })
                .collect();
            let gen = det_poly(&entries);
            if gen.is_zero() {
                continue;
            }
            for &i in &rows {
                for &j in &cols {
                    mask.insert(VarId::new(i, j));
                }
            }
            if !generators.contains(&gen) {
                generators.push(gen);
            }
        }
    }
    Ok(MinorSystem {
        ring,
        mask: mask.into_iter().collect(),
        minor_size: m - r,
        generators,
    })
}

/// Outcome of checking the equation cutting out the dual hypersurface of
/// the cloned determinant.
#[derive(Debug, Clone)]
pub struct HypersurfaceEquationReport {
    /// The candidate dual equation in dual coordinates: the difference of
    /// the two lowest diagonal cofactors of a generic symmetric matrix.
    pub equation: Poly,
    pub degree: u32,
    pub expected_degree: u32,
    /// Composing the equation with the polar map gives the zero
    /// polynomial.
    pub substitution_vanishes: bool,
    /// The two lowest diagonal entries of the double adjugate agree, and
    /// both equal `f^(m-2)` times the cloned variable.
    pub corner_entries_match: bool,
}

impl HypersurfaceEquationReport {
    pub fn passed(&self) -> bool {
        self.substitution_vanishes && self.corner_entries_match && self.degree == self.expected_degree
    }
}

/// Diagonal entry `(k, k)` (0-based) of the adjugate of `entries`, i.e.
/// the determinant of `entries` with row `k` and column `k` removed.
fn diagonal_adjugate_entry(entries: &[Vec<Poly>], k: usize) -> Poly {
    let sub: Vec<Vec<Poly>> = entries
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != k)
        .map(|(_, row)| {
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, p)| p.clone())
                .collect()
        })
        .collect();
    det_poly(&sub)
}

/// Verifies the equation of the dual hypersurface of the cloned
/// determinant: the difference of the two lowest diagonal cofactors of a
/// generic symmetric matrix in dual coordinates vanishes identically under
/// the polar map, has degree `m - 1`, and the matching diagonal entries of
/// the double adjugate coincide (both equal `f^(m-2)` times the cloned
/// variable).
pub fn hypersurface_equation_clone(m: u32) -> Result<HypersurfaceEquationReport, Error> {
    if m < 3 {
        return Err(Error::Unsupported(format!(
            "the dual equation of the cloned determinant needs m >= 3, got {m}"
        )));
    }
    let ymat = Degeneration::Generic { m }.build_with_prefix("y")?;
    let ytable = ymat.cofactors();
    let equation = ytable.delta(m, m) - ytable.delta(m - 1, m - 1);
    let degree = equation.degree().unwrap_or(0);

    let mat = Degeneration::MdClone { m }.build()?;
    let table = mat.cofactors();
    let substituted = substitute_cofactors(&equation, &table);
    let substitution_vanishes = substituted.is_zero();

    let adj = table.adjugate();
    let n = m as usize;
    let expected =
        &table.det().pow(m - 2) * &Poly::var(mat.ring(), VarId::new(m - 1, m - 1));
    let corner_low = diagonal_adjugate_entry(&adj, n - 2);
    let corner_high = diagonal_adjugate_entry(&adj, n - 1);
    let corner_entries_match = corner_low == expected && corner_high == expected;

    Ok(HypersurfaceEquationReport {
        equation,
        degree,
        expected_degree: m - 1,
        substitution_vanishes,
        corner_entries_match,
    })
}

/// A rational point lying exactly on the hypersurface `V(f)`, obtained by
/// solving for the `(1,1)` coordinate, in which `f` is linear.
#[derive(Debug, Clone)]
pub struct HypersurfacePoint {
    pub point: RationalPoint,
    /// The coordinate that was solved for (always the `(1,1)` position).
    pub solved: VarId,
    /// Value of the linear coefficient of the solved coordinate at the
    /// point; nonzero by construction.
    pub denominator: BigRational,
}

/// Splits `f` as `x_{1,1} * f1 + g` with neither part involving
/// `x_{1,1}`; errors when `f` is not linear in that coordinate.
fn split_corner_linear(f: &Poly) -> Result<(Poly, Poly), Error> {
    let ring = f.ring();
    let corner = VarId::new(1, 1);
    let k = ring.var_index(corner).ok_or_else(|| {
        Error::Unsupported("the ring has no (1,1) coordinate to solve for".to_string())
    })?;
    let mut linear_terms = Vec::new();
    let mut rest_terms = Vec::new();
    for (mono, c) in f.terms_desc() {
        match mono.exp(k) {
            0 => rest_terms.push((mono.clone(), c.clone())),
            1 => {
                let mut exps = mono.exps().to_vec();
                exps[k] = 0;
                linear_terms.push((crate::ring::Monomial::from_exps(exps), c.clone()));
            }
            _ => {
                return Err(Error::Unsupported(
                    "the equation is not linear in the (1,1) coordinate".to_string(),
                ))
            }
        }
    }
    Ok((
        Poly::from_terms(ring, linear_terms),
        Poly::from_terms(ring, rest_terms),
    ))
}

/// Draws rational points until the linear coefficient of the `(1,1)`
/// coordinate is nonzero, then solves that coordinate so the point lies
/// exactly on `V(f)`. Fails after the resampling budget is exhausted.
pub fn sample_on_hypersurface(
    f: &Poly,
    sampler: &mut Sampler,
) -> Result<HypersurfacePoint, Error> {
    let (f1, g) = split_corner_linear(f)?;
    if f1.is_zero() {
        return Err(Error::Unsupported(
            "the equation does not involve the (1,1) coordinate".to_string(),
        ));
    }
    let ring = f.ring();
    let corner = VarId::new(1, 1);
    for _ in 0..MAX_RESAMPLE {
        let mut point = sampler.sample_point(ring);
        let denominator = f1.evaluate(&point);
        if denominator.is_zero() {
            continue;
        }
        let value = -(g.evaluate(&point)) / denominator.clone();
        point.set(corner, value);
        debug_assert!(f.evaluate(&point).is_zero());
        return Ok(HypersurfacePoint {
            point,
            solved: corner,
            denominator,
        });
    }
    Err(Error::SamplingFailed(format!(
        "no point with a usable (1,1) coefficient after {MAX_RESAMPLE} draws"
    )))
}

/// Seeded convenience wrapper around [`sample_on_hypersurface`].
pub fn sample_on_hypersurface_seeded(f: &Poly, seed: u64) -> Result<HypersurfacePoint, Error> {
    sample_on_hypersurface(f, &mut Sampler::new(seed))
}

/// Solves the `(1,1)` coordinate on a caller-supplied assignment of the
/// remaining coordinates. Returns `None` when the linear coefficient of
/// that coordinate vanishes at the assignment.
pub fn solve_corner_coordinate(
    f: &Poly,
    point: &RationalPoint,
) -> Result<Option<HypersurfacePoint>, Error> {
    let (f1, g) = split_corner_linear(f)?;
    let denominator = f1.evaluate(point);
    if denominator.is_zero() {
        return Ok(None);
    }
    let mut point = point.clone();
    let corner = VarId::new(1, 1);
    let value = -(g.evaluate(&point)) / denominator.clone();
    point.set(corner, value);
    debug_assert!(f.evaluate(&point).is_zero());
    Ok(Some(HypersurfacePoint {
        point,
        solved: corner,
        denominator,
    }))
}

/// Sampled estimate of the dimension of the dual variety of `V(f)`.
#[derive(Debug, Clone)]
pub struct DualDimensionReport {
    /// Largest Hessian rank observed at the sampled hypersurface points.
    pub rank: usize,
    /// Rank observed at each trial, in order.
    pub ranks: Vec<usize>,
    /// `rank - 2`: the dimension of the dual variety at a general point of
    /// the hypersurface.
    pub dimension: usize,
    pub trials: u32,
    pub seed: u64,
}

/// Estimates the dimension of the dual variety: at a general point of
/// `V(f)` the rank of the Hessian of `f` exceeds the dual dimension by
/// exactly two. Samples `trials` exact rational points on the
/// hypersurface and takes the largest rank seen.
pub fn dual_dimension(f: &Poly, trials: u32, seed: u64) -> Result<DualDimensionReport, Error> {
    let vars = f.support_vars();
    if vars.is_empty() {
        return Err(Error::Unsupported(
            "a constant equation has no dual variety".to_string(),
        ));
    }
    let hess = HessianData::compute(f, &vars);
    let mut sampler = Sampler::new(seed);
    let trials = trials.max(1);
    let mut ranks = Vec::with_capacity(trials as usize);
    for _ in 0..trials {
        let hp = sample_on_hypersurface(f, &mut sampler)?;
        ranks.push(hess.rank_at(&hp.point));
    }
    let rank = ranks.iter().copied().max().unwrap_or(0);
    Ok(DualDimensionReport {
        rank,
        ranks,
        dimension: rank.saturating_sub(2),
        trials,
        seed,
    })
}

/// A degeneration is ladder-anchored when its defining endomorphism fixes
/// every position `(i, j)` with `i + j <= m + 2`. Both built-in
/// degenerations qualify, and for any such degeneration the dual variety
/// of the determinant keeps dimension at least `m - 1`.
pub fn is_ladderlike(degen: &Degeneration) -> Result<bool, Error> {
    let m = degen.m();
    let ring = Ring::symmetric(m);
    let endo = degen.endomorphism(&ring)?;
    Ok(ring
        .vars()
        .iter()
        .all(|&v| v.row() + v.col() > m + 2 || endo.image(v) == Some(v)))
}

/// How the multiplicity of `f` inside its Hessian determinant is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MultiplicityMethod {
    /// Expand the Hessian determinant exactly (allowed only up to
    /// `max_vars` variables) and divide by `f` repeatedly.
    ExactDivision { max_vars: usize },
    /// Restrict the Hessian to a random rational line through a point of
    /// `V(f)` and count the vanishing order of its determinant along the
    /// line. Probabilistic but deterministic for a fixed seed.
    LineRestriction { seed: u64 },
}

/// Result of measuring how many times `f` divides its Hessian determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityReport {
    /// Exact power of `f` dividing the Hessian determinant (for the line
    /// method, the vanishing order along the sampled line).
    pub k: u32,
    /// Degree of the residual factor once `f^k` is removed. For the line
    /// method this is inferred from degrees along the line.
    pub residual_degree: u32,
    /// `"exact_division"` or `"line_restriction"`.
    pub method: &'static str,
    /// Set when the Hessian determinant is identically zero, in which case
    /// no multiplicity exists and `k` is reported as zero.
    pub hessian_vanishes: bool,
}

/// Measures the multiplicity of `f` inside its own Hessian determinant.
pub fn hessian_multiplicity(
    f: &Poly,
    method: MultiplicityMethod,
) -> Result<MultiplicityReport, Error> {
    let vars = f.support_vars();
    if vars.is_empty() {
        return Err(Error::Unsupported(
            "a constant equation has no Hessian".to_string(),
        ));
    }
    let hess = HessianData::compute(f, &vars);
    match method {
        MultiplicityMethod::ExactDivision { max_vars } => {
            let h = hess.determinant_exact(max_vars)?;
            if h.is_zero() {
                return Ok(MultiplicityReport {
                    k: 0,
                    residual_degree: 0,
                    method: "exact_division",
                    hessian_vanishes: true,
                });
            }
            let mut k = 0u32;
            let mut q = h;
            while let Some(next) = q.divide_exact(f)? {
                k += 1;
                q = next;
            }
            Ok(MultiplicityReport {
                k,
                residual_degree: q.degree().unwrap_or(0),
                method: "exact_division",
                hessian_vanishes: false,
            })
        }
        MultiplicityMethod::LineRestriction { seed } => {
            line_restriction_multiplicity(f, &hess, seed)
        }
    }
}

/// Coefficients (constant term first) of the unique polynomial of degree
/// below `values.len()` taking `values[t]` at `t = 0, 1, 2, ...`; Newton
/// divided differences over exact rationals.
fn interpolate_at_integers(values: &[BigRational]) -> Vec<BigRational> {
    let n = values.len();
    if n == 0 {
        return Vec::new();
    }
    let mut table = values.to_vec();
    let mut newton = Vec::with_capacity(n);
    newton.push(table[0].clone());
    for level in 1..n {
        let step = BigRational::from_integer(BigInt::from(level as i64));
        for i in 0..(n - level) {
            table[i] = (&table[i + 1] - &table[i]) / &step;
        }
        newton.push(table[0].clone());
    }
    let mut coeffs = vec![BigRational::zero(); n];
    let mut basis = vec![BigRational::one()];
    for (k, nk) in newton.iter().enumerate() {
        for (e, b) in basis.iter().enumerate() {
            coeffs[e] += nk * b;
        }
        if k + 1 < n {
            let root = BigRational::from_integer(BigInt::from(k as i64));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (e, b) in basis.iter().enumerate() {
                next[e + 1] += b;
                next[e] -= &root * b;
            }
            basis = next;
        }
    }
    coeffs
}

fn order_of_vanishing(coeffs: &[BigRational]) -> Option<usize> {
    coeffs.iter().position(|c| !c.is_zero())
}

fn last_nonzero(coeffs: &[BigRational]) -> Option<usize> {
    coeffs.iter().rposition(|c| !c.is_zero())
}

/// Multiplicity along a random rational line: picks an exact point of
/// `V(f)` and a random direction, restricts the Hessian entrywise to the
/// line, recovers its determinant there by exact interpolation, and reads
/// off the vanishing order at the base point.
fn line_restriction_multiplicity(
    f: &Poly,
    hess: &HessianData,
    seed: u64,
) -> Result<MultiplicityReport, Error> {
    let ring = f.ring();
    let vars = hess.vars();
    let fdeg = f.degree().unwrap_or(0);
    let entry_degree = hess
        .entries()
        .iter()
        .flatten()
        .filter_map(|p| p.degree())
        .max()
        .unwrap_or(0);
    let det_bound = (vars.len() as u32) * entry_degree;
    let mut sampler = Sampler::new(seed);
    let mut vanishing_lines = 0u32;
    for _ in 0..MAX_RESAMPLE {
        let base = sample_on_hypersurface(f, &mut sampler)?;
        let mut direction = RationalPoint::origin(ring);
        for &v in vars {
            direction.set(
                v,
                BigRational::from_integer(BigInt::from(sampler.next_coord())),
            );
        }
        let at = |t: i64| -> RationalPoint {
            let step = BigRational::from_integer(BigInt::from(t));
            let mut pt = base.point.clone();
            for &v in vars {
                let value = base.point.get(v).clone() + &step * direction.get(v);
                pt.set(v, value);
            }
            pt
        };
        // The equation must vanish to order exactly one along the line.
        let fvals: Vec<BigRational> = (0..=fdeg as i64).map(|t| f.evaluate(&at(t))).collect();
        let fcoeffs = interpolate_at_integers(&fvals);
        if order_of_vanishing(&fcoeffs) != Some(1) {
            continue;
        }
        let fdeg_line = last_nonzero(&fcoeffs).expect("order one implies a nonzero coefficient");
        let hvals: Vec<BigRational> = (0..=det_bound as i64)
            .map(|t| linalg::det_rational(&eval_matrix(hess.entries(), &at(t))))
            .collect();
        let hcoeffs = interpolate_at_integers(&hvals);
        let Some(k) = order_of_vanishing(&hcoeffs) else {
            vanishing_lines += 1;
            continue;
        };
        let hdeg_line = last_nonzero(&hcoeffs).expect("a nonzero coefficient exists");
        let residual_degree = hdeg_line.saturating_sub(k * fdeg_line) as u32;
        return Ok(MultiplicityReport {
            k: k as u32,
            residual_degree,
            method: "line_restriction",
            hessian_vanishes: false,
        });
    }
    if vanishing_lines > 0 {
        Ok(MultiplicityReport {
            k: 0,
            residual_degree: 0,
            method: "line_restriction",
            hessian_vanishes: true,
        })
    } else {
        Err(Error::SamplingFailed(
            "no usable line through the hypersurface within the resampling budget".to_string(),
        ))
    }
}

/// Numerical Gorenstein test for the section ring of the sparsed
/// determinant: the symmetry of the socle degree holds exactly when
/// `2m - r - 1 = m + 1`, i.e. at the maximal sparsing `r = m - 2`.
pub fn gorenstein_check(m: u32, r: u32) -> Result<bool, Error> {
    if m < 3 || r + 2 > m {
        return Err(Error::InvalidDegeneration(format!(
            "the Gorenstein test needs m >= 3 and 0 <= r <= m - 2, got m={m}, r={r}"
        )));
    }
    Ok(2 * m - r - 1 == m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::zero_count;
    use crate::DEFAULT_SEED;

    fn yvar(ring: &Arc<Ring>, i: u32, j: u32) -> Poly {
        Poly::var(ring, VarId::new(i, j))
    }

    fn pair_count(m: u32) -> usize {
        (m * (m + 1) / 2) as usize
    }

    #[test]
    fn interpolation_recovers_exact_coefficients() {
        let q = |n: i64| BigRational::from_integer(BigInt::from(n));
        // (t - 1)(t - 2) = t^2 - 3t + 2 from its values at 0, 1, 2
        let coeffs = interpolate_at_integers(&[q(2), q(0), q(0)]);
        assert_eq!(coeffs, vec![q(2), q(-3), q(1)]);
        // constants survive
        assert_eq!(interpolate_at_integers(&[q(5)]), vec![q(5)]);
        // oversampling a quadratic pads with zero coefficients
        let coeffs = interpolate_at_integers(&[q(0), q(1), q(4), q(9), q(16)]);
        assert_eq!(coeffs[..2], [q(0), q(0)]);
        assert_eq!(coeffs[2], q(1));
        assert!(coeffs[3].is_zero() && coeffs[4].is_zero());
    }

    #[test]
    fn clone_ladder_has_single_generator_at_size_three() {
        let sys = dual_ladder_clone(3).unwrap();
        assert!(sys.verify());
        assert_eq!(sys.minor_size(), 2);
        assert_eq!(sys.mask().len(), pair_count(3) - 2);
        assert!(!sys.contains_position(2, 2));
        assert!(!sys.contains_position(3, 3));
        assert!(sys.contains_position(1, 3));
        assert_eq!(sys.len(), 1);
        let ring = Arc::clone(sys.ring());
        let expected = &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 3))
            - &(&yvar(&ring, 1, 2) * &yvar(&ring, 1, 3));
        assert_eq!(sys.generators()[0], expected);
    }

    #[test]
    fn clone_ladder_count_at_size_four() {
        let sys = dual_ladder_clone(4).unwrap();
        assert!(sys.verify());
        assert_eq!(sys.mask().len(), pair_count(4) - 2);
        assert_eq!(sys.len(), 10);
        assert!(dual_ladder_clone(2).is_err());
    }

    #[test]
    fn sparse_ladder_frozen_at_smallest_size() {
        let sys = dual_ladder_sparse(3, 1).unwrap();
        assert!(sys.verify());
        assert_eq!(sys.mask().len(), pair_count(3) - zero_count(1) as usize);
        assert_eq!(sys.len(), 3);
        let ring = Arc::clone(sys.ring());
        let expected = [
            &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 2)) - &(&yvar(&ring, 1, 2) * &yvar(&ring, 1, 2)),
            &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 3)) - &(&yvar(&ring, 1, 2) * &yvar(&ring, 1, 3)),
            &(&yvar(&ring, 1, 2) * &yvar(&ring, 2, 3)) - &(&yvar(&ring, 1, 3) * &yvar(&ring, 2, 2)),
        ];
        for gen in &expected {
            assert!(sys.generators().contains(gen), "missing {gen:?}");
        }
        // r = 0 keeps every position: the rank-one locus of the full matrix
        let full = dual_ladder_sparse(3, 0).unwrap();
        assert_eq!(full.mask().len(), pair_count(3));
        assert_eq!(full.len(), 6);
        // masked counts follow the zero count for larger sizes as well
        let wide = dual_ladder_sparse(4, 1).unwrap();
        assert_eq!(wide.mask().len(), pair_count(4) - zero_count(1) as usize);
        assert_eq!(wide.len(), 15);
        assert!(dual_ladder_sparse(4, 3).is_err());
    }

    #[test]
    fn ladder_substitutions_divide_the_determinant() {
        let cases: [(Degeneration, MinorSystem); 6] = [
            (
                Degeneration::MdClone { m: 3 },
                dual_ladder_clone(3).unwrap(),
            ),
            (
                Degeneration::MdClone { m: 4 },
                dual_ladder_clone(4).unwrap(),
            ),
            (
                Degeneration::Generic { m: 3 },
                dual_ladder_sparse(3, 0).unwrap(),
            ),
            (
                Degeneration::Sparse { m: 3, r: 1 },
                dual_ladder_sparse(3, 1).unwrap(),
            ),
            (
                Degeneration::Sparse { m: 4, r: 1 },
                dual_ladder_sparse(4, 1).unwrap(),
            ),
            (
                Degeneration::Sparse { m: 4, r: 2 },
                dual_ladder_sparse(4, 2).unwrap(),
            ),
        ];
        for (degen, sys) in &cases {
            let table = degen.build().unwrap().cofactors();
            assert!(
                ladder_divisibility_check(sys, &table).unwrap(),
                "ladder substitution not divisible for {}",
                degen.label()
            );
        }
    }

    #[test]
    fn quadric_lies_on_clone_dual_beyond_the_ladder() {
        for m in [3, 4] {
            let report = quadric_check_clone(m).unwrap();
            assert!(report.divisible, "quadric not divisible at m={m}");
            assert!(
                report.outside_ladder_span,
                "quadric inside ladder span at m={m}"
            );
            assert!(report.passed());
            assert_eq!(report.quadric.degree(), Some(2));
        }
    }

    #[test]
    fn polar_ladder_frozen_small_cases() {
        let sys = polar_ladder_sparse(3, 1).unwrap();
        assert!(sys.verify());
        assert_eq!(sys.minor_size(), 2);
        assert_eq!(sys.len(), 1);
        let ring = Arc::clone(sys.ring());
        let expected = &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 2))
            - &(&yvar(&ring, 1, 2) * &yvar(&ring, 1, 2));
        assert_eq!(sys.generators()[0], expected);

        let sys = polar_ladder_sparse(4, 1).unwrap();
        assert_eq!(sys.minor_size(), 3);
        assert_eq!(sys.len(), 1);
        let ring = Arc::clone(sys.ring());
        let principal: Vec<Vec<Poly>> = (1..=3)
            .map(|i| (1..=3).map(|j| yvar(&ring, i, j)).collect())
            .collect();
        assert_eq!(sys.generators()[0], det_poly(&principal));

        let sys = polar_ladder_sparse(4, 2).unwrap();
        assert_eq!(sys.minor_size(), 2);
        assert_eq!(sys.len(), 3);
        let ring = Arc::clone(sys.ring());
        let expected = [
            &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 2)) - &(&yvar(&ring, 1, 2) * &yvar(&ring, 1, 2)),
            &(&yvar(&ring, 1, 1) * &yvar(&ring, 2, 3)) - &(&yvar(&ring, 1, 3) * &yvar(&ring, 1, 2)),
            &(&yvar(&ring, 1, 2) * &yvar(&ring, 2, 3)) - &(&yvar(&ring, 1, 3) * &yvar(&ring, 2, 2)),
        ];
        for gen in &expected {
            assert!(sys.generators().contains(gen), "missing {gen:?}");
        }
        assert!(polar_ladder_sparse(3, 0).is_err());
        assert!(polar_ladder_sparse(4, 3).is_err());
    }

    #[test]
    fn polar_ladder_collapses_on_sparse_cofactors_only() {
        for (m, r) in [(3, 1), (4, 1), (4, 2)] {
            let sys = polar_ladder_sparse(m, r).unwrap();
            let table = Degeneration::Sparse { m, r }.build().unwrap().cofactors();
            assert!(
                ladder_vanishing_check(&sys, &table),
                "polar ladder did not vanish at m={m}, r={r}"
            );
        }
        // The cloned cofactors do not collapse the same minors: for the
        // smallest case the substituted minor is the determinant times a
        // variable, not zero.
        let sys = polar_ladder_sparse(3, 1).unwrap();
        let clone_table = Degeneration::MdClone { m: 3 }.build().unwrap().cofactors();
        assert!(!ladder_vanishing_check(&sys, &clone_table));
        let substituted = substitute_cofactors(&sys.generators()[0], &clone_table);
        let quotient = substituted
            .divide_exact(clone_table.det())
            .unwrap()
            .expect("divisible");
        assert_eq!(
            quotient,
            Poly::var(quotient.ring(), VarId::new(2, 2))
        );
    }

    #[test]
    fn clone_dual_equation_vanishes_under_the_polar_map() {
        for m in [3, 4] {
            let report = hypersurface_equation_clone(m).unwrap();
            assert!(report.substitution_vanishes, "no collapse at m={m}");
            assert!(report.corner_entries_match, "corners differ at m={m}");
            assert_eq!(report.degree, m - 1);
            assert!(report.passed());
        }
        assert!(hypersurface_equation_clone(2).is_err());
    }

    #[test]
    fn corner_sampling_solves_exactly() {
        let mat = Degeneration::MdClone { m: 3 }.build().unwrap();
        let f = mat.determinant();
        let ring = mat.ring();

        // frozen assignment: remaining coordinates (1, 1, 2, 3) force the
        // corner value 2/5 with linear coefficient -5
        let mut assignment = RationalPoint::origin(ring);
        assignment.set(VarId::new(1, 2), BigRational::from_integer(BigInt::from(1)));
        assignment.set(VarId::new(1, 3), BigRational::from_integer(BigInt::from(1)));
        assignment.set(VarId::new(2, 2), BigRational::from_integer(BigInt::from(2)));
        assignment.set(VarId::new(2, 3), BigRational::from_integer(BigInt::from(3)));
        let solved = solve_corner_coordinate(&f, &assignment)
            .unwrap()
            .expect("denominator is nonzero here");
        assert_eq!(solved.solved, VarId::new(1, 1));
        assert_eq!(
            solved.denominator,
            BigRational::from_integer(BigInt::from(-5))
        );
        assert_eq!(
            *solved.point.get(VarId::new(1, 1)),
            BigRational::new(BigInt::from(2), BigInt::from(5))
        );
        assert!(f.evaluate(&solved.point).is_zero());

        // seeded sampling lands exactly on the hypersurface, deterministically
        let a = sample_on_hypersurface_seeded(&f, DEFAULT_SEED).unwrap();
        let b = sample_on_hypersurface_seeded(&f, DEFAULT_SEED).unwrap();
        assert!(f.evaluate(&a.point).is_zero());
        assert!(!a.denominator.is_zero());
        assert_eq!(a.point, b.point);

        // a quadratic corner dependence is rejected
        let quad = Poly::term(ring, 1, &[(1, 1, 2)]) + Poly::term(ring, 1, &[(2, 2, 1)]);
        assert!(sample_on_hypersurface_seeded(&quad, DEFAULT_SEED).is_err());
    }

    #[test]
    fn dual_dimension_matches_frozen_ranks() {
        let clone3 = Degeneration::MdClone { m: 3 }.build().unwrap().determinant();
        let report = dual_dimension(&clone3, 6, DEFAULT_SEED).unwrap();
        assert_eq!(report.rank, 4);
        assert_eq!(report.dimension, 2);
        assert!(report.ranks.iter().all(|&r| r <= 4));

        let sparse41 = Degeneration::Sparse { m: 4, r: 1 }
            .build()
            .unwrap()
            .determinant();
        let report = dual_dimension(&sparse41, 6, DEFAULT_SEED).unwrap();
        assert_eq!(report.rank, 5);
        assert_eq!(report.dimension, 3);
        assert!(report.ranks.iter().all(|&r| r <= 5));

        let clone4 = Degeneration::MdClone { m: 4 }.build().unwrap().determinant();
        let report = dual_dimension(&clone4, 4, DEFAULT_SEED).unwrap();
        assert_eq!(report.rank, 5);
        assert_eq!(report.dimension, 3);
    }

    #[test]
    fn ladder_anchored_degenerations_keep_dual_dimension() {
        // both built-in families fix the low anti-triangle
        assert!(is_ladderlike(&Degeneration::MdClone { m: 3 }).unwrap());
        assert!(is_ladderlike(&Degeneration::MdClone { m: 5 }).unwrap());
        assert!(is_ladderlike(&Degeneration::Sparse { m: 4, r: 2 }).unwrap());
        assert!(is_ladderlike(&Degeneration::Generic { m: 4 }).unwrap());
        // moving a position on or below the anchored anti-triangle is not
        // ladder-anchored
        let bad = Degeneration::General {
            m: 3,
            images: vec![(VarId::new(2, 3), Some(VarId::new(1, 1)))],
        };
        assert!(!is_ladderlike(&bad).unwrap());
        let bad = Degeneration::General {
            m: 4,
            images: vec![(VarId::new(2, 3), Some(VarId::new(1, 3)))],
        };
        assert!(!is_ladderlike(&bad).unwrap());

        // custom ladder-anchored examples keep dual dimension >= m - 1,
        // i.e. Hessian rank >= m + 1 at hypersurface points
        let custom3 = Degeneration::General {
            m: 3,
            images: vec![(VarId::new(3, 3), Some(VarId::new(1, 2)))],
        };
        assert!(is_ladderlike(&custom3).unwrap());
        let f3 = custom3.build().unwrap().determinant();
        assert!(!f3.is_zero());
        let report = dual_dimension(&f3, 4, DEFAULT_SEED).unwrap();
        assert!(report.rank >= 4, "rank {} too small", report.rank);

        let custom4 = Degeneration::General {
            m: 4,
            images: vec![
                (VarId::new(3, 4), Some(VarId::new(1, 2))),
                (VarId::new(4, 4), Some(VarId::new(2, 2))),
            ],
        };
        assert!(is_ladderlike(&custom4).unwrap());
        let f4 = custom4.build().unwrap().determinant();
        assert!(!f4.is_zero());
        let report = dual_dimension(&f4, 4, DEFAULT_SEED).unwrap();
        assert!(report.rank >= 5, "rank {} too small", report.rank);
    }

    #[test]
    fn multiplicity_by_exact_division_smallest_clone() {
        let f = Degeneration::MdClone { m: 3 }.build().unwrap().determinant();
        let report =
            hessian_multiplicity(&f, MultiplicityMethod::ExactDivision { max_vars: 6 }).unwrap();
        assert_eq!(report.k, 1);
        assert_eq!(report.residual_degree, 2);
        assert_eq!(report.method, "exact_division");
        assert!(!report.hessian_vanishes);
    }

    #[test]
    fn multiplicity_flags_vanishing_hessian() {
        let f = Degeneration::Sparse { m: 3, r: 1 }
            .build()
            .unwrap()
            .determinant();
        let report =
            hessian_multiplicity(&f, MultiplicityMethod::ExactDivision { max_vars: 6 }).unwrap();
        assert!(report.hessian_vanishes);
        assert_eq!(report.k, 0);
        let report =
            hessian_multiplicity(&f, MultiplicityMethod::LineRestriction { seed: DEFAULT_SEED })
                .unwrap();
        assert!(report.hessian_vanishes);
        assert_eq!(report.k, 0);
    }

    #[test]
    fn multiplicity_line_restriction_agrees_and_scales() {
        let f3 = Degeneration::MdClone { m: 3 }.build().unwrap().determinant();
        let exact =
            hessian_multiplicity(&f3, MultiplicityMethod::ExactDivision { max_vars: 6 }).unwrap();
        let line =
            hessian_multiplicity(&f3, MultiplicityMethod::LineRestriction { seed: DEFAULT_SEED })
                .unwrap();
        assert_eq!(line.k, exact.k);
        assert_eq!(line.residual_degree, exact.residual_degree);
        assert_eq!(line.method, "line_restriction");

        // one size up the exact expansion is out of reach but the line
        // measurement still finds the multiplicity
        let f4 = Degeneration::MdClone { m: 4 }.build().unwrap().determinant();
        let report =
            hessian_multiplicity(&f4, MultiplicityMethod::LineRestriction { seed: DEFAULT_SEED })
                .unwrap();
        assert_eq!(report.k, 4);
        assert_eq!(report.residual_degree, 2);
    }

    #[test]
    fn gorenstein_truth_table() {
        for m in 3..=12u32 {
            for r in 0..=(m - 2) {
                let got = gorenstein_check(m, r).unwrap();
                assert_eq!(got, r == m - 2, "m={m}, r={r}");
            }
        }
        assert!(gorenstein_check(3, 2).is_err());
        assert!(gorenstein_check(2, 0).is_err());
    }

    #[test]
    fn subset_enumeration_is_lexicographic_and_complete() {
        assert_eq!(index_subsets(4, 2).len(), 6);
        assert_eq!(index_subsets(3, 3), vec![vec![1, 2, 3]]);
        assert_eq!(index_subsets(3, 4), Vec::<Vec<u32>>::new());
        assert_eq!(index_subsets(3, 0), vec![Vec::<u32>::new()]);
        let subs = index_subsets(4, 2);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
    }
}
