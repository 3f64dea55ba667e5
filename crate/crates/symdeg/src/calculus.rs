//! Gradients, Hessians, and rank certificates for degeneration determinants.
//!
//! The partial derivatives of a symmetric determinant are sums of signed
//! cofactors over the slots each variable occupies (the chain rule for
//! repeated entries): `2 * delta(i,j)` for an off-diagonal variable, a
//! single cofactor for an ordinary diagonal one, and a two-cofactor sum for
//! a cloned diagonal variable. Generic Hessian ranks are certified from
//! below by exact evaluation at seeded random integer points; Hessian
//! nonvanishing for the cloning family is certified exactly through a
//! monomial specialization.

use std::sync::Arc;

use crate::linalg::{self, DetMemo};
use crate::matrix::{eval_matrix, DegenMatrix, Degeneration};
use crate::ring::{Endomorphism, Poly, RationalPoint, Ring, VarId};
use crate::sampling::Sampler;
use crate::{Error, DEFAULT_TRIALS};

/// The partial derivatives of a polynomial, aligned with a variable list.
#[derive(Debug, Clone)]
pub struct GradientSet {
    ring: Arc<Ring>,
    vars: Vec<VarId>,
    partials: Vec<Poly>,
}

impl GradientSet {
    /// Differentiates `f` with respect to each variable in `vars`, in order.
    pub fn compute(f: &Poly, vars: &[VarId]) -> Result<Self, Error> {
        if f.is_zero() {
            return Err(Error::Unsupported(
                "gradient of the zero polynomial".to_string(),
            ));
        }
        Ok(GradientSet {
            ring: Arc::clone(f.ring()),
            vars: vars.to_vec(),
            partials: vars.iter().map(|&v| f.derivative(v)).collect(),
        })
    }

    /// Gradient of a degeneration determinant over its surviving variables.
    pub fn of_matrix(mat: &DegenMatrix) -> Result<Self, Error> {
        GradientSet::compute(&mat.determinant(), mat.surviving_vars())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn partials(&self) -> &[Poly] {
        &self.partials
    }

    pub fn partial(&self, v: VarId) -> Option<&Poly> {
        self.vars
            .iter()
            .position(|&w| w == v)
            .map(|k| &self.partials[k])
    }

    /// Euler's identity for a homogeneous `f`: `sum_v v * f_v = deg(f) * f`.
    pub fn satisfies_euler(&self, f: &Poly) -> bool {
        let mut acc = Poly::zero(&self.ring);
        for (&v, p) in self.vars.iter().zip(&self.partials) {
            acc += &(&Poly::var(&self.ring, v) * p);
        }
        match f.degree() {
            None => acc.is_zero(),
            Some(d) => acc == f.scale_int(d as i64),
        }
    }
}

/// Assembles the gradient from the cofactor table by summing signed
/// cofactors over the slots each surviving variable occupies.
pub fn gradient_from_cofactors(
    mat: &DegenMatrix,
    table: &crate::matrix::CofactorTable,
) -> GradientSet {
    let vars = mat.surviving_vars().to_vec();
    let partials = vars
        .iter()
        .map(|&v| {
            let mut acc = Poly::zero(mat.ring());
            for (i, j) in mat.slots_of(v) {
                acc += table.delta(i, j);
            }
            acc
        })
        .collect();
    GradientSet {
        ring: Arc::clone(mat.ring()),
        vars,
        partials,
    }
}

/// The symmetric matrix of second partials over a variable list.
#[derive(Debug, Clone)]
pub struct HessianData {
    ring: Arc<Ring>,
    vars: Vec<VarId>,
    entries: Vec<Vec<Poly>>,
}

impl HessianData {
    pub fn compute(f: &Poly, vars: &[VarId]) -> Self {
        let firsts: Vec<Poly> = vars.iter().map(|&v| f.derivative(v)).collect();
        let n = vars.len();
        let mut entries = vec![vec![Poly::zero(f.ring()); n]; n];
        for (a, fa) in firsts.iter().enumerate() {
            for b in a..n {
                let second = fa.derivative(vars[b]);
                entries[a][b] = second.clone();
                if b != a {
                    entries[b][a] = second;
                }
            }
        }
        HessianData {
            ring: Arc::clone(f.ring()),
            vars: vars.to_vec(),
            entries,
        }
    }

    pub fn size(&self) -> usize {
        self.vars.len()
    }

    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn entries(&self) -> &[Vec<Poly>] {
        &self.entries
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|a| (a + 1..n).all(|b| self.entries[a][b] == self.entries[b][a]))
    }

    /// Exact rank at one rational point.
    pub fn rank_at(&self, point: &RationalPoint) -> usize {
        linalg::rank(&eval_matrix(&self.entries, point))
    }

    /// Exact symbolic determinant; guarded by a size cap since the expansion
    /// grows superexponentially.
    pub fn determinant_exact(&self, max_size: usize) -> Result<Poly, Error> {
        if self.size() > max_size {
            return Err(Error::CapExceeded(format!(
                "exact Hessian determinant limited to {max_size} variables, got {}",
                self.size()
            )));
        }
        Ok(DetMemo::new(&self.entries).det())
    }
}

/// A sampled lower bound for a rank over the function field, together with
/// the evaluation points that realize it.
#[derive(Debug, Clone)]
pub struct RankEstimate {
    pub value: usize,
    pub witnesses: Vec<RationalPoint>,
    pub trials: u32,
    pub seed: u64,
}

/// Maximum exact rank of the Hessian over `trials` seeded integer points.
/// The result is a certified lower bound for the generic rank.
pub fn hessian_generic_rank(h: &HessianData, trials: u32, seed: u64) -> RankEstimate {
    let trials = trials.max(1);
    let mut sampler = Sampler::new(seed);
    let mut value = 0;
    let mut witnesses = Vec::new();
    for _ in 0..trials {
        let pt = sampler.sample_point(h.ring());
        let rank = h.rank_at(&pt);
        value = value.max(rank);
        witnesses.push(pt);
    }
    RankEstimate {
        value,
        witnesses,
        trials,
        seed,
    }
}

/// Outcome of the diagonal monomial specialization for the cloning family.
#[derive(Debug, Clone)]
pub struct SpecializationReport {
    /// Off-diagonal blocks of the specialized Hessian vanish identically.
    pub blocks_vanish: bool,
    /// The specialized Hessian determinant is a single nonzero term.
    pub det_is_monomial: bool,
    pub det: Poly,
}

impl SpecializationReport {
    pub fn passed(&self) -> bool {
        self.blocks_vanish && self.det_is_monomial
    }
}

/// Specializes the cloned determinant's Hessian by killing every variable
/// off the main diagonal `x_{1,1}, ..., x_{m-1,m-1}`.
///
/// The specialized matrix splits into a diagonal block on those variables
/// and a complement block with one nonzero entry per row, so its
/// determinant is a monomial; a nonzero image certifies that the Hessian
/// determinant itself is nonzero.
pub fn diagonal_specialization_check(mat: &DegenMatrix) -> Result<SpecializationReport, Error> {
    let m = mat.m();
    if !matches!(mat.degeneration(), Degeneration::MdClone { .. }) {
        return Err(Error::Unsupported(
            "diagonal specialization targets the cloning family".to_string(),
        ));
    }
    let ring = mat.ring();
    let diagonal: Vec<VarId> = (1..m).map(|i| VarId::new(i, i)).collect();
    let kill = Endomorphism::kill_complement(ring, &diagonal);
    let f = mat.determinant();
    let h = HessianData::compute(&f, mat.surviving_vars());
    let n = h.size();
    let specialized: Vec<Vec<Poly>> = h
        .entries()
        .iter()
        .map(|row| row.iter().map(|p| p.substitute(&kill)).collect())
        .collect();
    let in_diag: Vec<bool> = h.vars().iter().map(|v| diagonal.contains(v)).collect();
    let mut blocks_vanish = true;
    for a in 0..n {
        for b in 0..n {
            if in_diag[a] != in_diag[b] && !specialized[a][b].is_zero() {
                blocks_vanish = false;
            }
        }
    }
    let det = DetMemo::new(&specialized).det();
    let det_is_monomial = det.num_terms() == 1;
    Ok(SpecializationReport {
        blocks_vanish,
        det_is_monomial,
        det,
    })
}

/// How the Hessian nonvanishing half of a homaloidal certificate was settled.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HessianEvidence {
    /// Exact symbolic determinant, nonzero term-exactly.
    ExactDeterminant,
    /// Monomial specialization with vanishing off-blocks.
    DiagonalSpecialization,
    /// Full rank at a sampled point (a lower-bound certificate).
    SampledFullRank,
}

impl HessianEvidence {
    pub fn label(&self) -> &'static str {
        match self {
            HessianEvidence::ExactDeterminant => "exact_determinant",
            HessianEvidence::DiagonalSpecialization => "diagonal_specialization",
            HessianEvidence::SampledFullRank => "sampled_full_rank",
        }
    }
}

/// Joint certificate: nonvanishing Hessian plus maximal linear rank of the
/// gradient's syzygy matrix.
#[derive(Debug, Clone)]
pub struct HomaloidalReport {
    pub hessian_nonzero: bool,
    pub evidence: HessianEvidence,
    pub linear_rank: usize,
    pub max_linear_rank: usize,
    pub homaloidal: bool,
}

/// Runs both halves of the homaloidal certificate for a degeneration.
///
/// For the cloning family the syzygies are the constructed ones; for other
/// degenerations the full space of linear syzygies is solved exactly.
pub fn homaloidal_certificate(
    degen: &Degeneration,
    trials: u32,
    seed: u64,
) -> Result<HomaloidalReport, Error> {
    let mat = degen.build()?;
    let f = mat.determinant();
    if f.is_zero() {
        return Err(Error::Unsupported(
            "determinant vanished; no hypersurface to certify".to_string(),
        ));
    }
    let n = mat.surviving_vars().len();

    let (hessian_nonzero, evidence) = if n <= 6 {
        let h = HessianData::compute(&f, mat.surviving_vars());
        let det = h.determinant_exact(6)?;
        (!det.is_zero(), HessianEvidence::ExactDeterminant)
    } else if matches!(degen, Degeneration::MdClone { .. }) {
        let report = diagonal_specialization_check(&mat)?;
        (report.passed(), HessianEvidence::DiagonalSpecialization)
    } else {
        let h = HessianData::compute(&f, mat.surviving_vars());
        let estimate = hessian_generic_rank(&h, trials.max(DEFAULT_TRIALS), seed);
        (estimate.value == n, HessianEvidence::SampledFullRank)
    };

    let syzygies = match degen {
        Degeneration::MdClone { m } => crate::syzygy::cloning_syzygies(*m)?,
        _ => {
            let grad = GradientSet::of_matrix(&mat)?;
            crate::syzygy::linear_syzygy_space(grad.partials(), grad.vars())?
        }
    };
    let linear_rank = syzygies.rank(trials, seed);
    let max_linear_rank = syzygies.generators().len().saturating_sub(1);

    Ok(HomaloidalReport {
        hessian_nonzero,
        evidence,
        linear_rank,
        max_linear_rank,
        homaloidal: hessian_nonzero && linear_rank == max_linear_rank,
    })
}
