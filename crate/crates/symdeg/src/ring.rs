//! Sparse multivariate polynomials over the rationals.
//!
//! Variables are the entries `x_{i,j}` (with `1 <= i <= j <= m`) of an
//! `m x m` symmetric matrix, ordered row-major:
//! `x_{1,1}, x_{1,2}, ..., x_{1,m}, x_{2,2}, ..., x_{m,m}`.
//! Monomials are compared in the degree-graded reverse-lexicographic order
//! induced by that variable order: higher total degree wins, and at equal
//! degree the monomial with the *smaller* exponent on the last differing
//! variable (scanning from the end of the order) is the larger one.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::Error;

/// A matrix-entry variable `x_{i,j}`, kept normalized so that `i <= j`.
///
/// Requests for a position below the diagonal resolve to the mirror
/// position above it (the symmetric "hat" convention).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId {
    row: u32,
    col: u32,
}

impl VarId {
    /// Builds the variable at position `(i, j)`, normalizing to `i <= j`.
    pub fn new(i: u32, j: u32) -> Self {
        assert!(i >= 1 && j >= 1, "variable indices are 1-based");
        if i <= j {
            VarId { row: i, col: j }
        } else {
            VarId { row: j, col: i }
        }
    }

    pub fn row(&self) -> u32 {
        self.row
    }

    pub fn col(&self) -> u32 {
        self.col
    }

    pub fn is_diagonal(&self) -> bool {
        self.row == self.col
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

/// An ordered variable universe: the ambient polynomial ring.
///
/// Two polynomials may be combined only when they share a ring. The
/// variable order fixed here drives every reverse-lexicographic
/// comparison made downstream.
#[derive(Debug)]
pub struct Ring {
    prefix: String,
    vars: Vec<VarId>,
    index: BTreeMap<VarId, usize>,
    m: u32,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        self.prefix == other.prefix && self.vars == other.vars
    }
}
impl Eq for Ring {}

impl Ring {
    /// The ring of the `m x m` generic symmetric matrix, variables named `x`.
    pub fn symmetric(m: u32) -> Arc<Ring> {
        Ring::symmetric_with_prefix(m, "x")
    }

    /// Same variable universe with a custom display prefix (e.g. `y` for
    /// target coordinates of a polar map).
    pub fn symmetric_with_prefix(m: u32, prefix: &str) -> Arc<Ring> {
        assert!((2..=16).contains(&m), "matrix size out of supported range");
        let mut vars = Vec::new();
        for i in 1..=m {
            for j in i..=m {
                vars.push(VarId::new(i, j));
            }
        }
        Ring::from_vars(prefix, vars, m)
    }

    /// A one-variable ring, used for restrictions to a parametrized line.
    pub fn univariate(prefix: &str) -> Arc<Ring> {
        Ring::from_vars(prefix, vec![VarId::new(1, 1)], 1)
    }

    fn from_vars(prefix: &str, vars: Vec<VarId>, m: u32) -> Arc<Ring> {
        let index = vars.iter().copied().enumerate().map(|(k, v)| (v, k)).collect();
        Arc::new(Ring {
            prefix: prefix.to_string(),
            vars,
            index,
            m,
        })
    }

    /// Matrix size this ring was built for.
    pub fn matrix_size(&self) -> u32 {
        self.m
    }

    /// The variables in order.
    pub fn vars(&self) -> &[VarId] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, v: VarId) -> Option<usize> {
        self.index.get(&v).copied()
    }

    pub fn contains(&self, v: VarId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn prefix(&self) -> &str {
        &self.prefix
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_one() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        for (k, &e) in m.exps.iter().enumerate() {
            if e > 0 {
                let v = self.vars[k];
                if e == 1 {
                    parts.push(format!("{}{}", self.prefix, v));
                } else {
                    parts.push(format!("{}{}^{}", self.prefix, v, e));
                }
            }
        }
        parts.join("*")
    }
}

/// An exponent vector aligned with a ring's variable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u16>,
    degree: u32,
}

impl Monomial {
    pub fn one(width: usize) -> Self {
        Monomial {
            exps: vec![0; width],
            degree: 0,
        }
    }

    pub fn from_exps(exps: Vec<u16>) -> Self {
        let degree = exps.iter().map(|&e| e as u32).sum();
        Monomial { exps, degree }
    }

    /// Builds a monomial from `(variable, exponent)` pairs.
    pub fn from_pairs(ring: &Ring, pairs: &[(VarId, u16)]) -> Self {
        let mut exps = vec![0u16; ring.num_vars()];
        for &(v, e) in pairs {
            let k = ring
                .var_index(v)
                .unwrap_or_else(|| panic!("variable {v} not in ring"));
            exps[k] += e;
        }
        Monomial::from_exps(exps)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn exp(&self, k: usize) -> u16 {
        self.exps[k]
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.exps.len()).filter(|&k| self.exps[k] > 0).collect()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            exps,
            degree: self.degree + other.degree,
        }
    }

    /// Exact monomial quotient, or `None` when some exponent would go negative.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial {
            exps,
            degree: self.degree - other.degree,
        })
    }
}

/// Degree-graded reverse-lexicographic order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(
            self.exps.len(),
            other.exps.len(),
            "monomials from different variable universes"
        );
        match self.degree.cmp(&other.degree) {
            Ordering::Equal => {
                for k in (0..self.exps.len()).rev() {
                    match self.exps[k].cmp(&other.exps[k]) {
                        Ordering::Equal => continue,
                        // Smaller exponent on the last differing variable wins.
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            unequal => unequal,
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Compares two monomials of the same ring in degree-graded revlex order.
pub fn compare_revlex(ring: &Ring, a: &Monomial, b: &Monomial) -> Result<Ordering, Error> {
    if a.exps.len() != ring.num_vars() || b.exps.len() != ring.num_vars() {
        return Err(Error::MismatchedRings);
    }
    Ok(a.cmp(b))
}

/// A ring endomorphism sending each variable to a variable or to zero.
#[derive(Debug, Clone)]
pub struct Endomorphism {
    ring: Arc<Ring>,
    images: Vec<Option<VarId>>,
}

impl Endomorphism {
    pub fn identity(ring: &Arc<Ring>) -> Self {
        Endomorphism {
            ring: Arc::clone(ring),
            images: ring.vars().iter().map(|&v| Some(v)).collect(),
        }
    }

    /// Identity on all variables except the listed reassignments
    /// (`None` sends a variable to zero).
    pub fn from_pairs(ring: &Arc<Ring>, pairs: &[(VarId, Option<VarId>)]) -> Result<Self, Error> {
        let mut endo = Endomorphism::identity(ring);
        for &(src, img) in pairs {
            let k = ring.var_index(src).ok_or(Error::MismatchedRings)?;
            if let Some(w) = img {
                if !ring.contains(w) {
                    return Err(Error::MismatchedRings);
                }
            }
            endo.images[k] = img;
        }
        Ok(endo)
    }

    /// Sends every variable outside `keep` to zero and fixes the rest.
    pub fn kill_complement(ring: &Arc<Ring>, keep: &[VarId]) -> Self {
        let keep: std::collections::BTreeSet<VarId> = keep.iter().copied().collect();
        Endomorphism {
            ring: Arc::clone(ring),
            images: ring
                .vars()
                .iter()
                .map(|&v| if keep.contains(&v) { Some(v) } else { None })
                .collect(),
        }
    }

    pub fn image(&self, v: VarId) -> Option<VarId> {
        self.images[self.ring.var_index(v).expect("variable not in ring")]
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }
}

/// A total assignment of rational values to the ring's variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalPoint {
    ring: Arc<Ring>,
    values: Vec<BigRational>,
}

impl RationalPoint {
    pub fn new(ring: &Arc<Ring>, values: Vec<BigRational>) -> Result<Self, Error> {
        if values.len() != ring.num_vars() {
            return Err(Error::MismatchedRings);
        }
        Ok(RationalPoint {
            ring: Arc::clone(ring),
            values,
        })
    }

    pub fn origin(ring: &Arc<Ring>) -> Self {
        RationalPoint {
            ring: Arc::clone(ring),
            values: vec![BigRational::zero(); ring.num_vars()],
        }
    }

    pub fn from_integers(ring: &Arc<Ring>, ints: &[i64]) -> Result<Self, Error> {
        let values = ints
            .iter()
            .map(|&n| BigRational::from_integer(BigInt::from(n)))
            .collect();
        RationalPoint::new(ring, values)
    }

    pub fn get(&self, v: VarId) -> &BigRational {
        &self.values[self.ring.var_index(v).expect("variable not in ring")]
    }

    pub fn set(&mut self, v: VarId, value: BigRational) {
        let k = self.ring.var_index(v).expect("variable not in ring");
        self.values[k] = value;
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// The point `q` with `q[v] = self[endo(v)]` (zero on killed variables),
    /// so that evaluating `substitute(p, endo)` at `self` equals evaluating
    /// `p` at `q`.
    pub fn pushforward(&self, endo: &Endomorphism) -> RationalPoint {
        let values = self
            .ring
            .vars()
            .iter()
            .map(|&v| match endo.image(v) {
                Some(w) => self.get(w).clone(),
                None => BigRational::zero(),
            })
            .collect();
        RationalPoint {
            ring: Arc::clone(&self.ring),
            values,
        }
    }
}

fn pow_rational(base: &BigRational, exp: u32) -> BigRational {
    let mut result = BigRational::one();
    let mut base = base.clone();
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            result *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    result
}

/// A polynomial in canonical form: a term map holding no zero coefficients,
/// keyed by monomials in the ring's revlex order.
#[derive(Debug, Clone)]
pub struct Poly {
    ring: Arc<Ring>,
    terms: BTreeMap<Monomial, BigRational>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.terms == other.terms
    }
}
impl Eq for Poly {}

impl Poly {
    pub fn zero(ring: &Arc<Ring>) -> Self {
        Poly {
            ring: Arc::clone(ring),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(ring: &Arc<Ring>) -> Self {
        Poly::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<Ring>, c: BigRational) -> Self {
        let mut p = Poly::zero(ring);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(ring.num_vars()), c);
        }
        p
    }

    pub fn int(ring: &Arc<Ring>, n: i64) -> Self {
        Poly::constant(ring, BigRational::from_integer(BigInt::from(n)))
    }

    pub fn var(ring: &Arc<Ring>, v: VarId) -> Self {
        let k = ring
            .var_index(v)
            .unwrap_or_else(|| panic!("variable {v} not in ring"));
        let mut exps = vec![0u16; ring.num_vars()];
        exps[k] = 1;
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::from_exps(exps), BigRational::one());
        Poly {
            ring: Arc::clone(ring),
            terms,
        }
    }

    /// A single term `c * prod x_{i,j}^e`, with positions given as
    /// `(i, j, e)` triples.
    pub fn term(ring: &Arc<Ring>, c: i64, pairs: &[(u32, u32, u16)]) -> Self {
        let pairs: Vec<(VarId, u16)> = pairs
            .iter()
            .map(|&(i, j, e)| (VarId::new(i, j), e))
            .collect();
        let mono = Monomial::from_pairs(ring, &pairs);
        let mut p = Poly::zero(ring);
        p.add_term(mono, BigRational::from_integer(BigInt::from(c)));
        p
    }

    pub fn from_terms(ring: &Arc<Ring>, terms: Vec<(Monomial, BigRational)>) -> Self {
        let mut p = Poly::zero(ring);
        for (m, c) in terms {
            assert_eq!(m.exps.len(), ring.num_vars());
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    fn compatible(&self, other: &Poly) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || self.ring == other.ring
    }

    fn assert_compatible(&self, other: &Poly) {
        assert!(
            self.compatible(other),
            "polynomials from different variable universes"
        );
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d) => degrees.all(|e| e == d),
        }
    }

    /// The revlex-largest term, or `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.last_key_value()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.leading_term().map(|(m, _)| m)
    }

    /// Terms in descending revlex order.
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Coefficient of a bare variable (used for linear forms).
    pub fn coeff_of_var(&self, v: VarId) -> BigRational {
        let k = self.ring.var_index(v).expect("variable not in ring");
        let mut exps = vec![0u16; self.ring.num_vars()];
        exps[k] = 1;
        self.coeff(&Monomial::from_exps(exps))
    }

    pub fn scale(&self, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, a)| (m.clone(), a * c))
                .collect(),
        }
    }

    pub fn scale_int(&self, n: i64) -> Poly {
        self.scale(&BigRational::from_integer(BigInt::from(n)))
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &BigRational) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(k, a)| (k.mul(m), a * c))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.ring);
        for _ in 0..e {
            result = &result * self;
        }
        result
    }

    /// Formal partial derivative with respect to `v`.
    pub fn derivative(&self, v: VarId) -> Poly {
        let k = self.ring.var_index(v).expect("variable not in ring");
        let mut out = Poly::zero(&self.ring);
        for (m, c) in &self.terms {
            let e = m.exps[k];
            if e == 0 {
                continue;
            }
            let mut exps = m.exps.clone();
            exps[k] = e - 1;
            out.add_term(
                Monomial::from_exps(exps),
                c * BigRational::from_integer(BigInt::from(e)),
            );
        }
        out
    }

    /// Applies a variable-to-variable-or-zero endomorphism. Terms touching a
    /// killed variable vanish; images may merge (the map need not be
    /// injective), so coefficients recombine canonically.
    pub fn substitute(&self, endo: &Endomorphism) -> Poly {
        assert!(
            Arc::ptr_eq(&self.ring, endo.ring()) || *endo.ring() == self.ring,
            "endomorphism over a different variable universe"
        );
        let width = self.ring.num_vars();
        let mut out = Poly::zero(&self.ring);
        'terms: for (m, c) in &self.terms {
            let mut exps = vec![0u16; width];
            for k in 0..width {
                let e = m.exps[k];
                if e == 0 {
                    continue;
                }
                match endo.images[k] {
                    None => continue 'terms,
                    Some(w) => {
                        let t = self.ring.var_index(w).expect("endomorphism image not in ring");
                        exps[t] += e;
                    }
                }
            }
            out.add_term(Monomial::from_exps(exps), c.clone());
        }
        out
    }

    /// Evaluates at a total rational point. This is a ring homomorphism.
    pub fn evaluate(&self, point: &RationalPoint) -> BigRational {
        assert!(
            Arc::ptr_eq(&self.ring, point.ring()) || *point.ring() == self.ring,
            "point over a different variable universe"
        );
        let mut total = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term *= pow_rational(&point.values[k], e as u32);
                }
            }
            total += term;
        }
        total
    }

    /// Substitutes a polynomial image for every variable; `images` is aligned
    /// with this ring's variable order and must share a common target ring.
    pub fn compose(&self, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.ring.num_vars(), "image list misaligned");
        let target = images
            .first()
            .map(|p| Arc::clone(&p.ring))
            .expect("compose requires at least one variable");
        let mut out = Poly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = Poly::constant(&target, c.clone());
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    term = &term * &images[k].pow(e as u32);
                }
            }
            out = &out + &term;
        }
        out
    }

    /// Exact single-divisor long division under the revlex order.
    ///
    /// Returns `Ok(Some(q))` with `self = q * divisor` when the division is
    /// exact and `Ok(None)` otherwise; dividing by zero is an error. The
    /// quotient is unique, so the routine is deterministic.
    pub fn divide_exact(&self, divisor: &Poly) -> Result<Option<Poly>, Error> {
        self.assert_compatible(divisor);
        let (dm, dc) = match divisor.leading_term() {
            None => return Err(Error::ZeroDivisor),
            Some((m, c)) => (m.clone(), c.clone()),
        };
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.ring);
        while let Some((rm, rc)) = rem.leading_term() {
            // If the running remainder's leading monomial is not divisible
            // by in(divisor), no exact quotient exists.
            let qm = match rm.checked_div(&dm) {
                None => return Ok(None),
                Some(q) => q,
            };
            let qc = rc / &dc;
            rem = &rem - &divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
        }
        Ok(Some(quot))
    }

    /// Variables that actually occur, in ring order.
    pub fn support_vars(&self) -> Vec<VarId> {
        let width = self.ring.num_vars();
        let mut seen = vec![false; width];
        for m in self.terms.keys() {
            for (k, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    seen[k] = true;
                }
            }
        }
        (0..width)
            .filter(|&k| seen[k])
            .map(|k| self.ring.vars()[k])
            .collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms_desc() {
            let negative = c.is_negative();
            let abs = c.abs();
            if first {
                if negative {
                    write!(f, "-")?;
                }
                first = false;
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", self.ring.format_monomial(m))?;
            } else {
                write!(f, "{}*{}", abs, self.ring.format_monomial(m))?;
            }
        }
        Ok(())
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.assert_compatible(rhs);
        let mut out = Poly::zero(&self.ring);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            ring: Arc::clone(&self.ring),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($trait:ident, $method:ident) => {
        impl $trait for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: &Poly) -> Poly {
                (&self).$method(rhs)
            }
        }
    };
}
forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, rhs: &Poly) {
        self.assert_compatible(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, rhs: &Poly) {
        self.assert_compatible(rhs);
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl MulAssign<&Poly> for Poly {
    fn mul_assign(&mut self, rhs: &Poly) {
        *self = &*self * rhs;
    }
}
