//! The Hochschild complex of a Moore structure.
//!
//! Cochains are normalised derivations `A∂_τ + B∂_t` and the differential is
//! `d(ξ) = [ξ, m]`. For odd structures with data `(v, w)` it has the closed
//! form
//!
//! ```text
//! d(ξ) = (B₁w' - A₁v/t)∂_τ + B₁(v' - v/t)∂_t + 2tA₁∂_t
//! ```
//!
//! where the subscript 1 takes the odd-power part. Even structures use the
//! bracket directly.
//!
//! Cohomology is computed by linear algebra over the ground ring on the
//! coefficient coordinates of `t¹ … t^P`, where `P` is the precision of the
//! structure. In truncation `K < P` the cocycles are cochains of order at
//! most `K` whose differential vanishes through order `P`, and the
//! coboundaries are the `d(η)` with `η` of order at most `P` whose image
//! vanishes in orders `K+1 … P`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::calculus::Derivation;
use crate::error::{Error, Result};
use crate::linalg::{quotient, LinearMap, Vector};
use crate::moore::MooreStructure;
use crate::ring::BaseKind;
use crate::scalar::Scalar;
use crate::series::{CommSeries, GradingContext, Letter, Parity};

/// `d(ξ) = [ξ, m]`, by the closed formula when `m` is odd.
pub fn differential<C: Scalar>(xi: &Derivation<C>, m: &MooreStructure<C>) -> Result<Derivation<C>> {
    if xi.context() != m.context() || xi.ring() != m.ring() {
        return Err(Error::ContextMismatch);
    }
    let (Some(v), Some(w)) = (m.v(), m.w()) else {
        return differential_oracle(xi, m);
    };
    let (a, b) = xi.parts()?;
    let (a1, b1) = (a.odd_part().unflagged(), b.odd_part().unflagged());
    let v = v.clone().unflagged();
    let w = w.clone().unflagged();
    let v_over_t = v.divide_by_t()?;
    let tau_part = b1.mul(&w.derivative()).sub(&a1.mul(&v_over_t));
    let t_part = b1.mul(&v.derivative().sub(&v_over_t)).add(&a1.multiply_by_t().scale_int(2));
    Derivation::normalised(&tau_part, &t_part)
}

/// `[ξ, m]` from the generic bracket.
pub fn differential_oracle<C: Scalar>(xi: &Derivation<C>, m: &MooreStructure<C>) -> Result<Derivation<C>> {
    xi.bracket(&m.derivation())
}

/// Parity of the cochain `c·t^k ∂_l` (coefficients are even).
pub fn component_parity(ctx: &GradingContext, part: Letter, k: usize) -> Parity {
    let from_t = if k.is_multiple_of(2) { Parity::Even } else { ctx.t_parity() };
    from_t + part.parity(ctx)
}

/// Coordinates of normalised cochains of order at most `top`, laid out by
/// power, then part (`∂_τ` before `∂_t`), then ground basis element.
struct Cochains<C: Scalar> {
    ring: C::Ring,
    ctx: GradingContext,
    basis: Vec<C>,
    top: usize,
}

impl<C: Scalar> Cochains<C> {
    fn new(ring: &C::Ring, ctx: GradingContext, top: usize) -> Self {
        Cochains { ring: ring.clone(), ctx, basis: C::module_basis(ring), top }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }

    fn dim(&self) -> usize {
        2 * self.top * self.rank()
    }

    /// `(part, power, basis index)` of a coordinate.
    fn locate(&self, i: usize) -> (Letter, usize, usize) {
        let r = self.rank();
        let slot = i / r;
        let part = if slot.is_multiple_of(2) { Letter::Tau } else { Letter::T };
        (part, slot / 2 + 1, i % r)
    }

    fn unit(&self, i: usize) -> Derivation<C> {
        let (part, k, b) = self.locate(i);
        let mono = CommSeries::monomial(&self.ring, self.ctx, k, self.basis[b].clone());
        let zero = CommSeries::zero(&self.ring, self.ctx);
        match part {
            Letter::Tau => Derivation::normalised(&mono, &zero),
            Letter::T => Derivation::normalised(&zero, &mono),
        }
        .expect("monomials have no constant term")
    }

    fn coords(&self, xi: &Derivation<C>) -> Result<Vector> {
        let (a, b) = xi.parts()?;
        let available = a.precision().min(b.precision());
        if available < self.top {
            return Err(Error::InsufficientPrecision { needed: self.top, available });
        }
        let mut out = Vec::with_capacity(self.dim());
        for k in 1..=self.top {
            out.extend(a.coefficient(k).coordinates());
            out.extend(b.coefficient(k).coordinates());
        }
        Ok(out)
    }

    /// The exact cochain with the given coordinates.
    fn cochain(&self, x: &[BigRational]) -> Derivation<C> {
        let r = self.rank();
        let mut a = vec![C::zero(&self.ring)];
        let mut b = vec![C::zero(&self.ring)];
        for k in 1..=self.top {
            let base = 2 * (k - 1) * r;
            a.push(C::from_coordinates(&self.ring, &x[base..base + r]));
            b.push(C::from_coordinates(&self.ring, &x[base + r..base + 2 * r]));
        }
        let a = CommSeries::from_coeffs(&self.ring, self.ctx, a);
        let b = CommSeries::from_coeffs(&self.ring, self.ctx, b);
        Derivation::normalised(&a, &b).expect("no constant terms")
    }

    /// Matrix of `d` on the cochains whose coordinates pass `keep`.
    fn differential_matrix(&self, m: &MooreStructure<C>, keep: impl Fn(usize) -> bool) -> Result<(LinearMap, Vec<usize>)> {
        let mut cols = Vec::new();
        let mut used = Vec::new();
        for i in (0..self.dim()).filter(|&i| keep(i)) {
            cols.push(self.coords(&differential(&self.unit(i), m)?)?);
            used.push(i);
        }
        Ok((LinearMap::from_columns(C::base_kind(&self.ring), self.dim(), &cols), used))
    }
}

/// Result of [`solve_coboundary`].
#[derive(Clone, Debug)]
pub enum CoboundarySolution<C: Scalar> {
    /// An exact cochain `η` with `d(η)` equal to the target through its
    /// precision.
    Preimage(Derivation<C>),
    /// The target is not a coboundary; `residue` is cohomologous to it.
    NotCoboundary { residue: Derivation<C> },
}

impl<C: Scalar> CoboundarySolution<C> {
    pub fn preimage(&self) -> Option<&Derivation<C>> {
        match self {
            CoboundarySolution::Preimage(eta) => Some(eta),
            CoboundarySolution::NotCoboundary { .. } => None,
        }
    }

    pub fn is_coboundary(&self) -> bool {
        self.preimage().is_some()
    }
}

fn exact<C: Scalar>(s: &CommSeries<C>) -> CommSeries<C> {
    CommSeries::from_coeffs(s.ring(), s.context(), s.coefficients().to_vec())
}

fn check_cocycle<C: Scalar>(target: &Derivation<C>, m: &MooreStructure<C>) -> Result<()> {
    if target.context() != m.context() || target.ring() != m.ring() {
        return Err(Error::ContextMismatch);
    }
    target.parts()?;
    if differential(target, m)?.is_zero() {
        Ok(())
    } else {
        Err(Error::NotACocycle)
    }
}

/// Finds `η` with `d(η) = target`, or certifies that none exists.
///
/// Odd structures must be in normal form (`v = 0`); there `w'` is divided
/// out triangularly when its leading coefficient and 2 are units. All other
/// cases are solved as a linear system over the ground ring. The preimage
/// has parity opposite to a homogeneous target.
pub fn solve_coboundary<C: Scalar>(target: &Derivation<C>, m: &MooreStructure<C>) -> Result<CoboundarySolution<C>> {
    check_cocycle(target, m)?;
    if let Some(v) = m.v() {
        if !v.is_zero() {
            return Err(Error::VNotZero);
        }
        if let Some(sol) = solve_triangular(target, m)? {
            return Ok(sol);
        }
    }
    solve_linear(target, m, target.parity().map(|p| p + Parity::Odd))
}

/// The linear-algebra route of [`solve_coboundary`], for any structure.
/// With `parity` set, only cochains of that parity are tried.
pub fn solve_coboundary_linear<C: Scalar>(
    target: &Derivation<C>,
    m: &MooreStructure<C>,
    parity: Option<Parity>,
) -> Result<CoboundarySolution<C>> {
    check_cocycle(target, m)?;
    solve_linear(target, m, parity)
}

fn solve_linear<C: Scalar>(
    target: &Derivation<C>,
    m: &MooreStructure<C>,
    parity: Option<Parity>,
) -> Result<CoboundarySolution<C>> {
    let ctx = m.context();
    let p = target.precision().min(m.precision());
    let target = target.with_precision(p);
    if p == 0 {
        return Ok(CoboundarySolution::Preimage(Derivation::zero(m.ring(), ctx)));
    }
    let space = Cochains::new(m.ring(), ctx, p);
    let keep = |i: usize| {
        let (part, k, _) = space.locate(i);
        parity.is_none_or(|q| component_parity(&ctx, part, k) == q)
    };
    let (map, used) = space.differential_matrix(m, keep)?;
    let rhs = space.coords(&target)?;
    match map.solve(&rhs) {
        Some(x) => {
            let mut full = vec![<BigRational as Zero>::zero(); space.dim()];
            for (xi, &i) in x.into_iter().zip(&used) {
                full[i] = xi;
            }
            let eta = space.cochain(&full);
            verified(eta, &target, m)
        }
        None => Ok(CoboundarySolution::NotCoboundary { residue: target }),
    }
}

fn verified<C: Scalar>(eta: Derivation<C>, target: &Derivation<C>, m: &MooreStructure<C>) -> Result<CoboundarySolution<C>> {
    if differential(&eta, m)?.agrees_with(target) {
        Ok(CoboundarySolution::Preimage(eta))
    } else {
        Err(Error::Unsupported("coboundary preimage failed verification".into()))
    }
}

/// `None` when the triangular route does not apply.
fn solve_triangular<C: Scalar>(target: &Derivation<C>, m: &MooreStructure<C>) -> Result<Option<CoboundarySolution<C>>> {
    let ring = m.ring();
    let ctx = m.context();
    let w = m.w().expect("odd structure").clone().unflagged();
    let Some(half) = C::from_int(ring, 2).inverse() else { return Ok(None) };
    if w.is_zero() {
        return Ok(None);
    }
    let wd = w.derivative();
    let e = wd.valuation();
    if wd.coefficient(e).inverse().is_none() {
        return Ok(None);
    }
    let p = target.precision().min(m.precision());
    let target = target.with_precision(p);
    let (x, y) = target.parts()?;
    let (x, y) = (x.unflagged(), y.unflagged());

    let a1 = y.even_part().unflagged().divide_by_t()?.scale(&half).odd_part();
    let res_t = y.odd_part().unflagged();
    let xe = x.even_part().unflagged();
    let mut low = CommSeries::zero(ring, ctx).with_precision(x.precision());
    let mut high = low.clone();
    for k in 0..=x.precision() {
        let c = xe.coefficient(k);
        let piece = CommSeries::monomial(ring, ctx, k, c);
        if k <= e {
            low = low.add(&piece);
        } else {
            high = high.add(&piece);
        }
    }
    let res_tau = x.odd_part().unflagged().add(&low);
    if !res_tau.is_zero() || !res_t.is_zero() {
        let residue = Derivation::normalised(&res_tau, &res_t)?;
        return Ok(Some(CoboundarySolution::NotCoboundary { residue }));
    }
    let mut unit = wd;
    let mut shifted = high;
    for _ in 0..e {
        unit = unit.divide_by_t()?;
        shifted = shifted.divide_by_t()?;
    }
    let b1 = shifted.mul(&unit.reciprocal()?).odd_part();
    let eta = Derivation::normalised(&exact(&a1.unflagged()), &exact(&b1.unflagged()))?;
    verified(eta, &target, m).map(Some)
}

/// Free rank and torsion of a finitely generated ground-ring module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleInvariants {
    pub base: BaseKind,
    pub free_rank: usize,
    /// Annihilators of the torsion summands, ascending.
    pub torsion: Vec<BigInt>,
}

impl ModuleInvariants {
    fn from_annihilators(base: BaseKind, anns: impl IntoIterator<Item = BigInt>) -> Self {
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for a in anns {
            if Zero::is_zero(&a) {
                free_rank += 1;
            } else {
                torsion.push(a);
            }
        }
        torsion.sort();
        ModuleInvariants { base, free_rank, torsion }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for ModuleInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push(self.base.to_string()),
            r => parts.push(format!("{}^{r}", self.base)),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let a = &self.torsion[i];
            let run = self.torsion[i..].iter().take_while(|b| *b == a).count();
            let piece = if self.base == BaseKind::Integers { format!("Z/{a}") } else { format!("{}/({a})", self.base) };
            parts.push(if run == 1 { piece } else { format!("({piece})^{run}") });
            i += run;
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyClass<C: Scalar> {
    /// Zero for a free class.
    pub annihilator: BigInt,
    /// A cocycle of order at most the truncation.
    pub representative: Derivation<C>,
}

impl<C: Scalar> CohomologyClass<C> {
    /// Map degree of the representative, when homogeneous.
    pub fn degree(&self) -> Option<i64> {
        self.representative.degree()
    }

    /// The same degree in the classical convention, `1 - degree`.
    pub fn classical_degree(&self) -> Option<i64> {
        self.degree().map(|d| 1 - d)
    }
}

/// A truncated cohomology module as a sum of cyclic ground-ring modules.
#[derive(Clone, Debug)]
pub struct CohomologyPresentation<C: Scalar> {
    pub order: usize,
    pub base: BaseKind,
    pub classes: Vec<CohomologyClass<C>>,
}

impl<C: Scalar> CohomologyPresentation<C> {
    pub fn free_rank(&self) -> usize {
        self.classes.iter().filter(|c| Zero::is_zero(&c.annihilator)).count()
    }

    /// Annihilators of the torsion classes, ascending.
    pub fn annihilators(&self) -> Vec<BigInt> {
        self.invariants().torsion
    }

    pub fn representatives(&self) -> Vec<&Derivation<C>> {
        self.classes.iter().map(|c| &c.representative).collect()
    }

    pub fn invariants(&self) -> ModuleInvariants {
        ModuleInvariants::from_annihilators(self.base.clone(), self.classes.iter().map(|c| c.annihilator.clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.classes.is_empty()
    }

    /// Whether the bracket of every pair of representatives is zero in
    /// cohomology.
    pub fn bracket_vanishes(&self, m: &MooreStructure<C>) -> Result<bool> {
        for x in &self.classes {
            for y in &self.classes {
                let br = x.representative.bracket(&y.representative)?.with_precision(self.order);
                if br.is_zero() {
                    continue;
                }
                if !solve_linear(&br, m, None)?.is_coboundary() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Cohomology of the full complex truncated at `order`, with no hypotheses
/// on the structure or the ring. Needs `order` below the structure's
/// precision.
pub fn hh_complex<C: Scalar>(m: &MooreStructure<C>, order: usize) -> Result<CohomologyPresentation<C>> {
    let p = m.precision();
    if order >= p {
        return Err(Error::InsufficientPrecision { needed: order + 1, available: p });
    }
    let kind = C::base_kind(m.ring());
    let full = Cochains::<C>::new(m.ring(), m.context(), p);
    let low = Cochains::<C>::new(m.ring(), m.context(), order);
    let low_dim = low.dim();
    let (d, _) = full.differential_matrix(m, |_| true)?;
    let cocycles = d.select_cols(|j| j < low_dim).kernel();
    let bounded = d.select_rows(|i| i >= low_dim).kernel();
    let coboundaries: Vec<Vector> = bounded.iter().map(|y| d.apply(y)[..low_dim].to_vec()).collect();
    let classes = quotient(&kind, low_dim, &coboundaries, &cocycles)
        .into_iter()
        .map(|c| CohomologyClass {
            annihilator: c.annihilator,
            representative: low.cochain(&c.representative).with_precision(order),
        })
        .collect();
    Ok(CohomologyPresentation { order, base: kind, classes })
}

/// Cohomology of a normal-form odd structure after checking the module
/// hypotheses: 2 is a unit, `w ≠ 0`, its leading coefficient `w_k` (at
/// `t^{2k}`) is not a zero divisor and the ground ring has no `k`-torsion.
/// The structure must be known through `order + val(w)`.
pub fn hh_module<C: Scalar>(m: &MooreStructure<C>, order: usize) -> Result<CohomologyPresentation<C>> {
    let w = check_module_hypotheses(m)?;
    let needed = order + w.valuation();
    if m.precision() < needed {
        return Err(Error::InsufficientPrecision { needed, available: m.precision() });
    }
    hh_complex(m, order)
}

fn check_module_hypotheses<C: Scalar>(m: &MooreStructure<C>) -> Result<CommSeries<C>> {
    let (Some(v), Some(w)) = (m.v(), m.w()) else {
        return Err(Error::ParityViolation("module presentation needs an odd structure".into()));
    };
    if !v.is_zero() {
        return Err(Error::VNotZero);
    }
    let ring = m.ring();
    if C::from_int(ring, 2).inverse().is_none() {
        return Err(Error::TwoNotInvertible);
    }
    if w.is_zero() {
        return Err(Error::HypothesisFailed("w vanishes".into()));
    }
    let e = w.valuation();
    let lead = w.coefficient(e);
    if is_zero_divisor(&lead) {
        return Err(Error::HypothesisFailed(format!("leading coefficient {lead} of w is a zero divisor")));
    }
    let k = (e / 2) as u64;
    if C::base_kind(ring).has_torsion(k) {
        return Err(Error::HypothesisFailed(format!("ground ring has {k}-torsion")));
    }
    Ok(w.clone().unflagged())
}

/// Whether multiplication by `c` has a kernel.
pub fn is_zero_divisor<C: Scalar>(c: &C) -> bool {
    let ring = c.ring();
    let basis = C::module_basis(&ring);
    let cols: Vec<Vector> = basis.iter().map(|b| c.times(b).coordinates()).collect();
    !LinearMap::from_columns(C::base_kind(&ring), basis.len(), &cols).kernel().is_empty()
}

/// Invariants of `R[s]/(s^L, w̃'(s))` with `L = ⌊order/2⌋`, computed
/// directly from `w`; the comparison target for [`hh_module`].
pub fn quotient_invariants<C: Scalar>(w: &CommSeries<C>, order: usize) -> Result<ModuleInvariants> {
    let ring = w.ring();
    let kind = C::base_kind(ring);
    let wt = w.tilde()?;
    let l = order / 2;
    if wt.precision() < l {
        return Err(Error::InsufficientPrecision { needed: 2 * l, available: w.precision() });
    }
    let wd = wt.derivative();
    let basis = C::module_basis(ring);
    let r = basis.len();
    let dim = l * r;
    let mut relations = Vec::new();
    for j in 0..l {
        for b in &basis {
            let mut v = vec![<BigRational as Zero>::zero(); dim];
            for i in 0..l - j {
                let c = wd.coefficient(i).times(b);
                for (x, y) in v[(i + j) * r..(i + j + 1) * r].iter_mut().zip(c.coordinates()) {
                    *x = y;
                }
            }
            relations.push(v);
        }
    }
    let units: Vec<Vector> = (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { <BigRational as One>::one() } else { <BigRational as Zero>::zero() }).collect())
        .collect();
    let classes = quotient(&kind, dim, &relations, &units);
    Ok(ModuleInvariants::from_annihilators(kind, classes.into_iter().map(|c| c.annihilator)))
}

/// One entry of a bracket table: the generic bracket of two basis classes
/// next to the closed formula.
#[derive(Clone, Debug)]
pub struct BracketEntry<C: Scalar> {
    pub left: usize,
    pub right: usize,
    pub formula: Derivation<C>,
    pub computed: Derivation<C>,
}

impl<C: Scalar> BracketEntry<C> {
    pub fn agrees(&self) -> bool {
        self.formula.agrees_with(&self.computed)
    }
}

/// Cohomology of the trivial odd structure `m₀`: the classes `A∂_τ` with
/// `A` in even powers and `B∂_t` with `B` in odd powers.
#[derive(Clone, Debug)]
pub struct TrivialCohomology<C: Scalar> {
    pub order: usize,
    /// Basis classes as `(A, B)`: exactly one of the two is nonzero.
    pub basis: Vec<(CommSeries<C>, CommSeries<C>)>,
    pub presentation: CohomologyPresentation<C>,
}

/// See [`TrivialCohomology`]; needs 2 a unit, an odd context and `order`
/// below the context order.
pub fn hh_trivial<C: Scalar>(ring: &C::Ring, ctx: GradingContext, order: usize) -> Result<TrivialCohomology<C>> {
    if !ctx.t_is_odd() {
        return Err(Error::ParityViolation("trivial-structure cohomology is computed for odd d".into()));
    }
    if C::from_int(ring, 2).inverse().is_none() {
        return Err(Error::TwoNotInvertible);
    }
    let m0 = MooreStructure::<C>::trivial(ring, ctx);
    let presentation = hh_complex(&m0, order)?;
    let zero = CommSeries::zero(ring, ctx);
    let mut basis = Vec::new();
    for k in 1..=order {
        for b in C::module_basis(ring) {
            let mono = CommSeries::monomial(ring, ctx, k, b);
            if k % 2 == 0 {
                basis.push((mono, zero.clone()));
            } else {
                basis.push((zero.clone(), mono));
            }
        }
    }
    Ok(TrivialCohomology { order, basis, presentation })
}

impl<C: Scalar> TrivialCohomology<C> {
    pub fn class(&self, i: usize) -> Derivation<C> {
        let (a, b) = &self.basis[i];
        Derivation::normalised(a, b).expect("basis classes are normalised")
    }

    /// `[B∂_t, A∂_τ] = BA'∂_τ`, `[A∂_τ, A'∂_τ] = 0` and
    /// `[B∂_t, B'∂_t] = (BB'' - B'B')∂_t`, extended by graded antisymmetry.
    pub fn bracket_formula(&self, i: usize, j: usize) -> Derivation<C> {
        let (a1, b1) = &self.basis[i];
        let (a2, b2) = &self.basis[j];
        let tau = b1.mul(&a2.derivative()).sub(&b2.mul(&a1.derivative()));
        let t = b1.mul(&b2.derivative()).sub(&b2.mul(&b1.derivative()));
        Derivation::normalised(&tau, &t).expect("no constant terms")
    }

    pub fn bracket_table(&self) -> Result<Vec<BracketEntry<C>>> {
        let n = self.basis.len();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let computed = self.class(i).bracket(&self.class(j))?;
                out.push(BracketEntry { left: i, right: j, formula: self.bracket_formula(i, j), computed });
            }
        }
        Ok(out)
    }
}
