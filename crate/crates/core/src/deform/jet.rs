use std::fmt;

use crate::calculus::{Derivation, Endomorphism};
use crate::error::{Error, Result};
use crate::hochschild::{differential, differential_oracle, solve_coboundary, solve_coboundary_linear, CoboundarySolution};
use crate::moore::MooreStructure;
use crate::ring::{Generator, Monomial, Ring, RingElement, RingSpec};
use crate::scalar::Scalar;
use crate::series::{GradingContext, Letter, NcSeries, Parity, Word};

/// `R[s]/(s^{order+1})` together with the index of `s`.
#[derive(Clone, Debug)]
struct ParameterRing {
    base: Ring,
    ring: Ring,
    s: usize,
    s_degree: i64,
    order: usize,
}

impl ParameterRing {
    fn new(base: &Ring, order: usize, s_degree: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::InvalidOrder(0));
        }
        let name = base.fresh_name("s");
        let spec = RingSpec::polynomial(base.spec().clone(), vec![Generator::new(name, s_degree)], order as u32);
        let ring = crate::ring::make_ring(&spec)?;
        let s = base.generators().len();
        Ok(ParameterRing { base: base.clone(), ring, s, s_degree, order })
    }

    fn s_power(&self, k: usize) -> RingElement {
        self.ring.generator_at(self.s).pow(k as u32)
    }

    fn lift(&self, x: &RingElement) -> RingElement {
        x.include_into(&self.ring).expect("base ring sits below the parameter ring")
    }

    fn lift_series(&self, x: &NcSeries<RingElement>) -> NcSeries<RingElement> {
        x.map_into(&self.ring, |c| self.lift(c))
    }

    fn lift_derivation(&self, x: &Derivation<RingElement>) -> Derivation<RingElement> {
        x.map_into(&self.ring, |c| self.lift(c))
    }

    fn part(&self, x: &RingElement, k: usize) -> RingElement {
        let n = self.s;
        self.base.element(
            x.terms().filter(|(m, _)| m.0[n] as usize == k).map(|(m, c)| (Monomial(m.0[..n].to_vec()), c.clone())),
        )
    }

    fn series_part(&self, x: &NcSeries<RingElement>, k: usize) -> NcSeries<RingElement> {
        x.map_into(&self.base, |c| self.part(c, k))
    }

    fn derivation_part(&self, x: &Derivation<RingElement>, k: usize) -> Derivation<RingElement> {
        x.map_into(&self.base, |c| self.part(c, k))
    }

    /// Lowest power of `s` occurring in a coefficient of the series.
    fn lowest_power(&self, x: &NcSeries<RingElement>) -> Option<usize> {
        x.terms().flat_map(|(_, c)| c.terms().map(|(m, _)| m.0[self.s] as usize)).min()
    }

    fn same_as(&self, other: &ParameterRing) -> bool {
        self.ring == other.ring
    }
}

/// A one-parameter family `m + s m₁ + … + sⁿ mₙ`, stored as one derivation
/// over `R[s]/(s^{n+1})`.
#[derive(Clone, Debug)]
pub struct DeformationJet {
    ambient: MooreStructure<RingElement>,
    params: ParameterRing,
    realized: Derivation<RingElement>,
}

impl DeformationJet {
    /// Coefficients must be normalised derivations over the ring of the
    /// ambient structure. Strict contexts also check that `m_k` has degree
    /// `-1 - k|s|`.
    pub fn new(ambient: &MooreStructure<RingElement>, coefficients: &[Derivation<RingElement>], s_degree: i64) -> Result<Self> {
        let ctx = ambient.context();
        let params = ParameterRing::new(ambient.ring(), coefficients.len(), s_degree)?;
        let mut realized = params.lift_derivation(&ambient.derivation());
        for (i, m) in coefficients.iter().enumerate() {
            let k = i + 1;
            if m.context() != ctx || m.ring() != ambient.ring() {
                return Err(Error::ContextMismatch);
            }
            if !m.is_normalised() {
                return Err(Error::NotNormalised);
            }
            if ctx.is_strict() && !m.is_zero() {
                let want = -1 - k as i64 * s_degree;
                if m.degree() != Some(want) {
                    return Err(Error::DegreeMismatch(format!("jet coefficient m{k} must have degree {want}")));
                }
            }
            realized = realized.add(&params.lift_derivation(m).scale(&params.s_power(k)));
        }
        Ok(DeformationJet { ambient: ambient.clone(), params, realized })
    }

    /// The jet with every coefficient zero.
    pub fn trivial(ambient: &MooreStructure<RingElement>, order: usize, s_degree: i64) -> Result<Self> {
        let zero = Derivation::zero(ambient.ring(), ambient.context());
        Self::new(ambient, &vec![zero; order], s_degree)
    }

    fn from_realized(ambient: &MooreStructure<RingElement>, params: ParameterRing, realized: Derivation<RingElement>) -> Self {
        DeformationJet { ambient: ambient.clone(), params, realized }
    }

    pub fn ambient(&self) -> &MooreStructure<RingElement> {
        &self.ambient
    }

    pub fn order(&self) -> usize {
        self.params.order
    }

    pub fn s_degree(&self) -> i64 {
        self.params.s_degree
    }

    /// `R[s]/(s^{n+1})`.
    pub fn parameter_ring(&self) -> &Ring {
        &self.params.ring
    }

    /// The derivation `m_s` over the parameter ring.
    pub fn realized(&self) -> &Derivation<RingElement> {
        &self.realized
    }

    /// `m_k` over `R`; `m_0` is the ambient derivation.
    pub fn coefficient(&self, k: usize) -> Derivation<RingElement> {
        self.params.derivation_part(&self.realized, k)
    }

    pub fn coefficients(&self) -> Vec<Derivation<RingElement>> {
        (1..=self.order()).map(|k| self.coefficient(k)).collect()
    }

    /// Smallest `k` at which `Σ_{i+j=k} mᵢmⱼ` is nonzero on a generator,
    /// i.e. the first `s`-power of `m_s∘m_s`.
    pub fn first_failure(&self) -> Option<usize> {
        let sq = self.realized.composite_images(&self.realized);
        [Letter::Tau, Letter::T].iter().filter_map(|&l| self.params.lowest_power(sq.image(l))).min()
    }

    pub fn is_valid(&self) -> bool {
        self.first_failure().is_none()
    }

    /// `Σ_{i+j=n+1} mᵢmⱼ` over `1 ≤ i, j ≤ n`, computed without validating
    /// the jet.
    pub fn obstruction_sum(&self) -> Derivation<RingElement> {
        let n = self.order();
        let coeffs = self.coefficients();
        let mut acc = Derivation::zero(self.ambient.ring(), self.ambient.context());
        for i in 1..=n {
            let j = n + 1 - i;
            if (1..=n).contains(&j) {
                acc = acc.add(&coeffs[i - 1].composite_images(&coeffs[j - 1]));
            }
        }
        acc
    }

    /// The obstruction to extending the jet by one order, checked to be a
    /// Hochschild cocycle of the ambient structure.
    pub fn obstruction(&self) -> Result<Derivation<RingElement>> {
        if let Some(k) = self.first_failure() {
            return Err(Error::InvalidJet(k));
        }
        let obs = self.obstruction_sum();
        if !differential(&obs, &self.ambient)?.is_zero() {
            return Err(Error::NotACocycle);
        }
        Ok(obs)
    }

    /// The jet of order `n+1` with the given top coefficient.
    pub fn extend(&self, next: &Derivation<RingElement>) -> Result<DeformationJet> {
        let mut coeffs = self.coefficients();
        coeffs.push(next.clone());
        Self::new(&self.ambient, &coeffs, self.s_degree())
    }

    /// A coefficient `m_{n+1}` with `d(m_{n+1}) = -Obs`, if one exists.
    pub fn extension(&self) -> Result<Option<Derivation<RingElement>>> {
        let obs = self.obstruction()?;
        Ok(solve_any(&obs.neg(), &self.ambient)?.preimage().cloned())
    }

    /// The jet as a Moore structure over the parameter ring.
    pub fn as_structure(&self) -> Result<MooreStructure<RingElement>> {
        MooreStructure::from_derivation(&self.realized)
    }

    /// Coefficientwise agreement through order `n`.
    pub fn agrees_with(&self, other: &DeformationJet) -> bool {
        self.order() == other.order()
            && (0..=self.order()).all(|k| self.coefficient(k).agrees_with(&other.coefficient(k)))
    }
}

impl fmt::Display for DeformationJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.ambient)?;
        for (k, m) in self.coefficients().iter().enumerate() {
            if !m.is_zero() {
                write!(f, "; m{} = {m}", k + 1)?;
            }
        }
        Ok(())
    }
}

/// `solve_coboundary`, falling back to plain linear algebra when the
/// ambient structure is odd and not in normal form.
fn solve_any(target: &Derivation<RingElement>, m: &MooreStructure<RingElement>) -> Result<CoboundarySolution<RingElement>> {
    match solve_coboundary(target, m) {
        Err(Error::VNotZero) => solve_coboundary_linear(target, m, target.parity().map(|p| p + Parity::Odd)),
        other => other,
    }
}

/// A family `φ_s = 1 + sφ₁ + s²φ₂ + …` of unital algebra maps, stored as one
/// endomorphism over `R[s]/(s^{n+1})`.
#[derive(Clone, Debug)]
pub struct AutomorphismJet {
    ctx: GradingContext,
    params: ParameterRing,
    map: Endomorphism<RingElement>,
}

/// Generator images `(φ_k(τ), φ_k(t))` of one component.
pub type ComponentImages = (NcSeries<RingElement>, NcSeries<RingElement>);

impl AutomorphismJet {
    pub fn identity(base: &Ring, ctx: GradingContext, order: usize, s_degree: i64) -> Result<Self> {
        let params = ParameterRing::new(base, order, s_degree)?;
        let map = Endomorphism::identity(&params.ring, ctx);
        Ok(AutomorphismJet { ctx, params, map })
    }

    /// `τ ↦ τ + Σ s^k φ_k(τ)`, `t ↦ t + Σ s^k φ_k(t)` for the given
    /// components `φ₁, …, φₙ`.
    pub fn from_components(base: &Ring, ctx: GradingContext, s_degree: i64, components: &[ComponentImages]) -> Result<Self> {
        let params = ParameterRing::new(base, components.len(), s_degree)?;
        let mut tau = NcSeries::tau(&params.ring, ctx);
        let mut t = NcSeries::t(&params.ring, ctx);
        for (i, (a, b)) in components.iter().enumerate() {
            for x in [a, b] {
                if x.context() != ctx || x.ring() != base {
                    return Err(Error::ContextMismatch);
                }
            }
            let sk = params.s_power(i + 1);
            tau = tau.add(&params.lift_series(a).scale(&sk));
            t = t.add(&params.lift_series(b).scale(&sk));
        }
        let map = Endomorphism::new(tau, t)?;
        Ok(AutomorphismJet { ctx, params, map })
    }

    /// Wraps an endomorphism over `R[s]/(s^{n+1})` that reduces to the
    /// identity at `s = 0`.
    pub fn from_map(base: &Ring, s_degree: i64, order: usize, map: Endomorphism<RingElement>) -> Result<Self> {
        let params = ParameterRing::new(base, order, s_degree)?;
        if map.ring() != &params.ring {
            return Err(Error::MixedRings);
        }
        let ctx = map.context();
        let jet = AutomorphismJet { ctx, params, map };
        let (a, b) = jet.component(0);
        if !a.agrees_with(&NcSeries::tau(base, ctx)) || !b.agrees_with(&NcSeries::t(base, ctx)) {
            return Err(Error::NotPointed("map does not reduce to the identity at s = 0".into()));
        }
        Ok(jet)
    }

    pub fn order(&self) -> usize {
        self.params.order
    }

    pub fn s_degree(&self) -> i64 {
        self.params.s_degree
    }

    pub fn context(&self) -> GradingContext {
        self.ctx
    }

    pub fn map(&self) -> &Endomorphism<RingElement> {
        &self.map
    }

    /// `(φ_k(τ), φ_k(t))` over `R`.
    pub fn component(&self, k: usize) -> ComponentImages {
        (
            self.params.series_part(self.map.image(Letter::Tau), k),
            self.params.series_part(self.map.image(Letter::T), k),
        )
    }

    /// `φ_k(x)` for a series over `R`.
    pub fn component_on(&self, k: usize, x: &NcSeries<RingElement>) -> NcSeries<RingElement> {
        self.params.series_part(&self.map.apply(&self.params.lift_series(x)), k)
    }

    /// `φ_k(x₁…x_m) = Σ_{i₁+…+i_m=k} φ_{i₁}(x₁)…φ_{i_m}(x_m)`, evaluated
    /// letter by letter from the components.
    pub fn product_formula(&self, k: usize, word: Word) -> NcSeries<RingElement> {
        let base = &self.params.base;
        let comps: Vec<ComponentImages> = (0..=k).map(|i| self.component(i)).collect();
        let mut acc: Vec<NcSeries<RingElement>> = (0..=k).map(|_| NcSeries::zero(base, self.ctx)).collect();
        acc[0] = NcSeries::one(base, self.ctx);
        for l in word.letters() {
            let mut next: Vec<NcSeries<RingElement>> = (0..=k).map(|_| NcSeries::zero(base, self.ctx)).collect();
            for (j, slot) in next.iter_mut().enumerate() {
                for i in 0..=j {
                    let img = match l {
                        Letter::Tau => &comps[i].0,
                        Letter::T => &comps[i].1,
                    };
                    *slot = slot.add(&acc[j - i].mul(img));
                }
            }
            acc = next;
        }
        acc.swap_remove(k)
    }

    /// Multiplicativity: every component agrees with the product formula on
    /// all words of length at most `max_len`.
    pub fn is_multiplicative(&self, max_len: usize) -> bool {
        let base = &self.params.base;
        let max_len = max_len.min(self.ctx.order());
        let mut words = vec![Word::EMPTY];
        let mut frontier = vec![Word::EMPTY];
        for _ in 0..max_len {
            frontier = frontier
                .iter()
                .flat_map(|w| [Letter::Tau, Letter::T].map(|l| w.concat(Word::letter(l))))
                .collect();
            words.extend(&frontier);
        }
        words.iter().all(|&w| {
            let x = NcSeries::monomial(base, self.ctx, w, base.one());
            (0..=self.order()).all(|k| self.component_on(k, &x).agrees_with(&self.product_formula(k, w)))
        })
    }

    /// `φ_k(1) = 0` for `k ≥ 1`.
    pub fn preserves_unit(&self) -> bool {
        let one = NcSeries::one(&self.params.base, self.ctx);
        (1..=self.order()).all(|k| self.component_on(k, &one).is_zero())
    }

    /// `φ_s∘m = m∘φ_s` on generators, for `m` lifted to the parameter ring.
    pub fn commutes_with(&self, m: &MooreStructure<RingElement>) -> bool {
        let lifted = self.params.lift_derivation(&m.derivation());
        [Letter::Tau, Letter::T].iter().all(|&l| {
            let left = self.map.apply(lifted.image(l));
            let right = lifted.apply(self.map.image(l));
            left.agrees_with(&right)
        })
    }

    /// `φ_s m_s φ_s⁻¹`.
    pub fn conjugate(&self, jet: &DeformationJet) -> Result<DeformationJet> {
        if !self.params.same_as(&jet.params) {
            return Err(Error::ContextMismatch);
        }
        let realized = self.map.conjugate(&jet.realized)?;
        Ok(DeformationJet::from_realized(&jet.ambient, jet.params.clone(), realized))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &AutomorphismJet) -> Result<AutomorphismJet> {
        if !self.params.same_as(&other.params) {
            return Err(Error::ContextMismatch);
        }
        Ok(AutomorphismJet { ctx: self.ctx, params: self.params.clone(), map: self.map.compose(&other.map)? })
    }

    /// Extends by chosen generator images of `φ_{n+1}, φ_{n+2}, …`; higher
    /// words follow from the product formula.
    pub fn extend(&self, images: &[ComponentImages]) -> Result<AutomorphismJet> {
        let mut comps: Vec<ComponentImages> = (1..=self.order()).map(|k| self.component(k)).collect();
        comps.extend_from_slice(images);
        Self::from_components(&self.params.base, self.ctx, self.s_degree(), &comps)
    }
}

impl fmt::Display for AutomorphismJet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.map)
    }
}

/// `exp(s^k φ)`, truncated at order `order`; `φ` must be an even cocycle
/// and the coefficients must contain ℚ.
pub fn integrate_infinitesimal(
    phi: &Derivation<RingElement>,
    k: usize,
    order: usize,
    ambient: &MooreStructure<RingElement>,
    s_degree: i64,
) -> Result<AutomorphismJet> {
    let base = ambient.ring();
    let ctx = ambient.context();
    if !RingElement::contains_rationals(base) {
        return Err(Error::RequiresRationals);
    }
    if phi.context() != ctx || phi.ring() != base {
        return Err(Error::ContextMismatch);
    }
    if k == 0 {
        return Err(Error::HypothesisFailed("the exponent of s must be positive".into()));
    }
    if !phi.has_parity(Parity::Even) {
        return Err(Error::ParityViolation("only even derivations exponentiate to automorphisms".into()));
    }
    if !differential_oracle(phi, ambient)?.is_zero() {
        return Err(Error::NotACocycle);
    }
    let zero = NcSeries::zero(base, ctx);
    let mut comps: Vec<ComponentImages> = vec![(zero.clone(), zero); order];
    let mut power = (NcSeries::tau(base, ctx), NcSeries::t(base, ctx));
    let mut factorial = num_rational::BigRational::from_integer(1.into());
    let mut j = 1;
    while j * k <= order {
        power = (phi.apply(&power.0), phi.apply(&power.1));
        factorial *= num_rational::BigRational::from_integer(j.into());
        let inv = factorial.recip();
        let scale = |s: &NcSeries<RingElement>| s.map_coefficients(|c| c.scale(&inv).expect("ℚ in the ring"));
        comps[j * k - 1] = (scale(&power.0), scale(&power.1));
        j += 1;
    }
    let jet = AutomorphismJet::from_components(base, ctx, s_degree, &comps)?;
    if !jet.preserves_unit() || !jet.is_multiplicative(3) || !jet.commutes_with(ambient) {
        return Err(Error::Unsupported("exponential failed verification".into()));
    }
    Ok(jet)
}

/// One elimination step of [`trivialize`]: conjugation by `1 + s^k ξ`.
#[derive(Clone, Debug)]
pub struct TrivializationStep {
    pub order: usize,
    pub xi: Derivation<RingElement>,
}

#[derive(Clone, Debug)]
pub enum Trivialization {
    /// The accumulated gauge conjugates the jet to the ambient structure.
    Trivial { steps: Vec<TrivializationStep>, gauge: AutomorphismJet },
    /// The leading coefficient at `order` is not a coboundary.
    Stuck { order: usize, class: Derivation<RingElement>, steps: Vec<TrivializationStep> },
}

impl Trivialization {
    pub fn is_trivial(&self) -> bool {
        matches!(self, Trivialization::Trivial { .. })
    }

    pub fn steps(&self) -> &[TrivializationStep] {
        match self {
            Trivialization::Trivial { steps, .. } | Trivialization::Stuck { steps, .. } => steps,
        }
    }
}

/// Removes the coefficients of a jet one order at a time through
/// `min(max_order, n)`, or reports the first leading coefficient that is not
/// a coboundary.
pub fn trivialize(jet: &DeformationJet, max_order: usize) -> Result<Trivialization> {
    if let Some(k) = jet.first_failure() {
        return Err(Error::InvalidJet(k));
    }
    let m = jet.ambient();
    if m.v().is_some_and(|v| !v.is_zero()) {
        return Err(Error::VNotZero);
    }
    let base = m.ring();
    let ctx = m.context();
    let n = jet.order();
    let limit = max_order.min(n);
    let mut current = jet.clone();
    let mut gauge = AutomorphismJet::identity(base, ctx, n, jet.s_degree())?;
    let mut steps = Vec::new();
    for k in 1..=limit {
        let mk = current.coefficient(k);
        if mk.is_zero() {
            continue;
        }
        match solve_coboundary(&mk, m)? {
            CoboundarySolution::Preimage(eta) => {
                let xi = eta.neg();
                let zero = NcSeries::zero(base, ctx);
                let mut comps: Vec<ComponentImages> = vec![(zero.clone(), zero); n];
                comps[k - 1] = (xi.tau_image().clone(), xi.t_image().clone());
                let phi = AutomorphismJet::from_components(base, ctx, jet.s_degree(), &comps)?;
                current = phi.conjugate(&current)?;
                gauge = phi.compose(&gauge)?;
                steps.push(TrivializationStep { order: k, xi });
            }
            CoboundarySolution::NotCoboundary { residue } => {
                return Ok(Trivialization::Stuck { order: k, class: residue, steps });
            }
        }
    }
    let reduced = gauge.conjugate(jet)?;
    if !(1..=limit).all(|k| reduced.coefficient(k).is_zero()) {
        return Err(Error::Unsupported("trivializing gauge failed verification".into()));
    }
    Ok(Trivialization::Trivial { steps, gauge })
}

/// Result of [`obstructions_cohomologous_check`].
#[derive(Clone, Debug)]
pub struct ObstructionComparison {
    /// `Obs(J₂) - Obs(J₁)` is a coboundary.
    pub cohomologous: bool,
    /// `ξ` read off from the order `n+1` coefficient of the conjugated,
    /// zero-extended first jet.
    pub xi: Derivation<RingElement>,
    /// `Obs(J₂) = Obs(J₁) + d(ξ)`.
    pub mechanism_holds: bool,
}

/// Compares the obstructions of two jets related by `ψ J₁ ψ⁻¹ = J₂`.
pub fn obstructions_cohomologous_check(
    j1: &DeformationJet,
    j2: &DeformationJet,
    psi: &AutomorphismJet,
) -> Result<ObstructionComparison> {
    let m = j1.ambient();
    if !m.agrees_with(j2.ambient()) || j1.order() != j2.order() {
        return Err(Error::NotEquivalent("jets differ in ambient structure or order".into()));
    }
    let moved = psi.conjugate(j1)?;
    if !moved.agrees_with(j2) {
        return Err(Error::NotEquivalent("the automorphism does not carry the first jet to the second".into()));
    }
    let obs1 = j1.obstruction()?;
    let obs2 = j2.obstruction()?;
    let cohomologous = solve_any(&obs2.sub(&obs1), m)?.is_coboundary();
    let zero = Derivation::zero(m.ring(), m.context());
    let long = j1.extend(&zero)?;
    let zs = NcSeries::zero(m.ring(), m.context());
    let long_psi = psi.extend(&[(zs.clone(), zs)])?;
    let xi = long_psi.conjugate(&long)?.coefficient(j1.order() + 1).neg();
    let mechanism_holds = obs2.agrees_with(&obs1.add(&differential_oracle(&xi, m)?));
    Ok(ObstructionComparison { cohomologous, xi, mechanism_holds })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{make_ring, rational};
    use crate::series::CommSeries;

    fn q() -> Ring {
        Ring::rationals()
    }

    fn tk(r: &Ring, ctx: GradingContext, k: usize, c: i64) -> CommSeries<RingElement> {
        CommSeries::monomial(r, ctx, k, r.from_int(c))
    }

    fn der(r: &Ring, ctx: GradingContext, a: &[(usize, i64)], b: &[(usize, i64)]) -> Derivation<RingElement> {
        let sum = |xs: &[(usize, i64)]| xs.iter().fold(CommSeries::zero(r, ctx), |acc, &(k, c)| acc.add(&tk(r, ctx, k, c)));
        Derivation::normalised(&sum(a), &sum(b)).unwrap()
    }

    #[test]
    fn order_checks() {
        let ctx = GradingContext::even(6).unwrap();
        let m0 = MooreStructure::trivial(&q(), ctx);
        let m1 = der(&q(), ctx, &[(2, 1)], &[]);
        let zero = Derivation::zero(&q(), ctx);
        let jet = DeformationJet::new(&m0, &[m1, zero.clone(), zero], 0).unwrap();
        assert_eq!(jet.first_failure(), None);
        assert_eq!(jet.coefficient(1).to_string(), "t^2 dtau");
        assert!(DeformationJet::trivial(&m0, 3, 0).unwrap().is_valid());
        let bad = DeformationJet::new(&m0, &[der(&q(), ctx, &[], &[(2, 1)])], 0).unwrap();
        assert_eq!(bad.first_failure(), Some(1));
        assert_eq!(bad.obstruction().unwrap_err(), Error::InvalidJet(1));
    }

    #[test]
    fn obstruction_sums() {
        let even = GradingContext::even(6).unwrap();
        let m0 = MooreStructure::trivial(&q(), even);
        let jet = DeformationJet::new(&m0, &[der(&q(), even, &[], &[(2, 1)])], 0).unwrap();
        let obs = jet.obstruction_sum();
        assert_eq!(obs.to_string(), "2*t^3 dt");
        assert!(differential(&obs, &m0).unwrap().is_zero());

        let odd = GradingContext::odd(6).unwrap();
        let m0 = MooreStructure::trivial(&q(), odd);
        let jet = DeformationJet::new(&m0, &[der(&q(), odd, &[], &[(2, 1)])], 0).unwrap();
        assert!(jet.obstruction_sum().is_zero());
    }

    #[test]
    fn extension_by_coboundary() {
        let ctx = GradingContext::odd(8).unwrap();
        let m = MooreStructure::odd(CommSeries::zero(&q(), ctx), tk(&q(), ctx, 2, 1)).unwrap();
        let eta = der(&q(), ctx, &[(3, 1)], &[(1, 2)]);
        let m1 = differential(&eta, &m).unwrap();
        let jet = DeformationJet::new(&m, &[m1], 0).unwrap();
        assert!(jet.is_valid());
        let next = jet.extension().unwrap().expect("obstruction vanishes");
        assert!(jet.extend(&next).unwrap().is_valid());
    }

    #[test]
    fn product_formula_instance() {
        let ctx = GradingContext::even(6).unwrap();
        let r = q();
        let t2 = NcSeries::from_comm(&tk(&r, ctx, 2, 1));
        let zero = NcSeries::zero(&r, ctx);
        let psi = AutomorphismJet::from_components(&r, ctx, 0, &[(t2, zero.clone())]).unwrap();
        let psi2 = psi.extend(&[(zero.clone(), zero)]).unwrap();
        let tautau = NcSeries::monomial(&r, ctx, Word::from_letters(&[Letter::Tau, Letter::Tau]), r.one());
        assert_eq!(psi2.component_on(2, &tautau).to_string(), "t^4");
        assert!(psi2.product_formula(2, Word::from_letters(&[Letter::Tau, Letter::Tau])).agrees_with(&psi2.component_on(2, &tautau)));
        assert!(psi2.is_multiplicative(4));
        assert!(psi2.preserves_unit());

        let id = AutomorphismJet::identity(&r, ctx, 1, 0).unwrap();
        let z = NcSeries::zero(&r, ctx);
        assert!(id.extend(&[(z.clone(), z)]).unwrap().map().is_identity());
    }

    #[test]
    fn exponential_integration() {
        let ctx = GradingContext::even(6).unwrap();
        let r = q();
        let m0 = MooreStructure::trivial(&r, ctx);
        let phi = der(&r, ctx, &[], &[(1, 1)]);
        let jet = integrate_infinitesimal(&phi, 1, 4, &m0, 0).unwrap();
        let t = NcSeries::t(&r, ctx);
        for (k, want) in [(1, rational(1, 1)), (2, rational(1, 2)), (3, rational(1, 6)), (4, rational(1, 24))] {
            assert!(jet.component_on(k, &t).agrees_with(&t.map_coefficients(|c| c.scale(&want).unwrap())));
        }
        assert!(jet.commutes_with(&m0));
        let zero = Derivation::zero(&r, ctx);
        assert!(integrate_infinitesimal(&zero, 1, 3, &m0, 0).unwrap().map().is_identity());
        let f2 = Ring::integers_mod(2).unwrap();
        let m2 = MooreStructure::trivial(&f2, ctx);
        let phi2 = der(&f2, ctx, &[], &[(1, 1)]);
        assert_eq!(integrate_infinitesimal(&phi2, 1, 3, &m2, 0).unwrap_err(), Error::RequiresRationals);
    }

    #[test]
    fn trivialize_coboundary_jet() {
        let ctx = GradingContext::odd(8).unwrap();
        let r = q();
        let m0 = MooreStructure::trivial(&r, ctx);
        assert!(matches!(trivialize(&DeformationJet::trivial(&m0, 3, 0).unwrap(), 3).unwrap(),
            Trivialization::Trivial { ref steps, .. } if steps.is_empty()));
        let eta = der(&r, ctx, &[(3, 1)], &[]);
        let m1 = differential(&eta, &m0).unwrap();
        assert_eq!(m1.to_string(), "2*t^4 dt");
        let jet = DeformationJet::new(&m0, &[m1.clone()], 0).unwrap();
        let out = trivialize(&jet, 1).unwrap();
        assert!(out.is_trivial());
        assert_eq!(out.steps().len(), 1);
        assert!(differential(&out.steps()[0].xi, &m0).unwrap().agrees_with(&m1.neg()));
    }

    #[test]
    fn characteristic_two_boundary() {
        let ctx = GradingContext::even(6).unwrap();
        let f2 = Ring::integers_mod(2).unwrap();
        let m0 = MooreStructure::trivial(&f2, ctx);
        let zero = Derivation::zero(&f2, ctx);
        let m2 = der(&f2, ctx, &[(2, 1)], &[]);
        let jet = DeformationJet::new(&m0, &[zero, m2], 0).unwrap();
        assert!(jet.is_valid());
        match trivialize(&jet, 2).unwrap() {
            Trivialization::Stuck { order, class, .. } => {
                assert_eq!(order, 2);
                assert_eq!(class.to_string(), "t^2 dtau");
            }
            other => panic!("expected stuck, got {other:?}"),
        }

        let lam = make_ring(&RingSpec::polynomial(RingSpec::IntegersMod(2), vec![Generator::new("s", 0)], 2)).unwrap();
        let s = lam.generator("s").unwrap();
        let pair = crate::moore::GaugePair::new(
            CommSeries::monomial(&lam, ctx, 1, s),
            CommSeries::t(&lam, ctx),
        )
        .unwrap();
        let trivial = super::super::DeformationOverBase::trivial(&lam, ctx).unwrap();
        let moved = super::super::pointed_conjugate(&pair, &trivial).unwrap();
        assert_eq!(moved.structure().to_string(), "m0 + s^2*t^2 dtau");

        let psi = AutomorphismJet::from_map(&f2, 0, 2, pair.to_endomorphism()).unwrap();
        let start = DeformationJet::trivial(&m0, 2, 0).unwrap();
        assert!(psi.conjugate(&start).unwrap().agrees_with(&jet));
        let cmp = obstructions_cohomologous_check(&start, &jet, &psi).unwrap();
        assert!(cmp.cohomologous && cmp.mechanism_holds);
    }

    #[test]
    fn cohomologous_obstructions() {
        let ctx = GradingContext::odd(8).unwrap();
        let r = q();
        let m = MooreStructure::odd(CommSeries::zero(&r, ctx), tk(&r, ctx, 2, 1)).unwrap();
        let j1 = DeformationJet::new(&m, &[der(&r, ctx, &[(2, 1)], &[(4, 3)]), der(&r, ctx, &[(4, 1)], &[])], 0).unwrap();
        assert!(j1.is_valid());
        let id = AutomorphismJet::identity(&r, ctx, 2, 0).unwrap();
        let same = obstructions_cohomologous_check(&j1, &j1, &id).unwrap();
        assert!(same.cohomologous && same.mechanism_holds && same.xi.is_zero());

        let xi = der(&r, ctx, &[(3, 1)], &[(1, 2), (3, -1)]);
        let comp = (xi.tau_image().clone(), xi.t_image().clone());
        let zero = NcSeries::zero(&r, ctx);
        let psi = AutomorphismJet::from_components(&r, ctx, 0, &[comp, (zero.clone(), zero)]).unwrap();
        let j2 = psi.conjugate(&j1).unwrap();
        let cmp = obstructions_cohomologous_check(&j1, &j2, &psi).unwrap();
        assert!(cmp.cohomologous && cmp.mechanism_holds);
    }
}
