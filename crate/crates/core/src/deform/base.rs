use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::moore::{normal_form, GaugePair, MooreStructure};
use crate::ring::{Generator, Monomial, Ring, RingElement, RingSpec};
use crate::scalar::Scalar;
use crate::series::{CommSeries, GradingContext};

/// A unital ring map given by the images of the source generators.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    images: Vec<RingElement>,
}

impl RingHom {
    /// Checks that the images live in `target` and respect every truncation
    /// relation of `source`.
    pub fn new(source: &Ring, target: &Ring, images: Vec<RingElement>) -> Result<Self> {
        if source.base_kind() != target.base_kind() {
            return Err(Error::MixedRings);
        }
        if images.len() != source.generators().len() || images.iter().any(|x| x.ring_handle() != target) {
            return Err(Error::MixedRings);
        }
        let hom = RingHom { source: source.clone(), target: target.clone(), images };
        for (range, bound) in source.layer_bounds() {
            for e in exponents_of_total(range.len(), bound + 1) {
                let mut exps = vec![0; source.generators().len()];
                exps[range.clone()].copy_from_slice(&e);
                if !hom.monomial_image(&Monomial(exps), &mut HashMap::new()).is_zero() {
                    return Err(Error::NotRepresentable(format!(
                        "images do not respect the truncation of {}",
                        source.spec()
                    )));
                }
            }
        }
        Ok(hom)
    }

    /// Images by generator name; generators not listed go to the generator
    /// of the same name in `target`, or to zero.
    pub fn from_assignments(source: &Ring, target: &Ring, assignments: &[(String, RingElement)]) -> Result<Self> {
        for (name, _) in assignments {
            source.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.clone()))?;
        }
        let images = source
            .generators()
            .iter()
            .map(|g| match assignments.iter().find(|(n, _)| *n == g.name) {
                Some((_, x)) => x.clone(),
                None => target.generator(&g.name).unwrap_or_else(|_| target.zero()),
            })
            .collect();
        Self::new(source, target, images)
    }

    pub fn identity(ring: &Ring) -> Self {
        let images = (0..ring.generators().len()).map(|i| ring.generator_at(i)).collect();
        RingHom { source: ring.clone(), target: ring.clone(), images }
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn image_of(&self, name: &str) -> Option<&RingElement> {
        self.source.generator_index(name).map(|i| &self.images[i])
    }

    fn monomial_image(&self, m: &Monomial, powers: &mut HashMap<(usize, u32), RingElement>) -> RingElement {
        let mut acc = self.target.one();
        for (i, &e) in m.0.iter().enumerate().filter(|(_, &e)| e > 0) {
            let p = powers.entry((i, e)).or_insert_with(|| self.images[i].pow(e)).clone();
            acc = &acc * &p;
        }
        acc
    }

    pub fn apply(&self, x: &RingElement) -> RingElement {
        assert!(x.ring_handle() == &self.source, "element outside the source ring");
        let mut powers = HashMap::new();
        let mut acc = self.target.zero();
        for (m, c) in x.terms() {
            let img = self.monomial_image(m, &mut powers);
            acc = &acc + &img.scale(c).expect("shared ground ring");
        }
        acc
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &RingHom) -> Result<RingHom> {
        if self.target != other.source {
            return Err(Error::MixedRings);
        }
        let images = self.images.iter().map(|x| other.apply(x)).collect();
        RingHom::new(&self.source, &other.target, images)
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && self.images.iter().enumerate().all(|(i, x)| *x == self.source.generator_at(i))
    }

    /// `ε' ∘ f = ε`, checked on generators.
    pub fn is_augmentation_compatible(&self) -> bool {
        let below = self.target.augmentation_target();
        self.source.generators().iter().zip(&self.images).enumerate().all(|(i, (_, img))| {
            let want = self.source.generator_at(i).epsilon().reinterpret(&below);
            matches!(want, Ok(w) if w == img.epsilon())
        })
    }
}

impl fmt::Display for RingHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (g, x)) in self.source.generators().iter().zip(&self.images).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {x}", g.name)?;
        }
        Ok(())
    }
}

fn exponents_of_total(width: usize, total: u32) -> Vec<Vec<u32>> {
    if width == 0 {
        return if total == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in exponents_of_total(width - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// A Moore structure over an augmented base ring.
#[derive(Clone, Debug)]
pub struct DeformationOverBase {
    structure: MooreStructure<RingElement>,
}

impl DeformationOverBase {
    pub fn new(structure: MooreStructure<RingElement>) -> Result<Self> {
        if !structure.ring().is_augmented() {
            return Err(Error::NotAugmented(structure.ring().spec().to_string()));
        }
        Ok(DeformationOverBase { structure })
    }

    /// `m₀` over the given base.
    pub fn trivial(base: &Ring, ctx: GradingContext) -> Result<Self> {
        Self::new(MooreStructure::trivial(base, ctx))
    }

    pub fn base(&self) -> &Ring {
        self.structure.ring()
    }

    pub fn structure(&self) -> &MooreStructure<RingElement> {
        &self.structure
    }

    pub fn context(&self) -> GradingContext {
        self.structure.context()
    }

    /// `(ker ε)² = 0`.
    pub fn is_infinitesimal(&self) -> bool {
        self.base().is_infinitesimal()
    }

    /// The structure pushed down along the augmentation.
    pub fn undeformed(&self) -> Result<MooreStructure<RingElement>> {
        let below = self.base().augmentation_target();
        self.structure.map_into(&below, |c: &RingElement| c.epsilon())
    }

    /// Whether the undeformed structure is `m₀`.
    pub fn deforms_trivial(&self) -> bool {
        let eps_zero = |s: &CommSeries<RingElement>| s.coefficients().iter().all(|c| c.epsilon().is_zero());
        eps_zero(self.structure.tau_coefficient()) && eps_zero(&self.structure.t_coefficient())
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.structure.agrees_with(&other.structure)
    }
}

impl fmt::Display for DeformationOverBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} over {}", self.structure, self.base().spec())
    }
}

/// Transport of a deformation along an augmented ring map.
pub fn push_out(f: &RingHom, d: &DeformationOverBase) -> Result<DeformationOverBase> {
    if f.source() != d.base() {
        return Err(Error::MixedRings);
    }
    if !f.is_augmentation_compatible() {
        return Err(Error::NotAugmented(format!("map {f} does not commute with the augmentations")));
    }
    DeformationOverBase::new(d.structure.map_into(f.target(), |c| f.apply(c))?)
}

/// `ε(G) = 0` and `ε(F) = t`.
pub fn is_pointed(p: &GaugePair<RingElement>) -> bool {
    let g_ok = p.g().coefficients().iter().all(|c| c.epsilon().is_zero());
    let f_ok = p.f().coefficients().iter().enumerate().all(|(k, c)| {
        let e = c.epsilon();
        if k == 1 {
            e.is_one()
        } else {
            e.is_zero()
        }
    });
    g_ok && f_ok
}

/// Conjugates a deformation by a pointed gauge pair.
pub fn pointed_conjugate(p: &GaugePair<RingElement>, d: &DeformationOverBase) -> Result<DeformationOverBase> {
    if p.ring() != d.base() || p.context() != d.context() {
        return Err(Error::ContextMismatch);
    }
    if !is_pointed(p) {
        return Err(Error::NotPointed(p.to_string()));
    }
    DeformationOverBase::new(p.act(d.structure())?)
}

/// The generic deformation of `m₀` over a polynomial ring truncated at
/// `truncation`: `m₀ + Σ wᵢt²ⁱ∂_τ` for odd `d`, `m₀ + Σ uᵢtⁱ∂_τ` for even `d`.
#[derive(Clone, Debug)]
pub struct UniversalDeformation {
    pub deformation: DeformationOverBase,
    /// Parameter names, in order.
    pub parameters: Vec<String>,
    /// Power of `t` multiplied by each parameter.
    pub powers: Vec<usize>,
}

pub fn universal_deformation(base: &Ring, ctx: GradingContext, truncation: u32) -> Result<UniversalDeformation> {
    let dd = ctx.d() + 2;
    let (stem, powers): (&str, Vec<usize>) = if ctx.t_is_odd() {
        ("w", (1..=ctx.order() / 2).map(|i| 2 * i).collect())
    } else {
        ("u", (1..=ctx.order()).collect())
    };
    let mut names = Vec::new();
    let mut gens = Vec::new();
    for (i, &k) in powers.iter().enumerate() {
        let name = base.fresh_name(&format!("{stem}{}", i + 1));
        gens.push(Generator::new(name.clone(), k as i64 * dd - 2));
        names.push(name);
    }
    let ring = crate::ring::make_ring(&RingSpec::polynomial(base.spec().clone(), gens, truncation))?;
    let mut series = CommSeries::zero(&ring, ctx);
    for (name, &k) in names.iter().zip(&powers) {
        series = series.add(&CommSeries::monomial(&ring, ctx, k, ring.generator(name)?));
    }
    let structure = if ctx.t_is_odd() {
        MooreStructure::odd(CommSeries::zero(&ring, ctx), series)?
    } else {
        MooreStructure::even(series)?
    };
    Ok(UniversalDeformation { deformation: DeformationOverBase::new(structure)?, parameters: names, powers })
}

/// Output of [`classify_miniversal`].
#[derive(Clone, Debug)]
pub struct Classification {
    /// Pointed gauge taking the input to the push-out.
    pub gauge: GaugePair<RingElement>,
    /// Classifying map from the universal base.
    pub map: RingHom,
    pub universal: UniversalDeformation,
    /// The classifying map is unique on the parameters (square-zero base).
    pub unique: bool,
}

/// Classifies a deformation of `m₀`: a pointed gauge and a map `f` with
/// `push_out(f, universal) = gauge·D`, verified before returning.
pub fn classify_miniversal(d: &DeformationOverBase) -> Result<Classification> {
    if !d.deforms_trivial() {
        return Err(Error::HypothesisFailed("deformation is not based at the trivial structure".into()));
    }
    let lambda = d.base();
    let ctx = d.context();
    let below = lambda.augmentation_target();
    let truncation = lambda.kernel_nilpotency().expect("augmented");
    let universal = universal_deformation(&below, ctx, truncation)?;
    let (gauge, u) = if ctx.t_is_odd() {
        normal_form(d.structure())?
    } else {
        (GaugePair::identity(lambda, ctx), d.structure().tau_coefficient().clone())
    };
    let source = universal.deformation.base().clone();
    let mut images = Vec::new();
    for g in source.generators() {
        match universal.parameters.iter().position(|n| *n == g.name) {
            Some(i) => images.push(u.coefficient(universal.powers[i])),
            None => images.push(lambda.generator(&g.name)?),
        }
    }
    let map = RingHom::new(&source, lambda, images)?;
    let pushed = push_out(&map, &universal.deformation)?;
    let moved = pointed_conjugate(&gauge, d)?;
    if !pushed.agrees_with(&moved) {
        return Err(Error::Unsupported("classification failed verification".into()));
    }
    Ok(Classification { gauge, map, universal, unique: lambda.is_infinitesimal() })
}
