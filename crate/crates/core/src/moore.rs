//! Moore structures and their gauge pairs.
//!
//! An even structure is `m₀ + u(t)∂_τ`; an odd one is
//! `m₀ + w(t)∂_τ + v(t)∂_t` with `v`, `w` in even powers of `t`. Here `m₀` is
//! the trivial structure `τ ↦ τ²`, `t ↦ [τ, t]`.
//!
//! A [`GaugePair`] `(G, F)` stands for the automorphism `τ ↦ τ + G(t)`,
//! `t ↦ F(t)` and acts on structures by conjugation. For odd structures the
//! action has a closed form ([`GaugePair::act`]); the generic conjugation in
//! [`crate::calculus`] is kept alongside as [`GaugePair::act_by_conjugation`].

use std::fmt;

use crate::calculus::{Derivation, Endomorphism};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::series::{CommSeries, GradingContext, NcSeries, Parity};

/// Coefficient series of a Moore structure.
#[derive(Clone, Debug)]
pub enum MooreData<C: Scalar> {
    Even { u: CommSeries<C> },
    Odd { v: CommSeries<C>, w: CommSeries<C> },
}

#[derive(Clone, Debug)]
pub struct MooreStructure<C: Scalar> {
    data: MooreData<C>,
}

/// The trivial structure `τ ↦ τ²`, `t ↦ [τ, t]`.
pub fn trivial_derivation<C: Scalar>(ring: &C::Ring, ctx: GradingContext) -> Derivation<C> {
    let tau = NcSeries::tau(ring, ctx);
    let t = NcSeries::t(ring, ctx);
    let ad = tau.graded_commutator(&t).expect("letters are homogeneous");
    Derivation::new(tau.mul(&tau), ad).expect("same context")
}

fn require_constant_free<C: Scalar>(s: &CommSeries<C>, what: &str) -> Result<()> {
    if s.constant_term().is_zero() {
        Ok(())
    } else {
        Err(Error::ConstantTerm(what.into()))
    }
}

impl<C: Scalar> MooreStructure<C> {
    /// Builds and validates a structure; `make_moore` in the usual
    /// terminology.
    pub fn new(data: MooreData<C>) -> Result<Self> {
        match &data {
            MooreData::Even { u } => {
                let ctx = u.context();
                if ctx.t_is_odd() {
                    return Err(Error::ParityViolation("even structure needs even d".into()));
                }
                require_constant_free(u, "u")?;
                if ctx.is_strict() {
                    let dd = ctx.d() + 2;
                    u.check_degrees("u", |k| k as i64 * dd - 2)?;
                }
            }
            MooreData::Odd { v, w } => {
                let ctx = v.context();
                if w.context() != ctx || w.ring() != v.ring() {
                    return Err(Error::ContextMismatch);
                }
                if !ctx.t_is_odd() {
                    return Err(Error::ParityViolation("odd structure needs odd d".into()));
                }
                require_constant_free(v, "v")?;
                require_constant_free(w, "w")?;
                if !v.has_only(Parity::Even) {
                    return Err(Error::ParityViolation("v must contain only even powers of t".into()));
                }
                if !w.has_only(Parity::Even) {
                    return Err(Error::ParityViolation("w must contain only even powers of t".into()));
                }
                if ctx.is_strict() {
                    let dd = ctx.d() + 2;
                    v.check_degrees("v", |k| k as i64 * dd - ctx.d() - 3)?;
                    w.check_degrees("w", |k| k as i64 * dd - 2)?;
                }
            }
        }
        let data = match data {
            MooreData::Odd { v, w } => MooreData::Odd {
                v: v.flagged(Parity::Even).expect("checked"),
                w: w.flagged(Parity::Even).expect("checked"),
            },
            even => even,
        };
        Ok(MooreStructure { data })
    }

    pub fn even(u: CommSeries<C>) -> Result<Self> {
        Self::new(MooreData::Even { u })
    }

    pub fn odd(v: CommSeries<C>, w: CommSeries<C>) -> Result<Self> {
        Self::new(MooreData::Odd { v, w })
    }

    /// `m₀` in the parity of the context.
    pub fn trivial(ring: &C::Ring, ctx: GradingContext) -> Self {
        let zero = CommSeries::zero(ring, ctx);
        let data = if ctx.t_is_odd() {
            MooreData::Odd { v: zero.clone(), w: zero }
        } else {
            MooreData::Even { u: zero }
        };
        Self::new(data).expect("trivial structure is valid")
    }

    /// Reads a structure back from its derivation.
    pub fn from_derivation(m: &Derivation<C>) -> Result<Self> {
        let ctx = m.context();
        let rest = m.sub(&trivial_derivation(m.ring(), ctx));
        let (a, b) = rest.parts()?;
        if ctx.t_is_odd() {
            Self::odd(b, a)
        } else {
            if !b.is_zero() {
                return Err(Error::ParityViolation("even structures have no ∂_t part".into()));
            }
            Self::even(a)
        }
    }

    pub fn data(&self) -> &MooreData<C> {
        &self.data
    }

    fn any_series(&self) -> &CommSeries<C> {
        match &self.data {
            MooreData::Even { u } => u,
            MooreData::Odd { v, .. } => v,
        }
    }

    pub fn context(&self) -> GradingContext {
        self.any_series().context()
    }

    pub fn ring(&self) -> &C::Ring {
        self.any_series().ring()
    }

    pub fn is_odd(&self) -> bool {
        matches!(self.data, MooreData::Odd { .. })
    }

    pub fn u(&self) -> Option<&CommSeries<C>> {
        match &self.data {
            MooreData::Even { u } => Some(u),
            _ => None,
        }
    }

    pub fn v(&self) -> Option<&CommSeries<C>> {
        match &self.data {
            MooreData::Odd { v, .. } => Some(v),
            _ => None,
        }
    }

    pub fn w(&self) -> Option<&CommSeries<C>> {
        match &self.data {
            MooreData::Odd { w, .. } => Some(w),
            _ => None,
        }
    }

    /// The `∂_τ` coefficient: `u` or `w`.
    pub fn tau_coefficient(&self) -> &CommSeries<C> {
        match &self.data {
            MooreData::Even { u } => u,
            MooreData::Odd { w, .. } => w,
        }
    }

    /// The `∂_t` coefficient: `v`, or zero in the even case.
    pub fn t_coefficient(&self) -> CommSeries<C> {
        match &self.data {
            MooreData::Even { u } => CommSeries::zero(u.ring(), u.context()).with_precision(u.precision()),
            MooreData::Odd { v, .. } => v.clone(),
        }
    }

    /// Odd structure with `v = 0`.
    pub fn is_normal_form(&self) -> bool {
        matches!(&self.data, MooreData::Odd { v, .. } if v.is_zero())
    }

    pub fn precision(&self) -> usize {
        match &self.data {
            MooreData::Even { u } => u.precision(),
            MooreData::Odd { v, w } => v.precision().min(w.precision()),
        }
    }

    /// `m₀ + (coefficients)` as a derivation.
    pub fn derivation(&self) -> Derivation<C> {
        let ctx = self.context();
        let extra = Derivation::normalised(self.tau_coefficient(), &self.t_coefficient()).expect("validated");
        trivial_derivation(self.ring(), ctx).add(&extra).with_precision(self.precision())
    }

    /// The non-trivial part `m - m₀` as a normalised derivation.
    pub fn perturbation(&self) -> Derivation<C> {
        Derivation::normalised(self.tau_coefficient(), &self.t_coefficient()).expect("validated")
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        match (&self.data, &other.data) {
            (MooreData::Even { u: a }, MooreData::Even { u: b }) => a.agrees_with(b),
            (MooreData::Odd { v: v1, w: w1 }, MooreData::Odd { v: v2, w: w2 }) => {
                v1.agrees_with(v2) && w1.agrees_with(w2)
            }
            _ => false,
        }
    }

    pub fn map_into<D: Scalar>(&self, ring: &D::Ring, f: impl Fn(&C) -> D) -> Result<MooreStructure<D>> {
        let data = match &self.data {
            MooreData::Even { u } => MooreData::Even { u: u.map_into(ring, &f) },
            MooreData::Odd { v, w } => MooreData::Odd { v: v.map_into(ring, &f), w: w.map_into(ring, &f) },
        };
        MooreStructure::new(data)
    }
}

impl<C: Scalar> fmt::Display for MooreStructure<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.perturbation();
        if p.is_zero() {
            write!(f, "m0")
        } else {
            write!(f, "m0 + {p}")
        }
    }
}

/// The datum `(G, F)` of a unital isomorphism.
#[derive(Clone, Debug)]
pub struct GaugePair<C: Scalar> {
    g: CommSeries<C>,
    f: CommSeries<C>,
}

impl<C: Scalar> GaugePair<C> {
    /// Validates: no constant terms, a unit linear coefficient in `F`, and
    /// odd powers only when `t` is odd. A nonzero `G` with `t` even is kept
    /// (it is parity-consistent only in characteristic 2).
    pub fn new(g: CommSeries<C>, f: CommSeries<C>) -> Result<Self> {
        let ctx = g.context();
        if f.context() != ctx || f.ring() != g.ring() {
            return Err(Error::ContextMismatch);
        }
        require_constant_free(&g, "G")?;
        require_constant_free(&f, "F")?;
        if f.coefficient(1).inverse().is_none() {
            return Err(Error::NotInvertible(format!("linear coefficient of F is {}", f.coefficient(1))));
        }
        let (g, f) = if ctx.t_is_odd() {
            let g = g.flagged(Parity::Odd).map_err(|_| Error::ParityViolation("G must be odd".into()))?;
            let f = f.flagged(Parity::Odd).map_err(|_| Error::ParityViolation("F must be odd".into()))?;
            (g, f)
        } else {
            (g, f)
        };
        if ctx.is_strict() {
            let dd = ctx.d() + 2;
            g.check_degrees("G", |k| k as i64 * dd - 1)?;
            f.check_degrees("F", |k| (k as i64 - 1) * dd)?;
        }
        Ok(GaugePair { g, f })
    }

    pub fn identity(ring: &C::Ring, ctx: GradingContext) -> Self {
        Self::new(CommSeries::zero(ring, ctx), CommSeries::t(ring, ctx)).expect("identity pair")
    }

    pub fn g(&self) -> &CommSeries<C> {
        &self.g
    }

    pub fn f(&self) -> &CommSeries<C> {
        &self.f
    }

    pub fn context(&self) -> GradingContext {
        self.g.context()
    }

    pub fn ring(&self) -> &C::Ring {
        self.g.ring()
    }

    pub fn precision(&self) -> usize {
        self.g.precision().min(self.f.precision())
    }

    /// `(G, F)∘(G', F') = (G + G'(F), F'(F))`.
    pub fn compose(&self, other: &GaugePair<C>) -> Result<GaugePair<C>> {
        let g = self.g.try_add(&other.g.compose(&self.f)?)?;
        let f = other.f.compose(&self.f)?;
        GaugePair::new(g, f)
    }

    /// `(-G(F⁻¹), F⁻¹)`.
    pub fn inverse(&self) -> Result<GaugePair<C>> {
        let finv = self.f.inverse()?;
        let g = self.g.compose(&finv)?.neg();
        GaugePair::new(g, finv)
    }

    pub fn to_endomorphism(&self) -> Endomorphism<C> {
        Endomorphism::from_pair(&self.g, &self.f).expect("validated pair")
    }

    pub fn is_identity(&self) -> bool {
        self.g.is_zero() && self.f.agrees_with(&CommSeries::t(self.ring(), self.context()))
    }

    pub fn agrees_with(&self, other: &Self) -> bool {
        self.g.agrees_with(&other.g) && self.f.agrees_with(&other.f)
    }

    /// Conjugation `φ m φ⁻¹`. Odd structures use the closed form
    /// `v ↦ 2tG + t·v(F)/F`, `w ↦ -G·v(F)/F + w(F) - G²`; even structures go
    /// through generic conjugation.
    pub fn act(&self, m: &MooreStructure<C>) -> Result<MooreStructure<C>> {
        if self.context() != m.context() || self.ring() != m.ring() {
            return Err(Error::ContextMismatch);
        }
        let MooreData::Odd { v, w } = m.data() else {
            return self.act_by_conjugation(m);
        };
        let (g, f) = (self.g.clone().unflagged(), self.f.clone().unflagged());
        let q = v.clone().unflagged().divide_by_t()?.compose(&f)?;
        let new_v = g.multiply_by_t().scale_int(2).add(&q.multiply_by_t());
        let new_w = g.mul(&q).neg().add(&w.clone().unflagged().compose(&f)?).sub(&g.mul(&g));
        MooreStructure::odd(new_v, new_w)
    }

    /// The action computed by conjugating the derivation.
    pub fn act_by_conjugation(&self, m: &MooreStructure<C>) -> Result<MooreStructure<C>> {
        let conj = self.to_endomorphism().conjugate(&m.derivation())?;
        MooreStructure::from_derivation(&conj)
    }
}

impl<C: Scalar> fmt::Display for GaugePair<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.g, self.f)
    }
}

/// Free-function form of [`GaugePair::act`].
pub fn act<C: Scalar>(p: &GaugePair<C>, m: &MooreStructure<C>) -> Result<MooreStructure<C>> {
    p.act(m)
}

/// The gauge `(-v/2t, t)` and resulting `u = (v/2t)² + w` bringing an odd
/// structure to the form `m₀ + u∂_τ`. Needs 2 to be a unit.
pub fn normal_form<C: Scalar>(m: &MooreStructure<C>) -> Result<(GaugePair<C>, CommSeries<C>)> {
    let (Some(v), Some(w)) = (m.v(), m.w()) else {
        return Err(Error::ParityViolation("normal form applies to odd structures".into()));
    };
    let half = v.clone().unflagged().divide_by_2t()?;
    let ctx = m.context();
    let pair = GaugePair::new(half.neg(), CommSeries::t(m.ring(), ctx))?;
    let u = half.mul(&half).add(&w.clone().unflagged());
    let moved = pair.act(m)?;
    let target = MooreStructure::odd(CommSeries::zero(m.ring(), ctx), u.clone())?;
    if !moved.agrees_with(&target) {
        return Err(Error::Unsupported("normal form verification failed".into()));
    }
    Ok((pair, u))
}

/// Whether `p` carries `m1` to `m2`, through the joint precision.
pub fn verify_equivalence<C: Scalar>(
    p: &GaugePair<C>,
    m1: &MooreStructure<C>,
    m2: &MooreStructure<C>,
) -> Result<bool> {
    if m1.context() != m2.context() || m1.ring() != m2.ring() {
        return Err(Error::ContextMismatch);
    }
    Ok(p.act(m1)?.agrees_with(m2))
}
