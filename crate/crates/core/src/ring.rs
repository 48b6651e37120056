//! Exact, evenly graded commutative coefficient rings.
//!
//! A ring is described by a [`RingSpec`]: one of the ground rings ℚ, ℤ,
//! ℤ/n, or a tower of extensions of one. Each extension layer adds named
//! generators of even degree and is either a polynomial layer truncated at
//! total exponent `M` or a square-zero layer. Elements are stored as maps
//! from exponent vectors to ground-ring values; monomials that violate a
//! layer bound are dropped on construction, so every element is canonical.
//!
//! Every layer carries an augmentation killing its generators, giving the
//! split `Λ = R ⊕ ker ε` used by [`RingElement::augment`].

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground ring at the bottom of a tower.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    Rationals,
    Integers,
    IntegersMod(u64),
}

impl BaseKind {
    /// Canonical representative.
    pub fn reduce(&self, q: BigRational) -> BigRational {
        match self {
            BaseKind::IntegersMod(n) => {
                let n = BigInt::from(*n);
                BigRational::from_integer(q.to_integer().mod_floor(&n))
            }
            _ => q,
        }
    }

    /// Brings an arbitrary rational into the ground ring, if it lives there.
    pub fn embed(&self, q: &BigRational) -> Option<BigRational> {
        match self {
            BaseKind::Rationals => Some(q.clone()),
            BaseKind::Integers => q.is_integer().then(|| q.clone()),
            BaseKind::IntegersMod(n) => {
                let n = BigInt::from(*n);
                let den = q.denom().mod_floor(&n);
                let inv = mod_inverse(&den, &n)?;
                let v = (q.numer() * inv).mod_floor(&n);
                Some(BigRational::from_integer(v))
            }
        }
    }

    pub fn is_unit(&self, c: &BigRational) -> bool {
        self.inverse(c).is_some()
    }

    pub fn inverse(&self, c: &BigRational) -> Option<BigRational> {
        match self {
            BaseKind::Rationals => (!c.is_zero()).then(|| c.recip()),
            BaseKind::Integers => (c.abs() == BigRational::one()).then(|| c.clone()),
            BaseKind::IntegersMod(n) => {
                let n = BigInt::from(*n);
                mod_inverse(&c.to_integer(), &n).map(BigRational::from_integer)
            }
        }
    }

    /// Solves `d * x = a` in the ground ring.
    pub fn divide(&self, a: &BigRational, d: &BigRational) -> Option<BigRational> {
        match self {
            BaseKind::Rationals => (!d.is_zero()).then(|| a / d),
            BaseKind::Integers => {
                if d.is_zero() {
                    return a.is_zero().then(BigRational::zero);
                }
                let q = a / d;
                q.is_integer().then_some(q)
            }
            BaseKind::IntegersMod(n) => {
                let n = BigInt::from(*n);
                let a = a.to_integer();
                let d = d.to_integer();
                let g = d.gcd(&n);
                if !a.mod_floor(&g).is_zero() {
                    return None;
                }
                let m = &n / &g;
                if m.is_one() {
                    return Some(BigRational::zero());
                }
                let inv = mod_inverse(&(&d / &g), &m)?;
                Some(BigRational::from_integer(((&a / &g) * inv).mod_floor(&m)))
            }
        }
    }

    /// Whether some nonzero ground element is killed by `k`.
    pub fn has_torsion(&self, k: u64) -> bool {
        match self {
            BaseKind::IntegersMod(n) => k.gcd(n) > 1,
            _ => k == 0,
        }
    }
}

impl fmt::Display for BaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseKind::Rationals => write!(f, "Q"),
            BaseKind::Integers => write!(f, "Z"),
            BaseKind::IntegersMod(n) => write!(f, "Z/{n}"),
        }
    }
}

fn mod_inverse(a: &BigInt, n: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(n).extended_gcd(n);
    e.gcd.is_one().then(|| e.x.mod_floor(n))
}

/// A named ring generator with its (even) degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i64,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i64) -> Self {
        Generator { name: name.into(), degree }
    }
}

/// Recursive description of a coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Rationals,
    Integers,
    IntegersMod(u64),
    Polynomial { base: Box<RingSpec>, generators: Vec<Generator>, truncation: u32 },
    SquareZero { base: Box<RingSpec>, generators: Vec<Generator> },
}

impl RingSpec {
    pub fn polynomial(base: RingSpec, generators: Vec<Generator>, truncation: u32) -> Self {
        RingSpec::Polynomial { base: Box::new(base), generators, truncation }
    }

    pub fn square_zero(base: RingSpec, generators: Vec<Generator>) -> Self {
        RingSpec::SquareZero { base: Box::new(base), generators }
    }
}

fn fmt_gens(f: &mut fmt::Formatter<'_>, gens: &[Generator]) -> fmt::Result {
    for (i, g) in gens.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{}:{}", g.name, g.degree)?;
    }
    Ok(())
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Rationals => write!(f, "Q"),
            RingSpec::Integers => write!(f, "Z"),
            RingSpec::IntegersMod(n) => write!(f, "Z/{n}"),
            RingSpec::Polynomial { base, generators, truncation } => {
                write!(f, "{base}[")?;
                fmt_gens(f, generators)?;
                write!(f, ";{truncation}]")
            }
            RingSpec::SquareZero { base, generators } => {
                write!(f, "{base}{{")?;
                fmt_gens(f, generators)?;
                write!(f, "}}")
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum LayerKind {
    Truncated(u32),
    SquareZero,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Layer {
    start: usize,
    end: usize,
    kind: LayerKind,
}

impl Layer {
    fn bound(&self) -> u32 {
        match self.kind {
            LayerKind::Truncated(m) => m,
            LayerKind::SquareZero => 1,
        }
    }
}

/// Flattened, validated form of a [`RingSpec`].
#[derive(Debug)]
pub struct RingDescriptor {
    spec: RingSpec,
    base: BaseKind,
    generators: Vec<Generator>,
    layers: Vec<Layer>,
    parent: Option<Ring>,
    basis: OnceLock<Vec<Monomial>>,
}

/// Shared handle to a [`RingDescriptor`].
#[derive(Clone, Debug)]
pub struct Ring(Arc<RingDescriptor>);

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }
}

impl Eq for Ring {}

/// Validates a ring specification and builds its descriptor.
pub fn make_ring(spec: &RingSpec) -> Result<Ring> {
    let desc = match spec {
        RingSpec::Rationals => leaf(spec, BaseKind::Rationals),
        RingSpec::Integers => leaf(spec, BaseKind::Integers),
        RingSpec::IntegersMod(n) => {
            if *n < 2 {
                return Err(Error::ModulusTooSmall(*n));
            }
            leaf(spec, BaseKind::IntegersMod(*n))
        }
        RingSpec::Polynomial { base, generators, truncation } => {
            extend(spec, base, generators, LayerKind::Truncated(*truncation))?
        }
        RingSpec::SquareZero { base, generators } => {
            extend(spec, base, generators, LayerKind::SquareZero)?
        }
    };
    Ok(Ring(Arc::new(desc)))
}

fn leaf(spec: &RingSpec, base: BaseKind) -> RingDescriptor {
    RingDescriptor {
        spec: spec.clone(),
        base,
        generators: Vec::new(),
        layers: Vec::new(),
        parent: None,
        basis: OnceLock::new(),
    }
}

fn extend(
    spec: &RingSpec,
    base: &RingSpec,
    new: &[Generator],
    kind: LayerKind,
) -> Result<RingDescriptor> {
    let parent = make_ring(base)?;
    let mut generators = parent.0.generators.clone();
    for g in new {
        if g.degree % 2 != 0 {
            return Err(Error::OddGeneratorDegree { name: g.name.clone(), degree: g.degree });
        }
        if g.name == "t" || g.name == "tau" || generators.iter().any(|h| h.name == g.name) {
            return Err(Error::DuplicateGenerator(g.name.clone()));
        }
        generators.push(g.clone());
    }
    let mut layers = parent.0.layers.clone();
    layers.push(Layer { start: parent.0.generators.len(), end: generators.len(), kind });
    Ok(RingDescriptor {
        spec: spec.clone(),
        base: parent.0.base.clone(),
        generators,
        layers,
        parent: Some(parent),
        basis: OnceLock::new(),
    })
}

impl Ring {
    pub fn rationals() -> Ring {
        make_ring(&RingSpec::Rationals).expect("valid")
    }

    pub fn integers() -> Ring {
        make_ring(&RingSpec::Integers).expect("valid")
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        make_ring(&RingSpec::IntegersMod(n))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.0.spec
    }

    pub fn base_kind(&self) -> &BaseKind {
        &self.0.base
    }

    /// All generators, innermost layer first.
    pub fn generators(&self) -> &[Generator] {
        &self.0.generators
    }

    pub fn generator_index(&self, name: &str) -> Option<usize> {
        self.0.generators.iter().position(|g| g.name == name)
    }

    /// Target of the augmentation: the ring below the outermost layer, or
    /// the ring itself for ground rings.
    pub fn augmentation_target(&self) -> Ring {
        self.0.parent.clone().unwrap_or_else(|| self.clone())
    }

    /// Whether the outermost layer exists.
    pub fn is_augmented(&self) -> bool {
        self.0.parent.is_some()
    }

    /// Largest `M` with `(ker ε)^M != 0` for the outermost layer.
    pub fn kernel_nilpotency(&self) -> Option<u32> {
        self.0.layers.last().map(Layer::bound)
    }

    /// Generator index ranges of the layers, innermost first, with the
    /// bound on the total exponent inside each.
    pub fn layer_bounds(&self) -> Vec<(std::ops::Range<usize>, u32)> {
        self.0.layers.iter().map(|l| (l.start..l.end, l.bound())).collect()
    }

    /// Whether `(ker ε)^2 = 0`.
    pub fn is_infinitesimal(&self) -> bool {
        matches!(self.kernel_nilpotency(), Some(m) if m <= 1)
    }

    pub fn zero(&self) -> RingElement {
        RingElement { ring: self.clone(), terms: BTreeMap::new() }
    }

    pub fn one(&self) -> RingElement {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> RingElement {
        self.constant(BigRational::from_integer(n.into()))
    }

    /// Embeds a rational, failing when it is not a ground-ring value.
    pub fn from_rational(&self, q: &BigRational) -> Result<RingElement> {
        let c = self.0.base.embed(q).ok_or_else(|| Error::NotRepresentable(q.to_string()))?;
        Ok(self.constant(c))
    }

    fn constant(&self, c: BigRational) -> RingElement {
        self.element(std::iter::once((Monomial::one(self.0.generators.len()), c)))
    }

    pub fn generator(&self, name: &str) -> Result<RingElement> {
        let idx = self.generator_index(name).ok_or_else(|| Error::UnknownGenerator(name.into()))?;
        Ok(self.generator_at(idx))
    }

    pub fn generator_at(&self, idx: usize) -> RingElement {
        let mut exps = vec![0; self.0.generators.len()];
        exps[idx] = 1;
        self.element(std::iter::once((Monomial(exps), BigRational::one())))
    }

    /// Builds an element from raw terms, reducing coefficients and dropping
    /// monomials outside the ring.
    pub fn element(&self, terms: impl IntoIterator<Item = (Monomial, BigRational)>) -> RingElement {
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in terms {
            assert_eq!(m.0.len(), self.0.generators.len(), "monomial arity");
            if !self.admissible(&m) {
                continue;
            }
            *map.entry(m).or_insert_with(BigRational::zero) += c;
        }
        let base = &self.0.base;
        let terms = map
            .into_iter()
            .map(|(m, c)| (m, base.reduce(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        RingElement { ring: self.clone(), terms }
    }

    fn admissible(&self, m: &Monomial) -> bool {
        self.0.layers.iter().all(|l| m.0[l.start..l.end].iter().sum::<u32>() <= l.bound())
    }

    /// Monomials spanning the ring over its ground ring.
    pub fn basis_monomials(&self) -> &[Monomial] {
        self.0.basis.get_or_init(|| {
            let mut out = vec![Monomial::one(0)];
            for layer in &self.0.layers {
                let width = layer.end - layer.start;
                let local = exponent_vectors(width, layer.bound());
                out = out
                    .iter()
                    .flat_map(|m| {
                        local.iter().map(move |e| {
                            let mut v = m.0.clone();
                            v.extend_from_slice(e);
                            Monomial(v)
                        })
                    })
                    .collect();
            }
            out.sort();
            out
        })
    }

    /// Names that do not collide with existing generators.
    pub fn fresh_name(&self, stem: &str) -> String {
        if self.generator_index(stem).is_none() {
            return stem.to_string();
        }
        (1..).map(|i| format!("{stem}_{i}")).find(|n| self.generator_index(n).is_none()).unwrap()
    }
}

fn exponent_vectors(width: usize, bound: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..width {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=bound - used).map(move |e| {
                    let mut w = v.clone();
                    w.push(e);
                    w
                })
            })
            .collect();
    }
    out
}

/// Exponent vector over a ring's generators. Ordered by total exponent,
/// then so that earlier generators come first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity])
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn times(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total().cmp(&other.total()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An element of a [`Ring`], in canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingElement {
    ring: Ring,
    terms: BTreeMap<Monomial, BigRational>,
}

impl RingElement {
    pub fn ring_handle(&self) -> &Ring {
        &self.ring
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficient of the empty monomial.
    pub fn constant_term(&self) -> BigRational {
        self.terms
            .get(&Monomial::one(self.ring.0.generators.len()))
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn checked_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        let terms = self.terms.iter().chain(&other.terms).map(|(m, c)| (m.clone(), c.clone()));
        Ok(self.ring.element(terms))
    }

    pub fn checked_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.checked_add(&other.negated())
    }

    pub fn checked_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        let mut out = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.push((m1.times(m2), c1 * c2));
            }
        }
        Ok(self.ring.element(out))
    }

    pub fn negated(&self) -> RingElement {
        self.ring.element(self.terms.iter().map(|(m, c)| (m.clone(), -c)))
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn pow(&self, e: u32) -> RingElement {
        let mut acc = self.ring.one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// A unit iff the constant coefficient is a ground unit: every generator
    /// is nilpotent, so the rest is inverted by a terminating geometric series.
    pub fn is_unit(&self) -> bool {
        self.ring.0.base.is_unit(&self.constant_term())
    }

    pub fn inverse(&self) -> Option<RingElement> {
        let c = self.constant_term();
        let c_inv = self.ring.constant(self.ring.0.base.inverse(&c)?);
        let y = &(self - &self.ring.constant(c)) * &c_inv;
        let mut sum = self.ring.zero();
        let mut term = self.ring.one();
        while !term.is_zero() {
            sum = &sum + &term;
            term = &term * &y.negated();
        }
        Some(&sum * &c_inv)
    }

    /// Splits `a = ε(a) + k` with `ε(a)` in the augmentation target and `k`
    /// in the kernel. Ground rings split as `(a, 0)`.
    pub fn augment(&self) -> (RingElement, RingElement) {
        let Some(parent) = &self.ring.0.parent else {
            return (self.clone(), self.ring.zero());
        };
        let cut = parent.0.generators.len();
        let mut low = Vec::new();
        let mut high = Vec::new();
        for (m, c) in &self.terms {
            if m.0[cut..].iter().all(|&e| e == 0) {
                low.push((Monomial(m.0[..cut].to_vec()), c.clone()));
            } else {
                high.push((m.clone(), c.clone()));
            }
        }
        (parent.element(low), self.ring.element(high))
    }

    /// The augmentation `ε(a)`.
    pub fn epsilon(&self) -> RingElement {
        self.augment().0
    }

    /// Lifts an element of a ring lower in the tower (or of the same ring).
    pub fn include_into(&self, target: &Ring) -> Result<RingElement> {
        if *target == self.ring {
            return Ok(self.clone());
        }
        let mut chain = target.clone();
        while chain != self.ring {
            chain = chain.0.parent.clone().ok_or(Error::MixedRings)?;
        }
        let arity = target.0.generators.len();
        Ok(target.element(self.terms.iter().map(|(m, c)| {
            let mut v = m.0.clone();
            v.resize(arity, 0);
            (Monomial(v), c.clone())
        })))
    }

    /// Reads the element in another ring that shares its ground ring,
    /// matching the generators it uses by name.
    pub fn reinterpret(&self, target: &Ring) -> Result<RingElement> {
        if target.0.base != self.ring.0.base {
            return Err(Error::MixedRings);
        }
        let names = &self.ring.0.generators;
        let map: Vec<Option<usize>> = names.iter().map(|g| target.generator_index(&g.name)).collect();
        let arity = target.0.generators.len();
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut v = vec![0; arity];
            for (i, &e) in m.0.iter().enumerate().filter(|(_, &e)| e > 0) {
                let j = map[i].ok_or_else(|| Error::UnknownGenerator(names[i].name.clone()))?;
                v[j] += e;
            }
            out.push((Monomial(v), c.clone()));
        }
        Ok(target.element(out))
    }

    /// Multiplies by a ground-ring rational.
    pub fn scale(&self, q: &BigRational) -> Result<RingElement> {
        let c = self.ring.0.base.embed(q).ok_or_else(|| Error::NotRepresentable(q.to_string()))?;
        Ok(self.ring.element(self.terms.iter().map(|(m, a)| (m.clone(), a * &c))))
    }

    fn fmt_monomial(&self, m: &Monomial, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (g, &e) in self.ring.0.generators.iter().zip(&m.0) {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", g.name)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let a = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            if m.is_one() {
                write!(f, "{a}")?;
            } else {
                if a.is_integer() {
                    if !a.is_one() {
                        write!(f, "{a}*")?;
                    }
                } else {
                    write!(f, "({a})*")?;
                }
                self.fmt_monomial(m, f)?;
            }
        }
        Ok(())
    }
}

impl Add for &RingElement {
    type Output = RingElement;
    fn add(self, rhs: &RingElement) -> RingElement {
        self.checked_add(rhs).expect("ring elements from different rings")
    }
}

impl Sub for &RingElement {
    type Output = RingElement;
    fn sub(self, rhs: &RingElement) -> RingElement {
        self.checked_sub(rhs).expect("ring elements from different rings")
    }
}

impl Mul for &RingElement {
    type Output = RingElement;
    fn mul(self, rhs: &RingElement) -> RingElement {
        self.checked_mul(rhs).expect("ring elements from different rings")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;
    fn neg(self) -> RingElement {
        self.negated()
    }
}

impl crate::scalar::Scalar for RingElement {
    type Ring = Ring;

    fn zero(ring: &Ring) -> Self {
        ring.zero()
    }
    fn one(ring: &Ring) -> Self {
        ring.one()
    }
    fn from_int(ring: &Ring, n: i64) -> Self {
        ring.from_int(n)
    }
    fn ring(&self) -> Ring {
        self.ring.clone()
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        self.negated()
    }
    fn inverse(&self) -> Option<Self> {
        RingElement::inverse(self)
    }
    fn divide_exact(&self, divisor: &Self) -> Option<Self> {
        if let Some(inv) = divisor.inverse() {
            return Some(self * &inv);
        }
        if !divisor.is_constant() {
            return None;
        }
        let d = divisor.constant_term();
        let base = &self.ring.0.base;
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            out.push((m.clone(), base.divide(c, &d)?));
        }
        Some(self.ring.element(out))
    }
    fn degree(&self) -> Option<i64> {
        let gens = &self.ring.0.generators;
        let mut degs = self
            .terms
            .keys()
            .map(|m| m.0.iter().zip(gens).map(|(&e, g)| e as i64 * g.degree).sum::<i64>());
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }
    fn base_kind(ring: &Ring) -> BaseKind {
        ring.0.base.clone()
    }
    fn module_basis(ring: &Ring) -> Vec<Self> {
        ring.basis_monomials()
            .iter()
            .map(|m| ring.element(std::iter::once((m.clone(), <BigRational as One>::one()))))
            .collect()
    }
    fn coordinates(&self) -> Vec<BigRational> {
        self.ring
            .basis_monomials()
            .iter()
            .map(|m| self.terms.get(m).cloned().unwrap_or_else(<BigRational as Zero>::zero))
            .collect()
    }
    fn from_coordinates(ring: &Ring, coords: &[BigRational]) -> Self {
        ring.element(ring.basis_monomials().iter().cloned().zip(coords.iter().cloned()))
    }
}

/// Rational `n/d`, mostly for tests and literals.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Small-integer view of a ground value, when it fits.
pub fn as_i64(q: &BigRational) -> Option<i64> {
    q.is_integer().then(|| q.to_integer().to_i64()).flatten()
}
