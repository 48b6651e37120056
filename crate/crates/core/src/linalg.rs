//! Exact linear algebra over the ground rings ℚ, ℤ and ℤ/n.
//!
//! Vectors are `Vec<BigRational>` in all three cases; over ℤ and ℤ/n the
//! entries are integers (reduced into `[0, n)` for ℤ/n). Over ℚ everything is
//! Gaussian elimination. Over ℤ a Smith normal form is used, and ℤ/n is
//! handled by lifting to ℤ with the relations `n·eᵢ` adjoined.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::ring::BaseKind;

pub type Vector = Vec<BigRational>;

/// A matrix over a ground ring, stored by rows.
#[derive(Clone, Debug)]
pub struct LinearMap {
    kind: BaseKind,
    rows: usize,
    cols: usize,
    entries: Vec<Vec<BigRational>>,
}

/// One cyclic summand of a quotient module.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientClass {
    /// Generator of the annihilator ideal; zero for a free summand.
    pub annihilator: BigInt,
    pub representative: Vector,
}

impl LinearMap {
    /// Builds the map from its columns (images of the standard basis).
    pub fn from_columns(kind: BaseKind, rows: usize, columns: &[Vector]) -> Self {
        let cols = columns.len();
        let mut entries = vec![vec![BigRational::zero(); cols]; rows];
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, x) in c.iter().enumerate() {
                entries[i][j] = kind.reduce(x.clone());
            }
        }
        LinearMap { kind, rows, cols, entries }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn apply(&self, x: &[BigRational]) -> Vector {
        self.entries
            .iter()
            .map(|row| self.kind.reduce(row.iter().zip(x).map(|(a, b)| a * b).sum()))
            .collect()
    }

    /// The submatrix on the given rows.
    pub fn select_rows(&self, keep: impl Fn(usize) -> bool) -> LinearMap {
        let entries: Vec<_> = self.entries.iter().enumerate().filter(|(i, _)| keep(*i)).map(|(_, r)| r.clone()).collect();
        LinearMap { kind: self.kind.clone(), rows: entries.len(), cols: self.cols, entries }
    }

    /// The submatrix on the given columns.
    pub fn select_cols(&self, keep: impl Fn(usize) -> bool) -> LinearMap {
        let idx: Vec<usize> = (0..self.cols).filter(|&j| keep(j)).collect();
        let entries = self.entries.iter().map(|r| idx.iter().map(|&j| r[j].clone()).collect()).collect();
        LinearMap { kind: self.kind.clone(), rows: self.rows, cols: idx.len(), entries }
    }

    /// Generators of the kernel: a basis over ℚ and ℤ, a generating set over
    /// ℤ/n.
    pub fn kernel(&self) -> Vec<Vector> {
        match &self.kind {
            BaseKind::Rationals => rational_kernel(&self.entries, self.cols),
            BaseKind::Integers => {
                let a = to_int(&self.entries);
                let s = Smith::new(&a, self.rows, self.cols);
                (s.rank..self.cols).map(|j| column(&s.v, j)).map(|c| from_int(&c)).collect()
            }
            BaseKind::IntegersMod(n) => {
                let a = self.lifted(*n);
                let s = Smith::new(&a, self.rows, self.cols + self.rows);
                let gens: Vec<Vec<BigInt>> =
                    (s.rank..self.cols + self.rows).map(|j| column(&s.v, j)[..self.cols].to_vec()).collect();
                lattice_basis(&gens, self.cols)
                    .into_iter()
                    .map(|v| from_int(&v).into_iter().map(|x| self.kind.reduce(x)).collect::<Vector>())
                    .filter(|v| v.iter().any(|x| !x.is_zero()))
                    .collect()
            }
        }
    }

    /// Some `x` with `A x = b`, if one exists.
    pub fn solve(&self, b: &[BigRational]) -> Option<Vector> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        match &self.kind {
            BaseKind::Rationals => rational_solve(&self.entries, self.cols, b),
            BaseKind::Integers => {
                let a = to_int(&self.entries);
                let x = integer_solve(&a, self.rows, self.cols, &to_int_vec(b)?)?;
                Some(from_int(&x))
            }
            BaseKind::IntegersMod(n) => {
                let a = self.lifted(*n);
                let b: Vec<BigInt> = to_int_vec(&b.iter().map(|x| self.kind.reduce(x.clone())).collect::<Vec<_>>())?;
                let x = integer_solve(&a, self.rows, self.cols + self.rows, &b)?;
                Some(from_int(&x[..self.cols]).into_iter().map(|v| self.kind.reduce(v)).collect())
            }
        }
    }

    /// `[A | n·I]` over ℤ.
    fn lifted(&self, n: u64) -> Vec<Vec<BigInt>> {
        let mut a = to_int(&self.entries);
        for (i, row) in a.iter_mut().enumerate() {
            row.extend((0..self.rows).map(|j| if i == j { BigInt::from(n) } else { BigInt::zero() }));
        }
        a
    }
}

/// Cyclic decomposition of `span(sup) / span(sub)` in a free module of rank
/// `dim`; `sub` must lie in `span(sup)`. Summands with unit annihilator are
/// dropped.
pub fn quotient(kind: &BaseKind, dim: usize, sub: &[Vector], sup: &[Vector]) -> Vec<QuotientClass> {
    match kind {
        BaseKind::Rationals => rational_quotient(dim, sub, sup),
        BaseKind::Integers => integer_quotient(dim, sub, sup, &[]),
        BaseKind::IntegersMod(n) => {
            let extra: Vec<Vec<BigInt>> = (0..dim)
                .map(|i| (0..dim).map(|j| if i == j { BigInt::from(*n) } else { BigInt::zero() }).collect())
                .collect();
            integer_quotient(dim, sub, sup, &extra)
                .into_iter()
                .map(|c| QuotientClass {
                    annihilator: c.annihilator,
                    representative: c.representative.into_iter().map(|x| kind.reduce(x)).collect(),
                })
                .collect()
        }
    }
}

fn to_int(m: &[Vec<BigRational>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|r| r.iter().map(|x| {
            assert!(x.is_integer(), "non-integral entry in an integral matrix");
            x.to_integer()
        }).collect())
        .collect()
}

fn to_int_vec(v: &[BigRational]) -> Option<Vec<BigInt>> {
    v.iter().map(|x| x.is_integer().then(|| x.to_integer())).collect()
}

fn from_int(v: &[BigInt]) -> Vector {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

fn column(m: &[Vec<BigInt>], j: usize) -> Vec<BigInt> {
    m.iter().map(|r| r[j].clone()).collect()
}

fn identity(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

/// `U A V = diag(s₀, …)` with `U`, `V` unimodular and `sᵢ | sᵢ₊₁`.
struct Smith {
    diag: Vec<BigInt>,
    rank: usize,
    u: Vec<Vec<BigInt>>,
    u_inv: Vec<Vec<BigInt>>,
    v: Vec<Vec<BigInt>>,
}

impl Smith {
    fn new(a: &[Vec<BigInt>], rows: usize, cols: usize) -> Smith {
        let mut a: Vec<Vec<BigInt>> = a.to_vec();
        let mut u = identity(rows);
        let mut u_inv = identity(rows);
        let mut v = identity(cols);
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = min_entry(&a, t, rows, cols) else { break };
            swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
            swap_cols(&mut a, &mut v, t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..rows {
                    if !a[i][t].is_zero() {
                        let q = a[i][t].div_floor(&a[t][t]);
                        add_row(&mut a, &mut u, &mut u_inv, i, t, &-q);
                        clean &= a[i][t].is_zero();
                    }
                }
                for j in t + 1..cols {
                    if !a[t][j].is_zero() {
                        let q = a[t][j].div_floor(&a[t][t]);
                        add_col(&mut a, &mut v, j, t, &-q);
                        clean &= a[t][j].is_zero();
                    }
                }
                if !clean {
                    let (pi, pj) = min_entry_cross(&a, t, rows, cols);
                    swap_rows(&mut a, &mut u, &mut u_inv, t, pi);
                    swap_cols(&mut a, &mut v, t, pj);
                    continue;
                }
                let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
                match bad {
                    Some(i) => add_row(&mut a, &mut u, &mut u_inv, t, i, &BigInt::one()),
                    None => break,
                }
            }
            if a[t][t].is_negative() {
                add_row_scaled_neg(&mut a, &mut u, &mut u_inv, t);
            }
            t += 1;
        }
        let diag = (0..t).map(|i| a[i][i].clone()).collect();
        Smith { diag, rank: t, u, u_inv, v }
    }
}

fn min_entry(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in t..rows {
        for j in t..cols {
            if !a[i][j].is_zero() && best.is_none_or(|(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn min_entry_cross(a: &[Vec<BigInt>], t: usize, rows: usize, cols: usize) -> (usize, usize) {
    let mut best = (t, t);
    let cands = (t..rows).map(|i| (i, t)).chain((t..cols).map(|j| (t, j)));
    for (i, j) in cands {
        let cur = &a[best.0][best.1];
        if !a[i][j].is_zero() && (cur.is_zero() || a[i][j].abs() < cur.abs()) {
            best = (i, j);
        }
    }
    best
}

fn swap_rows(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], u_inv: &mut [Vec<BigInt>], i: usize, k: usize) {
    if i != k {
        a.swap(i, k);
        u.swap(i, k);
        for row in u_inv.iter_mut() {
            row.swap(i, k);
        }
    }
}

fn swap_cols(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize) {
    if j != k {
        for row in a.iter_mut().chain(v.iter_mut()) {
            row.swap(j, k);
        }
    }
}

/// `row_i += q · row_k`, keeping `U⁻¹` in step (`col_k -= q · col_i`).
fn add_row(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], u_inv: &mut [Vec<BigInt>], i: usize, k: usize, q: &BigInt) {
    for m in [a, u] {
        let src = m[k].clone();
        for (x, y) in m[i].iter_mut().zip(src) {
            *x += q * y;
        }
    }
    for row in u_inv.iter_mut() {
        let y = row[i].clone();
        row[k] -= q * y;
    }
}

fn add_row_scaled_neg(a: &mut [Vec<BigInt>], u: &mut [Vec<BigInt>], u_inv: &mut [Vec<BigInt>], t: usize) {
    for x in a[t].iter_mut().chain(u[t].iter_mut()) {
        *x = -x.clone();
    }
    for row in u_inv.iter_mut() {
        row[t] = -row[t].clone();
    }
}

/// `col_j += q · col_k`.
fn add_col(a: &mut [Vec<BigInt>], v: &mut [Vec<BigInt>], j: usize, k: usize, q: &BigInt) {
    for row in a.iter_mut().chain(v.iter_mut()) {
        let y = row[k].clone();
        row[j] += q * y;
    }
}

fn integer_solve(a: &[Vec<BigInt>], rows: usize, cols: usize, b: &[BigInt]) -> Option<Vec<BigInt>> {
    let s = Smith::new(a, rows, cols);
    let c: Vec<BigInt> = s.u.iter().map(|r| r.iter().zip(b).map(|(x, y)| x * y).sum()).collect();
    let mut y = vec![BigInt::zero(); cols];
    for (i, ci) in c.iter().enumerate() {
        if i < s.rank {
            let (q, r) = ci.div_rem(&s.diag[i]);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        } else if !ci.is_zero() {
            return None;
        }
    }
    Some(s.v.iter().map(|r| r.iter().zip(&y).map(|(x, z)| x * z).sum()).collect())
}

/// Basis of the ℤ-span of the given vectors.
fn lattice_basis(gens: &[Vec<BigInt>], dim: usize) -> Vec<Vec<BigInt>> {
    if gens.is_empty() {
        return Vec::new();
    }
    let m: Vec<Vec<BigInt>> = (0..dim).map(|i| gens.iter().map(|g| g[i].clone()).collect()).collect();
    let s = Smith::new(&m, dim, gens.len());
    (0..s.rank).map(|i| column(&s.u_inv, i).into_iter().map(|x| x * &s.diag[i]).collect()).collect()
}

fn integer_quotient(dim: usize, sub: &[Vector], sup: &[Vector], extra: &[Vec<BigInt>]) -> Vec<QuotientClass> {
    let mut sup_gens: Vec<Vec<BigInt>> = sup.iter().map(|v| to_int_vec(v).expect("integral vector")).collect();
    sup_gens.extend_from_slice(extra);
    let mut sub_gens: Vec<Vec<BigInt>> = sub.iter().map(|v| to_int_vec(v).expect("integral vector")).collect();
    sub_gens.extend_from_slice(extra);
    let basis = lattice_basis(&sup_gens, dim);
    let z = basis.len();
    if z == 0 {
        return Vec::new();
    }
    let zm: Vec<Vec<BigInt>> = (0..dim).map(|i| basis.iter().map(|b| b[i].clone()).collect()).collect();
    let coords: Vec<Vec<BigInt>> = sub_gens
        .iter()
        .map(|g| integer_solve(&zm, dim, z, g).expect("sub-lattice lies in the super-lattice"))
        .collect();
    let c: Vec<Vec<BigInt>> = (0..z).map(|i| coords.iter().map(|g| g[i].clone()).collect()).collect();
    let s = Smith::new(&c, z, coords.len());
    let mut out = Vec::new();
    for i in 0..z {
        let ann = if i < s.rank { s.diag[i].clone() } else { BigInt::zero() };
        if ann.is_one() {
            continue;
        }
        let e = column(&s.u_inv, i);
        let rep: Vec<BigInt> =
            (0..dim).map(|r| basis.iter().zip(&e).map(|(b, x)| &b[r] * x).sum()).collect();
        out.push(QuotientClass { annihilator: ann, representative: from_int(&rep) });
    }
    out
}

/// Row echelon form with pivots taken from the highest index below `dim`
/// first; rows are normalised to a leading 1 and fully reduced. A row that is
/// nonzero only at indices `>= dim` is reported with pivot `dim`.
fn rref_high(rows: &[Vector], dim: usize) -> Vec<(usize, Vector)> {
    let mut out: Vec<(usize, Vector)> = Vec::new();
    for r in rows {
        let mut r = r.clone();
        for (p, row) in out.iter().filter(|(p, _)| *p < dim) {
            if !r[*p].is_zero() {
                let f = r[*p].clone();
                for (x, y) in r.iter_mut().zip(row) {
                    *x -= &f * y;
                }
            }
        }
        let Some(p) = (0..dim).rev().find(|&i| !r[i].is_zero()) else {
            if r.iter().any(|x| !x.is_zero()) {
                out.push((dim, r));
            }
            continue;
        };
        let lead = r[p].clone();
        for x in r.iter_mut() {
            *x /= &lead;
        }
        for (_, row) in out.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for (x, y) in row.iter_mut().zip(&r) {
                    *x -= &f * y;
                }
            }
        }
        out.push((p, r));
    }
    out
}

fn reduce_by(v: &Vector, basis: &[(usize, Vector)]) -> Vector {
    let mut v = v.clone();
    for (p, row) in basis {
        if !v[*p].is_zero() {
            let f = v[*p].clone();
            for (x, y) in v.iter_mut().zip(row) {
                *x -= &f * y;
            }
        }
    }
    v
}

fn rational_kernel(a: &[Vec<BigRational>], cols: usize) -> Vec<Vector> {
    let ech = rref_high(a, cols);
    let pivots: Vec<usize> = ech.iter().map(|(p, _)| *p).collect();
    (0..cols)
        .filter(|j| !pivots.contains(j))
        .map(|j| {
            let mut x = vec![BigRational::zero(); cols];
            x[j] = BigRational::one();
            for (p, row) in &ech {
                x[*p] = -row[j].clone();
            }
            x
        })
        .collect()
}

fn rational_solve(a: &[Vec<BigRational>], cols: usize, b: &[BigRational]) -> Option<Vector> {
    let aug: Vec<Vector> = a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    let ech = rref_high(&aug, cols);
    if ech.iter().any(|(p, _)| *p == cols) {
        return None;
    }
    let mut x = vec![BigRational::zero(); cols];
    for (p, row) in &ech {
        x[*p] = row[cols].clone();
    }
    Some(x)
}

fn rational_quotient(dim: usize, sub: &[Vector], sup: &[Vector]) -> Vec<QuotientClass> {
    let sub_ech = rref_high(sub, dim);
    let residues: Vec<Vector> = sup.iter().map(|v| reduce_by(v, &sub_ech)).collect();
    let mut reps = rref_high(&residues, dim);
    reps.sort_by_key(|(p, _)| *p);
    reps.into_iter()
        .map(|(_, v)| QuotientClass { annihilator: BigInt::zero(), representative: clear_denominators(v) })
        .collect()
}

/// Scales a rational vector to a primitive integral one.
fn clear_denominators(v: Vector) -> Vector {
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return v;
    }
    from_int(&ints.into_iter().map(|x| x / &g).collect::<Vec<_>>())
}
