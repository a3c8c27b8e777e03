//! Exterior algebra of differential forms on C^2.
//!
//! A form maps basis blades (strictly ascending generator subsets) to
//! polynomial coefficients. The same container serves the complex cotangent
//! basis `dz1 < dz2 < dzb1 < dzb2` ([`Form`]) and the real basis
//! `dx0 < dx1 < dx2 < dx3` ([`RealForm`]).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Neg, Sub};

use crate::poly::{Poly, Var};
use crate::scalar::GaussianRational;

/// Complex cotangent generators in canonical order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    DZ1 = 0,
    DZ2 = 1,
    DZB1 = 2,
    DZB2 = 3,
}

impl Gen {
    pub const ALL: [Gen; 4] = [Gen::DZ1, Gen::DZ2, Gen::DZB1, Gen::DZB2];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Gen {
        Gen::ALL[i]
    }

    pub fn name(self) -> &'static str {
        ComplexBasis::NAMES[self.index()]
    }

    pub fn from_name(s: &str) -> Option<Gen> {
        Gen::ALL.into_iter().find(|g| g.name() == s)
    }

    /// `d` of the coordinate symbol `v`.
    pub fn of_var(v: Var) -> Gen {
        match v {
            Var::Z1 => Gen::DZ1,
            Var::Z2 => Gen::DZ2,
            Var::ZB1 => Gen::DZB1,
            Var::ZB2 => Gen::DZB2,
        }
    }

    /// Complex conjugate generator: `dz_k <-> dzb_k`.
    pub fn conj(self) -> Gen {
        match self {
            Gen::DZ1 => Gen::DZB1,
            Gen::DZ2 => Gen::DZB2,
            Gen::DZB1 => Gen::DZ1,
            Gen::DZB2 => Gen::DZ2,
        }
    }
}

/// A basis blade: a strictly ascending set of generator indices, as a bitmask.
///
/// Ordered by degree, then lexicographically on the ascending index list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Blade(u8);

impl Blade {
    pub const SCALAR: Blade = Blade(0);
    pub const TOP: Blade = Blade(0b1111);

    pub fn from_bits(bits: u8) -> Blade {
        assert!(bits < 16, "blade bitmask {bits} out of range");
        Blade(bits)
    }

    pub fn bits(self) -> u8 {
        self.0
    }

    /// Blade from generator indices; `None` if an index repeats.
    pub fn from_indices(idx: &[usize]) -> Option<Blade> {
        let mut bits = 0u8;
        for &i in idx {
            let b = 1u8 << i;
            if bits & b != 0 {
                return None;
            }
            bits |= b;
        }
        Some(Blade(bits))
    }

    pub fn of_gens(gens: &[Gen]) -> Option<Blade> {
        Blade::from_indices(&gens.iter().map(|g| g.index()).collect::<Vec<_>>())
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn indices(self) -> Vec<usize> {
        (0..4).filter(|i| self.0 & (1 << i) != 0).collect()
    }

    pub fn gens(self) -> Vec<Gen> {
        self.indices().into_iter().map(Gen::from_index).collect()
    }

    /// Complementary blade.
    pub fn complement(self) -> Blade {
        Blade(!self.0 & 0b1111)
    }

    /// All 16 blades in canonical order.
    pub fn all() -> Vec<Blade> {
        let mut v: Vec<Blade> = (0..16u8).map(Blade).collect();
        v.sort();
        v
    }

    pub fn of_degree(k: usize) -> Vec<Blade> {
        Blade::all().into_iter().filter(|b| b.degree() == k).collect()
    }

    /// `e_self ^ e_other = sign * e_(self|other)`, or `None` when they share a generator.
    pub fn wedge(self, other: Blade) -> Option<(i8, Blade)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let mut swaps = 0u32;
        for j in other.indices() {
            swaps += (self.0 >> (j + 1)).count_ones();
        }
        let sign = if swaps.is_multiple_of(2) { 1 } else { -1 };
        Some((sign, Blade(self.0 | other.0)))
    }
}

impl Ord for Blade {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.indices().cmp(&other.indices()))
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Generator naming for a form container.
pub trait Basis: Clone + Copy + PartialEq + Eq + fmt::Debug + Default + std::hash::Hash {
    const NAMES: [&'static str; 4];
}

/// `dz1, dz2, dzb1, dzb2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ComplexBasis;

/// `dx0, dx1, dx2, dx3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct RealBasis;

impl Basis for ComplexBasis {
    const NAMES: [&'static str; 4] = ["dz1", "dz2", "dzb1", "dzb2"];
}

impl Basis for RealBasis {
    const NAMES: [&'static str; 4] = ["dx0", "dx1", "dx2", "dx3"];
}

/// Possibly mixed-degree form with polynomial coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct FormOver<B: Basis> {
    coeffs: BTreeMap<Blade, Poly>,
    _basis: PhantomData<B>,
}

/// Form in the complex basis `dz1, dz2, dzb1, dzb2`.
pub type Form = FormOver<ComplexBasis>;
/// Form in the real basis `dx0..dx3`.
pub type RealForm = FormOver<RealBasis>;

impl<B: Basis> FormOver<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn scalar(p: Poly) -> Self {
        Self::monomial(Blade::SCALAR, p)
    }

    pub fn monomial(b: Blade, p: Poly) -> Self {
        let mut f = Self::zero();
        f.add_to(b, &p);
        f
    }

    pub fn blade(b: Blade) -> Self {
        Self::monomial(b, Poly::one())
    }

    pub fn from_terms<I: IntoIterator<Item = (Blade, Poly)>>(terms: I) -> Self {
        let mut f = Self::zero();
        for (b, p) in terms {
            f.add_to(b, &p);
        }
        f
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, b: Blade) -> Poly {
        self.coeffs.get(&b).cloned().unwrap_or_default()
    }

    /// Nonzero terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Blade, &Poly)> {
        self.coeffs.iter()
    }

    pub fn add_to(&mut self, b: Blade, p: &Poly) {
        if p.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(b).or_default();
        *slot = &*slot + p;
        if slot.is_zero() {
            self.coeffs.remove(&b);
        }
    }

    /// Degree of a homogeneous nonzero form; `None` if zero or mixed.
    pub fn degree(&self) -> Option<usize> {
        let mut it = self.coeffs.keys().map(|b| b.degree());
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// True if every term has degree `k` (vacuously true for zero).
    pub fn is_homogeneous_of(&self, k: usize) -> bool {
        self.coeffs.keys().all(|b| b.degree() == k)
    }

    /// Projection onto the degree-`k` part.
    pub fn grade(&self, k: usize) -> Self {
        Self::from_terms(
            self.coeffs
                .iter()
                .filter(|(b, _)| b.degree() == k)
                .map(|(b, p)| (*b, p.clone())),
        )
    }

    pub fn map_coeffs(&self, f: impl Fn(&Poly) -> Poly) -> Self {
        Self::from_terms(self.coeffs.iter().map(|(b, p)| (*b, f(p))))
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Multiplies every coefficient by the function `p`.
    pub fn mul_poly(&self, p: &Poly) -> Self {
        self.map_coeffs(|q| q * p)
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (ba, pa) in &self.coeffs {
            for (bb, pb) in &other.coeffs {
                if let Some((sign, b)) = ba.wedge(*bb) {
                    let prod = pa * pb;
                    let prod = if sign < 0 { -prod } else { prod };
                    out.add_to(b, &prod);
                }
            }
        }
        out
    }

    /// Applies a linear substitution of generators: generator `k` maps to
    /// `sum_j images[k][j] * e_j` in the target basis.
    fn substitute<T: Basis>(&self, images: &[[GaussianRational; 4]; 4]) -> FormOver<T> {
        let mut cache: BTreeMap<Blade, Vec<(Blade, GaussianRational)>> = BTreeMap::new();
        let mut out = FormOver::<T>::zero();
        for (b, p) in &self.coeffs {
            let image = cache.entry(*b).or_insert_with(|| blade_image(*b, images));
            for (tb, c) in image.iter() {
                out.add_to(*tb, &p.scale(c));
            }
        }
        out
    }
}

/// Expands the wedge of generator images for one blade.
fn blade_image(b: Blade, images: &[[GaussianRational; 4]; 4]) -> Vec<(Blade, GaussianRational)> {
    let mut acc: BTreeMap<Blade, GaussianRational> = BTreeMap::new();
    acc.insert(Blade::SCALAR, GaussianRational::one());
    for k in b.indices() {
        let mut next: BTreeMap<Blade, GaussianRational> = BTreeMap::new();
        for (ab, ac) in &acc {
            for (j, c) in images[k].iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if let Some((sign, nb)) = ab.wedge(Blade(1 << j)) {
                    let v = ac * c;
                    let v = if sign < 0 { -v } else { v };
                    *next.entry(nb).or_default() += &v;
                }
            }
        }
        next.retain(|_, c| !c.is_zero());
        acc = next;
    }
    acc.into_iter().collect()
}

pub(crate) fn complex_to_real_images() -> [[GaussianRational; 4]; 4] {
    let o = GaussianRational::one;
    let z = GaussianRational::zero;
    let i = GaussianRational::i;
    let mi = || -GaussianRational::i();
    [
        [o(), i(), z(), z()],  // dz1 = dx0 + i dx1
        [z(), z(), o(), i()],  // dz2 = dx2 + i dx3
        [o(), mi(), z(), z()], // dzb1 = dx0 - i dx1
        [z(), z(), o(), mi()], // dzb2 = dx2 - i dx3
    ]
}

fn real_to_complex_images() -> [[GaussianRational; 4]; 4] {
    let h = || GaussianRational::frac(1, 2);
    let z = GaussianRational::zero;
    let ih = || GaussianRational::complex((0, 1), (1, 2));
    let mih = || GaussianRational::complex((0, 1), (-1, 2));
    [
        [h(), z(), h(), z()],     // dx0 = (dz1 + dzb1)/2
        [mih(), z(), ih(), z()],  // dx1 = (-i/2) dz1 + (i/2) dzb1
        [z(), h(), z(), h()],     // dx2 = (dz2 + dzb2)/2
        [z(), mih(), z(), ih()],  // dx3 = (-i/2) dz2 + (i/2) dzb2
    ]
}

/// Which half of `d` to apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dolbeault {
    /// `∂`: derivatives in `z1, z2` wedged with `dz1, dz2`.
    Holo,
    /// `∂̄`: derivatives in `zb1, zb2` wedged with `dzb1, dzb2`.
    Anti,
}

impl Form {
    pub fn gen(g: Gen) -> Form {
        Form::blade(Blade(1 << g.index()))
    }

    /// Wedge of the listed generators, in the given order (sign included).
    pub fn wedge_of(gens: &[Gen]) -> Form {
        gens.iter()
            .fold(Form::scalar(Poly::one()), |acc, g| acc.wedge(&Form::gen(*g)))
    }

    fn derive_with(&self, vars: &[Var]) -> Form {
        let mut out = Form::zero();
        for (b, p) in &self.coeffs {
            for v in vars {
                let dp = p.wirtinger(*v);
                if dp.is_zero() {
                    continue;
                }
                let g = Blade(1 << Gen::of_var(*v).index());
                if let Some((sign, nb)) = g.wedge(*b) {
                    out.add_to(nb, &if sign < 0 { -dp } else { dp });
                }
            }
        }
        out
    }

    /// Exterior derivative `d = ∂ + ∂̄`.
    pub fn ext_d(&self) -> Form {
        self.derive_with(&Var::ALL)
    }

    pub fn dolbeault(&self, which: Dolbeault) -> Form {
        match which {
            Dolbeault::Holo => self.derive_with(&[Var::Z1, Var::Z2]),
            Dolbeault::Anti => self.derive_with(&[Var::ZB1, Var::ZB2]),
        }
    }

    /// Rewrites in the real basis via `dz1 = dx0 + i dx1`, `dz2 = dx2 + i dx3`.
    pub fn to_real(&self) -> RealForm {
        self.substitute(&complex_to_real_images())
    }

    /// Complex conjugate form: coefficients conjugated, `dz_k <-> dzb_k`.
    pub fn conjugate(&self) -> Form {
        let mut out = Form::zero();
        for (b, p) in &self.coeffs {
            let gens: Vec<Gen> = b.gens().into_iter().map(Gen::conj).collect();
            out = &out + &Form::wedge_of(&gens).mul_poly(&p.conjugate());
        }
        out
    }
}

impl RealForm {
    pub fn dx(k: usize) -> RealForm {
        RealForm::blade(Blade(1 << k))
    }

    pub fn to_complex(&self) -> Form {
        self.substitute(&real_to_complex_images())
    }

    /// Exterior derivative in real coordinates, differentiating coefficients by `x_k`.
    pub fn ext_d(&self) -> RealForm {
        let mut out = RealForm::zero();
        for (b, p) in &self.coeffs {
            for k in 0..4 {
                let dp = p.real_partial(k);
                if dp.is_zero() {
                    continue;
                }
                if let Some((sign, nb)) = Blade(1 << k).wedge(*b) {
                    out.add_to(nb, &if sign < 0 { -dp } else { dp });
                }
            }
        }
        out
    }
}

impl<'a, B: Basis> Add<&'a FormOver<B>> for &'a FormOver<B> {
    type Output = FormOver<B>;
    fn add(self, rhs: &FormOver<B>) -> FormOver<B> {
        let mut out = self.clone();
        for (b, p) in &rhs.coeffs {
            out.add_to(*b, p);
        }
        out
    }
}

impl<'a, B: Basis> Sub<&'a FormOver<B>> for &'a FormOver<B> {
    type Output = FormOver<B>;
    fn sub(self, rhs: &FormOver<B>) -> FormOver<B> {
        let mut out = self.clone();
        for (b, p) in &rhs.coeffs {
            out.add_to(*b, &-p);
        }
        out
    }
}

impl<B: Basis> Neg for &FormOver<B> {
    type Output = FormOver<B>;
    fn neg(self) -> FormOver<B> {
        self.map_coeffs(|p| -p)
    }
}

impl<B: Basis> Add for FormOver<B> {
    type Output = FormOver<B>;
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
}

impl<B: Basis> Sub for FormOver<B> {
    type Output = FormOver<B>;
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
}

impl<B: Basis> Neg for FormOver<B> {
    type Output = FormOver<B>;
    fn neg(self) -> Self {
        -&self
    }
}

/// Blade name such as `dz1/\dzb2`; the scalar blade renders as `1`.
pub fn blade_name<B: Basis>(b: Blade) -> String {
    if b == Blade::SCALAR {
        return "1".to_string();
    }
    b.indices()
        .into_iter()
        .map(|i| B::NAMES[i])
        .collect::<Vec<_>>()
        .join("/\\")
}

/// Wraps `s` in parentheses unless it already is one parenthesised group.
fn parenthesize(s: &str) -> String {
    let mut depth = 0i32;
    for (k, ch) in s.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 && k + 1 < s.len() {
                    return format!("({s})");
                }
            }
            _ if depth == 0 => return format!("({s})"),
            _ => {}
        }
    }
    s.to_string()
}

/// Canonical rendering: `(2*z2)*dz1/\dzb2 + dzb1/\dzb2`.
///
/// Unit coefficients are omitted, `-1` becomes a sign, anything else is
/// parenthesised. Parses back through the form grammar.
impl<B: Basis> fmt::Display for FormOver<B> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let neg_one = Poly::int(-1);
        for (idx, (b, p)) in self.coeffs.iter().enumerate() {
            let name = blade_name::<B>(*b);
            let (neg, body) = if p.is_constant().is_some_and(|c| c.is_one()) {
                (false, name)
            } else if *p == neg_one {
                (true, name)
            } else if *b == Blade::SCALAR {
                (false, parenthesize(&p.to_string()))
            } else {
                (false, format!("{}*{name}", parenthesize(&p.to_string())))
            };
            match (idx, neg) {
                (0, false) => f.write_str(&body)?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
