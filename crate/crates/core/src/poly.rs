//! Polynomials in the four commuting symbols `z1, zb1, z2, zb2`.
//!
//! `zb1` and `zb2` stand for the conjugates of `z1` and `z2`, but the ring treats
//! all four as independent symbols; Wirtinger derivatives are then plain formal
//! partial derivatives.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Signed};

use crate::scalar::{format_rational, GaussianRational, Rational};

/// One of the four coordinate symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Var {
    Z1,
    ZB1,
    Z2,
    ZB2,
}

impl Var {
    pub const ALL: [Var; 4] = [Var::Z1, Var::ZB1, Var::Z2, Var::ZB2];

    /// Position in the exponent vector `(e1, eb1, e2, eb2)`.
    pub fn slot(self) -> usize {
        self as usize
    }

    /// The conjugate symbol: `z1 <-> zb1`, `z2 <-> zb2`.
    pub fn conj(self) -> Var {
        match self {
            Var::Z1 => Var::ZB1,
            Var::ZB1 => Var::Z1,
            Var::Z2 => Var::ZB2,
            Var::ZB2 => Var::Z2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::Z1 => "z1",
            Var::ZB1 => "zb1",
            Var::Z2 => "z2",
            Var::ZB2 => "zb2",
        }
    }

    pub fn from_name(s: &str) -> Option<Var> {
        Var::ALL.into_iter().find(|v| v.name() == s)
    }
}

/// Exponent vector `(e1, eb1, e2, eb2)`.
///
/// The `Ord` impl is the canonical term order: higher total degree first, then
/// lexicographically larger exponent vectors first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: [u32; 4],
}

impl Monomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn new(e1: u32, eb1: u32, e2: u32, eb2: u32) -> Self {
        Self { exps: [e1, eb1, e2, eb2] }
    }

    pub fn var(v: Var) -> Self {
        let mut m = Self::one();
        m.exps[v.slot()] = 1;
        m
    }

    pub fn exps(&self) -> [u32; 4] {
        self.exps
    }

    pub fn exp(&self, v: Var) -> u32 {
        self.exps[v.slot()]
    }

    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps == [0; 4]
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut exps = self.exps;
        for (e, o) in exps.iter_mut().zip(other.exps) {
            *e += o;
        }
        Monomial { exps }
    }

    /// Swaps `e1 <-> eb1` and `e2 <-> eb2`.
    pub fn conj(&self) -> Monomial {
        let [a, b, c, d] = self.exps;
        Monomial { exps: [b, a, d, c] }
    }

    /// Formal derivative: `(exponent, monomial with that exponent lowered)`.
    fn diff(&self, v: Var) -> Option<(u32, Monomial)> {
        let e = self.exps[v.slot()];
        if e == 0 {
            return None;
        }
        let mut exps = self.exps;
        exps[v.slot()] -= 1;
        Some((e, Monomial { exps }))
    }

    fn render(&self) -> Vec<String> {
        Var::ALL
            .iter()
            .filter(|v| self.exp(**v) > 0)
            .map(|v| match self.exp(*v) {
                1 => v.name().to_string(),
                e => format!("{}^{}", v.name(), e),
            })
            .collect()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .degree()
            .cmp(&self.degree())
            .then_with(|| other.exps.cmp(&self.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A point of C^2, given by its holomorphic coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexPoint {
    pub z1: Complex64,
    pub z2: Complex64,
}

impl ComplexPoint {
    pub fn new(z1: Complex64, z2: Complex64) -> Self {
        Self { z1, z2 }
    }

    /// `z1 = x0 + i x1`, `z2 = x2 + i x3`.
    pub fn from_real(x: [f64; 4]) -> Self {
        Self {
            z1: Complex64::new(x[0], x[1]),
            z2: Complex64::new(x[2], x[3]),
        }
    }
}

/// Polynomial over the Gaussian rationals in `z1, zb1, z2, zb2`.
///
/// Stored sparsely in canonical term order with no zero coefficients, so the
/// derived equality is structural.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(GaussianRational::one())
    }

    pub fn constant(c: GaussianRational) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(GaussianRational::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(GaussianRational::one(), Monomial::var(v))
    }

    pub fn term(c: GaussianRational, m: Monomial) -> Self {
        let mut p = Self::zero();
        p.add_term(m, &c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, GaussianRational)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (m, c) in terms {
            p.add_term(m, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next().map(Monomial::degree)
    }

    pub fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(m).or_default();
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn scale(&self, c: &GaussianRational) -> Poly {
        if c.is_zero() {
            return Poly::zero();
        }
        Poly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut acc = Poly::one();
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to `v` (a Wirtinger derivative).
    pub fn wirtinger(&self, v: Var) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            if let Some((e, lowered)) = m.diff(v) {
                out.add_term(lowered, &c.scale(&Rational::from_integer(e.into())));
            }
        }
        out
    }

    /// Complex conjugate as a function: swaps `z <-> zb` and conjugates coefficients.
    pub fn conjugate(&self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (m.conj(), c.conj())).collect(),
        }
    }

    /// `|p|^2 = p * conjugate(p)`.
    pub fn norm_sqr(&self) -> Poly {
        self * &self.conjugate()
    }

    /// The constant value if `self` has no non-constant term (zero counts as 0).
    pub fn is_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => self.terms.get(&Monomial::one()).cloned(),
            _ => None,
        }
    }

    /// True if the symbol `v` does not occur.
    pub fn is_free_of(&self, v: Var) -> bool {
        self.terms.keys().all(|m| m.exp(v) == 0)
    }

    /// Euclidean Laplacian `4 (d1 db1 + d2 db2)`.
    pub fn laplace4(&self) -> Poly {
        let a = self.wirtinger(Var::Z1).wirtinger(Var::ZB1);
        let b = self.wirtinger(Var::Z2).wirtinger(Var::ZB2);
        (&a + &b).scale(&GaussianRational::from_int(4))
    }

    /// Minkowski d'Alembertian `2 (d1^2 + db1^2 - 2 d2 db2)`.
    pub fn dalembert(&self) -> Poly {
        let d11 = self.wirtinger(Var::Z1).wirtinger(Var::Z1);
        let db11 = self.wirtinger(Var::ZB1).wirtinger(Var::ZB1);
        let d22 = self
            .wirtinger(Var::Z2)
            .wirtinger(Var::ZB2)
            .scale(&GaussianRational::from_int(2));
        (&(&d11 + &db11) - &d22).scale(&GaussianRational::from_int(2))
    }

    /// Partial derivative along a real coordinate `x_k`, via
    /// `dx0 = d1 + db1`, `dx1 = i(d1 - db1)`, `dx2 = d2 + db2`, `dx3 = i(d2 - db2)`.
    pub fn real_partial(&self, k: usize) -> Poly {
        let (hol, anti) = match k {
            0 | 1 => (Var::Z1, Var::ZB1),
            2 | 3 => (Var::Z2, Var::ZB2),
            _ => panic!("real coordinate index {k} out of range 0..4"),
        };
        let a = self.wirtinger(hol);
        let b = self.wirtinger(anti);
        if k.is_multiple_of(2) {
            &a + &b
        } else {
            (&a - &b).scale(&GaussianRational::i())
        }
    }

    /// Numeric value at a point; `zb` symbols take the conjugate coordinates.
    pub fn eval(&self, at: &ComplexPoint) -> Complex64 {
        let vals = [at.z1, at.z1.conj(), at.z2, at.z2.conj()];
        self.terms
            .iter()
            .map(|(m, c)| {
                let (re, im) = c.to_f64_pair();
                let mut acc = Complex64::new(re, im);
                for (x, e) in vals.iter().zip(m.exps) {
                    if e > 0 {
                        acc *= x.powu(e);
                    }
                }
                acc
            })
            .sum()
    }
}

impl From<GaussianRational> for Poly {
    fn from(c: GaussianRational) -> Self {
        Poly::constant(c)
    }
}

impl From<Var> for Poly {
    fn from(v: Var) -> Self {
        Poly::var(v)
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c);
        }
        out
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, &-c);
        }
        out
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        &self + &rhs
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        &self - &rhs
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        &self * &rhs
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// Renders a real rational as a grammar factor: `3`, `(1/2)`.
fn rational_factor(r: &Rational) -> String {
    if r.denom().is_one() {
        format_rational(r)
    } else {
        format!("({})", format_rational(r))
    }
}

/// A coefficient as a sign plus factor list. `None` sign-less general complex
/// values are emitted as one parenthesised factor.
fn coeff_factors(c: &GaussianRational) -> (bool, Vec<String>) {
    if c.is_real() {
        let neg = c.re.is_negative();
        let a = c.re.abs();
        if a.is_one() {
            return (neg, vec![]);
        }
        return (neg, vec![rational_factor(&a)]);
    }
    if c.is_imaginary() {
        let neg = c.im.is_negative();
        let b = c.im.abs();
        let mut f = Vec::new();
        if !b.is_one() {
            f.push(rational_factor(&b));
        }
        f.push("i".to_string());
        return (neg, f);
    }
    let im_abs = c.im.abs();
    let im = if im_abs.is_one() {
        "i".to_string()
    } else {
        format!("{}*i", rational_factor(&im_abs))
    };
    let sign = if c.im.is_negative() { '-' } else { '+' };
    (false, vec![format!("({} {} {})", format_rational(&c.re), sign, im)])
}

/// Canonical text form; parses back to the same polynomial.
///
/// Terms are joined by ` + ` / ` - ` and factors by `*`, e.g.
/// `z1^2*z2 + (1/2)*i*zb1 - 3`.
impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let (neg, mut factors) = coeff_factors(c);
            let mon = m.render();
            let first_is_power = factors.is_empty() && mon.first().is_some_and(|s| s.contains('^'));
            factors.extend(mon);
            if factors.is_empty() {
                factors.push("1".to_string());
            }
            let body = factors.join("*");
            match (idx, neg) {
                (0, false) => f.write_str(&body)?,
                // A leading unary minus binds tighter than `^`, so keep it off powers.
                (0, true) if first_is_power => write!(f, "-1*{body}")?,
                (0, true) => write!(f, "-{body}")?,
                (_, false) => write!(f, " + {body}")?,
                (_, true) => write!(f, " - {body}")?,
            }
        }
        Ok(())
    }
}
