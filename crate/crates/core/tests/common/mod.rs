//! Shared test support: a real-coordinate polynomial oracle, seeded generators,
//! and the curated example potentials.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use formwell::forms::{Blade, Form};
use formwell::hodge::MetricKind;
use formwell::lang::parse_problem;
use formwell::maxwell::Potential;
use formwell::poly::{Monomial, Poly, Var};
use formwell::scalar::GaussianRational as GR;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Polynomial in the real coordinates x0..x3, built by substituting
/// z1 = x0 + i x1, zb1 = x0 - i x1, z2 = x2 + i x3, zb2 = x2 - i x3.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct XPoly(BTreeMap<[u32; 4], GR>);

impl XPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: GR) -> Self {
        let mut p = Self::zero();
        p.add_term([0; 4], &c);
        p
    }

    pub fn x(k: usize) -> Self {
        let mut e = [0; 4];
        e[k] = 1;
        let mut p = Self::zero();
        p.add_term(e, &GR::one());
        p
    }

    fn add_term(&mut self, e: [u32; 4], c: &GR) {
        let slot = self.0.entry(e).or_insert_with(GR::zero);
        *slot += c;
        if slot.is_zero() {
            self.0.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add(&self, o: &XPoly) -> XPoly {
        let mut r = self.clone();
        for (e, c) in &o.0 {
            r.add_term(*e, c);
        }
        r
    }

    pub fn scale(&self, s: &GR) -> XPoly {
        let mut r = XPoly::zero();
        for (e, c) in &self.0 {
            r.add_term(*e, &(c * s));
        }
        r
    }

    pub fn sub(&self, o: &XPoly) -> XPoly {
        self.add(&o.scale(&GR::from_int(-1)))
    }

    pub fn mul(&self, o: &XPoly) -> XPoly {
        let mut r = XPoly::zero();
        for (ea, ca) in &self.0 {
            for (eb, cb) in &o.0 {
                let e = [ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2], ea[3] + eb[3]];
                r.add_term(e, &(ca * cb));
            }
        }
        r
    }

    pub fn pow(&self, n: u32) -> XPoly {
        (0..n).fold(XPoly::constant(GR::one()), |acc, _| acc.mul(self))
    }

    pub fn partial(&self, k: usize) -> XPoly {
        let mut r = XPoly::zero();
        for (e, c) in &self.0 {
            if e[k] == 0 {
                continue;
            }
            let mut e2 = *e;
            e2[k] -= 1;
            r.add_term(e2, &c.scale(&num_rational::BigRational::from_integer(e[k].into())));
        }
        r
    }

    pub fn from_poly(p: &Poly) -> XPoly {
        let i = GR::i();
        let minus_i = GR::complex((0, 1), (-1, 1));
        let sub = [
            XPoly::x(0).add(&XPoly::x(1).scale(&i)),
            XPoly::x(0).add(&XPoly::x(1).scale(&minus_i)),
            XPoly::x(2).add(&XPoly::x(3).scale(&i)),
            XPoly::x(2).add(&XPoly::x(3).scale(&minus_i)),
        ];
        let mut r = XPoly::zero();
        for (m, c) in p.terms() {
            let ex = m.exps();
            let mut t = XPoly::constant(c.clone());
            for (s, n) in ex.iter().enumerate() {
                t = t.mul(&sub[s].pow(*n));
            }
            r = r.add(&t);
        }
        r
    }

    /// Sum of second partials with signs `eta`.
    pub fn second_order(&self, eta: [i64; 4]) -> XPoly {
        (0..4).fold(XPoly::zero(), |acc, k| {
            acc.add(&self.partial(k).partial(k).scale(&GR::from_int(eta[k])))
        })
    }
}

pub const EUCLID_ETA: [i64; 4] = [1, 1, 1, 1];
pub const MINK_ETA: [i64; 4] = [1, -1, -1, -1];

pub fn eta(kind: MetricKind) -> [i64; 4] {
    match kind {
        MetricKind::Euclidean => EUCLID_ETA,
        MetricKind::Minkowski => MINK_ETA,
    }
}

/// Real components (w0, w1, w2, w3) of the potential 1-form.
pub fn real_components(w: &Potential) -> [XPoly; 4] {
    let i = GR::i();
    let (f1, f2) = (XPoly::from_poly(&w.f1), XPoly::from_poly(&w.f2));
    let (g1, g2) = (XPoly::from_poly(&w.fb1), XPoly::from_poly(&w.fb2));
    [f1.add(&g1), f1.sub(&g1).scale(&i), f2.add(&g2), f2.sub(&g2).scale(&i)]
}

/// Divergence form of the codifferential: `-Σ η_kk ∂_k w_k`.
pub fn real_codiff(w: &Potential, kind: MetricKind) -> XPoly {
    let c = real_components(w);
    let e = eta(kind);
    (0..4).fold(XPoly::zero(), |acc, k| acc.sub(&c[k].partial(k).scale(&GR::from_int(e[k]))))
}

/// E and B from `F_ab = ∂_a w_b - ∂_b w_a`: E_k = -F_0k, B = (-F_23, F_13, -F_12).
pub fn real_eb(w: &Potential) -> ([XPoly; 3], [XPoly; 3]) {
    let c = real_components(w);
    let f = |a: usize, b: usize| c[b].partial(a).sub(&c[a].partial(b));
    let neg = |p: XPoly| p.scale(&GR::from_int(-1));
    (
        [neg(f(0, 1)), neg(f(0, 2)), neg(f(0, 3))],
        [neg(f(2, 3)), f(1, 3), neg(f(1, 2))],
    )
}

pub fn xs(ps: &[Poly; 3]) -> [XPoly; 3] {
    [XPoly::from_poly(&ps[0]), XPoly::from_poly(&ps[1]), XPoly::from_poly(&ps[2])]
}

// Generators. Coefficients come from {-3..3} ∪ {±1/2}, optionally with an imaginary part.

pub fn small_rational(r: &mut impl Rng) -> GR {
    const CHOICES: [(i64, i64); 9] = [(-3, 1), (-2, 1), (-1, 1), (0, 1), (1, 1), (2, 1), (3, 1), (1, 2), (-1, 2)];
    let (n, d) = CHOICES[r.gen_range(0..CHOICES.len())];
    GR::frac(n, d)
}

pub fn coeff(r: &mut impl Rng) -> GR {
    let re = small_rational(r);
    if r.gen_bool(0.3) {
        &re + &(&small_rational(r) * &GR::i())
    } else {
        re
    }
}

pub fn nonzero_coeff(r: &mut impl Rng) -> GR {
    loop {
        let c = coeff(r);
        if !c.is_zero() {
            return c;
        }
    }
}

pub fn monomial(r: &mut impl Rng, max_deg: u32) -> Monomial {
    let deg = r.gen_range(0..=max_deg);
    let mut e = [0u32; 4];
    for _ in 0..deg {
        e[r.gen_range(0..4)] += 1;
    }
    Monomial::new(e[0], e[1], e[2], e[3])
}

pub fn poly(r: &mut impl Rng, max_deg: u32, max_terms: usize) -> Poly {
    let n = r.gen_range(0..=max_terms);
    Poly::from_terms((0..n).map(|_| (monomial(r, max_deg), coeff(r))))
}

pub fn form(r: &mut impl Rng, max_deg: u32) -> Form {
    let blades = Blade::all();
    let n = r.gen_range(1..=4);
    Form::from_terms((0..n).map(|_| (*blades.choose(r).unwrap(), poly(r, max_deg, 3))))
}

pub fn potential(r: &mut impl Rng, max_deg: u32) -> Potential {
    Potential::new(poly(r, max_deg, 3), poly(r, max_deg, 3), poly(r, max_deg, 3), poly(r, max_deg, 3))
}

/// Monomials killed by both `∂1∂̄1` and `∂2∂̄2`.
fn pluriharmonic_monomial(r: &mut impl Rng, max_deg: u32) -> Monomial {
    let m = monomial(r, max_deg);
    let [mut a, mut ab, mut b, mut bb] = m.exps();
    if a > 0 && ab > 0 {
        if r.gen_bool(0.5) {
            a = 0
        } else {
            ab = 0
        }
    }
    if b > 0 && bb > 0 {
        if r.gen_bool(0.5) {
            b = 0
        } else {
            bb = 0
        }
    }
    Monomial::new(a, ab, b, bb)
}

/// `mixed` allows the non-monomial harmonic `z1 zb1 - z2 zb2`.
fn harmonic_poly(r: &mut impl Rng, max_deg: u32, mixed: bool) -> Poly {
    let mut p = Poly::from_terms((0..r.gen_range(0..=3)).map(|_| (pluriharmonic_monomial(r, max_deg), coeff(r))));
    if mixed && r.gen_bool(0.3) {
        let v = |x| Poly::var(x);
        let q = &(&v(Var::Z1) * &v(Var::ZB1)) - &(&v(Var::Z2) * &v(Var::ZB2));
        p = &p + &q.scale(&nonzero_coeff(r));
    }
    p
}

/// Drops terms containing `v`, then adds `c * v`. Keeps monomial-wise harmonicity.
fn without_plus_linear(p: Poly, v: Var, r: &mut impl Rng) -> Poly {
    let kept = Poly::from_terms(p.terms().filter(|(m, _)| m.exp(v) == 0).map(|(m, c)| (*m, c.clone())));
    &kept + &Poly::var(v).scale(&coeff(r))
}

/// Euclidean-harmonic potential; `constant_s` forces S_E constant by construction.
pub fn gen_harmonic(r: &mut impl Rng, constant_s: bool) -> Potential {
    let mut f = [0, 1, 2, 3].map(|_| harmonic_poly(r, 3, !constant_s));
    if constant_s {
        for (k, v) in [Var::ZB1, Var::ZB2, Var::Z1, Var::Z2].into_iter().enumerate() {
            f[k] = without_plus_linear(std::mem::take(&mut f[k]), v, r);
        }
        let [f1, f2, fb1, fb2] = f;
        let u = harmonic_poly(r, 3, true);
        return formwell::maxwell::gauge_transform(&Potential::new(f1, f2, fb1, fb2), &u);
    }
    let [f1, f2, fb1, fb2] = f;
    Potential::new(f1, f2, fb1, fb2)
}

/// Monomials killed by `∂1²`, `∂̄1²` and `∂2∂̄2`.
fn wavelike_poly(r: &mut impl Rng, max_deg: u32, mixed: bool) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..r.gen_range(0..=3) {
        let [a, ab, b, bb] = monomial(r, max_deg).exps();
        let (b, bb) = if r.gen_bool(0.5) { (b, 0) } else { (0, bb) };
        p.add_term(Monomial::new(a.min(1), ab.min(1), b, bb), &coeff(r));
    }
    if mixed && r.gen_bool(0.3) {
        let v = |x| Poly::var(x);
        let base = if r.gen_bool(0.5) { v(Var::Z1).pow(2) } else { v(Var::ZB1).pow(2) };
        let q = &base + &(&v(Var::Z2) * &v(Var::ZB2));
        p = &p + &q.scale(&nonzero_coeff(r));
    }
    p
}

/// Minkowski-wavelike potential; `constant_s` forces S_M constant by construction.
pub fn gen_wavelike(r: &mut impl Rng, constant_s: bool) -> Potential {
    let mut f = [0, 1, 2, 3].map(|_| wavelike_poly(r, 3, !constant_s));
    if constant_s {
        for (k, v) in [Var::Z1, Var::ZB2, Var::ZB1, Var::Z2].into_iter().enumerate() {
            f[k] = without_plus_linear(std::mem::take(&mut f[k]), v, r);
        }
        let [f1, f2, fb1, fb2] = f;
        let u = wavelike_poly(r, 3, true);
        return formwell::maxwell::gauge_transform(&Potential::new(f1, f2, fb1, fb2), &u);
    }
    let [f1, f2, fb1, fb2] = f;
    Potential::new(f1, f2, fb1, fb2)
}

// Curated examples.

pub fn problems_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("examples").join("problems")
}

pub fn problem_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(problems_dir())
        .expect("examples/problems exists")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "mxw"))
        .collect();
    v.sort();
    v
}

pub fn load(name: &str) -> (MetricKind, Potential) {
    let text = std::fs::read_to_string(problems_dir().join(format!("{name}.mxw"))).unwrap();
    let p = parse_problem(&text).unwrap();
    (p.metric, p.potential)
}

pub fn v(x: Var) -> Poly {
    Poly::var(x)
}

pub fn monopole() -> Potential {
    load("monopole").1
}

/// Every shipped problem, plus the single-function instances used in the Lorenz examples.
pub fn curated() -> Vec<(String, MetricKind, Potential)> {
    let mut out: Vec<_> = problem_files()
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap().to_string_lossy().into_owned();
            let spec = parse_problem(&std::fs::read_to_string(p).unwrap()).unwrap();
            (name, spec.metric, spec.potential)
        })
        .collect();
    let only_f1 = |p: Poly| Potential { f1: p, ..Potential::zero() };
    out.push(("f1=z1 euclidean".into(), MetricKind::Euclidean, only_f1(v(Var::Z1))));
    out.push(("f1=z1 minkowski".into(), MetricKind::Minkowski, only_f1(v(Var::Z1))));
    out.push(("f1=zb1 euclidean".into(), MetricKind::Euclidean, only_f1(v(Var::ZB1))));
    out.push(("f1=z1*zb1 euclidean".into(), MetricKind::Euclidean, only_f1(&v(Var::Z1) * &v(Var::ZB1))));
    out
}

/// Every polynomial appearing in the curated examples.
pub fn curated_polys() -> Vec<Poly> {
    let mut v: Vec<Poly> = Vec::new();
    for (_, _, w) in curated() {
        for p in w.functions() {
            if !v.contains(p) {
                v.push(p.clone());
            }
        }
    }
    v
}
