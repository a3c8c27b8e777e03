//! Potentials, the Faraday 2-form, field extraction, and vacuum checks.

use serde::Serialize;
use thiserror::Error;

use crate::forms::{blade_name, Blade, ComplexBasis, Form, Gen};
use crate::hodge::{codiff, star, Metric, MetricKind, TableDiscrepancy};
use crate::poly::{Poly, Var};
use crate::scalar::GaussianRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MaxwellError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not in the holomorphic case: {0}")]
    NotHolomorphicCase(String),
    #[error("d*w is not constant: {0}")]
    NotConstantLorenz(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
}

/// `ω = f1 dz1 + f2 dz2 + fb1 dzb1 + fb2 dzb2`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Potential {
    pub f1: Poly,
    pub f2: Poly,
    pub fb1: Poly,
    pub fb2: Poly,
}

impl Potential {
    pub fn new(f1: Poly, f2: Poly, fb1: Poly, fb2: Poly) -> Self {
        Self { f1, f2, fb1, fb2 }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn to_form(&self) -> Form {
        Form::from_terms([
            (Blade::of_gens(&[Gen::DZ1]).unwrap(), self.f1.clone()),
            (Blade::of_gens(&[Gen::DZ2]).unwrap(), self.f2.clone()),
            (Blade::of_gens(&[Gen::DZB1]).unwrap(), self.fb1.clone()),
            (Blade::of_gens(&[Gen::DZB2]).unwrap(), self.fb2.clone()),
        ])
    }

    /// The four functions in the order `f1, f2, fb1, fb2`.
    pub fn functions(&self) -> [&Poly; 4] {
        [&self.f1, &self.f2, &self.fb1, &self.fb2]
    }
}

/// Coefficients of a 2-form on the six complex basis 2-forms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaradayComponents {
    pub f12: Poly,
    pub f1b2b: Poly,
    pub f11b: Poly,
    pub f12b: Poly,
    pub f21b: Poly,
    pub f22b: Poly,
}

impl FaradayComponents {
    pub fn all(&self) -> [&Poly; 6] {
        [&self.f12, &self.f1b2b, &self.f11b, &self.f12b, &self.f21b, &self.f22b]
    }

    /// Components of `dω` from the potential directly.
    pub fn of_potential(w: &Potential) -> Self {
        let d = |p: &Poly, v: Var| p.wirtinger(v);
        use Var::*;
        Self {
            f12: &d(&w.f2, Z1) - &d(&w.f1, Z2),
            f1b2b: &d(&w.fb2, ZB1) - &d(&w.fb1, ZB2),
            f11b: &d(&w.fb1, Z1) - &d(&w.f1, ZB1),
            f22b: &d(&w.fb2, Z2) - &d(&w.f2, ZB2),
            f12b: &d(&w.fb2, Z1) - &d(&w.f1, ZB2),
            f21b: &d(&w.fb1, Z2) - &d(&w.f2, ZB1),
        }
    }
}

fn two_form_blade(a: Gen, b: Gen) -> Blade {
    Blade::of_gens(&[a, b]).expect("distinct")
}

fn require_two_form(f: &Form) -> Result<(), MaxwellError> {
    if f.is_homogeneous_of(2) {
        Ok(())
    } else {
        Err(MaxwellError::DegreeMismatch("expected a 2-form".to_string()))
    }
}

pub fn faraday_components(f: &Form) -> Result<FaradayComponents, MaxwellError> {
    require_two_form(f)?;
    use Gen::*;
    Ok(FaradayComponents {
        f12: f.coeff(two_form_blade(DZ1, DZ2)),
        f1b2b: f.coeff(two_form_blade(DZB1, DZB2)),
        f11b: f.coeff(two_form_blade(DZ1, DZB1)),
        f12b: f.coeff(two_form_blade(DZ1, DZB2)),
        f21b: f.coeff(two_form_blade(DZ2, DZB1)),
        f22b: f.coeff(two_form_blade(DZ2, DZB2)),
    })
}

/// `F_ω = dω`.
pub fn curvature(w: &Potential) -> Form {
    w.to_form().ext_d()
}

/// Electric and magnetic components, read off
/// `F = -dx0^(E1 dx1 + E2 dx2 + E3 dx3) - B1 dx2^dx3 + B2 dx1^dx3 - B3 dx1^dx2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EBFields {
    pub e: [Poly; 3],
    pub b: [Poly; 3],
}

fn gr(re: i64, im: i64) -> GaussianRational {
    GaussianRational::complex((re, 1), (im, 1))
}

/// The closed-form component list in terms of the complex coefficients.
fn closed_form_eb(c: &FaradayComponents) -> EBFields {
    let mi = gr(0, -1);
    let two_i = gr(0, 2);
    let lin = |coefs: [i64; 4]| -> Poly {
        let parts = [&c.f12, &c.f1b2b, &c.f12b, &c.f21b];
        parts
            .iter()
            .zip(coefs)
            .fold(Poly::zero(), |acc, (p, k)| &acc + &p.scale(&GaussianRational::from_int(k)))
    };
    EBFields {
        e: [
            c.f11b.scale(&two_i),
            lin([-1, -1, -1, 1]),
            lin([1, -1, -1, -1]).scale(&mi),
        ],
        b: [
            c.f22b.scale(&two_i),
            lin([-1, -1, 1, -1]),
            lin([1, -1, 1, 1]).scale(&mi),
        ],
    }
}

pub fn eb_fields(f: &Form) -> Result<EBFields, MaxwellError> {
    let comps = faraday_components(f)?;
    let real = f.to_real();
    let c = |a: usize, b: usize| real.coeff(Blade::from_indices(&[a, b]).expect("distinct"));
    let fields = EBFields {
        e: [-c(0, 1), -c(0, 2), -c(0, 3)],
        b: [-c(2, 3), c(1, 3), -c(1, 2)],
    };
    let closed = closed_form_eb(&comps);
    if closed != fields {
        return Err(MaxwellError::Internal(
            "real-basis E/B disagree with the closed-form component list".to_string(),
        ));
    }
    Ok(fields)
}

fn abs2(p: &Poly) -> Poly {
    p.norm_sqr()
}

/// `⟨E, B⟩` from the complex components.
pub fn eb_inner(f: &Form) -> Result<Poly, MaxwellError> {
    let c = faraday_components(f)?;
    let a = (&c.f11b * &c.f22b.conjugate()).scale(&GaussianRational::from_int(4));
    let b = &(&c.f12 - &c.f21b) * &(&c.f12 + &c.f21b).conjugate();
    let d = &(&c.f1b2b + &c.f12b) * &(&c.f1b2b - &c.f12b).conjugate();
    Ok(&a + &(&b + &d).scale(&GaussianRational::from_int(2)))
}

/// `½(|E|² + |B|²)` from the complex components.
pub fn energy(f: &Form) -> Result<Poly, MaxwellError> {
    let c = faraday_components(f)?;
    let sum = c.all().into_iter().fold(Poly::zero(), |acc, p| &acc + &abs2(p));
    Ok(sum.scale(&GaussianRational::from_int(2)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DualityClass {
    SelfDual,
    AntiSelfDual,
    /// Only the zero form.
    Both,
    Neither,
}

impl DualityClass {
    pub fn name(self) -> &'static str {
        match self {
            DualityClass::SelfDual => "SelfDual",
            DualityClass::AntiSelfDual => "AntiSelfDual",
            DualityClass::Both => "Both",
            DualityClass::Neither => "Neither",
        }
    }
}

/// Eigen-classification under `★`: `±F` (Euclidean) or `±iF` (Minkowski).
pub fn duality_class(f: &Form, m: &Metric) -> Result<DualityClass, MaxwellError> {
    require_two_form(f)?;
    if f.is_zero() {
        return Ok(DualityClass::Both);
    }
    let s = star(f, m);
    let unit = match m.kind {
        MetricKind::Euclidean => GaussianRational::one(),
        MetricKind::Minkowski => GaussianRational::i(),
    };
    let plus = f.scale(&unit);
    Ok(if s == plus {
        DualityClass::SelfDual
    } else if s == -plus {
        DualityClass::AntiSelfDual
    } else {
        DualityClass::Neither
    })
}

/// `J = ★d★F` with real components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurrentForm {
    pub p1: Poly,
    pub pb1: Poly,
    pub p2: Poly,
    pub pb2: Poly,
    pub rho: Poly,
    pub j: [Poly; 3],
}

impl CurrentForm {
    pub fn is_zero(&self) -> bool {
        [&self.p1, &self.pb1, &self.p2, &self.pb2].iter().all(|p| p.is_zero())
    }
}

pub fn current(w: &Potential, m: &Metric) -> CurrentForm {
    let jf = star(&star(&curvature(w), m).ext_d(), m);
    let c = |g: Gen| jf.coeff(Blade::of_gens(&[g]).unwrap());
    let (p1, pb1, p2, pb2) = (c(Gen::DZ1), c(Gen::DZB1), c(Gen::DZ2), c(Gen::DZB2));
    let i = GaussianRational::i();
    CurrentForm {
        rho: &p1 + &pb1,
        j: [(&p1 - &pb1).scale(&i), &p2 + &pb2, (&p2 - &pb2).scale(&i)],
        p1,
        pb1,
        p2,
        pb2,
    }
}

/// `S_E = ∂̄1 f1 + ∂̄2 f2 + ∂1 fb1 + ∂2 fb2` and its constant value, if any.
pub fn condition_euclid(w: &Potential) -> (Poly, Option<GaussianRational>) {
    let s = [
        w.f1.wirtinger(Var::ZB1),
        w.f2.wirtinger(Var::ZB2),
        w.fb1.wirtinger(Var::Z1),
        w.fb2.wirtinger(Var::Z2),
    ]
    .iter()
    .fold(Poly::zero(), |acc, p| &acc + p);
    let k = s.is_constant();
    (s, k)
}

/// `S_M = ∂1 f1 - ∂̄2 f2 + ∂̄1 fb1 - ∂2 fb2`, its constant value, and wavelikeness of `ω`.
pub fn condition_mink(w: &Potential) -> (Poly, Option<GaussianRational>, bool) {
    let s = &(&w.f1.wirtinger(Var::Z1) - &w.f2.wirtinger(Var::ZB2))
        + &(&w.fb1.wirtinger(Var::ZB1) - &w.fb2.wirtinger(Var::Z2));
    let k = s.is_constant();
    (s, k, wavelike_potential(w))
}

pub fn wavelike_potential(w: &Potential) -> bool {
    w.functions().iter().all(|p| p.dalembert().is_zero())
}

pub fn harmonic_potential(w: &Potential) -> bool {
    w.functions().iter().all(|p| p.laplace4().is_zero())
}

/// For holomorphic `f1, f2` with `fb_j = conj(f_j)`: `q = ∂2 f1 - ∂1 f2` and
/// whether `q` is free of `z1` and `zb1`.
pub fn holo_condition(w: &Potential) -> Result<(Poly, bool), MaxwellError> {
    let holo = |p: &Poly| p.is_free_of(Var::ZB1) && p.is_free_of(Var::ZB2);
    if !holo(&w.f1) || !holo(&w.f2) {
        return Err(MaxwellError::NotHolomorphicCase("f1 and f2 must not contain zb1 or zb2".to_string()));
    }
    if w.fb1 != w.f1.conjugate() || w.fb2 != w.f2.conjugate() {
        return Err(MaxwellError::NotHolomorphicCase("fb1, fb2 must be the conjugates of f1, f2".to_string()));
    }
    let q = &w.f1.wirtinger(Var::Z2) - &w.f2.wirtinger(Var::Z1);
    let ok = q.wirtinger(Var::Z1).is_zero() && q.wirtinger(Var::ZB1).is_zero();
    Ok((q, ok))
}

/// True iff `□` annihilates all six complex components.
pub fn wavelike_field(f: &Form) -> Result<bool, MaxwellError> {
    let c = faraday_components(f)?;
    Ok(c.all().iter().all(|p| p.dalembert().is_zero()))
}

/// `ω + du`.
pub fn gauge_transform(w: &Potential, u: &Poly) -> Potential {
    Potential {
        f1: &w.f1 + &u.wirtinger(Var::Z1),
        f2: &w.f2 + &u.wirtinger(Var::Z2),
        fb1: &w.fb1 + &u.wirtinger(Var::ZB1),
        fb2: &w.fb2 + &u.wirtinger(Var::ZB2),
    }
}

/// `d*ω` and its constant value, if any.
pub fn lorenz(w: &Potential, m: &Metric) -> (Poly, Option<GaussianRational>) {
    let v = codiff(&w.to_form(), m).coeff(Blade::SCALAR);
    let k = v.is_constant();
    (v, k)
}

fn constant_lorenz(w: &Potential, m: &Metric) -> Result<GaussianRational, MaxwellError> {
    let (v, k) = lorenz(w, m);
    k.ok_or_else(|| MaxwellError::NotConstantLorenz(v.to_string()))
}

/// `-k / d*(direction)`, the multiple of a unit correction that cancels `k`.
fn cancelling_multiple(k: &GaussianRational, unit: &Potential, m: &Metric) -> Result<GaussianRational, MaxwellError> {
    let du = lorenz(unit, m)
        .1
        .filter(|c| !c.is_zero())
        .ok_or_else(|| MaxwellError::Internal("correction direction has non-constant d*".to_string()))?;
    k.checked_div(&du)
        .map(|q| -q)
        .map_err(|e| MaxwellError::Internal(e.to_string()))
}

/// Makes a constant `d*ω` vanish by a gauge transformation, leaving `F` unchanged.
///
/// Returns the new potential and the gauge function `u`, a multiple of `z1 zb1`
/// (Euclidean) or `z1^2` (Minkowski).
pub fn lorenz_normalize(w: &Potential, m: &Metric) -> Result<(Potential, Poly), MaxwellError> {
    let k = constant_lorenz(w, m)?;
    if k.is_zero() {
        return Ok((w.clone(), Poly::zero()));
    }
    let u0 = match m.kind {
        MetricKind::Euclidean => &Poly::var(Var::Z1) * &Poly::var(Var::ZB1),
        MetricKind::Minkowski => Poly::var(Var::Z1).pow(2),
    };
    let c = cancelling_multiple(&k, &gauge_transform(&Potential::zero(), &u0), m)?;
    let u = u0.scale(&c);
    let out = gauge_transform(w, &u);
    if !lorenz(&out, m).0.is_zero() || curvature(&out) != curvature(w) {
        return Err(MaxwellError::Internal("gauge normalization failed to verify".to_string()));
    }
    Ok((out, u))
}

/// Makes a constant `d*ω` vanish by shifting `f1` alone: along `zb1`
/// (Euclidean) or `z1` (Minkowski). This changes `F` unless `d*ω` was already 0.
pub fn lorenz_normalize_f1(w: &Potential, m: &Metric) -> Result<Potential, MaxwellError> {
    let k = constant_lorenz(w, m)?;
    if k.is_zero() {
        return Ok(w.clone());
    }
    let dir = match m.kind {
        MetricKind::Euclidean => Poly::var(Var::ZB1),
        MetricKind::Minkowski => Poly::var(Var::Z1),
    };
    let c = cancelling_multiple(&k, &Potential { f1: dir.clone(), ..Potential::zero() }, m)?;
    let out = Potential { f1: &w.f1 + &dir.scale(&c), ..w.clone() };
    if !lorenz(&out, m).0.is_zero() {
        return Err(MaxwellError::Internal("normalized potential has nonzero d*".to_string()));
    }
    Ok(out)
}

/// Everything `verify` computes for one potential and metric.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub metric: MetricKind,
    pub curvature: Form,
    pub d_f: Form,
    pub d_star_f: Form,
    pub is_vacuum_solution: bool,
    pub duality: DualityClass,
    pub condition_sum: Poly,
    pub condition_constant: Option<GaussianRational>,
    pub lorenz_value: Poly,
    pub wavelike_potential: bool,
    pub harmonic_potential: bool,
    pub wavelike_field: bool,
    pub eb: EBFields,
    pub eb_inner: Poly,
    pub energy: Poly,
    pub table_discrepancies: Vec<TableDiscrepancy>,
}

#[derive(Serialize)]
struct BasisCoeff {
    basis: String,
    coeff: String,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct ReportJson<'a> {
    metric: MetricKind,
    is_vacuum_solution: bool,
    duality: DualityClass,
    condition_sum: String,
    condition_constant: Option<String>,
    lorenz: String,
    wavelike_potential: bool,
    harmonic_potential: bool,
    wavelike_field: bool,
    #[serde(rename = "E")]
    e: [String; 3],
    #[serde(rename = "B")]
    b: [String; 3],
    eb_inner: String,
    energy: String,
    d_star_F: Vec<BasisCoeff>,
    table_discrepancies: &'a [TableDiscrepancy],
}

/// `(basis, coefficient)` pairs of a form, rendered.
pub fn form_coefficients(f: &Form) -> Vec<(String, String)> {
    f.terms()
        .map(|(b, p)| (blade_name::<ComplexBasis>(*b), p.to_string()))
        .collect()
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        let j = ReportJson {
            metric: self.metric,
            is_vacuum_solution: self.is_vacuum_solution,
            duality: self.duality,
            condition_sum: self.condition_sum.to_string(),
            condition_constant: self.condition_constant.as_ref().map(|c| c.to_string()),
            lorenz: self.lorenz_value.to_string(),
            wavelike_potential: self.wavelike_potential,
            harmonic_potential: self.harmonic_potential,
            wavelike_field: self.wavelike_field,
            e: self.eb.e.clone().map(|p| p.to_string()),
            b: self.eb.b.clone().map(|p| p.to_string()),
            eb_inner: self.eb_inner.to_string(),
            energy: self.energy.to_string(),
            d_star_F: form_coefficients(&self.d_star_f)
                .into_iter()
                .map(|(basis, coeff)| BasisCoeff { basis, coeff })
                .collect(),
            table_discrepancies: &self.table_discrepancies,
        };
        serde_json::to_value(j).expect("plain data serializes")
    }
}

/// Assembles the full report for `ω` under `m`.
pub fn verify_vacuum(w: &Potential, m: &Metric) -> Result<VerificationReport, MaxwellError> {
    let f = curvature(w);
    let d_f = f.ext_d();
    if !d_f.is_zero() {
        return Err(MaxwellError::Internal("dF != 0 for F = dw".to_string()));
    }
    let d_star_f = star(&f, m).ext_d();
    let (condition_sum, condition_constant) = match m.kind {
        MetricKind::Euclidean => condition_euclid(w),
        MetricKind::Minkowski => {
            let (s, k, _) = condition_mink(w);
            (s, k)
        }
    };
    Ok(VerificationReport {
        metric: m.kind,
        is_vacuum_solution: d_star_f.is_zero(),
        duality: duality_class(&f, m)?,
        condition_sum,
        condition_constant,
        lorenz_value: lorenz(w, m).0,
        wavelike_potential: wavelike_potential(w),
        harmonic_potential: harmonic_potential(w),
        wavelike_field: wavelike_field(&f)?,
        eb: eb_fields(&f)?,
        eb_inner: eb_inner(&f)?,
        energy: energy(&f)?,
        table_discrepancies: m.discrepancies().to_vec(),
        curvature: f,
        d_f,
        d_star_f,
    })
}
