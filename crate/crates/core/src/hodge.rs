//! Metrics, sesquilinear pairings, and the Hodge star on C^2.
//!
//! `star` is table driven. `star_oracle` solves `η ∧ ★ξ̄ = ⟨η, ξ⟩ vol` directly
//! for an arbitrary constant metric and is used to cross-check the tables.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::forms::{blade_name, complex_to_real_images, Blade, ComplexBasis, Form, Gen};
use crate::poly::Poly;
use crate::scalar::{GaussianRational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HodgeError {
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("metric matrix is singular")]
    SingularMetric,
    #[error("sqrt|det g| = sqrt({0}) is not rational")]
    IrrationalVolume(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MetricKind {
    Euclidean,
    Minkowski,
}

impl MetricKind {
    pub fn name(self) -> &'static str {
        match self {
            MetricKind::Euclidean => "euclidean",
            MetricKind::Minkowski => "minkowski",
        }
    }

    pub fn from_name(s: &str) -> Option<MetricKind> {
        match s {
            "euclidean" => Some(MetricKind::Euclidean),
            "minkowski" => Some(MetricKind::Minkowski),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    /// Transcribed from the reference tables.
    Listed,
    /// Computed by the definitional oracle.
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StarEntry {
    pub input: Blade,
    pub output: Form,
    pub provenance: Provenance,
    pub note: Option<&'static str>,
}

/// A listed value that the definitional computation does not reproduce.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableDiscrepancy {
    pub subject: String,
    pub listed: String,
    pub computed: String,
    pub note: String,
}

/// One table line compared against the oracle under one metric matrix.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComparisonLine {
    pub input: String,
    pub table: String,
    pub oracle: String,
    pub source: Provenance,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleComparison {
    pub convention: String,
    pub lines: Vec<ComparisonLine>,
}

impl OracleComparison {
    pub fn disagreements(&self) -> impl Iterator<Item = &ComparisonLine> {
        self.lines.iter().filter(|l| !l.agrees)
    }
}

pub type RealMatrix = [[Rational; 4]; 4];

/// Constant metric with precomputed star table.
#[derive(Debug, Clone)]
pub struct Metric {
    pub kind: MetricKind,
    /// `⟨dx_s, dx_t⟩`, the entries of `g^{-1}`.
    pub gram_real: RealMatrix,
    pub vol: Form,
    table: Vec<StarEntry>,
    discrepancies: Vec<TableDiscrepancy>,
}

fn diag(d: [i64; 4]) -> RealMatrix {
    std::array::from_fn(|s| {
        std::array::from_fn(|t| if s == t { Rational::from_integer(d[s].into()) } else { Rational::zero() })
    })
}

/// `g = I`.
pub fn g_euclid() -> RealMatrix {
    diag([1, 1, 1, 1])
}

/// `g = diag(1, -1, -1, -1)`.
pub fn g_mink() -> RealMatrix {
    diag([1, -1, -1, -1])
}

/// `g = diag(1, -1, 1, 1)`: the signature under which every listed Minkowski
/// 1-form pairing, including `⟨dz2, dz2⟩ = 2`, holds.
pub fn g_mink_alt() -> RealMatrix {
    diag([1, -1, 1, 1])
}

use Gen::{DZ1, DZ2, DZB1, DZB2};

const DZB1_NOTE: &str = "listed as 2dz_{1bar}; read as 2*dzb1";

fn blade(gens: &[Gen]) -> Blade {
    Blade::of_gens(gens).expect("distinct generators")
}

fn listed(input: &[Gen], c: (i64, i64), output: &[Gen]) -> StarEntry {
    StarEntry {
        input: blade(input),
        output: Form::wedge_of(output).scale(&GaussianRational::frac(c.0, c.1)),
        provenance: Provenance::Listed,
        note: None,
    }
}

fn derived(input: Blade, g: &RealMatrix) -> StarEntry {
    StarEntry {
        input,
        output: star_oracle(&Form::blade(input), g).expect("diagonal metric"),
        provenance: Provenance::Derived,
        note: None,
    }
}

fn euclid_table() -> Vec<StarEntry> {
    let g = g_euclid();
    vec![
        derived(Blade::SCALAR, &g),
        listed(&[DZ1], (1, 2), &[DZ1, DZ2, DZB2]),
        listed(&[DZ2], (-1, 2), &[DZ1, DZ2, DZB1]),
        listed(&[DZB1], (1, 2), &[DZ2, DZB1, DZB2]),
        listed(&[DZB2], (-1, 2), &[DZ1, DZB1, DZB2]),
        listed(&[DZ1, DZB1], (1, 1), &[DZ2, DZB2]),
        listed(&[DZ2, DZB2], (1, 1), &[DZ1, DZB1]),
        listed(&[DZ1, DZB2], (-1, 1), &[DZ1, DZB2]),
        listed(&[DZ2, DZB1], (-1, 1), &[DZ2, DZB1]),
        listed(&[DZ1, DZ2], (1, 1), &[DZ1, DZ2]),
        listed(&[DZB1, DZB2], (1, 1), &[DZB1, DZB2]),
        listed(&[DZ1, DZ2, DZB1], (2, 1), &[DZ2]),
        listed(&[DZ1, DZ2, DZB2], (-2, 1), &[DZ1]),
        listed(&[DZ1, DZB1, DZB2], (2, 1), &[DZB2]),
        listed(&[DZ2, DZB1, DZB2], (-2, 1), &[DZB1]),
        listed(&[DZ1, DZ2, DZB1, DZB2], (4, 1), &[]),
    ]
}

fn mink_table() -> Vec<StarEntry> {
    let g = g_mink();
    let mut t: Vec<StarEntry> = Blade::all()
        .into_iter()
        .filter(|b| b.degree() <= 1)
        .map(|b| derived(b, &g))
        .collect();
    t.extend([
        listed(&[DZ1, DZ2], (-1, 1), &[DZ2, DZB1]),
        listed(&[DZ1, DZB2], (-1, 1), &[DZB1, DZB2]),
        listed(&[DZ2, DZB1], (1, 1), &[DZ1, DZ2]),
        listed(&[DZB1, DZB2], (1, 1), &[DZ1, DZB2]),
        listed(&[DZ1, DZB1], (-1, 1), &[DZ2, DZB2]),
        listed(&[DZ2, DZB2], (1, 1), &[DZ1, DZB1]),
        listed(&[DZ1, DZ2, DZB1], (2, 1), &[DZ2]),
        StarEntry { note: Some(DZB1_NOTE), ..listed(&[DZ1, DZ2, DZB2], (2, 1), &[DZB1]) },
        listed(&[DZ1, DZB1, DZB2], (2, 1), &[DZB2]),
        listed(&[DZ2, DZB1, DZB2], (2, 1), &[DZ1]),
        // ★(dx0^dx1^dx2^dx3) = -1 and e_top = 4 dx0^dx1^dx2^dx3
        StarEntry {
            note: Some("pinned from the real-basis value -1 on dx0/\\dx1/\\dx2/\\dx3"),
            ..listed(&[DZ1, DZ2, DZB1, DZB2], (-4, 1), &[])
        },
    ]);
    t
}

fn mink_discrepancies() -> Vec<TableDiscrepancy> {
    let computed = pair_1forms_with(DZ2, DZ2, &g_mink());
    let listed = GaussianRational::from_int(2);
    if computed == listed {
        return vec![];
    }
    vec![TableDiscrepancy {
        subject: "<dz2,dz2>".to_string(),
        listed: listed.to_string(),
        computed: computed.to_string(),
        note: "listed 1-form pairing disagrees with diag(1,-1,-1,-1); every listed 2- and 3-form star entry \
               agrees with diag(1,-1,-1,-1)"
            .to_string(),
    }]
}

fn build(kind: MetricKind) -> Metric {
    let (gram_real, mut table, discrepancies) = match kind {
        MetricKind::Euclidean => (g_euclid(), euclid_table(), vec![]),
        MetricKind::Minkowski => (g_mink(), mink_table(), mink_discrepancies()),
    };
    table.sort_by_key(|e| e.input);
    debug_assert_eq!(table.len(), 16);
    debug_assert!(table
        .iter()
        .all(|e| e.output.is_homogeneous_of(4 - e.input.degree())));
    let vol = volume_form(&gram_real).expect("unimodular metric");
    Metric { kind, gram_real, vol, table, discrepancies }
}

impl Metric {
    pub fn euclidean() -> &'static Metric {
        static M: OnceLock<Metric> = OnceLock::new();
        M.get_or_init(|| build(MetricKind::Euclidean))
    }

    pub fn minkowski() -> &'static Metric {
        static M: OnceLock<Metric> = OnceLock::new();
        M.get_or_init(|| build(MetricKind::Minkowski))
    }

    pub fn of(kind: MetricKind) -> &'static Metric {
        match kind {
            MetricKind::Euclidean => Metric::euclidean(),
            MetricKind::Minkowski => Metric::minkowski(),
        }
    }

    /// All 16 entries in canonical blade order.
    pub fn star_table(&self) -> &[StarEntry] {
        &self.table
    }

    pub fn entry(&self, b: Blade) -> &StarEntry {
        self.table
            .iter()
            .find(|e| e.input == b)
            .expect("table covers every blade")
    }

    pub fn discrepancies(&self) -> &[TableDiscrepancy] {
        &self.discrepancies
    }

    /// Compares every table line with `star_oracle` under the given matrix.
    pub fn compare_with_oracle(&self, convention: &str, g: &RealMatrix) -> Result<OracleComparison, HodgeError> {
        let mut lines = Vec::with_capacity(16);
        for e in &self.table {
            let oracle = star_oracle(&Form::blade(e.input), g)?;
            lines.push(ComparisonLine {
                input: blade_name::<ComplexBasis>(e.input),
                table: e.output.to_string(),
                oracle: oracle.to_string(),
                source: e.provenance,
                agrees: oracle == e.output,
            });
        }
        Ok(OracleComparison { convention: convention.to_string(), lines })
    }

    /// Oracle comparison under the metric's own matrix and, for Minkowski, the
    /// alternative signature suggested by the listed 1-form pairings.
    pub fn oracle_reports(&self) -> Vec<OracleComparison> {
        let mut v = Vec::new();
        match self.kind {
            MetricKind::Euclidean => {
                v.push(self.compare_with_oracle("diag(1,1,1,1)", &g_euclid()));
            }
            MetricKind::Minkowski => {
                v.push(self.compare_with_oracle("diag(1,-1,-1,-1)", &g_mink()));
                v.push(self.compare_with_oracle("diag(1,-1,1,1)", &g_mink_alt()));
            }
        }
        v.into_iter().map(|r| r.expect("diagonal unimodular")).collect()
    }
}

/// Coefficient of `dx_s` in each complex generator, as a row per generator.
fn generator_rows() -> [[GaussianRational; 4]; 4] {
    complex_to_real_images()
}

fn pair_1forms_with(a: Gen, b: Gen, ginv: &RealMatrix) -> GaussianRational {
    let rows = generator_rows();
    let mut acc = GaussianRational::zero();
    for s in 0..4 {
        for t in 0..4 {
            if ginv[s][t].is_zero() {
                continue;
            }
            let term = &rows[a.index()][s] * &rows[b.index()][t].conj();
            acc += &term.scale(&ginv[s][t]);
        }
    }
    acc
}

/// `⟨a, b⟩` for generator 1-forms, conjugate-linear in `b`.
pub fn pair_1forms(a: Gen, b: Gen, m: &Metric) -> GaussianRational {
    pair_1forms_with(a, b, &m.gram_real)
}

fn det(m: &[Vec<GaussianRational>]) -> GaussianRational {
    match m.len() {
        0 => GaussianRational::one(),
        1 => m[0][0].clone(),
        n => {
            let mut acc = GaussianRational::zero();
            for (j, pivot) in m[0].iter().enumerate() {
                if pivot.is_zero() {
                    continue;
                }
                let minor: Vec<Vec<GaussianRational>> = m[1..]
                    .iter()
                    .map(|row| (0..n).filter(|&k| k != j).map(|k| row[k].clone()).collect())
                    .collect();
                let term = pivot * &det(&minor);
                if j % 2 == 0 {
                    acc += &term;
                } else {
                    acc -= &term;
                }
            }
            acc
        }
    }
}

/// `⟨e_A, e_B⟩` for basis blades of equal degree: the determinant of 1-form pairings.
fn pair_blades(a: Blade, b: Blade, ginv: &RealMatrix) -> GaussianRational {
    let ga = a.gens();
    let gb = b.gens();
    let m: Vec<Vec<GaussianRational>> = ga
        .iter()
        .map(|x| gb.iter().map(|y| pair_1forms_with(*x, *y, ginv)).collect())
        .collect();
    det(&m)
}

fn homogeneous_degree(f: &Form, which: &str) -> Result<Option<usize>, HodgeError> {
    if f.is_zero() {
        return Ok(None);
    }
    f.degree()
        .map(Some)
        .ok_or_else(|| HodgeError::DegreeMismatch(format!("{which} operand is not homogeneous")))
}

/// Pointwise pairing `⟨a, b⟩`, conjugate-linear in `b`.
pub fn pair_forms(a: &Form, b: &Form, m: &Metric) -> Result<Poly, HodgeError> {
    let da = homogeneous_degree(a, "left")?;
    let db = homogeneous_degree(b, "right")?;
    if let (Some(x), Some(y)) = (da, db) {
        if x != y {
            return Err(HodgeError::DegreeMismatch(format!("{x}-form paired with {y}-form")));
        }
    }
    let mut acc = Poly::zero();
    for (ba, pa) in a.terms() {
        for (bb, pb) in b.terms() {
            let c = pair_blades(*ba, *bb, &m.gram_real);
            if c.is_zero() {
                continue;
            }
            acc = &acc + &(pa * &pb.conjugate()).scale(&c);
        }
    }
    Ok(acc)
}

/// Table-driven Hodge star, linear over polynomial coefficients.
pub fn star(f: &Form, m: &Metric) -> Form {
    let mut out = Form::zero();
    for (b, p) in f.terms() {
        out = &out + &m.entry(*b).output.mul_poly(p);
    }
    out
}

fn invert(g: &RealMatrix) -> Result<RealMatrix, HodgeError> {
    let mut a: Vec<Vec<Rational>> = g.iter().map(|r| r.to_vec()).collect();
    let mut inv: Vec<Vec<Rational>> = g_euclid().iter().map(|r| r.to_vec()).collect();
    for col in 0..4 {
        let pivot = (col..4).find(|&r| !a[r][col].is_zero()).ok_or(HodgeError::SingularMetric)?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].clone();
        for k in 0..4 {
            a[col][k] = &a[col][k] / &p;
            inv[col][k] = &inv[col][k] / &p;
        }
        for r in 0..4 {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for k in 0..4 {
                let da = &f * &a[col][k];
                let di = &f * &inv[col][k];
                a[r][k] -= da;
                inv[r][k] -= di;
            }
        }
    }
    Ok(std::array::from_fn(|s| std::array::from_fn(|t| inv[s][t].clone())))
}

fn real_det(g: &RealMatrix) -> Rational {
    let m: Vec<Vec<GaussianRational>> = g
        .iter()
        .map(|r| r.iter().map(|x| GaussianRational::real(x.clone())).collect())
        .collect();
    det(&m).re
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn rational_sqrt(q: &Rational) -> Option<Rational> {
    Some(Rational::new(exact_sqrt(q.numer())?, exact_sqrt(q.denom())?))
}

/// `vol_g = (i/2)^2 sqrt|det g| dz1^dzb1^dz2^dzb2 = (1/4) sqrt|det g| e_top`.
fn volume_form(g: &RealMatrix) -> Result<Form, HodgeError> {
    let d = real_det(g);
    if d.is_zero() {
        return Err(HodgeError::SingularMetric);
    }
    let root = rational_sqrt(&d.abs()).ok_or_else(|| HodgeError::IrrationalVolume(d.abs().to_string()))?;
    Ok(Form::blade(Blade::TOP).scale(&GaussianRational::real(root / Rational::from_integer(4.into()))))
}

/// Hodge star from the defining relation under a constant real metric `g`.
///
/// For a basis blade `B`, `★e_B = Σ_A s(A) σ_B ⟨e_A, e_{B̄}⟩ c e_{A^c}` where
/// `e_A ^ e_{A^c} = s(A) e_top`, `conj(e_B) = σ_B e_{B̄}` and `vol = c e_top`.
pub fn star_oracle(f: &Form, g: &RealMatrix) -> Result<Form, HodgeError> {
    let ginv = invert(g)?;
    let c = volume_form(g)?.coeff(Blade::TOP);
    let c = c.is_constant().expect("constant volume");
    let mut out = Form::zero();
    for (b, p) in f.terms() {
        let conj_gens: Vec<Gen> = b.gens().into_iter().map(Gen::conj).collect();
        let conj_blade = Form::wedge_of(&conj_gens);
        let (bbar, sigma) = match conj_blade.terms().next() {
            Some((bb, s)) => (*bb, s.is_constant().expect("unit sign")),
            None => unreachable!("conjugate blade is nonzero"),
        };
        let mut image = Form::zero();
        for a in Blade::of_degree(b.degree()) {
            let pairing = pair_blades(a, bbar, &ginv);
            if pairing.is_zero() {
                continue;
            }
            let comp = a.complement();
            let (s, _) = a.wedge(comp).expect("complementary");
            let x = &(&pairing * &sigma) * &c;
            let x = if s < 0 { -x } else { x };
            image.add_to(comp, &Poly::constant(x));
        }
        out = &out + &image.mul_poly(p);
    }
    Ok(out)
}

/// Codifferential: `-★d★` (Euclidean), `+★d★` (Minkowski).
pub fn codiff(f: &Form, m: &Metric) -> Form {
    let s = star(&star(f, m).ext_d(), m);
    match m.kind {
        MetricKind::Euclidean => -s,
        MetricKind::Minkowski => s,
    }
}

/// `Δ = d d* + d* d`.
pub fn hodge_laplacian(f: &Form, m: &Metric) -> Form {
    &codiff(f, m).ext_d() + &codiff(&f.ext_d(), m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Var;

    fn w(gens: &[Gen]) -> Form {
        Form::wedge_of(gens)
    }

    fn gr(re: i64, im: i64) -> GaussianRational {
        GaussianRational::complex((re, 1), (im, 1))
    }

    #[test]
    fn one_form_pairings() {
        let e = Metric::euclidean();
        let m = Metric::minkowski();
        assert_eq!(pair_1forms(DZ1, DZ1, e), gr(2, 0));
        assert_eq!(pair_1forms(DZ1, DZB1, m), gr(2, 0));
        assert_eq!(pair_1forms(DZ1, DZ2, m), gr(0, 0));
        assert_eq!(pair_1forms(DZ1, DZ1, m), gr(0, 0));
        assert_eq!(pair_1forms(DZ1, DZB2, m), gr(0, 0));
        assert_eq!(pair_1forms(DZ2, DZB2, m), gr(0, 0));
        assert_eq!(pair_1forms(DZ2, DZ2, m), gr(-2, 0));
    }

    #[test]
    fn minkowski_reports_the_pairing_discrepancy() {
        let d = Metric::minkowski().discrepancies();
        assert_eq!(d.len(), 1);
        assert_eq!((d[0].listed.as_str(), d[0].computed.as_str()), ("2", "-2"));
        assert!(Metric::euclidean().discrepancies().is_empty());
    }

    #[test]
    fn form_pairings() {
        let e = Metric::euclidean();
        let f = w(&[DZ1, DZ2]);
        assert_eq!(pair_forms(&f, &f, e).unwrap(), Poly::int(4));
        let one = Form::scalar(Poly::one());
        assert_eq!(pair_forms(&one, &one, Metric::minkowski()).unwrap(), Poly::one());
        assert!(matches!(
            pair_forms(&f, &Form::gen(DZ1), e),
            Err(HodgeError::DegreeMismatch(_))
        ));
        let zb1 = Form::scalar(Poly::var(Var::ZB1));
        assert_eq!(
            pair_forms(&zb1, &zb1, e).unwrap(),
            &Poly::var(Var::Z1) * &Poly::var(Var::ZB1)
        );
    }

    #[test]
    fn star_examples() {
        let e = Metric::euclidean();
        let m = Metric::minkowski();
        let half = GaussianRational::frac(1, 2);
        assert_eq!(star(&Form::gen(DZ1), e), w(&[DZ1, DZ2, DZB2]).scale(&half));
        assert_eq!(star(&w(&[DZ1, DZ2]), m), -w(&[DZ2, DZB1]));
        assert_eq!(star(&Form::blade(Blade::TOP), e), Form::scalar(Poly::int(4)));
        let p = Poly::var(Var::Z2);
        assert_eq!(star(&w(&[DZ1, DZ2]).mul_poly(&p), e), w(&[DZ1, DZ2]).mul_poly(&p));
    }

    #[test]
    fn oracle_examples() {
        let g = g_euclid();
        let vol = star_oracle(&Form::scalar(Poly::one()), &g).unwrap();
        assert_eq!(vol, Form::blade(Blade::TOP).scale(&GaussianRational::frac(1, 4)));
        let dx0123 = (0..4).fold(crate::forms::RealForm::scalar(Poly::one()), |acc, k| {
            acc.wedge(&crate::forms::RealForm::dx(k))
        });
        assert_eq!(vol.to_real(), dx0123);
        assert_eq!(star_oracle(&w(&[DZ1, DZ2]), &g).unwrap(), w(&[DZ1, DZ2]));
    }

    #[test]
    fn euclidean_table_matches_oracle() {
        let r = &Metric::euclidean().oracle_reports()[0];
        assert_eq!(r.lines.len(), 16);
        assert_eq!(r.disagreements().count(), 0);
    }

    #[test]
    fn minkowski_table_matches_g_mink_oracle() {
        let reports = Metric::minkowski().oracle_reports();
        assert_eq!(reports[0].disagreements().count(), 0);
        assert!(reports[1].disagreements().count() > 0);
    }

    #[test]
    fn singular_and_irrational_metrics() {
        let mut g = g_euclid();
        g[3][3] = Rational::zero();
        assert_eq!(star_oracle(&Form::gen(DZ1), &g), Err(HodgeError::SingularMetric));
        let mut g = g_euclid();
        g[0][0] = Rational::from_integer(2.into());
        assert!(matches!(
            star_oracle(&Form::gen(DZ1), &g),
            Err(HodgeError::IrrationalVolume(_))
        ));
        g[1][1] = Rational::from_integer(2.into());
        assert!(star_oracle(&Form::gen(DZ1), &g).is_ok());
    }

    #[test]
    fn involutions() {
        let e = Metric::euclidean();
        for b in Blade::all() {
            let p = b.degree();
            let f = Form::blade(b);
            let sign = if (p * (4 - p)) % 2 == 0 { f.clone() } else { -f.clone() };
            assert_eq!(star(&star(&f, e), e), sign);
        }
        let m = Metric::minkowski();
        for b in Blade::of_degree(2) {
            let f = Form::blade(b);
            assert_eq!(star(&star(&f, m), m), -f);
        }
    }

    #[test]
    fn eigenvectors() {
        let e = Metric::euclidean();
        let sd = [w(&[DZ1, DZ2]), w(&[DZB1, DZB2]), w(&[DZ1, DZB1]) + w(&[DZ2, DZB2])];
        let asd = [w(&[DZ1, DZB2]), w(&[DZ2, DZB1]), w(&[DZ1, DZB1]) - w(&[DZ2, DZB2])];
        for f in &sd {
            assert_eq!(&star(f, e), f);
        }
        for f in &asd {
            assert_eq!(star(f, e), -f);
        }
        let m = Metric::minkowski();
        let i = GaussianRational::i();
        let pairs = [
            (w(&[DZ1, DZ2]), w(&[DZ2, DZB1])),
            (w(&[DZ1, DZB1]), w(&[DZ2, DZB2])),
            (w(&[DZ1, DZB2]), w(&[DZB1, DZB2])),
        ];
        for (a, b) in &pairs {
            let plus = a + &b.scale(&i);
            let minus = a - &b.scale(&i);
            assert_eq!(star(&plus, m), plus.scale(&i));
            assert_eq!(star(&minus, m), minus.scale(&-i.clone()));
        }
    }

    #[test]
    fn codifferential_examples() {
        let e = Metric::euclidean();
        let m = Metric::minkowski();
        let c = Form::scalar(Poly::int(7));
        assert!(codiff(&c, e).is_zero());
        assert!(codiff(&c, m).is_zero());
        let w1 = Form::gen(DZ1).mul_poly(&Poly::var(Var::Z1));
        assert_eq!(codiff(&w1, m), Form::scalar(Poly::int(-2)));
        let zz = Form::scalar(&Poly::var(Var::Z1) * &Poly::var(Var::ZB1));
        assert!(!hodge_laplacian(&zz, e).is_zero());
        assert!(hodge_laplacian(&Form::gen(DZ1).scale(&gr(3, 1)), m).is_zero());
    }
}
