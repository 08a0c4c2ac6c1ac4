//! Value-distribution machinery over number fields: proximity, counting and
//! truncated counting functions, logarithmic discriminants, the height
//! identity h = m_S + N_S, evaluators for the Vojta-type inequalities, and
//! the two quantitative lemmas used by the constant pipeline.

use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use crate::arith::{self, Budget};
use crate::error::{Error, Result};
use crate::field::{factor_element, primes_above, valuation, FieldElement, NumberField, PrimeIdeal};
use crate::heights::{
    a_of, absolute_height, element_height, height_rational, AlgebraicNumber,
};
use crate::poly::Polynomial;

/// A finite set of places containing all infinite ones: the finite members
/// are listed, the infinite places are implicit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaceSet {
    field: NumberField,
    finite: BTreeSet<PrimeIdeal>,
}

impl PlaceSet {
    /// Just the infinite places.
    pub fn infinite_only(field: NumberField) -> Self {
        PlaceSet {
            field,
            finite: BTreeSet::new(),
        }
    }

    pub fn with_primes(field: NumberField, primes: impl IntoIterator<Item = PrimeIdeal>) -> Self {
        PlaceSet {
            field,
            finite: primes.into_iter().collect(),
        }
    }

    /// All primes of the field above the given rational primes.
    pub fn from_rational_primes(field: NumberField, ps: &[u64]) -> Self {
        let mut finite = BTreeSet::new();
        for &p in ps {
            for prime in primes_above(field, p) {
                finite.insert(prime);
            }
        }
        PlaceSet { field, finite }
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn finite_places(&self) -> &BTreeSet<PrimeIdeal> {
        &self.finite
    }

    pub fn contains(&self, prime: &PrimeIdeal) -> bool {
        self.finite.contains(prime)
    }

    pub fn insert(&mut self, prime: PrimeIdeal) {
        self.finite.insert(prime);
    }

    /// a(S) = sum of log residue norms over the finite members.
    pub fn a_s(&self) -> f64 {
        self.finite.iter().map(|p| p.log_norm()).sum::<f64>() + 0.0
    }

    /// The same set over an extension: all primes above each member.
    pub fn lift(&self, ext: NumberField) -> PlaceSet {
        let mut finite = BTreeSet::new();
        for p in &self.finite {
            for prime in primes_above(ext, p.p) {
                finite.insert(prime);
            }
        }
        PlaceSet { field: ext, finite }
    }
}

/// Per-target proximity / counting / truncated counting values.
#[derive(Debug, Clone, Serialize)]
pub struct TargetReport {
    pub target: FieldElement,
    pub m_s: f64,
    pub n_s: f64,
    pub n_s_truncated: f64,
}

/// Decomposition of the height of a point into proximity and counting parts,
/// plus per-target reports. All values are normalized relative to the base
/// field of the place set (so h is the relative height for base-field
/// elements and the absolute height for degree-2 points over Q).
#[derive(Debug, Clone, Serialize)]
pub struct NevanlinnaReport {
    pub h: f64,
    pub m_s: f64,
    pub n_s: f64,
    pub targets: Vec<TargetReport>,
}

fn log_plus_finite(v: i64, prime: &PrimeIdeal) -> f64 {
    // log+ |alpha|_P with |alpha|_P = N(P)^(-ord).
    if v < 0 {
        (-v) as f64 * prime.log_norm()
    } else {
        0.0
    }
}

/// m_S(alpha) = sum over S of log+ |alpha|_v.
fn proximity(
    field: NumberField,
    s: &PlaceSet,
    alpha: &FieldElement,
    budget: &Budget,
) -> Result<f64> {
    if alpha.is_zero() {
        return Ok(0.0);
    }
    let mut m = 0.0;
    for place in field.infinite_places() {
        let v = crate::field::local_value(field, alpha, &place);
        if v > 1.0 {
            m += v.ln();
        }
    }
    let _ = budget;
    for prime in &s.finite {
        let v = valuation(field, alpha, prime)?;
        m += log_plus_finite(v, prime);
    }
    Ok(m)
}

/// N_S(alpha) and its truncated companion: contributions of the poles of
/// alpha outside S, with and without multiplicity.
fn counting(
    field: NumberField,
    s: &PlaceSet,
    alpha: &FieldElement,
    budget: &Budget,
) -> Result<(f64, f64)> {
    if alpha.is_zero() {
        return Ok((0.0, 0.0));
    }
    let mut n = 0.0;
    let mut n1 = 0.0;
    for (prime, e) in factor_element(field, alpha, budget)? {
        if e < 0 && !s.contains(&prime) {
            n += (-e) as f64 * prime.log_norm();
            n1 += prime.log_norm();
        }
    }
    Ok((n, n1))
}

fn decompose_in_field(
    field: NumberField,
    s: &PlaceSet,
    alpha: &FieldElement,
    targets: &[FieldElement],
    budget: &Budget,
) -> Result<NevanlinnaReport> {
    let m_s = proximity(field, s, alpha, budget)?;
    let (n_s, _) = counting(field, s, alpha, budget)?;
    let h = if alpha.is_zero() {
        0.0
    } else {
        element_height(field, alpha)?.1
    };
    let mut reports = Vec::with_capacity(targets.len());
    for b in targets {
        if b.field() != field {
            return Err(Error::FieldMismatch);
        }
        let diff = alpha.sub(b);
        if diff.is_zero() {
            return Err(Error::TargetEqualsPoint);
        }
        let inv = diff.inv()?;
        let m = proximity(field, s, &inv, budget)?;
        let (n, n1) = counting(field, s, &inv, budget)?;
        debug_assert!(n1 <= n, "truncated count exceeded the full count");
        reports.push(TargetReport {
            target: b.clone(),
            m_s: m,
            n_s: n,
            n_s_truncated: n1,
        });
    }
    Ok(NevanlinnaReport {
        h,
        m_s,
        n_s,
        targets: reports,
    })
}

/// Proximity/counting decomposition of a base-field element with respect to
/// S, with per-target values m_S(b, alpha) = m_S(1/(alpha - b)) and the
/// counting analogues.
pub fn decompose(
    field: NumberField,
    s: &PlaceSet,
    alpha: &FieldElement,
    targets: &[FieldElement],
) -> Result<NevanlinnaReport> {
    if s.field() != field || alpha.field() != field {
        return Err(Error::FieldMismatch);
    }
    let budget = Budget::default();
    decompose_in_field(field, s, alpha, targets, &budget)
}

/// Decomposition for an algebraic number of degree at most two over Q. The
/// computation runs in Q(alpha) over the lifted place set and is normalized
/// by 1/[Q(alpha):Q].
pub fn decompose_algebraic(
    s: &PlaceSet,
    alpha: &AlgebraicNumber,
    targets: &[BigRational],
) -> Result<NevanlinnaReport> {
    if !s.field().is_rationals() {
        return Err(Error::UnsupportedField);
    }
    let budget = Budget::default();
    let ext = alpha.generated_field();
    let lifted = if ext.is_rationals() {
        s.clone()
    } else {
        s.lift(ext)
    };
    let lifted_targets: Vec<FieldElement> = targets
        .iter()
        .map(|b| FieldElement::from_rational(ext, b.clone()))
        .collect();
    let raw = decompose_in_field(ext, &lifted, alpha.element(), &lifted_targets, &budget)?;
    let scale = 1.0 / alpha.degree() as f64;
    Ok(NevanlinnaReport {
        h: raw.h * scale,
        m_s: raw.m_s * scale,
        n_s: raw.n_s * scale,
        targets: raw
            .targets
            .into_iter()
            .map(|t| TargetReport {
                target: t.target,
                m_s: t.m_s * scale,
                n_s: t.n_s * scale,
                n_s_truncated: t.n_s_truncated * scale,
            })
            .collect(),
    })
}

/// The height identity h(alpha) = m_S(alpha) + N_S(alpha): returns both
/// sides and whether they agree to 1e-9. The height is computed through the
/// projective-point machinery, independent of the place-by-place sums.
pub fn first_main_check(
    field: NumberField,
    s: &PlaceSet,
    alpha: &FieldElement,
) -> Result<(f64, f64, bool)> {
    let report = decompose(field, s, alpha, &[])?;
    let h = report.h;
    let sum = report.m_s + report.n_s;
    Ok((h, sum, (h - sum).abs() <= 1e-9))
}

/// Logarithmic discriminant d_Q(alpha) for degree <= 2 over Q: zero for
/// rationals, (1/2) log |disc Q(alpha)| for quadratic numbers.
pub fn log_discriminant(alpha: &AlgebraicNumber) -> Result<f64> {
    match alpha.degree() {
        1 => Ok(0.0),
        2 => {
            let disc = alpha.generated_field().abs_discriminant();
            Ok(0.5 * (disc as f64).ln())
        }
        _ => Err(Error::UnsupportedDegree),
    }
}

/// d_Q(alpha) <= 2(d-1) h(alpha) + A(d) for quadratic alpha: both sides and
/// the pass flag (must always pass).
pub fn log_discriminant_bound_check(alpha: &AlgebraicNumber) -> Result<(f64, f64, bool)> {
    if alpha.degree() != 2 {
        return Err(Error::UnsupportedDegree);
    }
    let lhs = log_discriminant(alpha)?;
    let rhs = 2.0 * absolute_height(alpha)? + a_of(2, true);
    Ok((lhs, rhs, lhs <= rhs + 1e-9))
}

/// Which of the three inequality shapes to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VojtaForm {
    /// sum m_S(b_i, alpha) <= (2 + eps) h(alpha) + d_k(alpha) + c
    Original,
    /// (n - 2 - eps) h <= d_k + sum N_S(b_i, alpha) + c + c'
    Counting,
    /// (n - 2 - eps) h <= d_k + sum N^(1)_S(b_i, alpha) + c + c'
    Truncated,
}

/// Both sides of the selected inequality with every ingredient reported.
#[derive(Debug, Clone, Serialize)]
pub struct VojtaReport {
    pub form: VojtaForm,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub h: f64,
    pub log_disc: f64,
    pub sum_term: f64,
    pub c: f64,
    pub c_prime: f64,
    pub eps: f64,
    pub b_max: f64,
    pub n_targets: usize,
    pub degree_bound: u32,
}

/// Evaluate the selected inequality for alpha (degree <= 2 over Q) against
/// pairwise-distinct rational targets. c' = n (B + d log 2) with
/// B = max h(b_i).
pub fn vojta_report(
    s: &PlaceSet,
    targets: &[BigRational],
    alpha: &AlgebraicNumber,
    eps: f64,
    c: f64,
    degree_bound: u32,
    form: VojtaForm,
) -> Result<VojtaReport> {
    if !s.field().is_rationals() {
        return Err(Error::UnsupportedField);
    }
    if eps <= 0.0 || degree_bound < 2 {
        return Err(Error::BadRange);
    }
    for (i, b) in targets.iter().enumerate() {
        for other in &targets[i + 1..] {
            if b == other {
                return Err(Error::DuplicateTargets);
            }
        }
    }
    if let Some(q) = alpha.as_rational() {
        if targets.iter().any(|b| b == q) {
            return Err(Error::TargetEqualsPoint);
        }
    }
    let report = decompose_algebraic(s, alpha, targets)?;
    let h = report.h;
    let log_disc = log_discriminant(alpha)?;
    let n = targets.len();
    let b_max = targets
        .iter()
        .map(|b| arith::rat_ln_abs(&height_rational(b)))
        .fold(0.0f64, f64::max);
    let c_prime = n as f64 * (b_max + degree_bound as f64 * std::f64::consts::LN_2);
    let (lhs, rhs, sum_term) = match form {
        VojtaForm::Original => {
            let sum: f64 = report.targets.iter().map(|t| t.m_s).sum();
            (sum, (2.0 + eps) * h + log_disc + c, sum)
        }
        VojtaForm::Counting => {
            let sum: f64 = report.targets.iter().map(|t| t.n_s).sum();
            ((n as f64 - 2.0 - eps) * h, log_disc + sum + c + c_prime, sum)
        }
        VojtaForm::Truncated => {
            let sum: f64 = report.targets.iter().map(|t| t.n_s_truncated).sum();
            ((n as f64 - 2.0 - eps) * h, log_disc + sum + c + c_prime, sum)
        }
    };
    Ok(VojtaReport {
        form,
        lhs,
        rhs,
        holds: lhs <= rhs,
        h,
        log_disc,
        sum_term,
        c,
        c_prime,
        eps,
        b_max,
        n_targets: n,
        degree_bound,
    })
}

/// The unconditional per-target inequality
/// h(alpha) <= m_S(b, alpha) + N_S(b, alpha) + h(b) + [Q(alpha):Q] log 2.
pub fn height_target_inequality_check(
    s: &PlaceSet,
    alpha: &AlgebraicNumber,
    b: &BigRational,
) -> Result<(f64, f64, bool)> {
    let report = decompose_algebraic(s, alpha, std::slice::from_ref(b))?;
    let t = &report.targets[0];
    let lhs = report.h;
    let rhs = t.m_s
        + t.n_s
        + arith::rat_ln_abs(&height_rational(b))
        + alpha.degree() as f64 * std::f64::consts::LN_2;
    Ok((lhs, rhs, lhs <= rhs + 1e-9))
}

/// Scan all points of bounded height and degree <= degree_bound for
/// violations of the truncated inequality; deterministic canonical order.
pub fn exceptional_scan(
    s: &PlaceSet,
    targets: &[BigRational],
    eps: f64,
    c: f64,
    degree_bound: u32,
    height_cap: &BigRational,
    max_points: u64,
) -> Result<Vec<AlgebraicNumber>> {
    if !s.field().is_rationals() {
        return Err(Error::UnsupportedField);
    }
    if degree_bound > 2 {
        return Err(Error::UnsupportedDegree);
    }
    let guard = |e: Error| match e {
        Error::BudgetExceeded => Error::CapTooLarge,
        other => other,
    };
    let budget =
        crate::explorer::EnumerationBudget::new(height_cap.clone(), 1, max_points).map_err(guard)?;
    let mut candidates: Vec<AlgebraicNumber> = Vec::new();
    for point in crate::explorer::enumerate_points(&budget).map_err(guard)? {
        if let crate::explorer::EnumeratedPoint::Rational(q) = point {
            candidates.push(AlgebraicNumber::from_rational(q));
        }
    }
    if degree_bound == 2 {
        let budget2 = crate::explorer::EnumerationBudget::new(height_cap.clone(), 2, max_points)
            .map_err(guard)?;
        for point in crate::explorer::enumerate_points(&budget2).map_err(guard)? {
            if let crate::explorer::EnumeratedPoint::Quadratic(a) = point {
                candidates.push(a);
            }
        }
    }
    let mut violators = Vec::new();
    for alpha in candidates {
        if let Some(q) = alpha.as_rational() {
            if targets.iter().any(|b| b == q) {
                continue;
            }
        }
        let report = vojta_report(s, targets, &alpha, eps, c, 2.max(degree_bound), VojtaForm::Truncated)?;
        if !report.holds {
            violators.push(alpha);
        }
    }
    Ok(violators)
}

/// Outcome of one of the quantitative lemma verifications.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub lhs: f64,
    pub rhs: f64,
    pub pass: bool,
    pub root_height_sum: f64,
    pub total_degree: usize,
}

fn validate_factors(factors: &[Polynomial]) -> Result<Vec<AlgebraicNumber>> {
    let mut roots = Vec::with_capacity(factors.len());
    let mut monics: Vec<Polynomial> = Vec::new();
    for f in factors {
        if !f.field().is_rationals() {
            return Err(Error::UnsupportedField);
        }
        if f.is_zero() || f.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        if f.degree() > 2 {
            return Err(Error::BadRange);
        }
        if !f.irreducible_over_q()? {
            return Err(Error::NotIrreducible);
        }
        let monic = f.make_monic()?;
        if monics.contains(&monic) {
            return Err(Error::DuplicateFactors);
        }
        monics.push(monic);
        let coeffs: Vec<BigRational> = f
            .coeffs()
            .iter()
            .map(|c| c.as_rational().unwrap().clone())
            .collect();
        roots.push(AlgebraicNumber::from_min_poly(&coeffs, 0)?);
    }
    Ok(roots)
}

/// h(D(g)) <= 2(d-1) sum_j h_{k_j}(alpha_j) + 4d(d-1) + A(d) for the product
/// g of pairwise distinct irreducible factors of degree <= 2 with one chosen
/// root each; h_{k_j} is the relative height deg(f_j) * h(alpha_j). The
/// radical is normalized monic, since D scales with the leading coefficient
/// while the right-hand side sees only the roots.
pub fn radical_discriminant_check(factors: &[Polynomial]) -> Result<LemmaReport> {
    let roots = validate_factors(factors)?;
    let d: usize = factors.iter().map(|f| f.degree()).sum();
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let mut g = Polynomial::from_ints(NumberField::rationals(), &[1]);
    for f in factors {
        g = g.mul(&f.make_monic()?);
    }
    let disc = g.discriminant()?;
    debug_assert!(!disc.is_zero(), "radical of distinct irreducibles is squarefree");
    let lhs = arith::rat_ln_abs(&height_rational(disc.as_rational().unwrap()));
    let mut height_sum = 0.0;
    for (f, alpha) in factors.iter().zip(&roots) {
        height_sum += f.degree() as f64 * absolute_height(alpha)?;
    }
    let df = d as f64;
    let rhs = 2.0 * (df - 1.0) * height_sum + 4.0 * df * (df - 1.0) + a_of(d as u32, true);
    Ok(LemmaReport {
        lhs,
        rhs,
        pass: lhs <= rhs + 1e-9,
        root_height_sum: height_sum,
        total_degree: d,
    })
}

/// The truncated-counting sum bound for a factored polynomial
/// f = prod f_j^{s_j}: sum_j sum_i deg(f_j) N^(1)_S(b_i, alpha_j) against
/// [M s+/s + d(2d-1)] sum_j h_{k_j}(alpha_j) + r c_2 with
/// c_2 = M(B + log 2)/s + a(S) + A(r) + 4r(r-1).
pub fn truncated_sum_check(
    factors: &[(Polynomial, u32)],
    targets: &[BigRational],
    s: &PlaceSet,
    s_param: u32,
) -> Result<LemmaReport> {
    if s_param < 2 {
        return Err(Error::BadRange);
    }
    if targets.is_empty() {
        return Err(Error::BadRange);
    }
    for (i, b) in targets.iter().enumerate() {
        for other in &targets[i + 1..] {
            if b == other {
                return Err(Error::DuplicateTargets);
            }
        }
    }
    let polys: Vec<Polynomial> = factors.iter().map(|(f, _)| f.clone()).collect();
    let roots = validate_factors(&polys)?;
    for ((f, m), root) in factors.iter().zip(&roots) {
        if *m < 1 {
            return Err(Error::BadRange);
        }
        let _ = f;
        if let Some(q) = root.as_rational() {
            if targets.iter().any(|b| b == q) {
                return Err(Error::TargetEqualsPoint);
            }
        }
    }
    let d: usize = polys.iter().map(|f| f.degree()).sum();
    let r: usize = factors
        .iter()
        .map(|(f, m)| f.degree() * *m as usize)
        .sum();
    let s_plus = factors.iter().map(|(_, m)| *m).max().unwrap();
    let m_count = targets.len();
    let mut lhs = 0.0;
    let mut height_sum = 0.0;
    for ((f, _), alpha) in factors.iter().zip(&roots) {
        let report = decompose_algebraic(s, alpha, targets)?;
        let deg = f.degree() as f64;
        lhs += deg * report.targets.iter().map(|t| t.n_s_truncated).sum::<f64>();
        height_sum += deg * absolute_height(alpha)?;
    }
    let b_max = targets
        .iter()
        .map(|b| arith::rat_ln_abs(&height_rational(b)))
        .fold(0.0f64, f64::max);
    let rf = r as f64;
    let df = d as f64;
    let c2 = m_count as f64 * (b_max + std::f64::consts::LN_2) / s_param as f64
        + s.a_s()
        + a_of(r as u32, true)
        + 4.0 * rf * (rf - 1.0);
    let rhs = (m_count as f64 * s_plus as f64 / s_param as f64 + df * (2.0 * df - 1.0))
        * height_sum
        + rf * c2;
    Ok(LemmaReport {
        lhs,
        rhs,
        pass: lhs <= rhs + 1e-9,
        root_height_sum: height_sum,
        total_degree: d,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn elem(n: i64, d: i64) -> FieldElement {
        FieldElement::from_rational(q(), rat(n, d))
    }

    #[test]
    fn decompose_eight_ninths() {
        let s = PlaceSet::infinite_only(q());
        let alpha = elem(8, 9);
        let report = decompose(q(), &s, &alpha, &[elem(0, 1), elem(1, 1)]).unwrap();
        assert!(report.m_s.abs() < 1e-12);
        assert!((report.n_s - 9.0f64.ln()).abs() < 1e-12);
        // Against 0: zeros of 8/9 are at 2 with multiplicity 3.
        let t0 = &report.targets[0];
        assert!((t0.n_s - 3.0 * 2.0f64.ln()).abs() < 1e-12);
        assert!((t0.n_s_truncated - 2.0f64.ln()).abs() < 1e-12);
        // Against 1: 8/9 - 1 = -1/9 has no zeros outside S.
        let t1 = &report.targets[1];
        assert!(t1.n_s.abs() < 1e-12);
    }

    #[test]
    fn support_absorbed_into_s() {
        let s = PlaceSet::from_rational_primes(q(), &[2, 3]);
        let report = decompose(q(), &s, &elem(8, 9), &[]).unwrap();
        assert!(report.n_s.abs() < 1e-12);
        assert!((report.m_s - 9.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn first_main_examples() {
        let s = PlaceSet::infinite_only(q());
        let (h, sum, pass) = first_main_check(q(), &s, &elem(8, 9)).unwrap();
        assert!(pass);
        assert!((h - 9.0f64.ln()).abs() < 1e-12);
        assert!((sum - 9.0f64.ln()).abs() < 1e-12);

        let (h, _, pass) = first_main_check(q(), &s, &elem(1, 1)).unwrap();
        assert!(pass && h.abs() < 1e-12);

        // Over Q(i) with 1 + i.
        let k = NumberField::quadratic(-1).unwrap();
        let sk = PlaceSet::infinite_only(k);
        let one_plus_i = FieldElement::new(k, rat(1, 1), rat(1, 1)).unwrap();
        let (h, sum, pass) = first_main_check(k, &sk, &one_plus_i).unwrap();
        assert!(pass, "h = {h}, m+N = {sum}");
    }

    #[test]
    fn target_equals_point_rejected() {
        let s = PlaceSet::infinite_only(q());
        assert_eq!(
            decompose(q(), &s, &elem(1, 2), &[elem(1, 2)]).err(),
            Some(Error::TargetEqualsPoint)
        );
    }

    #[test]
    fn log_discriminants() {
        let a = AlgebraicNumber::from_rational(rat(3, 2));
        assert_eq!(log_discriminant(&a).unwrap(), 0.0);
        let sqrt2 = AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap();
        assert!((log_discriminant(&sqrt2).unwrap() - 0.5 * 8.0f64.ln()).abs() < 1e-12);
        let phi = AlgebraicNumber::from_min_poly(&[rat(-1, 1), rat(-1, 1), rat(1, 1)], 1).unwrap();
        assert!((log_discriminant(&phi).unwrap() - 0.5 * 5.0f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn discriminant_bound_on_quadratics() {
        for alpha in [
            AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap(),
            AlgebraicNumber::sqrt_of(&rat(-1, 1), 0).unwrap(),
            AlgebraicNumber::from_min_poly(&[rat(-1, 1), rat(-1, 1), rat(1, 1)], 0).unwrap(),
        ] {
            let (lhs, rhs, pass) = log_discriminant_bound_check(&alpha).unwrap();
            assert!(pass, "{lhs} > {rhs}");
        }
        assert_eq!(
            log_discriminant_bound_check(&AlgebraicNumber::from_rational(rat(1, 2))).err(),
            Some(Error::UnsupportedDegree)
        );
    }

    #[test]
    fn vojta_counting_example() {
        let s = PlaceSet::infinite_only(q());
        let alpha = AlgebraicNumber::from_rational(rat(8, 9));
        let targets = vec![rat(0, 1), rat(1, 1), rat(2, 1)];
        let report =
            vojta_report(&s, &targets, &alpha, 0.5, 0.0, 2, VojtaForm::Counting).unwrap();
        assert!((report.lhs - 0.5 * 9.0f64.ln()).abs() < 1e-9);
        let expected_sum = 3.0 * 2.0f64.ln() + 0.0 + 10.0f64.ln();
        assert!((report.sum_term - expected_sum).abs() < 1e-9);
        let expected_cp = 3.0 * (2.0f64.ln() + 2.0 * 2.0f64.ln());
        assert!((report.c_prime - expected_cp).abs() < 1e-9);
        assert!((report.rhs - (expected_sum + expected_cp)).abs() < 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn vojta_rejects_bad_targets() {
        let s = PlaceSet::infinite_only(q());
        let alpha = AlgebraicNumber::from_rational(rat(0, 1));
        let targets = vec![rat(0, 1), rat(1, 1)];
        assert_eq!(
            vojta_report(&s, &targets, &alpha, 0.5, 0.0, 2, VojtaForm::Truncated).err(),
            Some(Error::TargetEqualsPoint)
        );
        let dup = vec![rat(1, 1), rat(1, 1)];
        let beta = AlgebraicNumber::from_rational(rat(8, 9));
        assert_eq!(
            vojta_report(&s, &dup, &beta, 0.5, 0.0, 2, VojtaForm::Truncated).err(),
            Some(Error::DuplicateTargets)
        );
    }

    #[test]
    fn truncated_below_counting() {
        let s = PlaceSet::infinite_only(q());
        let alpha = AlgebraicNumber::from_rational(rat(8, 9));
        let targets = vec![rat(0, 1), rat(1, 1), rat(2, 1)];
        let counting =
            vojta_report(&s, &targets, &alpha, 0.5, 0.0, 2, VojtaForm::Counting).unwrap();
        let truncated =
            vojta_report(&s, &targets, &alpha, 0.5, 0.0, 2, VojtaForm::Truncated).unwrap();
        assert!(truncated.rhs <= counting.rhs + 1e-12);
    }

    #[test]
    fn quadratic_point_decomposition() {
        let s = PlaceSet::infinite_only(q());
        let sqrt2 = AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap();
        let report = decompose_algebraic(&s, &sqrt2, &[rat(0, 1)]).unwrap();
        // h(sqrt 2) = (1/2) log 2; conjugation invariance.
        assert!((report.h - 0.5 * 2.0f64.ln()).abs() < 1e-9);
        let conj = decompose_algebraic(&s, &sqrt2.conjugate(), &[rat(0, 1)]).unwrap();
        assert!((report.h - conj.h).abs() < 1e-9);
        assert!((report.targets[0].n_s - conj.targets[0].n_s).abs() < 1e-9);
        // m + N = h for the extension as well.
        assert!((report.m_s + report.n_s - report.h).abs() < 1e-9);
    }

    #[test]
    fn radical_discriminant_examples() {
        let f1 = Polynomial::from_ints(q(), &[-2, 0, 1]);
        let f2 = Polynomial::from_ints(q(), &[-3, 1]);
        let r = radical_discriminant_check(&[f1.clone(), f2.clone()]).unwrap();
        assert!(r.pass);
        let r = radical_discriminant_check(&[f1.clone()]).unwrap();
        assert!(r.pass);
        // (x-1)(x-2): discriminant 1, lhs = 0.
        let g1 = Polynomial::from_ints(q(), &[-1, 1]);
        let g2 = Polynomial::from_ints(q(), &[-2, 1]);
        let r = radical_discriminant_check(&[g1.clone(), g2]).unwrap();
        assert!(r.pass && r.lhs.abs() < 1e-12);
        // Duplicates rejected; reducible rejected.
        assert_eq!(
            radical_discriminant_check(&[g1.clone(), g1.clone()]).err(),
            Some(Error::DuplicateFactors)
        );
        let red = Polynomial::from_ints(q(), &[-1, 0, 1]);
        assert_eq!(
            radical_discriminant_check(&[red]).err(),
            Some(Error::NotIrreducible)
        );
    }

    #[test]
    fn truncated_sum_examples() {
        let s = PlaceSet::infinite_only(q());
        // f = (x^2-2)(x-7)^2 with s = 3 and five targets off the roots.
        let factors = vec![
            (Polynomial::from_ints(q(), &[-2, 0, 1]), 1u32),
            (Polynomial::from_ints(q(), &[-7, 1]), 2u32),
        ];
        let targets: Vec<BigRational> = (1..=5).map(|i| rat(i, 1)).collect();
        let r = truncated_sum_check(&factors, &targets, &s, 3).unwrap();
        assert!(r.pass, "lhs {} rhs {}", r.lhs, r.rhs);

        let single = vec![(Polynomial::from_ints(q(), &[-2, 0, 1]), 1u32)];
        let r = truncated_sum_check(&single, &[rat(1, 1), rat(2, 1)], &s, 2).unwrap();
        assert!(r.pass);

        // A target equal to a root is rejected.
        let lin = vec![(Polynomial::from_ints(q(), &[-3, 1]), 2u32)];
        assert_eq!(
            truncated_sum_check(&lin, &[rat(3, 1)], &s, 2).err(),
            Some(Error::TargetEqualsPoint)
        );
    }

    #[test]
    fn exceptional_scan_examples() {
        let s = PlaceSet::infinite_only(q());
        let targets = vec![rat(0, 1), rat(1, 1), rat(2, 1)];
        // A huge c makes the right side dominate: nothing fails.
        let none = exceptional_scan(&s, &targets, 1.0, 1e6, 2, &rat(2, 1), 100_000).unwrap();
        assert!(none.is_empty());
        // A huge negative c fails every enumerated point (targets excluded).
        let all = exceptional_scan(&s, &targets, 0.1, -1e6, 1, &rat(1, 1), 100_000).unwrap();
        // Height-1 points: infinity is skipped and 0, 1 are targets: only -1.
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].as_rational(), Some(&rat(-1, 1)));
        // Self-consistency: every reported violator re-verifies as one.
        let some = exceptional_scan(&s, &targets, 0.5, 0.0, 2, &rat(3, 1), 100_000).unwrap();
        for alpha in &some {
            let rep =
                vojta_report(&s, &targets, alpha, 0.5, 0.0, 2, VojtaForm::Truncated).unwrap();
            assert!(!rep.holds);
        }
    }

    #[test]
    fn vojta_original_form() {
        let s = PlaceSet::infinite_only(q());
        let alpha = AlgebraicNumber::from_rational(rat(8, 9));
        let targets = vec![rat(0, 1), rat(1, 1), rat(2, 1)];
        let report =
            vojta_report(&s, &targets, &alpha, 0.5, 0.0, 2, VojtaForm::Original).unwrap();
        // m_S against 0, 1, 2: log(9/8) + log 9 + 0.
        let expected = (9.0f64 / 8.0).ln() + 9.0f64.ln();
        assert!((report.lhs - expected).abs() < 1e-9);
        assert!((report.rhs - 2.5 * 9.0f64.ln()).abs() < 1e-9);
        assert!(report.holds);
    }

    #[test]
    fn proximity_plus_counting_is_difference_height() {
        // m_S(b, alpha) + N_S(b, alpha) = h(1/(alpha - b)) = h(alpha - b).
        let s = PlaceSet::infinite_only(q());
        for (alpha, b) in [(rat(8, 9), rat(3, 1)), (rat(-40, 7), rat(1, 2))] {
            let a = AlgebraicNumber::from_rational(alpha.clone());
            let report = decompose_algebraic(&s, &a, std::slice::from_ref(&b)).unwrap();
            let t = &report.targets[0];
            let h_diff = crate::arith::rat_ln_abs(&height_rational(&(&alpha - &b)));
            assert!((t.m_s + t.n_s - h_diff).abs() < 1e-9);
        }
    }

    #[test]
    fn per_target_height_inequality() {
        // h(alpha) <= m_S(b, alpha) + N_S(b, alpha) + h(b) + deg log 2,
        // unconditionally.
        let s = PlaceSet::infinite_only(q());
        for (alpha, b) in [
            (AlgebraicNumber::from_rational(rat(8, 9)), rat(3, 1)),
            (AlgebraicNumber::from_rational(rat(-40, 7)), rat(1, 2)),
            (AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap(), rat(5, 3)),
            (
                AlgebraicNumber::from_min_poly(&[rat(-1, 1), rat(-1, 1), rat(1, 1)], 0).unwrap(),
                rat(-7, 2),
            ),
        ] {
            let (lhs, rhs, pass) = height_target_inequality_check(&s, &alpha, &b).unwrap();
            assert!(pass, "{lhs} > {rhs}");
        }
    }

    #[test]
    fn monotone_in_s() {
        // Enlarging S moves mass from N to m, keeping the sum constant.
        let alpha = elem(40, 9);
        let small = PlaceSet::infinite_only(q());
        let large = PlaceSet::from_rational_primes(q(), &[3]);
        let r_small = decompose(q(), &small, &alpha, &[]).unwrap();
        let r_large = decompose(q(), &large, &alpha, &[]).unwrap();
        assert!(r_large.n_s <= r_small.n_s + 1e-12);
        assert!(r_large.m_s >= r_small.m_s - 1e-12);
        assert!((r_small.m_s + r_small.n_s - (r_large.m_s + r_large.n_s)).abs() < 1e-9);
    }
}
