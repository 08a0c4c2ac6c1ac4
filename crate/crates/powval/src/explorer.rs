//! Exhaustive enumeration of bounded-height points of degree one and two,
//! counts against the density band, and brute-force search for polynomials
//! whose values along a prefix are all s-powerful.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, Budget};
use crate::bounds::{counting_band, schanuel_constant};
use crate::error::{Error, Result};
use crate::field::{field_invariants, FieldElement, NumberField};
use crate::heights::AlgebraicNumber;
use crate::poly::Polynomial;
use crate::powerful::{canonical_representative, is_powerful_element, multiplicities_below};
use crate::sequences::SequencePrefix;

/// Bound data for point enumeration: multiplicative height cap X >= 1,
/// degree 1 or 2, and a guard on the number of emitted points.
#[derive(Debug, Clone)]
pub struct EnumerationBudget {
    height_cap: BigRational,
    degree: u32,
    max_points: u64,
}

impl EnumerationBudget {
    pub fn new(height_cap: BigRational, degree: u32, max_points: u64) -> Result<Self> {
        if height_cap < BigRational::one() {
            return Err(Error::BadRange);
        }
        if degree != 1 && degree != 2 {
            return Err(Error::UnsupportedDegree);
        }
        Ok(EnumerationBudget {
            height_cap,
            degree,
            max_points,
        })
    }

    pub fn height_cap(&self) -> &BigRational {
        &self.height_cap
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }
}

/// A point of the projective line over the algebraic closure of Q, of degree
/// at most two.
#[derive(Debug, Clone, PartialEq)]
pub enum EnumeratedPoint {
    /// The point at infinity [1 : 0].
    Infinity,
    Rational(BigRational),
    Quadratic(AlgebraicNumber),
}

impl EnumeratedPoint {
    /// Multiplicative absolute height.
    pub fn height(&self) -> f64 {
        match self {
            EnumeratedPoint::Infinity => 1.0,
            EnumeratedPoint::Rational(q) => {
                arith::rat_to_f64(&crate::heights::height_rational(q))
            }
            EnumeratedPoint::Quadratic(a) => {
                crate::heights::absolute_height(a).map(f64::exp).unwrap_or(f64::NAN)
            }
        }
    }

    pub fn describe(&self) -> String {
        match self {
            EnumeratedPoint::Infinity => "inf".to_string(),
            EnumeratedPoint::Rational(q) => q.to_string(),
            EnumeratedPoint::Quadratic(a) => {
                format!("{}#root{}", a.min_poly(), a.root_index())
            }
        }
    }
}

/// All points of the projective line over Q of height at most X, in
/// canonical order (height, then numerator, then denominator); includes the
/// point at infinity.
fn enumerate_degree_one(budget: &EnumerationBudget) -> Result<Vec<EnumeratedPoint>> {
    let cap = budget.height_cap.to_integer();
    let cap = if BigRational::from(cap.clone()) > budget.height_cap {
        cap - BigInt::one()
    } else {
        cap
    };
    let cap: i64 = cap.to_i64().ok_or(Error::CapTooLarge)?;
    if cap < 1 {
        return Err(Error::BadRange);
    }
    // (H, numerator, denominator) keys for deterministic order; infinity
    // sorts first within height 1 via denominator 0.
    let mut keyed: Vec<(i64, i64, i64, EnumeratedPoint)> = vec![(1, 1, 0, EnumeratedPoint::Infinity)];
    for den in 1..=cap {
        for num in -cap..=cap {
            if num.gcd(&den) != 1 {
                continue;
            }
            let h = num.abs().max(den);
            keyed.push((
                h,
                num,
                den,
                EnumeratedPoint::Rational(BigRational::new(BigInt::from(num), BigInt::from(den))),
            ));
            if keyed.len() as u64 > budget.max_points {
                return Err(Error::BudgetExceeded);
            }
        }
    }
    keyed.sort_by_key(|a| (a.0, a.1, a.2));
    Ok(keyed.into_iter().map(|(_, _, _, p)| p).collect())
}

/// Exact Mahler measure of an integer quadratic a2 x^2 + a1 x + a0 as a
/// value u + v sqrt(disc) (v = 0 when the measure is rational).
fn quadratic_mahler_exact(a0: &BigInt, a1: &BigInt, a2: &BigInt) -> (BigRational, BigRational, BigInt) {
    let disc = a1 * a1 - BigInt::from(4) * a2 * a0;
    let two = BigRational::from(BigInt::from(2));
    if !disc.is_positive() {
        // Conjugate pair (or double root): product of root moduli is |a0/a2|.
        let m = if a0.magnitude() >= a2.magnitude() {
            BigRational::from(a0.abs())
        } else {
            BigRational::from(a2.abs())
        };
        return (m, BigRational::zero(), BigInt::zero());
    }
    // Real roots (-a1 +/- sqrt(disc)) / (2 a2): test each against the unit
    // circle exactly.
    let r_plus_gt_1 = root_outside_unit(a0, a1, a2, true);
    let r_minus_gt_1 = root_outside_unit(a0, a1, a2, false);
    match (r_minus_gt_1, r_plus_gt_1) {
        (false, false) => (BigRational::from(a2.abs()), BigRational::zero(), BigInt::zero()),
        (true, true) => (BigRational::from(a0.abs()), BigRational::zero(), BigInt::zero()),
        (outside_minus, _) => {
            // Exactly one root outside: M = |a2 r| = |(-a1 +/- sqrt(disc))/2|.
            let sign = if outside_minus { -1 } else { 1 };
            let u = BigRational::from(-a1.clone()) / &two;
            let mut v = BigRational::from(BigInt::from(sign)) / &two;
            let mut d = disc;
            // Collapse square discriminants so the value stays rational.
            let mut u = u;
            if let Some(s) = arith::exact_sqrt_int(&d) {
                u += &v * BigRational::from(s);
                v = BigRational::zero();
                d = BigInt::zero();
            }
            // Normalize to a nonnegative value: flip the sign pair if needed.
            if arith::sign_quadratic(&u, &v, &d) < 0 {
                (-u, -v, d)
            } else {
                (u, v, d)
            }
        }
    }
}

/// Does the chosen root (-a1 + sign sqrt(disc)) / (2 a2) lie strictly
/// outside the closed unit disk? Exact, for positive discriminant.
fn root_outside_unit(a0: &BigInt, a1: &BigInt, a2: &BigInt, plus: bool) -> bool {
    let disc = a1 * a1 - BigInt::from(4) * a2 * a0;
    let sign = BigRational::from(BigInt::from(if plus { 1 } else { -1 }));
    let u = BigRational::from(-a1.clone());
    // root - 1 > 0 <=> u + sign sqrt(disc) - 2 a2 > 0 (times sign of a2)...
    // Work with t = 2 a2 root = u + sign sqrt(disc); |root| > 1 <=> |t| > |2 a2|.
    let two_a2 = BigRational::from(BigInt::from(2) * a2);
    // |t| > |2a2| <=> t - 2a2 and t + 2a2 share the sign of t.
    let t_sign = arith::sign_quadratic(&u, &sign, &disc);
    if t_sign == 0 {
        return false;
    }
    let upper = arith::sign_quadratic(&(&u - &two_a2), &sign, &disc);
    let lower = arith::sign_quadratic(&(&u + &two_a2), &sign, &disc);
    upper == t_sign && lower == t_sign
}

/// Compare two exact measures u1 + v1 sqrt(d1) vs u2 + v2 sqrt(d2).
fn cmp_measures(
    m1: &(BigRational, BigRational, BigInt),
    m2: &(BigRational, BigRational, BigInt),
) -> Ordering {
    let s = arith::sign_biquadratic(&(&m1.0 - &m2.0), &m1.1, &m1.2, &(-m2.1.clone()), &m2.2);
    match s {
        1 => Ordering::Greater,
        -1 => Ordering::Less,
        _ => Ordering::Equal,
    }
}

/// M(f) <= bound, exactly.
fn mahler_le(measure: &(BigRational, BigRational, BigInt), bound: &BigRational) -> bool {
    let diff = &measure.0 - bound;
    arith::sign_quadratic(&diff, &measure.1, &measure.2) <= 0
}

/// All degree-2 points of absolute height at most X: minimal polynomials are
/// primitive integer quadratics with positive leading coefficient,
/// irreducible, and M(f) <= X^2 (exact test); both roots are emitted.
fn enumerate_degree_two(budget: &EnumerationBudget) -> Result<Vec<EnumeratedPoint>> {
    let bound = &budget.height_cap * &budget.height_cap;
    let b_floor = bound.to_integer().to_i64().ok_or(Error::CapTooLarge)?;
    // The candidate box has ~8 X^6 entries; refuse hopeless sweeps upfront.
    let box_size = (b_floor as u128)
        .saturating_mul(4 * b_floor as u128 + 1)
        .saturating_mul(2 * b_floor as u128 + 1);
    if box_size > 200_000_000 {
        return Err(Error::BudgetExceeded);
    }
    if b_floor < 1 {
        return Err(Error::BadRange);
    }
    // Coefficient box from |a_i| <= C(2, i) M(f).
    let mut polys: Vec<([BigInt; 3], (BigRational, BigRational, BigInt))> = Vec::new();
    for a2 in 1..=b_floor {
        for a1 in -(2 * b_floor)..=(2 * b_floor) {
            for a0 in -b_floor..=b_floor {
                let g = a2.gcd(&a1).gcd(&a0);
                if g != 1 {
                    continue;
                }
                let (a0b, a1b, a2b) = (BigInt::from(a0), BigInt::from(a1), BigInt::from(a2));
                let disc = &a1b * &a1b - BigInt::from(4) * &a2b * &a0b;
                if arith::exact_sqrt_int(&disc).is_some() {
                    continue; // reducible (includes disc = 0)
                }
                let measure = quadratic_mahler_exact(&a0b, &a1b, &a2b);
                if !mahler_le(&measure, &bound) {
                    continue;
                }
                polys.push(([a0b, a1b, a2b], measure));
                if 2 * polys.len() as u64 > budget.max_points {
                    return Err(Error::BudgetExceeded);
                }
            }
        }
    }
    polys.sort_by(|x, y| {
        cmp_measures(&x.1, &y.1).then_with(|| (&x.0[2], &x.0[1], &x.0[0]).cmp(&(&y.0[2], &y.0[1], &y.0[0])))
    });
    let mut out = Vec::with_capacity(2 * polys.len());
    for (coeffs, _) in polys {
        let rats: Vec<BigRational> = coeffs.iter().map(|c| BigRational::from(c.clone())).collect();
        for idx in 0..2u8 {
            out.push(EnumeratedPoint::Quadratic(AlgebraicNumber::from_min_poly(
                &rats, idx,
            )?));
        }
    }
    Ok(out)
}

/// Enumerate all points of the requested degree and height at most X, in a
/// deterministic canonical order.
pub fn enumerate_points(budget: &EnumerationBudget) -> Result<Vec<EnumeratedPoint>> {
    match budget.degree {
        1 => enumerate_degree_one(budget),
        2 => enumerate_degree_two(budget),
        _ => Err(Error::UnsupportedDegree),
    }
}

/// Count report: the exact count, the density band at T = log X, and the
/// ratio against the main term b_{k,r} = r a_{k,r} T^(m r (r+1)).
#[derive(Debug, Clone, Serialize)]
pub struct CountReport {
    pub count: u64,
    pub lower: f64,
    pub upper: f64,
    pub ratio: f64,
    pub t: f64,
    pub bkr: f64,
}

pub fn count_points(budget: &EnumerationBudget, c5: f64, c6: f64) -> Result<CountReport> {
    let points = enumerate_points(budget)?;
    let count = points.len() as u64;
    let t = arith::rat_ln_abs(&budget.height_cap).max(0.0);
    let inv = field_invariants(&NumberField::rationals())?;
    let r = budget.degree;
    let (lower, upper) = counting_band(&inv, r, t, c5, c6)?;
    let akr = schanuel_constant(&inv, r)?;
    let exp = (inv.degree * r * (r + 1)) as i32;
    let bkr = r as f64 * akr * t.powi(exp);
    Ok(CountReport {
        count,
        lower,
        upper,
        ratio: count as f64 / bkr,
        t,
        bkr,
    })
}

/// Search box: polynomials of degree r over Q with coefficients drawn from
/// the rationals with numerator and denominator bounded by coeff_bound,
/// tested for s-powerful values along the prefix.
#[derive(Debug, Clone)]
pub struct SearchBox {
    pub r: u32,
    pub s: u32,
    pub prefix: SequencePrefix,
    pub coeff_bound: u32,
    pub max_candidates: u64,
}

impl SearchBox {
    pub fn new(
        r: u32,
        s: u32,
        prefix: SequencePrefix,
        coeff_bound: u32,
        max_candidates: u64,
    ) -> Result<Self> {
        if s < 2 || s > r {
            return Err(Error::BadRange);
        }
        if !prefix.field().is_rationals() {
            return Err(Error::UnsupportedField);
        }
        Ok(SearchBox {
            r,
            s,
            prefix,
            coeff_bound,
            max_candidates,
        })
    }
}

fn coefficient_values(bound: u32) -> Vec<BigRational> {
    let mut vals = vec![BigRational::zero()];
    let b = bound as i64;
    for den in 1..=b {
        for num in 1..=b {
            if num.gcd(&den) != 1 {
                continue;
            }
            vals.push(BigRational::new(BigInt::from(num), BigInt::from(den)));
            vals.push(BigRational::new(BigInt::from(-num), BigInt::from(den)));
        }
    }
    vals.sort();
    vals
}

/// Exhaustive search over the coefficient box for degree-r polynomials with
/// every irreducible multiplicity below s and every prefix value a nonzero
/// s-powerful rational. Results are deduplicated by the canonical
/// representative modulo s-th-power scalars, reported in canonical order,
/// and re-verified in a second pass.
pub fn search_polynomials(box_: &SearchBox) -> Result<Vec<Polynomial>> {
    let field = NumberField::rationals();
    let budget = Budget::default();
    let values = coefficient_values(box_.coeff_bound);
    let nonzero: Vec<&BigRational> = values.iter().filter(|v| !v.is_zero()).collect();
    let r = box_.r as usize;
    let total = (nonzero.len() as u128) * (values.len() as u128).pow(r as u32);
    if total > box_.max_candidates as u128 {
        return Err(Error::BoxTooLarge);
    }
    let prefix_terms: Vec<FieldElement> = box_.prefix.terms().to_vec();
    let mut found: BTreeMap<Vec<FieldElement>, Polynomial> = BTreeMap::new();
    // Odometer over the lower coefficients, outer loop over the leading one.
    let mut idx = vec![0usize; r];
    for lead in &nonzero {
        loop {
            let mut coeffs: Vec<BigRational> =
                idx.iter().map(|&i| values[i].clone()).collect();
            coeffs.push((*lead).clone());
            let f = Polynomial::from_rationals(field, &coeffs);
            if candidate_passes(&f, box_.s, &prefix_terms, &budget)? {
                let canon = canonical_representative(&f, box_.s, &budget)?;
                found.entry(canon.coeffs().to_vec()).or_insert(canon);
            }
            // Advance the odometer.
            let mut k = 0;
            loop {
                if k == r {
                    break;
                }
                idx[k] += 1;
                if idx[k] < values.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == r {
                break;
            }
        }
    }
    // Second evaluation pass over the canonical representatives.
    let mut out = Vec::with_capacity(found.len());
    for (_, f) in found {
        if candidate_passes(&f, box_.s, &prefix_terms, &budget)? {
            out.push(f);
        }
    }
    out.sort_by(|a, b| a.cmp_canonical(b));
    Ok(out)
}

/// The search predicate: exact degree, all multiplicities below s, and every
/// prefix value nonzero and s-powerful.
pub fn candidate_passes(
    f: &Polynomial,
    s: u32,
    prefix_terms: &[FieldElement],
    budget: &Budget,
) -> Result<bool> {
    if f.is_zero() || f.degree() < 1 {
        return Ok(false);
    }
    let field = f.field();
    for b in prefix_terms {
        let value = f.eval(b);
        if value.is_zero() {
            return Ok(false);
        }
        let (ok, _) = is_powerful_element(field, &value, s, budget)?;
        if !ok {
            return Ok(false);
        }
    }
    if !multiplicities_below(f, s)? {
        return Ok(false);
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn budget(x: i64, degree: u32) -> EnumerationBudget {
        EnumerationBudget::new(BigRational::from(BigInt::from(x)), degree, 1_000_000).unwrap()
    }

    #[test]
    fn degree_one_counts() {
        let pts = enumerate_points(&budget(1, 1)).unwrap();
        assert_eq!(pts.len(), 4);
        assert!(pts.contains(&EnumeratedPoint::Infinity));
        assert!(pts.contains(&EnumeratedPoint::Rational(rat(0, 1))));
        assert!(pts.contains(&EnumeratedPoint::Rational(rat(1, 1))));
        assert!(pts.contains(&EnumeratedPoint::Rational(rat(-1, 1))));
        let pts2 = enumerate_points(&budget(2, 1)).unwrap();
        assert_eq!(pts2.len(), 8);
        // Closed under negation and inversion.
        for p in &pts2 {
            if let EnumeratedPoint::Rational(q) = p {
                assert!(pts2.contains(&EnumeratedPoint::Rational(-q.clone())));
                if !q.is_zero() {
                    assert!(pts2.contains(&EnumeratedPoint::Rational(q.recip())));
                }
            }
        }
    }

    #[test]
    fn no_duplicates_degree_one() {
        let pts = enumerate_points(&budget(10, 1)).unwrap();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                assert!(pts[i] != pts[j]);
            }
        }
    }

    #[test]
    fn degree_two_height_one() {
        // Height 1 quadratics are roots of unity: the three cyclotomic
        // quadratics, two roots each.
        let pts = enumerate_points(&budget(1, 2)).unwrap();
        assert_eq!(pts.len(), 6);
        let polys: Vec<String> = pts
            .iter()
            .map(|p| match p {
                EnumeratedPoint::Quadratic(a) => a.min_poly().to_string(),
                _ => unreachable!(),
            })
            .collect();
        assert!(polys.contains(&"1,1,1".to_string())); // x^2+x+1
        assert!(polys.contains(&"1,0,1".to_string())); // x^2+1
        assert!(polys.contains(&"1,-1,1".to_string())); // x^2-x+1
    }

    #[test]
    fn degree_two_closed_under_conjugation() {
        let pts = enumerate_points(&budget(2, 2)).unwrap();
        for p in &pts {
            if let EnumeratedPoint::Quadratic(a) = p {
                let conj = a.conjugate();
                assert!(pts.iter().any(|q| match q {
                    EnumeratedPoint::Quadratic(b) => *b == conj,
                    _ => false,
                }));
            }
        }
    }

    #[test]
    fn exact_quadratic_measures() {
        // x^2 + x + 4: complex roots, M = 4.
        let m = quadratic_mahler_exact(&BigInt::from(4), &BigInt::from(1), &BigInt::from(1));
        assert_eq!(m.0, rat(4, 1));
        assert!(m.1.is_zero());
        // x^2 - 3x + 1: roots (3 +/- sqrt 5)/2, one outside: M = (3+sqrt5)/2.
        let m = quadratic_mahler_exact(&BigInt::from(1), &BigInt::from(-3), &BigInt::from(1));
        assert_eq!(m.0, rat(3, 2));
        assert_eq!(m.1, rat(1, 2));
        assert_eq!(m.2, BigInt::from(5));
        // x^2 - 3x + 2 = (x-1)(x-2): both roots outside the open disk... 1 is
        // on the circle: M = |a0| = 2.
        let m = quadratic_mahler_exact(&BigInt::from(2), &BigInt::from(-3), &BigInt::from(1));
        assert_eq!(m.0, rat(2, 1));
        assert!(m.1.is_zero());
    }

    #[test]
    fn count_report_monotone() {
        let c2 = count_points(&budget(2, 1), 0.0, 0.0).unwrap();
        let c5 = count_points(&budget(5, 1), 0.0, 0.0).unwrap();
        let c10 = count_points(&budget(10, 1), 0.0, 0.0).unwrap();
        assert!(c2.count <= c5.count && c5.count <= c10.count);
        assert!(c5.ratio.is_finite() && c5.ratio > 0.0);
        assert!(c10.ratio.is_finite() && c10.ratio > 0.0);
    }

    #[test]
    fn search_finds_powerful_values() {
        let q = NumberField::rationals();
        let prefix = SequencePrefix::new(
            q,
            vec![FieldElement::from_int(q, 1), FieldElement::from_int(q, 2)],
        )
        .unwrap();
        let box_ = SearchBox::new(2, 2, prefix, 5, 100_000_000).unwrap();
        let results = search_polynomials(&box_).unwrap();
        // 5x^2 + 3x + 1 takes the values 9 and 27.
        let target = Polynomial::from_ints(q, &[1, 3, 5]);
        let canon = canonical_representative(&target, 2, &Budget::default()).unwrap();
        assert!(
            results.iter().any(|f| *f == canon),
            "expected the 5x^2+3x+1 class among {} results",
            results.len()
        );
        // Every result re-verifies.
        let budget = Budget::default();
        for f in &results {
            assert!(candidate_passes(f, 2, box_.prefix.terms(), &budget).unwrap());
        }
    }

    #[test]
    fn search_empty_box() {
        let q = NumberField::rationals();
        let prefix = SequencePrefix::new(q, vec![FieldElement::from_int(q, 1)]).unwrap();
        let box_ = SearchBox::new(2, 2, prefix, 0, 1000).unwrap();
        let results = search_polynomials(&box_).unwrap();
        assert!(results.is_empty());
    }

    #[test]
    fn negative_control_rejected() {
        // Planting a factor of multiplicity s must fail the predicate.
        let q = NumberField::rationals();
        let budget = Budget::default();
        let good = Polynomial::from_ints(q, &[1, 3, 5]);
        let planted = good.mul(&Polynomial::from_ints(q, &[-7, 1]).pow(2));
        let terms = vec![FieldElement::from_int(q, 1), FieldElement::from_int(q, 2)];
        assert!(candidate_passes(&good, 2, &terms, &budget).unwrap());
        assert!(!candidate_passes(&planted, 2, &terms, &budget).unwrap());
    }
}
