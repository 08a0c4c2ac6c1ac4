//! Derived sequences of a prefix (consecutive differences, ratios and
//! reciprocal differences), period detection over the prefix, the closed
//! forms that a periodic derived sequence forces on the original terms, and
//! the three polynomial transforms built from a periodic prefix.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};
use crate::poly::Polynomial;

/// A finite prefix b_1, ..., b_n of pairwise distinct elements.
#[derive(Debug, Clone, PartialEq)]
pub struct SequencePrefix {
    field: NumberField,
    terms: Vec<FieldElement>,
}

impl SequencePrefix {
    pub fn new(field: NumberField, terms: Vec<FieldElement>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::PrefixTooShort);
        }
        for t in &terms {
            if t.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        for i in 0..terms.len() {
            for j in i + 1..terms.len() {
                if terms[i] == terms[j] {
                    return Err(Error::DuplicateSequenceTerms);
                }
            }
        }
        Ok(SequencePrefix { field, terms })
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> &[FieldElement] {
        &self.terms
    }

    /// 1-based term access.
    pub fn term(&self, i: usize) -> &FieldElement {
        &self.terms[i - 1]
    }
}

/// Which derived sequence to form from consecutive terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivedKind {
    /// b_{i+1} - b_i
    Differences,
    /// b_i / b_{i+1}
    Ratios,
    /// 1/b_{i+1} - 1/b_i
    ReciprocalDifferences,
}

impl fmt::Display for DerivedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DerivedKind::Differences => write!(f, "differences"),
            DerivedKind::Ratios => write!(f, "ratios"),
            DerivedKind::ReciprocalDifferences => write!(f, "reciprocal-differences"),
        }
    }
}

/// The derived sequence of the given kind, length n - 1, exact. Ratios and
/// reciprocal differences require nonzero terms.
pub fn derived_sequence(prefix: &SequencePrefix, kind: DerivedKind) -> Result<Vec<FieldElement>> {
    if prefix.len() < 2 {
        return Err(Error::PrefixTooShort);
    }
    if kind != DerivedKind::Differences && prefix.terms.iter().any(|t| t.is_zero()) {
        return Err(Error::ZeroTerm);
    }
    let mut out = Vec::with_capacity(prefix.len() - 1);
    for w in prefix.terms.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let v = match kind {
            DerivedKind::Differences => b.sub(a),
            DerivedKind::Ratios => a.div(b)?,
            DerivedKind::ReciprocalDifferences => b.inv()?.sub(&a.inv()?),
        };
        out.push(v);
    }
    Ok(out)
}

/// All three derived sequences at once (terms must be nonzero).
pub fn derive_sequences(
    prefix: &SequencePrefix,
) -> Result<(Vec<FieldElement>, Vec<FieldElement>, Vec<FieldElement>)> {
    Ok((
        derived_sequence(prefix, DerivedKind::Differences)?,
        derived_sequence(prefix, DerivedKind::Ratios)?,
        derived_sequence(prefix, DerivedKind::ReciprocalDifferences)?,
    ))
}

/// Is the sequence periodic with period m over its prefix?
pub fn is_periodic(seq: &[FieldElement], m: usize) -> bool {
    if m == 0 || m >= seq.len() {
        return false;
    }
    (0..seq.len() - m).all(|i| seq[i] == seq[i + m])
}

/// Smallest m <= m_max such that seq[i + m] = seq[i] for all indices in
/// range; None when no period that actually constrains the prefix exists.
pub fn detect_period(seq: &[FieldElement], m_max: usize) -> Option<usize> {
    (1..=m_max.min(seq.len().saturating_sub(1))).find(|&m| is_periodic(seq, m))
}

/// Per-index verification of the closed forms forced by a periodic derived
/// sequence: writing l = q m + p with 1 <= p <= m,
/// differences:            b_l = b_p + q (b_{m+1} - b_1)
/// ratios:                 b_{l+1} = b_{p+1} (b_{m+1}/b_1)^q
/// reciprocal differences: 1/b_l = 1/b_p + q (1/b_{m+1} - 1/b_1)
pub fn extension_lemma_check(
    prefix: &SequencePrefix,
    m: usize,
    kind: DerivedKind,
) -> Result<Vec<(usize, bool)>> {
    let n = prefix.len();
    if n < m + 1 {
        return Err(Error::PrefixTooShort);
    }
    let derived = derived_sequence(prefix, kind)?;
    if !is_periodic(&derived, m) {
        return Err(Error::NotPeriodic);
    }
    let mut results = Vec::new();
    match kind {
        DerivedKind::Differences => {
            let step = prefix.term(m + 1).sub(prefix.term(1));
            for l in 1..=n {
                let p = (l - 1) % m + 1;
                let q = (l - p) / m;
                let expected = prefix
                    .term(p)
                    .add(&step.mul(&FieldElement::from_int(prefix.field, q as i64)));
                results.push((l, expected == *prefix.term(l)));
            }
        }
        DerivedKind::Ratios => {
            let ratio = prefix.term(m + 1).div(prefix.term(1))?;
            for l in 1..n {
                let p = (l - 1) % m + 1;
                let q = (l - p) / m;
                let expected = prefix.term(p + 1).mul(&ratio.pow(q as i64)?);
                results.push((l, expected == *prefix.term(l + 1)));
            }
        }
        DerivedKind::ReciprocalDifferences => {
            let step = prefix.term(m + 1).inv()?.sub(&prefix.term(1).inv()?);
            for l in 1..=n {
                let p = (l - 1) % m + 1;
                let q = (l - p) / m;
                let expected = prefix
                    .term(p)
                    .inv()?
                    .add(&step.mul(&FieldElement::from_int(prefix.field, q as i64)));
                results.push((l, expected == prefix.term(l).inv()?));
            }
        }
    }
    Ok(results)
}

/// f(x + j (b_{m+1} - b_1)), exact Taylor shift.
pub fn shift_transform(
    f: &Polynomial,
    j: u64,
    prefix: &SequencePrefix,
    m: usize,
) -> Result<Polynomial> {
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    if prefix.len() < m + 1 {
        return Err(Error::PrefixTooShort);
    }
    if f.field() != prefix.field {
        return Err(Error::FieldMismatch);
    }
    let step = prefix.term(m + 1).sub(prefix.term(1));
    let c = step.mul(&FieldElement::from_int(prefix.field, j as i64));
    Ok(f.shift(&c))
}

/// f((b_{m+1}/b_1)^(j-1) x), exact coefficient scaling; j >= 1.
pub fn scale_transform(
    f: &Polynomial,
    j: u64,
    prefix: &SequencePrefix,
    m: usize,
) -> Result<Polynomial> {
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    if j < 1 {
        return Err(Error::BadRange);
    }
    if prefix.len() < m + 1 {
        return Err(Error::PrefixTooShort);
    }
    if f.field() != prefix.field {
        return Err(Error::FieldMismatch);
    }
    if prefix.term(1).is_zero() || prefix.term(m + 1).is_zero() {
        return Err(Error::ZeroTerm);
    }
    let ratio = prefix.term(m + 1).div(prefix.term(1))?;
    Ok(f.scale_input(&ratio.pow(j as i64 - 1)?))
}

/// A quotient of polynomials, kept reduced with a monic denominator.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RationalFunction {
    pub numerator: Polynomial,
    pub denominator: Polynomial,
    pub reduced: bool,
}

impl RationalFunction {
    pub fn new(numerator: Polynomial, denominator: Polynomial) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let g = numerator.gcd(&denominator)?;
        let (num, den) = if g.degree() > 0 {
            (numerator.div_exact(&g)?, denominator.div_exact(&g)?)
        } else {
            (numerator, denominator)
        };
        let lead_inv = den.leading().inv()?;
        Ok(RationalFunction {
            numerator: num.mul_scalar(&lead_inv),
            denominator: den.mul_scalar(&lead_inv),
            reduced: true,
        })
    }

    pub fn from_polynomial(p: Polynomial) -> Self {
        let field = p.field();
        RationalFunction {
            numerator: p,
            denominator: Polynomial::from_ints(field, &[1]),
            reduced: true,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.denominator.degree() == 0
    }

    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        let den = self.denominator.eval(x);
        if den.is_zero() {
            return Err(Error::ZeroTerm);
        }
        self.numerator.eval(x).div(&den)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})/({})", self.numerator, self.denominator)
    }
}

/// The reciprocal-shift transform
/// f_j(x) = (1/x + c)^r f(1/(1/x + c)) with c = j (1/b_{m+1} - 1/b_1),
/// expanded symbolically as (sum_i a_i x^i (1 + c x)^(r-i)) / x^r and
/// reduced. j = 0 is the identity member of the family. Returns the reduced
/// rational function and whether it is a polynomial.
pub fn inversion_transform(
    f: &Polynomial,
    j: u64,
    prefix: &SequencePrefix,
    m: usize,
    r: usize,
) -> Result<(RationalFunction, bool)> {
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    if f.degree() != r {
        return Err(Error::DegreeMismatch);
    }
    if prefix.len() < m + 1 {
        return Err(Error::PrefixTooShort);
    }
    if f.field() != prefix.field {
        return Err(Error::FieldMismatch);
    }
    if prefix.term(1).is_zero() || prefix.term(m + 1).is_zero() {
        return Err(Error::ZeroTerm);
    }
    if j == 0 {
        return Ok((RationalFunction::from_polynomial(f.clone()), true));
    }
    let field = prefix.field;
    let step = prefix.term(m + 1).inv()?.sub(&prefix.term(1).inv()?);
    let c = step.mul(&FieldElement::from_int(field, j as i64));
    // numerator = sum_i a_i x^i (1 + c x)^(r - i)
    let one_plus_cx = Polynomial::new(field, vec![FieldElement::one(field), c]);
    let mut numerator = Polynomial::zero(field);
    for (i, a) in f.coeffs().iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        let mut term = one_plus_cx.pow((r - i) as u32).mul_scalar(a);
        // times x^i
        let mut coeffs = vec![FieldElement::zero(field); i];
        coeffs.extend_from_slice(term.coeffs());
        term = Polynomial::new(field, coeffs);
        numerator = numerator.add(&term);
    }
    let mut den_coeffs = vec![FieldElement::zero(field); r];
    den_coeffs.push(FieldElement::one(field));
    let denominator = Polynomial::new(field, den_coeffs);
    let rf = RationalFunction::new(numerator, denominator)?;
    let is_poly = rf.is_polynomial();
    Ok((rf, is_poly))
}

/// Verify f_j(b_i) against f(b_{j m + i}) for every index the prefix
/// supports. For the ratio kind the check scales the input by
/// (b_{m+1}/b_1)^j (the power that matches the index shift by j m); for the
/// reciprocal kind the transform value carries the factor b_{jm+i}^(-r), so
/// the check multiplies it back unless j = 0.
pub fn transform_value_identity_check(
    f: &Polynomial,
    j: u64,
    prefix: &SequencePrefix,
    m: usize,
    kind: DerivedKind,
) -> Result<Vec<(usize, bool)>> {
    let n = prefix.len();
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let jm = (j as usize) * m;
    if n < m + 1 || n < jm + 1 {
        return Err(Error::PrefixTooShort);
    }
    let derived = derived_sequence(prefix, kind)?;
    if !is_periodic(&derived, m) {
        return Err(Error::NotPeriodic);
    }
    let mut results = Vec::new();
    match kind {
        DerivedKind::Differences => {
            let g = shift_transform(f, j, prefix, m)?;
            for i in 1..=n - jm {
                let lhs = g.eval(prefix.term(i));
                let rhs = f.eval(prefix.term(jm + i));
                results.push((i, lhs == rhs));
            }
        }
        DerivedKind::Ratios => {
            let ratio = prefix.term(m + 1).div(prefix.term(1))?;
            let g = f.scale_input(&ratio.pow(j as i64)?);
            for i in 1..=n - jm {
                let lhs = g.eval(prefix.term(i));
                let rhs = f.eval(prefix.term(jm + i));
                results.push((i, lhs == rhs));
            }
        }
        DerivedKind::ReciprocalDifferences => {
            let r = f.degree();
            let (rf, _) = inversion_transform(f, j, prefix, m, r)?;
            for i in 1..=n - jm {
                let value = rf.eval(prefix.term(i))?;
                let rhs = f.eval(prefix.term(jm + i));
                let ok = if j == 0 {
                    value == rhs
                } else {
                    let comp = prefix.term(jm + i).pow(r as i64)?;
                    value.mul(&comp) == rhs
                };
                results.push((i, ok));
            }
        }
    }
    Ok(results)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn prefix_of(vals: &[(i64, i64)]) -> SequencePrefix {
        SequencePrefix::new(
            q(),
            vals.iter()
                .map(|&(n, d)| FieldElement::from_rational(q(), rat(n, d)))
                .collect(),
        )
        .unwrap()
    }

    fn ints(vals: &[i64]) -> SequencePrefix {
        SequencePrefix::new(
            q(),
            vals.iter().map(|&n| FieldElement::from_int(q(), n)).collect(),
        )
        .unwrap()
    }

    #[test]
    fn derive_examples() {
        let b = ints(&[1, 2, 3, 4]);
        let c = derived_sequence(&b, DerivedKind::Differences).unwrap();
        assert!(c.iter().all(|x| *x == FieldElement::one(q())));

        let b = ints(&[1, 2, 4, 8]);
        let d = derived_sequence(&b, DerivedKind::Ratios).unwrap();
        assert!(d
            .iter()
            .all(|x| x.as_rational() == Some(&rat(1, 2))));

        let b = prefix_of(&[(1, 1), (1, 2), (1, 3)]);
        let e = derived_sequence(&b, DerivedKind::ReciprocalDifferences).unwrap();
        assert!(e.iter().all(|x| *x == FieldElement::one(q())));

        let zero = ints(&[0, 1]);
        assert_eq!(
            derived_sequence(&zero, DerivedKind::Ratios).err(),
            Some(Error::ZeroTerm)
        );
    }

    #[test]
    fn periods() {
        // detect_period runs on raw slices (derived sequences may repeat).
        let seq = |vals: &[i64]| -> Vec<FieldElement> {
            vals.iter().map(|&n| FieldElement::from_int(q(), n)).collect()
        };
        assert_eq!(detect_period(&seq(&[1, 1, 1, 1]), 3), Some(1));
        assert_eq!(detect_period(&seq(&[1, 2, 1, 2, 1]), 4), Some(2));
        assert_eq!(detect_period(&seq(&[1, 2, 3]), 2), None);
    }

    #[test]
    fn extension_checks() {
        // Arithmetic progression: differences have period 1.
        let b = ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let res = extension_lemma_check(&b, 1, DerivedKind::Differences).unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));

        // Geometric progression: ratios have period 1.
        let g = ints(&[1, 2, 4, 8, 16, 32, 64, 128, 256, 512]);
        let res = extension_lemma_check(&g, 1, DerivedKind::Ratios).unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));

        // Harmonic progression: reciprocal differences have period 1.
        let h = prefix_of(&[
            (1, 1),
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 5),
            (1, 6),
            (1, 7),
            (1, 8),
            (1, 9),
            (1, 10),
        ]);
        let res = extension_lemma_check(&h, 1, DerivedKind::ReciprocalDifferences).unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));

        // Non-periodic input is rejected.
        let free = ints(&[1, 2, 4, 5]);
        assert_eq!(
            extension_lemma_check(&free, 1, DerivedKind::Differences).err(),
            Some(Error::NotPeriodic)
        );
    }

    #[test]
    fn period_two_extension() {
        // Increments 1, 2, 1, 2, ...: differences periodic with period 2.
        let b = ints(&[0, 1, 3, 4, 6, 7, 9, 10]);
        let res = extension_lemma_check(&b, 2, DerivedKind::Differences).unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));
    }

    #[test]
    fn shift_examples() {
        let f = Polynomial::from_ints(q(), &[0, 0, 1]);
        let b = ints(&[1, 2, 3]);
        assert_eq!(
            shift_transform(&f, 1, &b, 1).unwrap(),
            Polynomial::from_ints(q(), &[1, 2, 1])
        );
        assert_eq!(shift_transform(&f, 0, &b, 1).unwrap(), f);

        let g = Polynomial::from_ints(q(), &[1, 0, 1]);
        let odd = ints(&[1, 3, 5, 7]);
        assert_eq!(
            shift_transform(&g, 2, &odd, 1).unwrap(),
            Polynomial::from_ints(q(), &[17, 8, 1])
        );
    }

    #[test]
    fn scale_examples() {
        let f = Polynomial::from_ints(q(), &[0, 1, 1]);
        let b = ints(&[1, 2, 4, 8]);
        assert_eq!(
            scale_transform(&f, 2, &b, 1).unwrap(),
            Polynomial::from_ints(q(), &[0, 2, 4])
        );
        assert_eq!(scale_transform(&f, 1, &b, 1).unwrap(), f);
        let zero_start = ints(&[0, 1, 2]);
        assert_eq!(
            scale_transform(&f, 2, &zero_start, 1).err(),
            Some(Error::ZeroTerm)
        );
    }

    #[test]
    fn inversion_examples() {
        let b = ints(&[1, 2, 4, 8]);
        // f = x^2 (a single top-degree monomial) collapses to the constant 1.
        let f = Polynomial::from_ints(q(), &[0, 0, 1]);
        let (rf, is_poly) = inversion_transform(&f, 1, &b, 1, 2).unwrap();
        assert!(is_poly);
        assert_eq!(rf.numerator, Polynomial::from_ints(q(), &[1]));

        // f = 1 + x with c = 1 gives (1 + 2x)/x.
        let ones = prefix_of(&[(1, 1), (1, 2)]);
        // 1/b_2 - 1/b_1 = 2 - 1 = 1.
        let g = Polynomial::from_ints(q(), &[1, 1]);
        let (rf, is_poly) = inversion_transform(&g, 1, &ones, 1, 1).unwrap();
        assert!(!is_poly);
        assert_eq!(rf.numerator, Polynomial::from_ints(q(), &[1, 2]));
        assert_eq!(rf.denominator, Polynomial::from_ints(q(), &[0, 1]));

        // j = 0 is the identity.
        let (rf, is_poly) = inversion_transform(&g, 0, &ones, 1, 1).unwrap();
        assert!(is_poly);
        assert_eq!(rf.numerator, g);

        assert_eq!(
            inversion_transform(&g, 1, &ones, 1, 2).err(),
            Some(Error::DegreeMismatch)
        );
    }

    #[test]
    fn value_identities() {
        // Shifts along an arithmetic progression.
        let b = ints(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let f = Polynomial::from_ints(q(), &[3, 0, 1]);
        let res = transform_value_identity_check(&f, 2, &b, 1, DerivedKind::Differences).unwrap();
        assert_eq!(res.len(), 8);
        assert!(res.iter().all(|(_, ok)| *ok));

        // Scalings along a geometric progression.
        let g = ints(&[1, 2, 4, 8, 16, 32]);
        let f2 = Polynomial::from_ints(q(), &[0, 0, 1]);
        let res = transform_value_identity_check(&f2, 1, &g, 1, DerivedKind::Ratios).unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));

        // Reciprocal differences along a harmonic progression, including the
        // compensating power of the target term.
        let h = prefix_of(&[(1, 1), (1, 2), (1, 3), (1, 4), (1, 5), (1, 6)]);
        let f3 = Polynomial::from_ints(q(), &[1, 2, 1]);
        let res =
            transform_value_identity_check(&f3, 2, &h, 1, DerivedKind::ReciprocalDifferences)
                .unwrap();
        assert!(res.iter().all(|(_, ok)| *ok));

        // j = 0 passes trivially for every kind (on a matching prefix).
        let arith = ints(&[1, 2, 3, 4]);
        let geom = ints(&[1, 2, 4, 8]);
        for (kind, prefix) in [
            (DerivedKind::Differences, &arith),
            (DerivedKind::Ratios, &geom),
            (DerivedKind::ReciprocalDifferences, &h),
        ] {
            let res = transform_value_identity_check(&f3, 0, prefix, 1, kind).unwrap();
            assert!(res.iter().all(|(_, ok)| *ok));
        }
    }

    #[test]
    fn shift_transform_composes() {
        let b = ints(&[5, 8, 11, 14]);
        let f = Polynomial::from_ints(q(), &[1, -1, 2]);
        let once = shift_transform(&f, 1, &b, 1).unwrap();
        let twice = shift_transform(&once, 1, &b, 1).unwrap();
        let direct = shift_transform(&f, 2, &b, 1).unwrap();
        assert_eq!(twice, direct);
    }
}
