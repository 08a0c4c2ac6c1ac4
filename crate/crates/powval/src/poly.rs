//! Dense univariate polynomials over a base field, with exact gcd,
//! resultants and discriminants, Taylor shifts and input scalings.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{FieldElement, NumberField};

/// Coefficients in ascending degree; no trailing zeros. The zero polynomial
/// has an empty coefficient list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: NumberField,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: NumberField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        for c in &coeffs {
            assert_eq!(c.field(), field, "coefficient from a different field");
        }
        Polynomial { field, coeffs }
    }

    pub fn zero(field: NumberField) -> Self {
        Polynomial {
            field,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: FieldElement) -> Self {
        let field = c.field();
        Polynomial::new(field, vec![c])
    }

    pub fn from_rationals(field: NumberField, coeffs: &[BigRational]) -> Self {
        Polynomial::new(
            field,
            coeffs
                .iter()
                .map(|q| FieldElement::from_rational(field, q.clone()))
                .collect(),
        )
    }

    pub fn from_ints(field: NumberField, coeffs: &[i64]) -> Self {
        Polynomial::new(
            field,
            coeffs
                .iter()
                .map(|&n| FieldElement::from_int(field, n))
                .collect(),
        )
    }

    pub fn from_bigints(field: NumberField, coeffs: &[BigInt]) -> Self {
        Polynomial::new(
            field,
            coeffs
                .iter()
                .map(|n| FieldElement::from_rational(field, BigRational::from(n.clone())))
                .collect(),
        )
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn leading(&self) -> FieldElement {
        self.coeffs
            .last()
            .cloned()
            .unwrap_or_else(|| FieldElement::zero(self.field))
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs
            .last()
            .is_some_and(|c| *c == FieldElement::one(self.field))
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).add(&other.coeff(i)));
        }
        Polynomial::new(self.field, out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i).sub(&other.coeff(i)));
        }
        Polynomial::new(self.field, out)
    }

    pub fn neg(&self) -> Self {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| c.neg()).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero(self.field);
        }
        let mut out =
            vec![FieldElement::zero(self.field); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Polynomial::new(self.field, out)
    }

    pub fn mul_scalar(&self, s: &FieldElement) -> Self {
        Polynomial::new(self.field, self.coeffs.iter().map(|c| c.mul(s)).collect())
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut acc = Polynomial::new(self.field, vec![FieldElement::one(self.field)]);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Euclidean division: (quotient, remainder) with deg r < deg divisor.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        if divisor.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut rem = self.coeffs.clone();
        let dq = divisor.degree();
        if self.is_zero() || self.degree() < dq {
            return Ok((Polynomial::zero(self.field), self.clone()));
        }
        let lead_inv = divisor.leading().inv()?;
        let mut quot = vec![FieldElement::zero(self.field); self.degree() - dq + 1];
        for i in (dq..rem.len()).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let factor = rem[i].mul(&lead_inv);
            quot[i - dq] = factor.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                let t = factor.mul(c);
                rem[i - dq + j] = rem[i - dq + j].sub(&t);
            }
        }
        Ok((
            Polynomial::new(self.field, quot),
            Polynomial::new(self.field, rem),
        ))
    }

    /// Exact quotient; panics in debug builds if the division is not exact.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor)?;
        debug_assert!(r.is_zero(), "division was not exact");
        Ok(q)
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b)?;
            a = b;
            b = r;
        }
        if a.is_zero() {
            return Ok(a);
        }
        let inv = a.leading().inv()?;
        Ok(a.mul_scalar(&inv))
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero(self.field);
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&FieldElement::from_int(self.field, i as i64)))
            .collect();
        Polynomial::new(self.field, out)
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> FieldElement {
        let mut acc = FieldElement::zero(self.field);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn eval_rational(&self, x: &BigRational) -> FieldElement {
        self.eval(&FieldElement::from_rational(self.field, x.clone()))
    }

    /// Taylor shift f(x + c), exact (in-place synthetic shift).
    pub fn shift(&self, c: &FieldElement) -> Self {
        if self.coeffs.len() <= 1 {
            return self.clone();
        }
        let n = self.coeffs.len();
        let mut work = self.coeffs.clone();
        for i in 0..n - 1 {
            for j in (i..n - 1).rev() {
                let t = work[j + 1].mul(c);
                work[j] = work[j].add(&t);
            }
        }
        Polynomial::new(self.field, work)
    }

    /// f(s * x), exact.
    pub fn scale_input(&self, s: &FieldElement) -> Self {
        let mut power = FieldElement::one(self.field);
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c.mul(&power));
            power = power.mul(s);
        }
        Polynomial::new(self.field, out)
    }

    pub fn make_monic(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let inv = self.leading().inv()?;
        Ok(self.mul_scalar(&inv))
    }

    /// Resultant of self and other over the coefficient field.
    pub fn resultant(&self, other: &Self) -> Result<FieldElement> {
        let field = self.field;
        if self.is_zero() || other.is_zero() {
            return Ok(FieldElement::zero(field));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        let mut acc = FieldElement::one(field);
        if a.degree() < b.degree() {
            if (a.degree() * b.degree()) % 2 == 1 {
                acc = acc.neg();
            }
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.is_constant() {
                // Res(a, c) = c^deg(a).
                let c = b.coeff(0);
                if c.is_zero() {
                    return Ok(FieldElement::zero(field));
                }
                return Ok(acc.mul(&c.pow(a.degree() as i64)?));
            }
            let (_, r) = a.div_rem(&b)?;
            let da = a.degree();
            let db = b.degree();
            let dr = if r.is_zero() { 0 } else { r.degree() };
            if r.is_zero() {
                return Ok(FieldElement::zero(field));
            }
            // Res(a,b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            acc = acc.mul(&b.leading().pow((da - dr) as i64)?);
            a = b;
            b = r;
        }
    }

    /// Discriminant via the resultant with the derivative:
    /// D(f) = (-1)^(d(d-1)/2) Res(f, f') / lc(f).
    pub fn discriminant(&self) -> Result<FieldElement> {
        if self.degree() < 2 {
            return Err(Error::DegreeTooSmall);
        }
        let d = self.degree();
        let res = self.resultant(&self.derivative())?;
        let mut disc = res.div(&self.leading())?;
        if (d * (d - 1) / 2) % 2 == 1 {
            disc = disc.neg();
        }
        Ok(disc)
    }

    /// Strip the factor x^v; returns (v, f / x^v).
    pub fn strip_zero_roots(&self) -> (usize, Self) {
        let v = self
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .unwrap_or(0);
        if v == 0 {
            return (0, self.clone());
        }
        (
            v,
            Polynomial::new(self.field, self.coeffs[v..].to_vec()),
        )
    }

    /// For rational-coefficient polynomials: the primitive integer form
    /// (content removed, positive leading coefficient) and the scalar c with
    /// self = c * primitive.
    pub fn primitive_integer_form(&self) -> Result<(Vec<BigInt>, BigRational)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut nums: Vec<BigInt> = Vec::with_capacity(self.coeffs.len());
        let mut den_lcm = BigInt::one();
        for c in &self.coeffs {
            let q = c.as_rational().ok_or(Error::UnsupportedField)?;
            den_lcm = den_lcm.lcm(q.denom());
        }
        for c in &self.coeffs {
            let q = c.as_rational().unwrap();
            nums.push(q.numer() * (&den_lcm / q.denom()));
        }
        let mut content = BigInt::zero();
        for n in &nums {
            content = content.gcd(n);
        }
        if nums.last().unwrap().is_negative() {
            content = -content;
        }
        let ints: Vec<BigInt> = nums.iter().map(|n| n / &content).collect();
        let scale = BigRational::new(content, den_lcm);
        Ok((ints, scale))
    }

    /// Irreducibility over Q for degrees at most 3: degree 1 is irreducible,
    /// degrees 2 and 3 are irreducible exactly when there is no rational
    /// root (checked exactly).
    pub fn irreducible_over_q(&self) -> Result<bool> {
        if !self.field.is_rationals() {
            return Err(Error::UnsupportedField);
        }
        let d = self.degree();
        if self.is_zero() || d == 0 {
            return Ok(false);
        }
        match d {
            1 => Ok(true),
            2 => {
                let a = self.coeff(2).as_rational().unwrap().clone();
                let b = self.coeff(1).as_rational().unwrap().clone();
                let c = self.coeff(0).as_rational().unwrap().clone();
                let disc = &b * &b - BigRational::from(BigInt::from(4)) * &a * &c;
                Ok(arith::exact_sqrt_rational(&disc).is_none())
            }
            3 => Ok(!self.has_rational_root()?),
            _ => Err(Error::UnsupportedDegree),
        }
    }

    /// Exact rational-root test via the rational root theorem on the
    /// primitive integer form.
    pub fn has_rational_root(&self) -> Result<bool> {
        let (ints, _) = self.primitive_integer_form()?;
        let a0 = ints.first().unwrap().clone();
        let ad = ints.last().unwrap().clone();
        if a0.is_zero() {
            return Ok(true);
        }
        let budget = crate::arith::Budget::default();
        let p_divs = divisors(&a0.abs(), &budget)?;
        let q_divs = divisors(&ad.abs(), &budget)?;
        let poly = self.clone();
        for p in &p_divs {
            for q in &q_divs {
                for sign in [1i64, -1] {
                    let cand = BigRational::new(p * BigInt::from(sign), q.clone());
                    if poly.eval_rational(&cand).is_zero() {
                        return Ok(true);
                    }
                }
            }
        }
        Ok(false)
    }

    /// Deterministic total order on coefficient vectors (degree first, then
    /// lexicographic from the constant term).
    pub fn cmp_canonical(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().zip(&other.coeffs) {
                    let c = a.cmp_lex(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
    }
}

fn divisors(n: &BigInt, budget: &crate::arith::Budget) -> Result<Vec<BigInt>> {
    let u = n.to_biguint().ok_or(Error::BadRange)?;
    let factors = crate::arith::factor_biguint(&u, budget)?;
    let mut divs = vec![BigInt::one()];
    for (p, e) in factors {
        let p = BigInt::from(p);
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut acc = d.clone();
            next.push(acc.clone());
            for _ in 0..e {
                acc = &acc * &p;
                next.push(acc.clone());
            }
        }
        divs = next;
    }
    Ok(divs)
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}
