//! s-powerful elements and the multiplicity structure of polynomials:
//! squarefree (Yun) decomposition, membership predicates, and the canonical
//! representative of a polynomial modulo s-th-power scalars.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use crate::arith::{self, Budget};
use crate::error::{Error, Result};
use crate::field::{factor_element, FieldElement, NumberField, PrimeIdeal};
use crate::poly::Polynomial;

/// The multiplicity profile of a polynomial: f = unit * prod parts[i]^i with
/// monic, squarefree, pairwise coprime parts.
#[derive(Debug, Clone, Serialize)]
pub struct MultiplicityProfile {
    pub unit: FieldElement,
    /// (squarefree monic factor, multiplicity), ascending multiplicity.
    pub parts: Vec<(Polynomial, u32)>,
    /// Largest multiplicity appearing in f.
    pub s_plus: u32,
    /// Product of the parts: the radical of f.
    pub radical: Polynomial,
    /// Degree of the radical.
    pub radical_degree: usize,
    /// Upper bound for the number of distinct irreducible factors.
    pub t_bound: usize,
}

impl MultiplicityProfile {
    /// Multiply the profile back out (unit times the parts with their
    /// multiplicities).
    pub fn reconstruct(&self) -> Polynomial {
        let mut acc = Polynomial::constant(self.unit.clone());
        for (g, m) in &self.parts {
            acc = acc.mul(&g.pow(*m));
        }
        acc
    }
}

/// Yun's gcd cascade. Every irreducible factor of parts[i] divides f with
/// multiplicity exactly i; characteristic zero throughout.
pub fn squarefree_decomposition(f: &Polynomial) -> Result<MultiplicityProfile> {
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    let field = f.field();
    let monic = f.make_monic()?;
    let unit = f.leading();
    let deriv = monic.derivative();
    let g0 = monic.gcd(&deriv)?;
    let mut parts: Vec<(Polynomial, u32)> = Vec::new();
    let mut b = monic.div_exact(&g0)?;
    let mut c = deriv.div_exact(&g0)?;
    let mut i = 1u32;
    loop {
        let d = c.sub(&b.derivative());
        if b.is_constant() {
            break;
        }
        let a = b.gcd(&d)?;
        if a.degree() > 0 {
            parts.push((a.clone(), i));
        }
        b = b.div_exact(&a)?;
        c = d.div_exact(&a)?;
        i += 1;
    }
    let s_plus = parts.iter().map(|(_, m)| *m).max().unwrap_or(1);
    let mut radical = Polynomial::from_ints(field, &[1]);
    for (g, _) in &parts {
        radical = radical.mul(g);
    }
    let radical_degree = radical.degree();
    let profile = MultiplicityProfile {
        unit,
        parts,
        s_plus,
        radical,
        radical_degree,
        t_bound: radical_degree,
    };
    debug_assert_eq!(profile.reconstruct(), *f, "profile must reconstruct f");
    Ok(profile)
}

/// Is alpha s-powerful: does every prime in the support of (alpha) occur
/// with |exponent| >= s? Returns the first failing prime as a witness.
pub fn is_powerful_element(
    field: NumberField,
    alpha: &FieldElement,
    s: u32,
    budget: &Budget,
) -> Result<(bool, Option<PrimeIdeal>)> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    if s < 2 {
        return Err(Error::BadRange);
    }
    for (prime, e) in factor_element(field, alpha, budget)? {
        if e.unsigned_abs() < s as u64 {
            return Ok((false, Some(prime)));
        }
    }
    Ok((true, None))
}

/// Every irreducible factor of f has multiplicity at least s.
pub fn is_powerful_polynomial(f: &Polynomial, s: u32) -> Result<bool> {
    if s < 2 {
        return Err(Error::BadRange);
    }
    let profile = squarefree_decomposition(f)?;
    Ok(profile.parts.iter().all(|(_, m)| *m >= s))
}

/// Every irreducible factor of f has multiplicity strictly smaller than s.
pub fn multiplicities_below(f: &Polynomial, s: u32) -> Result<bool> {
    if s < 2 {
        return Err(Error::BadRange);
    }
    let profile = squarefree_decomposition(f)?;
    Ok(profile.s_plus < s)
}

/// Canonical representative of f modulo scaling by s-th powers of rationals:
/// every prime exponent of the leading coefficient lands in [0, s). The sign
/// of the leading coefficient is preserved for even s (-1 is not an s-th
/// power); for odd s the leading coefficient is made positive.
pub fn canonical_representative(f: &Polynomial, s: u32, budget: &Budget) -> Result<Polynomial> {
    if !f.field().is_rationals() {
        return Err(Error::UnsupportedField);
    }
    if f.is_zero() || f.degree() < 1 {
        return Err(Error::ConstantPolynomial);
    }
    if s < 2 {
        return Err(Error::BadRange);
    }
    let lead = f
        .leading()
        .as_rational()
        .expect("rational coefficients")
        .clone();
    let mut scale = BigRational::one();
    for (p, e) in arith::factor_rational(&lead, budget)? {
        let q = e.div_euclid(s as i64);
        if q != 0 {
            let p = BigRational::from(BigInt::from(p.clone()));
            let step = num_traits::pow(p, (q.unsigned_abs() as usize) * s as usize);
            if q > 0 {
                scale /= step;
            } else {
                scale *= step;
            }
        }
    }
    if s % 2 == 1 && lead.is_negative() {
        scale = -scale;
    }
    Ok(f.mul_scalar(&FieldElement::from_rational(f.field(), scale)))
}
