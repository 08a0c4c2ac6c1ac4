//! Weil heights on field elements, projective points and polynomials;
//! algebraic numbers of degree at most two; certified Mahler measures; exact
//! discriminants and the classical bounds relating all of these.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::{self, Budget};
use crate::dyadic::{self, CDy, Ctx};
use crate::error::{Error, Result};
use crate::field::{factor_element, valuation, FieldElement, NumberField};
use crate::poly::Polynomial;
use crate::powerful::squarefree_decomposition;

/// A point of projective space with exact coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct ProjectivePoint {
    field: NumberField,
    coords: Vec<FieldElement>,
}

impl ProjectivePoint {
    pub fn new(field: NumberField, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.iter().all(|c| c.is_zero()) {
            return Err(Error::AllZero);
        }
        for c in &coords {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
        }
        Ok(ProjectivePoint { field, coords })
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }
}

/// Multiplicative height of a rational: H(a/b) = max(|a|, |b|) in lowest
/// terms. Exact, so power identities can be tested without rounding.
pub fn height_rational(q: &BigRational) -> BigRational {
    let n = q.numer().abs();
    let d = q.denom().abs();
    BigRational::from(n.max(d))
}

/// Relative multiplicative and logarithmic heights of a projective point
/// over its base field. The finite part is exact; archimedean contributions
/// from real embeddings use f64.
pub fn height_point(p: &ProjectivePoint) -> Result<(f64, f64)> {
    let field = p.field;
    if field.is_rationals() {
        // Clear denominators and divide out the content: the height of a
        // coprime integer vector is its largest coordinate. No factorization
        // needed, so arbitrarily large coordinates are fine.
        let mut lcm = BigInt::one();
        for c in &p.coords {
            lcm = num_integer::Integer::lcm(&lcm, c.rational_part().denom());
        }
        let ints: Vec<BigInt> = p
            .coords
            .iter()
            .map(|c| (c.rational_part() * BigRational::from(lcm.clone())).to_integer())
            .collect();
        let mut content = BigInt::zero();
        for n in &ints {
            content = num_integer::Integer::gcd(&content, n);
        }
        let h = ints
            .iter()
            .map(|n| (n / &content).abs())
            .max()
            .expect("nonempty point");
        let hq = BigRational::from(h);
        return Ok((arith::rat_to_f64(&hq), arith::rat_ln_abs(&hq)));
    }
    let budget = Budget::default();
    // Union of supporting primes over all nonzero coordinates.
    let mut primes = Vec::new();
    for c in &p.coords {
        if c.is_zero() {
            continue;
        }
        for (prime, _) in factor_element(field, c, &budget)? {
            if !primes.contains(&prime) {
                primes.push(prime);
            }
        }
    }
    let mut finite = BigRational::one();
    for prime in &primes {
        let mut min_v: Option<i64> = None;
        for c in &p.coords {
            if c.is_zero() {
                continue;
            }
            let v = valuation(field, c, prime)?;
            min_v = Some(min_v.map_or(v, |m| m.min(v)));
        }
        let v = min_v.expect("some coordinate is nonzero");
        let exponent = -v * prime.residue_degree() as i64;
        let base = BigRational::from(BigInt::from(prime.p));
        let factor = if exponent >= 0 {
            num_traits::pow(base, exponent as usize)
        } else {
            num_traits::pow(base.recip(), (-exponent) as usize)
        };
        finite *= factor;
    }
    let mut log_h = arith::rat_ln_abs(&finite);
    let mut h_mult = arith::rat_to_f64(&finite);
    for i in 0..field.real_embeddings() {
        let m = p
            .coords
            .iter()
            .map(|c| c.embed(i as u8).0.abs())
            .fold(0.0f64, f64::max);
        log_h += m.ln();
        h_mult *= m;
    }
    if field.complex_pairs() > 0 {
        // |sigma(c)|^2 is the rational norm: the maximum is exact.
        let m = p
            .coords
            .iter()
            .map(|c| c.norm().abs())
            .max()
            .expect("nonempty");
        log_h += arith::rat_ln_abs(&m);
        h_mult *= arith::rat_to_f64(&m);
    }
    Ok((h_mult, log_h))
}

/// Relative heights (H_k, h_k) of an element via the point [1 : alpha].
pub fn element_height(field: NumberField, alpha: &FieldElement) -> Result<(f64, f64)> {
    let point = ProjectivePoint::new(
        field,
        vec![FieldElement::one(field), alpha.clone()],
    )?;
    height_point(&point)
}

/// Absolute logarithmic height of an element of the base field.
pub fn element_absolute_log_height(field: NumberField, alpha: &FieldElement) -> Result<f64> {
    let (_, h) = element_height(field, alpha)?;
    Ok(h / field.degree() as f64)
}

/// Absolute multiplicative and logarithmic heights of a nonzero polynomial:
/// the height of its coefficient point.
pub fn height_polynomial(f: &Polynomial) -> Result<(f64, f64)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let point = ProjectivePoint::new(f.field(), f.coeffs().to_vec())?;
    let (h_rel, log_rel) = height_point(&point)?;
    let m = f.field().degree() as f64;
    Ok((h_rel.powf(1.0 / m), log_rel / m))
}

/// An algebraic number of degree at most two over Q: the primitive integer
/// minimal polynomial plus a root index in the canonical root ordering
/// (sorted by real part, then imaginary part). The value itself is stored
/// exactly as an element of Q or Q(sqrt d0).
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraicNumber {
    min_poly: Vec<BigInt>,
    root_index: u8,
    element: FieldElement,
}

impl AlgebraicNumber {
    pub fn from_rational(q: BigRational) -> Self {
        let min_poly = vec![-q.numer().clone(), q.denom().clone()];
        AlgebraicNumber {
            min_poly,
            root_index: 0,
            element: FieldElement::from_rational(NumberField::rationals(), q),
        }
    }

    /// Build from rational coefficients (ascending); the polynomial must be
    /// irreducible of degree 1 or 2.
    pub fn from_min_poly(coeffs: &[BigRational], root_index: u8) -> Result<Self> {
        let field = NumberField::rationals();
        let poly = Polynomial::from_rationals(field, coeffs);
        if poly.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        match poly.degree() {
            0 => Err(Error::ConstantPolynomial),
            1 => {
                if root_index != 0 {
                    return Err(Error::BadRange);
                }
                let root = -(poly.coeff(0).as_rational().unwrap()
                    / poly.coeff(1).as_rational().unwrap());
                Ok(Self::from_rational(root))
            }
            2 => {
                if !poly.irreducible_over_q()? {
                    return Err(Error::NotIrreducible);
                }
                if root_index > 1 {
                    return Err(Error::BadRange);
                }
                let (ints, _) = poly.primitive_integer_form()?;
                let a = ints[2].clone();
                let b = ints[1].clone();
                let c = ints[0].clone();
                let disc = &b * &b - BigInt::from(4) * &a * &c;
                // disc = square * d0 with d0 squarefree.
                let (d0, square_root) = squarefree_core(&disc)?;
                let k = NumberField::quadratic(d0)?;
                let two_a = BigRational::from(BigInt::from(2) * &a);
                let a_part = BigRational::from(-b.clone()) / &two_a;
                let mut b_part = BigRational::from(square_root) / &two_a;
                if root_index == 0 {
                    b_part = -b_part;
                }
                let element = FieldElement::new(k, a_part, b_part)?;
                Ok(AlgebraicNumber {
                    min_poly: ints,
                    root_index,
                    element,
                })
            }
            _ => Err(Error::UnsupportedDegree),
        }
    }

    /// The square root of a rational (degree 2 unless q is a square).
    pub fn sqrt_of(q: &BigRational, root_index: u8) -> Result<Self> {
        Self::from_min_poly(&[-q.clone(), BigRational::zero(), BigRational::one()], root_index)
    }

    pub fn degree(&self) -> u32 {
        (self.min_poly.len() - 1) as u32
    }

    pub fn min_poly(&self) -> Polynomial {
        Polynomial::from_bigints(NumberField::rationals(), &self.min_poly)
    }

    pub fn root_index(&self) -> u8 {
        self.root_index
    }

    /// The exact value, as an element of Q or of the quadratic field it
    /// generates.
    pub fn element(&self) -> &FieldElement {
        &self.element
    }

    /// The field Q(alpha).
    pub fn generated_field(&self) -> NumberField {
        self.element.field()
    }

    pub fn conjugate(&self) -> Self {
        if self.degree() == 1 {
            return self.clone();
        }
        AlgebraicNumber {
            min_poly: self.min_poly.clone(),
            root_index: 1 - self.root_index,
            element: self.element.conj(),
        }
    }

    /// Complex approximation under the principal embedding.
    pub fn approx(&self) -> (f64, f64) {
        self.element.embed(0)
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        self.element.as_rational()
    }
}

/// disc = square^2 * d0 with d0 squarefree; returns (d0, square).
fn squarefree_core(disc: &BigInt) -> Result<(i64, BigInt)> {
    let budget = Budget::default();
    let mag = disc.magnitude().clone();
    let mut d0 = BigInt::one();
    let mut square = BigInt::one();
    for (p, e) in arith::factor_biguint(&mag, &budget)? {
        let p = BigInt::from(p);
        if e % 2 == 1 {
            d0 *= &p;
        }
        square *= num_traits::pow(p, (e / 2) as usize);
    }
    if disc.is_negative() {
        d0 = -d0;
    }
    d0.to_i64().ok_or(Error::FactorizationTooLarge).map(|d| (d, square))
}

/// Absolute logarithmic Weil height h(alpha) = log(M(min_poly)) / deg.
pub fn absolute_height(alpha: &AlgebraicNumber) -> Result<f64> {
    if alpha.degree() == 1 {
        let q = alpha.as_rational().expect("degree-1 value is rational");
        return Ok(arith::rat_ln_abs(&height_rational(q)));
    }
    let m = mahler_measure(&alpha.min_poly(), 1e-12)?;
    Ok(m.ln() / alpha.degree() as f64)
}

/// Absolute height through the place decomposition of Q(alpha); agrees with
/// the Mahler route and serves as its independent cross-check.
pub fn place_sum_height(alpha: &AlgebraicNumber) -> Result<f64> {
    let k = alpha.generated_field();
    let h_rel = element_height(k, alpha.element())?.1;
    Ok(h_rel / k.degree() as f64)
}

/// Additive constant in the discriminant height bounds: d log d over the
/// rationals and (2d - 1) log d otherwise.
pub fn a_of(d: u32, rational_base: bool) -> f64 {
    let df = d as f64;
    if rational_base {
        df * df.ln()
    } else {
        (2.0 * df - 1.0) * df.ln()
    }
}

/// Exact discriminant of a polynomial of degree >= 2.
pub fn poly_discriminant(f: &Polynomial) -> Result<FieldElement> {
    f.discriminant()
}

// ---------------------------------------------------------------------------
// Mahler measure with certified root enclosures.
// ---------------------------------------------------------------------------

/// Complex numbers with exact coordinates in a real certification field
/// (Q or a real quadratic field).
#[derive(Debug, Clone)]
struct CElem {
    re: FieldElement,
    im: FieldElement,
}

impl CElem {
    fn from_rational_pair(field: NumberField, re: &BigRational, im: &BigRational) -> Self {
        CElem {
            re: FieldElement::from_rational(field, re.clone()),
            im: FieldElement::from_rational(field, im.clone()),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        CElem {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    fn norm_sqr(&self) -> FieldElement {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }
}

/// Rational upper bound on a nonnegative element a + b sqrt(d) of a real
/// field.
fn upper_bound_real(x: &FieldElement, bits: u32) -> BigRational {
    let field = x.field();
    if field.is_rationals() || x.surd_part().is_zero() {
        return x.rational_part().clone();
    }
    let d = field.d();
    debug_assert!(d > 0);
    let (lo, hi) = dyadic::sqrt_enclosure(d as u64, bits);
    let b = x.surd_part();
    if b.is_negative() {
        x.rational_part() + b * lo
    } else {
        x.rational_part() + b * hi
    }
}

/// Rational enclosure of |sigma_0(x)| for an element of any supported field.
fn abs_embed_enclosure(x: &FieldElement, bits: u32) -> (BigRational, BigRational) {
    let field = x.field();
    if field.is_rationals() || x.surd_part().is_zero() {
        let v = x.rational_part().abs();
        return (v.clone(), v);
    }
    if field.d() < 0 {
        // |sigma(x)|^2 = norm is rational and nonnegative.
        let n = x.norm();
        return arith::rat_sqrt_bounds(&n, bits);
    }
    let (slo, shi) = dyadic::sqrt_enclosure(field.d() as u64, bits);
    let b = x.surd_part();
    let (vlo, vhi) = if b.is_negative() {
        (x.rational_part() + b * &shi, x.rational_part() + b * &slo)
    } else {
        (x.rational_part() + b * &slo, x.rational_part() + b * &shi)
    };
    if !vlo.is_negative() {
        (vlo, vhi)
    } else if !vhi.is_positive() {
        (-vhi, -vlo)
    } else {
        (BigRational::zero(), vhi.abs().max(vlo.abs()))
    }
}

/// The real field used for exact certification of embedded coefficients:
/// Q(sqrt d) itself when d > 0, Q(sqrt |d|) when d < -1, Q when d = -1 or
/// the base field is Q.
fn certification_field(field: NumberField) -> NumberField {
    if field.is_rationals() || field.d() > 0 {
        field
    } else if field.d() == -1 {
        NumberField::rationals()
    } else {
        NumberField::quadratic(-field.d()).expect("|d| squarefree")
    }
}

/// Embed a coefficient into the certification field as an exact complex
/// value under the principal embedding.
fn embed_coefficient(c: &FieldElement, cert: NumberField) -> CElem {
    let field = c.field();
    if field.is_rationals() || field.d() > 0 {
        CElem {
            re: c.clone(),
            im: FieldElement::zero(cert),
        }
    } else if field.d() == -1 {
        CElem {
            re: FieldElement::from_rational(cert, c.rational_part().clone()),
            im: FieldElement::from_rational(cert, c.surd_part().clone()),
        }
    } else {
        // a + b sqrt(d), d < -1: value is (a, b sqrt(|d|)).
        CElem {
            re: FieldElement::from_rational(cert, c.rational_part().clone()),
            im: FieldElement::new(cert, BigRational::zero(), c.surd_part().clone())
                .expect("surd part in certification field"),
        }
    }
}

/// Dyadic approximation of a coefficient under the principal embedding.
fn coefficient_to_cdy(ctx: &Ctx, c: &FieldElement) -> CDy {
    let field = c.field();
    if field.is_rationals() || c.surd_part().is_zero() {
        return CDy {
            re: ctx.from_rational(c.rational_part()),
            im: dyadic::Dy::zero(),
        };
    }
    if field.d() > 0 {
        CDy {
            re: dyadic::approx_quadratic(ctx, c.rational_part(), c.surd_part(), field.d() as u64),
            im: dyadic::Dy::zero(),
        }
    } else {
        CDy {
            re: ctx.from_rational(c.rational_part()),
            im: dyadic::approx_quadratic(
                ctx,
                &BigRational::zero(),
                c.surd_part(),
                field.d().unsigned_abs(),
            ),
        }
    }
}

/// Certify approximations of the roots of a monic squarefree polynomial:
/// exact Weierstrass corrections give disks that must be pairwise disjoint.
/// Returns rational enclosures [lo, hi] of each root modulus.
fn certify_roots(
    part: &Polynomial,
    roots: &[(BigRational, BigRational)],
    bits: u32,
) -> Option<Vec<(BigRational, BigRational)>> {
    let n = part.degree();
    let cert = certification_field(part.field());
    let coeffs: Vec<CElem> = part
        .coeffs()
        .iter()
        .map(|c| embed_coefficient(c, cert))
        .collect();
    // Exact radii R_i >= n |W_i|.
    let mut radii: Vec<BigRational> = Vec::with_capacity(n);
    for (i, z) in roots.iter().enumerate() {
        let zi = CElem::from_rational_pair(cert, &z.0, &z.1);
        // p(z_i) by Horner, exact.
        let mut val = CElem::from_rational_pair(cert, &BigRational::zero(), &BigRational::zero());
        for c in coeffs.iter().rev() {
            val = val.mul(&zi);
            val = CElem {
                re: val.re.add(&c.re),
                im: val.im.add(&c.im),
            };
        }
        // prod_{j != i} (z_i - z_j): rational complex.
        let mut den_re = BigRational::one();
        let mut den_im = BigRational::zero();
        for (j, w) in roots.iter().enumerate() {
            if j == i {
                continue;
            }
            let dr = &z.0 - &w.0;
            let di = &z.1 - &w.1;
            let nr = &den_re * &dr - &den_im * &di;
            let ni = &den_re * &di + &den_im * &dr;
            den_re = nr;
            den_im = ni;
        }
        let den_norm = &den_re * &den_re + &den_im * &den_im;
        if den_norm.is_zero() {
            return None; // coincident approximations
        }
        // |W|^2 = |p(z)|^2 / |den|^2; upper-bound the numerator in the field.
        let num_norm = val.norm_sqr();
        let num_ub = upper_bound_real(&num_norm, bits);
        if num_ub.is_negative() {
            return None;
        }
        let w_sq_ub = num_ub / &den_norm;
        let r_ub = arith::rat_sqrt_bounds(&w_sq_ub, bits).1 * BigRational::from(BigInt::from(n));
        radii.push(r_ub);
    }
    // Pairwise disjoint disks.
    for i in 0..n {
        for j in i + 1..n {
            let dr = &roots[i].0 - &roots[j].0;
            let di = &roots[i].1 - &roots[j].1;
            let dist_sq = &dr * &dr + &di * &di;
            let rsum = &radii[i] + &radii[j];
            if dist_sq <= &rsum * &rsum {
                return None;
            }
        }
    }
    // Modulus enclosures.
    let mut out = Vec::with_capacity(n);
    for (z, r) in roots.iter().zip(&radii) {
        let norm = &z.0 * &z.0 + &z.1 * &z.1;
        let (lo, hi) = arith::rat_sqrt_bounds(&norm, bits);
        let lo = (&lo - r).max(BigRational::zero());
        let hi = hi + r;
        out.push((lo, hi));
    }
    Some(out)
}

/// Mahler measure M(f) = |lc| * prod max(1, |root|) under the principal
/// embedding, within eps. Roots are located by simultaneous iteration on the
/// squarefree parts and certified exactly; precision escalates 64 -> 1024
/// bits before giving up.
pub fn mahler_measure(f: &Polynomial, eps: f64) -> Result<f64> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if eps <= 0.0 {
        return Err(Error::BadPrecision);
    }
    let (_, stripped) = f.strip_zero_roots();
    let lead_enclosure = abs_embed_enclosure(&f.leading(), 96);
    if stripped.is_constant() {
        let mid = (arith::rat_to_f64(&lead_enclosure.0) + arith::rat_to_f64(&lead_enclosure.1)) / 2.0;
        return Ok(mid);
    }
    let profile = squarefree_decomposition(&stripped)?;
    for prec in [64u32, 128, 256, 512, 1024] {
        let ctx = Ctx::new(prec);
        let mut total_lo = lead_enclosure.0.clone();
        let mut total_hi = lead_enclosure.1.clone();
        let mut certified = true;
        for (part, mult) in &profile.parts {
            let enclosures = match part_measure_enclosure(&ctx, part) {
                Some(e) => e,
                None => {
                    certified = false;
                    break;
                }
            };
            let one = BigRational::one();
            for (lo, hi) in enclosures {
                let lo = lo.max(one.clone());
                let hi = hi.max(one.clone());
                for _ in 0..*mult {
                    total_lo *= &lo;
                    total_hi *= &hi;
                }
            }
        }
        if certified {
            let lo = arith::rat_to_f64(&total_lo);
            let hi = arith::rat_to_f64(&total_hi);
            if hi - lo <= eps {
                return Ok((lo + hi) / 2.0);
            }
        }
    }
    Err(Error::RootCertificationFailure)
}

/// Certified modulus enclosures for all roots of one monic squarefree part.
fn part_measure_enclosure(
    ctx: &Ctx,
    part: &Polynomial,
) -> Option<Vec<(BigRational, BigRational)>> {
    if part.degree() == 1 {
        // Root is exactly -c0 (the part is monic).
        let root = part.coeff(0).neg();
        return Some(vec![abs_embed_enclosure(&root, ctx.prec)]);
    }
    let coeffs: Vec<CDy> = part
        .coeffs()
        .iter()
        .map(|c| coefficient_to_cdy(ctx, c))
        .collect();
    let approx = dyadic::weierstrass_roots(ctx, &coeffs, None);
    let rational_roots: Vec<(BigRational, BigRational)> = approx
        .iter()
        .map(|z| z.to_rational_pair())
        .collect();
    certify_roots(part, &rational_roots, ctx.prec)
}

// ---------------------------------------------------------------------------
// Discriminant bounds.
// ---------------------------------------------------------------------------

/// Both sides of the discriminant bounds, with pass flags:
///
///   (abs)    |D(f)| <= d^d M(f)^(2d-2)
///   (height) h(D(f~)) <= 2(d-1) h(f) + d log d + (d-1) log(d+1),
///
/// where f~ is the monic normalization of f. Normalizing matters: scaling f
/// by c multiplies D by c^(2d-2) while h(f) is projective, so the height
/// bound only holds for a pinned representative. The norm-comparison term
/// (d-1) log(d+1) comes from M(f) <= sqrt(d+1) H(f); without it the bare
/// d log d version fails on sup-norm heights (96x^3 + 11x^2 - 41x + 97).
/// The height part is skipped (with a reason) when D(f) = 0.
#[derive(Debug, Clone, Serialize)]
pub struct DiscriminantBounds {
    pub discriminant: FieldElement,
    pub mahler: f64,
    pub lhs_abs: f64,
    pub rhs_abs: f64,
    pub pass_abs: bool,
    pub lhs_height: Option<f64>,
    pub rhs_height: Option<f64>,
    pub pass_height: Option<bool>,
    pub skip_reason: Option<String>,
}

pub fn check_discriminant_bounds(f: &Polynomial) -> Result<DiscriminantBounds> {
    if f.degree() < 2 {
        return Err(Error::DegreeTooSmall);
    }
    let d = f.degree() as f64;
    let eps = 1e-9;
    let disc = f.discriminant()?;
    let m = mahler_measure(f, eps)?;
    let (dlo, dhi) = abs_embed_enclosure(&disc, 96);
    let lhs_abs = (arith::rat_to_f64(&dlo) + arith::rat_to_f64(&dhi)) / 2.0;
    let rhs_abs = d.powf(d) * (m + 2.0 * eps).powf(2.0 * d - 2.0);
    let pass_abs = lhs_abs <= rhs_abs * (1.0 + 1e-12) + 1e-12;
    if disc.is_zero() {
        return Ok(DiscriminantBounds {
            discriminant: disc,
            mahler: m,
            lhs_abs,
            rhs_abs,
            pass_abs,
            lhs_height: None,
            rhs_height: None,
            pass_height: None,
            skip_reason: Some("discriminant is zero".to_string()),
        });
    }
    let h_f = height_polynomial(f)?.1;
    let disc_monic = f.make_monic()?.discriminant()?;
    let lhs_height = element_absolute_log_height(f.field(), &disc_monic)?;
    let rhs_height = 2.0 * (d - 1.0) * h_f + d * d.ln() + (d - 1.0) * (d + 1.0).ln();
    let pass_height = lhs_height <= rhs_height + 1e-9;
    Ok(DiscriminantBounds {
        discriminant: disc,
        mahler: m,
        lhs_abs,
        rhs_abs,
        pass_abs,
        lhs_height: Some(lhs_height),
        rhs_height: Some(rhs_height),
        pass_height: Some(pass_height),
        skip_reason: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> NumberField {
        NumberField::rationals()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_point_heights() {
        let p = ProjectivePoint::new(
            q(),
            vec![
                FieldElement::one(q()),
                FieldElement::from_rational(q(), rat(3, 2)),
            ],
        )
        .unwrap();
        let (h, logh) = height_point(&p).unwrap();
        assert_eq!(h, 3.0);
        assert!((logh - 3.0f64.ln()).abs() < 1e-12);

        let unit = ProjectivePoint::new(
            q(),
            vec![FieldElement::one(q()), FieldElement::one(q())],
        )
        .unwrap();
        assert_eq!(height_point(&unit).unwrap().0, 1.0);
    }

    #[test]
    fn extension_height() {
        // H over Q(i) is the square of H over Q for rational points.
        let k = NumberField::quadratic(-1).unwrap();
        let p = ProjectivePoint::new(
            k,
            vec![
                FieldElement::one(k),
                FieldElement::from_rational(k, rat(3, 2)),
            ],
        )
        .unwrap();
        let (h, _) = height_point(&p).unwrap();
        assert!((h - 9.0).abs() < 1e-9);
    }

    #[test]
    fn all_zero_rejected() {
        assert_eq!(
            ProjectivePoint::new(q(), vec![FieldElement::zero(q())]).err(),
            Some(Error::AllZero)
        );
    }

    #[test]
    fn polynomial_heights() {
        let f = Polynomial::from_ints(q(), &[-2, 0, 1]);
        assert_eq!(height_polynomial(&f).unwrap().0, 2.0);
        let x = Polynomial::from_ints(q(), &[0, 1]);
        assert_eq!(height_polynomial(&x).unwrap().0, 1.0);
        // Scaling invariance: 6x + 4 has the height of 3x + 2.
        let g = Polynomial::from_ints(q(), &[4, 6]);
        assert_eq!(height_polynomial(&g).unwrap().0, 3.0);
    }

    #[test]
    fn mahler_examples() {
        let f = Polynomial::from_ints(q(), &[-2, 0, 1]);
        assert!((mahler_measure(&f, 1e-9).unwrap() - 2.0).abs() < 1e-9);
        let c = Polynomial::from_ints(q(), &[5]);
        assert!((mahler_measure(&c, 1e-9).unwrap() - 5.0).abs() < 1e-12);
        let cyc = Polynomial::from_ints(q(), &[1, 1, 1]);
        assert!((mahler_measure(&cyc, 1e-9).unwrap() - 1.0).abs() < 1e-9);
        // Repeated factors weight the measure: M((x^2-2)^3) = 8.
        let rep = Polynomial::from_ints(q(), &[-2, 0, 1]).pow(3);
        assert!((mahler_measure(&rep, 1e-9).unwrap() - 8.0).abs() < 1e-8);
        // Lehmer's degree-10 polynomial.
        let lehmer = Polynomial::from_ints(q(), &[1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1]);
        let m = mahler_measure(&lehmer, 1e-8).unwrap();
        assert!((m - 1.176280818259917).abs() < 1e-8);
    }

    #[test]
    fn algebraic_numbers() {
        let sqrt2 = AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap();
        assert_eq!(sqrt2.degree(), 2);
        let h = absolute_height(&sqrt2).unwrap();
        assert!((h - 0.5 * 2.0f64.ln()).abs() < 1e-9);
        let hp = place_sum_height(&sqrt2).unwrap();
        assert!((h - hp).abs() < 1e-9);

        let three_half = AlgebraicNumber::from_rational(rat(3, 2));
        assert!((absolute_height(&three_half).unwrap() - 3.0f64.ln()).abs() < 1e-12);

        let one = AlgebraicNumber::from_rational(rat(1, 1));
        assert_eq!(absolute_height(&one).unwrap(), 0.0);

        // Conjugates share the absolute height.
        let alpha = AlgebraicNumber::from_min_poly(&[rat(-1, 1), rat(-1, 1), rat(1, 1)], 0).unwrap();
        let beta = alpha.conjugate();
        let ha = absolute_height(&alpha).unwrap();
        let hb = absolute_height(&beta).unwrap();
        assert!((ha - hb).abs() < 1e-12);
        // Golden ratio: height log(phi)/1... M(x^2-x-1) = phi, degree 2.
        let phi = (1.0 + 5.0f64.sqrt()) / 2.0;
        assert!((ha - phi.ln() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn canonical_root_order() {
        // x^2 - 2: index 0 is -sqrt(2), index 1 is +sqrt(2).
        let lo = AlgebraicNumber::sqrt_of(&rat(2, 1), 0).unwrap();
        let hi = AlgebraicNumber::sqrt_of(&rat(2, 1), 1).unwrap();
        assert!(lo.approx().0 < 0.0 && hi.approx().0 > 0.0);
        // x^2 + 1: index 0 has negative imaginary part.
        let i0 = AlgebraicNumber::sqrt_of(&rat(-1, 1), 0).unwrap();
        assert!(i0.approx().1 < 0.0);
    }

    #[test]
    fn reducible_min_poly_rejected() {
        assert_eq!(
            AlgebraicNumber::from_min_poly(&[rat(-1, 1), rat(0, 1), rat(1, 1)], 0).err(),
            Some(Error::NotIrreducible)
        );
    }

    #[test]
    fn discriminant_bound_examples() {
        let f = Polynomial::from_ints(q(), &[-2, 0, 1]);
        let report = check_discriminant_bounds(&f).unwrap();
        assert!(report.pass_abs);
        assert!((report.lhs_abs - 8.0).abs() < 1e-9);
        assert!((report.rhs_abs - 16.0).abs() < 1e-6);
        assert_eq!(report.pass_height, Some(true));

        let sq = Polynomial::from_ints(q(), &[1, -2, 1]);
        let report = check_discriminant_bounds(&sq).unwrap();
        assert!(report.skip_reason.is_some());
        assert!(report.pass_abs);

        let f3 = Polynomial::from_ints(q(), &[0, -1, 0, 1]);
        let report = check_discriminant_bounds(&f3).unwrap();
        assert!(report.pass_abs);
        assert!((report.lhs_abs - 4.0).abs() < 1e-9);
        assert!((report.rhs_abs - 27.0).abs() < 1e-5);
    }

    #[test]
    fn a_of_values() {
        assert!((a_of(3, true) - 3.0 * 3.0f64.ln()).abs() < 1e-15);
        assert!((a_of(3, false) - 5.0 * 3.0f64.ln()).abs() < 1e-15);
        assert!((a_of(2, true) - 2.0 * 2.0f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn tower_consistency() {
        // h over Q(sqrt 5) of a rational equals twice the absolute height.
        let k = NumberField::quadratic(5).unwrap();
        let alpha = FieldElement::from_rational(k, rat(7, 3));
        let (_, h_rel) = element_height(k, &alpha).unwrap();
        assert!((h_rel - 2.0 * 7.0f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn mahler_over_quadratic_field() {
        // (x - sqrt2)(x + sqrt2) over Q(sqrt2) embeds to x^2 - 2.
        let k = NumberField::quadratic(2).unwrap();
        let f = Polynomial::from_ints(k, &[-2, 0, 1]);
        assert!((mahler_measure(&f, 1e-9).unwrap() - 2.0).abs() < 1e-9);
        // x - sqrt(2): single root sqrt 2 -> M = sqrt 2.
        let s = FieldElement::sqrt_gen(k);
        let g = Polynomial::new(k, vec![s.neg(), FieldElement::one(k)]);
        assert!((mahler_measure(&g, 1e-9).unwrap() - 2.0f64.sqrt()).abs() < 1e-9);
    }
}
