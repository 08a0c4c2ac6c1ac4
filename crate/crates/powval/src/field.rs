//! Base fields Q and Q(sqrt d): exact elements, prime ideals, places, local
//! values and the classical field invariants (class number, regulator, roots
//! of unity).
//!
//! Finite local values use the normalization `|alpha|_P = N(P)^(-ord_P alpha)`
//! so that the product over all places of `|alpha|_v` is 1 on nonzero
//! elements.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::arith::{self, Budget};
use crate::error::{Error, Result};
use crate::zeta;

/// A supported base field: the rationals or a quadratic field Q(sqrt d).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NumberField {
    kind: FieldKind,
    d: i64,
    discriminant: i64,
    m1: u32,
    m2: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Quadratic,
}

impl NumberField {
    pub fn rationals() -> Self {
        NumberField {
            kind: FieldKind::Rationals,
            d: 0,
            discriminant: 1,
            m1: 1,
            m2: 0,
        }
    }

    /// Q(sqrt d) for squarefree d not in {0, 1}.
    pub fn quadratic(d: i64) -> Result<Self> {
        if d == 0 || d == 1 {
            return Err(Error::DisallowedValue(d));
        }
        let abs = BigUint::from(d.unsigned_abs());
        for (p, e) in arith::factor_biguint(&abs, &Budget::default())? {
            if e > 1 {
                return Err(Error::NotSquarefree(p.to_i64().unwrap_or(0)));
            }
        }
        let discriminant = if d.rem_euclid(4) == 1 { d } else { 4 * d };
        let (m1, m2) = if d > 0 { (2, 0) } else { (0, 1) };
        Ok(NumberField {
            kind: FieldKind::Quadratic,
            d,
            discriminant,
            m1,
            m2,
        })
    }

    pub fn kind(&self) -> FieldKind {
        self.kind
    }

    pub fn is_rationals(&self) -> bool {
        self.kind == FieldKind::Rationals
    }

    /// The parameter d of Q(sqrt d); 0 for the rationals.
    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn discriminant(&self) -> i64 {
        self.discriminant
    }

    pub fn abs_discriminant(&self) -> u64 {
        self.discriminant.unsigned_abs()
    }

    pub fn real_embeddings(&self) -> u32 {
        self.m1
    }

    pub fn complex_pairs(&self) -> u32 {
        self.m2
    }

    /// Degree over Q.
    pub fn degree(&self) -> u32 {
        self.m1 + 2 * self.m2
    }

    /// The infinite places: m1 real embeddings followed by m2 complex pairs.
    pub fn infinite_places(&self) -> Vec<Place> {
        let mut places = Vec::new();
        for i in 0..self.m1 {
            places.push(Place::Real(i as u8));
        }
        for _ in 0..self.m2 {
            places.push(Place::Complex);
        }
        places
    }

    /// sqrt(d) as f64 under the embedding with the given index.
    fn sqrt_d(&self, embedding: u8) -> f64 {
        let s = (self.d.unsigned_abs() as f64).sqrt();
        if embedding == 0 {
            s
        } else {
            -s
        }
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Quadratic => write!(f, "Q(sqrt,{})", self.d),
        }
    }
}

impl Serialize for NumberField {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// An element a + b sqrt(d) of its field, with exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: NumberField,
    a: BigRational,
    b: BigRational,
}

impl FieldElement {
    pub fn new(field: NumberField, a: BigRational, b: BigRational) -> Result<Self> {
        if field.is_rationals() && !b.is_zero() {
            return Err(Error::FieldMismatch);
        }
        Ok(FieldElement { field, a, b })
    }

    pub fn from_rational(field: NumberField, a: BigRational) -> Self {
        FieldElement {
            field,
            a,
            b: BigRational::zero(),
        }
    }

    pub fn from_int(field: NumberField, n: i64) -> Self {
        Self::from_rational(field, BigRational::from(BigInt::from(n)))
    }

    pub fn zero(field: NumberField) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: NumberField) -> Self {
        Self::from_int(field, 1)
    }

    /// sqrt(d) itself (zero for the rationals).
    pub fn sqrt_gen(field: NumberField) -> Self {
        if field.is_rationals() {
            Self::zero(field)
        } else {
            FieldElement {
                field,
                a: BigRational::zero(),
                b: BigRational::one(),
            }
        }
    }

    pub fn field(&self) -> NumberField {
        self.field
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    pub fn surd_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// The rational value, if the surd part vanishes.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &Self) {
        assert_eq!(
            self.field, other.field,
            "elements belong to different number fields"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_same_field(other);
        FieldElement {
            field: self.field,
            a: &self.a + &other.a,
            b: &self.b + &other.b,
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.check_same_field(other);
        FieldElement {
            field: self.field,
            a: &self.a - &other.a,
            b: &self.b - &other.b,
        }
    }

    pub fn neg(&self) -> Self {
        FieldElement {
            field: self.field,
            a: -self.a.clone(),
            b: -self.b.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_same_field(other);
        let d = BigRational::from(BigInt::from(self.field.d));
        FieldElement {
            field: self.field,
            a: &self.a * &other.a + &(&self.b * &other.b) * &d,
            b: &self.a * &other.b + &self.b * &other.a,
        }
    }

    pub fn mul_rational(&self, q: &BigRational) -> Self {
        FieldElement {
            field: self.field,
            a: &self.a * q,
            b: &self.b * q,
        }
    }

    /// Galois conjugate a - b sqrt(d).
    pub fn conj(&self) -> Self {
        FieldElement {
            field: self.field,
            a: self.a.clone(),
            b: -self.b.clone(),
        }
    }

    /// Field norm a^2 - d b^2 (identity on the rationals).
    pub fn norm(&self) -> BigRational {
        if self.field.is_rationals() {
            return self.a.clone();
        }
        let d = BigRational::from(BigInt::from(self.field.d));
        &self.a * &self.a - &(&self.b * &self.b) * &d
    }

    pub fn trace(&self) -> BigRational {
        if self.field.is_rationals() {
            return self.a.clone();
        }
        &self.a + &self.a
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        if self.field.is_rationals() {
            return Ok(FieldElement {
                field: self.field,
                a: self.a.recip(),
                b: BigRational::zero(),
            });
        }
        let n = self.norm();
        Ok(FieldElement {
            field: self.field,
            a: &self.a / &n,
            b: -(&self.b / &n),
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 {
            self.inv()?
        } else {
            self.clone()
        };
        let mut e = n.unsigned_abs();
        let mut acc = Self::one(self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        Ok(acc)
    }

    /// Value under the embedding with the given index, as (re, im).
    pub fn embed(&self, embedding: u8) -> (f64, f64) {
        let a = arith::rat_to_f64(&self.a);
        if self.field.is_rationals() || self.b.is_zero() {
            return (a, 0.0);
        }
        let b = arith::rat_to_f64(&self.b);
        if self.field.d > 0 {
            (a + b * self.field.sqrt_d(embedding), 0.0)
        } else {
            let im = b * (self.field.d.unsigned_abs() as f64).sqrt();
            if embedding == 0 {
                (a, im)
            } else {
                (a, -im)
            }
        }
    }

    /// Exact sign for elements of a real field (d > 0 or rational).
    pub fn sign_real(&self) -> i32 {
        assert!(
            self.field.is_rationals() || self.field.d > 0,
            "sign is defined for real embeddings only"
        );
        arith::sign_quadratic(&self.a, &self.b, &BigInt::from(self.field.d.max(0)))
    }

    /// Exact comparison in the real embedding sqrt(d) > 0.
    pub fn cmp_real(&self, other: &Self) -> Ordering {
        match self.sub(other).sign_real() {
            1 => Ordering::Greater,
            -1 => Ordering::Less,
            _ => Ordering::Equal,
        }
    }

    /// Lexicographic order on (a, b); a deterministic total order used for
    /// canonical output listings.
    pub fn cmp_lex(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Deterministic total order (field parameter, then coordinates); not the
/// numeric order of any embedding.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .d()
            .cmp(&other.field.d())
            .then_with(|| self.cmp_lex(other))
    }
}

impl FieldElement {
    /// Clears denominators: returns (x, y, q) with self = (x + y sqrt d)/q.
    pub fn integral_coords(&self) -> (BigInt, BigInt, BigInt) {
        let q = self.a.denom().lcm(self.b.denom());
        let x = (&self.a * BigRational::from(q.clone())).to_integer();
        let y = (&self.b * BigRational::from(q.clone())).to_integer();
        (x, y, q)
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let d = self.field.d;
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", self.b, d);
        }
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, -self.b.clone(), d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, d)
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// How a rational prime sits in the ring of integers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SplittingKind {
    Rational,
    Split,
    Inert,
    Ramified,
}

/// A prime ideal, identified by the rational prime below it plus a residue
/// that distinguishes the two primes above a split p: sqrt(d) = r (mod P)
/// for odd p, and omega = r (mod P) at p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct PrimeIdeal {
    pub p: u64,
    pub kind: SplittingKind,
    pub r: u64,
}

impl PrimeIdeal {
    pub fn rational(p: u64) -> Self {
        PrimeIdeal {
            p,
            kind: SplittingKind::Rational,
            r: 0,
        }
    }

    pub fn residue_degree(&self) -> u32 {
        match self.kind {
            SplittingKind::Inert => 2,
            _ => 1,
        }
    }

    /// #(O_k / P) = p^f.
    pub fn residue_norm(&self) -> BigUint {
        let p = BigUint::from(self.p);
        match self.kind {
            SplittingKind::Inert => &p * &p,
            _ => p,
        }
    }

    pub fn log_norm(&self) -> f64 {
        self.residue_degree() as f64 * (self.p as f64).ln()
    }
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p, self.r).cmp(&(other.p, other.r))
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SplittingKind::Rational | SplittingKind::Inert => write!(f, "({})", self.p),
            SplittingKind::Ramified => write!(f, "({},rad)", self.p),
            SplittingKind::Split => write!(f, "({},{})", self.p, self.r),
        }
    }
}

/// A place of the field: a prime ideal or an archimedean embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(PrimeIdeal),
    Real(u8),
    Complex,
}

/// The prime ideals above a rational prime p, in canonical order.
pub fn primes_above(field: NumberField, p: u64) -> Vec<PrimeIdeal> {
    if field.is_rationals() {
        return vec![PrimeIdeal::rational(p)];
    }
    let chi = arith::kronecker(field.discriminant, p as i64);
    match chi {
        -1 => vec![PrimeIdeal {
            p,
            kind: SplittingKind::Inert,
            r: 0,
        }],
        0 => vec![PrimeIdeal {
            p,
            kind: SplittingKind::Ramified,
            r: 0,
        }],
        _ => {
            if p == 2 {
                // d = 1 mod 8; omega = (1 + sqrt d)/2 has minimal polynomial
                // x^2 - x + (1-d)/4 with both residues 0 and 1 mod 2.
                vec![
                    PrimeIdeal {
                        p,
                        kind: SplittingKind::Split,
                        r: 0,
                    },
                    PrimeIdeal {
                        p,
                        kind: SplittingKind::Split,
                        r: 1,
                    },
                ]
            } else {
                let dm = ((field.d % p as i64) + p as i64) as u64 % p;
                let r = arith::sqrt_mod(dm, p).expect("split prime has a square root");
                let r1 = r.min(p - r);
                vec![
                    PrimeIdeal {
                        p,
                        kind: SplittingKind::Split,
                        r: r1,
                    },
                    PrimeIdeal {
                        p,
                        kind: SplittingKind::Split,
                        r: p - r1,
                    },
                ]
            }
        }
    }
}

/// ord_P of an integral element x + y sqrt(d) (given in sqrt-coordinates).
fn valuation_integral(field: NumberField, x: &BigInt, y: &BigInt, prime: &PrimeIdeal) -> i64 {
    let p = prime.p;
    let d = field.d;
    match prime.kind {
        SplittingKind::Rational => arith::val_p_int(x, p) as i64,
        SplittingKind::Inert => {
            let n = x * x - BigInt::from(d) * y * y;
            let v = arith::val_p_int(&n, p);
            debug_assert!(v.is_multiple_of(2), "inert valuation must be even");
            (v / 2) as i64
        }
        SplittingKind::Ramified => {
            let n = x * x - BigInt::from(d) * y * y;
            arith::val_p_int(&n, p) as i64
        }
        SplittingKind::Split => {
            if p == 2 {
                // omega-coordinates: x + y sqrt d = (x - y) + 2y * omega.
                let u = x - y;
                let w = BigInt::from(2) * y;
                valuation_split_omega(d, &u, &w, prime.r)
            } else {
                valuation_split_sqrt(d, x, y, p, prime.r)
            }
        }
    }
}

fn valuation_split_sqrt(d: i64, x: &BigInt, y: &BigInt, p: u64, r: u64) -> i64 {
    let pb = BigInt::from(p);
    let g = if x.is_zero() {
        arith::val_p_int(y, p)
    } else if y.is_zero() {
        arith::val_p_int(x, p)
    } else {
        arith::val_p_int(x, p).min(arith::val_p_int(y, p))
    };
    let scale = pb.pow(g as u32);
    let xp = x / &scale;
    let yp = y / &scale;
    // At most one of the two split primes divides a primitive element.
    let residue = (&xp + &yp * BigInt::from(r)) % &pb;
    if residue.is_zero() {
        let n = &xp * &xp - BigInt::from(d) * &yp * &yp;
        g as i64 + arith::val_p_int(&n, p) as i64
    } else {
        g as i64
    }
}

fn valuation_split_omega(d: i64, u: &BigInt, w: &BigInt, t: u64) -> i64 {
    let two = BigInt::from(2);
    let g = if u.is_zero() {
        arith::val_p_int(w, 2)
    } else if w.is_zero() {
        arith::val_p_int(u, 2)
    } else {
        arith::val_p_int(u, 2).min(arith::val_p_int(w, 2))
    };
    let scale = two.pow(g as u32);
    let up = u / &scale;
    let wp = w / &scale;
    let residue = (&up + &wp * BigInt::from(t)) % &two;
    if residue.is_zero() {
        // N(u + w*omega) = u^2 + u w + w^2 (1 - d)/4.
        let c = BigInt::from((1 - d) / 4);
        let n = &up * &up + &up * &wp + &wp * &wp * c;
        g as i64 + arith::val_p_int(&n, 2) as i64
    } else {
        g as i64
    }
}

/// ord_P(alpha) for a nonzero field element.
pub fn valuation(field: NumberField, alpha: &FieldElement, prime: &PrimeIdeal) -> Result<i64> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    assert_eq!(field, alpha.field(), "element not in the given field");
    if field.is_rationals() {
        return Ok(arith::val_p_rational(alpha.rational_part(), prime.p));
    }
    let (x, y, q) = alpha.integral_coords();
    let vq = arith::val_p_int(&q, prime.p) as i64;
    let e = match prime.kind {
        SplittingKind::Ramified => 2,
        _ => 1,
    };
    Ok(valuation_integral(field, &x, &y, prime) - e * vq)
}

/// Exact factorization of the fractional ideal (alpha): nonzero exponents,
/// canonically ordered.
pub fn factor_element(
    field: NumberField,
    alpha: &FieldElement,
    budget: &Budget,
) -> Result<Vec<(PrimeIdeal, i64)>> {
    if alpha.is_zero() {
        return Err(Error::ZeroElement);
    }
    if field.is_rationals() {
        let fs = arith::factor_rational(alpha.rational_part(), budget)?;
        let mut out = Vec::with_capacity(fs.len());
        for (p, e) in fs {
            let p = p.to_u64().ok_or(Error::FactorizationTooLarge)?;
            out.push((PrimeIdeal::rational(p), e));
        }
        return Ok(out);
    }
    let (x, y, q) = alpha.integral_coords();
    let n = &x * &x - BigInt::from(field.d) * &y * &y;
    let mut rational_primes: Vec<u64> = Vec::new();
    for base in [&n, &q] {
        if base.is_one() {
            continue;
        }
        let u = base.abs().to_biguint().unwrap();
        for (p, _) in arith::factor_biguint(&u, budget)? {
            let p = p.to_u64().ok_or(Error::FactorizationTooLarge)?;
            if !rational_primes.contains(&p) {
                rational_primes.push(p);
            }
        }
    }
    rational_primes.sort_unstable();
    let mut out = Vec::new();
    for p in rational_primes {
        for prime in primes_above(field, p) {
            let v = valuation(field, alpha, &prime)?;
            if v != 0 {
                out.push((prime, v));
            }
        }
    }
    out.sort_by_key(|a| a.0);
    Ok(out)
}

/// The almost absolute value |alpha|_v: residue norm to the power -ord at
/// finite places, |sigma(alpha)| at real places, |sigma(alpha)|^2 at the
/// complex place. Zero maps to zero everywhere.
pub fn local_value(field: NumberField, alpha: &FieldElement, place: &Place) -> f64 {
    if alpha.is_zero() {
        return 0.0;
    }
    match place {
        Place::Finite(prime) => {
            let v = valuation(field, alpha, prime).expect("nonzero element");
            let f = prime.residue_degree() as i64;
            let exponent = -v * f;
            // p^exponent, exact through rationals.
            let p = BigRational::from(BigInt::from(prime.p));
            let val = if exponent >= 0 {
                num_traits::pow(p, exponent as usize)
            } else {
                num_traits::pow(p.recip(), (-exponent) as usize)
            };
            arith::rat_to_f64(&val)
        }
        Place::Real(i) => {
            let (re, _) = alpha.embed(*i);
            re.abs()
        }
        Place::Complex => {
            // |sigma(alpha)|^2 = a^2 - d b^2 is rational and exact.
            arith::rat_to_f64(&alpha.norm()).abs()
        }
    }
}

/// Class number, regulator, roots of unity and signature data.
#[derive(Debug, Clone, Serialize)]
pub struct FieldInvariants {
    pub class_number: u64,
    pub regulator: f64,
    pub roots_of_unity: u32,
    pub abs_discriminant: u64,
    pub m1: u32,
    pub m2: u32,
    pub degree: u32,
}

impl FieldInvariants {
    /// Signed discriminant recovered from the signature.
    pub fn signed_discriminant(&self) -> i64 {
        if self.m2 > 0 && self.degree == 2 {
            -(self.abs_discriminant as i64)
        } else {
            self.abs_discriminant as i64
        }
    }
}

/// Exact invariants for Q and quadratic fields. The regulator convention is
/// 1 when the unit group has rank zero, so downstream formulas evaluate
/// without special cases.
pub fn field_invariants(field: &NumberField) -> Result<FieldInvariants> {
    match field.kind {
        FieldKind::Rationals => Ok(FieldInvariants {
            class_number: 1,
            regulator: 1.0,
            roots_of_unity: 2,
            abs_discriminant: 1,
            m1: 1,
            m2: 0,
            degree: 1,
        }),
        FieldKind::Quadratic if field.d < 0 => {
            let disc = field.discriminant;
            let h = reduced_forms_count(disc);
            let w = match disc {
                -3 => 6,
                -4 => 4,
                _ => 2,
            };
            Ok(FieldInvariants {
                class_number: h,
                regulator: 1.0,
                roots_of_unity: w,
                abs_discriminant: field.abs_discriminant(),
                m1: 0,
                m2: 1,
                degree: 2,
            })
        }
        FieldKind::Quadratic => {
            let d = field.d as u64;
            let (x, y, k, _) = arith::fundamental_unit(d);
            let regulator = arith::log_unit(&x, &y, d, k);
            let h = real_quadratic_class_number(field.discriminant, regulator);
            Ok(FieldInvariants {
                class_number: h,
                regulator,
                roots_of_unity: 2,
                abs_discriminant: field.abs_discriminant(),
                m1: 2,
                m2: 0,
                degree: 2,
            })
        }
    }
}

/// Count reduced binary quadratic forms (a, b, c) of discriminant D < 0.
fn reduced_forms_count(disc: i64) -> u64 {
    debug_assert!(disc < 0);
    let abs = (-disc) as u64;
    let mut h = 0u64;
    let mut b = if disc.rem_euclid(2) == 0 { 0u64 } else { 1u64 };
    while 3 * b * b <= abs {
        let m = (b * b + abs) / 4;
        let mut a = b.max(1);
        while a * a <= m {
            if m.is_multiple_of(a) {
                let c = m / a;
                // Reduced: |b| <= a <= c with b >= 0 when |b| = a or a = c.
                if b == 0 || a == b || a == c {
                    h += 1;
                } else {
                    h += 2;
                }
            }
            a += 1;
        }
        b += 2;
    }
    h
}

/// Class number of a real quadratic field from the analytic class number
/// formula: h = sqrt(D) L(1, chi_D) / (2 Reg), with the L-series partial sum
/// carried far enough that the proven tail bound pins the nearest integer.
fn real_quadratic_class_number(disc: i64, regulator: f64) -> u64 {
    debug_assert!(disc > 0);
    let sqrt_d = (disc as f64).sqrt();
    let mut n_terms = 4 * disc.unsigned_abs().max(64);
    loop {
        let (l_value, tail) = zeta::dirichlet_l_partial(disc, 1, n_terms);
        let h_raw = sqrt_d * l_value / (2.0 * regulator);
        let h_err = sqrt_d * tail / (2.0 * regulator);
        let rounded = h_raw.round();
        if h_err < 0.2 && (h_raw - rounded).abs() + h_err < 0.45 && rounded >= 1.0 {
            return rounded as u64;
        }
        n_terms *= 2;
        assert!(n_terms < (1 << 34), "class number sum failed to converge");
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn elem(field: NumberField, a: (i64, i64), b: (i64, i64)) -> FieldElement {
        FieldElement::new(field, rat(a.0, a.1), rat(b.0, b.1)).unwrap()
    }

    #[test]
    fn make_field_examples() {
        let q = NumberField::rationals();
        assert_eq!(q.discriminant(), 1);
        assert_eq!((q.real_embeddings(), q.complex_pairs()), (1, 0));

        let gauss = NumberField::quadratic(-1).unwrap();
        assert_eq!(gauss.discriminant(), -4);
        assert_eq!((gauss.real_embeddings(), gauss.complex_pairs()), (0, 1));

        assert_eq!(NumberField::quadratic(12), Err(Error::NotSquarefree(2)));
        assert_eq!(NumberField::quadratic(1), Err(Error::DisallowedValue(1)));
        assert_eq!(NumberField::quadratic(0), Err(Error::DisallowedValue(0)));

        let root5 = NumberField::quadratic(5).unwrap();
        assert_eq!(root5.discriminant(), 5);
        let root3 = NumberField::quadratic(3).unwrap();
        assert_eq!(root3.discriminant(), 12);
    }

    #[test]
    fn invariants_examples() {
        let q = field_invariants(&NumberField::rationals()).unwrap();
        assert_eq!(
            (q.class_number, q.roots_of_unity, q.regulator),
            (1, 2, 1.0)
        );

        let gauss = field_invariants(&NumberField::quadratic(-1).unwrap()).unwrap();
        assert_eq!((gauss.class_number, gauss.roots_of_unity), (1, 4));

        let eis = field_invariants(&NumberField::quadratic(-3).unwrap()).unwrap();
        assert_eq!((eis.class_number, eis.roots_of_unity), (1, 6));

        let k20 = field_invariants(&NumberField::quadratic(-5).unwrap()).unwrap();
        assert_eq!(k20.class_number, 2);

        let k23 = field_invariants(&NumberField::quadratic(-23).unwrap()).unwrap();
        assert_eq!(k23.class_number, 3);

        let root5 = field_invariants(&NumberField::quadratic(5).unwrap()).unwrap();
        assert_eq!(root5.class_number, 1);
        assert!((root5.regulator - 0.4812118250596035).abs() < 1e-9);

        let root2 = field_invariants(&NumberField::quadratic(2).unwrap()).unwrap();
        assert_eq!(root2.class_number, 1);
        assert!((root2.regulator - (1.0 + 2f64.sqrt()).ln()).abs() < 1e-9);

        // h(Q(sqrt 10)) = 2 is the first real quadratic class number > 1.
        let root10 = field_invariants(&NumberField::quadratic(10).unwrap()).unwrap();
        assert_eq!(root10.class_number, 2);
    }

    #[test]
    fn factor_rationals() {
        let q = NumberField::rationals();
        let alpha = FieldElement::from_rational(q, rat(8, 9));
        let f = factor_element(q, &alpha, &Budget::default()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!((f[0].0.p, f[0].1), (2, 3));
        assert_eq!((f[1].0.p, f[1].1), (3, -2));

        let zero = FieldElement::zero(q);
        assert_eq!(
            factor_element(q, &zero, &Budget::default()),
            Err(Error::ZeroElement)
        );
    }

    #[test]
    fn factor_gaussian() {
        let k = NumberField::quadratic(-1).unwrap();
        // 1 + i has norm 2; the prime above 2 ramifies.
        let alpha = elem(k, (1, 1), (1, 1));
        let f = factor_element(k, &alpha, &Budget::default()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.kind, SplittingKind::Ramified);
        assert_eq!((f[0].0.p, f[0].1), (2, 1));

        // 5 = (2+i)(2-i): the element 2+i has valuation 1 at one split prime.
        let beta = elem(k, (2, 1), (1, 1));
        let f = factor_element(k, &beta, &Budget::default()).unwrap();
        assert_eq!(f.len(), 1);
        assert_eq!(f[0].0.kind, SplittingKind::Split);
        assert_eq!((f[0].0.p, f[0].1), (5, 1));

        // Cancellation in the norm must not hide support: (1+2i)/(1-2i).
        let gamma = elem(k, (-3, 5), (4, 5));
        let f = factor_element(k, &gamma, &Budget::default()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].1 + f[1].1, 0);
        assert!(f.iter().all(|(p, _)| p.p == 5));
    }

    #[test]
    fn valuation_examples() {
        let q = NumberField::rationals();
        let alpha = FieldElement::from_rational(q, rat(8, 9));
        assert_eq!(
            valuation(q, &alpha, &PrimeIdeal::rational(3)).unwrap(),
            -2
        );
        let seven = FieldElement::from_int(q, 7);
        assert_eq!(valuation(q, &seven, &PrimeIdeal::rational(5)).unwrap(), 0);

        // The golden ratio is a unit: trivial factorization.
        let k = NumberField::quadratic(5).unwrap();
        let phi = elem(k, (1, 2), (1, 2));
        let f = factor_element(k, &phi, &Budget::default()).unwrap();
        assert!(f.is_empty());
    }

    #[test]
    fn split_prime_at_two() {
        // d = 17 = 1 mod 8: 2 splits; omega = (1+sqrt 17)/2 has norm -4.
        let k = NumberField::quadratic(17).unwrap();
        let omega = elem(k, (1, 2), (1, 2));
        let primes = primes_above(k, 2);
        assert_eq!(primes.len(), 2);
        let v0 = valuation(k, &omega, &primes[0]).unwrap();
        let v1 = valuation(k, &omega, &primes[1]).unwrap();
        let mut vals = [v0, v1];
        vals.sort();
        assert_eq!(vals, [0, 2]);
    }

    #[test]
    fn local_values() {
        let q = NumberField::rationals();
        let alpha = FieldElement::from_rational(q, rat(8, 9));
        let v3 = local_value(q, &alpha, &Place::Finite(PrimeIdeal::rational(3)));
        assert_eq!(v3, 9.0);
        let zero = FieldElement::zero(q);
        assert_eq!(
            local_value(q, &zero, &Place::Finite(PrimeIdeal::rational(3))),
            0.0
        );

        let k = NumberField::quadratic(-1).unwrap();
        let alpha = elem(k, (1, 1), (1, 1));
        assert_eq!(local_value(k, &alpha, &Place::Complex), 2.0);
    }

    #[test]
    fn product_formula_spot() {
        for (field, a, b) in [
            (NumberField::rationals(), (8, 9), (0, 1)),
            (NumberField::quadratic(-1).unwrap(), (3, 2), (5, 7)),
            (NumberField::quadratic(5).unwrap(), (-4, 3), (2, 9)),
            (NumberField::quadratic(17).unwrap(), (1, 2), (3, 2)),
        ] {
            let alpha = elem(field, a, b);
            let mut sum = 0.0;
            for (prime, _) in factor_element(field, &alpha, &Budget::default()).unwrap() {
                sum += local_value(field, &alpha, &Place::Finite(prime)).ln();
            }
            for place in field.infinite_places() {
                sum += local_value(field, &alpha, &place).ln();
            }
            assert!(sum.abs() < 1e-9, "product formula violated: {sum}");
        }
    }

    #[test]
    fn splitting_matches_kronecker() {
        let k = NumberField::quadratic(-5).unwrap();
        for p in [3u64, 7, 11, 13, 23, 29, 31] {
            let chi = arith::kronecker(k.discriminant(), p as i64);
            let ps = primes_above(k, p);
            match chi {
                1 => assert_eq!(ps.len(), 2),
                -1 => assert_eq!(ps[0].kind, SplittingKind::Inert),
                _ => assert_eq!(ps[0].kind, SplittingKind::Ramified),
            }
        }
    }

    #[test]
    fn display_roundtrip_shapes() {
        let k = NumberField::quadratic(5).unwrap();
        let x = elem(k, (1, 2), (-3, 4));
        assert_eq!(x.to_string(), "1/2-3/4*sqrt(5)");
        assert_eq!(NumberField::rationals().to_string(), "Q");
        assert_eq!(k.to_string(), "Q(sqrt,5)");
    }
}
