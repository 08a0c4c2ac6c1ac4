//! The explicit constant pipeline: the evaluation-point count M(r, s), the
//! density constant of bounded-height point counting, the full constant
//! chain down to the cardinality bounds C0 and C1, the exhaustive key
//! inequality, the counting band, and the prefix-length threshold M0 for
//! periodic sequences.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use crate::arith;
use crate::error::{Error, Result};
use crate::field::{field_invariants, FieldElement, FieldInvariants, NumberField};
use crate::heights::element_absolute_log_height;
use crate::nevanlinna::PlaceSet;
use crate::zeta;

/// Number of evaluation points needed for degree r and multiplicity bound s:
/// 2r^2 + 6r + 1 when r = s, and 2sr^2 + sr + 1 otherwise.
pub fn m_of(r: u32, s: u32) -> Result<u64> {
    if s < 2 || s > r {
        return Err(Error::BadRange);
    }
    let (r, s) = (r as u64, s as u64);
    Ok(if r == s {
        2 * r * r + 6 * r + 1
    } else {
        2 * s * r * r + s * r + 1
    })
}

/// The density constant
/// a_{k,r} = (h Reg / (w zeta_k(r+1))) (2^m1 (2 pi)^m2 / sqrt|disc|)^(r+1)
///           (r+1)^(m1+m2-1),
/// with the Dedekind zeta value computed to 1e-9 for degree <= 2 fields.
pub fn schanuel_constant(inv: &FieldInvariants, r: u32) -> Result<f64> {
    if r < 1 {
        return Err(Error::BadRange);
    }
    let zeta_value = if inv.degree == 1 {
        zeta::riemann_zeta(r + 1, 1e-9)?
    } else if inv.degree == 2 {
        let field = NumberField::quadratic(disc_to_d(inv.signed_discriminant())?)?;
        zeta::dedekind_zeta(&field, r + 1, 1e-9)?
    } else {
        return Err(Error::UnsupportedDegree);
    };
    Ok(schanuel_constant_with_zeta(inv, r, zeta_value))
}

/// The same constant with a caller-supplied zeta value, for invariants of
/// fields this crate cannot evaluate itself.
pub fn schanuel_constant_with_zeta(inv: &FieldInvariants, r: u32, zeta_value: f64) -> f64 {
    let rp1 = (r + 1) as f64;
    let head = inv.class_number as f64 * inv.regulator / (inv.roots_of_unity as f64 * zeta_value);
    let body = (2f64.powi(inv.m1 as i32) * (2.0 * std::f64::consts::PI).powi(inv.m2 as i32)
        / (inv.abs_discriminant as f64).sqrt())
    .powi(r as i32 + 1);
    let tail = rp1.powi(inv.m1 as i32 + inv.m2 as i32 - 1);
    head * body * tail
}

/// Recover the squarefree d from a fundamental quadratic discriminant.
fn disc_to_d(disc: i64) -> Result<i64> {
    if disc.rem_euclid(4) == 1 {
        Ok(disc)
    } else if disc % 4 == 0 {
        Ok(disc / 4)
    } else {
        Err(Error::BadRange)
    }
}

/// Inputs of the constant chain.
#[derive(Debug, Clone)]
pub struct BoundInputs {
    pub r: u32,
    pub s: u32,
    pub invariants: FieldInvariants,
    pub terms: Vec<FieldElement>,
    pub places: PlaceSet,
    pub n_exceptional: u64,
    pub c5: f64,
    pub c6: f64,
    /// The lower-bound O-term can be added (as displayed in the chain) or
    /// subtracted (as in the counting band); default is to add.
    pub subtract_o_term: bool,
}

impl BoundInputs {
    pub fn new(r: u32, s: u32, terms: Vec<FieldElement>, places: PlaceSet) -> Result<Self> {
        let invariants = field_invariants(&places.field())?;
        Ok(BoundInputs {
            r,
            s,
            invariants,
            terms,
            places,
            n_exceptional: 0,
            c5: 0.0,
            c6: 0.0,
            subtract_o_term: false,
        })
    }
}

/// The full constant chain. Serialized with one key per chain symbol.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    #[serde(rename = "M")]
    pub m: u64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "aS")]
    pub a_s: f64,
    pub eps: f64,
    pub c: f64,
    pub c1: f64,
    pub c2: f64,
    pub c3: f64,
    pub c4: f64,
    pub akr: f64,
    pub bkr: f64,
    #[serde(rename = "C0")]
    pub c0: f64,
    #[serde(rename = "C1")]
    pub c_1: f64,
}

/// Evaluate the whole chain:
///   B  = max h(b_i)                 (absolute heights)
///   eps = 1/(r+1)
///   c1 = M (B + r log 2) + 2 r log r
///   c2 = M (B + log 2)/s + a(S) + A(r) + 4r(r-1)
///   c  = 1/(m r^3 (r+1)^2) - c1 - c2
///   c3 = 1/(m r (r+1)),  c4 = c3^(m r (r+1) - r)
///   akr from the density constant, bkr = r akr c3^(m r (r+1))
///   C0 = bkr 2^(-m r (r+1)) +/- c5 c4 c3
///   C1 = r (bkr 2^(m r (r+1)) + c6 c4 + n_exceptional)
pub fn compute_bounds(inputs: &BoundInputs) -> Result<BoundReport> {
    let r = inputs.r;
    let s = inputs.s;
    let m_required = m_of(r, s)?;
    if inputs.terms.len() as u64 != m_required {
        return Err(Error::SizeMismatch {
            expected: m_required as usize,
            got: inputs.terms.len(),
        });
    }
    for i in 0..inputs.terms.len() {
        for j in i + 1..inputs.terms.len() {
            if inputs.terms[i] == inputs.terms[j] {
                return Err(Error::DuplicateSequenceTerms);
            }
        }
    }
    let field = inputs.places.field();
    let m_deg = inputs.invariants.degree as u64;
    let mut b_max = 0.0f64;
    for t in &inputs.terms {
        b_max = b_max.max(element_absolute_log_height(field, t)?);
    }
    let a_s = inputs.places.a_s();
    let rf = r as f64;
    let ln2 = std::f64::consts::LN_2;
    // Exact rational pieces of the chain, converted at the end.
    let eps_exact = BigRational::new(BigInt::one(), BigInt::from(r + 1));
    let exp = m_deg * r as u64 * (r as u64 + 1);
    let c3_exact = BigRational::new(BigInt::one(), BigInt::from(m_deg * r as u64 * (r as u64 + 1)));
    let c4_exact = num_traits::pow(c3_exact.clone(), (exp - r as u64) as usize);
    let c1 = m_required as f64 * (b_max + rf * ln2) + 2.0 * rf * rf.ln();
    let c2 = m_required as f64 * (b_max + ln2) / s as f64
        + a_s
        + crate::heights::a_of(r, field.is_rationals())
        + 4.0 * rf * (rf - 1.0);
    let c_head = BigRational::new(
        BigInt::one(),
        BigInt::from(m_deg)
            * BigInt::from(r).pow(3)
            * BigInt::from(r as u64 + 1).pow(2),
    );
    let c = arith::rat_to_f64(&c_head) - c1 - c2;
    let akr = schanuel_constant(&inputs.invariants, r)?;
    let c3 = arith::rat_to_f64(&c3_exact);
    let c4 = arith::rat_to_f64(&c4_exact);
    let bkr = rf * akr * arith::rat_to_f64(&num_traits::pow(c3_exact.clone(), exp as usize));
    let two_pow = 2f64.powi(exp as i32);
    let o_term = inputs.c5 * c4 * c3;
    let c0 = if inputs.subtract_o_term {
        bkr / two_pow - o_term
    } else {
        bkr / two_pow + o_term
    };
    let c_1 = rf * bkr * two_pow + rf * inputs.c6 * c4 + rf * inputs.n_exceptional as f64;
    Ok(BoundReport {
        m: m_required,
        b: b_max,
        a_s,
        eps: arith::rat_to_f64(&eps_exact),
        c,
        c1,
        c2,
        c3,
        c4,
        akr,
        bkr,
        c0,
        c_1,
    })
}

/// Exhaustive check of M(r,s) (1 - s+/s) - 2d^2 - d >= 1/r over all
/// admissible (d, s+), in exact rational arithmetic.
#[derive(Debug, Clone, Serialize)]
pub struct KeyInequalityReport {
    pub pass: bool,
    /// Minimum of the left-hand side over all cases, as an exact fraction.
    pub min_lhs: String,
    pub min_lhs_value: f64,
    pub argmin_d: u32,
    pub argmin_s_plus: u32,
    pub cases: usize,
}

pub fn key_inequality_check(r: u32, s: u32) -> Result<KeyInequalityReport> {
    if s < 2 || s > r {
        return Err(Error::BadRange);
    }
    let m = BigRational::from(BigInt::from(m_of(r, s)?));
    let threshold = BigRational::new(BigInt::one(), BigInt::from(r));
    let mut min_lhs: Option<(BigRational, u32, u32)> = None;
    let mut cases = 0usize;
    for d in 1..=r {
        for s_plus in 1..s {
            // The factorization shape forces r - s+ >= d - 1.
            if ((r - s_plus) as i64) < d as i64 - 1 {
                continue;
            }
            cases += 1;
            let ratio = BigRational::new(BigInt::from(s_plus), BigInt::from(s));
            let lhs = &m * (BigRational::one() - ratio)
                - BigRational::from(BigInt::from(2 * (d as u64) * (d as u64)))
                - BigRational::from(BigInt::from(d as u64));
            match &min_lhs {
                Some((current, _, _)) if lhs >= *current => {}
                _ => min_lhs = Some((lhs, d, s_plus)),
            }
        }
    }
    let (min, d, s_plus) = min_lhs.ok_or(Error::BadRange)?;
    Ok(KeyInequalityReport {
        pass: min >= threshold,
        min_lhs: min.to_string(),
        min_lhs_value: arith::rat_to_f64(&min),
        argmin_d: d,
        argmin_s_plus: s_plus,
        cases,
    })
}

/// Counting band for points of degree <= r and height <= T:
///   lower = b 2^(-m r (r+1)) - c5 T1 T,  upper = b 2^(m r (r+1)) + c6 T1
/// with b = r a_{k,r} T^(m r (r+1)) and T1 = T^(m r (r+1) - r).
pub fn counting_band(
    inv: &FieldInvariants,
    r: u32,
    t: f64,
    c5: f64,
    c6: f64,
) -> Result<(f64, f64)> {
    if r < 1 || t < 0.0 {
        return Err(Error::BadRange);
    }
    let akr = schanuel_constant(inv, r)?;
    let exp = (inv.degree * r * (r + 1)) as i32;
    let b = r as f64 * akr * t.powi(exp);
    let t1 = t.powi(exp - r as i32);
    Ok((
        b * 2f64.powi(-exp) - c5 * t1 * t,
        b * 2f64.powi(exp) + c6 * t1,
    ))
}

/// Prefix-length threshold for a sequence whose derived sequence is periodic
/// with period m: m (n0 + m_pts + 2) when m <= m_pts, else m (n0 + 2).
pub fn m0_of(period: u64, n0: u64, m_pts: u64) -> Result<u64> {
    if period < 1 || m_pts < 1 {
        return Err(Error::BadRange);
    }
    Ok(if period <= m_pts {
        period * (n0 + m_pts + 2)
    } else {
        period * (n0 + 2)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::field_invariants;

    #[test]
    fn m_values() {
        assert_eq!(m_of(2, 2).unwrap(), 21);
        assert_eq!(m_of(3, 2).unwrap(), 43);
        assert_eq!(m_of(3, 3).unwrap(), 37);
        assert_eq!(m_of(1, 2), Err(Error::BadRange));
        // Increasing in r for fixed s, and always at least 21.
        let mut prev = 0;
        for r in 2..=12 {
            let m = m_of(r, 2).unwrap();
            assert!(m > prev && m >= 21);
            prev = m;
        }
    }

    #[test]
    fn schanuel_values() {
        let q = field_invariants(&NumberField::rationals()).unwrap();
        let a1 = schanuel_constant(&q, 1).unwrap();
        assert!((a1 - 2.0 / zeta::riemann_zeta(2, 1e-12).unwrap()).abs() < 1e-9);
        assert!((a1 - 1.2158542037080532).abs() < 1e-6);

        // (1/(2 zeta(3))) * 2^3 * 3^(m1+m2-1) with m1 + m2 - 1 = 0.
        let a2 = schanuel_constant(&q, 2).unwrap();
        assert!((a2 - 8.0 / (2.0 * 1.2020569031595943)).abs() < 1e-6);

        let gauss = field_invariants(&NumberField::quadratic(-1).unwrap()).unwrap();
        let ag = schanuel_constant(&gauss, 1).unwrap();
        // pi^2 / (4 zeta_k(2)) with zeta_k(2) = zeta(2) G.
        let expected = std::f64::consts::PI.powi(2) / (4.0 * 1.5067030099229850);
        assert!((ag - expected).abs() < 1e-6, "{ag} vs {expected}");
    }

    #[test]
    fn key_inequality_cases() {
        let rep = key_inequality_check(2, 2).unwrap();
        assert!(rep.pass);
        assert_eq!(rep.min_lhs, "1/2");
        assert_eq!((rep.argmin_d, rep.argmin_s_plus), (2, 1));

        let rep = key_inequality_check(3, 2).unwrap();
        assert!(rep.pass);
        assert!(rep.min_lhs_value >= 1.0 / 3.0 - 1e-12);

        let rep = key_inequality_check(12, 12).unwrap();
        assert!(rep.pass);
        assert!(rep.cases <= 144);
    }

    #[test]
    fn m0_cases() {
        assert_eq!(m0_of(1, 10, 21).unwrap(), 33);
        assert_eq!(m0_of(50, 10, 21).unwrap(), 600);
        assert_eq!(m0_of(21, 0, 21).unwrap(), 483);
        assert_eq!(m0_of(0, 1, 1), Err(Error::BadRange));
    }

    #[test]
    fn chain_monotone_in_places() {
        use crate::field::FieldElement;
        use crate::nevanlinna::PlaceSet;
        let q = NumberField::rationals();
        let terms: Vec<FieldElement> = (1..=21).map(|i| FieldElement::from_int(q, i)).collect();
        let bare = BoundInputs::new(2, 2, terms.clone(), PlaceSet::infinite_only(q)).unwrap();
        let enlarged =
            BoundInputs::new(2, 2, terms, PlaceSet::from_rational_primes(q, &[2, 3])).unwrap();
        let r_bare = compute_bounds(&bare).unwrap();
        let r_large = compute_bounds(&enlarged).unwrap();
        assert!(r_large.a_s > r_bare.a_s);
        assert!(r_large.c < r_bare.c);
    }

    #[test]
    fn band_shapes() {
        let q = field_invariants(&NumberField::rationals()).unwrap();
        let e = std::f64::consts::E;
        let (lo, hi) = counting_band(&q, 1, e, 0.0, 0.0).unwrap();
        let a = schanuel_constant(&q, 1).unwrap();
        assert!((lo - a * e * e / 4.0).abs() < 1e-9);
        assert!((hi - 4.0 * a * e * e).abs() < 1e-9);
        assert!(lo <= hi);
        let (lo, hi) = counting_band(&q, 2, 1.0, 0.5, 0.5).unwrap();
        assert!(lo.is_finite() && hi.is_finite());
    }
}
