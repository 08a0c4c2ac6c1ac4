//! Fixed-precision dyadic floats (BigInt mantissa times a power of two) and
//! a simultaneous-iteration complex root finder built on them. The iteration
//! runs at a chosen mantissa width; certification of the resulting
//! approximations happens elsewhere in exact arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith;

/// m * 2^e with |m| kept below 2^prec by the context operations.
#[derive(Debug, Clone, PartialEq)]
pub struct Dy {
    m: BigInt,
    e: i64,
}

impl Dy {
    pub fn zero() -> Self {
        Dy {
            m: BigInt::zero(),
            e: 0,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.m.is_zero()
    }

    pub fn to_rational(&self) -> BigRational {
        if self.e >= 0 {
            BigRational::from(&self.m << self.e as u64)
        } else {
            BigRational::new(self.m.clone(), BigInt::from(1) << (-self.e) as u64)
        }
    }

    pub fn to_f64(&self) -> f64 {
        arith::rat_to_f64(&self.to_rational())
    }
}

/// Rounding context: all results renormalized to at most `prec` mantissa bits.
#[derive(Debug, Clone, Copy)]
pub struct Ctx {
    pub prec: u32,
}

impl Ctx {
    pub fn new(prec: u32) -> Self {
        Ctx { prec }
    }

    fn norm(&self, mut x: Dy) -> Dy {
        let bits = x.m.magnitude().bits();
        if bits > self.prec as u64 {
            let drop = (bits - self.prec as u64) as i64;
            x.m >>= drop as u64;
            x.e += drop;
        }
        x
    }

    pub fn from_f64(&self, v: f64) -> Dy {
        if v == 0.0 {
            return Dy::zero();
        }
        let bits = v.to_bits();
        let sign = if v < 0.0 { -1 } else { 1 };
        let exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (m, e) = if exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), exp - 1075)
        };
        self.norm(Dy {
            m: BigInt::from(sign) * BigInt::from(m),
            e,
        })
    }

    pub fn from_rational(&self, q: &BigRational) -> Dy {
        if q.is_zero() {
            return Dy::zero();
        }
        let num = q.numer();
        let den = q.denom();
        let shift = self.prec as i64 + den.magnitude().bits() as i64
            - num.magnitude().bits() as i64
            + 2;
        let shift = shift.max(0);
        let m = (num << shift as u64) / den;
        self.norm(Dy {
            m,
            e: -shift,
        })
    }

    pub fn add(&self, a: &Dy, b: &Dy) -> Dy {
        if a.is_zero() {
            return b.clone();
        }
        if b.is_zero() {
            return a.clone();
        }
        let (lo, hi) = if a.e <= b.e { (a, b) } else { (b, a) };
        let diff = (hi.e - lo.e) as u64;
        // If the exponents are too far apart the smaller operand is below
        // the rounding error of the larger one.
        if diff > self.prec as u64 + 4 {
            return self.norm(hi.clone());
        }
        self.norm(Dy {
            m: (&hi.m << diff) + &lo.m,
            e: lo.e,
        })
    }

    pub fn neg(&self, a: &Dy) -> Dy {
        Dy {
            m: -a.m.clone(),
            e: a.e,
        }
    }

    pub fn sub(&self, a: &Dy, b: &Dy) -> Dy {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Dy, b: &Dy) -> Dy {
        if a.is_zero() || b.is_zero() {
            return Dy::zero();
        }
        self.norm(Dy {
            m: &a.m * &b.m,
            e: a.e + b.e,
        })
    }

    pub fn div(&self, a: &Dy, b: &Dy) -> Dy {
        assert!(!b.is_zero(), "dyadic division by zero");
        if a.is_zero() {
            return Dy::zero();
        }
        let shift = self.prec as i64 + b.m.magnitude().bits() as i64
            - a.m.magnitude().bits() as i64
            + 2;
        let shift = shift.max(0);
        let m = (&a.m << shift as u64) / &b.m;
        self.norm(Dy {
            m,
            e: a.e - b.e - shift,
        })
    }

    /// |a| < 2^k, conservatively.
    pub fn abs_below_pow2(&self, a: &Dy, k: i64) -> bool {
        if a.is_zero() {
            return true;
        }
        let bits = a.m.magnitude().bits() as i64;
        a.e + bits < k
    }
}

/// Complex value with dyadic parts.
#[derive(Debug, Clone, PartialEq)]
pub struct CDy {
    pub re: Dy,
    pub im: Dy,
}

impl CDy {
    pub fn zero() -> Self {
        CDy {
            re: Dy::zero(),
            im: Dy::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_rational_pair(&self) -> (BigRational, BigRational) {
        (self.re.to_rational(), self.im.to_rational())
    }
}

impl Ctx {
    pub fn cadd(&self, a: &CDy, b: &CDy) -> CDy {
        CDy {
            re: self.add(&a.re, &b.re),
            im: self.add(&a.im, &b.im),
        }
    }

    pub fn csub(&self, a: &CDy, b: &CDy) -> CDy {
        CDy {
            re: self.sub(&a.re, &b.re),
            im: self.sub(&a.im, &b.im),
        }
    }

    pub fn cmul(&self, a: &CDy, b: &CDy) -> CDy {
        CDy {
            re: self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im)),
            im: self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re)),
        }
    }

    pub fn cdiv(&self, a: &CDy, b: &CDy) -> CDy {
        let den = self.add(&self.mul(&b.re, &b.re), &self.mul(&b.im, &b.im));
        let num_re = self.add(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let num_im = self.sub(&self.mul(&a.im, &b.re), &self.mul(&a.re, &b.im));
        CDy {
            re: self.div(&num_re, &den),
            im: self.div(&num_im, &den),
        }
    }

    pub fn cfrom_f64(&self, re: f64, im: f64) -> CDy {
        CDy {
            re: self.from_f64(re),
            im: self.from_f64(im),
        }
    }

    /// Horner evaluation of a polynomial with complex dyadic coefficients.
    pub fn ceval(&self, coeffs: &[CDy], z: &CDy) -> CDy {
        let mut acc = CDy::zero();
        for c in coeffs.iter().rev() {
            acc = self.cadd(&self.cmul(&acc, z), c);
        }
        acc
    }
}

/// Simultaneous (Weierstrass) iteration for all roots of a squarefree
/// polynomial with complex dyadic coefficients. Returns the approximations
/// after convergence of the corrections below 2^(-prec + 8) relative scale;
/// the caller certifies them independently.
pub fn weierstrass_roots(ctx: &Ctx, coeffs: &[CDy], seeds: Option<Vec<CDy>>) -> Vec<CDy> {
    let n = coeffs.len() - 1;
    assert!(n >= 1);
    let lead = coeffs.last().unwrap().clone();
    // Scale to monic once; the iteration is cleaner.
    let monic: Vec<CDy> = coeffs.iter().map(|c| ctx.cdiv(c, &lead)).collect();
    let mut zs: Vec<CDy> = match seeds {
        Some(s) => s,
        None => {
            // Cauchy-style radius from f64 magnitudes.
            let mags: Vec<f64> = monic
                .iter()
                .take(n)
                .map(|c| {
                    let re = c.re.to_f64();
                    let im = c.im.to_f64();
                    (re * re + im * im).sqrt()
                })
                .collect();
            let radius = 1.0 + mags.iter().cloned().fold(0.0f64, f64::max);
            (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.7;
                    ctx.cfrom_f64(radius * theta.cos(), radius * theta.sin())
                })
                .collect()
        }
    };
    let tol = -(ctx.prec as i64) + 8;
    for _ in 0..600 {
        let mut done = true;
        for i in 0..n {
            let zi = zs[i].clone();
            let mut denom = CDy {
                re: ctx.from_f64(1.0),
                im: Dy::zero(),
            };
            for (j, zj) in zs.iter().enumerate() {
                if j != i {
                    denom = ctx.cmul(&denom, &ctx.csub(&zi, zj));
                }
            }
            let val = ctx.ceval(&monic, &zi);
            let w = ctx.cdiv(&val, &denom);
            // Relative scale: compare against max(1, |z|)-ish via exponents.
            let scale = 0i64.max(exponent_of(&zi));
            if !(ctx.abs_below_pow2(&w.re, tol + scale) && ctx.abs_below_pow2(&w.im, tol + scale))
            {
                done = false;
            }
            zs[i] = ctx.csub(&zi, &w);
        }
        if done {
            break;
        }
    }
    zs
}

fn exponent_of(z: &CDy) -> i64 {
    let er = if z.re.is_zero() {
        i64::MIN / 2
    } else {
        z.re.e + z.re.m.magnitude().bits() as i64
    };
    let ei = if z.im.is_zero() {
        i64::MIN / 2
    } else {
        z.im.e + z.im.m.magnitude().bits() as i64
    };
    er.max(ei)
}

/// Rational enclosure of sqrt(d) for use when embedding quadratic
/// coefficients: (lo, hi) with lo <= sqrt(d) <= hi at roughly `bits` bits.
pub fn sqrt_enclosure(d: u64, bits: u32) -> (BigRational, BigRational) {
    let q = BigRational::from(BigInt::from(d));
    arith::rat_sqrt_bounds(&q, bits)
}

/// Midpoint dyadic approximation of a + b sqrt(|d|) at the context precision.
pub fn approx_quadratic(ctx: &Ctx, a: &BigRational, b: &BigRational, d_abs: u64) -> Dy {
    if b.is_zero() {
        return ctx.from_rational(a);
    }
    let (lo, hi) = sqrt_enclosure(d_abs, ctx.prec + 8);
    let mid = (&lo + &hi) / BigRational::from(BigInt::from(2));
    ctx.from_rational(&(a + b * mid))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dyadic_roundtrip() {
        let ctx = Ctx::new(64);
        let q = BigRational::new(BigInt::from(1), BigInt::from(3));
        let d = ctx.from_rational(&q);
        let back = d.to_f64();
        assert!((back - 1.0 / 3.0).abs() < 1e-18);
    }

    #[test]
    fn finds_roots_of_x2_minus_2() {
        let ctx = Ctx::new(64);
        let coeffs = vec![
            ctx.cfrom_f64(-2.0, 0.0),
            CDy::zero(),
            ctx.cfrom_f64(1.0, 0.0),
        ];
        let roots = weierstrass_roots(&ctx, &coeffs, None);
        let mut vals: Vec<f64> = roots.iter().map(|z| z.re.to_f64()).collect();
        vals.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((vals[0] + std::f64::consts::SQRT_2).abs() < 1e-14);
        assert!((vals[1] - std::f64::consts::SQRT_2).abs() < 1e-14);
        for z in &roots {
            assert!(z.im.to_f64().abs() < 1e-14);
        }
    }

    #[test]
    fn finds_unit_circle_roots() {
        let ctx = Ctx::new(80);
        // x^2 + x + 1: roots on the unit circle.
        let coeffs = vec![
            ctx.cfrom_f64(1.0, 0.0),
            ctx.cfrom_f64(1.0, 0.0),
            ctx.cfrom_f64(1.0, 0.0),
        ];
        let roots = weierstrass_roots(&ctx, &coeffs, None);
        for z in &roots {
            let re = z.re.to_f64();
            let im = z.im.to_f64();
            assert!((re * re + im * im - 1.0).abs() < 1e-15);
        }
    }
}
