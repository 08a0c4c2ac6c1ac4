//! Integer and rational utilities: deterministic factorization (trial
//! division + Brent's rho), Kronecker symbols, modular square roots,
//! continued-fraction Pell solutions, and exact sign tests for quadratic
//! irrationals.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use once_cell::sync::Lazy;

use crate::error::{Error, Result};

/// Budget for integer factorization. Trial division runs through the prime
/// table up to `trial_limit`; composite cofactors then go to Brent's rho with
/// at most `rho_iterations` iterations per factor.
#[derive(Debug, Clone, Copy)]
pub struct Budget {
    pub trial_limit: u64,
    pub rho_iterations: u64,
    pub seed: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            trial_limit: 1_000_000,
            rho_iterations: 1 << 22,
            seed: 0x9e37_79b9_7f4a_7c15,
        }
    }
}

static SMALL_PRIMES: Lazy<Vec<u32>> = Lazy::new(|| sieve(1_000_000));

fn sieve(limit: u32) -> Vec<u32> {
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            primes.push(p as u32);
            let mut q = p * p;
            while q <= n {
                composite[q] = true;
                q += p;
            }
        }
    }
    primes
}

fn mulmod_u128(a: u128, b: u128, m: u128) -> u128 {
    // m < 2^64 in all call sites, so the product fits in u128.
    (a * b) % m
}

fn powmod_u64(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u128 = 1;
    let mut b = (base % m) as u128;
    let m128 = m as u128;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u128(acc, b, m128);
        }
        b = mulmod_u128(b, b, m128);
        exp >>= 1;
    }
    acc as u64
}

/// Deterministic Miller-Rabin for u64 (the chosen bases cover all of u64).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mulmod_u128(x as u128, x as u128, n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Miller-Rabin with fixed bases; deterministic below 3.3e24 and a strong
/// probable-prime test beyond.
pub fn is_probable_prime(n: &BigUint) -> bool {
    if let Some(n64) = n.to_u64() {
        return is_prime_u64(n64);
    }
    let one = BigUint::one();
    let two = &one + &one;
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - &one;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [2u32, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x == one || x == n_minus_1 {
            continue;
        }
        for _ in 0..s.saturating_sub(1) {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn splitmix(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn brent_rho(n: &BigUint, budget: &Budget) -> Option<BigUint> {
    let one = BigUint::one();
    let mut rng = budget.seed;
    for _ in 0..16 {
        let c = BigUint::from(splitmix(&mut rng) % 1024 + 1);
        let mut y = BigUint::from(splitmix(&mut rng) % 1024 + 2) % n;
        let m = 128u64;
        let mut g = BigUint::one();
        let mut r: u64 = 1;
        let mut q = BigUint::one();
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut used: u64 = 0;
        while g == one && used < budget.rho_iterations {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0u64;
            while k < r && g == one {
                ys = y.clone();
                let steps = m.min(r - k);
                for _ in 0..steps {
                    y = (&y * &y + &c) % n;
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = (&q * &diff) % n;
                }
                g = q.gcd(n);
                k += steps;
                used += steps;
            }
            r *= 2;
        }
        if g == *n {
            // Backtrack one step at a time.
            loop {
                ys = (&ys * &ys + &c) % n;
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if g > one && g < *n {
            return Some(g);
        }
    }
    None
}

/// Factor a positive integer: trial division through the prime table, then
/// Brent's rho on the remaining cofactor. Exponent-sorted output.
pub fn factor_biguint(n: &BigUint, budget: &Budget) -> Result<Vec<(BigUint, u32)>> {
    if n.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut factors: Vec<(BigUint, u32)> = Vec::new();
    let mut m = n.clone();
    let one = BigUint::one();
    if m == one {
        return Ok(factors);
    }
    for (i, &p) in SMALL_PRIMES.iter().enumerate() {
        let p64 = p as u64;
        if p64 > budget.trial_limit {
            break;
        }
        let pb = BigUint::from(p);
        if &pb * &pb > m {
            break;
        }
        if (&m % &pb).is_zero() {
            let mut e = 0u32;
            while (&m % &pb).is_zero() {
                m /= &pb;
                e += 1;
            }
            factors.push((pb, e));
            if m == one {
                return Ok(factors);
            }
        }
        // Periodically test the cofactor so small-smooth numbers exit early.
        if i % 512 == 511 && is_probable_prime(&m) {
            push_factor(&mut factors, m);
            return Ok(factors);
        }
    }
    if m == one {
        return Ok(factors);
    }
    // Trial division proved all factors above the table bound; the cofactor
    // is either prime or needs rho.
    let mut stack = vec![m];
    'stack: while let Some(c) = stack.pop() {
        if c == one {
            continue;
        }
        if is_probable_prime(&c) {
            push_factor(&mut factors, c);
            continue;
        }
        // Perfect powers first: rho struggles on p^2 with tiny budgets.
        for k in [2u32, 3, 5] {
            let r = c.nth_root(k);
            if num_traits::pow(r.clone(), k as usize) == c {
                for _ in 0..k {
                    stack.push(r.clone());
                }
                continue 'stack;
            }
        }
        match brent_rho(&c, budget) {
            Some(d) => {
                stack.push(&c / &d);
                stack.push(d);
            }
            None => return Err(Error::FactorizationTooLarge),
        }
    }
    factors.sort_by(|a, b| a.0.cmp(&b.0));
    let mut merged: Vec<(BigUint, u32)> = Vec::new();
    for (p, e) in factors {
        if let Some(last) = merged.last_mut() {
            if last.0 == p {
                last.1 += e;
                continue;
            }
        }
        merged.push((p, e));
    }
    Ok(merged)
}

fn push_factor(factors: &mut Vec<(BigUint, u32)>, p: BigUint) {
    if let Some(entry) = factors.iter_mut().find(|(q, _)| *q == p) {
        entry.1 += 1;
    } else {
        factors.push((p, 1));
    }
}

/// Factor a nonzero rational: positive exponents from the numerator,
/// negative from the denominator.
pub fn factor_rational(q: &BigRational, budget: &Budget) -> Result<Vec<(BigUint, i64)>> {
    if q.is_zero() {
        return Err(Error::ZeroElement);
    }
    let num = q.numer().abs().to_biguint().unwrap();
    let den = q.denom().abs().to_biguint().unwrap();
    let mut out: Vec<(BigUint, i64)> = factor_biguint(&num, budget)?
        .into_iter()
        .map(|(p, e)| (p, e as i64))
        .collect();
    for (p, e) in factor_biguint(&den, budget)? {
        out.push((p, -(e as i64)));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Kronecker symbol (a|n), fully general (n may be zero, negative or even).
pub fn kronecker(a: i64, n: i64) -> i32 {
    if n == 0 {
        return if a == 1 || a == -1 { 1 } else { 0 };
    }
    let mut a = a;
    let mut n = n;
    let mut result = 1i32;
    if n < 0 {
        n = -n;
        if a < 0 {
            result = -result;
        }
    }
    // Factor out twos from n.
    let mut twos = 0;
    while n % 2 == 0 {
        n /= 2;
        twos += 1;
    }
    if twos > 0 {
        if a % 2 == 0 {
            return 0;
        }
        if twos % 2 == 1 {
            let am8 = ((a % 8) + 8) % 8;
            if am8 == 3 || am8 == 5 {
                result = -result;
            }
        }
    }
    // Now n is odd and positive: Jacobi symbol.
    a = ((a % n) + n) % n;
    while a != 0 {
        while a % 2 == 0 {
            a /= 2;
            let nm8 = n % 8;
            if nm8 == 3 || nm8 == 5 {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            result = -result;
        }
        a %= n;
    }
    if n == 1 {
        result
    } else {
        0
    }
}

/// Square root of `a` modulo an odd prime `p` (Tonelli-Shanks).
pub fn sqrt_mod(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a % 2);
    }
    if powmod_u64(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    if p % 4 == 3 {
        return Some(powmod_u64(a, (p + 1) / 4, p));
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q.is_multiple_of(2) {
        q /= 2;
        s += 1;
    }
    let mut z = 2u64;
    while powmod_u64(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = powmod_u64(z, q, p);
    let mut t = powmod_u64(a, q, p);
    let mut r = powmod_u64(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0u32;
        let mut tt = t;
        while tt != 1 {
            tt = mulmod_u128(tt as u128, tt as u128, p as u128) as u64;
            i += 1;
        }
        let mut b = c;
        for _ in 0..m - i - 1 {
            b = mulmod_u128(b as u128, b as u128, p as u128) as u64;
        }
        m = i;
        c = mulmod_u128(b as u128, b as u128, p as u128) as u64;
        t = mulmod_u128(t as u128, c as u128, p as u128) as u64;
        r = mulmod_u128(r as u128, b as u128, p as u128) as u64;
    }
    Some(r)
}

/// Natural log of a positive big integer, accurate to f64 precision.
pub fn big_ln(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 53 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 53;
    let top = (x >> shift).to_u64().unwrap() as f64;
    top.ln() + (shift as f64) * std::f64::consts::LN_2
}

/// log of |q| for a nonzero rational.
pub fn rat_ln_abs(q: &BigRational) -> f64 {
    let num = q.numer().abs().to_biguint().unwrap();
    let den = q.denom().abs().to_biguint().unwrap();
    big_ln(&num) - big_ln(&den)
}

/// Convert a rational to f64. Exact division when both parts fit in 53 bits,
/// otherwise scaled from the top bits.
pub fn rat_to_f64(q: &BigRational) -> f64 {
    if q.is_zero() {
        return 0.0;
    }
    let sign = if q.is_negative() { -1.0 } else { 1.0 };
    let num = q.numer().abs().to_biguint().unwrap();
    let den = q.denom().abs().to_biguint().unwrap();
    if num.bits() <= 53 && den.bits() <= 53 {
        return sign * (num.to_u64().unwrap() as f64) / (den.to_u64().unwrap() as f64);
    }
    let nb = num.bits() as i64;
    let db = den.bits() as i64;
    let take = |x: &BigUint, bits: u64| -> f64 {
        if bits <= 63 {
            x.to_u64().unwrap() as f64
        } else {
            (x >> (bits - 63)).to_u64().unwrap() as f64
        }
    };
    let mn = take(&num, num.bits());
    let md = take(&den, den.bits());
    let exp = (nb - nb.min(63)) - (db - db.min(63));
    sign * (mn / md) * (exp as f64).exp2()
}

/// Rational enclosure of sqrt(q) for q >= 0: returns (lo, hi) with
/// lo^2 <= q <= hi^2 and hi - lo <= 2^-bits * scale.
pub fn rat_sqrt_bounds(q: &BigRational, bits: u32) -> (BigRational, BigRational) {
    assert!(!q.is_negative(), "sqrt of a negative rational");
    if q.is_zero() {
        return (BigRational::zero(), BigRational::zero());
    }
    let num = q.numer().abs().to_biguint().unwrap();
    let den = q.denom().abs().to_biguint().unwrap();
    // sqrt(n/d) = sqrt(n*d)/d
    let scaled = (&num * &den) << (2 * bits as u64);
    let s = scaled.sqrt();
    let denom = BigInt::from(den) << (bits as u64);
    let lo = BigRational::new(BigInt::from(s.clone()), denom.clone());
    let hi = BigRational::new(BigInt::from(s + BigUint::one()), denom);
    (lo, hi)
}

/// Does the nonnegative integer have an exact square root?
pub fn exact_sqrt_int(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let u = n.to_biguint().unwrap();
    let r = u.sqrt();
    if &r * &r == u {
        Some(BigInt::from(r))
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
pub fn exact_sqrt_rational(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = exact_sqrt_int(q.numer())?;
    let d = exact_sqrt_int(q.denom())?;
    Some(BigRational::new(n, d))
}

/// Sign of a + b*sqrt(d) for rational a, b and integer d >= 0.
pub fn sign_quadratic(a: &BigRational, b: &BigRational, d: &BigInt) -> i32 {
    assert!(!d.is_negative());
    let sa = rational_sign(a);
    let sb = if d.is_zero() { 0 } else { rational_sign(b) };
    if sb == 0 {
        return sa;
    }
    if sa == 0 {
        return sb;
    }
    if sa == sb {
        return sa;
    }
    // Opposite signs: compare a^2 with b^2 d.
    let lhs = a * a;
    let rhs = b * b * BigRational::from(d.clone());
    match lhs.cmp(&rhs) {
        std::cmp::Ordering::Greater => sa,
        std::cmp::Ordering::Less => sb,
        std::cmp::Ordering::Equal => 0,
    }
}

fn rational_sign(q: &BigRational) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_negative() {
        -1
    } else {
        1
    }
}

/// Sign of a + b*sqrt(p) + c*sqrt(q) for rational a, b, c and integers
/// p, q >= 0. Two squarings reduce everything to rational comparisons.
pub fn sign_biquadratic(
    a: &BigRational,
    b: &BigRational,
    p: &BigInt,
    c: &BigRational,
    q: &BigInt,
) -> i32 {
    if b.is_zero() || p.is_zero() {
        return sign_quadratic(a, c, q);
    }
    if c.is_zero() || q.is_zero() {
        return sign_quadratic(a, b, p);
    }
    // t = b sqrt(p) + c sqrt(q)
    let sb = rational_sign(b);
    let sc = rational_sign(c);
    let t_sign = if sb == sc {
        sb
    } else {
        let lhs = b * b * BigRational::from(p.clone());
        let rhs = c * c * BigRational::from(q.clone());
        match lhs.cmp(&rhs) {
            std::cmp::Ordering::Greater => sb,
            std::cmp::Ordering::Less => sc,
            std::cmp::Ordering::Equal => 0,
        }
    };
    let sa = rational_sign(a);
    if sa == 0 {
        return t_sign;
    }
    if t_sign == 0 {
        return sa;
    }
    if sa == t_sign {
        return sa;
    }
    // |a|^2 vs |t|^2 = b^2 p + c^2 q + 2bc sqrt(pq)
    let u = a * a - b * b * BigRational::from(p.clone()) - c * c * BigRational::from(q.clone());
    let v = BigRational::from(BigInt::from(2)) * b * c;
    let pq = p * q;
    match sign_quadratic(&u, &(-v), &pq) {
        1 => sa,
        -1 => t_sign,
        _ => 0,
    }
}

/// Fundamental solution of x^2 - d y^2 = ±1 via the continued fraction of
/// sqrt(d); d must be a positive nonsquare. Returns (x, y, norm).
pub fn pell_fundamental(d: u64) -> (BigInt, BigInt, i32) {
    let mut a0 = (d as f64).sqrt() as u64;
    while a0 * a0 > d {
        a0 -= 1;
    }
    while (a0 + 1) * (a0 + 1) <= d {
        a0 += 1;
    }
    assert!(a0 * a0 != d, "d must not be a square");
    let mut p_prev = BigInt::one();
    let mut p_curr = BigInt::from(a0);
    let mut q_prev = BigInt::zero();
    let mut q_curr = BigInt::one();
    // Continued fraction state for (P + sqrt(d))/Q; qq holds Q_i.
    let mut pp: i64 = a0 as i64;
    let mut qq: i64 = (d as i64) - (a0 as i64) * (a0 as i64);
    let mut i = 1u32;
    loop {
        if qq == 1 {
            // Period closed with length i; (p_{i-1}, q_{i-1}) solves Pell.
            let norm = if i.is_multiple_of(2) { 1 } else { -1 };
            debug_assert_eq!(
                &p_curr * &p_curr - BigInt::from(d) * &q_curr * &q_curr,
                BigInt::from(norm)
            );
            return (p_curr, q_curr, norm);
        }
        let a = ((a0 as i64) + pp) / qq;
        pp = a * qq - pp;
        qq = ((d as i64) - pp * pp) / qq;
        let p_next = BigInt::from(a) * &p_curr + &p_prev;
        let q_next = BigInt::from(a) * &q_curr + &q_prev;
        p_prev = p_curr;
        p_curr = p_next;
        q_prev = q_curr;
        q_curr = q_next;
        i += 1;
    }
}

/// Fundamental unit (x + y sqrt(d))/k of the ring of integers of Q(sqrt(d)),
/// d > 1 squarefree; k is 2 when the unit is a half-integer, else 1.
/// Returns (x, y, k, norm).
pub fn fundamental_unit(d: u64) -> (BigInt, BigInt, u8, i32) {
    let (x, y, norm) = pell_fundamental(d);
    if d % 4 == 1 {
        // The fundamental unit of Z[(1+sqrt d)/2] may be a cube root of the
        // Z[sqrt d] unit. If eps = (t + u sqrt d)/2 with eps^3 = x + y sqrt d,
        // the trace satisfies t^3 - 3*norm*t = 2x.
        let two_x = BigInt::from(2) * &x;
        let t_approx = two_x.to_biguint().map(|n| n.cbrt()).unwrap_or_default();
        let t_base = BigInt::from(t_approx);
        for dt in -2i64..=2 {
            let t = &t_base + BigInt::from(dt);
            if t <= BigInt::zero() {
                continue;
            }
            if &t * &t * &t - BigInt::from(3 * norm) * &t == two_x {
                // y-part from t^2 - d u^2 = 4*norm.
                let u2_num = &t * &t - BigInt::from(4 * norm);
                let dd = BigInt::from(d);
                if (&u2_num % &dd).is_zero() {
                    if let Some(u) = exact_sqrt_int(&(&u2_num / &dd)) {
                        if !u.is_zero() {
                            debug_assert!(t.is_odd() && u.is_odd());
                            return (t, u, 2, norm);
                        }
                    }
                }
            }
        }
    }
    (x, y, 1, norm)
}

/// log((x + y sqrt(d))/k) for positive x, y; robust for huge Pell solutions.
pub fn log_unit(x: &BigInt, y: &BigInt, d: u64, k: u8) -> f64 {
    let lx = big_ln(&x.to_biguint().expect("positive"));
    let ly = big_ln(&y.to_biguint().expect("positive")) + 0.5 * (d as f64).ln();
    let m = lx.max(ly);
    m + ((lx - m).exp() + (ly - m).exp()).ln() - (k as f64).ln()
}

/// p-adic valuation of a nonzero integer.
pub fn val_p_int(n: &BigInt, p: u64) -> u64 {
    assert!(!n.is_zero());
    let p = BigInt::from(p);
    let mut m = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if r.is_zero() {
            m = q;
            v += 1;
        } else {
            return v;
        }
    }
}

/// p-adic valuation of a nonzero rational.
pub fn val_p_rational(q: &BigRational, p: u64) -> i64 {
    assert!(!q.is_zero());
    val_p_int(q.numer(), p) as i64 - val_p_int(q.denom(), p) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn factors_small() {
        let f = factor_biguint(&BigUint::from(720u32), &Budget::default()).unwrap();
        assert_eq!(
            f,
            vec![
                (BigUint::from(2u32), 4),
                (BigUint::from(3u32), 2),
                (BigUint::from(5u32), 1)
            ]
        );
    }

    #[test]
    fn factors_semiprime() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        let f = factor_biguint(&n, &Budget::default()).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, BigUint::from(1_000_003u64));
    }

    #[test]
    fn kronecker_values() {
        // chi_{-4}(n) = 1 for n = 1 mod 4, -1 for 3 mod 4.
        assert_eq!(kronecker(-4, 5), 1);
        assert_eq!(kronecker(-4, 3), -1);
        assert_eq!(kronecker(-4, 2), 0);
        // (5|p) by quadratic reciprocity.
        assert_eq!(kronecker(5, 11), 1);
        assert_eq!(kronecker(5, 7), -1);
        assert_eq!(kronecker(8, 2), 0);
        assert_eq!(kronecker(17, 2), 1);
    }

    #[test]
    fn sqrt_mod_works() {
        for (a, p) in [(2u64, 7u64), (4, 13), (10, 13), (2, 17)] {
            if let Some(r) = sqrt_mod(a, p) {
                assert_eq!(r * r % p, a % p);
            }
        }
        assert!(sqrt_mod(3, 7).is_none());
    }

    #[test]
    fn pell_small() {
        let (x, y, n) = pell_fundamental(2);
        assert_eq!((x, y, n), (BigInt::from(1), BigInt::from(1), -1));
        let (x, y, n) = pell_fundamental(3);
        assert_eq!((x, y, n), (BigInt::from(2), BigInt::from(1), 1));
        let (x, y, _) = pell_fundamental(46);
        assert_eq!((x, y), (BigInt::from(24335), BigInt::from(3588)));
    }

    #[test]
    fn fundamental_unit_golden() {
        // d = 5: unit (1 + sqrt 5)/2.
        let (x, y, k, n) = fundamental_unit(5);
        assert_eq!((x, y, k, n), (BigInt::one(), BigInt::one(), 2, -1));
        let reg = log_unit(&BigInt::one(), &BigInt::one(), 5, 2);
        assert!((reg - 0.4812118250596035).abs() < 1e-12);
        // d = 2: 1 + sqrt 2.
        let (x, y, k, _) = fundamental_unit(2);
        assert_eq!((x, y, k), (BigInt::one(), BigInt::one(), 1));
    }

    #[test]
    fn quadratic_signs() {
        let d = BigInt::from(2);
        // 3 - 2*sqrt(2) > 0
        assert_eq!(sign_quadratic(&rat(3, 1), &rat(-2, 1), &d), 1);
        // 1 - sqrt(2) < 0
        assert_eq!(sign_quadratic(&rat(1, 1), &rat(-1, 1), &d), -1);
        // sqrt(2) + sqrt(3) - 3 > 0 (3.146 - 3)
        assert_eq!(
            sign_biquadratic(&rat(-3, 1), &rat(1, 1), &d, &rat(1, 1), &BigInt::from(3)),
            1
        );
        // sqrt(2) + sqrt(3) - 4 < 0
        assert_eq!(
            sign_biquadratic(&rat(-4, 1), &rat(1, 1), &d, &rat(1, 1), &BigInt::from(3)),
            -1
        );
        // 2 sqrt(2) - sqrt(8) = 0
        assert_eq!(
            sign_biquadratic(&rat(0, 1), &rat(2, 1), &d, &rat(-1, 1), &BigInt::from(8)),
            0
        );
    }

    #[test]
    fn sqrt_bounds_tight() {
        let q = rat(2, 1);
        let (lo, hi) = rat_sqrt_bounds(&q, 60);
        assert!(&lo * &lo <= q && q <= &hi * &hi);
        let width = rat_to_f64(&(&hi - &lo));
        assert!(width < 1e-15);
        let mid = rat_to_f64(&lo);
        assert!((mid - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn valuations() {
        assert_eq!(val_p_rational(&rat(8, 9), 2), 3);
        assert_eq!(val_p_rational(&rat(8, 9), 3), -2);
        assert_eq!(val_p_rational(&BigRational::from_i64(7).unwrap(), 5), 0);
    }
}
