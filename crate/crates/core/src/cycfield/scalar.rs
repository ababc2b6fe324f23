use std::cmp::Ordering;
use std::fmt;
use std::sync::OnceLock;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Exact rational coefficient type used throughout the engine.
pub type Rational = BigRational;

/// Largest supported cyclotomic order. Everything the engine computes lives
/// in `Q(zeta_N)` for `N` in `{1,2,3,4,6,8,12,24}`; queries that would need
/// more are rejected rather than approximated.
pub const MAX_ORDER: u32 = 24;

pub(crate) fn rational_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

fn euler_phi(n: u32) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result = result / p * (p - 1);
        }
        p += 1;
    }
    if m > 1 {
        result = result / m * (m - 1);
    }
    result as usize
}

/// Integer polynomials, low degree first.
fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

/// Exact division of integer polynomials; panics if not divisible (cannot
/// happen for the cyclotomic recursion).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    let dd = den.len() - 1;
    let lead = den.last().unwrap().clone();
    assert!(rem.len() > dd, "degree underflow in polynomial division");
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![BigInt::zero(); qd + 1];
    for k in (0..=qd).rev() {
        let c = &rem[k + dd] / &lead;
        if !(&c * &lead - &rem[k + dd]).is_zero() {
            panic!("non-exact division in cyclotomic recursion");
        }
        quot[k] = c.clone();
        for (j, d) in den.iter().enumerate() {
            let t = &c * d;
            rem[k + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "nonzero remainder");
    quot
}

/// `Phi_n` by the recursive formula `Phi_n = (x^n - 1) / prod_{d|n, d<n} Phi_d`.
fn cyclotomic_polynomial(n: u32) -> Vec<BigInt> {
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::from(1)];
    }
    let mut den = vec![BigInt::one()];
    for d in 1..n {
        if n % d == 0 {
            den = poly_mul(&den, &cyclotomic_polynomial(d));
        }
    }
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    poly_div_exact(&num, &den)
}

struct CycContext {
    phi: usize,
    /// `zeta^e` reduced mod `Phi_n`, for `e` in `0..n`.
    power_table: Vec<Vec<Rational>>,
}

impl CycContext {
    fn build(n: u32) -> CycContext {
        let phi = euler_phi(n);
        let modulus = cyclotomic_polynomial(n);
        debug_assert_eq!(modulus.len(), phi + 1);
        // x^phi = -(lower part of Phi_n), then climb degree by degree.
        let mut table: Vec<Vec<Rational>> = Vec::with_capacity(n as usize);
        for e in 0..n as usize {
            if e < phi {
                let mut row = vec![Rational::zero(); phi];
                row[e] = Rational::one();
                table.push(row);
            } else {
                // x^e = x * x^(e-1)
                let prev = table[e - 1].clone();
                let mut row = vec![Rational::zero(); phi];
                let top = prev[phi - 1].clone();
                for j in (1..phi).rev() {
                    row[j] = prev[j - 1].clone();
                }
                if !top.is_zero() {
                    for j in 0..phi {
                        row[j] -= &top * Rational::from_integer(modulus[j].clone());
                    }
                }
                table.push(row);
            }
        }
        CycContext { phi, power_table: table }
    }
}

fn context(n: u32) -> &'static CycContext {
    static CONTEXTS: OnceLock<Vec<OnceLock<CycContext>>> = OnceLock::new();
    let all = CONTEXTS.get_or_init(|| (0..=MAX_ORDER).map(|_| OnceLock::new()).collect());
    all[n as usize].get_or_init(|| CycContext::build(n))
}

fn lcm(a: u32, b: u32) -> u32 {
    let gcd = {
        let (mut x, mut y) = (a, b);
        while y != 0 {
            let t = x % y;
            x = y;
            y = t;
        }
        x
    };
    a / gcd * b
}

/// An element of `Q(zeta_N)`: a polynomial in `zeta_N` of degree `< phi(N)`,
/// reduced modulo the `N`-th cyclotomic polynomial. The representation is
/// canonical for a fixed declared order; elements of different orders are
/// compared after embedding into `Q(zeta_lcm)`.
#[derive(Clone, PartialEq, Eq)]
pub struct CycScalar {
    order: u32,
    coeffs: Vec<Rational>,
}

impl CycScalar {
    pub fn zero() -> CycScalar {
        CycScalar { order: 1, coeffs: vec![Rational::zero()] }
    }

    pub fn one() -> CycScalar {
        CycScalar { order: 1, coeffs: vec![Rational::one()] }
    }

    pub fn from_rational(r: Rational) -> CycScalar {
        CycScalar { order: 1, coeffs: vec![r] }
    }

    pub fn from_int(n: i64) -> CycScalar {
        CycScalar::from_rational(rational_int(n))
    }

    pub fn from_fraction(num: i64, den: i64) -> CycScalar {
        assert!(den != 0, "zero denominator");
        CycScalar::from_rational(Rational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// `zeta_n^k = exp(2 pi i k / n)`.
    pub fn root_of_unity(n: u32, k: i64) -> Result<CycScalar> {
        if n == 0 || n > MAX_ORDER {
            return Err(Error::OrderTooLarge(n));
        }
        let ctx = context(n);
        let e = k.rem_euclid(n as i64) as usize;
        let coeffs = ctx.power_table[e].clone();
        Ok(CycScalar { order: n, coeffs })
    }

    /// The imaginary unit `i = zeta_4`.
    pub fn i() -> CycScalar {
        CycScalar::root_of_unity(4, 1).expect("order 4 is supported")
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.to_rational().map(|r| r.is_one()).unwrap_or(false)
    }

    /// Returns the value as a rational if it lies in `Q`.
    pub fn to_rational(&self) -> Option<Rational> {
        if self.order <= 2 {
            // phi(1) = phi(2) = 1: the basis is {1}.
            return Some(self.coeffs[0].clone());
        }
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn is_rational(&self) -> bool {
        self.to_rational().is_some()
    }

    fn raise_order(&self, m: u32) -> CycScalar {
        if self.order == m {
            return self.clone();
        }
        assert!(m % self.order == 0 && m <= MAX_ORDER, "cannot embed order {} into {}", self.order, m);
        let step = (m / self.order) as usize;
        let ctx = context(m);
        let mut coeffs = vec![Rational::zero(); ctx.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.power_table[(j * step) % m as usize];
            for (t, r) in coeffs.iter_mut().zip(row.iter()) {
                *t += c * r;
            }
        }
        CycScalar { order: m, coeffs }
    }

    fn common(a: &CycScalar, b: &CycScalar) -> (CycScalar, CycScalar) {
        let m = lcm(a.order, b.order);
        assert!(m <= MAX_ORDER, "cyclotomic order {m} exceeds the bound {MAX_ORDER}");
        (a.raise_order(m), b.raise_order(m))
    }

    pub fn add(&self, other: &CycScalar) -> CycScalar {
        let (mut a, b) = CycScalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x += y;
        }
        a
    }

    pub fn sub(&self, other: &CycScalar) -> CycScalar {
        let (mut a, b) = CycScalar::common(self, other);
        for (x, y) in a.coeffs.iter_mut().zip(b.coeffs.iter()) {
            *x -= y;
        }
        a
    }

    pub fn neg(&self) -> CycScalar {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, other: &CycScalar) -> CycScalar {
        let (a, b) = CycScalar::common(self, other);
        let n = a.order;
        let ctx = context(n);
        // Convolution, then exponent reduction via zeta^n = 1 and the power table.
        let mut conv = vec![Rational::zero(); 2 * ctx.phi - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                conv[i + j] += x * y;
            }
        }
        let mut coeffs = vec![Rational::zero(); ctx.phi];
        for (e, c) in conv.into_iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if e < ctx.phi {
                coeffs[e] += c;
            } else {
                let row = &ctx.power_table[e % n as usize];
                for (t, r) in coeffs.iter_mut().zip(row.iter()) {
                    *t += &c * r;
                }
            }
        }
        CycScalar { order: n, coeffs }
    }

    pub fn scale(&self, r: &Rational) -> CycScalar {
        let mut out = self.clone();
        for c in out.coeffs.iter_mut() {
            *c = c.clone() * r;
        }
        out
    }

    /// Multiplicative inverse by the extended Euclidean algorithm on
    /// `(self, Phi_N)` over `Q[x]`.
    pub fn inv(&self) -> Result<CycScalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some(r) = self.to_rational() {
            return Ok(CycScalar { order: self.order, coeffs: {
                let mut c = vec![Rational::zero(); self.coeffs.len()];
                c[0] = Rational::one() / r;
                c
            }});
        }
        let n = self.order;
        let phi = context(n).phi;
        let modulus: Vec<Rational> = cyclotomic_polynomial(n)
            .into_iter()
            .map(Rational::from_integer)
            .collect();
        // Invariants: r0 = s0 * self (mod Phi), r1 = s1 * self (mod Phi).
        let mut r0 = modulus;
        let mut r1 = self.coeffs.clone();
        trim(&mut r1);
        let mut s0 = vec![Rational::zero()];
        let mut s1 = vec![Rational::one()];
        while !poly_is_zero(&r1) && poly_deg(&r1) > 0 {
            let (q, rem) = rpoly_divmod(&r0, &r1);
            let s2 = rpoly_sub(&s0, &rpoly_mul(&q, &s1));
            r0 = r1;
            r1 = rem;
            s0 = s1;
            s1 = s2;
        }
        if poly_is_zero(&r1) {
            return Err(Error::DivisionByZero);
        }
        // r1 is a nonzero constant c: inverse = s1 / c.
        let c = r1[0].clone();
        let mut coeffs = vec![Rational::zero(); phi];
        for (j, v) in s1.iter().enumerate() {
            if j < phi {
                coeffs[j] = v / &c;
            } else if !v.is_zero() {
                // reduce any overflow (s1 can have degree >= phi in edge cases)
                let row = &context(n).power_table[j % n as usize];
                for (t, r) in coeffs.iter_mut().zip(row.iter()) {
                    *t += &(v / &c) * r;
                }
            }
        }
        let out = CycScalar { order: n, coeffs };
        debug_assert!(out.mul(self).is_one());
        Ok(out)
    }

    pub fn div(&self, other: &CycScalar) -> Result<CycScalar> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, mut e: u32) -> CycScalar {
        let mut base = self.clone();
        let mut acc = CycScalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Galois substitution `zeta_N -> zeta_N^k`; requires `gcd(k, N) = 1` to
    /// be an automorphism, which holds for every call site here.
    fn galois(&self, k: u32) -> CycScalar {
        let n = self.order;
        let ctx = context(n);
        let mut coeffs = vec![Rational::zero(); ctx.phi];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let row = &ctx.power_table[(j * k as usize) % n as usize];
            for (t, r) in coeffs.iter_mut().zip(row.iter()) {
                *t += c * r;
            }
        }
        CycScalar { order: n, coeffs }
    }

    /// Complex conjugation: `zeta_N -> zeta_N^(N-1)`, the identity on `Q`.
    pub fn conj(&self) -> CycScalar {
        if self.order <= 2 {
            return self.clone();
        }
        self.galois(self.order - 1)
    }

    /// Equality after embedding both sides into `Q(zeta_lcm)`.
    pub fn eq_val(&self, other: &CycScalar) -> bool {
        let (a, b) = CycScalar::common(self, other);
        a.coeffs == b.coeffs
    }

    /// Smallest `t >= 1` with `self^t = 1`, if `self` is a root of unity of
    /// order at most `cap`.
    pub fn root_of_unity_order(&self, cap: u32) -> Option<u32> {
        let mut p = self.clone();
        for t in 1..=cap {
            if p.is_one() {
                return Some(t);
            }
            p = p.mul(self);
        }
        None
    }

    /// Identifies the value as `zeta_n^k` with `n` the declared order,
    /// returning `k` if so.
    pub fn as_power_of_zeta(&self, n: u32) -> Option<i64> {
        for k in 0..n as i64 {
            let z = CycScalar::root_of_unity(n, k).ok()?;
            if self.eq_val(&z) {
                return Some(k);
            }
        }
        None
    }

    /// Deterministic total order used only for canonical sorting of outputs.
    pub fn sort_key(&self) -> (u32, Vec<(BigInt, BigInt)>) {
        (
            self.order,
            self.coeffs
                .iter()
                .map(|c| (c.numer().clone(), c.denom().clone()))
                .collect(),
        )
    }

    pub fn cmp_sort(&self, other: &CycScalar) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

fn trim(p: &mut Vec<Rational>) {
    while p.len() > 1 && p.last().map(|c| c.is_zero()).unwrap_or(false) {
        p.pop();
    }
}

fn poly_is_zero(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_deg(p: &[Rational]) -> usize {
    let mut d = p.len();
    while d > 1 && p[d - 1].is_zero() {
        d -= 1;
    }
    d - 1
}

fn rpoly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn rpoly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(&mut out);
    out
}

fn rpoly_divmod(num: &[Rational], den: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let dd = poly_deg(den);
    let lead = den[dd].clone();
    let mut rem: Vec<Rational> = num.to_vec();
    trim(&mut rem);
    if poly_deg(&rem) < dd {
        return (vec![Rational::zero()], rem);
    }
    let qd = poly_deg(&rem) - dd;
    let mut quot = vec![Rational::zero(); qd + 1];
    for k in (0..=qd).rev() {
        if rem.len() <= k + dd {
            continue;
        }
        let c = &rem[k + dd] / &lead;
        if c.is_zero() {
            continue;
        }
        quot[k] = c.clone();
        for j in 0..=dd {
            let t = &c * &den[j];
            rem[k + j] -= t;
        }
    }
    trim(&mut rem);
    trim(&mut quot);
    (quot, rem)
}

impl fmt::Debug for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.to_rational() {
            return write!(f, "{r}");
        }
        let mut parts: Vec<String> = Vec::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let base = match j {
                0 => "1".to_string(),
                1 => format!("z{}", self.order),
                _ => format!("z{}^{}", self.order, j),
            };
            let term = if j == 0 {
                format!("{c}")
            } else if c.is_one() {
                base
            } else if (-c.clone()).is_one() {
                format!("-{base}")
            } else {
                format!("{c}*{base}")
            };
            parts.push(term);
        }
        let mut s = String::new();
        for (idx, t) in parts.iter().enumerate() {
            if idx == 0 {
                s.push_str(t);
            } else if let Some(stripped) = t.strip_prefix('-') {
                s.push_str(" - ");
                s.push_str(stripped);
            } else {
                s.push_str(" + ");
                s.push_str(t);
            }
        }
        write!(f, "{s}")
    }
}

/// Serialized form: `{"order": N, "coeffs": [[num, den], ...]}` with
/// `phi(N)` coefficient pairs.
impl Serialize for CycScalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("CycScalar", 2)?;
        st.serialize_field("order", &self.order)?;
        let pairs: Vec<(String, String)> = self
            .coeffs
            .iter()
            .map(|c| (c.numer().to_string(), c.denom().to_string()))
            .collect();
        // Numbers are emitted as i64 when they fit, keeping the JSON plain.
        let nums: Vec<(serde_json::Value, serde_json::Value)> = pairs
            .iter()
            .map(|(n, d)| (json_int(n), json_int(d)))
            .collect();
        st.serialize_field("coeffs", &nums)?;
        st.end()
    }
}

fn json_int(s: &str) -> serde_json::Value {
    match s.parse::<i64>() {
        Ok(v) => serde_json::Value::from(v),
        Err(_) => serde_json::Value::from(s.to_string()),
    }
}

impl<'de> Deserialize<'de> for CycScalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: u32,
            coeffs: Vec<(serde_json::Value, serde_json::Value)>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let parse = |v: &serde_json::Value| -> std::result::Result<BigInt, String> {
            match v {
                serde_json::Value::Number(n) => n
                    .as_i64()
                    .map(BigInt::from)
                    .ok_or_else(|| "non-integer".to_string()),
                serde_json::Value::String(s) => s.parse::<BigInt>().map_err(|e| e.to_string()),
                _ => Err("expected number or string".to_string()),
            }
        };
        let mut coeffs = Vec::with_capacity(raw.coeffs.len());
        for (n, d) in &raw.coeffs {
            let num = parse(n).map_err(serde::de::Error::custom)?;
            let den = parse(d).map_err(serde::de::Error::custom)?;
            if den.is_zero() {
                return Err(serde::de::Error::custom("zero denominator"));
            }
            coeffs.push(Rational::new(num, den));
        }
        if raw.order == 0 || raw.order > MAX_ORDER {
            return Err(serde::de::Error::custom("unsupported cyclotomic order"));
        }
        if coeffs.len() != euler_phi(raw.order) {
            return Err(serde::de::Error::custom("coefficient count != phi(order)"));
        }
        Ok(CycScalar { order: raw.order, coeffs })
    }
}

#[allow(unused)]
fn rational_is_negative(r: &Rational) -> bool {
    r.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zeta(n: u32, k: i64) -> CycScalar {
        CycScalar::root_of_unity(n, k).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials_match_classical_values() {
        // Phi_12 = x^4 - x^2 + 1, Phi_8 = x^4 + 1, Phi_6 = x^2 - x + 1.
        let p12: Vec<i64> = cyclotomic_polynomial(12).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(p12, vec![1, 0, -1, 0, 1]);
        let p8: Vec<i64> = cyclotomic_polynomial(8).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(p8, vec![1, 0, 0, 0, 1]);
        let p6: Vec<i64> = cyclotomic_polynomial(6).iter().map(|c| i64::try_from(c).unwrap()).collect();
        assert_eq!(p6, vec![1, -1, 1]);
    }

    #[test]
    fn i_squared_is_minus_one() {
        let i = zeta(4, 1);
        assert!(i.mul(&i).eq_val(&CycScalar::from_int(-1)));
    }

    #[test]
    fn third_roots_sum_to_zero() {
        let s = CycScalar::one().add(&zeta(3, 1)).add(&zeta(3, 2));
        assert!(s.is_zero());
    }

    #[test]
    fn division_by_self_is_one() {
        let x = CycScalar::one().add(&zeta(8, 1));
        assert!(x.div(&x).unwrap().is_one());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert!(matches!(CycScalar::one().div(&CycScalar::zero()), Err(Error::DivisionByZero)));
    }

    #[test]
    fn conjugation_examples() {
        let i = zeta(4, 1);
        assert!(i.conj().eq_val(&i.neg()));
        let r = CycScalar::from_fraction(3, 5);
        assert!(r.conj().eq_val(&r));
        let z = zeta(12, 1);
        assert!(z.conj().conj().eq_val(&z));
    }

    #[test]
    fn cross_order_equality() {
        // -1 declared at order 2 equals zeta_4^2 declared at order 4.
        let a = zeta(2, 1);
        let b = zeta(4, 2);
        assert!(a.eq_val(&b));
        assert!(!a.eq_val(&zeta(4, 1)));
    }

    #[test]
    fn order_guard() {
        assert!(CycScalar::root_of_unity(25, 1).is_err());
        assert!(CycScalar::root_of_unity(5, 1).is_ok());
    }

    #[test]
    fn inverse_of_nontrivial_element() {
        let x = zeta(12, 5).add(&CycScalar::from_int(2));
        let y = x.inv().unwrap();
        assert!(x.mul(&y).is_one());
    }

    #[test]
    fn zeta_powers_cycle() {
        let z = zeta(6, 1);
        assert_eq!(z.root_of_unity_order(24), Some(6));
        assert_eq!(z.pow(6), CycScalar::one().raise_order(6));
        assert_eq!(z.as_power_of_zeta(6), Some(1));
    }

    #[test]
    fn serialization_round_trip() {
        let x = zeta(8, 3).scale(&Rational::new(BigInt::from(7), BigInt::from(3)));
        let json = serde_json::to_string(&x).unwrap();
        let back: CycScalar = serde_json::from_str(&json).unwrap();
        assert!(x.eq_val(&back));
    }
}
