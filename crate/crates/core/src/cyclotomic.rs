//! Exact arithmetic in cyclotomic fields.
//!
//! An element of `Q(ζ_n)` is stored as the coefficient vector of its
//! canonical representative modulo the cyclotomic polynomial `Φ_n`, so two
//! elements of the same order are equal exactly when their vectors agree.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{domain, Error, Result};

type PolyCache = Mutex<HashMap<u32, Arc<Vec<BigInt>>>>;

fn poly_cache() -> &'static PolyCache {
    static CACHE: OnceLock<PolyCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients (constant term first) of the cyclotomic polynomial `Φ_n`.
///
/// Computed by dividing `x^n - 1` by `Φ_d` for every proper divisor `d` of
/// `n`, and memoised for the lifetime of the process.
///
/// # Panics
/// Panics if `n == 0`.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    assert!(n > 0, "cyclotomic polynomial of order 0");
    if let Some(p) = poly_cache().lock().expect("poly cache poisoned").get(&n) {
        return Arc::clone(p);
    }
    let mut num: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let result = Arc::new(num);
    poly_cache()
        .lock()
        .expect("poly cache poisoned")
        .entry(n)
        .or_insert_with(|| Arc::clone(&result));
    result
}

fn divide_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let qlen = num.len() - dn;
    let mut quot = vec![BigInt::zero(); qlen];
    for i in (0..qlen).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        quot[i] = c;
    }
    debug_assert!(rem.iter().all(Zero::is_zero), "inexact cyclotomic division");
    quot
}

/// Euler's totient, the degree of `Φ_n`.
pub fn euler_phi(n: u32) -> u32 {
    (cyclotomic_polynomial(n).len() - 1) as u32
}

/// An exact element of the cyclotomic field `Q(ζ_n)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u32,
    coeffs: Vec<BigRational>,
}

/// Binary field operation selector used by [`field_arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
}

/// Applies `op` to two elements of the same cyclotomic field.
pub fn field_arithmetic(a: &CycNum, b: &CycNum, op: FieldOp) -> Result<CycNum> {
    if a.order != b.order {
        return domain(format!(
            "cyclotomic orders differ: {} and {}",
            a.order, b.order
        ));
    }
    Ok(match op {
        FieldOp::Add => a + b,
        FieldOp::Sub => a - b,
        FieldOp::Mul => a * b,
    })
}

/// The root of unity `ζ_n^k` as an element of `Q(ζ_n)`.
pub fn zeta_power(n: u32, k: i64) -> Result<CycNum> {
    if n == 0 {
        return domain("cyclotomic order must be positive");
    }
    Ok(CycNum::root_of_unity(n, k))
}

fn reduce(mut poly: Vec<BigRational>, n: u32) -> Vec<BigRational> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.len() - 1;
    if poly.len() < d {
        poly.resize(d, BigRational::zero());
        return poly;
    }
    for i in (d..poly.len()).rev() {
        if poly[i].is_zero() {
            continue;
        }
        let c = std::mem::replace(&mut poly[i], BigRational::zero());
        for (j, pj) in phi.iter().take(d).enumerate() {
            if !pj.is_zero() {
                poly[i - d + j] -= &c * BigRational::from_integer(pj.clone());
            }
        }
    }
    poly.truncate(d);
    poly
}

impl CycNum {
    /// Builds an element from a polynomial in `ζ_n` (constant term first).
    ///
    /// # Panics
    /// Panics if `order == 0`.
    pub fn from_poly(order: u32, poly: Vec<BigRational>) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        CycNum {
            order,
            coeffs: reduce(poly, order),
        }
    }

    /// The additive identity of `Q(ζ_order)`.
    pub fn zero(order: u32) -> Self {
        Self::from_poly(order, Vec::new())
    }

    /// The multiplicative identity of `Q(ζ_order)`.
    pub fn one(order: u32) -> Self {
        Self::from_rational(order, BigRational::one())
    }

    /// A rational number viewed in `Q(ζ_order)`.
    pub fn from_rational(order: u32, q: BigRational) -> Self {
        Self::from_poly(order, vec![q])
    }

    /// An integer viewed in `Q(ζ_order)`.
    pub fn from_int(order: u32, k: i64) -> Self {
        Self::from_rational(order, BigRational::from_integer(BigInt::from(k)))
    }

    /// The fraction `p/q` viewed in `Q(ζ_order)`.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    pub fn from_frac(order: u32, p: i64, q: i64) -> Self {
        Self::from_rational(
            order,
            BigRational::new(BigInt::from(p), BigInt::from(q)),
        )
    }

    /// `ζ_order^k`; negative exponents are reduced modulo `order`.
    ///
    /// # Panics
    /// Panics if `order == 0`.
    pub fn root_of_unity(order: u32, k: i64) -> Self {
        assert!(order > 0, "cyclotomic order must be positive");
        let e = k.rem_euclid(order as i64) as usize;
        let mut poly = vec![BigRational::zero(); e + 1];
        poly[e] = BigRational::one();
        Self::from_poly(order, poly)
    }

    /// The order `n` of the ambient field `Q(ζ_n)`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Canonical coefficients, constant term first, of length `φ(n)`.
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_one())
    }

    /// Returns the value as a rational number when it lies in `Q`.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            Some(self.coeffs.first().cloned().unwrap_or_else(BigRational::zero))
        } else {
            None
        }
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, q: &BigRational) -> Self {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// The Galois automorphism `ζ_n ↦ ζ_n^j`, defined when `gcd(j, n) = 1`.
    pub fn galois(&self, j: i64) -> Result<Self> {
        let n = self.order as i64;
        let j = j.rem_euclid(n);
        if j.gcd(&n) != 1 {
            return domain(format!("exponent {j} is not a unit modulo {n}"));
        }
        Ok(self.substitute_power(j as usize, self.order))
    }

    fn substitute_power(&self, j: usize, target: u32) -> Self {
        let n = target as usize;
        let mut poly = vec![BigRational::zero(); n.max(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                poly[(i * j) % n] += c;
            }
        }
        Self::from_poly(target, poly)
    }

    /// Complex conjugation, the automorphism `ζ_n ↦ ζ_n^{-1}`.
    pub fn conjugate(&self) -> Self {
        self.galois(-1).expect("-1 is a unit modulo every n")
    }

    /// Embeds `Q(ζ_n)` into `Q(ζ_m)` along `ζ_n ↦ ζ_m^{m/n}`; requires `n | m`.
    pub fn embed(&self, m: u32) -> Result<Self> {
        if m == 0 || m % self.order != 0 {
            return domain(format!(
                "cannot embed order {} into order {m}",
                self.order
            ));
        }
        Ok(self.substitute_power((m / self.order) as usize, m))
    }

    /// Multiplicative inverse, computed as the product of the non-trivial
    /// Galois conjugates divided by the field norm.
    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return domain("inverse of zero");
        }
        if let Some(q) = self.as_rational() {
            return Ok(Self::from_rational(self.order, q.recip()));
        }
        let n = self.order as i64;
        let mut prod = Self::one(self.order);
        for j in 2..n {
            if j.gcd(&n) == 1 {
                prod = &prod * &self.galois(j)?;
            }
        }
        let norm = (self * &prod)
            .as_rational()
            .ok_or_else(|| Error::Invariant("field norm is not rational".into()))?;
        Ok(prod.scale(&norm.recip()))
    }

    /// Integer power; negative exponents go through [`CycNum::inverse`].
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inverse()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::one(self.order);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// Numerical value `(re, im)` under `ζ_n = exp(2πi/n)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let v = c.to_f64().unwrap_or(f64::NAN);
            let angle = std::f64::consts::TAU * i as f64 / n;
            re += v * angle.cos();
            im += v * angle.sin();
        }
        (re, im)
    }

    /// Returns `(a', b')` with both operands embedded into `Q(ζ_lcm)`.
    pub fn common_field(a: &CycNum, b: &CycNum) -> (CycNum, CycNum) {
        let m = a.order.lcm(&b.order);
        (
            a.embed(m).expect("lcm is a multiple"),
            b.embed(m).expect("lcm is a multiple"),
        )
    }

    fn assert_same_order(&self, other: &CycNum) {
        assert_eq!(
            self.order, other.order,
            "cyclotomic operands must share an order"
        );
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "z{}^{i}", self.order)?,
                (_, false) => write!(f, "{mag}*z{}^{i}", self.order)?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Add for &CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        self.assert_same_order(rhs);
        CycNum {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Add for CycNum {
    type Output = CycNum;
    fn add(self, rhs: CycNum) -> CycNum {
        &self + &rhs
    }
}

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        self.assert_same_order(rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl Sub for &CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self.assert_same_order(rhs);
        CycNum {
            order: self.order,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Sub for CycNum {
    type Output = CycNum;
    fn sub(self, rhs: CycNum) -> CycNum {
        &self - &rhs
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl Mul for &CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        self.assert_same_order(rhs);
        let d = self.coeffs.len();
        let nz_a: Vec<(usize, &BigRational)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let nz_b: Vec<(usize, &BigRational)> = rhs
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        let mut poly = vec![BigRational::zero(); (2 * d).saturating_sub(1).max(1)];
        for (i, a) in &nz_a {
            for (j, b) in &nz_b {
                poly[i + j] += *a * *b;
            }
        }
        CycNum::from_poly(self.order, poly)
    }
}

impl Mul for CycNum {
    type Output = CycNum;
    fn mul(self, rhs: CycNum) -> CycNum {
        &self * &rhs
    }
}

#[derive(Serialize, Deserialize)]
struct CycNumRepr {
    order: u32,
    coeffs: Vec<String>,
}

fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `"p/q"` or `"p"` into a rational number.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    let parsed = match t.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            let q = BigInt::from_str(q.trim()).map_err(|e| Error::Parse(format!("{t}: {e}")))?;
            if q.is_zero() {
                return Err(Error::Parse(format!("{t}: zero denominator")));
            }
            BigRational::new(p, q)
        }
        None => BigRational::from_integer(
            BigInt::from_str(t).map_err(|e| Error::Parse(format!("{t}: {e}")))?,
        ),
    };
    Ok(parsed)
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CycNumRepr {
            order: self.order,
            coeffs: self.coeffs.iter().map(format_rational).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = CycNumRepr::deserialize(d)?;
        if repr.order == 0 {
            return Err(serde::de::Error::custom("cyclotomic order must be positive"));
        }
        let poly = repr
            .coeffs
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Ok(CycNum::from_poly(repr.order, poly))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn mobius(n: u32) -> i32 {
        let mut m = n;
        let mut result = 1;
        let mut p = 2;
        while p * p <= m {
            if m % p == 0 {
                m /= p;
                if m % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if m > 1 {
            result = -result;
        }
        result
    }

    fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    /// Independent construction via the Möbius product formula.
    fn mobius_cyclotomic(n: u32) -> Vec<BigInt> {
        let mut num = vec![BigInt::one()];
        let mut den = vec![BigInt::one()];
        for d in 1..=n {
            if n % d != 0 {
                continue;
            }
            let mut f = vec![BigInt::zero(); d as usize + 1];
            f[0] = BigInt::from(-1);
            f[d as usize] = BigInt::one();
            match mobius(n / d) {
                1 => num = poly_mul(&num, &f),
                -1 => den = poly_mul(&den, &f),
                _ => {}
            }
        }
        // exact division of num by den, where den has leading coefficient 1
        let mut rem = num.clone();
        let dn = den.len() - 1;
        let qlen = num.len() - dn;
        let mut q = vec![BigInt::zero(); qlen];
        for i in (0..qlen).rev() {
            let c = rem[i + dn].clone();
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
            q[i] = c;
        }
        assert!(rem.iter().all(Zero::is_zero));
        q
    }

    #[test]
    fn cyclotomic_polynomials_match_mobius_formula() {
        for n in 1..=60 {
            assert_eq!(*cyclotomic_polynomial(n), mobius_cyclotomic(n), "n = {n}");
        }
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let ints = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(euler_phi(12), 4);
    }

    #[test]
    fn zeta_order_zero_is_rejected() {
        assert!(matches!(zeta_power(0, 1), Err(Error::Domain(_))));
    }

    #[test]
    fn roots_of_unity_have_the_right_order() {
        for n in 1..=12u32 {
            let z = CycNum::root_of_unity(n, 1);
            assert!(z.pow(n as i64).unwrap().is_one());
            for k in 1..n as i64 {
                assert!(!z.pow(k).unwrap().is_one(), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn character_orthogonality() {
        for n in 1..=10u32 {
            for m in 0..n as i64 {
                let mut s = CycNum::zero(n);
                for k in 0..n as i64 {
                    s += &CycNum::root_of_unity(n, m * k);
                }
                let expected = if m == 0 { n as i64 } else { 0 };
                assert_eq!(s, CycNum::from_int(n, expected));
            }
        }
    }

    #[test]
    fn mismatched_orders_are_a_domain_error() {
        let a = CycNum::one(3);
        let b = CycNum::one(4);
        assert!(matches!(
            field_arithmetic(&a, &b, FieldOp::Add),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn embedding_respects_roots() {
        let z3 = CycNum::root_of_unity(3, 1);
        assert_eq!(z3.embed(12).unwrap(), CycNum::root_of_unity(12, 4));
        assert!(z3.embed(10).is_err());
    }

    #[test]
    fn inverse_of_zero_fails() {
        assert!(CycNum::zero(5).inverse().is_err());
    }

    #[test]
    fn json_round_trip_and_form() {
        let x = &CycNum::from_frac(4, 1, 2) + &CycNum::root_of_unity(4, 3);
        let s = serde_json::to_string(&x).unwrap();
        assert_eq!(s, r#"{"order":4,"coeffs":["1/2","-1/1"]}"#);
        let back: CycNum = serde_json::from_str(&s).unwrap();
        assert_eq!(back, x);
        let short: CycNum = serde_json::from_str(r#"{"order":4,"coeffs":["0","1","0","1"]}"#).unwrap();
        assert!(short.is_zero());
    }

    #[test]
    fn complex_value_of_i() {
        let (re, im) = CycNum::root_of_unity(4, 1).to_complex();
        assert!(re.abs() < 1e-12 && (im - 1.0).abs() < 1e-12);
    }

    fn arb_element(n: u32) -> impl Strategy<Value = CycNum> {
        proptest::collection::vec((-6i64..=6, 1i64..=4), euler_phi(n) as usize).prop_map(
            move |v| {
                let poly = v
                    .into_iter()
                    .map(|(p, q)| BigRational::new(BigInt::from(p), BigInt::from(q)))
                    .collect();
                CycNum::from_poly(n, poly)
            },
        )
    }

    fn arb_pair() -> impl Strategy<Value = (CycNum, CycNum, CycNum)> {
        (1u32..=12).prop_flat_map(|n| (arb_element(n), arb_element(n), arb_element(n)))
    }

    proptest! {
        #[test]
        fn field_axioms((a, b, c) in arb_pair()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn galois_maps_are_ring_homomorphisms((a, b, _c) in arb_pair(), j in 1i64..40) {
            let n = a.order() as i64;
            prop_assume!(j.gcd(&n) == 1);
            prop_assert_eq!((&a * &b).galois(j).unwrap(), &a.galois(j).unwrap() * &b.galois(j).unwrap());
            prop_assert_eq!((&a + &b).galois(j).unwrap(), &a.galois(j).unwrap() + &b.galois(j).unwrap());
        }

        #[test]
        fn inverse_is_two_sided((a, _b, _c) in arb_pair()) {
            prop_assume!(!a.is_zero());
            let inv = a.inverse().unwrap();
            prop_assert!((&a * &inv).is_one());
        }

        #[test]
        fn conjugation_is_an_involution((a, b, _c) in arb_pair()) {
            prop_assert_eq!(a.conjugate().conjugate(), a.clone());
            prop_assert_eq!((&a * &b).conjugate(), &a.conjugate() * &b.conjugate());
        }

        #[test]
        fn embedding_is_a_homomorphism((a, b, _c) in arb_pair(), k in 1u32..4) {
            let m = a.order() * k;
            prop_assert_eq!((&a * &b).embed(m).unwrap(), &a.embed(m).unwrap() * &b.embed(m).unwrap());
        }

        #[test]
        fn numeric_value_is_multiplicative((a, b, _c) in arb_pair()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (&a * &b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-6);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-6);
        }
    }
}
