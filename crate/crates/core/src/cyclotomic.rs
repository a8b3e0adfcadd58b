//! Exact arithmetic in cyclotomic fields.
//!
//! A [`CycNum`] is stored as a sparse combination of roots of unity of order
//! `n` written in the Zumbroich basis, with `n` the conductor of the value.
//! Both choices together make the representation canonical, so equality and
//! hashing are structural.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numtheory::{factorize, inv_mod, is_prime, lcm, legendre, prime_power};

pub type Rational = BigRational;

/// Shorthand for the rational `n / d`.
pub fn rat(n: i64, d: i64) -> Rational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum CycError {
    #[error("{0} is not an odd prime")]
    NotOddPrime(u64),
    #[error("{0} is not an odd prime power")]
    NotOddPrimePower(u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("cannot parse cyclotomic number: {0}")]
    Parse(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    order: u64,
    coeffs: BTreeMap<u64, Rational>,
}

type Terms = BTreeMap<u64, Rational>;

fn add_term(t: &mut Terms, k: u64, c: Rational) {
    if c.is_zero() {
        return;
    }
    match t.entry(k) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            *o.get_mut() += c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Rewrites a combination of `n`-th roots of unity in the Zumbroich basis.
///
/// For each prime power `p^e || n` the exponent's `p`-component `j + p^(e-1) i`
/// must have `i != 0` for odd `p` and `i == 0` for `p = 2`; other terms are
/// eliminated with the relation `sum_t zeta_p^t = 0` (odd `p`) or `zeta_2 = -1`.
/// Shifts by `n/p` leave every other prime's component alone, so one pass per
/// prime suffices.
fn to_basis(n: u64, mut terms: Terms) -> Terms {
    for (p, e) in factorize(n) {
        let pe = p.pow(e);
        let top = pe / p;
        let step = n / p;
        let mut next = Terms::new();
        for (k, c) in terms {
            let digit = (k % pe) / top;
            if p == 2 {
                if digit == 1 {
                    add_term(&mut next, (k + step) % n, -c);
                } else {
                    add_term(&mut next, k, c);
                }
            } else if digit == 0 {
                for t in 1..p {
                    add_term(&mut next, (k + t * step) % n, -c.clone());
                }
            } else {
                add_term(&mut next, k, c);
            }
        }
        terms = next;
    }
    terms
}

/// If the basis expansion lies in a proper cyclotomic subfield `Q(zeta_{n/p})`,
/// returns it rewritten there (not yet in basis form).
fn shrink(n: u64, terms: &Terms) -> Option<(u64, Terms)> {
    for (p, e) in factorize(n) {
        let m = n / p;
        if e >= 2 {
            if terms.keys().all(|k| k % p == 0) {
                return Some((m, terms.iter().map(|(k, c)| (k / p, c.clone())).collect()));
            }
        } else if p == 2 {
            // n = 2m with m odd: every basis exponent is even and zeta_n^(2a) = zeta_m^a.
            return Some((m, terms.iter().map(|(k, c)| (k / 2, c.clone())).collect()));
        } else {
            let mut groups: BTreeMap<u64, Vec<&Rational>> = BTreeMap::new();
            for (k, c) in terms {
                groups.entry(k % m).or_default().push(c);
            }
            let ok = groups
                .values()
                .all(|cs| cs.len() as u64 == p - 1 && cs.iter().all(|c| *c == cs[0]));
            if ok {
                let pinv = inv_mod(p % m.max(1), m).unwrap_or(0);
                let out = groups
                    .into_iter()
                    .map(|(r, cs)| ((r * pinv) % m, -cs[0].clone()))
                    .collect();
                return Some((m, out));
            }
        }
    }
    None
}

impl CycNum {
    fn canonical(mut n: u64, mut terms: Terms) -> CycNum {
        loop {
            terms = to_basis(n, terms);
            if terms.is_empty() {
                return CycNum::zero();
            }
            match shrink(n, &terms) {
                Some((m, t)) => {
                    n = m;
                    terms = t;
                }
                None => return CycNum { order: n, coeffs: terms },
            }
        }
    }

    /// Builds `sum c_k zeta_n^k` from arbitrary exponent/coefficient pairs.
    pub fn from_terms<I>(n: u64, terms: I) -> CycNum
    where
        I: IntoIterator<Item = (i64, Rational)>,
    {
        assert!(n >= 1, "order must be positive");
        let mut t = Terms::new();
        for (k, c) in terms {
            add_term(&mut t, k.rem_euclid(n as i64) as u64, c);
        }
        CycNum::canonical(n, t)
    }

    pub fn zero() -> CycNum {
        CycNum { order: 1, coeffs: Terms::new() }
    }

    pub fn one() -> CycNum {
        CycNum::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> CycNum {
        let mut coeffs = Terms::new();
        if !c.is_zero() {
            coeffs.insert(0, c);
        }
        CycNum { order: 1, coeffs }
    }

    pub fn from_int(c: i64) -> CycNum {
        CycNum::from_rational(Rational::from_integer(c.into()))
    }

    /// `zeta_n^k`.
    pub fn root_of_unity(n: u64, k: i64) -> CycNum {
        CycNum::from_terms(n, [(k, Rational::one())])
    }

    /// The conductor of the value (1 for rationals).
    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (u64, &Rational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.order == 1
    }

    pub fn as_rational(&self) -> Option<Rational> {
        if self.order != 1 {
            return None;
        }
        Some(self.coeffs.get(&0).cloned().unwrap_or_else(Rational::zero))
    }

    /// Integer value, when the number is a rational integer.
    pub fn as_integer(&self) -> Option<BigInt> {
        self.as_rational().filter(|r| r.is_integer()).map(|r| r.to_integer())
    }

    fn lift(&self, to: u64) -> impl Iterator<Item = (u64, &Rational)> {
        let f = to / self.order;
        self.coeffs.iter().map(move |(k, c)| (k * f, c))
    }

    pub fn scale(&self, c: &Rational) -> CycNum {
        if c.is_zero() {
            return CycNum::zero();
        }
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect(),
        }
    }

    /// Image under the Galois automorphism `zeta_n -> zeta_n^u` (`u` coprime to the order).
    pub fn galois(&self, u: i64) -> CycNum {
        if self.is_rational() {
            return self.clone();
        }
        let n = self.order as i64;
        CycNum::from_terms(
            self.order,
            self.coeffs.iter().map(|(k, c)| ((*k as i64 * u).rem_euclid(n), c.clone())),
        )
    }

    /// Complex conjugation.
    pub fn conj(&self) -> CycNum {
        self.galois(-1)
    }

    /// Multiplicative inverse via the Galois norm.
    pub fn inv(&self) -> Result<CycNum, CycError> {
        if self.is_zero() {
            return Err(CycError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(CycNum::from_rational(r.recip()));
        }
        let n = self.order;
        let mut others = CycNum::one();
        for u in 2..n {
            if num_integer::gcd(u, n) == 1 {
                others = &others * &self.galois(u as i64);
            }
        }
        let norm = (self * &others)
            .as_rational()
            .expect("norm of a cyclotomic number is rational");
        Ok(others.scale(&norm.recip()))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum, CycError> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: u32) -> CycNum {
        let mut out = CycNum::one();
        for _ in 0..e {
            out = &out * self;
        }
        out
    }

    /// Floating-point embedding with `zeta_n = exp(2 pi i / n)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let n = self.order as f64;
        self.coeffs.iter().fold((0.0, 0.0), |(re, im), (k, c)| {
            let v = c.to_f64().unwrap_or(f64::NAN);
            let a = std::f64::consts::TAU * (*k as f64) / n;
            (re + v * a.cos(), im + v * a.sin())
        })
    }

    /// Sum of many values, canonicalized once.
    pub fn sum_all<'a, I: IntoIterator<Item = &'a CycNum>>(items: I) -> CycNum {
        let items: Vec<&CycNum> = items.into_iter().collect();
        let n = items.iter().fold(1, |acc, x| lcm(acc, x.order));
        let mut t = Terms::new();
        for x in items {
            for (k, c) in x.lift(n) {
                add_term(&mut t, k, c.clone());
            }
        }
        CycNum::canonical(n, t)
    }
}

impl Default for CycNum {
    fn default() -> Self {
        CycNum::zero()
    }
}

impl From<i64> for CycNum {
    fn from(v: i64) -> Self {
        CycNum::from_int(v)
    }
}

impl From<Rational> for CycNum {
    fn from(v: Rational) -> Self {
        CycNum::from_rational(v)
    }
}

impl<'a> Add<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn add(self, rhs: &CycNum) -> CycNum {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        let n = lcm(self.order, rhs.order);
        let mut t: Terms = self.lift(n).map(|(k, c)| (k, c.clone())).collect();
        for (k, c) in rhs.lift(n) {
            add_term(&mut t, k, c.clone());
        }
        CycNum::canonical(n, t)
    }
}

impl<'a> Mul<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn mul(self, rhs: &CycNum) -> CycNum {
        if self.is_zero() || rhs.is_zero() {
            return CycNum::zero();
        }
        if let Some(r) = self.as_rational() {
            return rhs.scale(&r);
        }
        if let Some(r) = rhs.as_rational() {
            return self.scale(&r);
        }
        let n = lcm(self.order, rhs.order);
        let mut t = Terms::new();
        for (a, x) in self.lift(n) {
            for (b, y) in rhs.lift(n) {
                add_term(&mut t, (a + b) % n, x * y);
            }
        }
        CycNum::canonical(n, t)
    }
}

impl Neg for &CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        CycNum {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, -c)).collect(),
        }
    }
}

impl Neg for CycNum {
    type Output = CycNum;
    fn neg(self) -> CycNum {
        -&self
    }
}

impl<'a> Sub<&'a CycNum> for &'a CycNum {
    type Output = CycNum;
    fn sub(self, rhs: &CycNum) -> CycNum {
        self + &(-rhs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: CycNum) -> CycNum {
                (&self).$f(&rhs)
            }
        }
        impl<'a> $tr<&'a CycNum> for CycNum {
            type Output = CycNum;
            fn $f(self, rhs: &CycNum) -> CycNum {
                (&self).$f(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl AddAssign<&CycNum> for CycNum {
    fn add_assign(&mut self, rhs: &CycNum) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&CycNum> for CycNum {
    fn sub_assign(&mut self, rhs: &CycNum) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&CycNum> for CycNum {
    fn mul_assign(&mut self, rhs: &CycNum) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for CycNum {
    fn sum<I: Iterator<Item = CycNum>>(iter: I) -> CycNum {
        let v: Vec<CycNum> = iter.collect();
        CycNum::sum_all(v.iter())
    }
}

impl Zero for CycNum {
    fn zero() -> Self {
        CycNum::zero()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for CycNum {
    fn one() -> Self {
        CycNum::one()
    }
}

/// Quadratic Gauss sum `sum_a (a/p) zeta_p^a`; its square is `(-1)^((p-1)/2) p`.
pub fn gauss_sum(p: u64) -> Result<CycNum, CycError> {
    if p.is_multiple_of(2) || !is_prime(p) {
        return Err(CycError::NotOddPrime(p));
    }
    Ok(CycNum::from_terms(
        p,
        (1..p as i64).map(|a| (a, Rational::from_integer(legendre(a, p).into()))),
    ))
}

/// `(-1)^((q-1)/2)` for odd `q`.
pub fn delta(q: u64) -> i64 {
    if ((q - 1) / 2).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// A square root of `delta(q) * q` for an odd prime power `q = p^f`.
///
/// For odd `f` this is `p^((f-1)/2)` times the Gauss sum of `p`; for even `f`
/// we have `delta(q) = 1` and the root `p^(f/2)` is rational.
pub fn sqrt_delta_q(q: u64) -> Result<CycNum, CycError> {
    let (p, f) = prime_power(q).filter(|(p, _)| *p != 2).ok_or(CycError::NotOddPrimePower(q))?;
    if f % 2 == 0 {
        return Ok(CycNum::from_int(p.pow(f / 2) as i64));
    }
    let g = gauss_sum(p)?;
    Ok(g.scale(&Rational::from_integer(BigInt::from(p.pow((f - 1) / 2)))))
}

fn fmt_rational(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let root = match *k {
                0 => None,
                1 => Some(format!("z{}", self.order)),
                _ => Some(format!("z{}^{}", self.order, k)),
            };
            match root {
                None => write!(f, "{}", fmt_rational(&abs))?,
                Some(r) if abs.is_one() => write!(f, "{r}")?,
                Some(r) => write!(f, "{}*{r}", fmt_rational(&abs))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for CycNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycNum({self})")
    }
}

pub(crate) fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let d = BigInt::from_str(d.trim()).ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(BigInt::from_str(n.trim()).ok()?, d))
        }
        None => Some(BigRational::from_integer(BigInt::from_str(s).ok()?)),
    }
}

#[derive(Serialize, Deserialize)]
struct CycJson {
    order: u64,
    coeffs: Vec<(u64, String)>,
}

impl Serialize for CycNum {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        CycJson {
            order: self.order,
            coeffs: self.coeffs.iter().map(|(k, c)| (*k, c.to_string())).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CycNum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = CycJson::deserialize(d)?;
        if raw.order == 0 {
            return Err(serde::de::Error::custom("order must be positive"));
        }
        let mut terms = Vec::with_capacity(raw.coeffs.len());
        for (k, c) in raw.coeffs {
            let c = parse_rational(&c)
                .ok_or_else(|| serde::de::Error::custom(CycError::Parse(c.clone())))?;
            terms.push((k as i64, c));
        }
        Ok(CycNum::from_terms(raw.order, terms))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn z(n: u64, k: i64) -> CycNum {
        CycNum::root_of_unity(n, k)
    }

    #[test]
    fn roots_and_relations() {
        assert_eq!(z(1, 0), CycNum::one());
        assert_eq!(z(4, 2), CycNum::from_int(-1));
        assert_eq!(z(3, 1) + z(3, 2), CycNum::from_int(-1));
        assert_eq!(z(6, 1) * z(6, 1), z(3, 1));
        assert_eq!(z(5, 1).conj(), z(5, 4));
        assert!((z(7, 3) * CycNum::zero()).is_zero());
        assert_eq!(z(12, 4).order(), 3);
        assert_eq!(z(10, 2), z(5, 1));
    }

    #[test]
    fn conductor_reduction() {
        // zeta_8 + zeta_8^7 = sqrt 2 has conductor 8; zeta_8 + zeta_8^3 = i sqrt 2 too.
        assert_eq!((z(8, 1) + z(8, 7)).order(), 8);
        // zeta_12 + zeta_12^11 = sqrt 3 has conductor 12.
        assert_eq!((z(12, 1) + z(12, 11)).order(), 12);
        // (zeta_12 + zeta_12^11)^2 = 3
        let s = z(12, 1) + z(12, 11);
        assert_eq!(&s * &s, CycNum::from_int(3));
        // sum of all primitive 15th roots = mu(15) = 1
        let prim: CycNum = [1, 2, 4, 7, 8, 11, 13, 14].iter().map(|&k| z(15, k)).sum();
        assert_eq!(prim, CycNum::one());
    }

    #[test]
    fn gauss_sums() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            let g = gauss_sum(p).unwrap();
            assert_eq!(&g * &g, CycNum::from_int(delta(p) * p as i64), "p = {p}");
        }
        assert_eq!(gauss_sum(9), Err(CycError::NotOddPrime(9)));
        assert_eq!(gauss_sum(2), Err(CycError::NotOddPrime(2)));
    }

    #[test]
    fn prime_power_square_roots() {
        assert_eq!(sqrt_delta_q(9).unwrap(), CycNum::from_int(3));
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27, 49] {
            let g = sqrt_delta_q(q).unwrap();
            assert_eq!(&g * &g, CycNum::from_int(delta(q) * q as i64), "q = {q}");
        }
        assert!(sqrt_delta_q(12).is_err());
    }

    #[test]
    fn rendering_and_json() {
        let x = CycNum::from_terms(5, [(2, rat(1, 2)), (3, rat(-1, 1))]);
        assert_eq!(x.to_string(), "1/2*z5^2 - z5^3");
        assert_eq!(CycNum::from_rational(rat(3, 2)).to_string(), "3/2");
        let js = serde_json::to_string(&x).unwrap();
        assert_eq!(js, r#"{"order":5,"coeffs":[[2,"1/2"],[3,"-1"]]}"#);
        let back: CycNum = serde_json::from_str(&js).unwrap();
        assert_eq!(back, x);
    }

    #[test]
    fn inverse() {
        let x = z(7, 1) + CycNum::from_int(2);
        let y = x.inv().unwrap();
        assert_eq!(&x * &y, CycNum::one());
        assert_eq!(CycNum::zero().inv(), Err(CycError::DivisionByZero));
    }

    fn small_cyc() -> impl Strategy<Value = CycNum> {
        (1u64..=60, prop::collection::vec((0i64..60, -4i64..=4, 1i64..=3), 0..5)).prop_map(
            |(n, terms)| CycNum::from_terms(n, terms.into_iter().map(|(k, a, b)| (k, rat(a, b)))),
        )
    }

    proptest! {
        #[test]
        fn ring_axioms(a in small_cyc(), b in small_cyc(), c in small_cyc()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn conj_is_involutive_automorphism(a in small_cyc(), b in small_cyc()) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
            prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        }

        #[test]
        fn canonical_form_is_idempotent(a in small_cyc()) {
            let again = CycNum::from_terms(a.order(), a.coeffs().map(|(k, c)| (k as i64, c.clone())));
            prop_assert_eq!(again, a);
        }

        #[test]
        fn float_embedding_agrees(a in small_cyc(), b in small_cyc()) {
            let (ar, ai) = a.to_complex();
            let (br, bi) = b.to_complex();
            let (pr, pi) = (&a * &b).to_complex();
            prop_assert!((pr - (ar * br - ai * bi)).abs() < 1e-9);
            prop_assert!((pi - (ar * bi + ai * br)).abs() < 1e-9);
        }

        #[test]
        fn rationals_round_trip(n in -50i64..50, d in 1i64..20) {
            let r = rat(n, d);
            let x = CycNum::from_rational(r.clone());
            prop_assert_eq!(x.as_rational(), Some(r));
            prop_assert_eq!(x.order(), 1);
        }
    }
}
