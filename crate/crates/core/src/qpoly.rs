//! Polynomials and rational functions in one indeterminate `q` over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::cyclotomic::{parse_rational, Rational};

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("{divisor} does not divide {dividend}")]
    NotDivisible { dividend: String, divisor: String },
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,
    #[error("cannot parse polynomial coefficient: {0}")]
    Parse(String),
}

/// Coefficients lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct QPoly {
    coeffs: Vec<Rational>,
}

impl QPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> QPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> QPoly {
        QPoly::new(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    pub fn zero() -> QPoly {
        QPoly { coeffs: Vec::new() }
    }

    pub fn one() -> QPoly {
        QPoly::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> QPoly {
        QPoly::new(vec![c])
    }

    /// The indeterminate `q`.
    pub fn q() -> QPoly {
        QPoly::monomial(1, Rational::one())
    }

    pub fn monomial(deg: usize, c: Rational) -> QPoly {
        let mut v = vec![Rational::zero(); deg + 1];
        v[deg] = c;
        QPoly::new(v)
    }

    /// `q^k - 1`.
    pub fn q_pow_minus_one(k: usize) -> QPoly {
        &QPoly::monomial(k, Rational::one()) - &QPoly::one()
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, d: usize) -> Rational {
        self.coeffs.get(d).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&Rational> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &Rational) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn monic(&self) -> QPoly {
        match self.leading() {
            Some(l) => self.scale(&l.recip()),
            None => QPoly::zero(),
        }
    }

    pub fn pow(&self, e: u32) -> QPoly {
        (0..e).fold(QPoly::one(), |acc, _| &acc * self)
    }

    /// Euclidean division: `self = quot * d + rem` with `deg rem < deg d`.
    pub fn divrem(&self, d: &QPoly) -> Result<(QPoly, QPoly), PolyError> {
        let dd = d.degree().ok_or(PolyError::DivisionByZero)?;
        let lead = d.leading().unwrap().clone();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Ok((QPoly::zero(), self.clone()));
        }
        let mut quot = vec![Rational::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] / &lead;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &c * dc;
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        Ok((QPoly::new(quot), QPoly::new(rem)))
    }

    pub fn divides(&self, a: &QPoly) -> bool {
        a.divrem(self).map(|(_, r)| r.is_zero()).unwrap_or(false)
    }

    /// Exact quotient `self / d`; errors unless `d` divides `self`.
    pub fn divexact(&self, d: &QPoly) -> Result<QPoly, PolyError> {
        let (quot, rem) = self.divrem(d)?;
        if !rem.is_zero() {
            return Err(PolyError::NotDivisible {
                dividend: self.to_string(),
                divisor: d.to_string(),
            });
        }
        Ok(quot)
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero divisor").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_at(&self, q0: i64) -> Rational {
        self.eval(&Rational::from_integer(q0.into()))
    }

    /// Largest `i` with `at^i | self`.
    pub fn valuation(&self, at: &QPoly) -> Result<usize, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if at.degree().unwrap_or(0) == 0 {
            return Err(PolyError::DivisionByZero);
        }
        let mut p = self.clone();
        let mut v = 0;
        loop {
            let (quot, rem) = p.divrem(at)?;
            if !rem.is_zero() {
                return Ok(v);
            }
            p = quot;
            v += 1;
        }
    }

    /// Smallest positive integer `n` with `n * self` integral: the lcm of the denominators.
    pub fn denominator_clearing(&self) -> Result<BigInt, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom())))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Whether the coefficient sequence reads the same reversed (ignoring leading/trailing zeros).
    pub fn is_palindromic(&self) -> bool {
        let start = self.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
        let s = &self.coeffs[start..];
        s.iter().eq(s.iter().rev())
    }
}

impl<'a> Add<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        QPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a QPoly> for &'a QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        if self.is_zero() || rhs.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        QPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for QPoly {
    type Output = QPoly;
    fn add(self, rhs: QPoly) -> QPoly {
        &self + &rhs
    }
}

impl Sub for QPoly {
    type Output = QPoly;
    fn sub(self, rhs: QPoly) -> QPoly {
        &self - &rhs
    }
}

impl Mul for QPoly {
    type Output = QPoly;
    fn mul(self, rhs: QPoly) -> QPoly {
        &self * &rhs
    }
}

fn fmt_coeff(c: &Rational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            let mono = match d {
                0 => String::new(),
                1 => "q".to_string(),
                _ => format!("q^{d}"),
            };
            if mono.is_empty() {
                write!(f, "{}", fmt_coeff(&a))?;
            } else if a.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{mono}", fmt_coeff(&a))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QPoly({self})")
    }
}

impl Serialize for QPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<(usize, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(d, c)| (d, c.to_string()))
            .collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for QPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<(usize, String)>::deserialize(d)?;
        let n = pairs.iter().map(|(d, _)| d + 1).max().unwrap_or(0);
        let mut v = vec![Rational::zero(); n];
        for (deg, c) in pairs {
            v[deg] += parse_rational(&c).ok_or_else(|| serde::de::Error::custom(PolyError::Parse(c)))?;
        }
        Ok(QPoly::new(v))
    }
}

/// A reduced quotient of polynomials with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct QRatFun {
    num: QPoly,
    den: QPoly,
}

impl QRatFun {
    pub fn new(num: QPoly, den: QPoly) -> Result<QRatFun, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(QRatFun { num, den: QPoly::one() });
        }
        let g = num.gcd(&den);
        let num = num.divexact(&g)?;
        let den = den.divexact(&g)?;
        let lead = den.leading().unwrap().recip();
        Ok(QRatFun { num: num.scale(&lead), den: den.scale(&lead) })
    }

    pub fn from_poly(p: QPoly) -> QRatFun {
        QRatFun { num: p, den: QPoly::one() }
    }

    pub fn numerator(&self) -> &QPoly {
        &self.num
    }

    pub fn denominator(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial value, when the denominator is constant.
    pub fn as_poly(&self) -> Option<QPoly> {
        (self.den.degree() == Some(0)).then(|| self.num.clone())
    }

    pub fn inv(&self) -> Result<QRatFun, PolyError> {
        QRatFun::new(self.den.clone(), self.num.clone())
    }

    pub fn add(&self, o: &QRatFun) -> QRatFun {
        QRatFun::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den)
            .expect("product of nonzero denominators")
    }

    pub fn mul(&self, o: &QRatFun) -> QRatFun {
        QRatFun::new(&self.num * &o.num, &self.den * &o.den).expect("product of nonzero denominators")
    }

    pub fn scale(&self, c: &Rational) -> QRatFun {
        QRatFun::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }
}

impl fmt::Display for QRatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
