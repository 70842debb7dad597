use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LinalgError;

/// Base field of the coefficient spaces.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u32),
}

impl Field {
    /// `F_p`, rejecting composite or oversized moduli.
    pub fn prime(p: u64) -> Result<Field, LinalgError> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(LinalgError::NotPrime(p));
        }
        Ok(Field::Prime(p as u32))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Q(Box::new(BigRational::from_integer(BigInt::from(v)))),
            Field::Prime(p) => Scalar::P(v.rem_euclid(p as i64) as u32, p),
        }
    }

    /// Number of elements, when finite.
    pub fn order(self) -> Option<u64> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(p as u64),
        }
    }

    /// Parses `"a/b"`, `"a"` (over ℚ) or a decimal residue (over `F_p`).
    pub fn parse(self, s: &str) -> Result<Scalar, LinalgError> {
        let bad = || LinalgError::Parse(s.to_string());
        let t = s.trim();
        match self {
            Field::Rational => {
                let (num, den) = match t.split_once('/') {
                    Some((a, b)) => (a.trim(), b.trim()),
                    None => (t, "1"),
                };
                let n: BigInt = num.parse().map_err(|_| bad())?;
                let d: BigInt = den.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Scalar::Q(Box::new(BigRational::new(n, d))))
            }
            Field::Prime(p) => {
                if t.contains('/') {
                    let (a, b) = t.split_once('/').unwrap();
                    let a = Field::Prime(p).parse(a)?;
                    let b = Field::Prime(p).parse(b)?;
                    return b.inv().map(|bi| &a * &bi).ok_or_else(bad);
                }
                let v: i64 = t.parse().map_err(|_| bad())?;
                Ok(self.from_i64(v))
            }
        }
    }

    /// All field elements in a fixed order (finite fields only).
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some((0..p).map(|v| Scalar::P(v, p)).collect()),
        }
    }

    /// Short name, e.g. `Q` or `F3`.
    pub fn name(self) -> String {
        match self {
            Field::Rational => "Q".into(),
            Field::Prime(p) => format!("F{p}"),
        }
    }

    /// Inverse of [`Field::name`]; also accepts `F_p` and `GF(p)`.
    pub fn from_name(s: &str) -> Result<Field, LinalgError> {
        let t = s.trim();
        if t == "Q" || t == "QQ" || t.eq_ignore_ascii_case("rational") {
            return Ok(Field::Rational);
        }
        let digits = t
            .strip_prefix("F_")
            .or_else(|| t.strip_prefix('F'))
            .or_else(|| t.strip_prefix("GF(").and_then(|x| x.strip_suffix(')')))
            .ok_or_else(|| LinalgError::Parse(s.to_string()))?;
        let p: u64 = digits.parse().map_err(|_| LinalgError::Parse(s.to_string()))?;
        Field::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element: a reduced rational or a residue modulo a prime.
///
/// Arithmetic between elements of different fields is a programming error
/// and panics.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(Box<BigRational>),
    P(u32, u32),
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Q(_) => Field::Rational,
            Scalar::P(_, p) => Field::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_zero(),
            Scalar::P(v, _) => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(q) => q.is_one(),
            Scalar::P(v, _) => *v == 1,
        }
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Q(q) => Scalar::Q(Box::new(q.recip())),
            Scalar::P(v, p) => Scalar::P(pow_mod(*v as u64, *p as u64 - 2, *p as u64) as u32, *p),
        })
    }

    /// Residue as an integer in `[0, p)`; `None` over ℚ.
    pub fn residue(&self) -> Option<u32> {
        match self {
            Scalar::P(v, _) => Some(*v),
            Scalar::Q(_) => None,
        }
    }
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!("field mismatch: {:?} vs {:?}", a.field(), b.field())
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a + &**b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                Scalar::P(((*a as u64 + *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, o),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a - &**b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                Scalar::P(((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, o),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self, o) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(Box::new(&**a * &**b)),
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                Scalar::P(((*a as u64 * *b as u64) % *p as u64) as u32, *p)
            }
            _ => mismatch(self, o),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Q(a) => Scalar::Q(Box::new(-&**a)),
            Scalar::P(a, p) => Scalar::P(((*p - *a) % *p) as u32, *p),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        match (&mut *self, o) {
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                *a = ((*a as u64 + *b as u64) % *p as u64) as u32;
            }
            _ => *self = &*self + o,
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        match (&mut *self, o) {
            (Scalar::P(a, p), Scalar::P(b, q)) if p == q => {
                *a = ((*a as u64 + *p as u64 - *b as u64) % *p as u64) as u32;
            }
            _ => *self = &*self - o,
        }
    }
}

impl fmt::Display for Scalar {
    /// `a/b` over ℚ (always with the denominator), the residue over `F_p`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(q) => {
                let (n, d) = (q.numer(), q.denom());
                debug_assert!(d.is_positive());
                write!(f, "{n}/{d}")
            }
            Scalar::P(v, _) => write!(f, "{v}"),
        }
    }
}

/// Scalars serialize as their display string; reading one back needs the
/// field, see [`Field::parse`].
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let q = Field::Rational;
        let a = q.parse("6/-4").unwrap();
        assert_eq!(a.to_string(), "-3/2");
        assert_eq!((&a + &q.parse("3/2").unwrap()).to_string(), "0/1");
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(Field::Rational.parse("1/0").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = f.from_i64(3);
        assert_eq!((&a * &a.inv().unwrap()), f.one());
        assert_eq!(f.from_i64(-1).residue(), Some(6));
        assert!(Field::prime(9).is_err());
    }

    #[test]
    fn names_round_trip() {
        for f in [Field::Rational, Field::Prime(2), Field::Prime(13)] {
            assert_eq!(Field::from_name(&f.name()).unwrap(), f);
        }
        assert_eq!(Field::from_name("F_3").unwrap(), Field::Prime(3));
    }
}
