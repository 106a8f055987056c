use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field: the rationals (characteristic 0) or GF(p).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldSpec {
    characteristic: u32,
}

/// A field element. Which variant is valid is decided by the owning [`FieldSpec`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Residue in `0..p`.
    Mod(u32),
    Rat(BigRational),
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl FieldSpec {
    pub fn new(characteristic: u64) -> Result<Self> {
        if characteristic == 0 || (characteristic < (1 << 31) && is_prime(characteristic)) {
            Ok(FieldSpec {
                characteristic: characteristic as u32,
            })
        } else {
            Err(Error::InvalidCharacteristic(characteristic))
        }
    }

    pub const fn rationals() -> Self {
        FieldSpec { characteristic: 0 }
    }

    pub const fn gf2() -> Self {
        FieldSpec { characteristic: 2 }
    }

    pub fn characteristic(&self) -> u32 {
        self.characteristic
    }

    pub fn is_rational(&self) -> bool {
        self.characteristic == 0
    }

    fn p(&self) -> u64 {
        self.characteristic as u64
    }

    pub fn zero(&self) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::zero())
        } else {
            Scalar::Mod(0)
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        if self.is_rational() {
            Scalar::Rat(BigRational::from_integer(BigInt::from(v)))
        } else {
            Scalar::Mod(v.rem_euclid(self.p() as i64) as u32)
        }
    }

    /// `num / den`; fails when `den` vanishes in the field.
    pub fn from_fraction(&self, num: &BigInt, den: &BigInt) -> Result<Scalar> {
        if self.is_rational() {
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            return Ok(Scalar::Rat(BigRational::new(num.clone(), den.clone())));
        }
        let p = BigInt::from(self.p());
        let reduce = |x: &BigInt| -> u32 {
            let r = x % &p;
            let r = if r.is_negative() { r + &p } else { r };
            u32::try_from(r).expect("residue fits in u32")
        };
        let n = Scalar::Mod(reduce(num));
        let d = Scalar::Mod(reduce(den));
        let inv = self
            .inv(&d)
            .ok_or_else(|| Error::Parse(format!("denominator {den} vanishes mod {p}")))?;
        Ok(self.mul(&n, &inv))
    }

    /// Brings a scalar from another field's representation into this one where that is
    /// meaningful (integers and rationals map into any field).
    pub fn coerce(&self, s: &Scalar) -> Result<Scalar> {
        match s {
            Scalar::Mod(v) if !self.is_rational() => Ok(Scalar::Mod(v % self.characteristic)),
            Scalar::Mod(v) => Ok(self.from_i64(*v as i64)),
            Scalar::Rat(r) => self.from_fraction(r.numer(), r.denom()),
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Mod(v) => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 + *y as u64) % self.p()) as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match a {
            Scalar::Mod(0) => Scalar::Mod(0),
            Scalar::Mod(x) => Scalar::Mod((self.p() - *x as u64) as u32),
            Scalar::Rat(x) => Scalar::Rat(-x),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (a, b) {
            (Scalar::Mod(x), Scalar::Mod(y)) => {
                Scalar::Mod(((*x as u64 * *y as u64) % self.p()) as u32)
            }
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            _ => panic!("mixed scalar representations"),
        }
    }

    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        match a {
            Scalar::Mod(0) => None,
            Scalar::Mod(x) => Some(Scalar::Mod(inv_mod(*x as u64, self.p()) as u32)),
            Scalar::Rat(x) if x.is_zero() => None,
            Scalar::Rat(x) => Some(Scalar::Rat(x.recip())),
        }
    }
}

impl TryFrom<u64> for FieldSpec {
    type Error = Error;

    fn try_from(value: u64) -> Result<Self> {
        FieldSpec::new(value)
    }
}

impl From<FieldSpec> for u64 {
    fn from(f: FieldSpec) -> u64 {
        f.characteristic as u64
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "QQ")
        } else {
            write!(f, "GF({})", self.characteristic)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod(v) => write!(f, "{v}"),
            Scalar::Rat(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Scalar::Rat(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

/// Modular inverse by the extended Euclidean algorithm; `a` must be a unit mod `p`.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, (a % p) as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "{a} is not invertible mod {p}");
    t.rem_euclid(p as i64) as u64
}
