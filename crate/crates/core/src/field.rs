//! Exact scalars over a prime field or the rationals.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A coefficient field: `F_p` for a prime `2 <= p < 2^31`, or `Q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u32),
    Rational,
}

impl Field {
    pub const F2: Field = Field::Prime(2);
    pub const F3: Field = Field::Prime(3);
    pub const Q: Field = Field::Rational;

    pub fn prime(p: u32) -> Result<Field> {
        if !(2..(1u32 << 31)).contains(&p) || !is_prime(p) {
            return Err(Error::domain(format!("{p} is not a prime below 2^31")));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u32 {
        match self {
            Field::Prime(p) => *p,
            Field::Rational => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Mod { v: 0, p: *p },
            Field::Rational => Scalar::Rat(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => {
                let v = n.rem_euclid(*p as i64) as u32;
                Scalar::Mod { v, p: *p }
            }
            Field::Rational => Scalar::Rat(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `(-1)^e` as a field element.
    pub fn sign(&self, e: usize) -> Scalar {
        if e.is_multiple_of(2) {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    pub fn name(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "f{p}"),
            Field::Rational => write!(f, "q"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q`, `Q`, `f2`, `f3`, `f<p>` and bare primes.
    fn from_str(s: &str) -> Result<Field> {
        let t = s.trim().to_ascii_lowercase();
        if t == "q" || t == "qq" || t == "rational" {
            return Ok(Field::Rational);
        }
        let digits = t.strip_prefix('f').unwrap_or(&t);
        let p: u32 = digits
            .parse()
            .map_err(|_| Error::domain(format!("unknown field {s:?}")))?;
        Field::prime(p)
    }
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A field element in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Mod { v: u32, p: u32 },
    Rat(BigRational),
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 0,
            Scalar::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Mod { v, .. } => *v == 1,
            Scalar::Rat(r) => r.is_one(),
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Mod { p, .. } => Field::Prime(*p),
            Scalar::Rat(_) => Field::Rational,
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        assert!(!self.is_zero(), "inverse of zero");
        match self {
            Scalar::Mod { v, p } => {
                // Fermat: v^(p-2)
                let mut base = *v as u64;
                let mut e = (*p - 2) as u64;
                let m = *p as u64;
                let mut acc = 1u64;
                while e > 0 {
                    if e & 1 == 1 {
                        acc = acc * base % m;
                    }
                    base = base * base % m;
                    e >>= 1;
                }
                Scalar::Mod { v: acc as u32, p: *p }
            }
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
        }
    }

    /// `self * (-1)^e`
    pub fn signed(self, e: usize) -> Scalar {
        if e.is_multiple_of(2) {
            self
        } else {
            -self
        }
    }

    /// Integer value when the scalar is an integer with small magnitude (used for reports).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Mod { v, .. } => Some(*v as i64),
            Scalar::Rat(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rat(_) => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Mod { v, .. } => write!(f, "{v}"),
            Scalar::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.to_integer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod {
                    v: ((*a as u64 + *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            _ => panic!("mixed fields"),
        }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (self, rhs) {
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, .. }) => {
                *a = ((*a as u64 + *b as u64) % *p as u64) as u32;
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => *a += b,
            _ => panic!("mixed fields"),
        }
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs.clone())
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                debug_assert_eq!(p, q);
                Scalar::Mod {
                    v: ((*a as u64 * *b as u64) % *p as u64) as u32,
                    p: *p,
                }
            }
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            _ => panic!("mixed fields"),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Mod { v, p } => Scalar::Mod {
                v: if v == 0 { 0 } else { p - v },
                p,
            },
            Scalar::Rat(r) => Scalar::Rat(-r),
        }
    }
}

/// Renders a rational as `n` or `n/d`, a residue as its canonical representative.
pub fn scalar_to_json(s: &Scalar) -> serde_json::Value {
    match s.to_i64() {
        Some(n) => serde_json::Value::from(n),
        None => match s {
            Scalar::Rat(r) if r.is_negative() || r.is_positive() => {
                serde_json::Value::from(format!("{}/{}", r.numer(), r.denom()))
            }
            _ => serde_json::Value::from(s.to_string()),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_fields() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("f2".parse::<Field>().unwrap(), Field::F2);
        assert_eq!("F3".parse::<Field>().unwrap(), Field::F3);
        assert_eq!("f101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("f4".parse::<Field>().is_err());
        assert!("f1".parse::<Field>().is_err());
        assert!("r".parse::<Field>().is_err());
    }

    #[test]
    fn modular_canonical_form() {
        let f = Field::Prime(7);
        assert_eq!(f.from_i64(-1), Scalar::Mod { v: 6, p: 7 });
        assert_eq!(f.from_i64(15), Scalar::Mod { v: 1, p: 7 });
        let three = f.from_i64(3);
        assert!((three.inv() * three).is_one());
    }

    #[test]
    fn rationals_reduce() {
        let q = Field::Q;
        let half = q.from_i64(2).inv();
        let sum = &half + &half;
        assert!(sum.is_one());
        assert_eq!(q.from_i64(-4).inv().to_string(), "-1/4");
    }

    #[test]
    fn f2_signs_collapse() {
        assert_eq!(Field::F2.sign(1), Field::F2.one());
    }
}
