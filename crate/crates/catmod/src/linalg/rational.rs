use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Exact rational number.
///
/// Values that fit in `i64/i64` stay on the machine-word path; anything else is
/// promoted to a [`BigRational`]. The representation is normalized (lowest
/// terms, positive denominator, demoted when it fits), so derived equality and
/// hashing agree with numeric equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Q {
    Small(i64, i64),
    Big(BigRational),
}

impl Q {
    pub fn int(n: i64) -> Q {
        Q::Small(n, 1)
    }

    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut num: i128, mut den: i128) -> Q {
        if den < 0 {
            num = -num;
            den = -den;
        }
        let g = num.gcd(&den);
        if g > 1 {
            num /= g;
            den /= g;
        }
        match (i64::try_from(num), i64::try_from(den)) {
            (Ok(n), Ok(d)) => Q::Small(n, d),
            _ => Q::Big(BigRational::new(BigInt::from(num), BigInt::from(den))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        match (r.numer().to_i64(), r.denom().to_i64()) {
            (Some(n), Some(d)) => Q::Small(n, d),
            _ => Q::Big(r),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => r.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Q::Small(1, 1))
    }

    pub fn zero() -> Q {
        Q::Small(0, 1)
    }

    pub fn one() -> Q {
        Q::Small(1, 1)
    }

    pub fn inv(&self) -> Q {
        match self {
            Q::Small(n, d) => Q::from_i128(*d as i128, *n as i128),
            Q::Big(r) => Q::from_big(r.recip()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Q::Small(_, d) => *d == 1,
            Q::Big(r) => r.is_integer(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match self {
            Q::Small(n, _) => BigInt::from(*n),
            Q::Big(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match self {
            Q::Small(_, d) => BigInt::from(*d),
            Q::Big(r) => r.denom().clone(),
        }
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(n, _) => *n < 0,
            Q::Big(r) => r.is_negative(),
        }
    }

    /// Parses `a` or `a/b`.
    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        Some(Q::from_big(BigRational::new(n, d)))
    }
}

impl From<i64> for Q {
    fn from(n: i64) -> Q {
        Q::int(n)
    }
}

impl From<BigRational> for Q {
    fn from(r: BigRational) -> Q {
        Q::from_big(r)
    }
}

impl From<BigInt> for Q {
    fn from(n: BigInt) -> Q {
        Q::from_big(BigRational::from_integer(n))
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) => write!(f, "{r}"),
        }
    }
}

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        Q::parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

impl PartialOrd for Q {
    fn partial_cmp(&self, other: &Q) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Q {
    fn cmp(&self, other: &Q) -> Ordering {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128)),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl Add for &Q {
    type Output = Q;
    fn add(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_add(*c) {
                        Some(s) => Q::Small(s, 1),
                        None => Q::from_i128(*a as i128 + *c as i128, 1),
                    };
                }
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match (a * d).checked_add(c * b) {
                    Some(n) => Q::from_i128(n, b * d),
                    None => Q::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Sub for &Q {
    type Output = Q;
    fn sub(self, o: &Q) -> Q {
        self + &(-o)
    }
}

impl Mul for &Q {
    type Output = Q;
    fn mul(self, o: &Q) -> Q {
        match (self, o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                if *b == 1 && *d == 1 {
                    return match a.checked_mul(*c) {
                        Some(s) => Q::Small(s, 1),
                        None => Q::from_i128(*a as i128 * *c as i128, 1),
                    };
                }
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl Div for &Q {
    type Output = Q;
    fn div(self, o: &Q) -> Q {
        assert!(!o.is_zero(), "division by zero");
        self * &o.inv()
    }
}

impl Neg for &Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(n, d) => match n.checked_neg() {
                Some(m) => Q::Small(m, *d),
                None => Q::from_i128(-(*n as i128), *d as i128),
            },
            Q::Big(r) => Q::from_big(-r),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Q {
            type Output = Q;
            fn $m(self, o: Q) -> Q {
                (&self).$m(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        -&self
    }
}

impl Zero for Q {
    fn zero() -> Q {
        Q::zero()
    }
    fn is_zero(&self) -> bool {
        Q::is_zero(self)
    }
}

impl One for Q {
    fn one() -> Q {
        Q::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalizes() {
        assert_eq!(Q::new(2, -4), Q::new(-1, 2));
        assert_eq!(Q::new(0, 5), Q::zero());
        assert_eq!(Q::new(6, 3).to_string(), "2");
    }

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Q::int(i64::MAX);
        let s = &big + &big;
        assert!(matches!(s, Q::Big(_)));
        let back = &s - &big;
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(..)));
        let m = &Q::int(i64::MIN) * &Q::int(-1);
        assert_eq!(m.to_string(), "9223372036854775808");
        assert_eq!(-&Q::int(i64::MIN), m);
    }

    #[test]
    fn field_ops() {
        let a = Q::new(3, 7);
        let b = Q::new(-5, 11);
        assert_eq!(&(&a * &b) / &b, a);
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!(&a * &a.inv(), Q::one());
        assert!(b < a);
        assert_eq!(Q::parse(" -10/4 "), Some(Q::new(-5, 2)));
        assert_eq!(Q::parse("1/0"), None);
    }

    #[test]
    fn matches_bigrational_on_large_values() {
        let a = Q::new(i64::MAX - 3, 7);
        let b = Q::new(i64::MAX - 11, 13);
        let expect = a.to_big() * b.to_big() + a.to_big();
        assert_eq!((&(&a * &b) + &a).to_big(), expect);
    }
}
