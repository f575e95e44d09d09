//! Exact coefficient arithmetic over ℚ and the prime fields GF(p).
//!
//! A [`Scalar`] carries its own field tag. Mixing scalars from different
//! fields in arithmetic is a programming error and panics; the polynomial
//! layer checks fields up front and reports [`Error::FieldMismatch`].

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Largest modulus accepted for GF(p). Residue products stay below 2^62.
pub const MAX_PRIME: u64 = 1 << 31;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    /// GF(p), checking primality by trial division.
    pub fn prime(p: u64) -> Result<Self> {
        if p > MAX_PRIME {
            return Err(Error::InvalidField(format!("modulus {p} exceeds 2^31")));
        }
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rational => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        self.from_bigint(&BigInt::from(v))
    }

    pub fn from_bigint(&self, v: &BigInt) -> Scalar {
        match *self {
            FieldSpec::Rational => Scalar::Rational(BigRational::from_integer(v.clone())),
            FieldSpec::Prime(p) => {
                let m = BigInt::from(p);
                let mut r = v % &m;
                if r.is_negative() {
                    r += &m;
                }
                Scalar::Mod {
                    value: r.to_u64().expect("residue fits in u64"),
                    p,
                }
            }
        }
    }

    /// Parses a scalar literal: optional sign, decimal integer, optional `/denominator`.
    /// In GF(p) the numerator and denominator are reduced mod p.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let bad = || Error::InvalidScalar(text.to_string());
        let t = text.trim().replace('\u{2212}', "-");
        let (sign, body) = match t.strip_prefix('-') {
            Some(rest) => (-1, rest),
            None => (1, t.strip_prefix('+').unwrap_or(&t)),
        };
        let (num, den) = match body.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (body, None),
        };
        let digits = |s: &str| -> Result<BigInt> {
            if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
                return Err(bad());
            }
            BigInt::from_str(s).map_err(|_| bad())
        };
        let num = digits(num)? * sign;
        let num = self.from_bigint(&num);
        match den {
            None => Ok(num),
            Some(d) => {
                let d = self.from_bigint(&digits(d)?);
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(num * d.inv()?)
            }
        }
    }

    /// Long form used in reports: `Q` or `GF(p)`.
    pub fn label(&self) -> String {
        match self {
            FieldSpec::Rational => "Q".to_string(),
            FieldSpec::Prime(p) => format!("GF({p})"),
        }
    }
}

impl fmt::Display for FieldSpec {
    /// Short form accepted by [`FromStr`]: `q` or `p:<prime>`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "q"),
            FieldSpec::Prime(p) => write!(f, "p:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        match s.to_ascii_lowercase().as_str() {
            "q" | "rational" | "rationals" => return Ok(FieldSpec::Rational),
            _ => {}
        }
        let p = s
            .strip_prefix("p:")
            .or_else(|| s.strip_prefix("gf:"))
            .ok_or_else(|| Error::InvalidField(format!("unrecognised field {s:?}")))?;
        let p = p
            .parse::<u64>()
            .map_err(|_| Error::InvalidField(format!("bad modulus {p:?}")))?;
        FieldSpec::prime(p)
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    /// Always reduced, positive denominator.
    Rational(BigRational),
    /// Canonical residue in `[0, p)`.
    Mod { value: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rational,
            Scalar::Mod { p, .. } => FieldSpec::Prime(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Mod { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Mod { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, p - 2, *p),
                p: *p,
            },
        })
    }

    /// Repeated-product power; `pow(0)` is one for every base, zero included.
    pub fn pow(&self, e: u64) -> Scalar {
        match self {
            Scalar::Rational(q) => {
                let e = usize::try_from(e).expect("exponent fits in usize");
                Scalar::Rational(num_traits::pow(q.clone(), e))
            }
            Scalar::Mod { value, p } => Scalar::Mod {
                value: pow_mod(*value, e, *p),
                p: *p,
            },
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        assert_eq!(
            self.field(),
            other.field(),
            "arithmetic between scalars of different fields"
        );
    }
}

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            Scalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
            Scalar::Mod { value, .. } => write!(f, "{value}"),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Mod { value: a, p }, Scalar::Mod { value: b, .. }) => Scalar::Mod {
                value: a * b % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Mod { value, p } => Scalar::Mod {
                value: (p - value) % p,
                p: *p,
            },
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident, $assign_tr:ident, $assign:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $assign_tr<&'a Scalar> for Scalar {
            fn $assign(&mut self, rhs: &Scalar) {
                *self = (&*self).$method(rhs);
            }
        }
        impl $assign_tr<Scalar> for Scalar {
            fn $assign(&mut self, rhs: Scalar) {
                *self = (&*self).$method(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::Rational(BigRational::new(n.into(), d.into()))
    }

    #[test]
    fn inverse_examples() {
        let gf7 = FieldSpec::prime(7).unwrap();
        assert_eq!(gf7.from_i64(2).inv().unwrap(), gf7.from_i64(4));
        assert_eq!(q(3, 5).inv().unwrap(), q(5, 3));
        assert_eq!(gf7.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(FieldSpec::Rational.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn pow_examples() {
        let gf7 = FieldSpec::prime(7).unwrap();
        assert_eq!(gf7.from_i64(2).pow(3), gf7.one());
        assert_eq!(q(-1, 1).pow(5), q(-1, 1));
        assert_eq!(FieldSpec::Rational.zero().pow(0), q(1, 1));
        assert_eq!(gf7.zero().pow(0), gf7.one());
        assert_eq!(gf7.zero().pow(3), gf7.zero());
    }

    #[test]
    fn prime_field_construction() {
        assert!(FieldSpec::prime(2).is_ok());
        assert!(FieldSpec::prime(2147483647).is_ok());
        assert!(FieldSpec::prime(1).is_err());
        assert!(FieldSpec::prime(91).is_err());
        assert!(FieldSpec::prime(MAX_PRIME + 11).is_err());
    }

    #[test]
    fn literals() {
        let f = FieldSpec::Rational;
        assert_eq!(f.parse_scalar("-3/5").unwrap(), q(-3, 5));
        assert_eq!(f.parse_scalar("+6/4").unwrap(), q(3, 2));
        assert_eq!(f.parse_scalar("\u{2212}1").unwrap(), q(-1, 1));
        assert_eq!(f.parse_scalar("0/9").unwrap().to_string(), "0");
        for bad in ["", "-", "1/0", "1.5", "x", "1/", "--1", "1/-2"] {
            assert!(f.parse_scalar(bad).is_err(), "{bad}");
        }
        let gf7 = FieldSpec::prime(7).unwrap();
        assert_eq!(gf7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(gf7.parse_scalar("15").unwrap().to_string(), "1");
        assert_eq!(gf7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert!(gf7.parse_scalar("1/7").is_err());
    }

    #[test]
    fn field_names_round_trip() {
        for f in [FieldSpec::Rational, FieldSpec::Prime(5), FieldSpec::Prime(101)] {
            assert_eq!(f.to_string().parse::<FieldSpec>().unwrap(), f);
        }
        assert!("p:9".parse::<FieldSpec>().is_err());
        assert!("r".parse::<FieldSpec>().is_err());
    }

    fn scalar_in(field: FieldSpec) -> BoxedStrategy<Scalar> {
        match field {
            FieldSpec::Rational => (-50i64..50, 1i64..20)
                .prop_map(|(n, d)| q(n, d))
                .boxed(),
            FieldSpec::Prime(p) => (0..p).prop_map(move |v| Scalar::Mod { value: v, p }).boxed(),
        }
    }

    fn canonical(s: &Scalar) -> bool {
        match s {
            Scalar::Rational(r) => {
                r.denom().is_positive() && r.numer().gcd(r.denom()).is_one()
            }
            Scalar::Mod { value, p } => value < p,
        }
    }

    fn check_axioms(a: &Scalar, b: &Scalar, c: &Scalar) {
        let f = a.field();
        assert_eq!(&(a + b) + c, a + &(b + c));
        assert_eq!(&(a * b) * c, a * &(b * c));
        assert_eq!(a + b, b + a);
        assert_eq!(a * b, b * a);
        assert_eq!(a * &(b + c), &(a * b) + &(a * c));
        assert_eq!(a + &f.zero(), a.clone());
        assert_eq!(a * &f.one(), a.clone());
        assert!((a + &(-a)).is_zero());
        if !a.is_zero() {
            assert!((a * &a.inv().unwrap()).is_one());
        }
        for s in [a + b, a - b, a * b, -a] {
            assert!(canonical(&s), "{s:?}");
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn rational_field_axioms(
            a in scalar_in(FieldSpec::Rational),
            b in scalar_in(FieldSpec::Rational),
            c in scalar_in(FieldSpec::Rational),
        ) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn gf101_field_axioms(
            a in scalar_in(FieldSpec::Prime(101)),
            b in scalar_in(FieldSpec::Prime(101)),
            c in scalar_in(FieldSpec::Prime(101)),
        ) {
            check_axioms(&a, &b, &c);
        }

        #[test]
        fn fermat(p in prop::sample::select(vec![2u64, 3, 5, 7, 101, 65521]), v in any::<u64>()) {
            let a = FieldSpec::Prime(p).from_i64((v % p) as i64);
            prop_assert_eq!(a.pow(p), a);
        }

        #[test]
        fn literal_round_trip(a in scalar_in(FieldSpec::Rational)) {
            prop_assert_eq!(FieldSpec::Rational.parse_scalar(&a.to_string()).unwrap(), a);
        }
    }
}
