//! Exact scalar arithmetic over the base fields: Q with arbitrary-precision
//! rationals and GF(p) with canonical residues.
//!
//! Arithmetic between scalars of different fields is a programming error and
//! panics; every public entry point of the crate validates field agreement
//! before any arithmetic happens.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Coefficient field of a structure: the rationals or GF(p), p prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// GF(p); rejects composite or trivial moduli.
    pub fn prime(p: u64) -> Result<Field> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    /// Errors unless `self` and `other` denote the same field.
    pub fn expect_eq(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch {
                left: *self,
                right: *other,
            })
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F {}", p),
        }
    }
}

/// An exact field element. Rationals are stored reduced with positive
/// denominator, prime-field elements as residues in `[0, p)`, so structural
/// equality is semantic equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Scalar {
    Rational(BigRational),
    Prime { p: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { p, .. } => Field::Prime(*p),
        }
    }

    pub fn zero(field: Field) -> Scalar {
        Scalar::from_integer(field, 0)
    }

    pub fn one(field: Field) -> Scalar {
        Scalar::from_integer(field, 1)
    }

    pub fn from_integer(field: Field, n: i64) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                p,
                value: (n.rem_euclid(p as i64)) as u64,
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        match self {
            Scalar::Rational(r) => {
                if r.is_zero() {
                    Err(Error::DivisionByZero(Field::Rational))
                } else {
                    Ok(Scalar::Rational(r.recip()))
                }
            }
            Scalar::Prime { p, value } => {
                if *value == 0 {
                    Err(Error::DivisionByZero(Field::Prime(*p)))
                } else {
                    // Fermat: value^(p-2) mod p.
                    Ok(Scalar::Prime {
                        p: *p,
                        value: pow_mod(*value, *p - 2, *p),
                    })
                }
            }
        }
    }

    /// Parses `n` or `n/d` (`d` nonzero; over GF(p) the quotient is computed
    /// in the field).
    pub fn parse(field: Field, token: &str) -> Result<Scalar> {
        let bad = || Error::BadArgument(format!("malformed scalar '{}'", token));
        let (num_str, den_str) = match token.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (token, None),
        };
        let num = BigInt::from_str(num_str.trim()).map_err(|_| bad())?;
        let den = match den_str {
            Some(d) => BigInt::from_str(d.trim()).map_err(|_| bad())?,
            None => BigInt::one(),
        };
        if den.is_zero() {
            return Err(Error::BadArgument(format!(
                "zero denominator in '{}'",
                token
            )));
        }
        match field {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(num, den))),
            Field::Prime(p) => {
                let reduce = |x: &BigInt| -> u64 {
                    let m = x % BigInt::from(p);
                    let m = if m.is_negative() { m + BigInt::from(p) } else { m };
                    m.to_u64().expect("residue fits in u64")
                };
                let n = Scalar::Prime { p, value: reduce(&num) };
                let d = Scalar::Prime { p, value: reduce(&den) };
                Ok(&n * &d.inv()?)
            }
        }
    }

    fn assert_same_field(&self, other: &Scalar) {
        debug_assert_eq!(
            self.field(),
            other.field(),
            "scalar arithmetic across distinct fields"
        );
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{}", value),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u128 + *b as u128) % *p as u128) as u64,
            },
            _ => unreachable!(),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.assert_same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { p, value: a }, Scalar::Prime { value: b, .. }) => Scalar::Prime {
                p: *p,
                value: ((*a as u128 * *b as u128) % *p as u128) as u64,
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
            Scalar::Prime { p, value } => Scalar::Prime {
                p: *p,
                value: if *value == 0 { 0 } else { p - value },
            },
        }
    }
}

/// Vector of scalars; all helpers below keep field homogeneity.
pub fn zero_vec(field: Field, dim: usize) -> Vec<Scalar> {
    vec![Scalar::zero(field); dim]
}

/// 1-based standard basis vector e_i.
pub fn unit_vec(field: Field, dim: usize, i: usize) -> Vec<Scalar> {
    let mut v = zero_vec(field, dim);
    v[i - 1] = Scalar::one(field);
    v
}

pub fn vec_is_zero(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

pub fn vec_add_scaled(acc: &mut [Scalar], coeff: &Scalar, v: &[Scalar]) {
    for (a, x) in acc.iter_mut().zip(v) {
        if !x.is_zero() {
            *a = &*a + &(coeff * x);
        }
    }
}

pub fn vec_neg(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x).collect()
}

pub fn fmt_vec(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(", "))
}

/// If `v` is exactly a standard basis vector, its 1-based index.
pub fn as_unit_index(v: &[Scalar]) -> Option<usize> {
    let mut hit = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if !x.is_one() || hit.is_some() {
            return None;
        }
        hit = Some(i + 1);
    }
    hit
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc: u64 = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set covers all of u64.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for p in WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn primality() {
        assert!(is_prime(2));
        assert!(is_prime(3));
        assert!(is_prime(5));
        assert!(is_prime(104729));
        assert!(!is_prime(0));
        assert!(!is_prime(1));
        assert!(!is_prime(4));
        assert!(!is_prime(104730));
        assert!(Field::prime(4).is_err());
        assert!(Field::prime(5).is_ok());
    }

    #[test]
    fn rational_parse_and_display() {
        let f = Field::Rational;
        let x = Scalar::parse(f, "-6/4").unwrap();
        assert_eq!(x.to_string(), "-3/2");
        let y = Scalar::parse(f, "7").unwrap();
        assert_eq!(y.to_string(), "7");
        assert!(Scalar::parse(f, "1/0").is_err());
        assert!(Scalar::parse(f, "a").is_err());
    }

    #[test]
    fn prime_parse_reduces() {
        let f = Field::prime(5).unwrap();
        assert_eq!(Scalar::parse(f, "-1").unwrap().to_string(), "4");
        assert_eq!(Scalar::parse(f, "12").unwrap().to_string(), "2");
        // 3/4 = 3 * 4^-1 = 3 * 4 = 12 = 2 (mod 5)
        assert_eq!(Scalar::parse(f, "3/4").unwrap().to_string(), "2");
    }

    #[test]
    fn prime_field_inverses() {
        let f = Field::prime(7).unwrap();
        for v in 1..7 {
            let x = Scalar::from_integer(f, v);
            let prod = &x * &x.inv().unwrap();
            assert!(prod.is_one(), "{}^-1 failed", v);
        }
        assert!(Scalar::zero(f).inv().is_err());
    }

    proptest! {
        #[test]
        fn rational_field_axioms(a in -40i64..40, b in -40i64..40, c in 1i64..20) {
            let f = Field::Rational;
            let x = Scalar::parse(f, &format!("{}/{}", a, c)).unwrap();
            let y = Scalar::from_integer(f, b);
            let z = Scalar::from_integer(f, c);
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert!((&x - &x).is_zero());
            if !x.is_zero() {
                prop_assert!((&x * &x.inv().unwrap()).is_one());
            }
        }

        #[test]
        fn prime_field_axioms(a in 0u64..5, b in 0u64..5, c in 0u64..5) {
            let x = Scalar::Prime { p: 5, value: a };
            let y = Scalar::Prime { p: 5, value: b };
            let z = Scalar::Prime { p: 5, value: c };
            prop_assert_eq!(&x + &y, &y + &x);
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&(&x + &y) * &z, &(&x * &z) + &(&y * &z));
            prop_assert!((&x + &(-&x)).is_zero());
        }
    }

    #[test]
    fn unit_vector_detection() {
        let f = Field::Rational;
        assert_eq!(as_unit_index(&unit_vec(f, 3, 2)), Some(2));
        assert_eq!(as_unit_index(&zero_vec(f, 3)), None);
        let mut v = unit_vec(f, 3, 1);
        v[2] = Scalar::one(f);
        assert_eq!(as_unit_index(&v), None);
    }
}
