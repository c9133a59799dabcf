//! Exact scalars: rationals with big-integer numerators and denominators, or
//! residues modulo a prime.
//!
//! Every value carries enough information to do arithmetic on its own. A
//! rational meeting a residue is reduced modulo that residue's prime first, so
//! small integer constants (signs, binomials) can be written once as rationals
//! and used in either field.

use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// The ground field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rationals,
    Prime(u64),
}

impl Field {
    /// Prime field, rejecting composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Field::Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rationals => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Modular {
                value: reduce_i128(n as i128, p),
                modulus: p,
            },
        }
    }

    /// Brings a scalar into this field. Fails when a denominator vanishes mod p.
    pub fn embed(self, s: &Scalar) -> Result<Scalar> {
        match (self, s) {
            (Field::Rationals, Scalar::Rational(_)) => Ok(s.clone()),
            (Field::Rationals, Scalar::Modular { modulus, .. }) => Err(Error::FieldMismatch(
                Field::Prime(*modulus),
                Field::Rationals,
            )),
            (Field::Prime(p), Scalar::Rational(r)) => rational_mod(r, p)
                .map(|value| Scalar::Modular { value, modulus: p })
                .ok_or(Error::DenominatorVanishes(p)),
            (Field::Prime(p), Scalar::Modular { modulus, .. }) if *modulus == p => Ok(s.clone()),
            (Field::Prime(_), Scalar::Modular { modulus, .. }) => {
                Err(Error::FieldMismatch(Field::Prime(*modulus), self))
            }
        }
    }

    /// A primitive `order`-th root of unity, if the field has one.
    pub fn root_of_unity(self, order: u64) -> Option<Scalar> {
        if order == 0 {
            return None;
        }
        match self {
            Field::Rationals => match order {
                1 => Some(self.one()),
                2 => Some(self.from_i64(-1)),
                _ => None,
            },
            Field::Prime(p) => {
                if (p - 1) % order != 0 {
                    return None;
                }
                let cofactor = (p - 1) / order;
                let factors = prime_factors(order);
                (2..p).find_map(|g| {
                    let z = pow_mod(g, cofactor, p);
                    let primitive = factors.iter().all(|&q| pow_mod(z, order / q, p) != 1);
                    primitive.then_some(Scalar::Modular {
                        value: z,
                        modulus: p,
                    })
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rationals => f.write_str("QQ"),
            Field::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

/// An exact scalar.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Modular { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn integer(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn zero() -> Self {
        Self::integer(0)
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Modular { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Modular { value, .. } => *value == 1,
        }
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rationals,
            Scalar::Modular { modulus, .. } => Field::Prime(*modulus),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn pow(&self, mut e: u64) -> Scalar {
        let mut base = self.clone();
        let mut acc = match self {
            Scalar::Rational(_) => Scalar::one(),
            Scalar::Modular { modulus, .. } => Scalar::Modular {
                value: 1 % modulus,
                modulus: *modulus,
            },
        };
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// The value as a small integer, when it is one.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(r) if r.is_integer() => r.to_integer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Modular { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn is_negative(&self) -> bool {
        matches!(self, Scalar::Rational(r) if r.is_negative())
    }

    /// Renders in the polynomial grammar (`3`, `-1/2`).
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::zero()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Modular { value, .. } => write!(f, "{value}"),
        }
    }
}

fn reduce_i128(n: i128, p: u64) -> u64 {
    n.rem_euclid(p as i128) as u64
}

fn bigint_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().unwrap_or(0)
}

fn rational_mod(r: &BigRational, p: u64) -> Option<u64> {
    let num = bigint_mod(r.numer(), p);
    let den = bigint_mod(r.denom(), p);
    if den == 0 {
        return None;
    }
    Some(mul_mod(num, pow_mod(den, p - 2, p), p))
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            out.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Puts two scalars into a common field.
fn unify<'a>(a: &'a Scalar, b: &'a Scalar) -> (Scalar, Scalar) {
    match (a, b) {
        (Scalar::Rational(_), Scalar::Modular { modulus, .. }) => (
            Field::Prime(*modulus)
                .embed(a)
                .expect("rational constant not invertible in prime field"),
            b.clone(),
        ),
        (Scalar::Modular { modulus, .. }, Scalar::Rational(_)) => (
            a.clone(),
            Field::Prime(*modulus)
                .embed(b)
                .expect("rational constant not invertible in prime field"),
        ),
        _ => (a.clone(), b.clone()),
    }
}

fn binary(
    a: &Scalar,
    b: &Scalar,
    rat: fn(&BigRational, &BigRational) -> BigRational,
    modular: fn(u64, u64, u64) -> u64,
) -> Scalar {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => Scalar::Rational(rat(x, y)),
        (
            Scalar::Modular {
                value: x,
                modulus: p,
            },
            Scalar::Modular {
                value: y,
                modulus: q,
            },
        ) => {
            assert_eq!(p, q, "scalars from different prime fields");
            Scalar::Modular {
                value: modular(*x, *y, *p),
                modulus: *p,
            }
        }
        _ => {
            let (x, y) = unify(a, b);
            binary(&x, &y, rat, modular)
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x == y,
            (
                Scalar::Modular {
                    value: x,
                    modulus: p,
                },
                Scalar::Modular {
                    value: y,
                    modulus: q,
                },
            ) => p == q && x == y,
            (Scalar::Rational(r), Scalar::Modular { value, modulus })
            | (Scalar::Modular { value, modulus }, Scalar::Rational(r)) => {
                rational_mod(r, *modulus) == Some(*value)
            }
        }
    }
}

impl Eq for Scalar {}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Total order used only for deterministic output; not the field order.
impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Scalar::Rational(x), Scalar::Rational(y)) => x.cmp(y),
            (Scalar::Modular { value: x, .. }, Scalar::Modular { value: y, .. }) => x.cmp(y),
            (Scalar::Rational(_), _) => Ordering::Less,
            (_, Scalar::Rational(_)) => Ordering::Greater,
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        binary(
            self,
            rhs,
            |x, y| x + y,
            |x, y, p| ((x as u128 + y as u128) % p as u128) as u64,
        )
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        binary(
            self,
            rhs,
            |x, y| x - y,
            |x, y, p| ((x as u128 + p as u128 - y as u128) % p as u128) as u64,
        )
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        binary(self, rhs, |x, y| x * y, mul_mod)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Modular { value, modulus } => Scalar::Modular {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident $atr:ident $am:ident),*) => {$(
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar { (&self).$m(rhs) }
        }
        impl $atr<&Scalar> for Scalar {
            fn $am(&mut self, rhs: &Scalar) { *self = (&*self).$m(rhs); }
        }
        impl $atr for Scalar {
            fn $am(&mut self, rhs: Scalar) { *self = (&*self).$m(&rhs); }
        }
    )*};
}

owned_ops!(Add add AddAssign add_assign, Sub sub SubAssign sub_assign, Mul mul MulAssign mul_assign);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_stay_reduced() {
        let a = Scalar::ratio(2, 4);
        assert_eq!(a.to_text(), "1/2");
        assert_eq!(&a + &a, Scalar::one());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let three = f.from_i64(3);
        assert_eq!((&three * &three.inv().unwrap()), f.one());
        assert_eq!(f.from_i64(-1), f.from_i64(6));
        // mixed: a rational constant is reduced mod 7
        assert_eq!(&three * &Scalar::ratio(1, 3), f.one());
        assert!(Field::prime(91).is_err());
    }

    #[test]
    fn roots_of_unity() {
        let f = Field::prime(13).unwrap();
        let z = f.root_of_unity(4).unwrap();
        assert_eq!(z.pow(4), f.one());
        assert_ne!(z.pow(2), f.one());
        assert!(Field::Rationals.root_of_unity(3).is_none());
        assert_eq!(Field::Rationals.root_of_unity(2), Some(Scalar::integer(-1)));
    }

    #[test]
    fn embed_rejects_bad_denominator() {
        assert!(Field::Prime(5).embed(&Scalar::ratio(1, 5)).is_err());
    }
}
