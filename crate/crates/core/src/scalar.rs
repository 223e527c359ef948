//! Exact coefficient arithmetic: arbitrary-precision rationals and prime
//! fields `F_p` behind one [`Scalar`] abstraction.
//!
//! Everything downstream (polynomials, branching programs, algebras) is
//! generic over `Scalar`, so the same construction code runs over `Q` in the
//! oracle tests and over `F_p` where a construction only needs enough
//! distinct field elements.

use std::fmt;
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// The field operations every coefficient type must provide.
///
/// Values are immutable; all operations return fresh values and are safe to
/// call from any number of threads.
pub trait Scalar: Clone + PartialEq + Eq + fmt::Debug + fmt::Display + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    /// Embeds a small integer. For prime fields this produces an *unbound*
    /// literal that picks up the modulus on first contact with a bound value.
    fn from_int(v: i64) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Result<Self>;
    fn div(&self, rhs: &Self) -> Result<Self>;
    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
}

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator. Zero is `0/1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(r: BigRational) -> Self {
        Rational(r)
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Returns the value as `i64` when it is an integer in range.
    pub fn to_integer(&self) -> Option<i64> {
        if self.0.denom().is_one() {
            i64::try_from(self.0.numer().clone()).ok()
        } else {
            None
        }
    }
}

impl Scalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }

    fn one() -> Self {
        Rational(BigRational::one())
    }

    fn from_int(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }

    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }

    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn neg(&self) -> Self {
        Rational(-self.0.clone())
    }

    fn inv(&self) -> Result<Self> {
        if self.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(self.0.recip()))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        if rhs.0.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Rational(&self.0 / &rhs.0))
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid rational: {s:?}"));
        match s.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                Ok(Rational(BigRational::new(n, d)))
            }
            None => {
                let n: BigInt = s.trim().parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

/// Prime-field element. `modulus == 0` marks an *unbound* integer literal
/// (produced by `zero`, `one` and `from_int`); binary operations bind such a
/// literal to the modulus of the other operand. Bound values satisfy
/// `0 <= value < modulus`.
///
/// Mixing two distinct nonzero moduli is a usage bug and panics.
#[derive(Clone, Copy, Debug)]
pub struct Fp {
    value: i64,
    modulus: u64,
}

impl Fp {
    /// Element of `F_p`. Panics when `p` is not prime.
    pub fn new(value: i64, p: u64) -> Self {
        Self::checked_new(value, p).expect("modulus must be prime")
    }

    pub fn checked_new(value: i64, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NonPrimeModulus(p));
        }
        Ok(Fp::reduce(value as i128, p))
    }

    fn reduce(v: i128, p: u64) -> Self {
        let p_i = p as i128;
        let r = ((v % p_i) + p_i) % p_i;
        Fp { value: r as i64, modulus: p }
    }

    fn literal(value: i64) -> Self {
        Fp { value, modulus: 0 }
    }

    /// `Some(p)` when bound, `None` for an integer literal.
    pub fn modulus(&self) -> Option<u64> {
        (self.modulus != 0).then_some(self.modulus)
    }

    pub fn value(&self) -> i64 {
        self.value
    }

    /// Binds an unbound literal to `p`; a no-op on values already in `F_p`.
    pub fn bind(&self, p: u64) -> Self {
        match self.modulus {
            0 => Fp::reduce(self.value as i128, p),
            q if q == p => *self,
            q => panic!("mixed prime-field moduli {q} and {p}"),
        }
    }

    fn joint_modulus(&self, rhs: &Self) -> u64 {
        match (self.modulus, rhs.modulus) {
            (0, m) | (m, 0) => m,
            (a, b) if a == b => a,
            (a, b) => panic!("mixed prime-field moduli {a} and {b}"),
        }
    }

    fn lift(&self, p: u64) -> i128 {
        if p == 0 {
            self.value as i128
        } else {
            Fp::reduce(self.value as i128, p).value as i128
        }
    }

    fn wrap(v: i128, p: u64) -> Self {
        if p == 0 {
            let value = i64::try_from(v).expect("unbound prime-field literal overflow");
            Fp::literal(value)
        } else {
            Fp::reduce(v, p)
        }
    }
}

impl PartialEq for Fp {
    fn eq(&self, other: &Self) -> bool {
        match (self.modulus, other.modulus) {
            (0, 0) => self.value == other.value,
            (a, b) if a == b => self.value == other.value,
            (0, p) => Fp::reduce(self.value as i128, p).value == other.value,
            (p, 0) => Fp::reduce(other.value as i128, p).value == self.value,
            _ => false,
        }
    }
}

impl Eq for Fp {}

impl Scalar for Fp {
    fn zero() -> Self {
        Fp::literal(0)
    }

    fn one() -> Self {
        Fp::literal(1)
    }

    fn from_int(v: i64) -> Self {
        Fp::literal(v)
    }

    fn add(&self, rhs: &Self) -> Self {
        let p = self.joint_modulus(rhs);
        Fp::wrap(self.lift(p) + rhs.lift(p), p)
    }

    fn sub(&self, rhs: &Self) -> Self {
        let p = self.joint_modulus(rhs);
        Fp::wrap(self.lift(p) - rhs.lift(p), p)
    }

    fn mul(&self, rhs: &Self) -> Self {
        let p = self.joint_modulus(rhs);
        Fp::wrap(self.lift(p) * rhs.lift(p), p)
    }

    fn neg(&self) -> Self {
        Fp::wrap(-(self.value as i128), self.modulus)
    }

    fn inv(&self) -> Result<Self> {
        if self.modulus == 0 {
            return match self.value {
                1 => Ok(*self),
                -1 => Ok(*self),
                0 => Err(Error::DivisionByZero),
                v => Err(Error::NotInvertible(format!("unbound literal {v}"))),
            };
        }
        if self.value == 0 {
            return Err(Error::DivisionByZero);
        }
        // Extended Euclid on (value, p).
        let (mut r0, mut r1) = (self.value as i128, self.modulus as i128);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1, "modulus is prime, so every nonzero value is a unit");
        Ok(Fp::reduce(s0, self.modulus))
    }

    fn div(&self, rhs: &Self) -> Result<Self> {
        let p = self.joint_modulus(rhs);
        let bound = Fp::wrap(rhs.lift(p), p);
        if bound.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.mul(&bound.inv()?))
    }

    fn is_zero(&self) -> bool {
        // Bound values are normalized into [0, p), so this covers both.
        self.value == 0
    }

    fn is_one(&self) -> bool {
        self.value == 1
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.modulus == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "{} mod {}", self.value, self.modulus)
        }
    }
}

impl FromStr for Fp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("invalid prime-field element: {s:?}"));
        match s.split_once(" mod ") {
            Some((v, p)) => {
                let v: i64 = v.trim().parse().map_err(|_| bad())?;
                let p: u64 = p.trim().parse().map_err(|_| bad())?;
                Fp::checked_new(v, p)
            }
            None => {
                let v: i64 = s.trim().parse().map_err(|_| bad())?;
                Ok(Fp::literal(v))
            }
        }
    }
}

/// Which field a CLI invocation or a serialized file works over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FieldSpec {
    Rational,
    Fp(u64),
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "rational"),
            FieldSpec::Fp(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "rational" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p: u64 = p
                .parse()
                .map_err(|_| Error::Parse(format!("invalid field spec: {s:?}")))?;
            if !is_prime(p) {
                return Err(Error::NonPrimeModulus(p));
            }
            return Ok(FieldSpec::Fp(p));
        }
        Err(Error::Parse(format!(
            "invalid field spec {s:?}, expected \"rational\" or \"fp:<p>\""
        )))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn smallest_prime_greater(n: u64) -> u64 {
    let mut p = n + 1;
    while !is_prime(p) {
        p += 1;
    }
    p
}

/// `(-1)^parity` as a scalar.
pub fn sign_scalar<S: Scalar>(parity: bool) -> S {
    if parity {
        S::one().neg()
    } else {
        S::one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_add_example() {
        let half = Rational::new(1, 2);
        let third = Rational::new(1, 3);
        assert_eq!(half.add(&third), Rational::new(5, 6));
    }

    #[test]
    fn rational_additive_identity() {
        let a = Rational::new(-7, 3);
        assert_eq!(a.add(&Rational::zero()), a);
    }

    #[test]
    fn rational_is_reduced_with_positive_denominator() {
        let r = Rational::new(4, -6);
        assert_eq!(r.to_string(), "-2/3");
        assert_eq!(r, Rational::new(-2, 3));
        assert_eq!(Rational::zero().to_string(), "0");
    }

    #[test]
    fn rational_parse_round_trip() {
        for s in ["5/6", "-2/3", "7", "0", "-11"] {
            let r: Rational = s.parse().unwrap();
            assert_eq!(r.to_string(), s);
        }
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/b".parse::<Rational>().is_err());
    }

    #[test]
    fn fp_inverse_of_three_mod_seven() {
        // Independent check: search all residues for the inverse.
        let p = 7u64;
        let mut expected = None;
        for v in 1..p {
            if (3 * v) % p == 1 {
                expected = Some(v);
            }
        }
        assert_eq!(expected, Some(5));
        let inv = Fp::new(3, 7).inv().unwrap();
        assert_eq!(inv, Fp::new(5, 7));
    }

    #[test]
    fn fp_field_axioms_exhaustive_small_p() {
        let p = 5u64;
        let elems: Vec<Fp> = (0..p as i64).map(|v| Fp::new(v, p)).collect();
        for a in &elems {
            for b in &elems {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for c in &elems {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(&b.mul(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b), *a);
                }
            }
        }
    }

    #[test]
    fn fp_unbound_literals_bind_on_contact() {
        let sign = Fp::from_int(-1);
        let x = Fp::new(3, 7);
        assert_eq!(sign.mul(&x), Fp::new(4, 7));
        assert_eq!(Fp::zero().add(&x), x);
        assert_eq!(sign, Fp::new(6, 7));
    }

    #[test]
    fn fp_division_by_zero_errors() {
        let x = Fp::new(3, 7);
        assert!(matches!(x.div(&Fp::new(0, 7)), Err(Error::DivisionByZero)));
        assert!(matches!(Fp::new(0, 7).inv(), Err(Error::DivisionByZero)));
    }

    #[test]
    #[should_panic(expected = "mixed prime-field moduli")]
    fn fp_mixed_moduli_panics() {
        let _ = Fp::new(1, 5).add(&Fp::new(1, 7));
    }

    #[test]
    fn fp_display_and_parse() {
        let x = Fp::new(10, 7);
        assert_eq!(x.to_string(), "3 mod 7");
        assert_eq!("3 mod 7".parse::<Fp>().unwrap(), x);
        assert_eq!("-1".parse::<Fp>().unwrap().bind(7), Fp::new(6, 7));
        assert!("3 mod 6".parse::<Fp>().is_err());
    }

    #[test]
    fn primality_helpers() {
        assert!(is_prime(2));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(91));
        assert_eq!(smallest_prime_greater(5), 7);
        assert_eq!(smallest_prime_greater(7), 11);
    }

    #[test]
    fn rational_field_axioms_sampled() {
        let vals: Vec<Rational> = (-4i64..=4)
            .flat_map(|n| (1i64..=3).map(move |d| Rational::new(n, d)))
            .collect();
        for a in &vals {
            for b in &vals {
                for c in &vals {
                    assert_eq!(a.add(b).add(c), a.add(&b.add(c)));
                    assert_eq!(a.mul(&b.add(c)), a.mul(b).add(&a.mul(c)));
                }
                if !b.is_zero() {
                    assert_eq!(a.div(b).unwrap().mul(b), *a);
                }
            }
        }
    }
}
