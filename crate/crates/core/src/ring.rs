//! Coefficient rings: the integers, the rationals and `Z/p^k`.
//!
//! Every ring here is a principal ideal ring whose ideals are totally
//! ordered by divisibility up to a size function, which is all the
//! diagonalization engine needs.

use core::cmp::Ordering;
use core::fmt::{self, Debug, Display};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseRing {
    Integers,
    Rationals,
    /// `Z/m` with `m` a prime power.
    IntegersMod(u64),
}

impl BaseRing {
    pub fn is_field(&self) -> bool {
        match self {
            BaseRing::Integers => false,
            BaseRing::Rationals => true,
            BaseRing::IntegersMod(m) => prime_power(*m).map(|(_, k)| k == 1).unwrap_or(false),
        }
    }

    /// Submodules of projectives are projective.
    pub fn is_hereditary(&self) -> bool {
        match self {
            BaseRing::Integers | BaseRing::Rationals => true,
            BaseRing::IntegersMod(_) => self.is_field(),
        }
    }
}

impl Display for BaseRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseRing::Integers => write!(f, "Z"),
            BaseRing::Rationals => write!(f, "Q"),
            BaseRing::IntegersMod(m) => write!(f, "Z/{m}"),
        }
    }
}

/// Returns `(p, k)` with `m = p^k`, or `None` if `m` is not a prime power
/// greater than one.
pub fn prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= m && !m.is_multiple_of(p) {
        p += 1;
    }
    if !m.is_multiple_of(p) {
        p = m;
    }
    let mut rest = m;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Arithmetic over a commutative principal ideal ring.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Send + Sync + 'static;

    fn base(&self) -> BaseRing;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    /// Compares pivot quality of two nonzero elements; `Less` is better.
    fn size_cmp(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;

    /// `a = q*b + r` with `r` zero or strictly smaller than `b`.
    /// `b` must be nonzero.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);

    /// Returns `(u, c)` with `u` a unit and `c = u*a` the canonical associate.
    fn normalize(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);

    fn unit_inverse(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.unit_inverse(a).is_some()
    }

    /// A generator of the annihilator of `a`, or `None` when it is zero.
    fn annihilator(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        let (_, r) = self.div_rem(b, a);
        self.is_zero(&r)
    }

    /// Exact quotient `b / a`, if `a` divides `b`.
    fn exact_div(&self, b: &Self::Elem, a: &Self::Elem) -> Option<Self::Elem> {
        if self.is_zero(a) {
            return self.is_zero(b).then(|| self.zero());
        }
        let (q, r) = self.div_rem(b, a);
        self.is_zero(&r).then_some(q)
    }

    fn from_sign(&self, negative: bool) -> Self::Elem {
        if negative {
            self.neg(&self.one())
        } else {
            self.one()
        }
    }

    /// Renders an element for reports, e.g. `-3` or `7/2`.
    fn render(&self, a: &Self::Elem) -> alloc::string::String;

    /// The cyclic module `R/(d)` written for humans.
    fn render_cyclic(&self, d: &Self::Elem) -> alloc::string::String {
        alloc::format!("{}/{}", self.base(), self.render(d))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn base(&self) -> BaseRing {
        BaseRing::Integers
    }
    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, v: i64) -> BigInt {
        BigInt::from(v)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn size_cmp(&self, a: &BigInt, b: &BigInt) -> Ordering {
        a.abs().cmp(&b.abs())
    }
    fn div_rem(&self, a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
        Integer::div_rem(a, b)
    }
    fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        if a.is_negative() {
            (-BigInt::one(), -a)
        } else {
            (BigInt::one(), a.clone())
        }
    }
    fn unit_inverse(&self, a: &BigInt) -> Option<BigInt> {
        (a.abs().is_one()).then(|| a.clone())
    }
    fn annihilator(&self, a: &BigInt) -> Option<BigInt> {
        a.is_zero().then(BigInt::one)
    }
    fn render(&self, a: &BigInt) -> alloc::string::String {
        alloc::format!("{a}")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn base(&self) -> BaseRing {
        BaseRing::Rationals
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn size_cmp(&self, _a: &BigRational, _b: &BigRational) -> Ordering {
        Ordering::Equal
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn normalize(&self, a: &BigRational) -> (BigRational, BigRational) {
        if a.is_zero() {
            (BigRational::one(), BigRational::zero())
        } else {
            (a.recip(), BigRational::one())
        }
    }
    fn unit_inverse(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn annihilator(&self, a: &BigRational) -> Option<BigRational> {
        a.is_zero().then(BigRational::one)
    }
    fn render(&self, a: &BigRational) -> alloc::string::String {
        alloc::format!("{a}")
    }
}

/// `Z/p^k` with elements stored as canonical residues in `[0, p^k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    p: u64,
    k: u32,
    m: u64,
}

impl IntegersMod {
    pub fn new(m: u64) -> Result<Self, Error> {
        let (p, k) = prime_power(m).ok_or(Error::NotPrimePower(m))?;
        if m > u32::MAX as u64 {
            return Err(Error::NotPrimePower(m));
        }
        Ok(IntegersMod { p, k, m })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.k
    }

    /// `p`-adic valuation, with `k` for zero.
    pub fn valuation(&self, a: u64) -> u32 {
        if a == 0 {
            return self.k;
        }
        let mut a = a;
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    fn reduce(&self, a: i128) -> u64 {
        a.rem_euclid(self.m as i128) as u64
    }

    fn inv(&self, a: u64) -> Option<u64> {
        if a.is_multiple_of(self.p) {
            return None;
        }
        let ext = (a as i64).extended_gcd(&(self.m as i64));
        Some(self.reduce(ext.x as i128))
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn base(&self) -> BaseRing {
        BaseRing::IntegersMod(self.m)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.m
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v as i128)
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.m as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.m - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.m as u128) as u64
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn size_cmp(&self, a: &u64, b: &u64) -> Ordering {
        self.valuation(*a).cmp(&self.valuation(*b))
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        let vb = self.valuation(*b);
        if self.valuation(*a) < vb {
            return (0, *a);
        }
        let pe = self.p.pow(vb);
        let unit = self.inv(b / pe).expect("unit part is invertible");
        (self.mul(&(a / pe), &unit), 0)
    }
    fn normalize(&self, a: &u64) -> (u64, u64) {
        if *a == 0 {
            return (1 % self.m, 0);
        }
        let v = self.valuation(*a);
        let pe = self.p.pow(v);
        let u = self.inv(a / pe).expect("unit part is invertible");
        (u, pe % self.m)
    }
    fn unit_inverse(&self, a: &u64) -> Option<u64> {
        self.inv(*a)
    }
    fn annihilator(&self, a: &u64) -> Option<u64> {
        let v = self.valuation(*a);
        (v > 0).then(|| self.p.pow(self.k - v) % self.m)
    }
    fn render(&self, a: &u64) -> alloc::string::String {
        alloc::format!("{a}")
    }
    fn render_cyclic(&self, d: &u64) -> alloc::string::String {
        alloc::format!("Z/{d}")
    }
}

/// Converts a small integer element to `i64` for display purposes.
pub fn bigint_to_i64(v: &BigInt) -> Option<i64> {
    v.to_i64()
}
