//! Exact arithmetic in `R = Z_(p)[v]/(1 + v + ... + v^(p-1))` and in its field of
//! fractions `Q[v]/(1 + v + ... + v^(p-1))`.
//!
//! Elements are stored in the power basis `1, v, ..., v^(p-2)` as a vector of
//! integer numerators over one common positive denominator kept in lowest
//! terms. Ring elements additionally keep the denominator prime to `p`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycloError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("prime {0} is too small (need p >= 5)")]
    PrimeTooSmall(u64),
    #[error("coefficient {0} is not p-local for p = {1}")]
    DenominatorDivisibleByP(String, u32),
    #[error("operands live over different primes ({0} and {1})")]
    MixedPrime(u32, u32),
    #[error("quotient is not an element of Z_(p)[v]")]
    NotDivisibleInR,
    #[error("division by zero")]
    DivisionByZero,
}

pub type Result<T> = std::result::Result<T, CycloError>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Validates the ambient prime of the ring.
pub fn check_prime(p: u64) -> Result<u32> {
    if !is_prime(p) {
        return Err(CycloError::NotPrime(p));
    }
    if p < 5 {
        return Err(CycloError::PrimeTooSmall(p));
    }
    u32::try_from(p).map_err(|_| CycloError::NotPrime(p))
}

/// `a mod p` in `0..p` for any signed `a`.
pub fn mod_p(a: i64, p: u32) -> u64 {
    a.rem_euclid(p as i64) as u64
}

fn big_mod_p(a: &BigInt, p: u32) -> u64 {
    a.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// Inverse of `a` in `Z/pZ`, if it exists.
pub fn inv_mod(a: i64, p: u32) -> Option<u64> {
    let (g, x, _) = ext_gcd(a.rem_euclid(p as i64), p as i64);
    (g == 1).then(|| x.rem_euclid(p as i64) as u64)
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// Legendre symbol `(a | p)` for an odd prime `p`.
pub fn legendre(a: i64, p: u32) -> i8 {
    let a = mod_p(a, p);
    if a == 0 {
        return 0;
    }
    let mut result = 1u64;
    let mut base = a;
    let mut e = (p as u64 - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    if result == 1 {
        1
    } else {
        -1
    }
}

/// A rational number whose reduced denominator is prime to `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PLocalRational(BigRational);

impl PLocalRational {
    pub fn new(value: BigRational, p: u32) -> Result<Self> {
        if value.denom().is_multiple_of(&BigInt::from(p)) {
            return Err(CycloError::DenominatorDivisibleByP(value.to_string(), p));
        }
        Ok(Self(value))
    }

    pub fn from_integer(n: i64) -> Self {
        Self(BigRational::from_integer(n.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    /// Image in `Z/pZ`.
    pub fn reduce(&self, p: u32) -> u64 {
        let d = big_mod_p(self.0.denom(), p);
        let d_inv = inv_mod(d as i64, p).expect("p-local denominator");
        big_mod_p(self.0.numer(), p) * d_inv % p as u64
    }
}

/// Common-denominator representation shared by ring and field elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
struct Repr {
    p: u32,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Repr {
    fn zero(p: u32) -> Self {
        Repr {
            p,
            num: vec![BigInt::zero(); p as usize - 1],
            den: BigInt::one(),
        }
    }

    /// Builds from coefficients of `1, v, ..., v^(p-1)` by eliminating `v^(p-1)`.
    fn from_cyclic(p: u32, mut raw: Vec<BigInt>, den: BigInt) -> Self {
        debug_assert_eq!(raw.len(), p as usize);
        let top = raw.pop().unwrap();
        if !top.is_zero() {
            for c in raw.iter_mut() {
                *c -= &top;
            }
        }
        let mut r = Repr { p, num: raw, den };
        r.normalize();
        r
    }

    fn normalize(&mut self) {
        if self.num.iter().all(Zero::is_zero) {
            self.den = BigInt::one();
            return;
        }
        let mut g = self.den.clone();
        for c in &self.num {
            if g.is_one() {
                break;
            }
            g = g.gcd(c);
        }
        if self.den.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for c in self.num.iter_mut() {
                *c /= &g;
            }
            self.den /= &g;
        }
    }

    fn is_zero(&self) -> bool {
        self.num.iter().all(Zero::is_zero)
    }

    fn coeff(&self, i: usize) -> BigRational {
        BigRational::new(self.num[i].clone(), self.den.clone())
    }

    fn same_prime(&self, other: &Repr) -> Result<()> {
        if self.p != other.p {
            Err(CycloError::MixedPrime(self.p, other.p))
        } else {
            Ok(())
        }
    }

    fn add(&self, other: &Repr) -> Repr {
        let (num, den) = if self.den == other.den {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a + b)
                .collect();
            (num, self.den.clone())
        } else {
            let num = self
                .num
                .iter()
                .zip(&other.num)
                .map(|(a, b)| a * &other.den + b * &self.den)
                .collect();
            (num, &self.den * &other.den)
        };
        let mut r = Repr {
            p: self.p,
            num,
            den,
        };
        r.normalize();
        r
    }

    fn neg(&self) -> Repr {
        Repr {
            p: self.p,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    fn mul(&self, other: &Repr) -> Repr {
        let p = self.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, a) in self.num.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.num.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                raw[(i + j) % p] += a * b;
            }
        }
        Repr::from_cyclic(self.p, raw, &self.den * &other.den)
    }

    fn scale(&self, q: &BigRational) -> Repr {
        let mut r = Repr {
            p: self.p,
            num: self.num.iter().map(|c| c * q.numer()).collect(),
            den: &self.den * q.denom(),
        };
        r.normalize();
        r
    }

    /// Multiplication by `v^k`.
    fn shift(&self, k: i64) -> Repr {
        let p = self.p as usize;
        let k = k.rem_euclid(p as i64) as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, c) in self.num.iter().enumerate() {
            raw[(i + k) % p] = c.clone();
        }
        Repr::from_cyclic(self.p, raw, self.den.clone())
    }

    /// Image under `v -> v^(-1)`.
    fn conjugate(&self) -> Repr {
        let p = self.p as usize;
        let mut raw = vec![BigInt::zero(); p];
        for (i, c) in self.num.iter().enumerate() {
            raw[(p - i) % p] = c.clone();
        }
        Repr::from_cyclic(self.p, raw, self.den.clone())
    }

    fn is_p_local(&self) -> bool {
        !self.den.is_multiple_of(&BigInt::from(self.p))
    }

    /// Inverse in `Q[v]/Phi_p` via the extended Euclidean algorithm.
    fn inverse(&self) -> Result<Repr> {
        if self.is_zero() {
            return Err(CycloError::DivisionByZero);
        }
        let p = self.p as usize;
        let modulus: Vec<BigRational> = vec![BigRational::one(); p];
        let a: Vec<BigRational> = (0..p - 1).map(|i| self.coeff(i)).collect();
        // invariant: s_i * a = r_i (mod modulus)
        let mut r0 = trim(modulus);
        let mut r1 = trim(a);
        let mut s0: Vec<BigRational> = Vec::new();
        let mut s1: Vec<BigRational> = vec![BigRational::one()];
        while r1.len() > 1 {
            let (q, r) = poly_divmod(&r0, &r1);
            let s2 = poly_sub(&s0, &poly_mul(&q, &s1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r1 is a nonzero constant because Phi_p is irreducible
        let c = r1[0].clone();
        let coeffs: Vec<BigRational> = s1.iter().map(|x| x / &c).collect();
        Ok(Repr::from_rationals(self.p, &coeffs))
    }

    fn from_rationals(p: u32, coeffs: &[BigRational]) -> Repr {
        let pu = p as usize;
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut raw = vec![BigInt::zero(); pu];
        for (i, c) in coeffs.iter().enumerate() {
            raw[i % pu] += c.numer() * (&den / c.denom());
        }
        Repr::from_cyclic(p, raw, den)
    }

    fn pow(&self, mut e: u64) -> Repr {
        let mut base = self.clone();
        let mut acc = Repr::one(self.p);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    fn one(p: u32) -> Repr {
        let mut r = Repr::zero(p);
        r.num[0] = BigInt::one();
        r
    }
}

fn trim(mut v: Vec<BigRational>) -> Vec<BigRational> {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| {
            let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect();
    trim(out)
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().unwrap().clone();
    let mut q = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let f = rem.last().unwrap() / &lead;
        for (i, c) in b.iter().enumerate() {
            rem[shift + i] -= &f * c;
        }
        q[shift] = f;
        rem.pop();
        rem = trim(rem);
    }
    (trim(q), rem)
}

/// Element of `R = Z_(p)[v]/(1 + v + ... + v^(p-1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingElem(Repr);

/// Element of the cyclotomic field `Q[v]/(1 + v + ... + v^(p-1))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FieldElem(Repr);

impl RingElem {
    /// Builds `sum c * v^e` from a sparse exponent map; exponents are read mod `p`.
    pub fn make<I>(p: u64, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, BigRational)>,
    {
        let p = check_prime(p)?;
        let mut coeffs = vec![BigRational::zero(); p as usize];
        for (e, c) in raw {
            if c.denom().is_multiple_of(&BigInt::from(p)) {
                return Err(CycloError::DenominatorDivisibleByP(c.to_string(), p));
            }
            coeffs[e.rem_euclid(p as i64) as usize] += c;
        }
        Ok(RingElem(Repr::from_rationals(p, &coeffs)))
    }

    /// Integer-coefficient convenience form of [`RingElem::make`].
    pub fn from_terms<I>(p: u32, terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, i64)>,
    {
        let mut raw = vec![BigInt::zero(); p as usize];
        for (e, c) in terms {
            raw[e.rem_euclid(p as i64) as usize] += c;
        }
        RingElem(Repr::from_cyclic(p, raw, BigInt::one()))
    }

    /// From integer coefficients of `1, v, ..., v^(p-1)` (length `p`).
    pub fn from_cyclic_ints(p: u32, raw: Vec<BigInt>) -> Self {
        RingElem(Repr::from_cyclic(p, raw, BigInt::one()))
    }

    pub fn zero(p: u32) -> Self {
        RingElem(Repr::zero(p))
    }

    pub fn one(p: u32) -> Self {
        RingElem(Repr::one(p))
    }

    pub fn from_int(p: u32, n: i64) -> Self {
        Self::from_terms(p, [(0, n)])
    }

    /// `v^k`.
    pub fn monomial(p: u32, k: i64) -> Self {
        Self::from_terms(p, [(k, 1)])
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.p())
    }

    /// Coefficient of `v^i`, `0 <= i <= p - 2`.
    pub fn coeff(&self, i: usize) -> PLocalRational {
        PLocalRational(self.0.coeff(i))
    }

    pub fn coeffs(&self) -> Vec<PLocalRational> {
        (0..self.0.num.len()).map(|i| self.coeff(i)).collect()
    }

    /// Integer coefficients, when the common denominator is 1.
    pub fn integer_coeffs(&self) -> Option<&[BigInt]> {
        self.0.den.is_one().then_some(&self.0.num[..])
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(RingElem(self.0.add(&other.0)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(RingElem(self.0.add(&other.0.neg())))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(RingElem(self.0.mul(&other.0)))
    }

    pub fn scalar_mul(&self, c: &PLocalRational) -> Self {
        RingElem(self.0.scale(c.value()))
    }

    pub fn mul_int(&self, n: i64) -> Self {
        RingElem(self.0.scale(&BigRational::from_integer(n.into())))
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        RingElem(self.0.shift(k))
    }

    /// Image under the automorphism `v -> v^(-1)`.
    pub fn conjugate(&self) -> Self {
        RingElem(self.0.conjugate())
    }

    pub fn pow(&self, e: u64) -> Self {
        RingElem(self.0.pow(e))
    }

    pub fn to_field(&self) -> FieldElem {
        FieldElem(self.0.clone())
    }

    /// Reduction `R -> Z/pZ`: evaluate at `v = 1`, then reduce mod `p`.
    pub fn phi_p(&self) -> u64 {
        let p = self.p();
        let mut s = BigInt::zero();
        for c in &self.0.num {
            s += c;
        }
        PLocalRational(BigRational::new(s, self.0.den.clone())).reduce(p)
    }

    /// Coefficients of `self` in the basis `(1 - v)^i`, `i = 0..p-2`, reduced mod `p`.
    pub fn ohtsuki_coeffs(&self) -> Vec<u64> {
        let p = self.p();
        self.ohtsuki_lift().iter().map(|a| a.reduce(p)).collect()
    }

    /// Coefficients of `self` in the basis `(1 - v)^i` over `Z_(p)`.
    pub fn ohtsuki_lift(&self) -> Vec<PLocalRational> {
        let n = self.0.num.len();
        // v^k = (1 - u)^k with u = 1 - v
        let mut out = vec![BigInt::zero(); n];
        let mut binom = vec![BigInt::one()];
        for (k, c) in self.0.num.iter().enumerate() {
            if k > 0 {
                let mut next = vec![BigInt::one(); k + 1];
                for i in 1..k {
                    next[i] = &binom[i - 1] + &binom[i];
                }
                binom = next;
            }
            if c.is_zero() {
                continue;
            }
            for (i, b) in binom.iter().enumerate() {
                let term = c * b;
                if i % 2 == 0 {
                    out[i] += term;
                } else {
                    out[i] -= term;
                }
            }
        }
        out.into_iter()
            .map(|a| PLocalRational(BigRational::new(a, self.0.den.clone())))
            .collect()
    }

    /// The unique `q` in `R` with `q * divisor = self`.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.0.same_prime(&divisor.0)?;
        self.to_field().checked_div(&divisor.to_field())?.to_ring()
    }
}

impl FieldElem {
    pub fn zero(p: u32) -> Self {
        FieldElem(Repr::zero(p))
    }

    pub fn one(p: u32) -> Self {
        FieldElem(Repr::one(p))
    }

    pub fn from_rationals(p: u32, coeffs: &[BigRational]) -> Self {
        FieldElem(Repr::from_rationals(p, coeffs))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.p())
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.coeff(i)
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.0.num.len()).map(|i| self.coeff(i)).collect()
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(FieldElem(self.0.add(&other.0)))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(FieldElem(self.0.add(&other.0.neg())))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(FieldElem(self.0.mul(&other.0)))
    }

    pub fn inv(&self) -> Result<Self> {
        Ok(FieldElem(self.0.inverse()?))
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.0.same_prime(&other.0)?;
        Ok(FieldElem(self.0.mul(&other.0.inverse()?)))
    }

    /// Integer powers; negative exponents go through [`FieldElem::inv`].
    pub fn pow(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(FieldElem(self.0.pow(e as u64)))
        } else {
            Ok(FieldElem(self.0.inverse()?.pow(e.unsigned_abs())))
        }
    }

    pub fn is_p_local(&self) -> bool {
        self.0.is_p_local()
    }

    /// Back into `R`; fails when some coefficient has `p` in its denominator.
    pub fn to_ring(&self) -> Result<RingElem> {
        if self.0.is_p_local() {
            Ok(RingElem(self.0.clone()))
        } else {
            Err(CycloError::NotDivisibleInR)
        }
    }
}

macro_rules! impl_ops {
    ($t:ident) => {
        impl std::ops::Add for &$t {
            type Output = $t;
            fn add(self, rhs: &$t) -> $t {
                self.checked_add(rhs).expect("mixed primes")
            }
        }
        impl std::ops::Sub for &$t {
            type Output = $t;
            fn sub(self, rhs: &$t) -> $t {
                self.checked_sub(rhs).expect("mixed primes")
            }
        }
        impl std::ops::Mul for &$t {
            type Output = $t;
            fn mul(self, rhs: &$t) -> $t {
                self.checked_mul(rhs).expect("mixed primes")
            }
        }
        impl std::ops::Neg for &$t {
            type Output = $t;
            fn neg(self) -> $t {
                $t(self.0.neg())
            }
        }
        impl std::ops::Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl std::ops::Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl std::ops::Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl std::ops::Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                fmt_poly(&self.0, f)
            }
        }
        impl Serialize for $t {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                let coeffs: Vec<[String; 2]> = (0..self.0.num.len())
                    .map(|i| {
                        let c = self.0.coeff(i);
                        [c.numer().to_string(), c.denom().to_string()]
                    })
                    .collect();
                let mut st = s.serialize_struct(stringify!($t), 2)?;
                st.serialize_field("p", &self.0.p)?;
                st.serialize_field("coeffs", &coeffs)?;
                st.end()
            }
        }
    };
}

impl_ops!(RingElem);
impl_ops!(FieldElem);

fn fmt_poly(r: &Repr, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.is_zero() {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in r.num.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let q = BigRational::new(c.clone(), r.den.clone());
        let neg = q.is_negative();
        let a = q.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let mono = match i {
            0 => String::new(),
            1 => "v".to_string(),
            _ => format!("v^{i}"),
        };
        if i == 0 {
            write!(f, "{a}")?;
        } else if a.is_one() {
            write!(f, "{mono}")?;
        } else if a.is_integer() {
            write!(f, "{a}{mono}")?;
        } else {
            write!(f, "({a}){mono}")?;
        }
    }
    Ok(())
}

/// Quantum integer `[n] = (v^n - v^-n) / (v - v^-1)`.
pub fn quantum_int(p: u32, n: i64) -> RingElem {
    let sign = n.signum();
    let m = n.abs();
    RingElem::from_terms(p, (0..m).map(|k| (m - 1 - 2 * k, sign)))
}

/// Quadratic Gauss sum `g_1 = sum_{z=0}^{p-1} v^(z^2)`.
pub fn gauss_sum(p: u32) -> RingElem {
    let pi = p as i64;
    RingElem::from_terms(p, (0..pi).map(|z| ((z * z) % pi, 1)))
}

/// `v - v^(-1)`.
pub fn v_minus_vinv(p: u32) -> RingElem {
    RingElem::from_terms(p, [(1, 1), (-1, -1)])
}
