//! Exact arithmetic in `Q(ω)`, `ω = (√5 − 1) / 2`.
//!
//! Every element is stored as `a + b·ω` with rational `a`, `b`. Since
//! `ω² = 1 − ω`, this representation is unique, so derived equality is
//! value equality. Ordering is decided exactly by rewriting the number as
//! `p + q·√5` and comparing `p²` with `5q²` when the signs differ.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    a: BigRational,
    b: BigRational,
}

impl GoldenNumber {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        GoldenNumber { a, b }
    }

    pub fn from_integers(a: i64, b: i64) -> Self {
        GoldenNumber::new(
            BigRational::from_integer(a.into()),
            BigRational::from_integer(b.into()),
        )
    }

    pub fn from_big_integers(a: BigInt, b: BigInt) -> Self {
        GoldenNumber::new(BigRational::from_integer(a), BigRational::from_integer(b))
    }

    pub fn from_rational(q: BigRational) -> Self {
        GoldenNumber::new(q, BigRational::zero())
    }

    pub fn omega() -> Self {
        GoldenNumber::from_integers(0, 1)
    }

    /// Rational part `a` of `a + b·ω`.
    pub fn rational_part(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient `b` of `ω`.
    pub fn omega_part(&self) -> &BigRational {
        &self.b
    }

    pub fn is_integral(&self) -> bool {
        self.a.is_integer() && self.b.is_integer()
    }

    /// `ω^k` with integer coefficients, from `ω·(a + bω) = b + (a − b)ω`.
    pub fn omega_pow(k: usize) -> Self {
        let (mut a, mut b) = (BigInt::one(), BigInt::zero());
        for _ in 0..k {
            let next_b = &a - &b;
            a = std::mem::replace(&mut b, next_b);
        }
        GoldenNumber::from_big_integers(a, b)
    }

    pub fn pow(&self, mut k: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenNumber::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            k >>= 1;
        }
        acc
    }

    /// Field norm `(a + bω)(a + bω̄) = a² − ab − b²`, where `ω̄ = −1 − ω`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - &self.a * &self.b - &self.b * &self.b
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        let norm = self.norm();
        if norm.is_zero() {
            return None;
        }
        // conjugate: a + b(−1 − ω) = (a − b) − bω
        Some(GoldenNumber::new(
            (&self.a - &self.b) / &norm,
            -&self.b / &norm,
        ))
    }

    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|inv| self * &inv)
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        GoldenNumber::new(&self.a * k, &self.b * k)
    }

    pub fn scale_int(&self, k: u64) -> Self {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// Exact sign of `a + bω`.
    pub fn signum(&self) -> Ordering {
        // a + bω = (a − b/2) + (b/2)·√5
        let two = BigRational::from_integer(2.into());
        let p = &self.a - &self.b / &two;
        let q = &self.b / &two;
        let sp = p.cmp(&BigRational::zero());
        let sq = q.cmp(&BigRational::zero());
        match (sp, sq) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (s1, s2) if s1 == s2 => s1,
            _ => {
                let p2 = &p * &p;
                let q2 = &q * &q * BigRational::from_integer(5.into());
                // p² = 5q² has no rational solution with q ≠ 0
                if p2 > q2 {
                    sp
                } else {
                    sq
                }
            }
        }
    }

    /// Exact comparison with a rational number.
    pub fn cmp_rational(&self, q: &BigRational) -> Ordering {
        GoldenNumber::new(&self.a - q, self.b.clone()).signum()
    }

    pub fn cmp_integer(&self, k: i64) -> Ordering {
        self.cmp_rational(&BigRational::from_integer(k.into()))
    }

    /// Display-only floating value. `ω` is replaced by the convergent
    /// `F_120 / F_121`, which is accurate far beyond double precision, and the
    /// exact rational result is rounded once.
    pub fn to_f64(&self) -> f64 {
        let (num, den) = omega_convergent();
        let approx = &self.a + &self.b * BigRational::new(num, den);
        approx.to_f64().unwrap_or(f64::NAN)
    }
}

fn omega_convergent() -> (BigInt, BigInt) {
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    for _ in 0..120 {
        let f2 = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, f2);
    }
    // f0 = F_120, f1 = F_121
    (f0, f1)
}

impl Zero for GoldenNumber {
    fn zero() -> Self {
        GoldenNumber::from_integers(0, 0)
    }
    fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
}

impl One for GoldenNumber {
    fn one() -> Self {
        GoldenNumber::from_integers(1, 0)
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a + &rhs.a, &self.b + &rhs.b)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.a - &rhs.a, &self.b - &rhs.b)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        // (a + bω)(c + dω) = ac + (ad + bc)ω + bdω², ω² = 1 − ω
        let bd = &self.b * &rhs.b;
        GoldenNumber::new(
            &self.a * &rhs.a + &bd,
            &self.a * &rhs.b + &self.b * &rhs.a - bd,
        )
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-&self.a, -&self.b)
    }
}

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: GoldenNumber) -> GoldenNumber {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $method(self, rhs: &GoldenNumber) -> GoldenNumber {
                (&self).$method(rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl AddAssign<&GoldenNumber> for GoldenNumber {
    fn add_assign(&mut self, rhs: &GoldenNumber) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&GoldenNumber> for GoldenNumber {
    fn sub_assign(&mut self, rhs: &GoldenNumber) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl std::iter::Sum for GoldenNumber {
    fn sum<I: Iterator<Item = GoldenNumber>>(iter: I) -> Self {
        iter.fold(GoldenNumber::zero(), |mut acc, x| {
            acc += &x;
            acc
        })
    }
}

impl<'a> std::iter::Sum<&'a GoldenNumber> for GoldenNumber {
    fn sum<I: Iterator<Item = &'a GoldenNumber>>(iter: I) -> Self {
        iter.fold(GoldenNumber::zero(), |mut acc, x| {
            acc += x;
            acc
        })
    }
}

impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}ω", self.a, sign, self.b.abs())
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GoldenNumber({self})")
    }
}

/// Wire form: numerators and denominators as decimal strings, since the
/// coefficients routinely exceed 64 bits.
#[derive(Serialize, Deserialize)]
struct GoldenWire {
    a_num: String,
    a_den: String,
    b_num: String,
    b_den: String,
}

impl Serialize for GoldenNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        GoldenWire {
            a_num: self.a.numer().to_string(),
            a_den: self.a.denom().to_string(),
            b_num: self.b.numer().to_string(),
            b_den: self.b.denom().to_string(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GoldenNumber {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let w = GoldenWire::deserialize(d)?;
        let int = |s: &str| s.parse::<BigInt>().map_err(D::Error::custom);
        let ratio = |n: &str, m: &str| -> Result<BigRational, D::Error> {
            let den = int(m)?;
            if den.is_zero() {
                return Err(D::Error::custom("zero denominator"));
            }
            Ok(BigRational::new(int(n)?, den))
        };
        Ok(GoldenNumber::new(
            ratio(&w.a_num, &w.a_den)?,
            ratio(&w.b_num, &w.b_den)?,
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const OMEGA: f64 = 0.618_033_988_749_894_9;

    #[test]
    fn small_powers() {
        assert_eq!(GoldenNumber::omega_pow(0), GoldenNumber::one());
        assert_eq!(GoldenNumber::omega_pow(2), GoldenNumber::from_integers(1, -1));
        assert_eq!(GoldenNumber::omega_pow(3), GoldenNumber::from_integers(-1, 2));
        assert_eq!(GoldenNumber::omega_pow(4), GoldenNumber::from_integers(2, -3));
        for k in 0..40 {
            let exact = GoldenNumber::omega_pow(k);
            assert!(exact.is_integral());
            assert!((exact.to_f64() - OMEGA.powi(k as i32)).abs() < 1e-9);
            assert_eq!(exact, GoldenNumber::omega().pow(k as u32));
        }
    }

    #[test]
    fn comparisons_with_rationals() {
        let one = BigRational::one();
        assert_eq!(GoldenNumber::omega().cmp_rational(&one), Ordering::Less);
        let w = GoldenNumber::omega();
        assert_eq!((&w + &GoldenNumber::omega_pow(2)).cmp_rational(&one), Ordering::Equal);
        assert_eq!(w.scale_int(2).cmp_rational(&one), Ordering::Greater);
        // 2ω − 1 ≈ 0.236 is positive but tiny coefficients hide it.
        assert_eq!(GoldenNumber::from_integers(-1, 2).signum(), Ordering::Greater);
        // 1 − 2ω < 0, 3 − 5ω ≈ −0.09 < 0, 8ω − 5 ≈ −0.056 < 0
        assert_eq!(GoldenNumber::from_integers(1, -2).signum(), Ordering::Less);
        assert_eq!(GoldenNumber::from_integers(3, -5).signum(), Ordering::Less);
        assert_eq!(GoldenNumber::from_integers(-5, 8).signum(), Ordering::Less);
    }

    #[test]
    fn float_hint_survives_cancellation() {
        // ω^60 has coefficients near 1e12 but value near 3e-13.
        let x = GoldenNumber::omega_pow(60);
        let expected = OMEGA.powi(60);
        assert!((x.to_f64() - expected).abs() / expected < 1e-12);
    }

    #[test]
    fn reciprocal_and_division() {
        let omega = GoldenNumber::omega();
        assert_eq!(omega.recip().unwrap(), GoldenNumber::from_integers(1, 1));
        assert_eq!(
            GoldenNumber::omega_pow(2).recip().unwrap(),
            GoldenNumber::from_integers(2, 1)
        );
        assert!(GoldenNumber::zero().recip().is_none());
        let x = GoldenNumber::from_integers(-1, 2);
        assert_eq!(&x * &x.recip().unwrap(), GoldenNumber::one());
    }

    #[test]
    fn json_round_trip_and_display() {
        let x = GoldenNumber::new(
            BigRational::new(3.into(), 4.into()),
            BigRational::from_integer((-2).into()),
        );
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"{"a_num":"3","a_den":"4","b_num":"-2","b_den":"1"}"#);
        assert_eq!(serde_json::from_str::<GoldenNumber>(&json).unwrap(), x);
        assert_eq!(x.to_string(), "3/4 - 2ω");
    }

    fn arb_golden() -> impl Strategy<Value = GoldenNumber> {
        (-50i64..50, -50i64..50, 1i64..6, 1i64..6).prop_map(|(a, b, p, q)| {
            GoldenNumber::new(
                BigRational::new(a.into(), p.into()),
                BigRational::new(b.into(), q.into()),
            )
        })
    }

    proptest! {
        #[test]
        fn exponent_law(m in 0usize..64, n in 0usize..64) {
            prop_assert_eq!(
                &GoldenNumber::omega_pow(m) * &GoldenNumber::omega_pow(n),
                GoldenNumber::omega_pow(m + n)
            );
        }

        #[test]
        fn ring_laws(x in arb_golden(), y in arb_golden(), z in arb_golden()) {
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            prop_assert_eq!(&(&x - &y) + &y, x.clone());
        }

        #[test]
        fn ordering_agrees_with_floats(x in arb_golden(), y in arb_golden()) {
            let (fx, fy) = (x.to_f64(), y.to_f64());
            if (fx - fy).abs() > 1e-9 {
                prop_assert_eq!(x.cmp(&y), fx.partial_cmp(&fy).unwrap());
            }
            prop_assert_eq!(x.cmp(&x), Ordering::Equal);
        }
    }
}
