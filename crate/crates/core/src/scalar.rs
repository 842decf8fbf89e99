//! Exact coefficient fields: the rationals and prime fields of odd characteristic.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// A coefficient field. Every computation in the crate is generic over one.
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + MulAssign
{
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn inv(&self) -> Option<Self>;
    /// 0 for the rationals, p for F_p.
    fn characteristic() -> u64;
    /// Short name used in reports, e.g. `Q` or `F_5`.
    fn name() -> String;

    /// `(-1)^odd`.
    fn sign(odd: bool) -> Self {
        if odd {
            -Self::one()
        } else {
            Self::one()
        }
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

/// Exact rational number. Small values stay in machine words; anything that
/// would overflow is promoted to a big rational.
#[derive(Clone)]
pub enum Q {
    Small(i64, i64),
    Big(Box<BigRational>),
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

impl Q {
    pub fn new(num: i64, den: i64) -> Q {
        assert!(den != 0, "zero denominator");
        Q::from_i128(num as i128, den as i128)
    }

    fn from_i128(mut n: i128, mut d: i128) -> Q {
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_i128(n, d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        if n == 0 {
            return Q::Small(0, 1);
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) if a != i64::MIN => Q::Small(a, b),
            _ => Q::Big(Box::new(BigRational::new(BigInt::from(n), BigInt::from(d)))),
        }
    }

    fn from_big(r: BigRational) -> Q {
        if let (Some(n), Some(d)) = (r.numer().to_i64(), r.denom().to_i64()) {
            if n != i64::MIN {
                return Q::Small(n, d);
            }
        }
        Q::Big(Box::new(r))
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Q::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Q::Big(r) => (**r).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.to_big().numer().clone()
    }

    pub fn denom(&self) -> BigInt {
        self.to_big().denom().clone()
    }

    /// Parse `n` or `n/d`.
    pub fn parse(s: &str) -> Option<Q> {
        let s = s.trim();
        let (n, d) = match s.split_once('/') {
            Some((n, d)) => (
                n.trim().parse::<BigInt>().ok()?,
                d.trim().parse::<BigInt>().ok()?,
            ),
            None => (s.parse::<BigInt>().ok()?, BigInt::one()),
        };
        if d.is_zero() {
            return None;
        }
        Some(Q::from_big(BigRational::new(n, d)))
    }
}

impl PartialEq for Q {
    fn eq(&self, other: &Q) -> bool {
        match (self, other) {
            (Q::Small(a, b), Q::Small(c, d)) => a == c && b == d,
            // canonical form: a value is Big only when it does not fit Small
            (Q::Big(x), Q::Big(y)) => x == y,
            _ => false,
        }
    }
}
impl Eq for Q {}

impl Hash for Q {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        match self {
            Q::Small(a, b) => {
                0u8.hash(state);
                a.hash(state);
                b.hash(state);
            }
            Q::Big(r) => {
                1u8.hash(state);
                r.hash(state);
            }
        }
    }
}

impl fmt::Debug for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Q {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Q::Small(n, 1) => write!(f, "{n}"),
            Q::Small(n, d) => write!(f, "{n}/{d}"),
            Q::Big(r) if r.denom().is_one() => write!(f, "{}", r.numer()),
            Q::Big(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Add for Q {
    type Output = Q;
    fn add(self, o: Q) -> Q {
        match (&self, &o) {
            (Q::Small(a, 1), Q::Small(c, 1)) => match a.checked_add(*c) {
                Some(s) if s != i64::MIN => Q::Small(s, 1),
                _ => Q::from_i128(*a as i128 + *c as i128, 1),
            },
            (Q::Small(a, b), Q::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                match a.checked_mul(d).zip(c.checked_mul(b)) {
                    Some((x, y)) => Q::from_i128(x + y, b * d),
                    None => Q::from_big(self.to_big() + o.to_big()),
                }
            }
            _ => Q::from_big(self.to_big() + o.to_big()),
        }
    }
}

impl Neg for Q {
    type Output = Q;
    fn neg(self) -> Q {
        match self {
            Q::Small(a, b) => Q::Small(-a, b),
            Q::Big(r) => Q::from_big(-*r),
        }
    }
}

impl Sub for Q {
    type Output = Q;
    fn sub(self, o: Q) -> Q {
        self + (-o)
    }
}

impl Mul for Q {
    type Output = Q;
    fn mul(self, o: Q) -> Q {
        match (&self, &o) {
            (Q::Small(a, b), Q::Small(c, d)) => {
                Q::from_i128(*a as i128 * *c as i128, *b as i128 * *d as i128)
            }
            _ => Q::from_big(self.to_big() * o.to_big()),
        }
    }
}

impl AddAssign for Q {
    fn add_assign(&mut self, o: Q) {
        *self = std::mem::replace(self, Q::Small(0, 1)) + o;
    }
}
impl SubAssign for Q {
    fn sub_assign(&mut self, o: Q) {
        *self = std::mem::replace(self, Q::Small(0, 1)) - o;
    }
}
impl MulAssign for Q {
    fn mul_assign(&mut self, o: Q) {
        *self = std::mem::replace(self, Q::Small(0, 1)) * o;
    }
}

impl Field for Q {
    fn zero() -> Q {
        Q::Small(0, 1)
    }
    fn one() -> Q {
        Q::Small(1, 1)
    }
    fn from_i64(n: i64) -> Q {
        Q::from_i128(n as i128, 1)
    }
    fn is_zero(&self) -> bool {
        matches!(self, Q::Small(0, _))
    }
    fn inv(&self) -> Option<Q> {
        match self {
            Q::Small(0, _) => None,
            Q::Small(a, b) => Some(Q::from_i128(*b as i128, *a as i128)),
            Q::Big(r) => Some(Q::from_big(r.recip())),
        }
    }
    fn characteristic() -> u64 {
        0
    }
    fn name() -> String {
        "Q".into()
    }
}

impl Q {
    pub fn is_negative(&self) -> bool {
        match self {
            Q::Small(a, _) => *a < 0,
            Q::Big(r) => r.is_negative(),
        }
    }
}

/// Residues modulo the odd prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fp<const P: u32>(u32);

impl<const P: u32> Fp<P> {
    pub fn new(v: i64) -> Self {
        Fp(v.rem_euclid(P as i64) as u32)
    }
    pub fn value(self) -> u32 {
        self.0
    }
}

impl<const P: u32> fmt::Debug for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl<const P: u32> fmt::Display for Fp<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // symmetric representative reads better in reports
        let v = self.0 as i64;
        if v > P as i64 / 2 {
            write!(f, "{}", v - P as i64)
        } else {
            write!(f, "{v}")
        }
    }
}

impl<const P: u32> Add for Fp<P> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Fp(((self.0 as u64 + o.0 as u64) % P as u64) as u32)
    }
}
impl<const P: u32> Sub for Fp<P> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Fp(((self.0 as u64 + P as u64 - o.0 as u64) % P as u64) as u32)
    }
}
impl<const P: u32> Mul for Fp<P> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Fp(((self.0 as u64 * o.0 as u64) % P as u64) as u32)
    }
}
impl<const P: u32> Neg for Fp<P> {
    type Output = Self;
    fn neg(self) -> Self {
        if self.0 == 0 {
            self
        } else {
            Fp(P - self.0)
        }
    }
}
impl<const P: u32> AddAssign for Fp<P> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}
impl<const P: u32> SubAssign for Fp<P> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}
impl<const P: u32> MulAssign for Fp<P> {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl<const P: u32> Field for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1 % P)
    }
    fn from_i64(n: i64) -> Self {
        Fp::new(n)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn inv(&self) -> Option<Self> {
        if self.0 == 0 {
            return None;
        }
        let (mut base, mut exp, mut acc) = (self.0 as u64, P as u64 - 2, 1u64);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % P as u64;
            }
            base = base * base % P as u64;
            exp >>= 1;
        }
        Some(Fp(acc as u32))
    }
    fn characteristic() -> u64 {
        P as u64
    }
    fn name() -> String {
        format!("F_{P}")
    }
}

pub type F3 = Fp<3>;
pub type F5 = Fp<5>;
pub type F7 = Fp<7>;

/// Odd primes accepted by the runtime field selector.
pub const SUPPORTED_PRIMES: &[u32] = &[3, 5, 7, 101];

/// Runtime choice of coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldChoice {
    Rational,
    Prime(u32),
}

impl FieldChoice {
    /// Parses `q` or `fp:<p>`.
    pub fn parse(s: &str) -> Result<FieldChoice, String> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldChoice::Rational);
        }
        let p = s
            .strip_prefix("fp:")
            .ok_or_else(|| format!("unknown field `{s}` (expected `q` or `fp:<p>`)"))?;
        let p: u32 = p.parse().map_err(|_| format!("bad prime `{p}`"))?;
        if p == 2 {
            return Err("characteristic 2 is not supported".into());
        }
        if !is_prime(p) {
            return Err(format!("{p} is not prime"));
        }
        if !SUPPORTED_PRIMES.contains(&p) {
            return Err(format!(
                "prime {p} is not compiled in; supported: {SUPPORTED_PRIMES:?}"
            ));
        }
        Ok(FieldChoice::Prime(p))
    }

    pub fn label(&self) -> String {
        match self {
            FieldChoice::Rational => "Q".into(),
            FieldChoice::Prime(p) => format!("F_{p}"),
        }
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut i = 2u32;
    while (i as u64) * (i as u64) <= n as u64 {
        if n.is_multiple_of(i) {
            return false;
        }
        i += 1;
    }
    true
}

/// Runs `$body` with the type alias `$K` bound to the field selected by `$choice`.
#[macro_export]
macro_rules! with_field {
    ($choice:expr, $K:ident => $body:expr) => {{
        use $crate::scalar::{FieldChoice, Fp, Q};
        match $choice {
            FieldChoice::Rational => {
                type $K = Q;
                $body
            }
            FieldChoice::Prime(3) => {
                type $K = Fp<3>;
                $body
            }
            FieldChoice::Prime(5) => {
                type $K = Fp<5>;
                $body
            }
            FieldChoice::Prime(7) => {
                type $K = Fp<7>;
                $body
            }
            FieldChoice::Prime(101) => {
                type $K = Fp<101>;
                $body
            }
            FieldChoice::Prime(p) => panic!("prime {p} not supported"),
        }
    }};
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_overflow_promotes() {
        let big = Q::from_i64(i64::MAX);
        let s = big.clone() + big.clone();
        assert!(matches!(s, Q::Big(_)));
        let back = s - big.clone();
        assert_eq!(back, big);
        assert!(matches!(back, Q::Small(..)));
    }

    #[test]
    fn rational_arithmetic() {
        let a = Q::new(1, 2);
        let b = Q::new(1, 3);
        assert_eq!(a.clone() + b.clone(), Q::new(5, 6));
        assert_eq!(a.clone() * b, Q::new(1, 6));
        assert_eq!(a.inv().unwrap(), Q::from_i64(2));
        assert_eq!(Q::parse("-6/4").unwrap(), Q::new(-3, 2));
    }

    #[test]
    fn prime_field_inverse() {
        for v in 1..7 {
            let x = F7::new(v);
            assert!((x * x.inv().unwrap()).is_one());
        }
        assert_eq!(F5::from_i64(-1).value(), 4);
    }

    #[test]
    fn field_choice_parse() {
        assert_eq!(FieldChoice::parse("q").unwrap(), FieldChoice::Rational);
        assert_eq!(FieldChoice::parse("fp:5").unwrap(), FieldChoice::Prime(5));
        assert!(FieldChoice::parse("fp:2").is_err());
        assert!(FieldChoice::parse("fp:9").is_err());
        assert!(FieldChoice::parse("fp:13").is_err());
        for p in SUPPORTED_PRIMES {
            let f = FieldChoice::parse(&format!("fp:{p}")).unwrap();
            assert_eq!(with_field!(f, K => K::characteristic()), *p as u64);
        }
    }
}
