//! Exact scalars: rationals of arbitrary precision, optionally extended to a
//! real or imaginary quadratic field Q(sqrt(D)).

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

/// `a + b*sqrt(d)`. Invariant: `d == 1` exactly when `b == 0`, and `d` carries
/// no square factor below the trial-division bound.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Scalar {
    pub a: BigRational,
    pub b: BigRational,
    pub d: BigInt,
}

fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

/// Splits `n = s^2 * d` with `d` square-free up to the trial bound.
/// Huge prime-square cofactors beyond the bound stay inside `d`.
pub fn square_free_split(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero());
    let mut s = BigInt::one();
    let mut d = n.clone();
    if d.is_negative() {
        d = -d;
        // keep the sign in d at the end
    }
    let mut p = big(2);
    while &p * &p <= d && p < big(100_000) {
        let sq = &p * &p;
        while (&d % &sq).is_zero() {
            d /= &sq;
            s *= &p;
        }
        p += 1;
    }
    // the remainder may itself be a perfect square
    let r = d.sqrt();
    if &r * &r == d {
        s *= &r;
        d = BigInt::one();
    }
    if n.is_negative() {
        d = -d;
    }
    (s, d)
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar { a: BigRational::zero(), b: BigRational::zero(), d: BigInt::one() }
    }

    pub fn one() -> Self {
        Scalar { a: BigRational::one(), b: BigRational::zero(), d: BigInt::one() }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::from_rational(BigRational::from_integer(big(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0);
        Scalar::from_rational(BigRational::new(big(num), big(den)))
    }

    pub fn from_rational(a: BigRational) -> Self {
        Scalar { a, b: BigRational::zero(), d: BigInt::one() }
    }

    /// `a + b*sqrt(d)` with normalization of the radicand.
    pub fn quadratic(a: BigRational, b: BigRational, d: BigInt) -> Self {
        if b.is_zero() || d.is_one() {
            return Scalar::from_rational(a + b);
        }
        assert!(!d.is_zero(), "zero radicand");
        let (s, d0) = square_free_split(&d);
        let b = b * BigRational::from_integer(s);
        if d0.is_one() {
            Scalar::from_rational(a + b)
        } else {
            Scalar { a, b, d: d0 }
        }
    }

    /// Exact square root of a rational, as an element of Q(sqrt(D)).
    pub fn sqrt_rational(r: &BigRational) -> Self {
        if r.is_zero() {
            return Scalar::zero();
        }
        // sqrt(p/q) = sqrt(p*q)/q
        let pq = r.numer() * r.denom();
        let (s, d) = square_free_split(&pq);
        let b = BigRational::new(s, r.denom().clone());
        Scalar::quadratic(BigRational::zero(), b, d)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.b.is_zero() {
            Some(&self.a)
        } else {
            None
        }
    }

    pub fn conjugate(&self) -> Self {
        Scalar { a: self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }

    /// Field norm `a^2 - b^2 d`, a rational.
    pub fn field_norm(&self) -> BigRational {
        &self.a * &self.a - &self.b * &self.b * BigRational::from_integer(self.d.clone())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        let n = self.field_norm();
        assert!(!n.is_zero(), "norm zero in quadratic extension");
        Scalar { a: &self.a / &n, b: -&self.b / &n, d: self.d.clone() }
    }

    /// Radicand both operands must share; rational values are compatible with
    /// everything.
    fn join_d(&self, other: &Self) -> BigInt {
        if self.b.is_zero() {
            other.d.clone()
        } else if other.b.is_zero() {
            self.d.clone()
        } else {
            assert!(self.d == other.d, "mixed quadratic extensions: sqrt({}) vs sqrt({})", self.d, other.d);
            self.d.clone()
        }
    }

    pub fn to_f64(&self) -> f64 {
        assert!(!self.d.is_negative(), "imaginary scalar; use to_c64");
        let mut x = self.a.to_f64().unwrap_or(f64::NAN);
        if !self.b.is_zero() {
            x += self.b.to_f64().unwrap_or(f64::NAN) * self.d.to_f64().unwrap_or(f64::NAN).sqrt();
        }
        x
    }

    pub fn to_c64(&self) -> Complex64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return Complex64::new(a, 0.0);
        }
        let b = self.b.to_f64().unwrap_or(f64::NAN);
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        if d >= 0.0 {
            Complex64::new(a + b * d.sqrt(), 0.0)
        } else {
            Complex64::new(a, b * (-d).sqrt())
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b, d: self.d }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a.clone(), b: -self.b.clone(), d: self.d.clone() }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let d = self.join_d(rhs);
        let b = &self.b + &rhs.b;
        if b.is_zero() {
            Scalar::from_rational(&self.a + &rhs.a)
        } else {
            Scalar { a: &self.a + &rhs.a, b, d }
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
        if self.is_zero() || rhs.is_zero() {
            return Scalar::zero();
        }
        let d = self.join_d(rhs);
        let dr = BigRational::from_integer(d.clone());
        let a = &self.a * &rhs.a + &self.b * &rhs.b * &dr;
        let b = &self.a * &rhs.b + &self.b * &rhs.a;
        if b.is_zero() {
            Scalar::from_rational(a)
        } else {
            Scalar { a, b, d }
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", fmt_rational(&self.a));
        }
        let root = if self.b.abs().is_one() {
            format!("√{}", self.d)
        } else {
            format!("{}√{}", fmt_rational(&self.b.abs()), self.d)
        };
        if self.a.is_zero() {
            if self.b.is_negative() {
                write!(f, "-{}", root)
            } else {
                write!(f, "{}", root)
            }
        } else if self.b.is_negative() {
            write!(f, "{}-{}", fmt_rational(&self.a), root)
        } else {
            write!(f, "{}+{}", fmt_rational(&self.a), root)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_free() {
        let (s, d) = square_free_split(&big(72));
        assert_eq!((s, d), (big(6), big(2)));
        let (s, d) = square_free_split(&big(-50));
        assert_eq!((s, d), (big(5), big(-2)));
        let (s, d) = square_free_split(&big(49));
        assert_eq!((s, d), (big(7), big(1)));
    }

    #[test]
    fn quadratic_arithmetic() {
        let x = Scalar::quadratic(BigRational::from_integer(big(1)), BigRational::from_integer(big(1)), big(5));
        let y = &x * &x; // 6 + 2 sqrt5
        assert_eq!(y.a, BigRational::from_integer(big(6)));
        assert_eq!(y.b, BigRational::from_integer(big(2)));
        let z = &y / &x;
        assert_eq!(z, x);
        let w = &x * &x.conjugate(); // norm 1 - 5 = -4
        assert_eq!(w, Scalar::from_int(-4));
    }

    #[test]
    fn sqrt_of_rational() {
        let r = BigRational::new(big(8), big(9));
        let s = Scalar::sqrt_rational(&r); // (2/3) sqrt2
        let sq = &s * &s;
        assert_eq!(sq.as_rational().unwrap(), &r);
        assert_eq!(s.d, big(2));
    }

    #[test]
    fn collapse_to_rational() {
        let x = Scalar::quadratic(BigRational::zero(), BigRational::from_integer(big(2)), big(9));
        assert!(x.is_rational());
        assert_eq!(x, Scalar::from_int(6));
    }
}
