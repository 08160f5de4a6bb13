//! Exact Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff(pub Complex<BigRational>);

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Coeff {
    pub fn zero() -> Self {
        Self(Complex::new(BigRational::zero(), BigRational::zero()))
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn int(n: i64) -> Self {
        Self::frac(n, 1)
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self(Complex::new(rat(n, d), BigRational::zero()))
    }

    pub fn i() -> Self {
        Self(Complex::new(BigRational::zero(), BigRational::one()))
    }

    pub fn complex(re: BigRational, im: BigRational) -> Self {
        Self(Complex::new(re, im))
    }

    /// Exact rational image of a finite float.
    pub fn from_f64(re: f64, im: f64) -> Self {
        let conv = |v: f64| BigRational::from_float(v).unwrap_or_else(BigRational::zero);
        Self(Complex::new(conv(re), conv(im)))
    }

    pub fn is_zero(&self) -> bool {
        self.0.re.is_zero() && self.0.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Self(self.0.conj())
    }

    pub fn re(&self) -> &BigRational {
        &self.0.re
    }

    pub fn im(&self) -> &BigRational {
        &self.0.im
    }

    /// Exact test for a strictly positive real value.
    pub fn is_positive_real(&self) -> bool {
        self.is_real() && num_traits::Signed::is_positive(self.re())
    }

    pub fn is_real(&self) -> bool {
        self.0.im.is_zero()
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::one(), |acc, _| &acc * self)
    }

    pub fn scale_int(&self, n: i64) -> Self {
        self * &Self::int(n)
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.0.re.to_f64().unwrap_or(f64::NAN),
            self.0.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Default for Coeff {
    fn default() -> Self {
        Self::zero()
    }
}

impl Add for &Coeff {
    type Output = Coeff;
    fn add(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 + &rhs.0)
    }
}

impl Sub for &Coeff {
    type Output = Coeff;
    fn sub(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 - &rhs.0)
    }
}

impl Mul for &Coeff {
    type Output = Coeff;
    fn mul(self, rhs: &Coeff) -> Coeff {
        Coeff(&self.0 * &rhs.0)
    }
}

impl Neg for &Coeff {
    type Output = Coeff;
    fn neg(self) -> Coeff {
        Coeff(-self.0.clone())
    }
}

impl AddAssign<&Coeff> for Coeff {
    fn add_assign(&mut self, rhs: &Coeff) {
        self.0 = &self.0 + &rhs.0;
    }
}

fn fmt_rat(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = (&self.0.re, &self.0.im);
        match (re.is_zero(), im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rat(re)),
            (true, false) => {
                if im.is_one() {
                    write!(f, "i")
                } else if (-im).is_one() {
                    write!(f, "-i")
                } else {
                    write!(f, "{}i", fmt_rat(im))
                }
            }
            (false, false) => {
                let sign = if im.is_negative() { "-" } else { "+" };
                write!(f, "({}{}{}i)", fmt_rat(re), sign, fmt_rat(&im.abs()))
            }
        }
    }
}

pub(crate) fn binomial(n: u32, k: u32) -> i64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

/// Binomial coefficient without overflow.
pub(crate) fn binomial_exact(n: u32, k: u32) -> Coeff {
    if k > n {
        return Coeff::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    Coeff(Complex::new(BigRational::from_integer(acc), BigRational::zero()))
}

pub(crate) fn factorial(n: u32) -> i64 {
    (1..=n as i64).product()
}
