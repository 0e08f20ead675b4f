//! Gaussian rationals `a + b·i` with arbitrary-precision rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An element of ℚ(i).
///
/// Both parts are kept as reduced fractions with positive denominators
/// (guaranteed by `BigRational`), so structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    re: BigRational,
    im: BigRational,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar { re, im }
    }

    pub fn from_int(v: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(v)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Scalar {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    pub fn gaussian(re: i64, im: i64) -> Self {
        Scalar {
            re: BigRational::from_integer(BigInt::from(re)),
            im: BigRational::from_integer(BigInt::from(im)),
        }
    }

    pub fn i() -> Self {
        Scalar::gaussian(0, 1)
    }

    pub fn re(&self) -> &BigRational {
        &self.re
    }

    pub fn im(&self) -> &BigRational {
        &self.im
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    /// `|z|²`, a nonnegative rational.
    pub fn norm_sqr(&self) -> BigRational {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.im.is_zero() {
            return Some(Scalar {
                re: self.re.recip(),
                im: BigRational::zero(),
            });
        }
        let n = self.norm_sqr();
        Some(Scalar {
            re: &self.re / &n,
            im: -(&self.im / &n),
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Approximate value as a pair of doubles; used only to seed numeric
    /// root candidates that are then checked exactly.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        (ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    /// Best rational approximation of a double with bounded denominator.
    pub fn approx_from_f64(re: f64, im: f64, max_den: i64) -> Option<Self> {
        Some(Scalar {
            re: rationalize(re, max_den)?,
            im: rationalize(im, max_den)?,
        })
    }
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    match (q.numer().to_f64(), q.denom().to_f64()) {
        (Some(a), Some(b)) if a.is_finite() && b.is_finite() => a / b,
        _ => q.to_f64().unwrap_or(f64::NAN),
    }
}

fn rationalize(x: f64, max_den: i64) -> Option<BigRational> {
    if !x.is_finite() || x.abs() > 1e15 {
        return None;
    }
    // continued-fraction convergents
    let (mut h0, mut h1) = (0i128, 1i128);
    let (mut k0, mut k1) = (1i128, 0i128);
    let mut v = x;
    for _ in 0..64 {
        let a = v.floor();
        let ai = a as i128;
        let h2 = ai * h1 + h0;
        let k2 = ai * k1 + k0;
        if k2 > max_den as i128 {
            break;
        }
        h0 = h1;
        h1 = h2;
        k0 = k1;
        k1 = k2;
        let frac = v - a;
        if frac.abs() < 1e-12 {
            break;
        }
        v = 1.0 / frac;
    }
    if k1 == 0 {
        return None;
    }
    Some(BigRational::new(BigInt::from(h1), BigInt::from(k1)))
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar {
            re: BigRational::zero(),
            im: BigRational::zero(),
        }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
    fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::from_int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(re: BigRational) -> Self {
        Scalar {
            re,
            im: BigRational::zero(),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let im = if self.im.is_zero() {
            o.im.clone()
        } else if o.im.is_zero() {
            self.im.clone()
        } else {
            &self.im + &o.im
        };
        Scalar {
            re: &self.re + &o.re,
            im,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        let im = if o.im.is_zero() {
            self.im.clone()
        } else {
            &self.im - &o.im
        };
        Scalar {
            re: &self.re - &o.re,
            im,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        match (self.im.is_zero(), o.im.is_zero()) {
            (true, true) => Scalar {
                re: &self.re * &o.re,
                im: BigRational::zero(),
            },
            (true, false) => Scalar {
                re: &self.re * &o.re,
                im: &self.re * &o.im,
            },
            (false, true) => Scalar {
                re: &self.re * &o.re,
                im: &self.im * &o.re,
            },
            (false, false) => Scalar {
                re: &self.re * &o.re - &self.im * &o.im,
                im: &self.re * &o.im + &self.im * &o.re,
            },
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &Scalar) -> Scalar {
        let inv = o.inv().expect("division by zero Scalar");
        self * &inv
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: -self.re,
            im: -self.im,
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -self.clone()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re += &o.re;
        if !o.im.is_zero() {
            self.im += &o.im;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.re -= &o.re;
        if !o.im.is_zero() {
            self.im -= &o.im;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

fn fmt_ratio(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl Scalar {
    /// Canonical text form: `3/2`, `-1`, `(1/2i)`, `(3/2+1/2i)`, `(i)`.
    ///
    /// Non-real values are always parenthesized so the rendering can be
    /// used directly as a polynomial coefficient.
    pub fn render(&self) -> String {
        if self.im.is_zero() {
            return fmt_ratio(&self.re);
        }
        let im_abs = self.im.abs();
        let im_txt = if im_abs.is_one() {
            "i".to_string()
        } else {
            format!("{}i", fmt_ratio(&im_abs))
        };
        if self.re.is_zero() {
            if self.im.is_negative() {
                format!("(-{im_txt})")
            } else {
                format!("({im_txt})")
            }
        } else {
            let sign = if self.im.is_negative() { '-' } else { '+' };
            format!("({}{}{})", fmt_ratio(&self.re), sign, im_txt)
        }
    }

    /// True when the canonical rendering starts with a minus sign, i.e. the
    /// value is a negative real.
    pub fn is_negative_real(&self) -> bool {
        self.im.is_zero() && self.re.is_negative()
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
