//! Extended-precision complex scalar.
//!
//! Every parameter (q, a, b, c, z, x, lambda) and every intermediate value of the
//! library is a [`Complex`]. Each value remembers the working precision it was
//! created at; binary operations run at the larger of the two operand
//! precisions, so a computation seeded at `P` digits stays at `P` digits.

use std::cell::RefCell;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{QcfError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Extra binary digits carried on top of the requested decimal precision.
const GUARD_BITS: usize = 16;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Working precision in significant decimal digits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Precision(u32);

impl Precision {
    pub const DEFAULT: Precision = Precision(50);
    pub const MIN_DIGITS: u32 = 16;

    pub fn digits(d: u32) -> Self {
        Precision(d.max(Self::MIN_DIGITS))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn bits(self) -> usize {
        (self.0 as f64 * std::f64::consts::LOG2_10).ceil() as usize + GUARD_BITS
    }

    pub fn doubled(self) -> Self {
        Precision(self.0 * 2)
    }

    /// Radius `10^-(P/2)` inside which a quantity is treated as zero when
    /// testing for poles and degenerate denominators.
    pub fn exclusion_radius(self) -> f64 {
        10f64.powi(-((self.0 / 2) as i32))
    }

    /// `10^-(P-10)`: the agreement expected from two algebraically identical
    /// computation routes.
    pub fn structural_tol(self) -> f64 {
        10f64.powi(-((self.0 - 10) as i32))
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::DEFAULT
    }
}

impl fmt::Display for Precision {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Complex number with arbitrary-precision real and imaginary parts.
#[derive(Clone)]
pub struct Complex {
    re: BigFloat,
    im: BigFloat,
    prec: Precision,
}

/// Lossy conversion used for bounds and diagnostics only.
pub(crate) fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    // mantissa is normalized: value = 0.m * 2^exp with the top bit of the last word set
    let top = *words.last().unwrap_or(&0) as f64;
    let mag = top * 2f64.powi(exp - 64);
    match sign {
        Sign::Neg => -mag,
        Sign::Pos => mag,
    }
}

impl Complex {
    pub fn new(re: BigFloat, im: BigFloat, prec: Precision) -> Self {
        let bits = prec.bits();
        let mut re = re;
        let mut im = im;
        // set_precision only fails on invalid precision values
        let _ = re.set_precision(bits, RM);
        let _ = im.set_precision(bits, RM);
        Complex { re, im, prec }
    }

    pub fn from_f64(re: f64, prec: Precision) -> Self {
        Self::from_parts_f64(re, 0.0, prec)
    }

    pub fn from_parts_f64(re: f64, im: f64, prec: Precision) -> Self {
        let bits = prec.bits();
        Complex {
            re: BigFloat::from_f64(re, bits),
            im: BigFloat::from_f64(im, bits),
            prec,
        }
    }

    /// `r * exp(i theta)` built from f64 polar coordinates.
    pub fn from_polar_f64(r: f64, theta: f64, prec: Precision) -> Self {
        Self::from_parts_f64(r * theta.cos(), r * theta.sin(), prec)
    }

    pub fn zero(prec: Precision) -> Self {
        Self::from_f64(0.0, prec)
    }

    pub fn one(prec: Precision) -> Self {
        Self::from_f64(1.0, prec)
    }

    /// Integer (or small rational-free) constant at this value's precision.
    pub fn constant(&self, v: f64) -> Self {
        Self::from_f64(v, self.prec)
    }

    /// Parses `"0.3"`, `"-2.5e-1"`, `"0.1+0.2i"`, `"0.3i"`, `"-i"`.
    ///
    /// Decimal literals are rounded once at the target precision, so `"0.1"` is
    /// the correctly rounded binary value of one tenth, not the f64 one.
    pub fn parse(s: &str, prec: Precision) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(QcfError::Parse("empty number".into()));
        }
        let bits = prec.bits();
        if let Some(body) = t.strip_suffix('i').or_else(|| t.strip_suffix('j')) {
            // split "re+imi" at the last sign that is not part of an exponent
            let bytes = body.as_bytes();
            let mut split = None;
            for k in (1..bytes.len()).rev() {
                if (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E') {
                    split = Some(k);
                    break;
                }
            }
            let (re_s, im_s) = match split {
                Some(k) => (&body[..k], &body[k..]),
                None => ("0", body),
            };
            let im_s = match im_s {
                "" | "+" => "1",
                "-" => "-1",
                other => other,
            };
            let re = parse_real(re_s, bits)?;
            let im = parse_real(im_s, bits)?;
            Ok(Complex { re, im, prec })
        } else {
            let re = parse_real(&t, bits)?;
            Ok(Complex {
                re,
                im: BigFloat::from_f64(0.0, bits),
                prec,
            })
        }
    }

    pub fn precision(&self) -> Precision {
        self.prec
    }

    /// Re-rounds both components to `prec`.
    pub fn with_precision(&self, prec: Precision) -> Self {
        Self::new(self.re.clone(), self.im.clone(), prec)
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    pub fn re_f64(&self) -> f64 {
        big_to_f64(&self.re)
    }

    pub fn im_f64(&self) -> f64 {
        big_to_f64(&self.im)
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn is_finite(&self) -> bool {
        !(self.re.is_nan() || self.im.is_nan() || self.re.is_inf() || self.im.is_inf())
    }

    pub fn conj(&self) -> Self {
        Complex {
            re: self.re.clone(),
            im: BigFloat::neg(&self.im),
            prec: self.prec,
        }
    }

    /// |z|^2 as a full-precision real.
    pub fn norm_sqr_big(&self) -> BigFloat {
        let p = self.prec.bits();
        self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM)
    }

    /// |z| as a full-precision real.
    pub fn abs_big(&self) -> BigFloat {
        self.norm_sqr_big().sqrt(self.prec.bits(), RM)
    }

    /// |z| as a complex number with zero imaginary part.
    pub fn norm(&self) -> Self {
        Complex {
            re: self.abs_big(),
            im: BigFloat::from_f64(0.0, self.prec.bits()),
            prec: self.prec,
        }
    }

    /// |z| rounded to f64 (bounds and diagnostics).
    pub fn abs_f64(&self) -> f64 {
        let re = self.re_f64();
        let im = self.im_f64();
        if re.is_finite() && im.is_finite() && (re != 0.0 || im != 0.0) {
            re.hypot(im)
        } else {
            big_to_f64(&self.abs_big())
        }
    }

    pub fn scale_f64(&self, k: f64) -> Self {
        self * &self.constant(k)
    }

    /// `1 / z`, or a domain error when `z` is zero.
    pub fn recip(&self) -> Result<Self> {
        self.one_like().checked_div(self)
    }

    pub fn one_like(&self) -> Self {
        Self::one(self.prec)
    }

    pub fn zero_like(&self) -> Self {
        Self::zero(self.prec)
    }

    /// Division that refuses a zero divisor instead of returning infinity.
    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(QcfError::domain("division by zero"));
        }
        let out = self / rhs;
        if out.is_finite() {
            Ok(out)
        } else {
            Err(QcfError::domain("non-finite quotient"))
        }
    }

    /// Integer power by repeated squaring; negative exponents need a nonzero base.
    pub fn powi(&self, n: i64) -> Result<Self> {
        let mut base = if n < 0 { self.recip()? } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = self.one_like();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    /// Nonnegative integer power; never fails.
    pub fn pow(&self, n: u64) -> Self {
        self.powi(n as i64).expect("nonnegative powers are total")
    }

    /// Lossless-at-working-precision text form of the real part.
    pub fn re_string(&self) -> String {
        self.re.to_string()
    }

    pub fn im_string(&self) -> String {
        self.im.to_string()
    }

    /// Short human-readable form with `digits` significant digits per component.
    pub fn to_short_string(&self, digits: usize) -> String {
        let re = self.re_f64();
        let im = self.im_f64();
        if im == 0.0 {
            format!("{re:.digits$e}")
        } else {
            format!(
                "{re:.digits$e}{}{:.digits$e}i",
                if im < 0.0 { "-" } else { "+" },
                im.abs()
            )
        }
    }

    fn bits_with(&self, other: &Self) -> (usize, Precision) {
        let p = self.prec.max(other.prec);
        (p.bits(), p)
    }
}

fn parse_real(s: &str, bits: usize) -> Result<BigFloat> {
    let s = s.strip_prefix('+').unwrap_or(s);
    let x = CONSTS.with(|cc| BigFloat::parse(s, Radix::Dec, bits, RM, &mut cc.borrow_mut()));
    if x.is_nan() || x.is_inf() {
        Err(QcfError::Parse(format!("not a finite decimal number: '{s}'")))
    } else {
        Ok(x)
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl<'a> $trait<&'a Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                let f: fn(&Complex, &Complex) -> Complex = $body;
                f(self, rhs)
            }
        }
        impl $trait<Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $trait<&'a Complex> for Complex {
            type Output = Complex;
            fn $method(self, rhs: &'a Complex) -> Complex {
                (&self).$method(rhs)
            }
        }
        impl<'a> $trait<Complex> for &'a Complex {
            type Output = Complex;
            fn $method(self, rhs: Complex) -> Complex {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| {
    let (p, prec) = x.bits_with(y);
    Complex {
        re: x.re.add(&y.re, p, RM),
        im: x.im.add(&y.im, p, RM),
        prec,
    }
});

forward_binop!(Sub, sub, |x, y| {
    let (p, prec) = x.bits_with(y);
    Complex {
        re: x.re.sub(&y.re, p, RM),
        im: x.im.sub(&y.im, p, RM),
        prec,
    }
});

forward_binop!(Mul, mul, |x, y| {
    let (p, prec) = x.bits_with(y);
    if x.im.is_zero() && y.im.is_zero() {
        return Complex {
            re: x.re.mul(&y.re, p, RM),
            im: BigFloat::from_f64(0.0, p),
            prec,
        };
    }
    let ac = x.re.mul(&y.re, p, RM);
    let bd = x.im.mul(&y.im, p, RM);
    let ad = x.re.mul(&y.im, p, RM);
    let bc = x.im.mul(&y.re, p, RM);
    Complex {
        re: ac.sub(&bd, p, RM),
        im: ad.add(&bc, p, RM),
        prec,
    }
});

forward_binop!(Div, div, |x, y| {
    let (p, prec) = x.bits_with(y);
    if y.im.is_zero() {
        return Complex {
            re: x.re.div(&y.re, p, RM),
            im: x.im.div(&y.re, p, RM),
            prec,
        };
    }
    let den = y.re.mul(&y.re, p, RM).add(&y.im.mul(&y.im, p, RM), p, RM);
    let re = x.re.mul(&y.re, p, RM).add(&x.im.mul(&y.im, p, RM), p, RM);
    let im = x.im.mul(&y.re, p, RM).sub(&x.re.mul(&y.im, p, RM), p, RM);
    Complex {
        re: re.div(&den, p, RM),
        im: im.div(&den, p, RM),
        prec,
    }
});

impl Neg for Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: BigFloat::neg(&self.re),
            im: BigFloat::neg(&self.im),
            prec: self.prec,
        }
    }
}

impl Neg for &Complex {
    type Output = Complex;
    fn neg(self) -> Complex {
        Complex {
            re: BigFloat::neg(&self.re),
            im: BigFloat::neg(&self.im),
            prec: self.prec,
        }
    }
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.re.cmp(&other.re) == Some(0) && self.im.cmp(&other.im) == Some(0)
    }
}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Complex({} + {}i @{})", self.re, self.im, self.prec)
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", self.re, BigFloat::neg(&self.im))
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

impl Serialize for Complex {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Complex", 2)?;
        s.serialize_field("re", &self.re_string())?;
        s.serialize_field("im", &self.im_string())?;
        s.end()
    }
}

/// Relative difference `|x - y| / max(|x|, |y|, 1)`.
pub fn rel_diff(x: &Complex, y: &Complex) -> f64 {
    let d = (x - y).abs_f64();
    d / x.abs_f64().max(y.abs_f64()).max(1.0)
}
