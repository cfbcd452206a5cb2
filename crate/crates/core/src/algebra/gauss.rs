//! Gaussian rationals `re + i·im`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use super::rational::Rat;
use crate::error::KappaError;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRat {
    pub re: Rat,
    pub im: Rat,
}

impl GaussRat {
    pub const ZERO: GaussRat = GaussRat { re: Rat::ZERO, im: Rat::ZERO };
    pub const ONE: GaussRat = GaussRat { re: Rat::ONE, im: Rat::ZERO };
    pub const I: GaussRat = GaussRat { re: Rat::ZERO, im: Rat::ONE };

    pub fn new(re: Rat, im: Rat) -> Self {
        GaussRat { re, im }
    }

    pub fn real(re: Rat) -> Self {
        GaussRat { re, im: Rat::ZERO }
    }

    pub fn int(n: i64) -> Self {
        Self::real(Rat::int(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::real(Rat::new(n, d))
    }

    pub fn imag(im: Rat) -> Self {
        GaussRat { re: Rat::ZERO, im }
    }

    /// `i^e` for any integer exponent.
    pub fn i_pow(e: i64) -> Self {
        match e.rem_euclid(4) {
            0 => Self::ONE,
            1 => Self::I,
            2 => Self::int(-1),
            _ => Self::imag(Rat::int(-1)),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        GaussRat { re: self.re.clone(), im: -self.im.clone() }
    }

    pub fn scale(&self, r: &Rat) -> Self {
        GaussRat { re: &self.re * r, im: &self.im * r }
    }

    pub fn checked_inv(&self) -> Result<Self, KappaError> {
        let norm = &(&self.re * &self.re) + &(&self.im * &self.im);
        let inv = norm.checked_inv()?;
        Ok(GaussRat { re: &self.re * &inv, im: -(&self.im * &inv) })
    }

    pub fn inv(&self) -> Self {
        self.checked_inv().expect("inverse of zero Gaussian rational")
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::ONE;
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl From<Rat> for GaussRat {
    fn from(r: Rat) -> Self {
        GaussRat::real(r)
    }
}

impl From<i64> for GaussRat {
    fn from(n: i64) -> Self {
        GaussRat::int(n)
    }
}

impl<'a> Add<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn add(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl<'a> Sub<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn sub(self, rhs: &'a GaussRat) -> GaussRat {
        GaussRat { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl<'a> Mul<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn mul(self, rhs: &'a GaussRat) -> GaussRat {
        if self.im.is_zero() && rhs.im.is_zero() {
            return GaussRat::real(&self.re * &rhs.re);
        }
        GaussRat {
            re: &(&self.re * &rhs.re) - &(&self.im * &rhs.im),
            im: &(&self.re * &rhs.im) + &(&self.im * &rhs.re),
        }
    }
}

impl<'a> Div<&'a GaussRat> for &'a GaussRat {
    type Output = GaussRat;
    fn div(self, rhs: &'a GaussRat) -> GaussRat {
        self * &rhs.inv()
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: GaussRat) -> GaussRat {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a GaussRat> for GaussRat {
            type Output = GaussRat;
            fn $m(self, rhs: &'a GaussRat) -> GaussRat {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&GaussRat> for GaussRat {
    fn add_assign(&mut self, rhs: &GaussRat) {
        if !rhs.re.is_zero() {
            self.re = &self.re + &rhs.re;
        }
        if !rhs.im.is_zero() {
            self.im = &self.im + &rhs.im;
        }
    }
}

impl SubAssign<&GaussRat> for GaussRat {
    fn sub_assign(&mut self, rhs: &GaussRat) {
        *self = &*self - rhs;
    }
}

impl Neg for GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        GaussRat { re: -self.re, im: -self.im }
    }
}

impl Neg for &GaussRat {
    type Output = GaussRat;
    fn neg(self) -> GaussRat {
        -self.clone()
    }
}

impl fmt::Display for GaussRat {
    /// `3`, `-1/2`, `i`, `-2*i`, `(1+i)`, `(1/2-3/4*i)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) => write_imag(f, &self.im),
            (false, false) => {
                write!(f, "({}", self.re)?;
                if self.im.is_negative() {
                    write!(f, "-")?;
                    write_imag(f, &self.im.abs())?;
                } else {
                    write!(f, "+")?;
                    write_imag(f, &self.im)?;
                }
                write!(f, ")")
            }
        }
    }
}

fn write_imag(f: &mut fmt::Formatter<'_>, im: &Rat) -> fmt::Result {
    if im.is_one() {
        write!(f, "i")
    } else if *im == Rat::int(-1) {
        write!(f, "-i")
    } else {
        write!(f, "{im}*i")
    }
}

impl fmt::Debug for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GaussRat {
    type Err = KappaError;

    /// Parses the compact literal forms used in configuration files:
    /// `-1/2`, `i`, `-3/4*i`, `1/2+i`, `1-2*i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t: String = s.trim().replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
        let t = t.trim_start_matches('(').trim_end_matches(')');
        if t.is_empty() {
            return Err(KappaError::Config("empty Gaussian rational literal".into()));
        }
        // split at a top-level sign that is not the leading one
        let split = t
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        let (first, second) = match split {
            Some(i) => (&t[..i], Some(&t[i..])),
            None => (t, None),
        };
        let mut acc = GaussRat::ZERO;
        for part in std::iter::once(first).chain(second) {
            acc = &acc + &parse_gauss_part(part, s)?;
        }
        Ok(acc)
    }
}

fn parse_gauss_part(part: &str, whole: &str) -> Result<GaussRat, KappaError> {
    let bad = || KappaError::Config(format!("invalid Gaussian rational literal `{whole}`"));
    let part = part.strip_prefix('+').unwrap_or(part);
    if let Some(body) = part.strip_suffix('i') {
        let body = body.strip_suffix('*').unwrap_or(body);
        let coeff = match body {
            "" => Rat::ONE,
            "-" => Rat::int(-1),
            b => b.parse::<Rat>().map_err(|_| bad())?,
        };
        Ok(GaussRat::imag(coeff))
    } else {
        Ok(GaussRat::real(part.parse::<Rat>().map_err(|_| bad())?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared() {
        assert_eq!(&GaussRat::I * &GaussRat::I, GaussRat::int(-1));
        assert_eq!(GaussRat::i_pow(3), GaussRat::imag(Rat::int(-1)));
        assert_eq!(GaussRat::i_pow(-1), GaussRat::imag(Rat::int(-1)));
    }

    #[test]
    fn division() {
        let z = GaussRat::new(Rat::int(1), Rat::int(2));
        let w = &z / &z;
        assert!(w.is_one());
        assert!(GaussRat::ZERO.checked_inv().is_err());
    }

    #[test]
    fn literal_round_trip() {
        for s in ["3", "-1/2", "i", "-i", "-3/4*i", "(1/2+i)", "(1-2*i)"] {
            let z: GaussRat = s.parse().unwrap();
            assert_eq!(z.to_string().parse::<GaussRat>().unwrap(), z, "{s}");
        }
        assert_eq!("1/2+i".parse::<GaussRat>().unwrap(), GaussRat::new(Rat::new(1, 2), Rat::ONE));
    }
}
