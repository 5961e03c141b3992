//! Exact scalars in ℚ or a real quadratic field ℚ(√d).

use alloc::string::String;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::rational::Rat;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    /// ℚ(√d) with `d > 1` square-free.
    Quadratic(u32),
}

impl Field {
    /// Builds ℚ(√d), rejecting `d` that is not square-free or not greater than 1.
    pub fn quadratic(d: u32) -> Option<Field> {
        if d < 2 {
            return None;
        }
        let mut p = 2u32;
        while p.saturating_mul(p) <= d {
            if d.is_multiple_of(p * p) {
                return None;
            }
            p += 1;
        }
        Some(Field::Quadratic(d))
    }

    pub fn root(self) -> u32 {
        match self {
            Field::Rational => 0,
            Field::Quadratic(d) => d,
        }
    }

    /// The smaller field containing both, or `None` for two distinct quadratic fields.
    pub fn join(self, other: Field) -> Option<Field> {
        match (self, other) {
            (Field::Rational, f) | (f, Field::Rational) => Some(f),
            (Field::Quadratic(a), Field::Quadratic(b)) if a == b => Some(self),
            _ => None,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("Q"),
            Field::Quadratic(d) => write!(f, "Qsqrt {d}"),
        }
    }
}

/// `a + b·√d`.
///
/// The root tag is `0` exactly when `b == 0`, so structural equality is value
/// equality and rational values compare equal whatever field they came from.
/// Mixing two different nonzero roots is a logic error and panics.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Scalar {
    a: Rat,
    b: Rat,
    root: u32,
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar::default()
    }

    pub fn one() -> Scalar {
        Scalar::from_rat(Rat::ONE)
    }

    pub fn from_int(n: i64) -> Scalar {
        Scalar::from_rat(Rat::from_int(n))
    }

    pub fn from_rat(a: Rat) -> Scalar {
        Scalar { a, b: Rat::ZERO, root: 0 }
    }

    /// `a + b√d`; `d` must be a square-free integer greater than 1 when `b ≠ 0`.
    pub fn quadratic(a: Rat, b: Rat, d: u32) -> Scalar {
        if b.is_zero() {
            return Scalar::from_rat(a);
        }
        assert!(Field::quadratic(d).is_some(), "√{d} does not define a quadratic field");
        Scalar { a, b, root: d }
    }

    /// √d itself.
    pub fn sqrt(d: u32) -> Scalar {
        Scalar::quadratic(Rat::ZERO, Rat::ONE, d)
    }

    pub fn rational_part(&self) -> &Rat {
        &self.a
    }

    pub fn root_part(&self) -> &Rat {
        &self.b
    }

    /// Smallest field containing the value.
    pub fn field(&self) -> Field {
        if self.root == 0 {
            Field::Rational
        } else {
            Field::Quadratic(self.root)
        }
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        self.b.is_zero().then_some(&self.a)
    }

    fn common_root(&self, other: &Scalar) -> u32 {
        match (self.root, other.root) {
            (0, r) | (r, 0) => r,
            (r, s) if r == s => r,
            (r, s) => panic!("mixing √{r} and √{s} in one computation"),
        }
    }

    /// Galois conjugate `a − b√d`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b, root: self.root }
    }

    /// Field norm `a² − d·b²`.
    pub fn norm(&self) -> Rat {
        let d = Rat::from_int(self.root as i64);
        &(&self.a * &self.a) - &(&d * &(&self.b * &self.b))
    }

    pub fn inv(&self) -> Option<Scalar> {
        if self.root == 0 {
            return self.a.recip().map(Scalar::from_rat);
        }
        let n = self.norm().recip()?;
        let c = self.conjugate();
        Some(Scalar::quadratic(&c.a * &n, &c.b * &n, self.root))
    }

    /// Residue modulo `p` for rational values.
    pub fn mod_prime(&self, p: u64) -> Option<u64> {
        self.as_rational()?.mod_prime(p)
    }

    /// Parses the text syntax `a/b` or `a/b+c/d*r`, where `r` stands for √root.
    ///
    /// Either part may be omitted (`r`, `-1/4*r`, `3`), integers may drop the
    /// denominator, and the terms may appear in either order.
    pub fn parse(text: &str, field: Field) -> Result<Scalar, ParseScalarError> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(ParseScalarError::new(text, "empty scalar"));
        }
        // Split into signed terms at '+'/'-' that do not start the string.
        let mut terms = alloc::vec::Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if i > start && (ch == '+' || ch == '-') {
                terms.push(&s[start..i]);
                start = i;
            }
        }
        terms.push(&s[start..]);
        if terms.len() > 2 {
            return Err(ParseScalarError::new(text, "too many terms"));
        }
        let mut a = Rat::ZERO;
        let mut b = Rat::ZERO;
        let mut seen_a = false;
        let mut seen_b = false;
        for term in terms {
            if let Some(coef) = term.strip_suffix('r') {
                if seen_b {
                    return Err(ParseScalarError::new(text, "repeated root term"));
                }
                seen_b = true;
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                b = match coef {
                    "" | "+" => Rat::ONE,
                    "-" => -Rat::ONE,
                    c => c.parse().map_err(|_| ParseScalarError::new(text, "bad root coefficient"))?,
                };
            } else {
                if seen_a {
                    return Err(ParseScalarError::new(text, "repeated rational term"));
                }
                seen_a = true;
                a = term.parse().map_err(|_| ParseScalarError::new(text, "bad rational"))?;
            }
        }
        if b.is_zero() {
            return Ok(Scalar::from_rat(a));
        }
        match field {
            Field::Rational => Err(ParseScalarError::new(text, "root term in a rational field")),
            Field::Quadratic(d) => Ok(Scalar::quadratic(a, b, d)),
        }
    }
}

/// Malformed scalar literal.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid scalar `{text}`: {reason}")]
pub struct ParseScalarError {
    pub text: String,
    pub reason: &'static str,
}

impl ParseScalarError {
    fn new(text: &str, reason: &'static str) -> Self {
        ParseScalarError { text: text.into(), reason }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<Rat> for Scalar {
    fn from(r: Rat) -> Self {
        Scalar::from_rat(r)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from_rat(&self.a + &rhs.a);
        }
        let r = self.common_root(rhs);
        Scalar::quadratic(&self.a + &rhs.a, &self.b + &rhs.b, r)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from_rat(&self.a - &rhs.a);
        }
        let r = self.common_root(rhs);
        Scalar::quadratic(&self.a - &rhs.a, &self.b - &rhs.b, r)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.root == 0 && rhs.root == 0 {
            return Scalar::from_rat(&self.a * &rhs.a);
        }
        let r = self.common_root(rhs);
        let d = Rat::from_int(r as i64);
        let a = &(&self.a * &rhs.a) + &(&d * &(&self.b * &rhs.b));
        let b = &(&self.a * &rhs.b) + &(&self.b * &rhs.a);
        Scalar::quadratic(a, b, r)
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero scalar")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b, root: self.root }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", self.a);
        }
        if !self.a.is_zero() {
            write!(f, "{}", self.a)?;
            if self.b.signum() > 0 {
                f.write_str("+")?;
            }
        }
        write!(f, "{}*r", self.b)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{} [r=√{}]", self, self.root)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn q5(s: &str) -> Scalar {
        Scalar::parse(s, Field::Quadratic(5)).unwrap()
    }

    #[test]
    fn parse_and_print_round_trip() {
        for s in ["0", "3", "-1/2", "1/4*r", "-1/4*r", "-1/4+1/4*r", "1/2-3/2*r"] {
            assert_eq!(q5(s).to_string(), s);
        }
        assert_eq!(q5("r"), Scalar::sqrt(5));
        assert_eq!(q5("-r+1"), q5("1-1*r"));
        assert!(Scalar::parse("1+r", Field::Rational).is_err());
        assert!(Scalar::parse("1+2+r", Field::Quadratic(5)).is_err());
        assert!(Scalar::parse("", Field::Rational).is_err());
    }

    #[test]
    fn golden_ratio_identities() {
        let s5 = Scalar::sqrt(5);
        assert_eq!(&s5 * &s5, Scalar::from_int(5));
        // cos(2π/5) = (√5 − 1)/4 satisfies 4c² + 2c − 1 = 0
        let c = q5("-1/4+1/4*r");
        let lhs = &(&Scalar::from_int(4) * &(&c * &c)) + &(&Scalar::from_int(2) * &c);
        assert_eq!(lhs, Scalar::one());
        let inv = c.inv().unwrap();
        assert_eq!(&inv * &c, Scalar::one());
    }

    #[test]
    fn field_validation() {
        assert_eq!(Field::quadratic(5), Some(Field::Quadratic(5)));
        assert_eq!(Field::quadratic(8), None);
        assert_eq!(Field::quadratic(1), None);
        assert_eq!(Field::Rational.join(Field::Quadratic(5)), Some(Field::Quadratic(5)));
        assert_eq!(Field::Quadratic(2).join(Field::Quadratic(5)), None);
    }

    #[test]
    fn rational_values_forget_the_root_tag() {
        let x = q5("1+r");
        let y = &x - &Scalar::sqrt(5);
        assert_eq!(y, Scalar::one());
        assert_eq!(y.field(), Field::Rational);
    }
}
