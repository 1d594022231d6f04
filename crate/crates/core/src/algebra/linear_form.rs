use std::fmt;

use num_integer::Integer;

use super::{int, BivariatePolynomial, Rational};

/// Integer linear form `a x + b y`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    pub a: i64,
    pub b: i64,
}

impl LinearForm {
    pub const X: LinearForm = LinearForm { a: 1, b: 0 };
    pub const Y: LinearForm = LinearForm { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn to_poly(&self) -> BivariatePolynomial {
        BivariatePolynomial::linear(int(self.a), int(self.b))
    }

    /// Splits the form into `scalar * normalized`, where the normalized form is
    /// primitive with a positive leading nonzero coefficient.
    ///
    /// Panics on the zero form.
    pub fn normalize(&self) -> (Rational, LinearForm) {
        assert!(!self.is_zero(), "zero linear form cannot be normalized");
        let g = self.a.gcd(&self.b);
        let sign = if self.a < 0 || (self.a == 0 && self.b < 0) { -1 } else { 1 };
        let s = sign * g;
        (int(s), LinearForm::new(self.a / s, self.b / s))
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_poly())
    }
}
