//! Exact scalars: arbitrary-precision rationals and Gaussian rationals.
//!
//! All arithmetic in this crate is exact. Rationals are kept in lowest terms
//! with positive denominator (the representation `num-rational` maintains);
//! Gaussian rationals are pairs of rationals under `a + b*i`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::fmt::Write as _;

/// Exact rational scalar.
pub type Q = num_rational::BigRational;

/// Gaussian rational scalar `re + im*i`.
pub type Gauss = Complex<Q>;

/// Rational from an integer.
pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `n/d`.
pub fn qr(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Gaussian rational from a rational (real axis).
pub fn gq(re: Q) -> Gauss {
    Complex::new(re, Q::zero())
}

/// Gaussian rational from an integer (real axis).
pub fn gi(n: i64) -> Gauss {
    gq(qi(n))
}

/// The imaginary unit.
pub fn imag_unit() -> Gauss {
    Complex::new(Q::zero(), Q::one())
}

/// Serializes a rational as `p/q`, or `p` when the denominator is 1.
pub fn q_string(x: &Q) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Serializes a Gaussian rational as `p/q+r/s*i` (both parts always present).
pub fn gauss_string(z: &Gauss) -> String {
    let mut s = q_string(&z.re);
    let im = q_string(&z.im);
    if !im.starts_with('-') {
        s.push('+');
    }
    let _ = write!(s, "{}*i", im);
    s
}

/// True when the rational is an integer.
pub fn q_is_integer(x: &Q) -> bool {
    x.denom().is_one()
}

/// True when both parts are integers (a Gaussian integer).
pub fn gauss_is_integer(z: &Gauss) -> bool {
    q_is_integer(&z.re) && q_is_integer(&z.im)
}

/// Scalar abstraction shared by the rational and Gaussian-rational matrix kernels.
pub trait Scalar:
    Clone
    + PartialEq
    + Zero
    + One
    + std::ops::Neg<Output = Self>
    + std::ops::Sub<Output = Self>
    + std::ops::Div<Output = Self>
    + std::fmt::Debug
{
    /// Pivot preference: smaller is preferred; must be nonzero-safe.
    fn pivot_weight(&self) -> (BigInt, BigInt);

    /// Rescales a vector in place to its canonical representative
    /// (primitive integer entries, first nonzero entry positive, for rationals).
    fn normalize_vector(v: &mut [Self]);

    /// Exact division helper used during elimination.
    fn div_exact(&self, by: &Self) -> Self {
        self.clone() / by.clone()
    }
}

impl Scalar for Q {
    fn pivot_weight(&self) -> (BigInt, BigInt) {
        (self.numer().abs(), self.denom().clone())
    }

    fn normalize_vector(v: &mut [Self]) {
        if v.iter().all(|x| x.is_zero()) {
            return;
        }
        let mut denom_lcm = BigInt::one();
        for x in v.iter() {
            denom_lcm = denom_lcm.lcm(x.denom());
        }
        let mut numer_gcd = BigInt::zero();
        for x in v.iter() {
            let scaled = x.numer() * (&denom_lcm / x.denom());
            numer_gcd = numer_gcd.gcd(&scaled);
        }
        let mut scale = Q::new(denom_lcm, numer_gcd);
        if let Some(first) = v.iter().find(|x| !x.is_zero()) {
            if first.is_negative() {
                scale = -scale;
            }
        }
        for x in v.iter_mut() {
            *x = &*x * &scale;
        }
    }
}

impl Scalar for Gauss {
    fn pivot_weight(&self) -> (BigInt, BigInt) {
        (
            self.re.numer().abs() + self.im.numer().abs(),
            self.re.denom() * self.im.denom(),
        )
    }

    fn normalize_vector(v: &mut [Self]) {
        let Some(first) = v.iter().find(|x| !x.is_zero()).cloned() else {
            return;
        };
        for x in v.iter_mut() {
            *x = x.clone() / first.clone();
        }
        // Entries are now Gaussian rationals with leading entry 1; clear
        // denominators and divide out the integer content.
        let mut denom_lcm = BigInt::one();
        for x in v.iter() {
            denom_lcm = denom_lcm.lcm(x.re.denom());
            denom_lcm = denom_lcm.lcm(x.im.denom());
        }
        let mut content = BigInt::zero();
        for x in v.iter() {
            content = content.gcd(&(x.re.numer() * (&denom_lcm / x.re.denom())));
            content = content.gcd(&(x.im.numer() * (&denom_lcm / x.im.denom())));
        }
        let scale = gq(Q::new(denom_lcm, content));
        for x in v.iter_mut() {
            *x = x.clone() * scale.clone();
        }
    }
}

/// Conjugation as a free function (keeps call sites tidy).
pub fn conj(z: &Gauss) -> Gauss {
    Complex::new(z.re.clone(), -z.im.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_strings() {
        assert_eq!(q_string(&qi(5)), "5");
        assert_eq!(q_string(&qr(-3, 6)), "-1/2");
        assert_eq!(q_string(&Q::zero()), "0");
    }

    #[test]
    fn gauss_strings() {
        assert_eq!(gauss_string(&gi(2)), "2+0*i");
        let z = Complex::new(qr(1, 2), qr(-3, 4));
        assert_eq!(gauss_string(&z), "1/2-3/4*i");
    }

    #[test]
    fn vector_normalization_is_primitive() {
        let mut v = vec![qr(1, 2), qr(-1, 3), Q::zero()];
        <Q as Scalar>::normalize_vector(&mut v);
        assert_eq!(v, vec![qi(3), qi(-2), qi(0)]);

        let mut w = vec![qi(-2), qi(4)];
        <Q as Scalar>::normalize_vector(&mut w);
        assert_eq!(w, vec![qi(1), qi(-2)]);
    }

    #[test]
    fn gauss_norm_is_zero_only_at_zero() {
        let z = Complex::new(qr(1, 3), qr(-2, 5));
        assert!(!z.norm_sqr().is_zero());
        assert!(Gauss::zero().norm_sqr().is_zero());
        assert_eq!(conj(&conj(&z)), z);
    }
}
