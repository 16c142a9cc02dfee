//! Exact complex-rational scalars, `Q(i)`.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// An element of `Q(i)`.
pub type Cq = Complex<BigRational>;

pub fn int(n: i64) -> Cq {
    Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
}

pub fn ratio(num: i64, den: i64) -> Cq {
    Complex::new(BigRational::new(BigInt::from(num), BigInt::from(den)), BigRational::zero())
}

pub fn complex(re_num: i64, re_den: i64, im_num: i64, im_den: i64) -> Cq {
    Complex::new(
        BigRational::new(BigInt::from(re_num), BigInt::from(re_den)),
        BigRational::new(BigInt::from(im_num), BigInt::from(im_den)),
    )
}

pub fn zero() -> Cq {
    Cq::zero()
}

pub fn one() -> Cq {
    Cq::one()
}

/// True when `z` is real and `>= 0`.
pub fn is_nonneg_real(z: &Cq) -> bool {
    z.im.is_zero() && !z.re.is_negative()
}

pub fn is_real(z: &Cq) -> bool {
    z.im.is_zero()
}

/// Lossy conversion used only by the floating cross-check backend.
pub fn to_f64_pair(z: &Cq) -> (f64, f64) {
    (z.re.to_f64().unwrap_or(f64::NAN), z.im.to_f64().unwrap_or(f64::NAN))
}

/// Modulus `|z|` for real `z`, `|re| + |im|` otherwise. Exact; used for
/// total variation reporting where only finiteness and zero-ness matter
/// off the real axis.
pub fn abs_l1(z: &Cq) -> BigRational {
    z.re.abs() + z.im.abs()
}

/// Renders `z` compactly, e.g. `1/3`, `-2`, `1/2+1/3i`.
pub fn display(z: &Cq) -> String {
    if z.im.is_zero() {
        z.re.to_string()
    } else if z.re.is_zero() {
        format!("{}i", z.im)
    } else if z.im.is_negative() {
        format!("{}-{}i", z.re, -z.im.clone())
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

fn ratio_parts(r: &BigRational) -> Option<(i64, i64)> {
    Some((r.numer().to_i64()?, r.denom().to_i64()?))
}

/// `[re_num, re_den, im_num, im_den]`, the measure-file encoding of one weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quad(pub Cq);

impl Serialize for Quad {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let (rn, rd) = ratio_parts(&self.0.re).ok_or_else(|| serde::ser::Error::custom("real part exceeds i64"))?;
        let (inum, iden) = ratio_parts(&self.0.im).ok_or_else(|| serde::ser::Error::custom("imaginary part exceeds i64"))?;
        [rn, rd, inum, iden].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Quad {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [rn, rd, inum, iden] = <[i64; 4]>::deserialize(d)?;
        if rd == 0 || iden == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Quad(complex(rn, rd, inum, iden)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quad_round_trip() {
        let z = complex(-3, 4, 1, 7);
        let s = serde_json::to_string(&Quad(z.clone())).unwrap();
        assert_eq!(s, "[-3,4,1,7]");
        let back: Quad = serde_json::from_str(&s).unwrap();
        assert_eq!(back.0, z);
    }

    #[test]
    fn quad_rejects_zero_denominator() {
        assert!(serde_json::from_str::<Quad>("[1,0,0,1]").is_err());
    }

    #[test]
    fn display_forms() {
        assert_eq!(display(&ratio(1, 3)), "1/3");
        assert_eq!(display(&complex(1, 2, -1, 3)), "1/2-1/3i");
        assert_eq!(display(&complex(0, 1, 2, 1)), "2i");
    }
}
