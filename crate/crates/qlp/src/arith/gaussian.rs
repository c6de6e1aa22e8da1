use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;

use super::rational::{format_rational, int, parse_rational};
use super::ArithError;

/// Complex numbers with exact rational parts.
pub type GaussianRational = Complex<BigRational>;

pub fn gr(re: BigRational, im: BigRational) -> GaussianRational {
    Complex::new(re, im)
}

pub fn gr_int(re: i64, im: i64) -> GaussianRational {
    Complex::new(int(re), int(im))
}

pub fn gr_real(re: BigRational) -> GaussianRational {
    Complex::new(re, BigRational::zero())
}

/// `i^k`.
pub fn i_pow(k: u32) -> GaussianRational {
    match k % 4 {
        0 => gr_int(1, 0),
        1 => gr_int(0, 1),
        2 => gr_int(-1, 0),
        _ => gr_int(0, -1),
    }
}

pub fn gr_div(a: &GaussianRational, b: &GaussianRational) -> Result<GaussianRational, ArithError> {
    if b.is_zero() {
        Err(ArithError::DivisionByZero)
    } else {
        Ok(a / b)
    }
}

pub fn gr_to_string(z: &GaussianRational) -> String {
    if z.im.is_zero() {
        format_rational(&z.re)
    } else if z.re.is_zero() {
        format!("{}i", format_rational(&z.im))
    } else {
        format!("{}+{}i", format_rational(&z.re), format_rational(&z.im))
    }
}

#[derive(serde::Serialize, serde::Deserialize)]
struct Repr {
    re: String,
    im: String,
}

/// Serde adapter writing `{"re": "p/q", "im": "p/q"}`.
pub mod serde_gr {
    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(z: &GaussianRational, s: S) -> Result<S::Ok, S::Error> {
        Repr {
            re: format_rational(&z.re),
            im: format_rational(&z.im),
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<GaussianRational, D::Error> {
        let r = Repr::deserialize(d)?;
        let re = parse_rational(&r.re).map_err(D::Error::custom)?;
        let im = parse_rational(&r.im).map_err(D::Error::custom)?;
        Ok(Complex::new(re, im))
    }
}

pub mod serde_gr_map {
    use std::collections::BTreeMap;

    use super::*;
    use serde::{de::Error, Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(
        m: &BTreeMap<String, GaussianRational>,
        s: S,
    ) -> Result<S::Ok, S::Error> {
        let r: BTreeMap<&String, Repr> = m
            .iter()
            .map(|(k, z)| {
                let repr = Repr {
                    re: format_rational(&z.re),
                    im: format_rational(&z.im),
                };
                (k, repr)
            })
            .collect();
        r.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<BTreeMap<String, GaussianRational>, D::Error> {
        let r = BTreeMap::<String, Repr>::deserialize(d)?;
        r.into_iter()
            .map(|(k, v)| {
                let re = parse_rational(&v.re).map_err(D::Error::custom)?;
                let im = parse_rational(&v.im).map_err(D::Error::custom)?;
                Ok((k, Complex::new(re, im)))
            })
            .collect()
    }
}
