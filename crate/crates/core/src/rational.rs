//! Exact rational scalars.

use num_rational::Ratio;
use num_traits::{One, Zero};

use crate::error::Error;

/// Exact rational number. Overflow panics (overflow checks are enabled in every profile).
pub type Rational = Ratio<i128>;

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v as i128)
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(num as i128, den as i128)
}

pub fn zero() -> Rational {
    Rational::zero()
}

pub fn one() -> Rational {
    Rational::one()
}

/// Parses `"3"`, `"-2/5"`, or a finite decimal such as `"0.25"`.
pub fn parse(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    let bad = || Error::Parse(format!("not a rational: {s:?}"));
    if let Some((p, q)) = s.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| bad())?;
        let q: i128 = q.trim().parse().map_err(|_| bad())?;
        if q == 0 {
            return Err(bad());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((whole, dec)) = s.split_once('.') {
        if dec.is_empty() || !dec.bytes().all(|b| b.is_ascii_digit()) || dec.len() > 18 {
            return Err(bad());
        }
        let neg = whole.starts_with('-');
        let w: i128 = if whole == "-" || whole.is_empty() {
            0
        } else {
            whole.parse().map_err(|_| bad())?
        };
        let den = 10i128.pow(dec.len() as u32);
        let d: i128 = dec.parse().map_err(|_| bad())?;
        let mag = w.abs() * den + d;
        return Ok(Rational::new(if neg { -mag } else { mag }, den));
    }
    s.parse::<i128>().map(Rational::from_integer).map_err(|_| bad())
}

/// `"p/q"`, or `"p"` for integers.
pub fn format(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter: rationals as `"p/q"` strings (integers also accepted as JSON numbers).
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Int(i64),
        Text(String),
    }

    pub fn from_raw<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        match Raw::deserialize(d)? {
            Raw::Int(i) => Ok(int(i)),
            Raw::Text(s) => parse(&s).map_err(de::Error::custom),
        }
    }

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        from_raw(d)
    }

    pub mod vec {
        use super::*;
        use serde::ser::SerializeSeq;

        pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
            let mut seq = s.serialize_seq(Some(v.len()))?;
            for r in v {
                seq.serialize_element(&format(r))?;
            }
            seq.end()
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
            let raw = Vec::<Raw>::deserialize(d)?;
            raw.into_iter()
                .map(|r| match r {
                    Raw::Int(i) => Ok(int(i)),
                    Raw::Text(s) => parse(&s).map_err(de::Error::custom),
                })
                .collect()
        }
    }
}
