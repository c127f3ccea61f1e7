//! String forms of exact rationals used by every JSON document.
//!
//! Rationals are written as `"num/den"` in lowest terms, or `"num"` when the
//! denominator is one. Points are two-element arrays `["x", "y"]`.

use std::str::FromStr;

use num_rational::BigRational;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::Point;

pub fn rational_to_string(r: &BigRational) -> String {
    // Display already prints the reduced "n/d" or "n" form.
    r.to_string()
}

pub fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|e| Error::Parse(format!("bad rational {s:?}: {e}")))
}

pub mod rational {
    use super::*;

    pub fn serialize<S: Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
        rational_to_string(r).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(rational_to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(D::Error::custom))
            .collect()
    }
}

pub fn point_to_strings(p: &Point) -> [String; 2] {
    [rational_to_string(&p.x), rational_to_string(&p.y)]
}

pub fn point_from_strings(v: &[String; 2]) -> Result<Point> {
    Ok(Point::new(parse_rational(&v[0])?, parse_rational(&v[1])?))
}

pub mod point {
    use super::*;

    pub fn serialize<S: Serializer>(p: &Point, s: S) -> std::result::Result<S::Ok, S::Error> {
        point_to_strings(p).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Point, D::Error> {
        let v = <[String; 2]>::deserialize(d)?;
        point_from_strings(&v).map_err(D::Error::custom)
    }
}

pub mod point_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Point], s: S) -> std::result::Result<S::Ok, S::Error> {
        v.iter().map(point_to_strings).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Point>, D::Error> {
        let v = Vec::<[String; 2]>::deserialize(d)?;
        v.iter()
            .map(|p| point_from_strings(p).map_err(D::Error::custom))
            .collect()
    }
}
