use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient ring of a computation: ℤ, ℚ, ℤ/n or a prime field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BaseScalar {
    Int,
    Rat,
    IntMod(u64),
    Fp(u64),
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors of a nonzero integer, ascending.
pub fn prime_divisors(n: &BigInt) -> Vec<u64> {
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d = 2u64;
    while n > BigInt::from(1) {
        let db = BigInt::from(d);
        if &db * &db > n {
            // remaining cofactor is prime; desk-scale values fit in u64
            out.push(u64::try_from(&n).expect("prime factor exceeds u64"));
            break;
        }
        if (&n % &db).is_zero() {
            out.push(d);
            while (&n % &db).is_zero() {
                n /= &db;
            }
        }
        d += 1;
    }
    out
}

impl BaseScalar {
    pub fn fp(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidScalar(format!("F_{p}: {p} is not prime")));
        }
        Ok(BaseScalar::Fp(p))
    }

    pub fn int_mod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidScalar(format!("Z/{n}: modulus must be at least 2")));
        }
        Ok(BaseScalar::IntMod(n))
    }

    pub fn validate(self) -> Result<Self> {
        match self {
            BaseScalar::Fp(p) => Self::fp(p),
            BaseScalar::IntMod(n) => Self::int_mod(n),
            s => Ok(s),
        }
    }

    /// The modulus `n` with `S = ℤ/n` (0 for ℤ); `None` for ℚ.
    pub fn modulus(self) -> Option<u64> {
        match self {
            BaseScalar::Int => Some(0),
            BaseScalar::Rat => None,
            BaseScalar::IntMod(n) | BaseScalar::Fp(n) => Some(n),
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, BaseScalar::Rat | BaseScalar::Fp(_))
    }

    /// Canonical representative of an integer in this ring
    /// (reduction into `[0, n)` for modular rings, identity otherwise).
    pub fn reduce(self, x: &BigInt) -> BigInt {
        match self.modulus() {
            Some(n) if n > 0 => x.mod_floor(&BigInt::from(n)),
            _ => x.clone(),
        }
    }
}

impl fmt::Display for BaseScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseScalar::Int => write!(f, "int"),
            BaseScalar::Rat => write!(f, "q"),
            BaseScalar::IntMod(n) => write!(f, "z{n}"),
            BaseScalar::Fp(p) => write!(f, "f{p}"),
        }
    }
}

impl FromStr for BaseScalar {
    type Err = Error;

    /// Accepts `int`/`z`, `q`/`rat`, `f<p>` and `z<n>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_lowercase();
        let parse_num = |digits: &str| -> Result<u64> {
            digits
                .parse::<u64>()
                .map_err(|_| Error::InvalidScalar(format!("cannot parse `{s}`")))
        };
        match t.as_str() {
            "int" | "z" | "zz" => Ok(BaseScalar::Int),
            "q" | "rat" | "qq" => Ok(BaseScalar::Rat),
            _ if t.starts_with('f') => BaseScalar::fp(parse_num(&t[1..])?),
            _ if t.starts_with('z') => BaseScalar::int_mod(parse_num(&t[1..])?),
            _ => Err(Error::InvalidScalar(format!("unknown scalar `{s}`"))),
        }
    }
}

impl Serialize for BaseScalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for BaseScalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses a comma separated list such as `q,f2,f3,z4`.
pub fn parse_scalar_list(s: &str) -> Result<Vec<BaseScalar>> {
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(str::parse)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["int", "q", "f2", "f5", "z4", "z6"] {
            let b: BaseScalar = s.parse().unwrap();
            assert_eq!(b.to_string(), s);
        }
        assert!("f4".parse::<BaseScalar>().is_err());
        assert!("z1".parse::<BaseScalar>().is_err());
        assert!("w3".parse::<BaseScalar>().is_err());
    }

    #[test]
    fn primes() {
        assert_eq!(prime_divisors(&BigInt::from(360)), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(-49)), vec![7]);
        assert!(prime_divisors(&BigInt::from(1)).is_empty());
        assert!(is_prime(97) && !is_prime(91));
    }

    #[test]
    fn reduction() {
        assert_eq!(BaseScalar::IntMod(4).reduce(&BigInt::from(-1)), BigInt::from(3));
        assert_eq!(BaseScalar::Rat.reduce(&BigInt::from(-1)), BigInt::from(-1));
    }
}
