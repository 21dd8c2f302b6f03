use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::Scalar;
use crate::error::{Error, Result};

/// The base field every scalar of a computation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Field {
    Rational,
    Prime { p: u64 },
}

impl Field {
    /// Prime field `GF(p)`; rejects composite moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        Ok(Field::Prime { p })
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::zero()),
            Field::Prime { p } => Scalar::Prime { value: 0, p },
        }
    }

    pub fn one(&self) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::one()),
            Field::Prime { p } => Scalar::Prime { value: 1 % p, p },
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match *self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime { p } => Scalar::Prime {
                value: n.rem_euclid(p as i64) as u64,
                p,
            },
        }
    }

    pub fn frac(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    /// Parses the shared scalar text form: `"3"`, `"-5/6"`; in a prime field the
    /// integer is reduced modulo `p` and fractions are read as `a · b⁻¹`.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar> {
        let text = text.trim();
        let (num, den) = match text.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (text, None),
        };
        let parse_int = |s: &str| {
            BigInt::from_str(s).map_err(|_| Error::Parse(format!("invalid scalar {text:?}")))
        };
        let n = parse_int(num)?;
        let d = match den {
            Some(d) => parse_int(d)?,
            None => BigInt::one(),
        };
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {text:?}")));
        }
        match *self {
            Field::Rational => Ok(Scalar::Rational(BigRational::new(n, d))),
            Field::Prime { p } => {
                let reduce = |x: &BigInt| {
                    let m = BigInt::from(p);
                    let r = ((x % &m) + &m) % &m;
                    u64::try_from(r).expect("residue fits in u64")
                };
                let num = Scalar::Prime { value: reduce(&n), p };
                let den = Scalar::Prime { value: reduce(&d), p };
                num.checked_div(&den)
                    .map_err(|_| Error::Parse(format!("denominator of {text:?} vanishes mod {p}")))
            }
        }
    }

    pub fn contains(&self, s: &Scalar) -> bool {
        s.field() == *self
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime { p } => write!(f, "GF({p})"),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `Q`, `q`, `rational`, `pN`, `GF(N)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.to_ascii_lowercase().as_str() {
            "q" | "rational" | "qq" => return Ok(Field::Rational),
            _ => {}
        }
        let digits = if let Some(rest) = t.strip_prefix(['p', 'P']) {
            rest
        } else if let Some(rest) = t.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else {
            return Err(Error::InvalidField(format!("unrecognized field {s:?}")));
        };
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::InvalidField(format!("unrecognized field {s:?}")))?;
        Field::prime(p)
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the witness set is exact for all `u64`.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &w in &WITNESSES {
        if n.is_multiple_of(w) {
            return n == w;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d));
        for n in 0..2000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(4_294_967_291));
        assert!(!is_prime(4_294_967_297)); // 641 · 6700417
    }

    #[test]
    fn field_descriptor_text() {
        assert_eq!("Q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("p7".parse::<Field>().unwrap(), Field::Prime { p: 7 });
        assert_eq!("GF(11)".parse::<Field>().unwrap(), Field::Prime { p: 11 });
        assert!("p9".parse::<Field>().is_err());
        assert!(Field::prime(1).is_err());
    }

    #[test]
    fn scalar_text_form() {
        let q = Field::Rational;
        assert_eq!(q.parse_scalar("-5/6").unwrap().to_string(), "-5/6");
        assert_eq!(q.parse_scalar("4/2").unwrap().to_string(), "2");
        assert!(matches!(q.parse_scalar("1/0"), Err(Error::Parse(_))));
        assert!(q.parse_scalar("x").is_err());
        let f7 = Field::Prime { p: 7 };
        assert_eq!(f7.parse_scalar("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse_scalar("1/2").unwrap().to_string(), "4");
        assert!(f7.parse_scalar("1/7").is_err());
    }
}
