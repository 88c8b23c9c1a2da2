//! Exact-value parsing and JSON rendering for the CLI surface.
//!
//! Rational syntax: `p/q` (whitespace-free, `q` optional). Complex syntax:
//! `p/q+r/s i` / `p/q-r/s i`, with the trailing `i` mandatory for a nonzero
//! imaginary part. Triples are comma-separated.

use num_bigint::BigInt;
use serde_json::{json, Value};
use trilin_core::coefficients::CoeffValue;
use trilin_core::numerics::rational::{CRat, Rat};

pub const SCHEMA_VERSION: u32 = 1;

pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a, b),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| format!("invalid rational numerator in {s:?}"))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| format!("invalid rational denominator in {s:?}"))?;
    if d == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Rat::new(n, d))
}

pub fn parse_crat(s: &str) -> Result<CRat, String> {
    let s = s.trim();
    if let Some(body) = s.strip_suffix('i') {
        // split the imaginary part off at the last +/- that is not a
        // leading sign and not part of a denominator
        let chars: Vec<char> = body.chars().collect();
        let mut split = None;
        for i in (1..chars.len()).rev() {
            if (chars[i] == '+' || chars[i] == '-') && chars[i - 1] != '/' {
                split = Some(i);
                break;
            }
        }
        match split {
            Some(i) => {
                let re = parse_rat(&body[..i])?;
                let im_str = &body[i..];
                let im = if im_str == "+" {
                    Rat::from_integer(1.into())
                } else if im_str == "-" {
                    -Rat::from_integer(BigInt::from(1))
                } else {
                    parse_rat(im_str)?
                };
                Ok(CRat::new(re, im))
            }
            None => {
                // purely imaginary
                let im = if body.is_empty() {
                    Rat::from_integer(1.into())
                } else {
                    parse_rat(body)?
                };
                Ok(CRat::new(Rat::from_integer(0.into()), im))
            }
        }
    } else {
        Ok(CRat::from_rat(parse_rat(s)?))
    }
}

pub fn parse_triple(s: &str) -> Result<[CRat; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated values, got {s:?}"));
    }
    Ok([
        parse_crat(parts[0])?,
        parse_crat(parts[1])?,
        parse_crat(parts[2])?,
    ])
}

pub fn parse_index_triple(s: &str) -> Result<[u64; 3], String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated indices, got {s:?}"));
    }
    let mut out = [0u64; 3];
    for (i, p) in parts.iter().enumerate() {
        out[i] = p
            .trim()
            .parse()
            .map_err(|_| format!("invalid index {p:?}"))?;
    }
    Ok(out)
}

fn half_units_to_json(half: i64) -> Value {
    if half % 2 == 0 {
        json!(half / 2)
    } else {
        json!(half as f64 / 2.0)
    }
}

/// JSON form of a coefficient: the exact `{q, two_exp, pi_half_exp}` when
/// structured, else `{re, im, precision}` in scientific decimal.
pub fn coeff_to_json(v: &CoeffValue, prec: u32) -> Value {
    match v {
        CoeffValue::Exact(s) => json!({
            "kind": "exact",
            "q": s.rational_part().to_string(),
            "two_exp": half_units_to_json(s.two_exp_half_units()),
            "pi_half_exp": s.pi_exp_half_units(),
        }),
        CoeffValue::Numeric(z) => json!({
            "kind": "numeric",
            "re": z.re.to_decimal_sci(40),
            "im": z.im.to_decimal_sci(40),
            "precision": prec,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use trilin_core::numerics::rational::rat;

    #[test]
    fn rational_and_complex_parsing() {
        assert_eq!(parse_rat("-7/2").unwrap(), rat(-7, 2));
        assert_eq!(parse_rat("5").unwrap(), rat(5, 1));
        assert_eq!(
            parse_crat("1/2+3/4i").unwrap(),
            CRat::new(rat(1, 2), rat(3, 4))
        );
        assert_eq!(
            parse_crat("-1/2-2i").unwrap(),
            CRat::new(rat(-1, 2), rat(-2, 1))
        );
        assert_eq!(parse_crat("-3").unwrap(), CRat::from_rat(rat(-3, 1)));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_triple("1,2").is_err());
    }
}
