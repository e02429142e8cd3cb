//! Plain-text tensor files.
//!
//! ```text
//! dim 6
//! degree 3
//! dual false
//! ext 5
//! term 1/2 0 1 2
//! term -1+2√5 0 3 4
//! ```
//!
//! `ext D` is only present when some coefficient lives in Q(√D); those
//! coefficients are written `a+b√D` (either part may be omitted when zero or
//! one). Indices are 0-based; repeated indices are rejected, unsorted ones
//! are sorted with the permutation sign folded into the coefficient.
//! Serialization is canonical: header lines in the order above, terms in
//! lexicographic index order, so parse → serialize → parse round-trips.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use skewrank::exterior::Multivector;
use skewrank::scalar::Scalar;
use std::str::FromStr;

fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s).map_err(|e| format!("bad rational {s:?}: {e}"))
}

fn parse_coeff(s: &str, ext: Option<&BigInt>) -> Result<Scalar, String> {
    match s.find('√') {
        None => Ok(Scalar::from_rational(parse_rational(s)?)),
        Some(pos) => {
            let d_str = &s[pos + '√'.len_utf8()..];
            let d = BigInt::from_str(d_str).map_err(|_| format!("bad radicand in {s:?}"))?;
            match ext {
                Some(e) if *e == d => {}
                Some(e) => return Err(format!("coefficient uses √{d} but ext declares {e}")),
                None => return Err(format!("coefficient {s:?} needs an ext line")),
            }
            let left = &s[..pos];
            // split a+b√D / a-b√D at the last sign that starts the b part
            let split = left
                .char_indices()
                .filter(|(i, c)| *i > 0 && (*c == '+' || *c == '-'))
                .last();
            let (a, b) = match split {
                Some((i, c)) => {
                    let a = parse_rational(&left[..i])?;
                    let bs = &left[i + 1..];
                    let mag = if bs.is_empty() {
                        BigRational::one()
                    } else {
                        parse_rational(bs)?
                    };
                    (a, if c == '-' { -mag } else { mag })
                }
                None => {
                    let b = match left {
                        "" => BigRational::one(),
                        "-" => -BigRational::one(),
                        other => parse_rational(other)?,
                    };
                    (BigRational::zero(), b)
                }
            };
            Ok(Scalar::quadratic(a, b, d))
        }
    }
}

pub fn parse_tensor(text: &str) -> Result<Multivector, String> {
    let mut dim: Option<u8> = None;
    let mut degree: Option<u8> = None;
    let mut dual = false;
    let mut ext: Option<BigInt> = None;
    let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |m: String| format!("line {}: {}", ln + 1, m);
        let mut it = line.split_whitespace();
        let key = it.next().unwrap();
        match key {
            "dim" => {
                let v: u8 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("dim needs a small integer".into()))?;
                dim = Some(v);
            }
            "degree" => {
                let v: u8 = it
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| err("degree needs a small integer".into()))?;
                degree = Some(v);
            }
            "dual" => {
                dual = match it.next() {
                    Some("true") => true,
                    Some("false") => false,
                    _ => return Err(err("dual needs true or false".into())),
                };
            }
            "ext" => {
                let v = it
                    .next()
                    .and_then(|s| BigInt::from_str(s).ok())
                    .ok_or_else(|| err("ext needs an integer".into()))?;
                ext = Some(v);
            }
            "term" => {
                let c = it
                    .next()
                    .ok_or_else(|| err("term needs a coefficient".into()))?;
                let coeff = parse_coeff(c, ext.as_ref()).map_err(err)?;
                let idx: Result<Vec<usize>, _> = it.map(|s| s.parse::<usize>()).collect();
                let idx = idx.map_err(|_| err("term indices must be 0-based integers".into()))?;
                terms.push((coeff, idx));
            }
            other => return Err(err(format!("unknown field {other:?}"))),
        }
    }
    let dim = dim.ok_or("missing dim")?;
    let degree = degree.ok_or("missing degree")?;
    if dim > 16 {
        return Err("dim larger than 16 is unsupported".to_string());
    }
    if degree > dim {
        return Err("degree exceeds dim".to_string());
    }
    if terms.is_empty() {
        return Err("tensor has no terms".to_string());
    }
    let mut t = Multivector::zero(dim, degree, dual);
    for (coeff, idx) in terms {
        if idx.len() != degree as usize {
            return Err(format!("term has {} indices, degree is {degree}", idx.len()));
        }
        let mut sorted = idx.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err("term repeats an index".to_string());
        }
        let mono = Multivector::monomial(dim, &idx, coeff, dual)?;
        t = t.add(&mono);
    }
    if t.is_zero() {
        return Err("terms cancel to the zero tensor".to_string());
    }
    Ok(t)
}

pub fn serialize_tensor(t: &Multivector) -> String {
    let mut out = String::new();
    out.push_str(&format!("dim {}\n", t.dim));
    out.push_str(&format!("degree {}\n", t.degree));
    out.push_str(&format!("dual {}\n", t.dual));
    if let Some(d) = t
        .coeffs
        .values()
        .find(|c| !c.is_rational())
        .map(|c| c.d.clone())
    {
        out.push_str(&format!("ext {}\n", d));
    }
    for (idx, c) in t.sorted_terms() {
        let ix: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        out.push_str(&format!("term {} {}\n", c, ix.join(" ")));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_is_identity() {
        let text = "dim 6\ndegree 3\ndual false\nterm 1/2 0 1 2\nterm -3 1 4 5\n";
        let t = parse_tensor(text).unwrap();
        assert_eq!(serialize_tensor(&t), text);
    }

    #[test]
    fn quadratic_coefficients_round_trip() {
        let text = "dim 4\ndegree 2\ndual false\next 5\nterm 1+2√5 0 1\nterm -√5 2 3\n";
        let t = parse_tensor(text).unwrap();
        let again = parse_tensor(&serialize_tensor(&t)).unwrap();
        assert_eq!(t, again);
    }

    #[test]
    fn unsorted_indices_pick_up_the_sign() {
        let a = parse_tensor("dim 4\ndegree 2\ndual false\nterm 1 1 0\n").unwrap();
        let b = parse_tensor("dim 4\ndegree 2\ndual false\nterm -1 0 1\n").unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn rejections() {
        assert!(parse_tensor("dim 4\ndegree 2\ndual false\nterm 1 0 0\n").is_err());
        assert!(parse_tensor("dim 4\ndegree 2\ndual false\n").is_err());
        assert!(parse_tensor("dim 4\ndegree 2\ndual false\nterm 1 0 1\nterm -1 0 1\n").is_err());
        assert!(parse_tensor("dim 4\ndegree 2\ndual false\nterm 1+√5 0 1\n").is_err());
    }
}
