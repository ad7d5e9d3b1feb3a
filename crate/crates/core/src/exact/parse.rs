//! Text formats for rational polynomials.
//!
//! The canonical format is whitespace-separated coefficients, constant term
//! first: `-2 0 0 1` is x^3 - 2. Each coefficient is an integer or `p/q`.
//! An expression syntax (`x^3 - 2`, `3/2*x^2 + x`) is accepted as a
//! convenience by [`parse_poly`].

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::poly::{QPoly, Rat};
use crate::error::{Error, Result};

pub fn parse_rational(tok: &str) -> Result<Rat> {
    let bad = || Error::Parse(format!("not a rational number: {tok:?}"));
    match tok.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {tok:?}")));
            }
            Ok(Rat::new(n, d))
        }
        None => Ok(Rat::from_integer(tok.parse().map_err(|_| bad())?)),
    }
}

/// Parses the coefficient-list format.
pub fn parse_coeffs(text: &str) -> Result<QPoly> {
    let coeffs = text
        .split_whitespace()
        .map(parse_rational)
        .collect::<Result<Vec<_>>>()?;
    Ok(QPoly::new(coeffs))
}

/// Parses either format: text containing `x` is read as an expression.
pub fn parse_poly(text: &str) -> Result<QPoly> {
    let t = text.trim();
    if t.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if t.contains(['x', 'X']) {
        parse_expr(t)
    } else {
        parse_coeffs(t)
    }
}

/// Sum of terms `c`, `c*x`, `c x^k`, `x^k`, with `+`/`-` separators.
fn parse_expr(text: &str) -> Result<QPoly> {
    let chars: Vec<char> = text.chars().collect();
    for (i, w) in chars.windows(2).enumerate() {
        if w[0].is_ascii_digit() && w[1].is_whitespace() {
            let next = chars[i + 1..].iter().find(|c| !c.is_whitespace());
            if next.is_some_and(|c| c.is_ascii_digit() || *c == 'x' || *c == 'X') {
                return Err(Error::Parse(format!("missing operator in {text:?}")));
            }
        }
    }
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let cleaned = cleaned.replace('X', "x");
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev: Option<char> = None;
    for ch in cleaned.chars() {
        if (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
            terms.push((neg, std::mem::take(&mut cur)));
            neg = ch == '-';
        } else if (ch == '+' || ch == '-') && prev.is_none() {
            neg = ch == '-';
        } else {
            cur.push(ch);
        }
        prev = Some(ch);
    }
    terms.push((neg, cur));
    let mut acc = QPoly::zero();
    for (neg, term) in terms {
        if term.is_empty() {
            return Err(Error::Parse(format!("dangling sign in {text:?}")));
        }
        let (coef, power) = match term.find('x') {
            None => (parse_rational(&term)?, 0usize),
            Some(pos) => {
                let c = term[..pos].trim_end_matches('*');
                let coef = if c.is_empty() {
                    Rat::one()
                } else {
                    parse_rational(c)?
                };
                let rest = &term[pos + 1..];
                let power = if rest.is_empty() {
                    1
                } else if let Some(e) = rest.strip_prefix('^') {
                    e.parse::<usize>()
                        .map_err(|_| Error::Parse(format!("bad exponent in {term:?}")))?
                } else {
                    return Err(Error::Parse(format!("unexpected text in {term:?}")));
                };
                (coef, power)
            }
        };
        let coef = if neg { -coef } else { coef };
        acc = &acc + &QPoly::monomial(coef, power);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::poly::ratio;
    use proptest::prelude::*;

    #[test]
    fn coefficient_list() {
        assert_eq!(
            parse_poly("-2 0 0 1").unwrap(),
            QPoly::from_ints(&[-2, 0, 0, 1])
        );
        assert_eq!(
            parse_poly("1/2 -3/4").unwrap(),
            QPoly::new(vec![ratio(1, 2), ratio(-3, 4)])
        );
    }

    #[test]
    fn expressions() {
        assert_eq!(
            parse_poly("x^3-2").unwrap(),
            QPoly::from_ints(&[-2, 0, 0, 1])
        );
        assert_eq!(
            parse_poly("-x^5 + 3/2*x^2 - x + 1").unwrap(),
            QPoly::new(vec![
                ratio(1, 1),
                ratio(-1, 1),
                ratio(3, 2),
                ratio(0, 1),
                ratio(0, 1),
                ratio(-1, 1)
            ])
        );
        assert_eq!(parse_poly("2x").unwrap(), QPoly::from_ints(&[0, 2]));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_poly("1 two 3").is_err());
        assert!(parse_poly("").is_err());
        assert!(parse_poly("1/0").is_err());
        assert!(parse_poly("x^").is_err());
        assert!(parse_poly("1 2 x").is_err());
        assert_eq!(
            parse_poly("2 x").unwrap_err(),
            Error::Parse("missing operator in \"2 x\"".into())
        );
    }

    proptest! {
        #[test]
        fn text_round_trip(coeffs in proptest::collection::vec((-50i64..50, 1i64..20), 0..8)) {
            let p = QPoly::new(coeffs.iter().map(|&(n, d)| ratio(n, d)).collect());
            let back = parse_coeffs(&p.to_text()).unwrap();
            prop_assert_eq!(&back, &p);
            prop_assert_eq!(back.to_text(), p.to_text());
        }
    }
}
