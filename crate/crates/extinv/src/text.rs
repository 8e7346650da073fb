//! Parsing of rendered polynomials.
//!
//! Accepts the canonical output of `SkewPoly`'s `Display`: signed terms,
//! rational coefficients as `p` or `p/q`, factors joined by `∧`, `*`, or
//! juxtaposition, powers with `^`. Factors are multiplied in the order
//! written, so `x2∧x1` parses to `-x1∧x2` under the exterior rule.

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::{Ctx, SkewPoly};
use crate::error::{Error, Result};
use crate::rat::Rat;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Number(Rat),
    Name(String),
    Caret,
    Plus,
    Minus,
}

fn lex(input: &str) -> Result<Vec<Token>> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = input.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '\u{2227}' {
            i += 1;
            continue;
        }
        match c {
            '+' => {
                tokens.push(Token::Plus);
                i += 1;
            }
            '-' | '\u{2212}' => {
                tokens.push(Token::Minus);
                i += 1;
            }
            '^' => {
                tokens.push(Token::Caret);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let numer: BigInt = chars[start..i]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .map_err(|_| Error::Parse("bad integer".into()))?;
                if i < chars.len() && chars[i] == '/' {
                    i += 1;
                    let dstart = i;
                    while i < chars.len() && chars[i].is_ascii_digit() {
                        i += 1;
                    }
                    if dstart == i {
                        return Err(Error::Parse("missing denominator".into()));
                    }
                    let denom: BigInt = chars[dstart..i]
                        .iter()
                        .collect::<String>()
                        .parse()
                        .map_err(|_| Error::Parse("bad denominator".into()))?;
                    if denom == BigInt::from(0) {
                        return Err(Error::Parse("zero denominator".into()));
                    }
                    tokens.push(Token::Number(Rat::new(numer, denom)));
                } else {
                    tokens.push(Token::Number(Rat::from_integer(numer)));
                }
            }
            _ if c.is_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                tokens.push(Token::Name(chars[start..i].iter().collect()));
            }
            _ => return Err(Error::Parse(format!("unexpected character `{c}`"))),
        }
    }
    Ok(tokens)
}

/// Parse a polynomial over `ctx` from text.
pub fn parse_poly(ctx: &Ctx, input: &str) -> Result<SkewPoly> {
    let tokens = lex(input)?;
    if tokens.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut out = SkewPoly::zero(ctx);
    let mut i = 0;
    loop {
        // sign prefix
        let mut sign = Rat::one();
        loop {
            match tokens.get(i) {
                Some(Token::Plus) => i += 1,
                Some(Token::Minus) => {
                    sign = -sign;
                    i += 1;
                }
                _ => break,
            }
        }
        // term: optional coefficient, then factors
        let mut term = SkewPoly::constant(ctx, sign);
        let mut saw_anything = false;
        if let Some(Token::Number(n)) = tokens.get(i) {
            term = term.scale(n);
            saw_anything = true;
            i += 1;
        }
        while let Some(Token::Name(name)) = tokens.get(i) {
            let var = ctx
                .variable_index(name)
                .ok_or_else(|| Error::Parse(format!("unknown variable `{name}`")))?;
            i += 1;
            let mut exp = 1u32;
            if let Some(Token::Caret) = tokens.get(i) {
                i += 1;
                match tokens.get(i) {
                    Some(Token::Number(n)) if n.is_integer() && *n >= Rat::from_integer(0.into()) => {
                        exp = u32::try_from(n.to_integer())
                            .map_err(|_| Error::Parse("exponent too large".into()))?;
                        i += 1;
                    }
                    _ => return Err(Error::Parse("expected exponent after `^`".into())),
                }
            }
            let v = SkewPoly::variable(ctx, var)?;
            for _ in 0..exp {
                term = term.mul(&v)?;
            }
            saw_anything = true;
        }
        if !saw_anything {
            return Err(Error::Parse("expected a term".into()));
        }
        out = out.add(&term);
        match tokens.get(i) {
            None => break,
            Some(Token::Plus | Token::Minus) => continue,
            Some(t) => return Err(Error::Parse(format!("unexpected token {t:?}"))),
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{AlgebraCtx, Monomial};
    use crate::rat::{rat, rat_int};
    use proptest::prelude::*;

    #[test]
    fn parses_canonical_forms() {
        let ctx = AlgebraCtx::exterior(2);
        let f = parse_poly(&ctx, "1 - 1/2 x1\u{2227}x2").unwrap();
        assert_eq!(f.to_string(), "1 - 1/2 x1\u{2227}x2");
        let g = parse_poly(&ctx, "x2\u{2227}x1").unwrap();
        assert_eq!(g.to_string(), "-x1\u{2227}x2");
        assert_eq!(parse_poly(&ctx, "0").unwrap(), SkewPoly::zero(&ctx));
    }

    #[test]
    fn parses_skew_powers() {
        let ctx = AlgebraCtx::skew(2, 4).unwrap();
        let f = parse_poly(&ctx, "x1^3 + x2^3").unwrap();
        assert_eq!(f.num_terms(), 2);
        assert_eq!(f.coefficient(&Monomial::from_exponents(vec![3, 0])), rat_int(1));
    }

    #[test]
    fn rejects_garbage() {
        let ctx = AlgebraCtx::exterior(2);
        for bad in ["", "x9", "1 +", "x1 ^ q", "x1 $ x2"] {
            assert!(parse_poly(&ctx, bad).is_err(), "should reject {bad:?}");
        }
    }

    proptest! {
        #[test]
        fn render_parse_round_trip(coeffs in proptest::collection::vec((-6i64..=6, 1i64..=4), 0..6)) {
            let ctx = AlgebraCtx::exterior(3);
            let basis: Vec<Monomial> = (0..=3).flat_map(|d| ctx.graded_basis(d).unwrap()).collect();
            let mut f = SkewPoly::zero(&ctx);
            for (i, (p, q)) in coeffs.iter().enumerate() {
                let m = basis[i % basis.len()].clone();
                f = f.add(&SkewPoly::monomial(&ctx, m, rat(*p, *q)).unwrap());
            }
            let rendered = f.to_string();
            let back = parse_poly(&ctx, &rendered).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
