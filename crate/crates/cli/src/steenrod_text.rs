//! Steenrod word syntax: `Sq^3 Sq^1 + Sq^4`, with `Sq3` accepted for `Sq^3`
//! and `1` for the unit. Factors compose left to right; `+` joins terms.

use cobord::steenrod::{SqMonomial, SteenrodElement};

use crate::failure::Failure;

/// Largest accepted total degree of a word; keeps reduction at desk scale.
pub const MAX_WORD_DEGREE: u32 = 64;

pub fn parse_steenrod(input: &str) -> Result<SteenrodElement, Failure> {
    if input.trim().is_empty() {
        return Err(Failure::Parse(
            "empty Steenrod expression; write `1` for the unit".into(),
        ));
    }
    let mut element = SteenrodElement::zero();
    for term in input.split('+') {
        let factors: Vec<&str> = term.split_whitespace().collect();
        if factors.is_empty() {
            return Err(Failure::Parse("empty term between `+` signs".into()));
        }
        if factors == ["1"] {
            element.toggle(SqMonomial::unit());
            continue;
        }
        let mut exponents = Vec::with_capacity(factors.len());
        for factor in factors {
            exponents.push(parse_factor(factor)?);
        }
        let degree: u32 = exponents.iter().sum();
        if degree > MAX_WORD_DEGREE {
            return Err(Failure::Semantic(format!(
                "word degree {degree} exceeds the supported maximum {MAX_WORD_DEGREE}"
            )));
        }
        element.toggle(SqMonomial::new(exponents).expect("factors are positive"));
    }
    Ok(element)
}

fn parse_factor(factor: &str) -> Result<u32, Failure> {
    let Some(rest) = factor.strip_prefix("Sq") else {
        return Err(Failure::Parse(format!(
            "expected a factor like `Sq^3` (or the unit term `1`), found `{factor}`"
        )));
    };
    let digits = rest.strip_prefix('^').unwrap_or(rest);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(Failure::Parse(format!(
            "malformed exponent in `{factor}`: expected a nonnegative integer"
        )));
    }
    let value: u32 = digits
        .parse()
        .map_err(|_| Failure::Parse(format!("exponent out of range in `{factor}`")))?;
    if value == 0 {
        return Err(Failure::Parse(
            "Sq^0 is not written inside words; the unit is written 1".into(),
        ));
    }
    Ok(value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn word(exps: &[u32]) -> SteenrodElement {
        SteenrodElement::from_monomial(SqMonomial::new(exps.to_vec()).unwrap())
    }

    #[test]
    fn parses_words_and_sums() {
        assert_eq!(parse_steenrod("Sq^2 Sq^2").unwrap(), word(&[2, 2]));
        assert_eq!(parse_steenrod("Sq3 Sq2 Sq1").unwrap(), word(&[3, 2, 1]));
        assert_eq!(parse_steenrod("1").unwrap(), SteenrodElement::unit());
        let sum = parse_steenrod("Sq^3 Sq^1 + Sq^4").unwrap();
        assert_eq!(sum, word(&[3, 1]).add(&word(&[4])));
    }

    #[test]
    fn repeated_terms_cancel() {
        assert!(parse_steenrod("Sq^2 + Sq^2").unwrap().is_zero());
    }

    #[test]
    fn rejects_sq_zero_with_hint() {
        let err = parse_steenrod("Sq^0").unwrap_err();
        assert!(err.message().contains("unit is written 1"));
        assert_eq!(err.exit_code(), 2);
        assert!(parse_steenrod("Sq^2 Sq0").is_err());
    }

    #[test]
    fn rejects_malformed_exponents() {
        assert!(parse_steenrod("Sq^-1").is_err());
        assert!(parse_steenrod("Sq^x").is_err());
        assert!(parse_steenrod("Sq").is_err());
        assert!(parse_steenrod("Tq^2").is_err());
        assert!(parse_steenrod("").is_err());
        assert!(parse_steenrod("Sq^2 +").is_err());
        assert!(parse_steenrod("1 Sq^2").is_err());
    }

    #[test]
    fn degree_cap_is_semantic() {
        let err = parse_steenrod("Sq^65").unwrap_err();
        assert_eq!(err.exit_code(), 3);
    }
}
