//! Plain-text ideal format.
//!
//! ```text
//! # randmono ideal v1
//! 3 4
//! 2 1 0
//! 0 1 3
//! ```
//!
//! Lines starting with `#` are comments. The first data line is `n D`; each
//! following line is one generator's exponent vector. A header alone is the
//! zero ideal.

use thiserror::Error;

use crate::ideal::{IdealError, MonomialIdeal};
use crate::monomial::Monomial;

pub const FORMAT_HEADER: &str = "# randmono ideal v1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("missing \"n D\" header line")]
    MissingHeader,
    #[error(transparent)]
    Ideal(#[from] IdealError),
}

pub fn parse_ideal(text: &str) -> Result<MonomialIdeal, TextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(TextError::MissingHeader)?;
    let header = parse_numbers(hline, header)?;
    let [n, d] = header[..] else {
        return Err(TextError::Syntax {
            line: hline,
            msg: "header must be \"n D\"".into(),
        });
    };
    if n == 0 {
        return Err(TextError::Syntax {
            line: hline,
            msg: "n must be positive".into(),
        });
    }
    let mut gens = Vec::new();
    for (line, l) in lines {
        let exps = parse_numbers(line, l)?;
        if exps.len() != n as usize {
            return Err(TextError::Syntax {
                line,
                msg: format!("expected {n} exponents, found {}", exps.len()),
            });
        }
        gens.push(Monomial::new(exps));
    }
    Ok(MonomialIdeal::from_generators(n as usize, d, gens)?)
}

fn parse_numbers(line: usize, l: &str) -> Result<Vec<u32>, TextError> {
    l.split_whitespace()
        .map(|t| {
            t.parse::<u32>().map_err(|_| TextError::Syntax {
                line,
                msg: format!("not a non-negative integer: {t:?}"),
            })
        })
        .collect()
}

pub fn format_ideal(ideal: &MonomialIdeal) -> String {
    let mut out = format!("{FORMAT_HEADER}\n{} {}\n", ideal.num_vars(), ideal.max_degree());
    out.push_str(&format_generators(ideal));
    out
}

/// Generator lines only, no header.
pub fn format_generators(ideal: &MonomialIdeal) -> String {
    let mut out = String::new();
    for g in ideal.generators() {
        let parts: Vec<String> = g.exponents().iter().map(u32::to_string).collect();
        out.push_str(&parts.join(" "));
        out.push('\n');
    }
    out
}

/// Single-line form used as a JSON key: generators separated by `;`, `"0"`
/// for the zero ideal.
pub fn ideal_key(ideal: &MonomialIdeal) -> String {
    if ideal.is_zero() {
        return "0".to_string();
    }
    ideal
        .generators()
        .iter()
        .map(|g| g.exponents().iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("; ")
}

/// Exponent vectors with their unparsed probabilities.
pub type PtableRows = Vec<(Monomial, String)>;

pub const PTABLE_HEADER: &str = "# randmono ptable v1";

/// Per-monomial probabilities for the general model:
///
/// ```text
/// # randmono ptable v1
/// 2 2
/// 1 0 0.25
/// 1 1 1/3
/// ```
///
/// The first data line is `n D`; each following line is an exponent vector
/// followed by its probability, kept as text for the caller to parse.
pub fn parse_ptable(text: &str) -> Result<(usize, u32, PtableRows), TextError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines.next().ok_or(TextError::MissingHeader)?;
    let header = parse_numbers(hline, header)?;
    let [n, d] = header[..] else {
        return Err(TextError::Syntax {
            line: hline,
            msg: "header must be \"n D\"".into(),
        });
    };
    let mut rows = Vec::new();
    for (line, l) in lines {
        let mut parts: Vec<&str> = l.split_whitespace().collect();
        let prob = parts.pop().ok_or_else(|| TextError::Syntax {
            line,
            msg: "empty row".into(),
        })?;
        let exps = parse_numbers(line, &parts.join(" "))?;
        if exps.len() != n as usize {
            return Err(TextError::Syntax {
                line,
                msg: format!("expected {n} exponents and a probability"),
            });
        }
        rows.push((Monomial::new(exps), prob.to_string()));
    }
    Ok((n as usize, d, rows))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parse_basic() {
        let i = parse_ideal("3 4\n2 1 0\n0 1 3\n").unwrap();
        assert_eq!(i.num_vars(), 3);
        assert_eq!(i.max_degree(), 4);
        assert_eq!(i.total_betti_1(), 2);
        let z = parse_ideal("# comment\n2 2\n").unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn parse_ptable_rows() {
        let (n, d, rows) = parse_ptable("# randmono ptable v1\n2 2\n1 0 0.25\n1 1 1/3\n").unwrap();
        assert_eq!((n, d), (2, 2));
        assert_eq!(rows[1], (Monomial::new(vec![1, 1]), "1/3".to_string()));
        assert!(parse_ptable("2 2\n1 0\n").is_err());
    }

    #[test]
    fn parse_errors() {
        assert_eq!(parse_ideal(""), Err(TextError::MissingHeader));
        assert!(matches!(parse_ideal("2\n"), Err(TextError::Syntax { line: 1, .. })));
        assert!(matches!(parse_ideal("2 2\n1 0 0\n"), Err(TextError::Syntax { line: 2, .. })));
        assert!(matches!(parse_ideal("2 2\n0 0\n"), Err(TextError::Ideal(_))));
        assert!(matches!(parse_ideal("2 2\n3 0\n"), Err(TextError::Ideal(_))));
        assert!(matches!(parse_ideal("2 2\n-1 0\n"), Err(TextError::Syntax { .. })));
    }

    #[test]
    fn keys() {
        let i = parse_ideal("2 2\n1 0\n0 2\n").unwrap();
        assert_eq!(ideal_key(&i), "1 0; 0 2");
        assert_eq!(ideal_key(&MonomialIdeal::zero(2, 2)), "0");
    }

    proptest! {
        #[test]
        fn round_trip(n in 1usize..4, gens in proptest::collection::vec(proptest::collection::vec(0u32..4, 3), 0..6)) {
            let gens: Vec<Monomial> = gens
                .into_iter()
                .map(|mut e| { e.truncate(n); e })
                .filter(|e| e.iter().any(|&x| x > 0))
                .map(Monomial::new)
                .collect();
            let ideal = MonomialIdeal::from_generators(n, 12, gens).unwrap();
            prop_assert_eq!(parse_ideal(&format_ideal(&ideal)).unwrap(), ideal);
        }
    }
}
