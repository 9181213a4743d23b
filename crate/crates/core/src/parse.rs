//! Line-oriented quiver text format.
//!
//! ```text
//! # the two-vertex cyclic quiver
//! vertex a
//! vertex b
//! arrow a b
//! arrow b a
//! d 2 2
//! n 2 2
//! theta 0 0
//! ```
//!
//! `vertex` lines fix the vertex order, repeated `arrow` lines fix the
//! enumeration of parallel arrows, and the vector lines take one value per
//! vertex in the declared order (`theta` entries may be rationals like
//! `-1/2`). `#` starts a comment; tokens are whitespace-separated.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, Stability};

/// The contents of a quiver file: the quiver plus whichever of d, n, theta
/// were present.
#[derive(Debug, Clone)]
pub struct QuiverFile {
    pub quiver: Quiver,
    pub d: Option<DimVector>,
    pub n: Option<DimVector>,
    pub theta: Option<Stability>,
}

impl QuiverFile {
    pub fn require_d(&self) -> Result<&DimVector> {
        self.d
            .as_ref()
            .ok_or_else(|| Error::Input("the quiver file does not define d".into()))
    }

    pub fn require_n(&self) -> Result<&DimVector> {
        self.n
            .as_ref()
            .ok_or_else(|| Error::Input("the quiver file does not define n".into()))
    }

    /// Theta, defaulting to the trivial stability.
    pub fn theta_or_zero(&self) -> Stability {
        self.theta
            .clone()
            .unwrap_or_else(|| Stability::zero(self.quiver.vertex_count()))
    }
}

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokenize(text: &str) -> Vec<Vec<Token<'_>>> {
    let mut lines = Vec::new();
    for (lno, raw) in text.lines().enumerate() {
        let visible = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut col = 0;
        for piece in visible.split_inclusive(char::is_whitespace) {
            let trimmed = piece.trim_end_matches(char::is_whitespace);
            if !trimmed.is_empty() {
                tokens.push(Token {
                    text: trimmed,
                    line: lno + 1,
                    column: col + 1,
                });
            }
            col += piece.chars().count();
        }
        if !tokens.is_empty() {
            lines.push(tokens);
        }
    }
    lines
}

fn err(tok: &Token<'_>, message: impl Into<String>) -> Error {
    Error::Parse {
        line: tok.line,
        column: tok.column,
        message: message.into(),
    }
}

fn parse_u32(tok: &Token<'_>) -> Result<u32> {
    tok.text.parse::<u32>().map_err(|_| {
        err(
            tok,
            format!("expected a non-negative integer, got `{}`", tok.text),
        )
    })
}

fn parse_rational(tok: &Token<'_>) -> Result<Rational64> {
    let parse_i64 = |s: &str| -> Option<i64> { s.parse::<i64>().ok() };
    match tok.text.split_once('/') {
        None => parse_i64(tok.text)
            .map(Rational64::from_integer)
            .ok_or_else(|| {
                err(
                    tok,
                    format!("expected a rational number, got `{}`", tok.text),
                )
            }),
        Some((num, den)) => {
            let n = parse_i64(num);
            let d = parse_i64(den).filter(|&d| d != 0);
            match (n, d) {
                (Some(n), Some(d)) => Ok(Rational64::new(n, d)),
                _ => Err(err(
                    tok,
                    format!("expected a rational number, got `{}`", tok.text),
                )),
            }
        }
    }
}

/// Parse the quiver text format. Parse errors carry the 1-based line and
/// column of the offending token.
pub fn parse_quiver_file(text: &str) -> Result<QuiverFile> {
    let mut vertex_names: Vec<String> = Vec::new();
    let mut arrows: Vec<(usize, usize)> = Vec::new();
    let mut d: Option<DimVector> = None;
    let mut n: Option<DimVector> = None;
    let mut theta: Option<Stability> = None;

    let resolve = |names: &[String], tok: &Token<'_>| -> Result<usize> {
        names
            .iter()
            .position(|v| v == tok.text)
            .ok_or_else(|| err(tok, format!("unknown vertex `{}`", tok.text)))
    };

    for line in tokenize(text) {
        let head = &line[0];
        let args = &line[1..];
        let expect_args = |count: usize| -> Result<()> {
            if args.len() != count {
                Err(err(
                    head,
                    format!(
                        "`{}` takes {} argument{}, got {}",
                        head.text,
                        count,
                        if count == 1 { "" } else { "s" },
                        args.len()
                    ),
                ))
            } else {
                Ok(())
            }
        };
        let expect_per_vertex = |what: &str| -> Result<()> {
            if vertex_names.is_empty() {
                Err(err(head, format!("`{what}` before any `vertex` line")))
            } else if args.len() != vertex_names.len() {
                Err(err(
                    head,
                    format!(
                        "`{what}` needs one entry per vertex ({} vertices, got {} entries)",
                        vertex_names.len(),
                        args.len()
                    ),
                ))
            } else {
                Ok(())
            }
        };
        match head.text {
            "vertex" => {
                expect_args(1)?;
                if vertex_names.iter().any(|v| v == args[0].text) {
                    return Err(err(
                        &args[0],
                        format!("duplicate vertex `{}`", args[0].text),
                    ));
                }
                if d.is_some() || n.is_some() || theta.is_some() {
                    return Err(err(head, "`vertex` after a vector line"));
                }
                vertex_names.push(args[0].text.to_string());
            }
            "arrow" => {
                expect_args(2)?;
                let s = resolve(&vertex_names, &args[0])?;
                let t = resolve(&vertex_names, &args[1])?;
                arrows.push((s, t));
            }
            "d" => {
                expect_per_vertex("d")?;
                if d.is_some() {
                    return Err(err(head, "duplicate `d` line"));
                }
                let entries = args.iter().map(parse_u32).collect::<Result<Vec<_>>>()?;
                d = Some(DimVector::new(entries));
            }
            "n" => {
                expect_per_vertex("n")?;
                if n.is_some() {
                    return Err(err(head, "duplicate `n` line"));
                }
                let entries = args.iter().map(parse_u32).collect::<Result<Vec<_>>>()?;
                n = Some(DimVector::new(entries));
            }
            "theta" => {
                expect_per_vertex("theta")?;
                if theta.is_some() {
                    return Err(err(head, "duplicate `theta` line"));
                }
                let weights = args
                    .iter()
                    .map(parse_rational)
                    .collect::<Result<Vec<_>>>()?;
                theta = Some(Stability::new(weights));
            }
            other => {
                return Err(err(
                    head,
                    format!("unknown directive `{other}` (expected vertex/arrow/d/n/theta)"),
                ));
            }
        }
    }
    let quiver = Quiver::new(vertex_names, arrows)?;
    Ok(QuiverFile {
        quiver,
        d,
        n,
        theta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_CYCLE: &str = "\
# a <-> b, one arrow each way
vertex a
vertex b
arrow a b   # alpha
arrow b a   # beta
d 2 2
n 2 2
theta 0 0
";

    #[test]
    fn parses_the_running_example() {
        let file = parse_quiver_file(TWO_CYCLE).unwrap();
        assert_eq!(file.quiver.vertex_count(), 2);
        assert_eq!(file.quiver.arrows().len(), 2);
        assert_eq!(file.quiver.arrow_count(0, 1), 1);
        assert_eq!(file.d.unwrap(), DimVector::new(vec![2, 2]));
        assert_eq!(file.n.unwrap(), DimVector::new(vec![2, 2]));
        assert!(file.theta.unwrap().is_zero());
    }

    #[test]
    fn rational_weights() {
        let file = parse_quiver_file("vertex a\nvertex b\ntheta -1/2 3\n").unwrap();
        let theta = file.theta.unwrap();
        assert_eq!(theta.weights()[0], Rational64::new(-1, 2));
        assert_eq!(theta.weights()[1], Rational64::from_integer(3));
    }

    #[test]
    fn error_positions() {
        let e = parse_quiver_file("vertex a\narrow a bogus\n").unwrap_err();
        match e {
            Error::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert_eq!(column, 9);
            }
            other => panic!("expected parse error, got {other:?}"),
        }
        let e2 = parse_quiver_file("vertex a\nd 1 2\n").unwrap_err();
        assert!(matches!(e2, Error::Parse { line: 2, .. }));
        let e3 = parse_quiver_file("vertex a\nd x\n").unwrap_err();
        assert!(matches!(
            e3,
            Error::Parse {
                line: 2,
                column: 3,
                ..
            }
        ));
    }

    #[test]
    fn rejects_duplicates_and_unknown_directives() {
        assert!(parse_quiver_file("vertex a\nvertex a\n").is_err());
        assert!(parse_quiver_file("vertex a\nd 1\nd 1\n").is_err());
        assert!(parse_quiver_file("vertx a\n").is_err());
        assert!(parse_quiver_file("vertex a\nd 1\nvertex b\n").is_err());
    }
}
