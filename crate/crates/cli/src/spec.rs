//! State-spec grammar: `up`, `down`, `css:θ,φ`, or a comma-separated list of
//! complex arithmetic expressions (`i`, `pi`, `sqrt2`, `sqrt(..)`, `+ - * /`,
//! parentheses), ordered from `m = j` down to `m = -j`.

use num_complex::Complex64 as C;
use spinphase_core::states::css_state;
use spinphase_core::{Spin, SpinStateF64};

use crate::CliError;

/// Tolerance on `|‖ψ‖ − 1|` before the state is rescaled to unit norm.
pub const NORM_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Op(char),
    Open,
    Close,
}

fn lex(s: &str) -> Result<Vec<Tok>, CliError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut k = 0;
    while k < chars.len() {
        let ch = chars[k];
        match ch {
            ' ' | '\t' => k += 1,
            '+' | '-' | '*' | '/' => {
                out.push(Tok::Op(ch));
                k += 1;
            }
            '(' => {
                out.push(Tok::Open);
                k += 1;
            }
            ')' => {
                out.push(Tok::Close);
                k += 1;
            }
            c if c.is_ascii_digit() || c == '.' => {
                let start = k;
                while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                    k += 1;
                }
                // exponent, e.g. 1e-3
                if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                    let mut j = k + 1;
                    if j < chars.len() && (chars[j] == '+' || chars[j] == '-') {
                        j += 1;
                    }
                    if j < chars.len() && chars[j].is_ascii_digit() {
                        k = j;
                        while k < chars.len() && chars[k].is_ascii_digit() {
                            k += 1;
                        }
                    }
                }
                let text: String = chars[start..k].iter().collect();
                let v = text
                    .parse()
                    .map_err(|_| CliError::Parse(format!("bad number '{text}'")))?;
                out.push(Tok::Num(v));
            }
            c if c.is_ascii_alphabetic() => {
                let start = k;
                while k < chars.len() && chars[k].is_ascii_alphanumeric() {
                    k += 1;
                }
                out.push(Tok::Ident(chars[start..k].iter().collect()));
            }
            other => return Err(CliError::Parse(format!("unexpected character '{other}'"))),
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn expr(&mut self) -> Result<C, CliError> {
        let mut v = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek().cloned() {
            self.pos += 1;
            let r = self.term()?;
            v = if op == '+' { v + r } else { v - r };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<C, CliError> {
        let mut v = self.unary()?;
        loop {
            match self.peek() {
                Some(Tok::Op(op @ ('*' | '/'))) => {
                    let op = *op;
                    self.pos += 1;
                    let r = self.unary()?;
                    v = if op == '*' { v * r } else { v / r };
                }
                // implicit product: `2i`, `2pi`, `3(1+i)`
                Some(Tok::Ident(_)) | Some(Tok::Open) => v *= self.unary()?,
                _ => return Ok(v),
            }
        }
    }

    fn unary(&mut self) -> Result<C, CliError> {
        match self.peek() {
            Some(Tok::Op('-')) => {
                self.pos += 1;
                // 0 - v keeps the imaginary zero positive, so sqrt(-1) = i
                Ok(C::new(0.0, 0.0) - self.unary()?)
            }
            Some(Tok::Op('+')) => {
                self.pos += 1;
                self.unary()
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<C, CliError> {
        match self.next() {
            Some(Tok::Num(v)) => Ok(C::new(v, 0.0)),
            Some(Tok::Open) => {
                let v = self.expr()?;
                self.close()?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => match name.as_str() {
                "i" => Ok(C::i()),
                "pi" => Ok(C::new(std::f64::consts::PI, 0.0)),
                "sqrt2" => Ok(C::new(std::f64::consts::SQRT_2, 0.0)),
                "sqrt" => {
                    if self.next() != Some(Tok::Open) {
                        return Err(CliError::Parse("expected '(' after sqrt".into()));
                    }
                    let v = self.expr()?;
                    self.close()?;
                    Ok(v.sqrt())
                }
                other => Err(CliError::Parse(format!("unknown name '{other}'"))),
            },
            Some(t) => Err(CliError::Parse(format!("unexpected token {t:?}"))),
            None => Err(CliError::Parse("unexpected end of expression".into())),
        }
    }

    fn close(&mut self) -> Result<(), CliError> {
        match self.next() {
            Some(Tok::Close) => Ok(()),
            _ => Err(CliError::Parse("missing ')'".into())),
        }
    }
}

/// Evaluates one complex arithmetic expression.
pub fn eval(s: &str) -> Result<C, CliError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(CliError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(CliError::Parse(format!("trailing input in '{s}'")));
    }
    Ok(v)
}

/// A real-valued expression, e.g. an angle such as `pi/2`.
pub fn eval_real(s: &str) -> Result<f64, CliError> {
    let v = eval(s)?;
    if v.im.abs() > 1e-15 {
        return Err(CliError::Parse(format!("'{s}' is not real")));
    }
    Ok(v.re)
}

/// Parses a state spec. `spin` is required for `up`, `down` and `css:`; a
/// component list fixes the spin by its length and must agree with it if given.
pub fn parse_state(s: &str, spin: Option<Spin>, normalize: bool) -> Result<SpinStateF64, CliError> {
    let s = s.trim();
    let default = spin.unwrap_or(Spin::HALF);
    let state = match s {
        "up" => SpinStateF64::up(default),
        "down" => SpinStateF64::down(default),
        _ if s.starts_with("css:") => {
            let parts: Vec<&str> = s[4..].split(',').collect();
            if parts.len() != 2 {
                return Err(CliError::Parse(
                    "css needs two angles, css:theta,phi".into(),
                ));
            }
            css_state(default, eval_real(parts[0])?, eval_real(parts[1])?)
        }
        _ => {
            let comps = s.split(',').map(eval).collect::<Result<Vec<_>, _>>()?;
            let found = Spin::from_dim(comps.len()).map_err(|e| CliError::Parse(e.to_string()))?;
            if let Some(sp) = spin {
                if sp != found {
                    return Err(CliError::Parse(format!(
                        "{} components do not match j = {sp}",
                        comps.len()
                    )));
                }
            }
            SpinStateF64::new(found, comps, false).map_err(|e| CliError::Parse(e.to_string()))?
        }
    };
    if !normalize {
        return Ok(state);
    }
    let dev = (state.norm() - 1.0).abs();
    if dev > NORM_TOL {
        return Err(CliError::Contract(format!(
            "state '{s}' is not normalized (|norm - 1| = {dev:e})"
        )));
    }
    Ok(state.normalized())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: C, b: C) -> bool {
        (a - b).norm() < 1e-15
    }

    #[test]
    fn arithmetic() {
        let r = std::f64::consts::SQRT_2;
        assert!(close(
            eval("(1-i)/sqrt2").unwrap(),
            C::new(1.0 / r, -1.0 / r)
        ));
        assert!(close(eval("sqrt2*(1+i)").unwrap(), C::new(r, r)));
        assert!(close(eval("1-i/sqrt2").unwrap(), C::new(1.0, -1.0 / r)));
        assert!(close(eval("-2*-3").unwrap(), C::new(6.0, 0.0)));
        assert!(close(eval("sqrt(-1)").unwrap(), C::i()));
        assert!(close(eval("2i").unwrap(), C::new(0.0, 2.0)));
        assert!(close(eval("1.5e-1").unwrap(), C::new(0.15, 0.0)));
        assert!(close(
            eval("pi/2").unwrap(),
            C::new(std::f64::consts::FRAC_PI_2, 0.0)
        ));
    }

    #[test]
    fn malformed() {
        for bad in ["", "1+", "(1", "foo", "1)", "2 $ 3", "sqrt 2"] {
            assert!(matches!(eval(bad), Err(CliError::Parse(_))), "{bad}");
        }
    }

    #[test]
    fn states() {
        let s = parse_state("1/sqrt2, i/sqrt2", None, true).unwrap();
        assert_eq!(s.spin(), Spin::HALF);
        let s = parse_state("css:pi/2,0", Some(Spin::from_twice(2)), true).unwrap();
        assert_eq!(s.dim(), 3);
        assert!(matches!(
            parse_state("1, 1", None, true),
            Err(CliError::Contract(_))
        ));
        assert!(parse_state("1, 1", None, false).is_ok());
        assert!(matches!(
            parse_state("1, 0", Some(Spin::from_twice(2)), true),
            Err(CliError::Parse(_))
        ));
    }
}
