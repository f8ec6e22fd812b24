//! `$(expr)` substitution with small integer expressions, used to
//! instantiate table rows at a given rank.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Bindings = BTreeMap<char, i64>;

/// Replaces every `$(expr)` in `template` by the value of `expr`.
pub fn render(template: &str, vars: &Bindings) -> Result<String> {
    let mut out = String::new();
    let mut rest = template;
    while let Some(start) = rest.find("$(") {
        out.push_str(&rest[..start]);
        let after = &rest[start + 2..];
        let end = matching_paren(after)
            .ok_or_else(|| Error::InvalidInput(format!("unterminated placeholder in {template:?}")))?;
        out.push_str(&eval(&after[..end], vars)?.to_string());
        rest = &after[end + 1..];
    }
    out.push_str(rest);
    Ok(out)
}

fn matching_paren(s: &str) -> Option<usize> {
    let mut depth = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' if depth == 0 => return Some(i),
            ')' => depth -= 1,
            _ => {}
        }
    }
    None
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok {
    Num(i64),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut toks = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let mut v = 0i64;
            while i < chars.len() && chars[i].is_ascii_digit() {
                v = v * 10 + chars[i].to_digit(10).unwrap() as i64;
                i += 1;
            }
            toks.push(Tok::Num(v));
        } else if c.is_ascii_alphabetic() {
            toks.push(Tok::Var(c));
            i += 1;
        } else if "+-*/()".contains(c) {
            toks.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::InvalidInput(format!("unexpected {c:?} in expression {s:?}")));
        }
    }
    Ok(toks)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    vars: &'a Bindings,
}

impl Parser<'_> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        while let Some(Tok::Op(op @ ('+' | '-'))) = self.peek() {
            self.pos += 1;
            let rhs = self.term()?;
            v = if op == '+' { v + rhs } else { v - rhs };
        }
        Ok(v)
    }

    fn term(&mut self) -> Result<i64> {
        let mut v = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Op('*')) => {
                    self.pos += 1;
                    v *= self.factor()?;
                }
                Some(Tok::Op('/')) => {
                    self.pos += 1;
                    let d = self.factor()?;
                    if d == 0 || v % d != 0 {
                        return Err(Error::InvalidInput(format!("inexact division {v}/{d}")));
                    }
                    v /= d;
                }
                // juxtaposition, as in "2n"
                Some(Tok::Var(_)) | Some(Tok::Op('(')) => v *= self.factor()?,
                _ => return Ok(v),
            }
        }
    }

    fn factor(&mut self) -> Result<i64> {
        let t = self.peek().ok_or_else(|| Error::InvalidInput("truncated expression".into()))?;
        self.pos += 1;
        match t {
            Tok::Num(v) => Ok(v),
            Tok::Var(c) => self.vars.get(&c).copied().ok_or_else(|| Error::InvalidInput(format!("unbound variable {c}"))),
            Tok::Op('-') => Ok(-self.factor()?),
            Tok::Op('(') => {
                let v = self.expr()?;
                if self.peek() != Some(Tok::Op(')')) {
                    return Err(Error::InvalidInput("missing ')'".into()));
                }
                self.pos += 1;
                Ok(v)
            }
            Tok::Op(c) => Err(Error::InvalidInput(format!("unexpected {c:?}"))),
        }
    }
}

pub fn eval(expr: &str, vars: &Bindings) -> Result<i64> {
    let mut p = Parser { toks: tokenize(expr)?, pos: 0, vars };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::InvalidInput(format!("trailing input in expression {expr:?}")));
    }
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expressions() {
        let vars = Bindings::from([('n', 3), ('r', 2)]);
        assert_eq!(eval("2n-1", &vars).unwrap(), 5);
        assert_eq!(eval("(2n+2)/r", &vars).unwrap(), 4);
        assert_eq!(eval("-n+10", &vars).unwrap(), 7);
        assert!(eval("n/r", &vars).is_err());
        assert!(eval("k", &vars).is_err());
    }

    #[test]
    fn rendering() {
        let vars = Bindings::from([('n', 3)]);
        assert_eq!(render("^1D_{$(2n-1),$(n-2)}^{(2)}", &vars).unwrap(), "^1D_{5,1}^{(2)}");
        assert_eq!(render("G2", &vars).unwrap(), "G2");
    }
}
