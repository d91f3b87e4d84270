//! Small expression language used by the table dataset.
//!
//! Integer formulas support `+ - * /` (floor division), unary minus,
//! parentheses, `min`, `max`, `floor`, and implicit multiplication of a
//! literal by a name (`2n`). Constraints are comparison chains such as
//! `0 <= i <= p` or `n != 2`. Algebra expressions are `+`-separated sums of
//! components like `so(p,q)`, `sl(n,C)`, `so*(2n)`, `s(u(i,j)+u(p-i,q-j))`
//! or `R`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};

pub type Params = BTreeMap<String, i64>;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(i64),
    Ident(String),
    Op(char),
    Cmp(&'static str),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            let s: String = chars[start..k].iter().collect();
            let n = s.parse().map_err(|_| Error::Dataset(format!("bad number in `{src}`")))?;
            out.push(Tok::Num(n));
            if k < chars.len() && (chars[k].is_ascii_alphabetic() || chars[k] == '_') {
                out.push(Tok::Op('*'));
            }
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push(Tok::Ident(chars[start..k].iter().collect()));
        } else if let Some(op) =
            ["<=", ">=", "==", "!="].iter().find(|op| src[byte_index(&chars, k)..].starts_with(**op))
        {
            out.push(Tok::Cmp(op));
            k += 2;
        } else if c == '<' {
            out.push(Tok::Cmp("<"));
            k += 1;
        } else if c == '>' {
            out.push(Tok::Cmp(">"));
            k += 1;
        } else if "+-*/(),".contains(c) {
            out.push(Tok::Op(c));
            k += 1;
        } else {
            return Err(Error::Dataset(format!("unexpected character `{c}` in `{src}`")));
        }
    }
    Ok(out)
}

fn byte_index(chars: &[char], k: usize) -> usize {
    chars[..k].iter().map(|c| c.len_utf8()).sum()
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    params: &'a Params,
    src: &'a str,
}

impl<'a> Parser<'a> {
    fn new(src: &'a str, params: &'a Params) -> Result<Self> {
        Ok(Parser { toks: tokenize(src)?, pos: 0, params, src })
    }

    fn err(&self, msg: &str) -> Error {
        Error::Dataset(format!("{msg} in `{}`", self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn peek_at(&self, off: usize) -> Option<&Tok> {
        self.toks.get(self.pos + off)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.err(&format!("expected `{c}`")))
        }
    }

    fn done(&self) -> Result<()> {
        if self.pos == self.toks.len() {
            Ok(())
        } else {
            Err(self.err("trailing input"))
        }
    }

    fn expr(&mut self) -> Result<i64> {
        let mut v = self.term()?;
        loop {
            if self.eat('+') {
                v += self.term()?;
            } else if self.eat('-') {
                v -= self.term()?;
            } else {
                return Ok(v);
            }
        }
    }

    fn term(&mut self) -> Result<i64> {
        let mut v = self.factor()?;
        loop {
            if self.eat('*') {
                v *= self.factor()?;
            } else if self.eat('/') {
                let d = self.factor()?;
                if d == 0 {
                    return Err(self.err("division by zero"));
                }
                v = v.div_euclid(d);
            } else {
                return Ok(v);
            }
        }
    }

    fn factor(&mut self) -> Result<i64> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            Some(Tok::Op('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                self.expect(')')?;
                Ok(v)
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                if self.eat('(') {
                    let mut args = vec![self.expr()?];
                    while self.eat(',') {
                        args.push(self.expr()?);
                    }
                    self.expect(')')?;
                    match (name.as_str(), args.as_slice()) {
                        ("min", [_, ..]) => Ok(*args.iter().min().unwrap()),
                        ("max", [_, ..]) => Ok(*args.iter().max().unwrap()),
                        ("floor", [x]) => Ok(*x),
                        _ => Err(self.err(&format!("unknown function `{name}`"))),
                    }
                } else {
                    self.params.get(&name).copied().ok_or_else(|| self.err(&format!("unknown parameter `{name}`")))
                }
            }
            _ => Err(self.err("expected a value")),
        }
    }

    fn constraint(&mut self) -> Result<bool> {
        let mut left = self.expr()?;
        let mut ok = true;
        let mut any = false;
        while let Some(Tok::Cmp(op)) = self.peek().cloned() {
            self.pos += 1;
            any = true;
            let right = self.expr()?;
            ok &= match op {
                "<=" => left <= right,
                ">=" => left >= right,
                "<" => left < right,
                ">" => left > right,
                "==" => left == right,
                "!=" => left != right,
                _ => unreachable!(),
            };
            left = right;
        }
        if !any {
            return Err(self.err("constraint has no comparison"));
        }
        Ok(ok)
    }

    fn algebra_sum(&mut self) -> Result<Vec<Component>> {
        let mut out = vec![self.component()?];
        while self.eat('+') {
            out.push(self.component()?);
        }
        Ok(out)
    }

    fn component(&mut self) -> Result<Component> {
        let Some(Tok::Ident(name)) = self.peek().cloned() else {
            return Err(self.err("expected an algebra name"));
        };
        self.pos += 1;
        let mut name = name;
        if self.peek() == Some(&Tok::Op('*')) && self.peek_at(1) == Some(&Tok::Op('(')) {
            self.pos += 1;
            name.push('*');
        }
        if !self.eat('(') {
            return Ok(Component { name, args: Vec::new(), inner: Vec::new() });
        }
        if name == "s" {
            let inner = self.algebra_sum()?;
            self.expect(')')?;
            return Ok(Component { name, args: Vec::new(), inner });
        }
        let mut args = vec![self.arg()?];
        while self.eat(',') {
            args.push(self.arg()?);
        }
        self.expect(')')?;
        Ok(Component { name, args, inner: Vec::new() })
    }

    fn arg(&mut self) -> Result<Arg> {
        if let Some(Tok::Ident(f)) = self.peek() {
            let closes = matches!(self.peek_at(1), Some(Tok::Op(',')) | Some(Tok::Op(')')));
            if closes && (f == "R" || f == "C") {
                let a = if f == "R" { Arg::Real } else { Arg::Complex };
                self.pos += 1;
                return Ok(a);
            }
        }
        Ok(Arg::Int(self.expr()?))
    }
}

/// A parsed algebra component with evaluated integer arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub name: String,
    pub args: Vec<Arg>,
    /// Summands of an `s(...)` wrapper.
    pub inner: Vec<Component>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Arg {
    Int(i64),
    Real,
    Complex,
}

impl Component {
    /// Integer arguments, failing on field markers.
    pub fn ints(&self) -> Option<Vec<i64>> {
        self.args
            .iter()
            .map(|a| match a {
                Arg::Int(v) => Some(*v),
                _ => None,
            })
            .collect()
    }

    /// The field marker in the last argument position, if any.
    pub fn field(&self) -> Option<Arg> {
        match self.args.last() {
            Some(a @ (Arg::Real | Arg::Complex)) => Some(*a),
            _ => None,
        }
    }
}

pub fn eval_int(src: &str, params: &Params) -> Result<i64> {
    let mut p = Parser::new(src, params)?;
    let v = p.expr()?;
    p.done()?;
    Ok(v)
}

pub fn eval_constraint(src: &str, params: &Params) -> Result<bool> {
    let mut p = Parser::new(src, params)?;
    let v = p.constraint()?;
    p.done()?;
    Ok(v)
}

/// Parses an algebra expression into its components with arguments
/// evaluated at `params`.
pub fn parse_algebra(src: &str, params: &Params) -> Result<Vec<Component>> {
    let mut p = Parser::new(src, params)?;
    let v = p.algebra_sum()?;
    p.done()?;
    Ok(v)
}

/// Names referenced by an expression (excluding function names and the
/// field markers `R`, `C`), in order of first appearance.
pub fn referenced_names(src: &str) -> Result<Vec<String>> {
    let toks = tokenize(src)?;
    let mut out: Vec<String> = Vec::new();
    for (k, t) in toks.iter().enumerate() {
        if let Tok::Ident(n) = t {
            let is_call = toks.get(k + 1) == Some(&Tok::Op('('))
                || (toks.get(k + 1) == Some(&Tok::Op('*')) && toks.get(k + 2) == Some(&Tok::Op('(')));
            if !is_call && n != "R" && n != "C" && !out.contains(n) {
                out.push(n.clone());
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(kv: &[(&str, i64)]) -> Params {
        kv.iter().map(|(k, v)| (k.to_string(), *v)).collect()
    }

    #[test]
    fn integer_formulas() {
        let p = params(&[("p", 3), ("q", 2), ("i", 1), ("j", 1), ("n", 5)]);
        assert_eq!(eval_int("min(i,q-j)+min(p-i,j)", &p).unwrap(), 2);
        assert_eq!(eval_int("floor(n/2)", &p).unwrap(), 2);
        assert_eq!(eval_int("2n - 1", &p).unwrap(), 9);
        assert_eq!(eval_int("-(p - q) * 2", &p).unwrap(), -2);
        assert!(eval_int("m + 1", &p).is_err());
    }

    #[test]
    fn constraint_chains() {
        let p = params(&[("p", 3), ("i", 1), ("n", 2)]);
        assert!(eval_constraint("0 <= i <= p", &p).unwrap());
        assert!(!eval_constraint("1 <= i + p <= 3", &p).unwrap());
        assert!(!eval_constraint("n != 2", &p).unwrap());
        assert!(eval_constraint("n", &p).is_err());
    }

    #[test]
    fn algebra_expressions() {
        let p = params(&[("p", 2), ("q", 1), ("i", 1), ("j", 0), ("n", 3)]);
        let c = parse_algebra("s(u(i,j)+u(p-i,q-j))", &p).unwrap();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0].inner.len(), 2);
        assert_eq!(c[0].inner[1].ints().unwrap(), vec![1, 1]);
        let c = parse_algebra("so*(2p)+so*(2n-2p)", &p).unwrap();
        assert_eq!(c[0].name, "so*");
        assert_eq!(c[1].ints().unwrap(), vec![2]);
        let c = parse_algebra("sl(n,C)+R", &p).unwrap();
        assert_eq!(c[0].field(), Some(Arg::Complex));
        assert_eq!(c[1].name, "R");
        let c = parse_algebra("e6(-14)+so(2)", &p).unwrap();
        assert_eq!(c[0].ints().unwrap(), vec![-14]);
        assert_eq!(referenced_names("min(i,q-j)+2n").unwrap(), vec!["i", "q", "j", "n"]);
    }
}
