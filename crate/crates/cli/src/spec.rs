//! Text forms of test functions and h-functions.
//!
//! ```text
//! f=[<scale>*]<family>[:<params>]@[<a>,<b>]
//!     power:<beta> | quadratic:<c2>,<c1>,<c0> | exp | abspow:<r>[,<c>]
//!     | pwl:<x>/<y>,<x>/<y>,... | const:<c>
//! h=<kind>[:<param>]
//!     id | const[:<c>] | pow:<s> | recip | sq
//! ```

use std::fmt;

use fracineq::fracint::Interval;
use fracineq::hfam::{FunctionSpec, HFunction};
use fracineq::{FunctionSpec64, HFunction64};

/// Parse failure with the byte offset where it was detected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: {}", self.pos, self.msg)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone)]
pub enum Spec {
    Function(FunctionSpec64),
    H(HFunction64),
}

struct Cursor<'a> {
    text: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn rest(&self) -> &'a str {
        &self.text[self.pos..]
    }

    fn err<T>(&self, pos: usize, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos, msg: msg.into() })
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, s: &str) -> Result<(), ParseError> {
        if self.eat(s) {
            Ok(())
        } else {
            self.err(self.pos, format!("expected '{s}'"))
        }
    }

    fn word(&mut self) -> &'a str {
        let start = self.pos;
        let len = self.rest().bytes().take_while(|b| b.is_ascii_alphabetic()).count();
        self.pos += len;
        &self.text[start..start + len]
    }

    fn number(&mut self) -> Result<f64, ParseError> {
        let start = self.pos;
        let len = self
            .rest()
            .bytes()
            .take_while(|b| b.is_ascii_digit() || matches!(b, b'+' | b'-' | b'.' | b'e' | b'E'))
            .count();
        let tok = &self.text[start..start + len];
        match tok.parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += len;
                Ok(v)
            }
            _ if tok.is_empty() => self.err(start, "expected a number"),
            _ => self.err(start, format!("malformed number '{tok}'")),
        }
    }

    fn numbers(&mut self, sep: &str, count: usize) -> Result<Vec<f64>, ParseError> {
        let mut v = vec![self.number()?];
        while v.len() < count {
            self.expect(sep)?;
            v.push(self.number()?);
        }
        Ok(v)
    }

    fn end(&self) -> Result<(), ParseError> {
        if self.rest().is_empty() {
            Ok(())
        } else {
            self.err(self.pos, format!("unexpected trailing text '{}'", self.rest()))
        }
    }
}

/// Parses either form; the `f=` or `h=` prefix selects which.
pub fn parse_spec(text: &str) -> Result<Spec, ParseError> {
    let text = text.trim();
    if text.starts_with("f=") {
        parse_function(text).map(Spec::Function)
    } else if text.starts_with("h=") {
        parse_h(text).map(Spec::H)
    } else {
        Err(ParseError { pos: 0, msg: "expected 'f=' or 'h='".into() })
    }
}

/// Parses a function; the `f=` prefix is optional.
pub fn parse_function(text: &str) -> Result<FunctionSpec64, ParseError> {
    let mut c = Cursor { text: text.trim(), pos: 0 };
    c.eat("f=");
    let scale_start = c.pos;
    let scale = if c.rest().starts_with(|ch: char| ch.is_ascii_digit() || ch == '-' || ch == '.') {
        let s = c.number()?;
        c.expect("*")?;
        Some(s)
    } else {
        None
    };
    let fam_pos = c.pos;
    let family = c.word();
    let param_pos = c.pos + 1;
    let params: Vec<f64> = match family {
        "power" | "const" => {
            c.expect(":")?;
            c.numbers(",", 1)?
        }
        "quadratic" => {
            c.expect(":")?;
            c.numbers(",", 3)?
        }
        "exp" => Vec::new(),
        "abspow" => {
            c.expect(":")?;
            let mut v = vec![c.number()?];
            v.push(if c.eat(",") { c.number()? } else { 0.0 });
            v
        }
        "pwl" => {
            c.expect(":")?;
            let mut v = c.numbers("/", 2)?;
            while c.eat(",") {
                v.extend(c.numbers("/", 2)?);
            }
            v
        }
        "" => return c.err(fam_pos, "expected a function family"),
        other => {
            return c.err(fam_pos, format!("unknown family '{other}' (power, quadratic, exp, abspow, pwl, const)"))
        }
    };
    if c.rest().starts_with(':') {
        return c.err(c.pos, format!("family '{family}' takes no parameters"));
    }
    c.expect("@")?;
    let iv_pos = c.pos;
    c.expect("[")?;
    let a = c.number()?;
    c.expect(",")?;
    let b = c.number()?;
    c.expect("]")?;
    c.end()?;
    let domain = Interval::new(a, b).or_else(|_| c.err(iv_pos, format!("empty interval [{a}, {b}]")))?;
    let built = match family {
        "power" => FunctionSpec::power(params[0], domain),
        "const" => FunctionSpec::constant(params[0], domain),
        "quadratic" => FunctionSpec::quadratic(params[0], params[1], params[2], domain),
        "exp" => FunctionSpec::exp(domain),
        "abspow" => FunctionSpec::abs_power(params[0], params[1], domain),
        _ => FunctionSpec::piecewise_linear(params.chunks(2).map(|p| (p[0], p[1])).collect(), domain),
    };
    let f = built.or_else(|e| c.err(param_pos.min(c.text.len()), e.to_string()))?;
    match scale {
        Some(s) if !(s > 0.0) => c.err(scale_start, format!("scale must be positive, got {s}")),
        Some(s) => Ok(f.scaled(s)),
        None => Ok(f),
    }
}

/// Parses an h-function; the `h=` prefix is optional.
pub fn parse_h(text: &str) -> Result<HFunction64, ParseError> {
    let mut c = Cursor { text: text.trim(), pos: 0 };
    c.eat("h=");
    let kind_pos = c.pos;
    let kind = c.word();
    let param = if c.eat(":") { Some((c.pos, c.number()?)) } else { None };
    c.end()?;
    let no_param = |c: &Cursor, h: HFunction64| match param {
        Some((pos, _)) => c.err(pos, format!("'{kind}' takes no parameter")),
        None => Ok(h),
    };
    match kind {
        "id" | "identity" => no_param(&c, HFunction::identity()),
        "recip" | "reciprocal" => no_param(&c, HFunction::reciprocal()),
        "sq" | "square" => no_param(&c, HFunction::square()),
        "const" => {
            let (pos, v) = param.unwrap_or((c.pos, 1.0));
            HFunction::constant(v).or_else(|e| c.err(pos, e.to_string()))
        }
        "pow" | "power" => match param {
            Some((pos, s)) => HFunction::power(s).or_else(|e| c.err(pos, e.to_string())),
            None => c.err(c.pos, "pow needs an exponent, e.g. pow:0.5"),
        },
        "" => c.err(kind_pos, "expected an h kind"),
        other => c.err(kind_pos, format!("unknown h kind '{other}' (id, const, pow, recip, sq)")),
    }
}
