//! Tokens and expressions of the command language.
//!
//! ```text
//! expr  ::= app { OP app }            OP: THENC ORELSEC THENFC ORELSEFC THEN ORELSE
//! app   ::= atom { atom }             application, left-associative
//! atom  ::= NAME | "quotation" | 'token' | ( ) | ( expr {, expr} ) | [ [expr {; expr}] ]
//! ```

use crate::error::{Error, Result};

/// Operators written between operands. An operator name may still open an
/// expression in prefix form, as in `thenc(a, b)`.
pub const INFIX_OPS: &[&str] = &[
    "THENC", "ORELSEC", "THENFC", "ORELSEFC", "THEN", "ORELSE", "thenc", "orelsec", "thenfc", "orelsefc", "then",
    "orelse",
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Name(String),
    Quote(String),
    Token(String),
    Punct(char),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Name(n) => n.clone(),
            Tok::Quote(q) => format!("\"{q}\""),
            Tok::Token(t) => format!("'{t}'"),
            Tok::Punct(c) => c.to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Expr {
    Name(String),
    Quote(String),
    Token(String),
    App(Box<Expr>, Box<Expr>),
    Tuple(Vec<Expr>),
    List(Vec<Expr>),
    Infix(String, Box<Expr>, Box<Expr>),
}

fn parse_error(column: usize, expected: &[&str], found: &str) -> Error {
    Error::Parse {
        line: 1,
        column,
        expected: expected.iter().map(|s| s.to_string()).collect(),
        found: found.to_string(),
    }
}

pub fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

/// Splits a command into tokens with their 1-based start and end columns
/// (end is one past the last character).
pub fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
        } else if c == '"' || c == '\'' {
            let end = chars[i + 1..]
                .iter()
                .position(|&d| d == c)
                .ok_or_else(|| parse_error(col, &[&c.to_string()], "end of input"))?;
            let body: String = chars[i + 1..i + 1 + end].iter().collect();
            out.push((if c == '"' { Tok::Quote(body) } else { Tok::Token(body) }, col, col + end + 2));
            i += end + 2;
        } else if is_name_char(c) {
            let start = i;
            while i < chars.len() && is_name_char(chars[i]) {
                i += 1;
            }
            out.push((Tok::Name(chars[start..i].iter().collect()), col, i + 1));
        } else if "()[],;=:".contains(c) {
            out.push((Tok::Punct(c), col, col + 1));
            i += 1;
        } else {
            return Err(parse_error(col, &["expression"], &c.to_string()));
        }
    }
    Ok(out)
}

pub struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    pos: usize,
    end_col: usize,
}

impl Parser {
    pub fn new(text: &str) -> Result<Parser> {
        Ok(Parser { toks: lex(text)?, pos: 0, end_col: text.chars().count() + 1 })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _, _)| t)
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map(|(_, c, _)| *c).unwrap_or(self.end_col)
    }

    fn fail<T>(&self, expected: &[&str]) -> Result<T> {
        let found = self.peek().map(Tok::describe).unwrap_or_else(|| "end of input".into());
        Err(parse_error(self.column(), expected, &found))
    }

    pub fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    pub fn expect_end(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.fail(&["end of input"])
        }
    }

    pub fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            self.fail(&[&c.to_string()])
        }
    }

    pub fn name(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Name(n)) => {
                let n = n.clone();
                self.pos += 1;
                Ok(n)
            }
            _ => self.fail(&["name"]),
        }
    }

    /// Names, or a bracketed `[n1; n2]` pattern, for `let`.
    pub fn binder(&mut self) -> Result<Vec<String>> {
        if self.eat('[') {
            let mut names = vec![self.name()?];
            while self.eat(';') {
                names.push(self.name()?);
            }
            self.expect(']')?;
            Ok(names)
        } else {
            Ok(vec![self.name()?])
        }
    }

    pub fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.app()?;
        while let Some(Tok::Name(n)) = self.peek() {
            if !INFIX_OPS.contains(&n.as_str()) {
                break;
            }
            let op = n.clone();
            self.pos += 1;
            let rhs = self.app()?;
            lhs = Expr::Infix(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn starts_atom(&self) -> bool {
        match self.peek() {
            Some(Tok::Name(n)) => !INFIX_OPS.contains(&n.as_str()),
            Some(Tok::Quote(_)) | Some(Tok::Token(_)) => true,
            Some(Tok::Punct(c)) => *c == '(' || *c == '[',
            None => false,
        }
    }

    fn app(&mut self) -> Result<Expr> {
        let mut e = self.tight()?;
        while self.starts_atom() {
            let arg = self.tight()?;
            e = Expr::App(Box::new(e), Box::new(arg));
        }
        Ok(e)
    }

    /// `f(x)` and `f[x]` with no space between bind tighter than
    /// juxtaposition.
    fn tight(&mut self) -> Result<Expr> {
        let mut e = self.atom()?;
        loop {
            let prev_end = self.toks[self.pos - 1].2;
            match self.toks.get(self.pos) {
                Some((Tok::Punct('(' | '['), start, _)) if *start == prev_end => {
                    let arg = self.atom()?;
                    e = Expr::App(Box::new(e), Box::new(arg));
                }
                _ => return Ok(e),
            }
        }
    }

    pub fn atom(&mut self) -> Result<Expr> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.fail(&["expression"]),
        };
        match tok {
            Tok::Name(n) => {
                self.pos += 1;
                Ok(Expr::Name(n))
            }
            Tok::Quote(q) => {
                self.pos += 1;
                Ok(Expr::Quote(q))
            }
            Tok::Token(t) => {
                self.pos += 1;
                Ok(Expr::Token(t))
            }
            Tok::Punct('(') => {
                self.pos += 1;
                if self.eat(')') {
                    return Ok(Expr::Tuple(Vec::new()));
                }
                let mut items = vec![self.expr()?];
                while self.eat(',') {
                    items.push(self.expr()?);
                }
                self.expect(')')?;
                Ok(if items.len() == 1 { items.remove(0) } else { Expr::Tuple(items) })
            }
            Tok::Punct('[') => {
                self.pos += 1;
                let mut items = Vec::new();
                if !self.eat(']') {
                    items.push(self.expr()?);
                    while self.eat(';') {
                        items.push(self.expr()?);
                    }
                    self.expect(']')?;
                }
                Ok(Expr::List(items))
            }
            _ => self.fail(&["expression"]),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn show(e: &Expr) -> String {
        match e {
            Expr::Name(n) => n.clone(),
            Expr::Quote(q) => format!("\"{q}\""),
            Expr::Token(t) => format!("'{t}'"),
            Expr::App(f, x) => format!("({} {})", show(f), show(x)),
            Expr::Tuple(xs) => format!("<{}>", xs.iter().map(show).collect::<Vec<_>>().join(",")),
            Expr::List(xs) => format!("[{}]", xs.iter().map(show).collect::<Vec<_>>().join(";")),
            Expr::Infix(op, l, r) => format!("{{{} {op} {}}}", show(l), show(r)),
        }
    }

    fn parse(s: &str) -> String {
        let mut p = Parser::new(s).unwrap();
        let e = p.expr().unwrap();
        p.expect_end().unwrap();
        show(&e)
    }

    #[test]
    fn grammar() {
        assert_eq!(parse("REWRITE_CONV COND_TT ORELSEC REWRITE_CONV COND_FF"),
            "{(REWRITE_CONV COND_TT) ORELSEC (REWRITE_CONV COND_FF)}");
        assert_eq!(parse("thenc(beta, rw FST_PAIR)"), "(thenc <beta,(rw FST_PAIR)>)");
        assert_eq!(parse("first[rw A; beta]"), "(first [(rw A);beta])");
        assert_eq!(parse("conv repeatc(beta) \"(\\x.x)y\""), "((conv (repeatc beta)) \"(\\x.x)y\")");
        assert_eq!(parse("theorem 'VARS_OF' 'VARS_OF_TOTAL'"), "((theorem 'VARS_OF') 'VARS_OF_TOTAL')");
        assert_eq!(parse("[]"), "[]");
        assert_eq!(parse("first[rw A; beta] orelsec beta"), "{(first [(rw A);beta]) orelsec beta}");
        assert_eq!(parse("orelsec(a, b) thenc c"), "{(orelsec <a,b>) thenc c}");
    }

    #[test]
    fn errors_carry_columns() {
        let e = Parser::new("thenc(beta").unwrap().expr().unwrap_err();
        assert!(matches!(e, Error::Parse { column: 11, .. }), "{e:?}");
        let e = lex("f \"abc").unwrap_err();
        assert!(matches!(e, Error::Parse { column: 3, .. }), "{e:?}");
    }
}
