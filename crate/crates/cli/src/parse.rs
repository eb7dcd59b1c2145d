//! Tokenizer and recursive-descent parser for element expressions.
//!
//! ```text
//! expr    := ['+'|'-'] term (('+'|'-') term)*
//! term    := product [tensor product]
//! product := factor (['*'] factor)*
//! factor  := primary ('*' | '^' ['-'] int)*
//! primary := int | ident | '(' expr ')'
//! ```
//!
//! A `*` glued to the start of the next factor (`2*p`) multiplies; any other
//! `*` is the postfix adjoint, so `a*^2` is `(a*)^2` and `a* b` is `a*·b`.
//! The tensor sign is `⊗` or `(x)`.

use num_bigint::BigInt;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Int(BigInt),
    /// An identifier as written, with its byte offset.
    Atom { name: String, pos: usize },
    /// Signed summands; `true` marks a subtracted term.
    Sum(Vec<(bool, Expr)>),
    Product(Vec<Expr>),
    Pow(Box<Expr>, i64),
    Star(Box<Expr>),
    Tensor(Box<Expr>, Box<Expr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    /// `*` immediately followed by a factor.
    Times,
    /// Any other `*`.
    Adjoint,
    Caret,
    LParen,
    RParen,
    Tensor,
}

fn syntax(pos: usize, msg: impl Into<String>) -> CliError {
    CliError::Syntax { pos, msg: msg.into() }
}

fn starts_factor(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '('
}

fn lex(src: &str, tensor_word: bool) -> Result<Vec<(Tok, usize)>, CliError> {
    let mut out = Vec::new();
    let mut it = src.char_indices().peekable();
    while let Some(&(pos, c)) = it.peek() {
        if c.is_whitespace() {
            it.next();
            continue;
        }
        if tensor_word && src[pos..].starts_with("(x)") {
            out.push((Tok::Tensor, pos));
            for _ in 0..3 {
                it.next();
            }
            continue;
        }
        it.next();
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '^' => Tok::Caret,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            '⊗' => Tok::Tensor,
            '*' => match it.peek() {
                Some(&(_, n)) if starts_factor(n) => Tok::Times,
                _ => Tok::Adjoint,
            },
            d if d.is_ascii_digit() => {
                let mut end = pos + 1;
                while let Some(&(i, n)) = it.peek() {
                    if !n.is_ascii_digit() {
                        break;
                    }
                    end = i + 1;
                    it.next();
                }
                Tok::Int(src[pos..end].parse().expect("digits"))
            }
            l if l.is_ascii_alphabetic() => {
                let mut end = pos + 1;
                while let Some(&(i, n)) = it.peek() {
                    if !(n.is_ascii_alphanumeric() || n == '_') {
                        break;
                    }
                    end = i + 1;
                    it.next();
                }
                if let Some(&(i, '\'')) = it.peek() {
                    end = i + 1;
                    it.next();
                }
                Tok::Ident(src[pos..end].to_string())
            }
            other => return Err(syntax(pos, format!("unexpected character `{other}`"))),
        };
        out.push((tok, pos));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) {
        self.at += 1;
    }

    fn expr(&mut self) -> Result<Expr, CliError> {
        let mut terms = Vec::new();
        let mut neg = match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                true
            }
            Some(Tok::Plus) => {
                self.bump();
                false
            }
            _ => false,
        };
        loop {
            terms.push((neg, self.term()?));
            neg = match self.peek() {
                Some(Tok::Plus) => false,
                Some(Tok::Minus) => true,
                _ => break,
            };
            self.bump();
        }
        if terms.len() == 1 && !terms[0].0 {
            return Ok(terms.pop().unwrap().1);
        }
        Ok(Expr::Sum(terms))
    }

    fn term(&mut self) -> Result<Expr, CliError> {
        let left = self.product()?;
        if self.peek() == Some(&Tok::Tensor) {
            self.bump();
            let right = self.product()?;
            if self.peek() == Some(&Tok::Tensor) {
                return Err(syntax(self.pos(), "at most one tensor sign per term"));
            }
            return Ok(Expr::Tensor(Box::new(left), Box::new(right)));
        }
        Ok(left)
    }

    fn product(&mut self) -> Result<Expr, CliError> {
        let mut factors = vec![self.factor()?];
        loop {
            match self.peek() {
                Some(Tok::Times) => {
                    self.bump();
                    factors.push(self.factor()?);
                }
                Some(Tok::Int(_) | Tok::Ident(_) | Tok::LParen) => factors.push(self.factor()?),
                _ => break,
            }
        }
        Ok(if factors.len() == 1 { factors.pop().unwrap() } else { Expr::Product(factors) })
    }

    fn factor(&mut self) -> Result<Expr, CliError> {
        let mut e = self.primary()?;
        loop {
            match self.peek() {
                Some(Tok::Adjoint) => {
                    self.bump();
                    e = Expr::Star(Box::new(e));
                }
                Some(Tok::Caret) => {
                    self.bump();
                    e = Expr::Pow(Box::new(e), self.exponent()?);
                }
                _ => return Ok(e),
            }
        }
    }

    fn exponent(&mut self) -> Result<i64, CliError> {
        let neg = self.peek() == Some(&Tok::Minus);
        if neg {
            self.bump();
        }
        let pos = self.pos();
        match self.peek() {
            Some(Tok::Int(n)) => {
                let n = i64::try_from(n).map_err(|_| syntax(pos, "exponent out of range"))?;
                self.bump();
                Ok(if neg { -n } else { n })
            }
            _ => Err(syntax(pos, "expected an integer exponent")),
        }
    }

    fn primary(&mut self) -> Result<Expr, CliError> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.bump();
                Ok(Expr::Int(n))
            }
            Some(Tok::Ident(name)) => {
                self.bump();
                Ok(Expr::Atom { name, pos })
            }
            Some(Tok::LParen) => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(syntax(self.pos(), "expected `)`"));
                }
                self.bump();
                Ok(e)
            }
            Some(_) => Err(syntax(pos, "expected a factor")),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses `src` without checking atoms against a dialect. With
/// `tensor_word`, `(x)` is read as a tensor sign rather than a group.
pub fn parse_expr(src: &str, tensor_word: bool) -> Result<Expr, CliError> {
    let mut p = Parser { toks: lex(src, tensor_word)?, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(syntax(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(name: &str, pos: usize) -> Expr {
        Expr::Atom { name: name.into(), pos }
    }

    #[test]
    fn grammar_examples() {
        let e = parse_expr("a b* + p^-1 A", false).unwrap();
        let want = Expr::Sum(vec![
            (false, Expr::Product(vec![atom("a", 0), Expr::Star(Box::new(atom("b", 2)))])),
            (false, Expr::Product(vec![Expr::Pow(Box::new(atom("p", 7)), -1), atom("A", 12)])),
        ]);
        assert_eq!(e, want);
        let e = parse_expr("z'^2 at'", false).unwrap();
        assert_eq!(e, Expr::Product(vec![Expr::Pow(Box::new(atom("z'", 0)), 2), atom("at'", 5)]));
    }

    #[test]
    fn star_binds_tighter_than_power() {
        assert_eq!(parse_expr("a*^2", false).unwrap(), Expr::Pow(Box::new(Expr::Star(Box::new(atom("a", 0)))), 2));
        assert_eq!(parse_expr("2*p", false).unwrap(), Expr::Product(vec![Expr::Int(2.into()), atom("p", 2)]));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_expr("c ^", false), Err(CliError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_expr("(a", false), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("a $", false), Err(CliError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_expr("", false), Err(CliError::Syntax { pos: 0, .. })));
    }

    #[test]
    fn tensor_spellings() {
        let a = parse_expr("A ⊗ ut", true).unwrap();
        let b = parse_expr("A (x) ut", true).unwrap();
        assert!(matches!(a, Expr::Tensor(..)));
        assert!(matches!(b, Expr::Tensor(..)));
    }
}
