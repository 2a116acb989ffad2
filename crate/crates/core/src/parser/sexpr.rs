//! Tokenizer and s-expression reader. Everything is lowercased here.

use super::ParseError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SExpr {
    Symbol(String, Pos),
    List(Vec<SExpr>, Pos),
}

impl SExpr {
    pub fn pos(&self) -> Pos {
        match self {
            SExpr::Symbol(_, p) | SExpr::List(_, p) => *p,
        }
    }

    pub fn symbol(&self) -> Option<&str> {
        match self {
            SExpr::Symbol(s, _) => Some(s),
            SExpr::List(..) => None,
        }
    }

    pub fn list(&self) -> Option<&[SExpr]> {
        match self {
            SExpr::List(items, _) => Some(items),
            SExpr::Symbol(..) => None,
        }
    }

    /// Head symbol of a non-empty list.
    pub fn head(&self) -> Option<&str> {
        self.list().and_then(|l| l.first()).and_then(SExpr::symbol)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Sym(String),
}

fn tokenize(text: &str) -> Vec<(Tok, Pos)> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        match c {
            '\n' => {
                chars.next();
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                chars.next();
                col += 1;
            }
            ';' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    col += 1;
                }
            }
            '(' => {
                chars.next();
                col += 1;
                out.push((Tok::Open, pos));
            }
            ')' => {
                chars.next();
                col += 1;
                out.push((Tok::Close, pos));
            }
            _ => {
                let mut sym = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || c == '(' || c == ')' || c == ';' {
                        break;
                    }
                    sym.push(c.to_ascii_lowercase());
                    chars.next();
                    col += 1;
                }
                out.push((Tok::Sym(sym), pos));
            }
        }
    }
    out
}

/// Reads exactly one top-level expression.
pub fn read_one(text: &str) -> Result<SExpr, ParseError> {
    let toks = tokenize(text);
    let mut iter = toks.into_iter().peekable();
    let Some(first) = iter.next() else {
        return Err(ParseError::syntax(Pos { line: 1, col: 1 }, "empty input"));
    };
    let expr = read_from(first, &mut iter)?;
    if let Some((_, pos)) = iter.next() {
        return Err(ParseError::syntax(pos, "unexpected text after the top-level expression"));
    }
    Ok(expr)
}

/// Reads a sequence of top-level expressions, as in a plan file.
pub fn read_all(text: &str) -> Result<Vec<SExpr>, ParseError> {
    let mut iter = tokenize(text).into_iter().peekable();
    let mut out = Vec::new();
    while let Some(tok) = iter.next() {
        out.push(read_from(tok, &mut iter)?);
    }
    Ok(out)
}

fn read_from<I>(first: (Tok, Pos), iter: &mut std::iter::Peekable<I>) -> Result<SExpr, ParseError>
where
    I: Iterator<Item = (Tok, Pos)>,
{
    let (tok, pos) = first;
    match tok {
        Tok::Sym(s) => Ok(SExpr::Symbol(s, pos)),
        Tok::Close => Err(ParseError::syntax(pos, "unbalanced `)`")),
        Tok::Open => {
            let mut items = Vec::new();
            loop {
                match iter.next() {
                    None => return Err(ParseError::syntax(pos, "unclosed `(`")),
                    Some((Tok::Close, _)) => return Ok(SExpr::List(items, pos)),
                    Some(t) => items.push(read_from(t, iter)?),
                }
            }
        }
    }
}
