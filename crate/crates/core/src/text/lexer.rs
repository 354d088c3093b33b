use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(usize),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Slash,
    Eq,
    Le,
    Neq,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Iff,
    Xor,
    Plus,
    Minus,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Nat(n) => format!("`{n}`"),
            Tok::Eof => "end of input".into(),
            other => format!("`{}`", other.symbol()),
        }
    }

    fn symbol(&self) -> &'static str {
        match self {
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::Colon => ":",
            Tok::Slash => "/",
            Tok::Eq => "=",
            Tok::Le => "<=",
            Tok::Neq => "!=",
            Tok::Bang => "!",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::Arrow => "->",
            Tok::Iff => "<->",
            Tok::Xor => "(+)",
            Tok::Plus => "+",
            Tok::Minus => "-",
            _ => "",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
    /// Length in characters.
    pub len: usize,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0usize, 1usize, 1usize);
    while i < chars.len() {
        let c = chars[i];
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let start_col = col;
        let rest = &chars[i..];
        let starts = |s: &str| s.chars().enumerate().all(|(k, ch)| rest.get(k) == Some(&ch));
        let (tok, len) = if starts("<->") {
            (Tok::Iff, 3)
        } else if starts("(+)") {
            (Tok::Xor, 3)
        } else if starts("<=") {
            (Tok::Le, 2)
        } else if starts("->") {
            (Tok::Arrow, 2)
        } else if starts("!=") {
            (Tok::Neq, 2)
        } else if c.is_ascii_digit() {
            let mut j = i;
            while j < chars.len() && chars[j].is_ascii_digit() {
                j += 1;
            }
            let text: String = chars[i..j].iter().collect();
            let value = text
                .parse::<usize>()
                .map_err(|_| Error::parse(line, start_col, format!("number `{text}` too large")))?;
            (Tok::Nat(value), j - i)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_' || chars[j] == '\'') {
                j += 1;
            }
            (Tok::Ident(chars[i..j].iter().collect()), j - i)
        } else {
            let tok = match c {
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '/' => Tok::Slash,
                '=' => Tok::Eq,
                '!' => Tok::Bang,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                other => return Err(Error::parse(line, col, format!("unexpected character `{other}`"))),
            };
            (tok, 1)
        };
        out.push(Token { tok, line, col: start_col, len });
        i += len;
        col += len;
    }
    out.push(Token { tok: Tok::Eof, line, col, len: 0 });
    Ok(out)
}

/// Cursor over a token vector with error helpers.
#[derive(Debug, Clone)]
pub struct Cursor {
    tokens: Vec<Token>,
    pos: usize,
}

impl Cursor {
    pub fn new(src: &str) -> Result<Self> {
        Ok(Cursor { tokens: tokenize(src)?, pos: 0 })
    }

    pub fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    pub fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    pub fn here(&self) -> &Token {
        &self.tokens[self.pos]
    }

    pub fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].tok.clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    pub fn at_eof(&self) -> bool {
        matches!(self.peek(), Tok::Eof)
    }

    pub fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn eat_keyword(&mut self, kw: &str) -> bool {
        if matches!(self.peek(), Tok::Ident(s) if s == kw) {
            self.bump();
            true
        } else {
            false
        }
    }

    pub fn error(&self, msg: impl Into<String>) -> Error {
        let t = self.here();
        Error::parse(t.line, t.col, msg)
    }

    pub fn unexpected(&self, wanted: &str) -> Error {
        self.error(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    pub fn expect(&mut self, tok: &Tok) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            Err(self.unexpected(&tok.describe()))
        }
    }

    pub fn expect_keyword(&mut self, kw: &str) -> Result<()> {
        if self.eat_keyword(kw) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{kw}`")))
        }
    }

    pub fn ident(&mut self) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected("identifier")),
        }
    }

    /// A name made of identifiers and numbers joined by `-`, `_` or `:` with
    /// no whitespace in between, such as `pad-2cc:7`. A `:` is only taken when
    /// a number follows it directly, so `A:sigma_g` still splits.
    pub fn word(&mut self) -> Result<String> {
        let piece = |t: &Tok| match t {
            Tok::Ident(s) => Some(s.clone()),
            Tok::Nat(n) => Some(n.to_string()),
            _ => None,
        };
        let Some(mut out) = piece(self.peek()) else { return Err(self.unexpected("name")) };
        let mut last = self.here().clone();
        self.bump();
        loop {
            let next = self.here().clone();
            let touching = |a: &Token, b: &Token| a.line == b.line && a.col + a.len == b.col;
            if !touching(&last, &next) {
                break;
            }
            if let Some(p) = piece(&next.tok) {
                out.push_str(&p);
            } else if matches!(next.tok, Tok::Minus | Tok::Colon) {
                let after = &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)];
                let joins = match next.tok {
                    Tok::Colon => matches!(after.tok, Tok::Nat(_)),
                    _ => piece(&after.tok).is_some(),
                };
                if !touching(&next, after) || !joins {
                    break;
                }
                out.push_str(if next.tok == Tok::Minus { "-" } else { ":" });
            } else {
                break;
            }
            self.bump();
            last = next;
        }
        Ok(out)
    }

    pub fn nat(&mut self) -> Result<usize> {
        match *self.peek() {
            Tok::Nat(n) => {
                self.bump();
                Ok(n)
            }
            _ => Err(self.unexpected("number")),
        }
    }
}
