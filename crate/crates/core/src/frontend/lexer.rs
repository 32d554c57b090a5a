use num_bigint::BigInt;

use super::ModelError;
use crate::superalgebra::Coefficient;

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) enum Tok {
    Ident(String),
    Number(Coefficient),
    /// `d/dNAME`
    Deriv(String),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Comma,
    Colon,
    Arrow,
    Eq,
    Plus,
    Minus,
    Star,
    Caret,
    /// Newline or `;`.
    End,
    Eof,
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(q) => format!("number `{q}`"),
            Tok::Deriv(s) => format!("`d/d{s}`"),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Colon => "`:`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Eq => "`=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Minus => "`-`".into(),
            Tok::Star => "`*`".into(),
            Tok::Caret => "`^`".into(),
            Tok::End => "end of line".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug)]
pub(crate) struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub(crate) fn lex(text: &str) -> Result<Vec<Token>, ModelError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        macro_rules! push {
            ($tok:expr, $len:expr) => {{
                let len = $len;
                out.push(Token { tok: $tok, pos });
                i += len;
                col += len;
            }};
        }
        match c {
            '\n' => {
                out.push(Token { tok: Tok::End, pos });
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            ';' => push!(Tok::End, 1),
            '{' => push!(Tok::LBrace, 1),
            '}' => push!(Tok::RBrace, 1),
            '[' => push!(Tok::LBracket, 1),
            ']' => push!(Tok::RBracket, 1),
            '(' => push!(Tok::LParen, 1),
            ')' => push!(Tok::RParen, 1),
            ',' => push!(Tok::Comma, 1),
            ':' => push!(Tok::Colon, 1),
            '=' => push!(Tok::Eq, 1),
            '+' => push!(Tok::Plus, 1),
            '*' => push!(Tok::Star, 1),
            '^' => push!(Tok::Caret, 1),
            '-' if chars.get(i + 1) == Some(&'>') => push!(Tok::Arrow, 2),
            '-' => push!(Tok::Minus, 1),
            '0'..='9' => {
                let start = i;
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let numer: String = chars[start..j].iter().collect();
                let mut value = Coefficient::from_integer(numer.parse::<BigInt>().expect("digits"));
                if chars.get(j) == Some(&'/') {
                    let k0 = j + 1;
                    let mut k = k0;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                    if k == k0 {
                        return Err(ModelError::at(
                            Pos { line, col: col + (j - start) },
                            "`/` must be followed by a denominator",
                        ));
                    }
                    let denom: String = chars[k0..k].iter().collect();
                    let denom = denom.parse::<BigInt>().expect("digits");
                    if denom == BigInt::from(0) {
                        return Err(ModelError::at(pos, "zero denominator"));
                    }
                    value /= Coefficient::from_integer(denom);
                    j = k;
                }
                push!(Tok::Number(value), j - start);
            }
            c if is_ident_start(c) => {
                let start = i;
                let mut j = i;
                while j < chars.len() && is_ident_char(chars[j]) {
                    j += 1;
                }
                let word: String = chars[start..j].iter().collect();
                let deriv = word == "d"
                    && chars.get(j) == Some(&'/')
                    && chars.get(j + 1) == Some(&'d')
                    && chars.get(j + 2).copied().is_some_and(is_ident_start);
                if deriv {
                    let k0 = j + 2;
                    let mut k = k0;
                    while k < chars.len() && is_ident_char(chars[k]) {
                        k += 1;
                    }
                    let name: String = chars[k0..k].iter().collect();
                    push!(Tok::Deriv(name), k - start);
                } else {
                    push!(Tok::Ident(word), j - start);
                }
            }
            '/' => return Err(ModelError::at(pos, "`/` is only allowed in rational literals and `d/d`")),
            other => return Err(ModelError::at(pos, format!("unexpected character `{other}`"))),
        }
    }
    out.push(Token {
        tok: Tok::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}
