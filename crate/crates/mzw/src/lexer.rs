//! Tokenizer for `.mz` programs.

use std::fmt;

use crate::error::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    /// Unsigned decimal digits.
    Int(String),
    Str(String),
    /// `--name`
    Flag(String),
    Punct(&'static str),
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Int(s) => write!(f, "integer `{s}`"),
            Tok::Str(s) => write!(f, "string {s:?}"),
            Tok::Flag(s) => write!(f, "flag `--{s}`"),
            Tok::Punct(p) => write!(f, "`{p}`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

const PUNCT: [&str; 16] = ["..", "(", ")", "[", "]", "{", "}", ",", ";", "=", "+", "*", "^", "/", "-", ":"];

pub fn tokenize(src: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let advance = |i: &mut usize, line: &mut usize, col: &mut usize, to: usize| {
        while *i < to {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        }
    };
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, col };
        if c.is_whitespace() {
            let to = i + 1;
            advance(&mut i, &mut line, &mut col, to);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                let to = i + 1;
                advance(&mut i, &mut line, &mut col, to);
            }
            continue;
        }
        let take_while = |start: usize, f: &dyn Fn(char) -> bool| {
            let mut j = start;
            while j < chars.len() && f(chars[j]) {
                j += 1;
            }
            j
        };
        let ident_char = |c: char| c.is_ascii_alphanumeric() || c == '_';
        if c.is_ascii_alphabetic() || c == '_' {
            let j = take_while(i, &ident_char);
            out.push(Token { tok: Tok::Ident(chars[i..j].iter().collect()), pos });
            advance(&mut i, &mut line, &mut col, j);
        } else if c.is_ascii_digit() {
            let j = take_while(i, &|c| c.is_ascii_digit());
            out.push(Token { tok: Tok::Int(chars[i..j].iter().collect()), pos });
            advance(&mut i, &mut line, &mut col, j);
        } else if c == '-'
            && chars.get(i + 1) == Some(&'-')
            && chars.get(i + 2).is_some_and(|c| c.is_ascii_alphabetic())
        {
            let j = take_while(i + 2, &|c| ident_char(c) || c == '-');
            out.push(Token { tok: Tok::Flag(chars[i + 2..j].iter().collect()), pos });
            advance(&mut i, &mut line, &mut col, j);
        } else if c == '"' {
            let mut j = i + 1;
            let mut s = String::new();
            loop {
                match chars.get(j) {
                    None | Some('\n') => {
                        return Err(ParseError::new(pos, "unterminated string", ["`\"`"]));
                    }
                    Some('"') => break,
                    Some('\\') => {
                        match chars.get(j + 1) {
                            Some(&e @ ('"' | '\\')) => s.push(e),
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            _ => {
                                return Err(ParseError::new(pos, "bad escape in string", ["`\\\"`", "`\\\\`", "`\\n`"]))
                            }
                        }
                        j += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        j += 1;
                    }
                }
            }
            out.push(Token { tok: Tok::Str(s), pos });
            advance(&mut i, &mut line, &mut col, j + 1);
        } else if let Some(p) = PUNCT.iter().find(|p| chars[i..].starts_with(&p.chars().collect::<Vec<_>>())) {
            out.push(Token { tok: Tok::Punct(p), pos });
            let to = i + p.len();
            advance(&mut i, &mut line, &mut col, to);
        } else {
            return Err(ParseError::new(pos, &format!("unexpected character `{c}`"), Vec::<String>::new()));
        }
    }
    out.push(Token { tok: Tok::Eof, pos: Pos { line, col } });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_kinds() {
        let t = tokenize("let E = curve(weil=[1,0,2], q=2/3); # c\n  zeta E --order 4;").unwrap();
        assert_eq!(t[0].tok, Tok::Ident("let".into()));
        assert_eq!(t[3].pos, Pos { line: 1, col: 9 });
        let flag = t.iter().find(|t| matches!(t.tok, Tok::Flag(_))).unwrap();
        assert_eq!(flag.pos, Pos { line: 2, col: 10 });
        assert!(t.iter().any(|t| t.tok == Tok::Punct("/")));
        assert_eq!(tokenize("1..3").unwrap()[1].tok, Tok::Punct(".."));
        assert!(tokenize("let x = @;").is_err());
    }
}
