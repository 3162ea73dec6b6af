use super::ParseError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Num(i64),
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Eq,
    EqEq,
    Leq,
    Star,
    Plus,
    Arrow,
    Bar,
    Dot,
    Ovee,
    Diamond,
    At,
    Hole,
    Slash,
    Minus,
    Turnstile,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Num(n) => format!("`{n}`"),
            Tok::Eof => "end of input".to_string(),
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
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Eq => "=",
            Tok::EqEq => "==",
            Tok::Leq => "<=",
            Tok::Star => "*",
            Tok::Plus => "+",
            Tok::Arrow => "->",
            Tok::Bar => "|",
            Tok::Dot => ".",
            Tok::Ovee => "o+",
            Tok::Diamond => "<>",
            Tok::At => "@",
            Tok::Hole => "_",
            Tok::Slash => "/",
            Tok::Minus => "-",
            Tok::Turnstile => "|-",
            _ => "?",
        }
    }
}

#[derive(Clone, Debug)]
pub struct Spanned {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

fn ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '\''
}

pub fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    let mut line = 1;
    let mut col = 1;
    let at = |i: usize| chars.get(i).copied();
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok, len: usize, i: &mut usize, col: &mut usize| {
            out.push(Spanned {
                tok,
                line: l0,
                col: c0,
            });
            *i += len;
            *col += len;
        };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
            }
            '-' if at(i + 1) == Some('-') => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '-' if at(i + 1) == Some('>') => push(Tok::Arrow, 2, &mut i, &mut col),
            '-' => push(Tok::Minus, 1, &mut i, &mut col),
            '(' => push(Tok::LParen, 1, &mut i, &mut col),
            ')' => push(Tok::RParen, 1, &mut i, &mut col),
            '{' => push(Tok::LBrace, 1, &mut i, &mut col),
            '}' => push(Tok::RBrace, 1, &mut i, &mut col),
            '[' => push(Tok::LBracket, 1, &mut i, &mut col),
            ']' => push(Tok::RBracket, 1, &mut i, &mut col),
            ',' => push(Tok::Comma, 1, &mut i, &mut col),
            ':' => push(Tok::Colon, 1, &mut i, &mut col),
            ';' => push(Tok::Semi, 1, &mut i, &mut col),
            '=' if at(i + 1) == Some('=') => push(Tok::EqEq, 2, &mut i, &mut col),
            '=' => push(Tok::Eq, 1, &mut i, &mut col),
            '<' if at(i + 1) == Some('=') => push(Tok::Leq, 2, &mut i, &mut col),
            '<' if at(i + 1) == Some('>') => push(Tok::Diamond, 2, &mut i, &mut col),
            '*' => push(Tok::Star, 1, &mut i, &mut col),
            '+' => push(Tok::Plus, 1, &mut i, &mut col),
            '|' if at(i + 1) == Some('-') => push(Tok::Turnstile, 2, &mut i, &mut col),
            '|' => push(Tok::Bar, 1, &mut i, &mut col),
            '.' => push(Tok::Dot, 1, &mut i, &mut col),
            '@' => push(Tok::At, 1, &mut i, &mut col),
            '/' => push(Tok::Slash, 1, &mut i, &mut col),
            '_' if !at(i + 1).is_some_and(ident_continue) => {
                push(Tok::Hole, 1, &mut i, &mut col)
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                let n: i64 = text.parse().map_err(|_| ParseError {
                    line,
                    col,
                    message: format!("number `{text}` is too large"),
                })?;
                push(Tok::Num(n), j - i, &mut i, &mut col);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                loop {
                    match at(j) {
                        Some(d) if ident_continue(d) => j += 1,
                        Some('-') if at(j + 1).is_some_and(|d| d.is_ascii_alphanumeric()) => {
                            j += 1
                        }
                        _ => break,
                    }
                }
                let text: String = chars[i..j].iter().collect();
                if text == "o" && at(j) == Some('+') {
                    push(Tok::Ovee, 2, &mut i, &mut col);
                } else {
                    push(Tok::Ident(text), j - i, &mut i, &mut col);
                }
            }
            other => {
                return Err(ParseError {
                    line,
                    col,
                    message: format!("unexpected character `{other}`"),
                })
            }
        }
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toks(s: &str) -> Vec<Tok> {
        lex(s).unwrap().into_iter().map(|t| t.tok).collect()
    }

    #[test]
    fn rule_names_and_arrows() {
        assert_eq!(
            toks("beta-plus-1 x->y -- note"),
            vec![
                Tok::Ident("beta-plus-1".into()),
                Tok::Ident("x".into()),
                Tok::Arrow,
                Tok::Ident("y".into()),
                Tok::Eof
            ]
        );
    }

    #[test]
    fn ovee_and_primes() {
        assert_eq!(
            toks("a o+ y' <> _"),
            vec![
                Tok::Ident("a".into()),
                Tok::Ovee,
                Tok::Ident("y'".into()),
                Tok::Diamond,
                Tok::Hole,
                Tok::Eof
            ]
        );
    }
}
