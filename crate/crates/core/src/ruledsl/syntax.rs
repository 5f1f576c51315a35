//! Line-oriented lexer and recursive-descent parser producing unvalidated
//! statements with source positions.

use std::fmt;

/// Syntax error with a 1-based position into the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub offending_token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)?;
        if !self.offending_token.is_empty() {
            write!(f, " (found '{}')", self.offending_token)?;
        }
        Ok(())
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    Ident(String),
    Str(String),
    Number(String),
    Colon,
    Arrow,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Str(s) => format!("\"{s}\""),
            Tok::Colon => ":".into(),
            Tok::Arrow => "->".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Spanned<T> {
    pub value: T,
    pub pos: Pos,
}

pub(crate) type Ident = Spanned<String>;

/// A numeric literal and the keyword that says how to read it.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Strength {
    pub keyword: String,
    pub value: f64,
    pub pos: Pos,
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Stmt {
    Hypothesis {
        id: Ident,
        description: String,
    },
    Evidence {
        id: Ident,
        description: String,
    },
    Prior {
        hypothesis: Ident,
        strength: Strength,
    },
    Rule {
        id: Ident,
        evidence: Ident,
        hypothesis: Ident,
        strength: Strength,
    },
    Observe {
        evidence: Ident,
    },
}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

fn lex_line(line_no: usize, text: &str) -> Result<Vec<Spanned<Tok>>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let mut i = 0;
    let err = |col: usize, message: &str, tok: String| ParseError {
        line: line_no,
        column: col + 1,
        message: message.to_string(),
        offending_token: tok,
    };

    while i < chars.len() {
        let c = chars[i];
        let start = i;
        let pos = Pos {
            line: line_no,
            column: start + 1,
        };
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c == '#' {
            break;
        }
        let tok = if is_ident_start(c) {
            while i < chars.len() && is_ident_continue(chars[i]) {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else if c == ':' {
            i += 1;
            Tok::Colon
        } else if c == '-' && chars.get(i + 1) == Some(&'>') {
            i += 2;
            Tok::Arrow
        } else if c == '"' {
            i += 1;
            let mut s = String::new();
            loop {
                match chars.get(i) {
                    None => {
                        return Err(err(
                            start,
                            "unterminated string",
                            chars[start..].iter().collect(),
                        ))
                    }
                    Some('"') => {
                        i += 1;
                        break;
                    }
                    Some('\\') => {
                        let escaped = match chars.get(i + 1) {
                            Some('"') => '"',
                            Some('\\') => '\\',
                            Some('n') => '\n',
                            Some('t') => '\t',
                            other => {
                                let tok: String =
                                    std::iter::once('\\').chain(other.copied()).collect();
                                return Err(err(i, "invalid escape sequence", tok));
                            }
                        };
                        s.push(escaped);
                        i += 2;
                    }
                    Some(&ch) => {
                        s.push(ch);
                        i += 1;
                    }
                }
            }
            Tok::Str(s)
        } else if c.is_ascii_digit() || c == '.' || c == '+' || c == '-' {
            if c == '+' || c == '-' {
                i += 1;
            }
            if chars[i..].starts_with(&['i', 'n', 'f']) {
                i += 3;
            } else {
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                    i += 1;
                }
            }
            // A number runs into the next delimiter; anything glued on is part of the bad token.
            while i < chars.len()
                && (is_ident_continue(chars[i])
                    || chars[i] == '.'
                    || chars[i] == '+'
                    || (chars[i] == '-' && chars.get(i + 1) != Some(&'>')))
            {
                i += 1;
            }
            Tok::Number(chars[start..i].iter().collect())
        } else {
            return Err(err(start, "unexpected character", c.to_string()));
        };
        toks.push(Spanned { value: tok, pos });
    }
    Ok(toks)
}

/// Decimal with optional sign and fraction, or a signed `inf`.
fn parse_number(text: &str) -> Option<f64> {
    let unsigned = text.strip_prefix(['+', '-']).unwrap_or(text);
    let valid = unsigned == "inf" || {
        let (int, frac) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        !(int.is_empty() && frac.is_empty())
            && int.chars().all(|c| c.is_ascii_digit())
            && frac.chars().all(|c| c.is_ascii_digit())
    };
    if valid {
        text.parse().ok()
    } else {
        None
    }
}

struct LineParser<'a> {
    toks: &'a [Spanned<Tok>],
    next: usize,
    line: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn peek(&self) -> Option<&'a Spanned<Tok>> {
        self.toks.get(self.next)
    }

    fn error_here(&self, expected: &str) -> ParseError {
        match self.peek() {
            Some(t) => ParseError {
                line: t.pos.line,
                column: t.pos.column,
                message: format!("expected {expected}"),
                offending_token: t.value.describe(),
            },
            None => ParseError {
                line: self.line,
                column: self.end_column,
                message: format!("expected {expected}, found end of line"),
                offending_token: String::new(),
            },
        }
    }

    fn ident(&mut self, expected: &str) -> Result<Ident, ParseError> {
        match self.peek() {
            Some(Spanned {
                value: Tok::Ident(s),
                pos,
            }) => {
                self.next += 1;
                Ok(Spanned {
                    value: s.clone(),
                    pos: *pos,
                })
            }
            _ => Err(self.error_here(expected)),
        }
    }

    fn keyword(&mut self, options: &[&str]) -> Result<Ident, ParseError> {
        let expected = options.join(" or ");
        match self.peek() {
            Some(Spanned {
                value: Tok::Ident(s),
                ..
            }) if options.contains(&s.as_str()) => self.ident(&expected),
            _ => Err(self.error_here(&expected)),
        }
    }

    fn string(&mut self) -> Result<String, ParseError> {
        match self.peek() {
            Some(Spanned {
                value: Tok::Str(s), ..
            }) => {
                self.next += 1;
                Ok(s.clone())
            }
            _ => Err(self.error_here("a quoted description")),
        }
    }

    fn punct(&mut self, want: Tok) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t.value == want => {
                self.next += 1;
                Ok(())
            }
            _ => Err(self.error_here(&format!("'{}'", want.describe()))),
        }
    }

    fn number(&mut self) -> Result<(f64, Pos), ParseError> {
        let Some(t) = self.peek() else {
            return Err(self.error_here("a number"));
        };
        let text = match &t.value {
            Tok::Number(s) | Tok::Ident(s) => s,
            _ => return Err(self.error_here("a number")),
        };
        match parse_number(text) {
            Some(v) => {
                self.next += 1;
                Ok((v, t.pos))
            }
            None => Err(ParseError {
                line: t.pos.line,
                column: t.pos.column,
                message: "malformed number".into(),
                offending_token: text.clone(),
            }),
        }
    }

    fn strength(&mut self, keywords: &[&str]) -> Result<Strength, ParseError> {
        let keyword = self.keyword(keywords)?;
        let (value, pos) = self.number()?;
        Ok(Strength {
            keyword: keyword.value,
            value,
            pos,
        })
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(ParseError {
                line: t.pos.line,
                column: t.pos.column,
                message: "unexpected token after end of statement".into(),
                offending_token: t.value.describe(),
            }),
        }
    }

    fn statement(&mut self) -> Result<Stmt, ParseError> {
        let head = self.keyword(&["hypothesis", "prior", "evidence", "rule", "observe"])?;
        let stmt = match head.value.as_str() {
            "hypothesis" => Stmt::Hypothesis {
                id: self.ident("a hypothesis id")?,
                description: self.string()?,
            },
            "evidence" => Stmt::Evidence {
                id: self.ident("an evidence id")?,
                description: self.string()?,
            },
            "prior" => Stmt::Prior {
                hypothesis: self.ident("a hypothesis id")?,
                strength: self.strength(&["prob", "odds"])?,
            },
            "rule" => {
                let id = self.ident("a rule id")?;
                self.punct(Tok::Colon)?;
                let evidence = self.ident("an evidence id")?;
                self.punct(Tok::Arrow)?;
                let hypothesis = self.ident("a hypothesis id")?;
                let strength = self.strength(&["cf", "lambda", "belief", "logl"])?;
                Stmt::Rule {
                    id,
                    evidence,
                    hypothesis,
                    strength,
                }
            }
            "observe" => Stmt::Observe {
                evidence: self.ident("an evidence id")?,
            },
            _ => unreachable!("keyword() only accepts statement keywords"),
        };
        self.end()?;
        Ok(stmt)
    }
}

/// Parses every line; stops at the first syntax error.
pub(crate) fn parse_statements(source: &str) -> Result<Vec<Stmt>, ParseError> {
    let mut stmts = Vec::new();
    for (idx, text) in source.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(line, text)?;
        if toks.is_empty() {
            continue;
        }
        let mut parser = LineParser {
            toks: &toks,
            next: 0,
            line,
            end_column: text.trim_end().chars().count() + 1,
        };
        stmts.push(parser.statement()?);
    }
    Ok(stmts)
}
