//! Text syntax for presentations and words.
//!
//! ```text
//! presentation := "<" [name ("," name)*] "|" [word ("," word)*] ">"
//! word         := item+
//! item         := name ["^" signed-int] | "[" word "," word "]"
//! ```
//!
//! `[x,y]` expands to `x y x^-1 y^-1`.

use std::collections::HashMap;

use super::PresentationError;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    LBracket,
    RBracket,
    Caret,
    Name(String),
    Int(i64),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, message: impl Into<String>) -> PresentationError {
    PresentationError::Syntax {
        pos,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<Token>, PresentationError> {
    let bytes: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let pos = i;
        let simple = match c {
            '<' => Some(Tok::Open),
            '>' => Some(Tok::Close),
            '|' => Some(Tok::Bar),
            ',' => Some(Tok::Comma),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '^' => Some(Tok::Caret),
            _ => None,
        };
        if let Some(tok) = simple {
            out.push(Token { tok, pos });
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == '_') {
                i += 1;
            }
            out.push(Token {
                tok: Tok::Name(bytes[start..i].iter().collect()),
                pos,
            });
        } else if c.is_ascii_digit() || c == '-' || c == '+' {
            let start = i;
            i += 1;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = bytes[start..i].iter().collect();
            let value = s
                .parse::<i64>()
                .map_err(|_| syntax(pos, format!("invalid integer `{s}`")))?;
            out.push(Token {
                tok: Tok::Int(value),
                pos,
            });
        } else {
            return Err(syntax(pos, format!("unexpected character `{c}`")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Token>,
    at: usize,
    end: usize,
    names: Option<&'a HashMap<String, usize>>,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.at).map(|t| &t.tok)
    }

    fn pos(&self) -> usize {
        self.tokens.get(self.at).map_or(self.end, |t| t.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.at).cloned();
        self.at += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), PresentationError> {
        let pos = self.pos();
        match self.next() {
            Some(t) if t.tok == want => Ok(()),
            _ => Err(syntax(pos, format!("expected {what}"))),
        }
    }

    fn lookup(&self, name: &str, pos: usize) -> Result<usize, PresentationError> {
        self.names
            .and_then(|m| m.get(name).copied())
            .ok_or_else(|| PresentationError::UnknownGenerator {
                name: name.to_string(),
                pos,
            })
    }

    /// Parses a word up to (not including) `,`, `]`, `>` or end of input.
    fn word(&mut self) -> Result<Vec<(usize, i64)>, PresentationError> {
        let mut raw = Vec::new();
        loop {
            match self.peek() {
                Some(Tok::Name(_)) => {
                    let t = self.next().unwrap();
                    let Tok::Name(name) = t.tok else {
                        unreachable!()
                    };
                    let generator = self.lookup(&name, t.pos)?;
                    let mut exponent = 1;
                    if self.peek() == Some(&Tok::Caret) {
                        self.next();
                        let pos = self.pos();
                        match self.next() {
                            Some(Token {
                                tok: Tok::Int(k), ..
                            }) if k != 0 => exponent = k,
                            Some(Token {
                                tok: Tok::Int(_), ..
                            }) => return Err(syntax(pos, "exponent must be nonzero")),
                            _ => return Err(syntax(pos, "expected integer exponent")),
                        }
                    }
                    raw.push((generator, exponent));
                }
                Some(Tok::LBracket) => {
                    self.next();
                    let x = self.word()?;
                    self.expect(Tok::Comma, "`,` in commutator")?;
                    let y = self.word()?;
                    self.expect(Tok::RBracket, "`]` closing commutator")?;
                    let xw = Word::free_reduce(x);
                    let yw = Word::free_reduce(y);
                    let c = xw
                        .multiply(&yw)
                        .multiply(&xw.invert())
                        .multiply(&yw.invert());
                    raw.extend(c.letters().iter().map(|l| (l.generator, l.exponent)));
                }
                _ => break,
            }
        }
        Ok(raw)
    }
}

/// A relator as `(generator, exponent)` pairs, not yet reduced.
type RawWord = Vec<(usize, i64)>;

/// Parses the full presentation text form.
pub(super) fn parse_presentation(
    text: &str,
) -> Result<(Vec<String>, Vec<RawWord>), PresentationError> {
    let tokens = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser {
        tokens,
        at: 0,
        end,
        names: None,
    };
    p.expect(Tok::Open, "`<`")?;

    let mut generators: Vec<String> = Vec::new();
    let mut index = HashMap::new();
    if p.peek() != Some(&Tok::Bar) {
        loop {
            let pos = p.pos();
            match p.next() {
                Some(Token {
                    tok: Tok::Name(name),
                    ..
                }) => {
                    if index.insert(name.clone(), generators.len()).is_some() {
                        return Err(PresentationError::DuplicateGenerator(name));
                    }
                    generators.push(name);
                }
                _ => return Err(syntax(pos, "expected generator name")),
            }
            match p.peek() {
                Some(Tok::Comma) => {
                    p.next();
                }
                Some(Tok::Bar) => break,
                _ => return Err(syntax(p.pos(), "expected `,` or `|`")),
            }
        }
    }
    p.expect(Tok::Bar, "`|`")?;

    p.names = Some(&index);
    let mut relators = Vec::new();
    if p.peek() != Some(&Tok::Close) {
        loop {
            let (pos, start) = (p.pos(), p.at);
            let raw = p.word()?;
            if p.at == start {
                return Err(syntax(pos, "expected relator word"));
            }
            relators.push(raw);
            match p.peek() {
                Some(Tok::Comma) => {
                    p.next();
                }
                Some(Tok::Close) => break,
                _ => return Err(syntax(p.pos(), "expected `,` or `>`")),
            }
        }
    }
    p.expect(Tok::Close, "`>`")?;
    if p.at < p.tokens.len() {
        return Err(syntax(p.pos(), "trailing input after `>`"));
    }
    Ok((generators, relators))
}

/// Parses a standalone word such as `a b a^-1 b^-1` or `[a,b]` against
/// the given generator names.
pub fn parse_word(text: &str, generators: &[String]) -> Result<Word, PresentationError> {
    let index: HashMap<String, usize> = generators
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect();
    let tokens = lex(text)?;
    let end = text.chars().count();
    let mut p = Parser {
        tokens,
        at: 0,
        end,
        names: Some(&index),
    };
    let raw = p.word()?;
    if p.at < p.tokens.len() {
        return Err(syntax(p.pos(), "unexpected token in word"));
    }
    Ok(Word::free_reduce(raw))
}
