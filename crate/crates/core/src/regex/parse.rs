use thiserror::Error;

use super::Regex;
use crate::alphabet::Alphabet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown symbol {letter:?} at position {pos}")]
    UnknownSymbol { letter: char, pos: usize },
}

pub fn parse_regex(text: &str, alphabet: &Alphabet) -> Result<Regex, ParseError> {
    let chars: Vec<(usize, char)> = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .collect();
    let mut p = Parser {
        chars,
        at: 0,
        alphabet,
        end: text.chars().count(),
    };
    let r = p.union()?;
    if let Some((pos, c)) = p.peek() {
        return Err(ParseError::Syntax {
            pos,
            msg: format!("unexpected {c:?}"),
        });
    }
    Ok(r)
}

struct Parser<'a> {
    chars: Vec<(usize, char)>,
    at: usize,
    alphabet: &'a Alphabet,
    end: usize,
}

impl Parser<'_> {
    fn peek(&self) -> Option<(usize, char)> {
        self.chars.get(self.at).copied()
    }

    fn pos(&self) -> usize {
        self.peek().map(|(p, _)| p).unwrap_or(self.end)
    }

    fn union(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.concat()?;
        while let Some((_, '|')) = self.peek() {
            self.at += 1;
            let rhs = self.concat()?;
            r = Regex::union(r, rhs);
        }
        Ok(r)
    }

    fn starts_atom(c: char) -> bool {
        !matches!(c, '|' | ')' | '*')
    }

    fn concat(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.postfix()?;
        while let Some((_, c)) = self.peek() {
            if !Self::starts_atom(c) {
                break;
            }
            let rhs = self.postfix()?;
            r = Regex::concat(r, rhs);
        }
        Ok(r)
    }

    fn postfix(&mut self) -> Result<Regex, ParseError> {
        let mut r = self.atom()?;
        while let Some((_, '*')) = self.peek() {
            self.at += 1;
            r = Regex::star(r);
        }
        Ok(r)
    }

    fn atom(&mut self) -> Result<Regex, ParseError> {
        let pos = self.pos();
        match self.peek() {
            None => Err(ParseError::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            Some((_, '0')) => {
                self.at += 1;
                Ok(Regex::Empty)
            }
            Some((_, '1')) => {
                self.at += 1;
                Ok(Regex::epsilon())
            }
            Some((_, '(')) => {
                self.at += 1;
                let r = self.union()?;
                match self.peek() {
                    Some((_, ')')) => {
                        self.at += 1;
                        Ok(r)
                    }
                    _ => Err(ParseError::Syntax {
                        pos: self.pos(),
                        msg: "expected ')'".into(),
                    }),
                }
            }
            Some((_, c @ ('|' | ')' | '*'))) => Err(ParseError::Syntax {
                pos,
                msg: format!("unexpected {c:?}"),
            }),
            Some((_, c)) => {
                if self.alphabet.contains(c) {
                    self.at += 1;
                    Ok(Regex::Symbol(c))
                } else {
                    Err(ParseError::UnknownSymbol { letter: c, pos })
                }
            }
        }
    }
}
