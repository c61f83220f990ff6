//! Lexer and recursive-descent parser for the formula grammar.
//!
//! ```text
//! formula := imp ( '<->' formula )?
//! imp     := or  ( '->'  imp )?
//! or      := and ( '|' and )*
//! and     := unary ( '&' unary )*
//! unary   := ('~' | 'D' | '[]')* ( quantified | primary )
//! quantified := ('forall' | 'exists') var '.' formula
//! primary := 'false' | relation ( '(' var ( ',' var )* ')' )? | '(' formula ')'
//! ```
//!
//! A quantifier's scope extends as far right as possible.  Unicode aliases
//! (`¬ ∧ ∨ → ↔ □ ⊥ ∀ ∃`) are accepted on input.  Positions in errors are
//! character offsets into the input.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{Formula, Language, Signature};

/// Why a parse failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken { found: String, expected: &'static str },
    UnexpectedEnd,
    UnknownRelation(String),
    ArityMismatch {
        relation: String,
        expected: usize,
        found: usize,
    },
    /// Both `D` and `[]` occur; the position points at the operator that
    /// completed the mix.
    MixedLanguage,
    /// An operator of the other language appeared while parsing in a fixed
    /// language.
    WrongLanguage { operator: &'static str, language: Language },
    ReservedWord(String),
}

/// A parse failure at a character position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub pos: usize,
    pub kind: ParseErrorKind,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at position {}: ", self.pos)?;
        match &self.kind {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character {c:?}"),
            ParseErrorKind::UnexpectedToken { found, expected } => {
                write!(f, "expected {expected}, found {found}")
            }
            ParseErrorKind::UnexpectedEnd => f.write_str("unexpected end of input"),
            ParseErrorKind::UnknownRelation(name) => write!(f, "unknown relation {name}"),
            ParseErrorKind::ArityMismatch {
                relation,
                expected,
                found,
            } => write!(
                f,
                "relation {relation} takes {expected} arguments, found {found}"
            ),
            ParseErrorKind::MixedLanguage => {
                f.write_str("formula mixes the D and [] operators")
            }
            ParseErrorKind::WrongLanguage { operator, language } => {
                write!(f, "operator {operator} is not part of language {language}")
            }
            ParseErrorKind::ReservedWord(word) => {
                write!(f, "{word} is a reserved word")
            }
        }
    }
}

impl core::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    LParen,
    RParen,
    Comma,
    Dot,
    Amp,
    Pipe,
    Arrow,
    DArrow,
    Tilde,
    DualOp,
    BoxOp,
    Forall,
    Exists,
    False,
    Ident(String),
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::Comma => ",".into(),
            Tok::Dot => ".".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Arrow => "->".into(),
            Tok::DArrow => "<->".into(),
            Tok::Tilde => "~".into(),
            Tok::DualOp => "D".into(),
            Tok::BoxOp => "[]".into(),
            Tok::Forall => "forall".into(),
            Tok::Exists => "exists".into(),
            Tok::False => "false".into(),
            Tok::Ident(name) => name.clone(),
        }
    }
}

struct Token {
    pos: usize,
    tok: Tok,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let pos = i;
        let c = chars[i];
        let simple = |tok: Tok| Token { pos, tok };
        match c {
            c if c.is_whitespace() => {
                i += 1;
                continue;
            }
            '(' => out.push(simple(Tok::LParen)),
            ')' => out.push(simple(Tok::RParen)),
            ',' => out.push(simple(Tok::Comma)),
            '.' => out.push(simple(Tok::Dot)),
            '&' | '∧' => out.push(simple(Tok::Amp)),
            '|' | '∨' => out.push(simple(Tok::Pipe)),
            '~' | '¬' => out.push(simple(Tok::Tilde)),
            '→' => out.push(simple(Tok::Arrow)),
            '↔' => out.push(simple(Tok::DArrow)),
            '□' => out.push(simple(Tok::BoxOp)),
            '⊥' => out.push(simple(Tok::False)),
            '∀' => out.push(simple(Tok::Forall)),
            '∃' => out.push(simple(Tok::Exists)),
            '-' => {
                if chars.get(i + 1) == Some(&'>') {
                    out.push(simple(Tok::Arrow));
                    i += 2;
                    continue;
                }
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar('-'),
                });
            }
            '<' => {
                if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') {
                    out.push(simple(Tok::DArrow));
                    i += 3;
                    continue;
                }
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar('<'),
                });
            }
            '[' => {
                if chars.get(i + 1) == Some(&']') {
                    out.push(simple(Tok::BoxOp));
                    i += 2;
                    continue;
                }
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar('['),
                });
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                let tok = match word.as_str() {
                    "D" => Tok::DualOp,
                    "forall" => Tok::Forall,
                    "exists" => Tok::Exists,
                    "false" => Tok::False,
                    _ => Tok::Ident(word),
                };
                out.push(Token { pos, tok });
                i = j;
                continue;
            }
            c => {
                return Err(ParseError {
                    pos,
                    kind: ParseErrorKind::UnexpectedChar(c),
                })
            }
        }
        i += 1;
    }
    Ok(out)
}

enum SigAccess<'a> {
    Strict(&'a Signature),
    Infer(&'a mut Signature),
}

struct Parser<'a> {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
    sig: SigAccess<'a>,
    required: Option<Language>,
    seen_dual: bool,
    seen_box: bool,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> usize {
        self.tokens
            .get(self.pos)
            .map(|t| t.pos)
            .unwrap_or(self.end)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.tokens.get(self.pos).map(|t| &t.tok);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn fail(&self, kind: ParseErrorKind) -> ParseError {
        ParseError {
            pos: self.here(),
            kind,
        }
    }

    fn expect(&mut self, want: &Tok, expected: &'static str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if t == want => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => {
                let found = t.describe();
                Err(self.fail(ParseErrorKind::UnexpectedToken { found, expected }))
            }
            None => Err(self.fail(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn note_dual(&mut self, pos: usize) -> Result<(), ParseError> {
        if self.required == Some(Language::Box) {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::WrongLanguage {
                    operator: "D",
                    language: Language::Box,
                },
            });
        }
        if self.seen_box {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::MixedLanguage,
            });
        }
        self.seen_dual = true;
        Ok(())
    }

    fn note_box(&mut self, pos: usize) -> Result<(), ParseError> {
        if self.required == Some(Language::Dual) {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::WrongLanguage {
                    operator: "[]",
                    language: Language::Dual,
                },
            });
        }
        if self.seen_dual {
            return Err(ParseError {
                pos,
                kind: ParseErrorKind::MixedLanguage,
            });
        }
        self.seen_box = true;
        Ok(())
    }

    fn atom(&mut self, name: String, name_pos: usize) -> Result<Formula, ParseError> {
        let mut args = Vec::new();
        if self.peek() == Some(&Tok::LParen) {
            self.pos += 1;
            if self.peek() != Some(&Tok::RParen) {
                loop {
                    match self.bump().cloned() {
                        Some(Tok::Ident(v)) => args.push(v),
                        Some(t) => {
                            self.pos -= 1;
                            let found = t.describe();
                            if matches!(t, Tok::DualOp | Tok::False | Tok::Forall | Tok::Exists) {
                                return Err(self.fail(ParseErrorKind::ReservedWord(found)));
                            }
                            return Err(self.fail(ParseErrorKind::UnexpectedToken {
                                found,
                                expected: "a variable",
                            }));
                        }
                        None => return Err(self.fail(ParseErrorKind::UnexpectedEnd)),
                    }
                    match self.peek() {
                        Some(Tok::Comma) => {
                            self.pos += 1;
                        }
                        _ => break,
                    }
                }
            }
            self.expect(&Tok::RParen, ")")?;
        }

        let expected = match &mut self.sig {
            SigAccess::Strict(sig) => sig.arity(&name).ok_or(ParseError {
                pos: name_pos,
                kind: ParseErrorKind::UnknownRelation(name.clone()),
            })?,
            SigAccess::Infer(sig) => match sig.arity(&name) {
                Some(a) => a,
                None => {
                    sig.declare(&name, args.len()).map_err(|_| ParseError {
                        pos: name_pos,
                        kind: ParseErrorKind::ReservedWord(name.clone()),
                    })?;
                    args.len()
                }
            },
        };
        if expected != args.len() {
            return Err(ParseError {
                pos: name_pos,
                kind: ParseErrorKind::ArityMismatch {
                    relation: name,
                    expected,
                    found: args.len(),
                },
            });
        }
        Ok(Formula::Atom(name, args))
    }

    fn quantified(&mut self) -> Result<Formula, ParseError> {
        let is_forall = self.peek() == Some(&Tok::Forall);
        self.pos += 1;
        let var = match self.bump().cloned() {
            Some(Tok::Ident(v)) => v,
            Some(t) => {
                self.pos -= 1;
                let found = t.describe();
                if matches!(t, Tok::DualOp | Tok::False | Tok::Forall | Tok::Exists) {
                    return Err(self.fail(ParseErrorKind::ReservedWord(found)));
                }
                return Err(self.fail(ParseErrorKind::UnexpectedToken {
                    found,
                    expected: "a variable",
                }));
            }
            None => return Err(self.fail(ParseErrorKind::UnexpectedEnd)),
        };
        self.expect(&Tok::Dot, ".")?;
        let body = self.formula()?;
        Ok(if is_forall {
            Formula::forall(&var, body)
        } else {
            Formula::exists(&var, body)
        })
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.here();
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::DualOp) => {
                self.note_dual(pos)?;
                self.pos += 1;
                Ok(Formula::dual(self.unary()?))
            }
            Some(Tok::BoxOp) => {
                self.note_box(pos)?;
                self.pos += 1;
                Ok(Formula::nec(self.unary()?))
            }
            Some(Tok::Forall) | Some(Tok::Exists) => self.quantified(),
            Some(Tok::False) => {
                self.pos += 1;
                Ok(Formula::Bottom)
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                self.expect(&Tok::RParen, ")")?;
                Ok(inner)
            }
            Some(Tok::Ident(_)) => {
                let name = match self.bump() {
                    Some(Tok::Ident(n)) => n.clone(),
                    _ => unreachable!(),
                };
                self.atom(name, pos)
            }
            Some(t) => {
                let found = t.describe();
                Err(self.fail(ParseErrorKind::UnexpectedToken {
                    found,
                    expected: "a formula",
                }))
            }
            None => Err(self.fail(ParseErrorKind::UnexpectedEnd)),
        }
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.unary()?;
        while self.peek() == Some(&Tok::Amp) {
            self.pos += 1;
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.conjunction()?;
        while self.peek() == Some(&Tok::Pipe) {
            self.pos += 1;
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let f = self.disjunction()?;
        if self.peek() == Some(&Tok::Arrow) {
            self.pos += 1;
            return Ok(Formula::imp(f, self.implication()?));
        }
        Ok(f)
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let f = self.implication()?;
        if self.peek() == Some(&Tok::DArrow) {
            self.pos += 1;
            return Ok(Formula::iff(f, self.formula()?));
        }
        Ok(f)
    }

    fn run(mut self, text: &str) -> Result<Formula, ParseError> {
        self.end = text.chars().count();
        let f = self.formula()?;
        if let Some(t) = self.peek() {
            let found = t.describe();
            return Err(self.fail(ParseErrorKind::UnexpectedToken {
                found,
                expected: "end of input",
            }));
        }
        Ok(f)
    }
}

fn parse_with(
    text: &str,
    sig: SigAccess<'_>,
    required: Option<Language>,
) -> Result<Formula, ParseError> {
    let tokens = lex(text)?;
    let parser = Parser {
        tokens,
        pos: 0,
        end: 0,
        sig,
        required,
        seen_dual: false,
        seen_box: false,
    };
    parser.run(text)
}

/// Parses a formula against a fixed signature.  The result is in a single
/// pure language; mixing `D` and `[]` is an error.
pub fn parse(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    parse_with(text, SigAccess::Strict(sig), None)
}

/// [`parse`], additionally requiring the formula to fit the given language.
pub fn parse_in_language(
    text: &str,
    sig: &Signature,
    language: Language,
) -> Result<Formula, ParseError> {
    parse_with(text, SigAccess::Strict(sig), Some(language))
}

/// Parses a formula, declaring unknown relations in `sig` with the arity of
/// their first use.  Later uses must match.
pub fn parse_inferring(text: &str, sig: &mut Signature) -> Result<Formula, ParseError> {
    parse_with(text, SigAccess::Infer(sig), None)
}

/// [`parse_inferring`] restricted to one language.
pub fn parse_inferring_in_language(
    text: &str,
    sig: &mut Signature,
    language: Language,
) -> Result<Formula, ParseError> {
    parse_with(text, SigAccess::Infer(sig), Some(language))
}
