//! Propositional formulas over the connectives of a matrix.
//!
//! Syntax: atoms are identifiers; `~` is `neg`, `&` is `and`, `|` is `or`,
//! binding in that order, the binary ones associating to the left. Any other
//! operation is written as a call, `name(A, B)`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::SourceError;
use crate::matrix::is_identifier;

pub const NEG: &str = "neg";
pub const AND: &str = "and";
pub const OR: &str = "or";

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Compound { op: String, args: Vec<Formula> },
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    pub fn compound(op: impl Into<String>, args: Vec<Formula>) -> Self {
        Formula::Compound { op: op.into(), args }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(a: Formula) -> Self {
        Self::compound(NEG, vec![a])
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Self::compound(AND, vec![a, b])
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Self::compound(OR, vec![a, b])
    }

    pub fn arity(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Compound { args, .. } => args.len(),
        }
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Atom(_))
    }

    /// Atom names, sorted.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::Compound { args, .. } => args.iter().for_each(|f| f.collect_atoms(out)),
        }
    }

    /// Nesting depth of connectives; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) => 0,
            Formula::Compound { args, .. } => 1 + args.iter().map(Formula::depth).max().unwrap_or(0),
        }
    }

    /// Distinct operations used, with their arities.
    pub fn operations(&self) -> BTreeSet<(&str, usize)> {
        let mut out = BTreeSet::new();
        let mut stack = vec![self];
        while let Some(f) = stack.pop() {
            if let Formula::Compound { op, args } = f {
                out.insert((op.as_str(), args.len()));
                stack.extend(args);
            }
        }
        out
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Compound { op, args } if op == OR && args.len() == 2 => 1,
            Formula::Compound { op, args } if op == AND && args.len() == 2 => 2,
            Formula::Compound { op, args } if op == NEG && args.len() == 1 => 3,
            _ => 4,
        }
    }
}

/// Atoms collected across several formulas, sorted.
pub fn atoms_of<'a>(formulas: impl IntoIterator<Item = &'a Formula>) -> Vec<String> {
    let mut all = BTreeSet::new();
    for f in formulas {
        f.collect_atoms(&mut all);
    }
    all.into_iter().map(str::to_string).collect()
}

fn write_operand(f: &mut fmt::Formatter<'_>, child: &Formula, needs_parens: bool) -> fmt::Result {
    if needs_parens {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

/// Prints with the fewest parentheses that re-parse to the same tree.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::Compound { op, args } => match self.precedence() {
                p @ (1 | 2) => {
                    write_operand(f, &args[0], args[0].precedence() < p)?;
                    f.write_str(if p == 1 { " | " } else { " & " })?;
                    write_operand(f, &args[1], args[1].precedence() <= p)
                }
                3 => {
                    f.write_str("~")?;
                    write_operand(f, &args[0], args[0].precedence() < 3)
                }
                _ => {
                    write!(f, "{op}(")?;
                    for (i, a) in args.iter().enumerate() {
                        if i > 0 {
                            f.write_str(", ")?;
                        }
                        write!(f, "{a}")?;
                    }
                    f.write_str(")")
                }
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Tilde,
    Amp,
    Bar,
    LParen,
    RParen,
    Comma,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier {s}"),
            Tok::Tilde => "'~'".into(),
            Tok::Amp => "'&'".into(),
            Tok::Bar => "'|'".into(),
            Tok::LParen => "'('".into(),
            Tok::RParen => "')'".into(),
            Tok::Comma => "','".into(),
            Tok::End => "end of input".into(),
        }
    }
}

/// Line and column (both 1-based, columns in characters) of every char.
pub(crate) struct Cursor<'a> {
    chars: std::str::Chars<'a>,
    pub(crate) line: usize,
    pub(crate) column: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars(),
            line: 1,
            column: 1,
        }
    }

    pub(crate) fn peek(&self) -> Option<char> {
        self.chars.clone().next()
    }

    pub(crate) fn peek2(&self) -> Option<char> {
        self.chars.clone().nth(1)
    }

    pub(crate) fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }
}

fn error(line: usize, column: usize, message: impl Into<String>, expected: &[&str]) -> SourceError {
    SourceError {
        line,
        column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize, usize)>, SourceError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let (line, column) = (cur.line, cur.column);
        if c.is_whitespace() {
            cur.bump();
            continue;
        }
        let tok = match c {
            '~' => Tok::Tilde,
            '&' => Tok::Amp,
            '|' => Tok::Bar,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            ',' => Tok::Comma,
            c if c.is_alphabetic() => {
                let mut name = String::new();
                while let Some(c) = cur.peek().filter(|c| c.is_alphanumeric() || *c == '_') {
                    name.push(c);
                    cur.bump();
                }
                out.push((Tok::Ident(name), line, column));
                continue;
            }
            c => return Err(error(line, column, format!("unexpected character {c:?}"), &[])),
        };
        cur.bump();
        out.push((tok, line, column));
    }
    out.push((Tok::End, cur.line, cur.column));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize, usize)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn next(&mut self) -> Tok {
        let t = self.toks[self.at].0.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> SourceError {
        let (tok, line, column) = &self.toks[self.at];
        error(*line, *column, format!("unexpected {}", tok.describe()), expected)
    }

    fn expect(&mut self, tok: Tok, name: &str) -> Result<(), SourceError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.fail(&[name]))
        }
    }

    fn disjunction(&mut self) -> Result<Formula, SourceError> {
        let mut left = self.conjunction()?;
        while *self.peek() == Tok::Bar {
            self.next();
            left = Formula::or(left, self.conjunction()?);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, SourceError> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.next();
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, SourceError> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.next();
                Ok(Formula::neg(self.unary()?))
            }
            Tok::LParen => {
                self.next();
                let f = self.disjunction()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(f)
            }
            Tok::Ident(name) => {
                self.next();
                if *self.peek() != Tok::LParen {
                    return Ok(Formula::Atom(name));
                }
                self.next();
                let mut args = Vec::new();
                if *self.peek() != Tok::RParen {
                    args.push(self.disjunction()?);
                    while *self.peek() == Tok::Comma {
                        self.next();
                        args.push(self.disjunction()?);
                    }
                }
                if *self.peek() != Tok::RParen {
                    return Err(self.fail(&["','", "')'"]));
                }
                self.next();
                Ok(Formula::Compound { op: name, args })
            }
            _ => Err(self.fail(&["atom", "'~'", "'('"])),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SourceError> {
    let mut p = Parser {
        toks: lex(text)?,
        at: 0,
    };
    let f = p.disjunction()?;
    if *p.peek() != Tok::End {
        return Err(p.fail(&["'&'", "'|'", "end of input"]));
    }
    Ok(f)
}

/// Checks that an atom name is a valid identifier.
pub fn is_atom_name(s: &str) -> bool {
    is_identifier(s)
}
