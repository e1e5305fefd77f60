//! The `.mvl` matrix specification language.
//!
//! ```text
//! # comment
//! logic "FDE".
//! values: B, T, F, N.
//! designated: B, T.
//! op neg/1 { B -> B. T -> F. F -> T. N -> N. }
//! op and/2 { (B, B) -> B. (B, T) -> B. ... }
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result, SourceError};
use crate::formula::Cursor;
use crate::matrix::{Matrix, Pos, RawEntry, RawMatrix, RawOp, Token, ValidationReport};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Word(String),
    Str(String),
    Punct(&'static str),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Word(w) => format!("{w:?}"),
            Tok::Str(s) => format!("string {s:?}"),
            Tok::Punct(p) => format!("'{p}'"),
            Tok::End => "end of input".into(),
        }
    }
}

const PUNCT: &[(char, &str)] = &[
    ('.', "."),
    (',', ","),
    (':', ":"),
    ('{', "{"),
    ('}', "}"),
    ('(', "("),
    (')', ")"),
    ('/', "/"),
];

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !"#\".,:{}()/".contains(c)
}

fn err(pos: Pos, message: impl Into<String>, expected: &[&str]) -> SourceError {
    SourceError {
        line: pos.line,
        column: pos.column,
        message: message.into(),
        expected: expected.iter().map(|s| s.to_string()).collect(),
    }
}

fn lex(text: &str) -> std::result::Result<Vec<(Tok, Pos)>, SourceError> {
    let mut cur = Cursor::new(text);
    let mut out = Vec::new();
    while let Some(c) = cur.peek() {
        let pos = Pos {
            line: cur.line,
            column: cur.column,
        };
        if c.is_whitespace() {
            cur.bump();
        } else if c == '#' {
            while cur.peek().is_some_and(|c| c != '\n') {
                cur.bump();
            }
        } else if c == '"' {
            cur.bump();
            let mut s = String::new();
            loop {
                match cur.bump() {
                    Some('"') => break,
                    Some('\n') | None => return Err(err(pos, "unterminated string", &[])),
                    Some(c) => s.push(c),
                }
            }
            out.push((Tok::Str(s), pos));
        } else if let Some(&(_, p)) = PUNCT.iter().find(|(ch, _)| *ch == c) {
            cur.bump();
            out.push((Tok::Punct(p), pos));
        } else if c == '-' && cur.peek2() == Some('>') {
            cur.bump();
            cur.bump();
            out.push((Tok::Punct("->"), pos));
        } else {
            // a word runs up to a delimiter or an arrow
            let mut w = String::new();
            while let Some(c) = cur.peek().filter(|&c| is_word_char(c)) {
                if c == '-' && cur.peek2() == Some('>') {
                    break;
                }
                w.push(c);
                cur.bump();
            }
            out.push((Tok::Word(w), pos));
        }
    }
    out.push((
        Tok::End,
        Pos {
            line: cur.line,
            column: cur.column,
        },
    ));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if t.0 != Tok::End {
            self.at += 1;
        }
        t
    }

    fn fail(&self, expected: &[&str]) -> SourceError {
        err(self.pos(), format!("unexpected {}", self.peek().describe()), expected)
    }

    fn punct(&mut self, p: &'static str) -> std::result::Result<(), SourceError> {
        if *self.peek() == Tok::Punct(p) {
            self.bump();
            Ok(())
        } else {
            Err(self.fail(&[&format!("'{p}'")]))
        }
    }

    fn eat(&mut self, p: &'static str) -> bool {
        if *self.peek() == Tok::Punct(p) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn word(&mut self, what: &str) -> std::result::Result<Token, SourceError> {
        match self.peek().clone() {
            Tok::Word(w) => {
                let pos = self.bump().1;
                Ok(Token::at(w, pos))
            }
            _ => Err(self.fail(&[what])),
        }
    }

    /// `v1, v2, ... .`
    fn list(&mut self) -> std::result::Result<Vec<Token>, SourceError> {
        let mut out = vec![self.word("value")?];
        while self.eat(",") {
            out.push(self.word("value")?);
        }
        self.punct(".")?;
        Ok(out)
    }

    fn entry(&mut self) -> std::result::Result<RawEntry, SourceError> {
        let pos = self.pos();
        let args = if self.eat("(") {
            let mut args = Vec::new();
            if !self.eat(")") {
                args.push(self.word("value")?);
                while self.eat(",") {
                    args.push(self.word("value")?);
                }
                if !self.eat(")") {
                    return Err(self.fail(&["','", "')'"]));
                }
            }
            args
        } else {
            vec![self.word("'('")?]
        };
        self.punct("->")?;
        let result = self.word("value")?;
        self.punct(".")?;
        Ok(RawEntry {
            args,
            result,
            pos: Some(pos),
        })
    }

    fn op(&mut self, pos: Pos) -> std::result::Result<RawOp, SourceError> {
        let name = self.word("operation name")?;
        self.punct("/")?;
        let arity_tok = self.word("arity")?;
        let arity = arity_tok.text.parse::<usize>().map_err(|_| {
            err(
                arity_tok.pos.unwrap(),
                format!("invalid arity {:?}", arity_tok.text),
                &["arity"],
            )
        })?;
        self.punct("{")?;
        let mut entries = Vec::new();
        while !self.eat("}") {
            if *self.peek() == Tok::End {
                return Err(self.fail(&["'}'"]));
            }
            entries.push(self.entry()?);
        }
        self.eat(".");
        Ok(RawOp {
            name: name.text,
            arity,
            entries,
            pos: Some(pos),
        })
    }

    fn file(&mut self) -> std::result::Result<RawMatrix, SourceError> {
        let mut name = None;
        let mut values = None;
        let mut designated = None;
        let mut ops = Vec::new();
        loop {
            let pos = self.pos();
            let keyword = match self.peek() {
                Tok::End => break,
                Tok::Word(w) => w.clone(),
                _ => return Err(self.fail(&["logic", "values", "designated", "op"])),
            };
            let twice = |what: &str| err(pos, format!("{what} clause given twice"), &[]);
            match keyword.as_str() {
                "logic" => {
                    self.bump();
                    if name.is_some() {
                        return Err(twice("logic"));
                    }
                    match self.peek().clone() {
                        Tok::Str(s) => {
                            self.bump();
                            name = Some(s);
                        }
                        _ => return Err(self.fail(&["quoted name"])),
                    }
                    self.punct(".")?;
                }
                "values" | "designated" => {
                    self.bump();
                    self.punct(":")?;
                    let list = self.list()?;
                    let slot = if keyword == "values" {
                        &mut values
                    } else {
                        &mut designated
                    };
                    if slot.is_some() {
                        return Err(twice(&keyword));
                    }
                    *slot = Some(list);
                }
                "op" => {
                    self.bump();
                    ops.push(self.op(pos)?);
                }
                _ => return Err(self.fail(&["logic", "values", "designated", "op"])),
            }
        }
        let end = self.pos();
        let missing = |what: &str| err(end, format!("missing {what} clause"), &[]);
        Ok(RawMatrix {
            name: name.ok_or_else(|| missing("logic"))?,
            values: values.ok_or_else(|| missing("values"))?,
            designated: designated.ok_or_else(|| missing("designated"))?,
            ops,
        })
    }
}

/// Parses spec text without checking the matrix invariants.
pub fn parse_raw(text: &str) -> std::result::Result<RawMatrix, SourceError> {
    Parser {
        toks: lex(text)?,
        at: 0,
    }
    .file()
}

/// Parses and validates, returning the warnings alongside the matrix.
pub fn parse_logic_with_report(text: &str) -> Result<(Matrix, ValidationReport)> {
    parse_raw(text)?.build().map_err(Error::InvalidMatrix)
}

pub fn parse_logic(text: &str) -> Result<Matrix> {
    parse_logic_with_report(text).map(|(m, _)| m)
}

/// Canonical text: entries in row-major declaration order.
pub fn serialize_logic(m: &Matrix) -> String {
    let raw = m.to_raw();
    let names = |ts: &[Token]| ts.iter().map(|t| t.text.as_str()).collect::<Vec<_>>().join(", ");
    let mut out = String::new();
    let _ = writeln!(out, "logic \"{}\".", raw.name);
    let _ = writeln!(out, "values: {}.", names(&raw.values));
    let _ = writeln!(out, "designated: {}.", names(&raw.designated));
    for op in &raw.ops {
        let _ = writeln!(out, "\nop {}/{} {{", op.name, op.arity);
        for e in &op.entries {
            if op.arity == 1 {
                let _ = writeln!(out, "  {} -> {}.", e.args[0].text, e.result.text);
            } else {
                let _ = writeln!(out, "  ({}) -> {}.", names(&e.args), e.result.text);
            }
        }
        out.push_str("}\n");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builtins::{build_builtin, build_seven_valued, fc, fde, nc, SevenValuedSpec, BUILTIN_NAMES};

    const BUNDLED_NC: &str = include_str!("../logics/nc.mvl");

    #[test]
    fn bundled_nc() {
        let m = parse_logic(BUNDLED_NC).unwrap();
        assert_eq!(m.len(), 9);
        assert_eq!(m.designated_count(), 3);
        assert_eq!(
            m.signature(),
            [("and".to_string(), 2), ("neg".to_string(), 1), ("or".to_string(), 2)]
        );
        assert_eq!(m, nc());
        assert_eq!(m.name(), "NC");
    }

    #[test]
    fn round_trips() {
        let mut all: Vec<Matrix> = BUILTIN_NAMES.iter().map(|n| build_builtin(n).unwrap()).collect();
        all.extend(SevenValuedSpec::all().into_iter().map(build_seven_valued));
        for m in all {
            let text = serialize_logic(&m);
            let back = parse_logic(&text).unwrap();
            assert_eq!(back, m, "{}", m.name());
            assert_eq!(back.name(), m.name());
            assert_eq!(serialize_logic(&back), text);
        }
        assert_eq!(parse_logic(&serialize_logic(&fc())).unwrap().len(), 16);
    }

    #[test]
    fn one_designated_clause() {
        let text = serialize_logic(&nc());
        let clauses: Vec<&str> = text.lines().filter(|l| l.starts_with("designated")).collect();
        assert_eq!(clauses, ["designated: tf, tu, tt."]);
    }

    #[test]
    fn duplicate_value() {
        let e = parse_logic("logic \"x\". values: a, a, b. designated: a. op neg/1 { a -> b. b -> a. }").unwrap_err();
        let Error::InvalidMatrix(report) = e else { panic!("{e}") };
        assert!(report.errors().any(|i| i.message == "duplicate value a"));
    }

    #[test]
    fn missing_row() {
        let text = serialize_logic(&fde());
        let cut: String = text
            .lines()
            .filter(|l| !l.trim_start().starts_with("(N,") || !in_op(&text, l, "and"))
            .map(|l| format!("{l}\n"))
            .collect();
        let Error::InvalidMatrix(report) = parse_logic(&cut).unwrap_err() else {
            panic!()
        };
        let missing: Vec<&str> = report.errors().map(|i| i.message.as_str()).collect();
        assert_eq!(
            missing,
            [
                "missing entry and(N,B)",
                "missing entry and(N,T)",
                "missing entry and(N,F)",
                "missing entry and(N,N)"
            ]
        );
    }

    /// Whether `line` of `text` sits inside the block of `op`.
    fn in_op(text: &str, line: &str, op: &str) -> bool {
        let mut current = "";
        for l in text.lines() {
            if let Some(rest) = l.strip_prefix("op ") {
                current = rest.split('/').next().unwrap();
            }
            if std::ptr::eq(l, line) {
                return current == op;
            }
        }
        false
    }

    #[test]
    fn syntax_errors() {
        let e = parse_raw("logic \"x\".\nvalues a, b.").unwrap_err();
        assert_eq!((e.line, e.column), (2, 8));
        assert_eq!(e.expected, ["':'"]);
        let e = parse_raw("logic \"x\". values: a. designated: a. op f/1 { a -> a }").unwrap_err();
        assert_eq!(e.expected, ["'.'"]);
        let e = parse_raw("logic \"x").unwrap_err();
        assert_eq!(e.message, "unterminated string");
        let e = parse_raw("values: a.").unwrap_err();
        assert_eq!(e.message, "missing logic clause");
        let e = parse_raw("logic \"x\". logic \"y\".").unwrap_err();
        assert_eq!(e.message, "logic clause given twice");
        let e = parse_raw("logic \"x\". values: a. designated: a. op f/x { }").unwrap_err();
        assert_eq!(e.message, "invalid arity \"x\"");
    }

    #[test]
    fn arrows_and_comments() {
        let text = "# header\nlogic \"t\". # trailing\nvalues: a, b-c.\ndesignated: a.\nop f/1 {a->b-c. b-c->a.}\nop g/2 { (a,a)->a. (a,b-c)->a. (b-c,a) -> a. (b-c, b-c) -> b-c. }\nop k/0 { () -> a. }";
        let m = parse_logic(text).unwrap();
        assert_eq!(m.value_names(), ["a", "b-c"]);
        assert_eq!(m.apply_named("f", &["a"]).unwrap(), "b-c");
        assert_eq!(m.apply_named("f", &["b-c"]).unwrap(), "a");
        assert_eq!(m.apply_named("k", &[]).unwrap(), "a");
        let raw = parse_raw(text).unwrap();
        let arrow_entry = &raw.ops[0].entries[0];
        assert_eq!(arrow_entry.result.pos, Some(Pos { line: 5, column: 12 }));
    }

    #[test]
    fn warnings_are_kept() {
        let text = "logic \"t\". values: a, b. designated: a, a. op f/1 { a -> b. b -> a. a -> b. }";
        let (_, report) = parse_logic_with_report(text).unwrap();
        assert_eq!(report.warnings().count(), 2);
        let bad = "logic \"t\". values: a, b. designated: a. op f/1 { a -> b. b -> a. a -> a. }";
        let Error::InvalidMatrix(report) = parse_logic(bad).unwrap_err() else {
            panic!()
        };
        assert!(report
            .errors()
            .next()
            .unwrap()
            .message
            .starts_with("conflicting entries for f(a)"));
    }
}
