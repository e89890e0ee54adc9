//! Script syntax.
//!
//! ```text
//! script    := (statement (NEWLINE | ';'))*
//! statement := ring | ideal | command | empty
//! ring      := 'ring' field '[' ident (',' ident)* ']' ['order' order]
//! field     := 'QQ' | 'Fp' '(' integer ')'
//! order     := 'grevlex' | 'lex' | 'block' '(' integer ')'
//! ideal     := 'ideal' ident '=' expr (',' expr)*
//! command   := verb argument*
//! ```
//!
//! `#` starts a comment running to the end of the line. Identifiers must be
//! bound before use; a name may be rebound, and each command sees the
//! binding in force on its own line.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use corecalc::poly::parse::{Cursor, Expr, ParseError, ParseErrorKind};
use corecalc::{Field, Ideal, MonomialOrder, Polynomial, Ring};

/// The kinds of arguments a verb takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Slot {
    Ideal,
    Int,
    Poly,
}

/// Every verb with its required and optional argument kinds.
const VERBS: &[(&str, &[Slot], &[Slot])] = &[
    ("groebner", &[Slot::Ideal], &[]),
    ("member", &[Slot::Ideal, Slot::Poly], &[]),
    ("equal", &[Slot::Ideal, Slot::Ideal], &[]),
    ("product", &[Slot::Ideal, Slot::Ideal], &[]),
    ("power", &[Slot::Ideal, Slot::Int], &[]),
    ("colon", &[Slot::Ideal, Slot::Ideal], &[]),
    ("intersect", &[Slot::Ideal, Slot::Ideal], &[]),
    ("dim", &[Slot::Ideal], &[]),
    ("closure", &[Slot::Ideal], &[]),
    ("normal", &[Slot::Ideal], &[Slot::Int]),
    ("adjoint", &[Slot::Ideal, Slot::Int], &[]),
    ("core", &[Slot::Ideal], &[Slot::Int]),
    ("sandwich", &[Slot::Ideal], &[Slot::Int]),
    ("coeff", &[Slot::Ideal], &[Slot::Int]),
    ("verify-power-core", &[Slot::Ideal, Slot::Int], &[Slot::Int]),
    ("verify-ic-core", &[Slot::Ideal], &[Slot::Int]),
    ("graded-core", &[Slot::Int], &[]),
    ("identity", &[Slot::Int], &[]),
];

/// Names of all verbs, in the order above.
pub fn verbs() -> impl Iterator<Item = &'static str> {
    VERBS.iter().map(|v| v.0)
}

/// What went wrong while reading a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScriptErrorKind {
    Syntax(String),
    UnknownIdent(String),
    Arity {
        verb: String,
        expected: String,
        found: usize,
    },
    NoRing,
    InvalidRing(String),
    ZeroDenominator,
    ZeroIdeal,
}

/// A script error at a 1-based line and column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptError {
    pub line: usize,
    pub column: usize,
    pub kind: ScriptErrorKind,
}

impl ScriptError {
    pub fn code(&self) -> &'static str {
        match self.kind {
            ScriptErrorKind::Syntax(_) => "E-SYNTAX",
            ScriptErrorKind::UnknownIdent(_) => "E-UNKNOWN-IDENT",
            ScriptErrorKind::Arity { .. } => "E-ARITY",
            ScriptErrorKind::NoRing => "E-NO-RING",
            ScriptErrorKind::InvalidRing(_) => "E-INVALID-RING",
            ScriptErrorKind::ZeroDenominator => "E-ZERO-DENOMINATOR",
            ScriptErrorKind::ZeroIdeal => "E-EMPTY-IDEAL",
        }
    }

    pub fn message(&self) -> String {
        match &self.kind {
            ScriptErrorKind::Syntax(m) => m.clone(),
            ScriptErrorKind::UnknownIdent(name) => format!("unknown identifier `{name}`"),
            ScriptErrorKind::Arity { verb, expected, found } => {
                format!("`{verb}` takes {expected}, found {found}")
            }
            ScriptErrorKind::NoRing => "no ring declared before this line".into(),
            ScriptErrorKind::InvalidRing(m) => m.clone(),
            ScriptErrorKind::ZeroDenominator => "denominator is zero in this field".into(),
            ScriptErrorKind::ZeroIdeal => "an ideal needs a nonzero generator".into(),
        }
    }
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.column, self.message())
    }
}

impl std::error::Error for ScriptError {}

/// An argument resolved against the bindings in force.
#[derive(Debug, Clone)]
pub enum Arg {
    Ideal { name: String, ideal: Ideal },
    Int(u64),
    Poly { text: String, poly: Polynomial },
}

#[derive(Debug, Clone)]
pub struct Command {
    pub verb: &'static str,
    pub args: Vec<Arg>,
    /// 1-based line of the command.
    pub line: usize,
}

/// The ring, its order and the final bindings of a script.
#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Arc<Ring>,
    pub order: MonomialOrder,
    pub bindings: BTreeMap<String, Ideal>,
}

/// One statement's text with its position in the script.
struct Chunk<'a> {
    text: &'a str,
    line: usize,
    /// 0-based column of the chunk's first character.
    column: usize,
}

/// Splits at newlines and `;`, dropping comments.
fn chunks(text: &str) -> Vec<Chunk<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.split('\n').enumerate() {
        let body = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut column = 0;
        for part in body.split(';') {
            out.push(Chunk {
                text: part,
                line: i + 1,
                column,
            });
            column += part.chars().count() + 1;
        }
    }
    out
}

struct Parser<'a> {
    chunk: &'a Chunk<'a>,
    cur: Cursor<'a>,
}

impl<'a> Parser<'a> {
    fn new(chunk: &'a Chunk<'a>) -> Self {
        Parser {
            chunk,
            cur: Cursor::new(chunk.text),
        }
    }

    fn at(&self, offset: usize, kind: ScriptErrorKind) -> ScriptError {
        ScriptError {
            line: self.chunk.line,
            column: self.chunk.column + offset + 1,
            kind,
        }
    }

    fn here(&mut self, kind: ScriptErrorKind) -> ScriptError {
        self.cur.skip_ws();
        self.at(self.cur.pos(), kind)
    }

    fn expected(&mut self, what: &str) -> ScriptError {
        self.here(ScriptErrorKind::Syntax(format!("expected {what}")))
    }

    fn lift(&self, e: ParseError) -> ScriptError {
        let kind = match e.kind {
            ParseErrorKind::Expected(set) => ScriptErrorKind::Syntax(format!("expected {}", set.join(" or "))),
            ParseErrorKind::UnknownVariable(v) => ScriptErrorKind::UnknownIdent(v),
            ParseErrorKind::ZeroDenominator => ScriptErrorKind::ZeroDenominator,
            ParseErrorKind::ExponentTooLarge => ScriptErrorKind::Syntax("exponent too large".into()),
        };
        self.at(e.offset, kind)
    }

    fn end(&mut self) -> Result<(), ScriptError> {
        self.cur.skip_ws();
        if self.cur.at_end() {
            Ok(())
        } else {
            Err(self.expected("end of statement"))
        }
    }

    fn ring(&mut self) -> Result<(Arc<Ring>, MonomialOrder), ScriptError> {
        let field_at = {
            self.cur.skip_ws();
            self.cur.pos()
        };
        let field = match self.cur.ident() {
            Some((f, _)) if f == "QQ" => Field::Rationals,
            Some((f, _)) if f == "Fp" => {
                self.cur.expect('(', "`(`").map_err(|e| self.lift(e))?;
                let p = self.cur.small_integer("characteristic").map_err(|e| self.lift(e))?;
                self.cur.expect(')', "`)`").map_err(|e| self.lift(e))?;
                Field::prime(p).map_err(|e| self.at(field_at, ScriptErrorKind::InvalidRing(e.to_string())))?
            }
            _ => return Err(self.at(field_at, ScriptErrorKind::Syntax("expected `QQ` or `Fp`".into()))),
        };
        self.cur.expect('[', "`[`").map_err(|e| self.lift(e))?;
        let vars_at = self.cur.pos();
        let mut vars = Vec::new();
        loop {
            match self.cur.ident() {
                Some((v, _)) => vars.push(v),
                None => return Err(self.expected("variable name")),
            }
            if !self.cur.eat(',') {
                break;
            }
        }
        self.cur.expect(']', "`,` or `]`").map_err(|e| self.lift(e))?;
        let ring =
            Ring::new(&vars, field).map_err(|e| self.at(vars_at, ScriptErrorKind::InvalidRing(e.to_string())))?;
        let mut order = MonomialOrder::Grevlex;
        if self.cur.keyword("order") {
            order = match self.cur.ident() {
                Some((o, _)) if o == "grevlex" => MonomialOrder::Grevlex,
                Some((o, _)) if o == "lex" => MonomialOrder::Lex,
                Some((o, _)) if o == "block" => {
                    self.cur.expect('(', "`(`").map_err(|e| self.lift(e))?;
                    let k = self.cur.small_integer("block size").map_err(|e| self.lift(e))?;
                    self.cur.expect(')', "`)`").map_err(|e| self.lift(e))?;
                    MonomialOrder::Block(k as usize)
                }
                _ => return Err(self.expected("`grevlex`, `lex` or `block`")),
            };
        }
        self.end()?;
        Ok((ring, order))
    }

    /// `name = expr, ...` as syntax, resolved once a ring is known.
    fn ideal(&mut self) -> Result<(String, Vec<(Expr, usize)>), ScriptError> {
        let Some((name, _)) = self.cur.ident() else {
            return Err(self.expected("ideal name"));
        };
        self.cur.expect('=', "`=`").map_err(|e| self.lift(e))?;
        let mut gens = Vec::new();
        loop {
            self.cur.skip_ws();
            let at = self.cur.pos();
            gens.push((self.cur.expr().map_err(|e| self.lift(e))?, at));
            if !self.cur.eat(',') {
                break;
            }
        }
        self.end()?;
        Ok((name, gens))
    }

    /// A verb made of identifier characters and dashes.
    fn verb(&mut self) -> Result<Option<(String, usize)>, ScriptError> {
        let Some((mut word, at)) = self.cur.ident() else {
            return Ok(None);
        };
        while self.cur.peek() == Some('-') {
            self.cur.eat('-');
            match self.cur.peek() {
                Some(c) if c.is_ascii_alphabetic() => {
                    let (rest, _) = self.cur.ident().expect("a letter starts an identifier");
                    word.push('-');
                    word.push_str(&rest);
                }
                _ => return Err(self.expected("command")),
            }
        }
        Ok(Some((word, at)))
    }
}

fn describe(required: &[Slot], optional: &[Slot]) -> String {
    let n = required.len();
    let noun = |k: usize| if k == 1 { "argument" } else { "arguments" };
    if optional.is_empty() {
        format!("{n} {}", noun(n))
    } else {
        let m = n + optional.len();
        format!("{n} to {m} {}", noun(m))
    }
}

/// Parses a script into its session and commands.
pub fn parse_session(text: &str) -> Result<(Session, Vec<Command>), ScriptError> {
    let mut ring: Option<(Arc<Ring>, MonomialOrder)> = None;
    let mut bindings: BTreeMap<String, Ideal> = BTreeMap::new();
    let mut commands = Vec::new();
    let no_ring = |p: &Parser<'_>, at: usize| p.at(at, ScriptErrorKind::NoRing);

    for chunk in chunks(text) {
        let mut p = Parser::new(&chunk);
        p.cur.skip_ws();
        if p.cur.at_end() {
            continue;
        }
        let start = p.cur.pos();
        let Some((word, word_at)) = p.verb()? else {
            return Err(p.expected("`ring`, `ideal` or a command"));
        };
        match word.as_str() {
            "ring" => {
                if ring.is_some() {
                    return Err(p.at(start, ScriptErrorKind::Syntax("only one ring per session".into())));
                }
                ring = Some(p.ring()?);
            }
            "ideal" => {
                let (name, gens) = p.ideal()?;
                let Some((r, ord)) = &ring else {
                    return Err(no_ring(&p, start));
                };
                let polys = gens
                    .iter()
                    .map(|(e, _)| e.to_polynomial(r, *ord))
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|e| p.lift(e))?;
                let ideal = Ideal::new(r, polys).map_err(|_| p.at(gens[0].1, ScriptErrorKind::ZeroIdeal))?;
                bindings.insert(name, ideal.with_order(*ord));
            }
            verb => {
                let Some(&(verb, required, optional)) = VERBS.iter().find(|v| v.0 == verb) else {
                    return Err(p.at(
                        word_at,
                        ScriptErrorKind::Syntax(format!("expected `ring`, `ideal` or a command, found `{verb}`")),
                    ));
                };
                let mut args = Vec::new();
                let slots = required.iter().chain(optional.iter());
                for (k, slot) in slots.enumerate() {
                    p.cur.skip_ws();
                    if p.cur.at_end() {
                        if k < required.len() {
                            let found = args.len();
                            return Err(p.here(ScriptErrorKind::Arity {
                                verb: verb.into(),
                                expected: describe(required, optional),
                                found,
                            }));
                        }
                        break;
                    }
                    let at = p.cur.pos();
                    let arg = match slot {
                        Slot::Int => Arg::Int(p.cur.small_integer("integer").map_err(|e| p.lift(e))?),
                        Slot::Ideal => {
                            let Some((name, _)) = p.cur.ident() else {
                                return Err(p.expected("ideal name"));
                            };
                            if ring.is_none() {
                                return Err(no_ring(&p, at));
                            }
                            match bindings.get(&name) {
                                Some(i) => Arg::Ideal { name, ideal: i.clone() },
                                None => return Err(p.at(at, ScriptErrorKind::UnknownIdent(name))),
                            }
                        }
                        Slot::Poly => {
                            let e = p.cur.expr().map_err(|e| p.lift(e))?;
                            let Some((r, ord)) = &ring else {
                                return Err(no_ring(&p, at));
                            };
                            let poly = e.to_polynomial(r, *ord).map_err(|e| p.lift(e))?;
                            let end = p.cur.pos();
                            let text: String = chunk.text.chars().skip(at).take(end - at).collect();
                            Arg::Poly {
                                text: text.trim().to_string(),
                                poly,
                            }
                        }
                    };
                    args.push(arg);
                }
                p.cur.skip_ws();
                if !p.cur.at_end() {
                    return Err(p.here(ScriptErrorKind::Arity {
                        verb: verb.into(),
                        expected: describe(required, optional),
                        found: args.len() + 1,
                    }));
                }
                if ring.is_none() {
                    return Err(no_ring(&p, start));
                }
                commands.push(Command {
                    verb,
                    args,
                    line: chunk.line,
                });
            }
        }
    }
    let Some((ring, order)) = ring else {
        return Err(ScriptError {
            line: 1,
            column: 1,
            kind: ScriptErrorKind::NoRing,
        });
    };
    Ok((Session { ring, order, bindings }, commands))
}
