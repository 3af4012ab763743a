//! Problem files: one declaration per line.
//!
//! ```text
//! outcome <id>
//! utility <id> = <hyperreal literal>
//! lottery <id> = <rat> <outcome> [+ <rat> <outcome>]*
//! state <id>
//! act <id> = { <state>: <lottery or outcome>, ... }
//! measure = { <state>: <rat>, ... }
//! compare <lottery> <lottery>
//! check <lottery> <lottery> <lottery>
//! ```
//!
//! `#` starts a comment. Names must be declared before they are used; where
//! a lottery is expected an outcome name stands for its point mass.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::error::Error;
use crate::hyperreal::{parse_literal, Hyperreal, Rational};
use crate::mixture::{Act, Lottery, LotterySpace, Outcome, State};
use crate::preference::UtilityModel;
use crate::subjective::ProbabilityMeasure;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ProblemError {
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {message}")]
    Resolution { line: usize, message: String },
}

impl ProblemError {
    /// 2 for syntax errors, 1 for unresolved or invalid declarations.
    pub fn exit_code(&self) -> i32 {
        match self {
            ProblemError::Parse { .. } => 2,
            ProblemError::Resolution { .. } => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Sym(char),
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) | Tok::Number(s) => write!(f, "'{s}'"),
            Tok::Sym(c) => write!(f, "'{c}'"),
        }
    }
}

/// Tokens of one line with their 1-based columns.
struct Line {
    number: usize,
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end_column: usize,
}

fn is_ident_start(c: char) -> bool {
    c.is_alphabetic() || c == '_'
}

fn is_ident_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_' || c == '\''
}

impl Line {
    /// Tokenizes `text`. Utility lines stop after their `=`; the literal that
    /// follows has its own grammar.
    fn lex(number: usize, text: &str) -> Result<Line, ProblemError> {
        let chars: Vec<char> = text.chars().collect();
        let utility = text.split_whitespace().next() == Some("utility");
        let mut toks = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            if utility && toks.last().is_some_and(|(_, t)| *t == Tok::Sym('=')) {
                let rest = chars[i..].iter().position(|c| !c.is_whitespace());
                return Ok(Line {
                    number,
                    toks,
                    pos: 0,
                    end_column: i + rest.unwrap_or(0) + 1,
                });
            }
            let c = chars[i];
            let start = i;
            if c.is_whitespace() {
                i += 1;
            } else if is_ident_start(c) {
                while i < chars.len() && is_ident_char(chars[i]) {
                    i += 1;
                }
                toks.push((start + 1, Tok::Ident(chars[start..i].iter().collect())));
            } else if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
            {
                i += 1;
                while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                    i += 1;
                }
                toks.push((start + 1, Tok::Number(chars[start..i].iter().collect())));
            } else if "=+{}:,".contains(c) {
                i += 1;
                toks.push((start + 1, Tok::Sym(c)));
            } else {
                return Err(ProblemError::Parse {
                    line: number,
                    column: start + 1,
                    message: format!("unexpected character '{c}'"),
                });
            }
        }
        Ok(Line {
            number,
            toks,
            pos: 0,
            end_column: chars.len() + 1,
        })
    }

    fn column(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_column, |(c, _)| *c)
    }

    fn error(&self, message: impl Into<String>) -> ProblemError {
        ProblemError::Parse {
            line: self.number,
            column: self.column(),
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn next(&mut self, expected: &str) -> Result<Tok, ProblemError> {
        match self.toks.get(self.pos) {
            Some((_, t)) => {
                self.pos += 1;
                Ok(t.clone())
            }
            None => Err(self.error(format!("expected {expected}, found end of line"))),
        }
    }

    fn ident(&mut self) -> Result<String, ProblemError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(t) => Err(self.error(format!("expected a name, found {t}"))),
            None => Err(self.error("expected a name, found end of line")),
        }
    }

    fn number(&mut self) -> Result<Rational, ProblemError> {
        let col = self.column();
        match self.next("a number")? {
            Tok::Number(s) => s.parse().map_err(|_| ProblemError::Parse {
                line: self.number,
                column: col,
                message: format!("invalid number '{s}'"),
            }),
            t => {
                self.pos -= 1;
                Err(self.error(format!("expected a number, found {t}")))
            }
        }
    }

    fn sym(&mut self, c: char) -> Result<(), ProblemError> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == c => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.error(format!("expected '{c}', found {t}"))),
            None => Err(self.error(format!("expected '{c}', found end of line"))),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn finish(&self) -> Result<(), ProblemError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.error(format!("unexpected {t}"))),
        }
    }

    /// `{ key: <value>, ... }` with an arbitrary value parser.
    fn braced<T>(
        &mut self,
        mut value: impl FnMut(&mut Self) -> Result<T, ProblemError>,
    ) -> Result<Vec<(String, T)>, ProblemError> {
        self.sym('{')?;
        let mut out = Vec::new();
        if self.eat('}') {
            return Ok(out);
        }
        loop {
            let key = self.ident()?;
            self.sym(':')?;
            out.push((key, value(self)?));
            if self.eat('}') {
                return Ok(out);
            }
            self.sym(',')?;
        }
    }
}

/// A named query line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Query {
    Compare(String, String),
    Check(String, String, String),
}

/// A fully resolved problem.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ProblemFile {
    outcomes: Vec<Outcome>,
    utilities: BTreeMap<Outcome, Hyperreal>,
    lotteries: Vec<(String, Lottery)>,
    states: Vec<State>,
    acts: Vec<(String, Act)>,
    measure: Option<ProbabilityMeasure>,
    queries: Vec<Query>,
}

impl ProblemFile {
    pub fn outcomes(&self) -> &[Outcome] {
        &self.outcomes
    }

    pub fn lotteries(&self) -> &[(String, Lottery)] {
        &self.lotteries
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn acts(&self) -> &[(String, Act)] {
        &self.acts
    }

    pub fn measure(&self) -> Option<&ProbabilityMeasure> {
        self.measure.as_ref()
    }

    pub fn queries(&self) -> &[Query] {
        &self.queries
    }

    /// A declared lottery by name, or the point mass of a declared outcome.
    pub fn lottery(&self, name: &str) -> Option<Lottery> {
        self.lotteries
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, l)| l.clone())
            .or_else(|| {
                self.outcomes
                    .iter()
                    .find(|o| o.id() == name)
                    .map(|o| Lottery::point_mass(o.clone()))
            })
    }

    /// Utility model over all declared outcomes.
    pub fn model(&self) -> Result<UtilityModel, Error> {
        let entries = self
            .outcomes
            .iter()
            .map(|o| match self.utilities.get(o) {
                Some(u) => Ok((o.clone(), u.clone())),
                None => Err(Error::PreconditionViolated(format!(
                    "outcome '{o}' has no utility"
                ))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        UtilityModel::new(entries)
    }

    /// The simplex over the declared outcomes.
    pub fn space(&self) -> Result<LotterySpace, Error> {
        LotterySpace::simplex(self.outcomes.clone())
    }

    /// The same problem with utilities replaced by `m`.
    pub fn with_model(&self, m: &UtilityModel) -> Self {
        let mut out = self.clone();
        out.utilities = m.iter().map(|(o, u)| (o.clone(), u.clone())).collect();
        out
    }
}

fn write_lottery(f: &mut fmt::Formatter<'_>, l: &Lottery) -> fmt::Result {
    for (i, (o, w)) in l.iter().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        write!(f, "{w} {o}")?;
    }
    Ok(())
}

impl fmt::Display for ProblemFile {
    /// Re-parseable text, one declaration per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            writeln!(f, "outcome {o}")?;
        }
        for o in &self.outcomes {
            if let Some(u) = self.utilities.get(o) {
                writeln!(f, "utility {o} = {u}")?;
            }
        }
        for (name, l) in &self.lotteries {
            write!(f, "lottery {name} = ")?;
            write_lottery(f, l)?;
            writeln!(f)?;
        }
        for s in &self.states {
            writeln!(f, "state {s}")?;
        }
        for (name, a) in &self.acts {
            write!(f, "act {name} = {{ ")?;
            for (i, s) in self.states.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                let l = a.get(s).expect("acts cover all states");
                let label = self
                    .lotteries
                    .iter()
                    .find(|(_, x)| x == l)
                    .map(|(n, _)| n.clone())
                    .or_else(|| {
                        let mut support = l.support();
                        match (support.next(), support.next()) {
                            (Some(o), None) => Some(o.id().to_string()),
                            _ => None,
                        }
                    })
                    .expect("act values are declared lotteries or outcomes");
                write!(f, "{s}: {label}")?;
            }
            writeln!(f, " }}")?;
        }
        if let Some(m) = &self.measure {
            f.write_str("measure = { ")?;
            for (i, (s, w)) in m.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{s}: {w}")?;
            }
            writeln!(f, " }}")?;
        }
        for q in &self.queries {
            match q {
                Query::Compare(a, b) => writeln!(f, "compare {a} {b}")?,
                Query::Check(p, q, r) => writeln!(f, "check {p} {q} {r}")?,
            }
        }
        Ok(())
    }
}

struct Builder {
    problem: ProblemFile,
}

impl Builder {
    fn resolve_err(line: usize, message: impl Into<String>) -> ProblemError {
        ProblemError::Resolution {
            line,
            message: message.into(),
        }
    }

    fn outcome(&self, line: usize, name: &str) -> Result<Outcome, ProblemError> {
        self.problem
            .outcomes
            .iter()
            .find(|o| o.id() == name)
            .cloned()
            .ok_or_else(|| Self::resolve_err(line, format!("unknown outcome '{name}'")))
    }

    fn state(&self, line: usize, name: &str) -> Result<State, ProblemError> {
        self.problem
            .states
            .iter()
            .find(|s| s.id() == name)
            .cloned()
            .ok_or_else(|| Self::resolve_err(line, format!("unknown state '{name}'")))
    }

    fn lottery(&self, line: usize, name: &str) -> Result<Lottery, ProblemError> {
        self.problem
            .lottery(name)
            .ok_or_else(|| Self::resolve_err(line, format!("unknown lottery '{name}'")))
    }

    fn name_taken(&self, name: &str) -> bool {
        self.problem.outcomes.iter().any(|o| o.id() == name)
            || self.problem.lotteries.iter().any(|(n, _)| n == name)
    }

    fn declaration(&mut self, l: &mut Line, content: &str) -> Result<(), ProblemError> {
        let n = l.number;
        let keyword = l.ident()?;
        match keyword.as_str() {
            "outcome" => {
                let id = l.ident()?;
                l.finish()?;
                if self.name_taken(&id) {
                    return Err(Self::resolve_err(n, format!("name '{id}' declared twice")));
                }
                self.problem.outcomes.push(Outcome::new(id));
            }
            "utility" => {
                let id = l.ident()?;
                let o = self.outcome(n, &id)?;
                if self.problem.utilities.contains_key(&o) {
                    return Err(Self::resolve_err(
                        n,
                        format!("utility of '{id}' declared twice"),
                    ));
                }
                l.sym('=')?;
                let column = l.column();
                let literal: String = content.chars().skip(column - 1).collect();
                let value = parse_literal(&literal).map_err(|e| ProblemError::Parse {
                    line: n,
                    column: column + e.position,
                    message: e.message,
                })?;
                self.problem.utilities.insert(o, value);
            }
            "lottery" => {
                let id = l.ident()?;
                l.sym('=')?;
                let mut entries = Vec::new();
                loop {
                    let w = match l.peek() {
                        Some(Tok::Ident(_)) if entries.is_empty() => {
                            Rational::from_integer(1.into())
                        }
                        _ => l.number()?,
                    };
                    let name = l.ident()?;
                    entries.push((self.outcome(n, &name)?, w));
                    if !l.eat('+') {
                        break;
                    }
                }
                l.finish()?;
                if self.name_taken(&id) {
                    return Err(Self::resolve_err(n, format!("name '{id}' declared twice")));
                }
                let lot = Lottery::new(entries).map_err(|e| Self::resolve_err(n, e.to_string()))?;
                self.problem.lotteries.push((id, lot));
            }
            "state" => {
                let id = l.ident()?;
                l.finish()?;
                if self.problem.states.iter().any(|s| s.id() == id) {
                    return Err(Self::resolve_err(n, format!("state '{id}' declared twice")));
                }
                if !self.problem.acts.is_empty() || self.problem.measure.is_some() {
                    return Err(Self::resolve_err(
                        n,
                        "states must be declared before acts and the measure",
                    ));
                }
                self.problem.states.push(State::new(id));
            }
            "act" => {
                let id = l.ident()?;
                l.sym('=')?;
                let entries = l.braced(|l| l.ident())?;
                l.finish()?;
                if self.problem.acts.iter().any(|(a, _)| *a == id) {
                    return Err(Self::resolve_err(n, format!("act '{id}' declared twice")));
                }
                let mut assignment = Vec::new();
                for (s, lot) in entries {
                    let s = self.state(n, &s)?;
                    if assignment.iter().any(|(x, _)| *x == s) {
                        return Err(Self::resolve_err(n, format!("state '{s}' assigned twice")));
                    }
                    assignment.push((s, self.lottery(n, &lot)?));
                }
                if let Some(s) = self
                    .problem
                    .states
                    .iter()
                    .find(|s| !assignment.iter().any(|(x, _)| x == *s))
                {
                    return Err(Self::resolve_err(
                        n,
                        format!("act '{id}' misses state '{s}'"),
                    ));
                }
                let act = Act::new(assignment).map_err(|e| Self::resolve_err(n, e.to_string()))?;
                self.problem.acts.push((id, act));
            }
            "measure" => {
                l.sym('=')?;
                let entries = l.braced(|l| l.number())?;
                l.finish()?;
                if self.problem.measure.is_some() {
                    return Err(Self::resolve_err(n, "measure declared twice"));
                }
                let mut weights = Vec::new();
                for (s, w) in entries {
                    weights.push((self.state(n, &s)?, w));
                }
                if weights.len() != self.problem.states.len() {
                    return Err(Self::resolve_err(n, "measure must weigh every state"));
                }
                let m = ProbabilityMeasure::new(weights)
                    .map_err(|e| Self::resolve_err(n, e.to_string()))?;
                self.problem.measure = Some(m);
            }
            "compare" => {
                let (a, b) = (l.ident()?, l.ident()?);
                l.finish()?;
                self.lottery(n, &a)?;
                self.lottery(n, &b)?;
                self.problem.queries.push(Query::Compare(a, b));
            }
            "check" => {
                let (p, q, r) = (l.ident()?, l.ident()?, l.ident()?);
                l.finish()?;
                for x in [&p, &q, &r] {
                    self.lottery(n, x)?;
                }
                self.problem.queries.push(Query::Check(p, q, r));
            }
            other => {
                l.pos -= 1;
                return Err(l.error(format!("unknown declaration '{other}'")));
            }
        }
        Ok(())
    }
}

/// Parses and resolves a problem file.
pub fn parse_problem(text: &str) -> Result<ProblemFile, ProblemError> {
    let mut b = Builder {
        problem: ProblemFile::default(),
    };
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut line = Line::lex(number, content)?;
        if line.toks.is_empty() {
            continue;
        }
        b.declaration(&mut line, content)?;
    }
    Ok(b.problem)
}
