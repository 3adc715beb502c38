//! Text and JSON input for ideals.
//!
//! Text grammar:
//!
//! ```text
//! input     := [ "vars" names ";" ] [ "cone" vectors ";" ] generators
//! generators:= generator ( ("," | newline) generator )*
//! generator := monomial | vector
//! monomial  := "1" | factor ( ["*"] factor )*
//! factor    := name [ "^" integer ]
//! vector    := "(" integer ("," integer)* ")"  |  "[" ... "]"
//! ```
//!
//! A name is one letter followed by optional digits, so `xy` reads as `x*y`
//! and `x1x2` as `x1*x2`; the words `vars` and `cone` are reserved. Without a `vars` clause the variables are inferred:
//! letters from `x, y, z, w` give the first `k` of that list, indexed names
//! `x1, x2, ...` give `x1..xd` with `d` the largest index, and bare vectors
//! give `x1..xd` with `d` their length.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::CliError;

const LETTERS: [&str; 4] = ["x", "y", "z", "w"];
const KEYWORDS: [&str; 2] = ["vars", "cone"];

/// A parsed ideal: variable names, exponent vectors, and an optional cone.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdealSpec {
    pub vars: Vec<String>,
    pub gens: Vec<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cone: Option<Vec<Vec<i64>>>,
}

impl IdealSpec {
    pub fn dim(&self) -> usize {
        self.vars.len()
    }

    fn monomial_text(&self, g: &[i64]) -> String {
        let factors: Vec<String> = g
            .iter()
            .zip(&self.vars)
            .filter(|(e, _)| **e != 0)
            .map(|(&e, v)| {
                if e == 1 {
                    v.clone()
                } else {
                    format!("{v}^{e}")
                }
            })
            .collect();
        if factors.is_empty() {
            "1".to_string()
        } else {
            factors.join("*")
        }
    }
}

fn vector_text(v: &[i64]) -> String {
    let parts: Vec<String> = v.iter().map(i64::to_string).collect();
    format!("({})", parts.join(","))
}

/// Canonical text form; parsing it gives back the same spec.
impl fmt::Display for IdealSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "vars {};", self.vars.join(","))?;
        if let Some(cone) = &self.cone {
            let rays: Vec<String> = cone.iter().map(|r| vector_text(r)).collect();
            write!(f, " cone {};", rays.join(","))?;
        }
        let as_vectors = self.gens.iter().flatten().any(|&e| e < 0);
        let gens: Vec<String> = self
            .gens
            .iter()
            .map(|g| {
                if as_vectors {
                    vector_text(g)
                } else {
                    self.monomial_text(g)
                }
            })
            .collect();
        write!(f, " {}", gens.join(", "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Int(i64),
    Star,
    Caret,
    Minus,
    Comma,
    Newline,
    Semi,
    Open(char),
    Close(char),
}

fn parse_error(message: impl Into<String>, position: usize) -> CliError {
    CliError::Parse {
        message: message.into(),
        position,
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, usize)>, CliError> {
    let bytes: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < bytes.len() {
        let (pos, c) = bytes[k];
        let tok = match c {
            ' ' | '\t' | '\r' => {
                k += 1;
                continue;
            }
            '\n' => Tok::Newline,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            ',' => Tok::Comma,
            ';' => Tok::Semi,
            '(' | '[' => Tok::Open(c),
            ')' | ']' => Tok::Close(c),
            c if c.is_ascii_digit() => {
                let mut end = k;
                while end < bytes.len() && bytes[end].1.is_ascii_digit() {
                    end += 1;
                }
                let stop = bytes.get(end).map_or(text.len(), |b| b.0);
                let value = text[pos..stop]
                    .parse()
                    .map_err(|_| parse_error("integer out of range", pos))?;
                out.push((Tok::Int(value), pos));
                k = end;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let word: String = text[pos..]
                    .chars()
                    .take_while(char::is_ascii_alphabetic)
                    .collect();
                if KEYWORDS.contains(&word.as_str()) {
                    out.push((Tok::Name(word), pos));
                    k += 4;
                    continue;
                }
                let mut end = k + 1;
                while end < bytes.len() && bytes[end].1.is_ascii_digit() {
                    end += 1;
                }
                let stop = bytes.get(end).map_or(text.len(), |b| b.0);
                out.push((Tok::Name(text[pos..stop].to_string()), pos));
                k = end;
                continue;
            }
            other => return Err(parse_error(format!("unexpected character '{other}'"), pos)),
        };
        out.push((tok, pos));
        k += 1;
    }
    Ok(out)
}

/// A generator before variables are resolved.
enum RawGen {
    Monomial(Vec<(String, i64, usize)>),
    Vector(Vec<i64>, usize),
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|t| t.0.clone());
        self.at += 1;
        t
    }

    fn skip_newlines(&mut self) {
        while self.peek() == Some(&Tok::Newline) {
            self.at += 1;
        }
    }

    fn keyword(&mut self, word: &str) -> bool {
        self.skip_newlines();
        if matches!(self.peek(), Some(Tok::Name(n)) if n == word) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), CliError> {
        let pos = self.pos();
        match self.bump() {
            Some(t) if t == tok => Ok(()),
            _ => Err(parse_error(format!("expected {what}"), pos)),
        }
    }

    fn signed_int(&mut self) -> Result<i64, CliError> {
        let pos = self.pos();
        let negative = self.peek() == Some(&Tok::Minus);
        if negative {
            self.at += 1;
        }
        match self.bump() {
            Some(Tok::Int(v)) => Ok(if negative { -v } else { v }),
            _ => Err(parse_error("expected an integer", pos)),
        }
    }

    fn vector(&mut self) -> Result<(Vec<i64>, usize), CliError> {
        let pos = self.pos();
        let close = match self.bump() {
            Some(Tok::Open('(')) => ')',
            Some(Tok::Open('[')) => ']',
            _ => return Err(parse_error("expected '(' or '['", pos)),
        };
        let mut v = vec![self.signed_int()?];
        while self.peek() == Some(&Tok::Comma) {
            self.at += 1;
            v.push(self.signed_int()?);
        }
        self.expect(Tok::Close(close), &format!("'{close}'"))?;
        Ok((v, pos))
    }

    fn names(&mut self) -> Result<Vec<String>, CliError> {
        let mut names = Vec::new();
        loop {
            let pos = self.pos();
            match self.bump() {
                Some(Tok::Name(n)) => {
                    if names.contains(&n) {
                        return Err(parse_error(format!("variable '{n}' declared twice"), pos));
                    }
                    names.push(n);
                }
                _ => return Err(parse_error("expected a variable name", pos)),
            }
            if self.peek() != Some(&Tok::Comma) {
                return Ok(names);
            }
            self.at += 1;
        }
    }

    fn monomial(&mut self) -> Result<RawGen, CliError> {
        let mut factors = Vec::new();
        if let Some(Tok::Int(v)) = self.peek() {
            let pos = self.pos();
            if *v != 1 {
                return Err(parse_error(
                    "coefficients other than 1 are not allowed",
                    pos,
                ));
            }
            self.at += 1;
            if matches!(self.peek(), None | Some(Tok::Comma) | Some(Tok::Newline)) {
                return Ok(RawGen::Monomial(factors));
            }
            if self.peek() == Some(&Tok::Star) {
                self.at += 1;
            }
        }
        loop {
            let pos = self.pos();
            let name = match self.bump() {
                Some(Tok::Name(n)) => n,
                _ => return Err(parse_error("expected a variable", pos)),
            };
            let mut exp = 1;
            if self.peek() == Some(&Tok::Caret) {
                self.at += 1;
                let epos = self.pos();
                match self.bump() {
                    Some(Tok::Int(v)) => exp = v,
                    Some(Tok::Minus) => return Err(parse_error("negative exponent", epos)),
                    _ => return Err(parse_error("expected an exponent", epos)),
                }
            }
            factors.push((name, exp, pos));
            match self.peek() {
                Some(Tok::Star) => {
                    self.at += 1;
                }
                Some(Tok::Name(_)) => {}
                _ => return Ok(RawGen::Monomial(factors)),
            }
        }
    }

    fn generator(&mut self) -> Result<RawGen, CliError> {
        match self.peek() {
            Some(Tok::Open(_)) => {
                let (v, pos) = self.vector()?;
                Ok(RawGen::Vector(v, pos))
            }
            _ => self.monomial(),
        }
    }
}

/// Resolves an inferred variable list from the names used.
fn infer_vars(
    used: &[(String, usize)],
    vector_len: Option<usize>,
) -> Result<Vec<String>, CliError> {
    if used.is_empty() {
        return match vector_len {
            Some(d) => Ok((1..=d).map(|i| format!("x{i}")).collect()),
            None => Err(parse_error(
                "cannot infer variables; declare them with 'vars'",
                0,
            )),
        };
    }
    let letter_rank = |n: &str| LETTERS.iter().position(|l| *l == n);
    let index = |n: &str| -> Option<usize> {
        n.strip_prefix('x')
            .filter(|s| !s.is_empty())
            .and_then(|s| s.parse().ok())
            .filter(|&i| i > 0)
    };
    let vars = if used.iter().all(|(n, _)| letter_rank(n).is_some()) {
        let d = used
            .iter()
            .filter_map(|(n, _)| letter_rank(n))
            .max()
            .unwrap()
            + 1;
        LETTERS[..d]
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
    } else if used.iter().all(|(n, _)| index(n).is_some()) {
        let d = used.iter().filter_map(|(n, _)| index(n)).max().unwrap();
        (1..=d).map(|i| format!("x{i}")).collect()
    } else {
        let (bad, pos) = used
            .iter()
            .find(|(n, _)| letter_rank(n).is_none() && index(n).is_none())
            .or_else(|| used.iter().find(|(n, _)| index(n).is_some()))
            .unwrap();
        return Err(parse_error(
            format!("unknown symbol '{bad}'; use x,y,z,w or x1..xd, or declare with 'vars'"),
            *pos,
        ));
    };
    if let Some(d) = vector_len {
        if d != vars.len() {
            return Err(parse_error(
                format!(
                    "vector of length {d} mixed with {} inferred variables",
                    vars.len()
                ),
                0,
            ));
        }
    }
    Ok(vars)
}

/// Parses the text grammar above.
pub fn parse_ideal(text: &str) -> Result<IdealSpec, CliError> {
    let mut p = Parser {
        toks: tokenize(text)?,
        at: 0,
        end: text.len(),
    };
    let declared = if p.keyword("vars") {
        let names = p.names()?;
        p.expect(Tok::Semi, "';' after the variable list")?;
        Some(names)
    } else {
        None
    };
    let cone = if p.keyword("cone") {
        let mut rays = vec![p.vector()?.0];
        while p.peek() == Some(&Tok::Comma) {
            p.at += 1;
            rays.push(p.vector()?.0);
        }
        p.expect(Tok::Semi, "';' after the cone rays")?;
        Some(rays)
    } else {
        None
    };

    let mut raw = Vec::new();
    loop {
        p.skip_newlines();
        if p.peek().is_none() {
            break;
        }
        raw.push(p.generator()?);
        p.skip_newlines_or_comma()?;
    }
    if raw.is_empty() {
        return Err(parse_error("empty generator list", text.len()));
    }

    let mut vector_len = None;
    for g in &raw {
        if let RawGen::Vector(v, pos) = g {
            match vector_len {
                None => vector_len = Some(v.len()),
                Some(d) if d != v.len() => {
                    return Err(parse_error(
                        format!("expected a vector of length {d}"),
                        *pos,
                    ));
                }
                _ => {}
            }
        }
    }
    if let Some(c) = &cone {
        let d = c[0].len();
        if c.iter().any(|r| r.len() != d) {
            return Err(parse_error("cone rays differ in length", 0));
        }
        vector_len = vector_len.or(Some(d));
    }
    let used: Vec<(String, usize)> = raw
        .iter()
        .flat_map(|g| match g {
            RawGen::Monomial(f) => f.iter().map(|(n, _, pos)| (n.clone(), *pos)).collect(),
            RawGen::Vector(..) => Vec::new(),
        })
        .collect();
    let vars = match declared {
        Some(v) => v,
        None => infer_vars(&used, vector_len)?,
    };

    let mut gens = Vec::with_capacity(raw.len());
    for g in raw {
        gens.push(match g {
            RawGen::Vector(v, pos) => {
                if v.len() != vars.len() {
                    return Err(parse_error(
                        format!("expected a vector of length {}", vars.len()),
                        pos,
                    ));
                }
                v
            }
            RawGen::Monomial(factors) => {
                let mut e = vec![0; vars.len()];
                for (name, exp, pos) in factors {
                    let Some(i) = vars.iter().position(|v| *v == name) else {
                        return Err(parse_error(format!("unknown symbol '{name}'"), pos));
                    };
                    e[i] += exp;
                }
                e
            }
        });
    }
    if let Some(c) = &cone {
        if c[0].len() != vars.len() {
            return Err(parse_error(
                format!("cone rays must have length {}", vars.len()),
                0,
            ));
        }
    }
    Ok(IdealSpec { vars, gens, cone })
}

impl Parser {
    fn skip_newlines_or_comma(&mut self) -> Result<(), CliError> {
        match self.peek() {
            None => Ok(()),
            Some(Tok::Comma) | Some(Tok::Newline) => {
                self.at += 1;
                Ok(())
            }
            Some(_) => Err(parse_error("expected ',' between generators", self.pos())),
        }
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonGen {
    Vector(Vec<i64>),
    Expr(String),
}

#[derive(Deserialize)]
struct JsonSpec {
    #[serde(default)]
    vars: Option<Vec<String>>,
    gens: Vec<JsonGen>,
    #[serde(default)]
    cone: Option<Vec<Vec<i64>>>,
}

#[derive(Deserialize)]
struct Wrapped {
    ideal: JsonSpec,
}

/// Reads a JSON ideal: either `{"vars", "gens", "cone"?}` or any report that
/// carries such an object under `"ideal"`. Generators may be exponent arrays
/// or monomial strings.
pub fn parse_json(text: &str) -> Result<IdealSpec, CliError> {
    let spec: JsonSpec = match serde_json::from_str::<Wrapped>(text) {
        Ok(w) => w.ideal,
        Err(_) => serde_json::from_str(text)
            .map_err(|e| parse_error(e.to_string(), json_offset(text, &e)))?,
    };
    // rebuild as text so both inputs go through the same checks
    let mut src = String::new();
    if let Some(vars) = &spec.vars {
        src.push_str(&format!("vars {};", vars.join(",")));
    }
    if let Some(cone) = &spec.cone {
        let rays: Vec<String> = cone.iter().map(|r| vector_text(r)).collect();
        src.push_str(&format!(" cone {};", rays.join(",")));
    }
    let gens: Vec<String> = spec
        .gens
        .iter()
        .map(|g| match g {
            JsonGen::Vector(v) => vector_text(v),
            JsonGen::Expr(s) => s.clone(),
        })
        .collect();
    src.push(' ');
    src.push_str(&gens.join(", "));
    parse_ideal(&src).map_err(|e| match e {
        CliError::Parse { message, .. } => CliError::Parse {
            message,
            position: 0,
        },
        other => other,
    })
}

fn json_offset(text: &str, e: &serde_json::Error) -> usize {
    text.lines()
        .take(e.line().saturating_sub(1))
        .map(|l| l.len() + 1)
        .sum::<usize>()
        + e.column().saturating_sub(1)
}

/// JSON when the input starts with `{`, text otherwise.
pub fn parse_input(text: &str) -> Result<IdealSpec, CliError> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_ideal(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(text: &str) -> Vec<Vec<i64>> {
        parse_ideal(text).unwrap().gens
    }

    fn position(text: &str) -> usize {
        match parse_ideal(text).unwrap_err() {
            CliError::Parse { position, .. } => position,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn letters_are_inferred() {
        let s = parse_ideal("y^4, x^2*y, x*y^2").unwrap();
        assert_eq!(s.vars, ["x", "y"]);
        assert_eq!(s.gens, [vec![0, 4], vec![2, 1], vec![1, 2]]);
        assert_eq!(
            gens("xy, yz, zx"),
            [vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]
        );
        assert_eq!(gens("x^2y z"), [vec![2, 1, 1]]);
    }

    #[test]
    fn indexed_names_are_inferred() {
        let s = parse_ideal("x1*x2, x2*x3, x1*x3").unwrap();
        assert_eq!(s.vars, ["x1", "x2", "x3"]);
        assert_eq!(s.gens, [vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]);
        assert_eq!(gens("x1x4"), [vec![1, 0, 0, 1]]);
    }

    #[test]
    fn unit_and_vectors() {
        assert_eq!(gens("x^0"), [vec![0]]);
        assert_eq!(gens("vars a,b; 1, a*b"), [vec![0, 0], vec![1, 1]]);
        assert_eq!(gens("(2,1), [1, 2]"), [vec![2, 1], vec![1, 2]]);
        assert_eq!(
            gens("y^4\nx^2 y\n\nx y^2\n"),
            [vec![0, 4], vec![2, 1], vec![1, 2]]
        );
        let s = parse_ideal("vars x,y; cone (1,0),(1,2); (2,1),(1,2)").unwrap();
        assert_eq!(s.cone, Some(vec![vec![1, 0], vec![1, 2]]));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(position("x^2, q*y"), 5);
        assert_eq!(position("x^-1"), 2);
        assert_eq!(position(""), 0);
        assert_eq!(position("vars x,y; x*z"), 12);
        assert_eq!(position("x + y"), 2);
        assert_eq!(position("(1,2), (1,2,3)"), 7);
        assert_eq!(position("3*x"), 0);
    }

    #[test]
    fn canonical_print_round_trips() {
        for text in [
            "y^4, x^2*y, x*y^2",
            "x1*x2, x2*x3, x1*x3",
            "vars a,b; 1",
            "vars x,y; cone (1,0),(1,2); (2,1),(1,2)",
            "vars x,y; cone (1,0),(-1,2); (-1,2),(3,1)",
        ] {
            let s = parse_ideal(text).unwrap();
            let printed = s.to_string();
            assert_eq!(parse_ideal(&printed).unwrap(), s, "{printed}");
        }
        assert_eq!(
            parse_ideal("y^4, x^2*y").unwrap().to_string(),
            "vars x,y; y^4, x^2*y"
        );
    }

    #[test]
    fn json_forms() {
        let a = parse_json(r#"{"vars":["x","y"],"gens":[[0,4],"x^2*y",[1,2]]}"#).unwrap();
        assert_eq!(a.gens, [vec![0, 4], vec![2, 1], vec![1, 2]]);
        let b =
            parse_json(r#"{"version":1,"ideal":{"vars":["x","y"],"gens":[[0,4]]},"j":0}"#).unwrap();
        assert_eq!(b.gens, [vec![0, 4]]);
        assert!(matches!(
            parse_json(r#"{"gens": 3}"#),
            Err(CliError::Parse { .. })
        ));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn print_then_parse(
                dim in 1usize..5,
                raw in prop::collection::vec(prop::collection::vec(0i64..7, 4), 1..6),
            ) {
                let vars: Vec<String> = (1..=dim).map(|i| format!("x{i}")).collect();
                let gens = raw.into_iter().map(|g| g[..dim].to_vec()).collect();
                let spec = IdealSpec { vars, gens, cone: None };
                prop_assert_eq!(parse_ideal(&spec.to_string()).unwrap(), spec);
            }
        }
    }
}
