//! First-order formulas over the vocabulary of graphs, with a small macro
//! layer for degrees and distinctness.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DegCmp {
    Eq,
    Ge,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Const(bool),
    Edge(String, String),
    Eq(String, String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
    /// `deg(x) = k` or `deg(x) >= k`.
    Deg(String, DegCmp, u32),
    Distinct(Vec<String>),
    /// `notin(x, {y1, ..., yk})`.
    NotIn(String, Vec<String>),
}

impl Formula {
    pub fn edge(a: &str, b: &str) -> Formula {
        Formula::Edge(a.into(), b.into())
    }

    pub fn eq(a: &str, b: &str) -> Formula {
        Formula::Eq(a.into(), b.into())
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &str, body: Formula) -> Formula {
        Formula::Forall(v.into(), Box::new(body))
    }

    pub fn exists(v: &str, body: Formula) -> Formula {
        Formula::Exists(v.into(), Box::new(body))
    }

    /// Conjunction of all parts, `true` when empty.
    pub fn all(parts: impl IntoIterator<Item = Formula>) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Const(true))
    }

    pub fn is_macro_free(&self) -> bool {
        match self {
            Formula::Deg(..) | Formula::Distinct(_) | Formula::NotIn(..) => false,
            Formula::Const(_) | Formula::Edge(..) | Formula::Eq(..) => true,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.is_macro_free(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.is_macro_free() && b.is_macro_free()
            }
        }
    }

    pub fn free_variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free<'a>(&'a self, bound: &mut Vec<&'a str>, out: &mut BTreeSet<String>) {
        let mut note = |v: &'a String, bound: &Vec<&'a str>| {
            if !bound.contains(&v.as_str()) {
                out.insert(v.clone());
            }
        };
        match self {
            Formula::Const(_) => {}
            Formula::Edge(a, b) | Formula::Eq(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Formula::Deg(a, _, _) => note(a, bound),
            Formula::Distinct(vs) => vs.iter().for_each(|v| note(v, bound)),
            Formula::NotIn(a, vs) => {
                note(a, bound);
                vs.iter().for_each(|v| note(v, bound));
            }
            Formula::Not(a) => a.collect_free(bound, out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                bound.push(v);
                a.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn is_sentence(&self) -> bool {
        self.free_variables().is_empty()
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn variable_names(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.visit_names(&mut |v| {
            out.insert(v.to_string());
        });
        out
    }

    fn visit_names(&self, f: &mut impl FnMut(&str)) {
        match self {
            Formula::Const(_) => {}
            Formula::Edge(a, b) | Formula::Eq(a, b) => {
                f(a);
                f(b);
            }
            Formula::Deg(a, _, _) => f(a),
            Formula::Distinct(vs) => vs.iter().for_each(|v| f(v)),
            Formula::NotIn(a, vs) => {
                f(a);
                vs.iter().for_each(|v| f(v));
            }
            Formula::Not(a) => a.visit_names(f),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.visit_names(f);
                b.visit_names(f);
            }
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                f(v);
                a.visit_names(f);
            }
        }
    }

    /// Replace every macro by plain first-order syntax.
    ///
    /// `deg(x) >= k` becomes `exists y1..yk. distinct(y1..yk) & E(x,y1) & ...`
    /// and `deg(x) = k` is `deg(x) >= k & !deg(x) >= k+1`.
    pub fn expand_macros(&self) -> Formula {
        let used = self.variable_names();
        let fresh: Vec<String> = (1..)
            .map(|i| format!("v{i}"))
            .filter(|v| !used.contains(v))
            .take(self.max_degree_macro() as usize + 1)
            .collect();
        self.expand_with(&fresh)
    }

    fn max_degree_macro(&self) -> u32 {
        match self {
            Formula::Deg(_, _, k) => *k,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.max_degree_macro(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
                a.max_degree_macro().max(b.max_degree_macro())
            }
            _ => 0,
        }
    }

    fn expand_with(&self, fresh: &[String]) -> Formula {
        let rec = |a: &Formula| Box::new(a.expand_with(fresh));
        match self {
            Formula::Const(_) | Formula::Edge(..) | Formula::Eq(..) => self.clone(),
            Formula::Not(a) => Formula::Not(rec(a)),
            Formula::And(a, b) => Formula::And(rec(a), rec(b)),
            Formula::Or(a, b) => Formula::Or(rec(a), rec(b)),
            Formula::Implies(a, b) => Formula::Implies(rec(a), rec(b)),
            Formula::Iff(a, b) => Formula::Iff(rec(a), rec(b)),
            Formula::Forall(v, a) => Formula::Forall(v.clone(), rec(a)),
            Formula::Exists(v, a) => Formula::Exists(v.clone(), rec(a)),
            Formula::Distinct(vs) => pairwise_distinct(vs),
            Formula::NotIn(x, ys) => Formula::all(ys.iter().map(|y| Formula::not(Formula::Eq(x.clone(), y.clone())))),
            Formula::Deg(x, DegCmp::Ge, k) => degree_at_least(x, *k, fresh),
            Formula::Deg(x, DegCmp::Eq, k) => Formula::and(
                degree_at_least(x, *k, fresh),
                Formula::not(degree_at_least(x, k + 1, fresh)),
            ),
        }
    }
}

fn pairwise_distinct(vs: &[String]) -> Formula {
    let mut parts = Vec::new();
    for i in 0..vs.len() {
        for j in i + 1..vs.len() {
            parts.push(Formula::not(Formula::Eq(vs[i].clone(), vs[j].clone())));
        }
    }
    Formula::all(parts)
}

fn degree_at_least(x: &str, k: u32, fresh: &[String]) -> Formula {
    if k == 0 {
        return Formula::Const(true);
    }
    let ys = &fresh[..k as usize];
    let body = Formula::all(
        std::iter::once(pairwise_distinct(ys))
            .filter(|f| *f != Formula::Const(true))
            .chain(ys.iter().map(|y| Formula::Edge(x.to_string(), y.clone()))),
    );
    ys.iter().rev().fold(body, |acc, y| Formula::Exists(y.clone(), Box::new(acc)))
}

/// Maximum quantifier nesting, measured on the macro expansion.
pub fn quantifier_rank(f: &Formula) -> usize {
    if f.is_macro_free() {
        rank_of(f)
    } else {
        rank_of(&f.expand_macros())
    }
}

fn rank_of(f: &Formula) -> usize {
    match f {
        Formula::Const(_) | Formula::Edge(..) | Formula::Eq(..) => 0,
        Formula::Distinct(_) | Formula::NotIn(..) => 0,
        Formula::Deg(_, DegCmp::Ge, k) => *k as usize,
        Formula::Deg(_, DegCmp::Eq, k) => *k as usize + 1,
        Formula::Not(a) => rank_of(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            rank_of(a).max(rank_of(b))
        }
        Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + rank_of(a),
    }
}

// Printing. Binding strength: <-> 1, -> 2, | 3, & 4, unary 5. Quantifiers
// reach as far right as possible, so they are parenthesised inside any
// operator.

fn strength(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Forall(..) | Formula::Exists(..) => 0,
        _ => 5,
    }
}

fn write_at(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    if strength(f) < min {
        out.write_str("(")?;
        write_at(f, 0, out)?;
        return out.write_str(")");
    }
    match f {
        Formula::Const(b) => write!(out, "{b}"),
        Formula::Edge(a, b) => write!(out, "E({a},{b})"),
        Formula::Eq(a, b) => write!(out, "{a} = {b}"),
        Formula::Not(a) => match a.as_ref() {
            Formula::Eq(x, y) => write!(out, "{x} != {y}"),
            inner => {
                out.write_str("!")?;
                write_at(inner, 5, out)
            }
        },
        Formula::And(a, b) => binary(out, a, " & ", b, 4, 5),
        Formula::Or(a, b) => binary(out, a, " | ", b, 3, 4),
        Formula::Implies(a, b) => binary(out, a, " -> ", b, 3, 2),
        Formula::Iff(a, b) => binary(out, a, " <-> ", b, 1, 2),
        Formula::Forall(v, a) => {
            write!(out, "forall {v}. ")?;
            write_at(a, 0, out)
        }
        Formula::Exists(v, a) => {
            write!(out, "exists {v}. ")?;
            write_at(a, 0, out)
        }
        Formula::Deg(x, DegCmp::Eq, k) => write!(out, "deg({x}) = {k}"),
        Formula::Deg(x, DegCmp::Ge, k) => write!(out, "deg({x}) >= {k}"),
        Formula::Distinct(vs) => write!(out, "distinct({})", vs.join(", ")),
        Formula::NotIn(x, ys) => write!(out, "notin({x}, {{{}}})", ys.join(", ")),
    }
}

fn binary(out: &mut fmt::Formatter<'_>, a: &Formula, op: &str, b: &Formula, left: u8, right: u8) -> fmt::Result {
    write_at(a, left, out)?;
    out.write_str(op)?;
    write_at(b, right, out)
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_at(self, 0, f)
    }
}

// Parsing.

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Dot,
    Bang,
    And,
    Or,
    Arrow,
    DoubleArrow,
    Equals,
    NotEquals,
    AtLeast,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'{' => Tok::LBrace,
            b'}' => Tok::RBrace,
            b',' => Tok::Comma,
            b'.' => Tok::Dot,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'=' => Tok::Equals,
            b'!' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::NotEquals
            }
            b'!' | b'~' => Tok::Bang,
            b'>' if bytes.get(i + 1) == Some(&b'=') => {
                i += 1;
                Tok::AtLeast
            }
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Arrow
            }
            b'<' if bytes[i..].starts_with(b"<->") => {
                i += 2;
                Tok::DoubleArrow
            }
            b'0'..=b'9' => {
                while i + 1 < bytes.len() && bytes[i + 1].is_ascii_digit() {
                    i += 1;
                }
                let n = text[start..=i]
                    .parse()
                    .map_err(|_| Error::Formula { position: start, message: "number too large".into() })?;
                Tok::Num(n)
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[i..].chars().next().unwrap_or('?');
                return Err(Error::Formula { position: start, message: format!("unexpected character `{ch}`") });
            }
        };
        out.push((start, tok));
        i += 1;
    }
    Ok(out)
}

const KEYWORDS: [&str; 8] = ["forall", "exists", "true", "false", "E", "deg", "distinct", "notin"];

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Formula { position: self.offset(), message: message.into() })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, t: Tok, what: &str) -> Result<()> {
        if self.eat(&t) {
            Ok(())
        } else {
            self.err(format!("expected {what}"))
        }
    }

    fn variable(&mut self) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(name)) if !KEYWORDS.contains(&name.as_str()) => {
                let name = name.clone();
                self.pos += 1;
                Ok(name)
            }
            _ => self.err("expected a variable"),
        }
    }

    fn number(&mut self) -> Result<u32> {
        match self.peek() {
            Some(&Tok::Num(n)) => {
                self.pos += 1;
                Ok(n)
            }
            _ => self.err("expected a number"),
        }
    }

    fn var_list(&mut self, close: Tok, what: &str) -> Result<Vec<String>> {
        let mut vs = vec![self.variable()?];
        while self.eat(&Tok::Comma) {
            vs.push(self.variable()?);
        }
        self.expect(close, what)?;
        Ok(vs)
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut f = self.implication()?;
        while self.eat(&Tok::DoubleArrow) {
            f = Formula::iff(f, self.implication()?);
        }
        Ok(f)
    }

    fn implication(&mut self) -> Result<Formula> {
        let f = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            return Ok(Formula::implies(f, self.implication()?));
        }
        Ok(f)
    }

    fn disjunction(&mut self) -> Result<Formula> {
        let mut f = self.conjunction()?;
        while self.eat(&Tok::Or) {
            f = Formula::or(f, self.conjunction()?);
        }
        Ok(f)
    }

    fn conjunction(&mut self) -> Result<Formula> {
        let mut f = self.unary()?;
        while self.eat(&Tok::And) {
            f = Formula::and(f, self.unary()?);
        }
        Ok(f)
    }

    fn unary(&mut self) -> Result<Formula> {
        if self.eat(&Tok::Bang) {
            return Ok(Formula::not(self.unary()?));
        }
        let Some(Tok::Ident(word)) = self.peek() else {
            if self.eat(&Tok::LParen) {
                let f = self.iff()?;
                self.expect(Tok::RParen, "`)`")?;
                return Ok(f);
            }
            return self.err("expected a formula");
        };
        let word = word.clone();
        match word.as_str() {
            "forall" | "exists" => {
                self.pos += 1;
                let vars = self.var_list(Tok::Dot, "`.` after the quantified variables")?;
                let body = self.iff()?;
                Ok(vars.iter().rev().fold(body, |acc, v| {
                    if word == "forall" {
                        Formula::forall(v, acc)
                    } else {
                        Formula::exists(v, acc)
                    }
                }))
            }
            "true" | "false" => {
                self.pos += 1;
                Ok(Formula::Const(word == "true"))
            }
            "E" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let a = self.variable()?;
                self.expect(Tok::Comma, "`,`")?;
                let b = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::Edge(a, b))
            }
            "deg" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let x = self.variable()?;
                self.expect(Tok::RParen, "`)`")?;
                let cmp = if self.eat(&Tok::Equals) {
                    DegCmp::Eq
                } else if self.eat(&Tok::AtLeast) {
                    DegCmp::Ge
                } else {
                    return self.err("expected `=` or `>=` after deg(..)");
                };
                Ok(Formula::Deg(x, cmp, self.number()?))
            }
            "distinct" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                Ok(Formula::Distinct(self.var_list(Tok::RParen, "`)`")?))
            }
            "notin" => {
                self.pos += 1;
                self.expect(Tok::LParen, "`(`")?;
                let x = self.variable()?;
                self.expect(Tok::Comma, "`,`")?;
                self.expect(Tok::LBrace, "`{`")?;
                let ys = self.var_list(Tok::RBrace, "`}`")?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(Formula::NotIn(x, ys))
            }
            _ => {
                let a = self.variable()?;
                if self.eat(&Tok::Equals) {
                    Ok(Formula::Eq(a, self.variable()?))
                } else if self.eat(&Tok::NotEquals) {
                    Ok(Formula::not(Formula::Eq(a, self.variable()?)))
                } else {
                    self.err("expected `=` or `!=`")
                }
            }
        }
    }
}

/// Parse a formula, free variables allowed.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: tokenize(text)?, pos: 0, end: text.len() };
    let f = p.iff()?;
    if p.pos != p.toks.len() {
        return p.err("unexpected trailing input");
    }
    Ok(f)
}

/// Parse a formula and require it to be a sentence.
pub fn parse_sentence(text: &str) -> Result<Formula> {
    let f = parse_formula(text)?;
    let free = f.free_variables();
    if !free.is_empty() {
        return Err(Error::FreeVariables(free.into_iter().collect::<Vec<_>>().join(", ")));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GRAPH_AXIOM: &str = "forall x. forall y. (!E(x,x) & (E(x,y) -> E(y,x)))";

    #[test]
    fn graph_axiom_parses() {
        let f = parse_sentence(GRAPH_AXIOM).unwrap();
        let expected = Formula::forall(
            "x",
            Formula::forall(
                "y",
                Formula::and(
                    Formula::not(Formula::edge("x", "x")),
                    Formula::implies(Formula::edge("x", "y"), Formula::edge("y", "x")),
                ),
            ),
        );
        assert_eq!(f, expected);
        assert_eq!(quantifier_rank(&f), 2);
        assert_eq!(parse_sentence("forall x, y. (!E(x,x) & (E(x,y) -> E(y,x)))").unwrap(), expected);
    }

    #[test]
    fn free_variables_are_rejected() {
        assert!(matches!(parse_sentence("E(x,y)"), Err(Error::FreeVariables(v)) if v == "x, y"));
        assert!(parse_formula("E(x,y)").is_ok());
        assert!(matches!(parse_sentence("exists x. E(x,y)"), Err(Error::FreeVariables(_))));
    }

    #[test]
    fn syntax_errors_carry_positions() {
        assert!(matches!(parse_formula("forall x E(x,x)"), Err(Error::Formula { position: 9, .. })));
        assert!(matches!(parse_formula("E(x,y) &"), Err(Error::Formula { position: 8, .. })));
        assert!(matches!(parse_formula("x = y )"), Err(Error::Formula { position: 6, .. })));
        assert!(matches!(parse_formula("E(x,#)"), Err(Error::Formula { position: 4, .. })));
        assert!(parse_formula("forall E. true").is_err());
    }

    #[test]
    fn ranks() {
        assert_eq!(quantifier_rank(&parse_formula("E(x,y)").unwrap()), 0);
        let f = parse_sentence("exists x. ((forall y. E(x,y)) & exists z. exists w. E(z,w))").unwrap();
        assert_eq!(quantifier_rank(&f), 3);
        assert_eq!(quantifier_rank(&parse_formula("deg(x) >= 2").unwrap()), 2);
        assert_eq!(quantifier_rank(&parse_formula("deg(x) = 2").unwrap()), 3);
        assert_eq!(quantifier_rank(&parse_formula("distinct(x, y, z)").unwrap()), 0);
    }

    #[test]
    fn macros_expand_to_plain_syntax() {
        let f = parse_formula("deg(x) = 1 & notin(x, {y, z}) & distinct(x, y)").unwrap();
        let e = f.expand_macros();
        assert!(e.is_macro_free());
        assert_eq!(e.free_variables(), f.free_variables());
        assert_eq!(
            e.to_string(),
            "(exists v1. E(x,v1)) & !(exists v1. exists v2. v1 != v2 & E(x,v1) & E(x,v2)) & (x != y & x != z) & x != y"
        );
        let clash = parse_formula("deg(v1) >= 1").unwrap().expand_macros();
        assert_eq!(clash.to_string(), "exists v2. E(v1,v2)");
    }

    #[test]
    fn printing_respects_precedence() {
        for text in [
            "a = b -> b = c -> c = d",
            "(a = b -> b = c) -> c = d",
            "a = b & (b = c | c = d)",
            "a = b <-> b = c <-> c = d",
            "a = b <-> (b = c <-> c = d)",
            "!(forall x. E(x,x)) & true",
            "(exists x. x = x) | false",
            "!!E(a,b)",
            "deg(a) >= 3 | notin(a, {b})",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text}");
            assert_eq!(f.to_string(), text);
        }
    }
}
