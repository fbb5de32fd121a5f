//! Named graph families: exact membership tests, their defining sentences
//! with side conditions, and a sweep locating the order from which the two
//! agree.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::eval::CompiledFormula;
use super::formula::{parse_sentence, quantifier_rank, Formula};
use crate::error::{Error, Result};
use crate::graph::io::emit_graph6;
use crate::graph::{canonical_form, enumerate_graphs_with_limit, full_mask, CanonicalForm, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Clique,
    Ladder,
    Book,
    Gear,
    Prism,
    Moebius,
    CrossedPrism,
    Antiprism,
    Grid,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::Clique,
        Family::Ladder,
        Family::Book,
        Family::Gear,
        Family::Prism,
        Family::Moebius,
        Family::CrossedPrism,
        Family::Antiprism,
        Family::Grid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Clique => "clique",
            Family::Ladder => "ladder",
            Family::Book => "book",
            Family::Gear => "gear",
            Family::Prism => "prism",
            Family::Moebius => "moebius",
            Family::CrossedPrism => "crossed_prism",
            Family::Antiprism => "antiprism",
            Family::Grid => "grid",
        }
    }

    /// The members of order `n`, one per isomorphism class.
    pub fn members(self, n: usize) -> Vec<Graph> {
        let even = n % 2 == 0;
        let one = |g: Graph| vec![g];
        match self {
            Family::Clique if n >= 1 => one(Graph::complete(n)),
            Family::Ladder if even && n >= 4 => one(Graph::path(2).cartesian_product(&Graph::path(n / 2))),
            Family::Book if even && n >= 4 => one(star(n / 2 - 1).cartesian_product(&Graph::path(2))),
            Family::Gear if !even && n >= 7 => one(gear(n / 2)),
            Family::Prism if even && n >= 6 => one(Graph::cycle(n / 2).cartesian_product(&Graph::path(2))),
            Family::Moebius if even && n >= 6 => one(circulant(n, &[1, n / 2])),
            Family::CrossedPrism if n % 4 == 0 && n >= 8 => one(crossed_prism(n / 2)),
            Family::Antiprism if even && n >= 6 => one(circulant(n, &[1, 2])),
            Family::Grid => (2..=n)
                .filter(|&a| n % a == 0 && a <= n / a)
                .map(|a| Graph::path(a).cartesian_product(&Graph::path(n / a)))
                .collect(),
            _ => Vec::new(),
        }
    }

    /// Order from which the stated side condition admits members.
    pub fn stated_threshold(self) -> Option<usize> {
        match self {
            Family::Book | Family::Gear => Some(8),
            _ => None,
        }
    }

    /// Defining sentence, if one exists for this source.
    pub fn formula_text(self, source: FormulaSource) -> Option<&'static str> {
        use FormulaSource::*;
        match (self, source) {
            (Family::Clique, _) => Some(CLIQUE),
            (Family::Ladder, Literal) => Some(LADDER_LITERAL),
            (Family::Ladder, Corrected) => Some(LADDER_CORRECTED),
            (Family::Book, Literal) => Some(BOOK_LITERAL),
            (Family::Book, Corrected) => Some(BOOK_CORRECTED),
            (Family::Gear, Literal) => Some(GEAR_LITERAL),
            (Family::Gear, Corrected) => Some(GEAR_CORRECTED),
            (Family::Prism | Family::Moebius, Corrected) => Some(CUBIC_SQUARES),
            _ => None,
        }
    }

    /// The class restriction the sentence is evaluated under.
    pub fn side_condition(self, g: &Graph) -> bool {
        let n = g.order();
        if !g.is_connected() {
            return false;
        }
        match self {
            Family::Book => n >= 8,
            Family::Gear => n >= 8 && has_card(g, &Graph::cycle(n - 1)),
            Family::Prism | Family::Moebius => match self.members(n).first() {
                Some(m) => has_card(g, &m.delete_vertex(0)),
                None => false,
            },
            _ => true,
        }
    }

    pub fn side_condition_text(self) -> &'static str {
        match self {
            Family::Book => "connected and n >= 8",
            Family::Gear => "connected, n >= 8, and some card is the cycle on n-1 vertices",
            Family::Prism => "connected and some card is a prism with one vertex deleted",
            Family::Moebius => "connected and some card is a Moebius ladder with one vertex deleted",
            _ => "connected",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase().replace('-', "_");
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s || (s == "mobius" && *f == Family::Moebius))
            .ok_or_else(|| Error::InvalidArgument(format!("unknown family `{s}`")))
    }
}

/// Which version of a family's sentence to use.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FormulaSource {
    /// Read literally, with standard precedence.
    Literal,
    /// With the defects that make the literal sentence wrong removed.
    Corrected,
}

impl fmt::Display for FormulaSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaSource::Literal => "literal",
            FormulaSource::Corrected => "corrected",
        })
    }
}

impl FromStr for FormulaSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(FormulaSource::Literal),
            "corrected" => Ok(FormulaSource::Corrected),
            _ => Err(Error::InvalidArgument(format!("unknown formula source `{s}`"))),
        }
    }
}

const CLIQUE: &str = "forall x, y. (x != y <-> E(x,y))";

const LADDER_LITERAL: &str = "exists x, y, z, w. distinct(x, y, z, w) \
    & deg(x) = 2 & deg(y) = 2 & deg(z) = 2 & deg(w) = 2 & E(x,y) & E(z,w) \
    & (forall t. notin(t, {x, y, z, w}) -> deg(t) = 3) \
    & (forall t, s, r. !E(t,s) | !E(s,r) | !E(r,t)) \
    & (forall t, s, r, p. E(t,s) & E(s,r) & E(r,p) -> E(t,p))";

const LADDER_CORRECTED: &str = "exists x, y, z, w. distinct(x, y, z, w) \
    & deg(x) = 2 & deg(y) = 2 & deg(z) = 2 & deg(w) = 2 & E(x,y) & E(z,w) \
    & (forall t. notin(t, {x, y, z, w}) -> deg(t) = 3) \
    & (forall t, s, r. !E(t,s) | !E(s,r) | !E(r,t)) \
    & (forall t, s. E(t,s) -> exists r, p. distinct(t, s, r, p) & E(s,r) & E(r,p) & E(p,t))";

const BOOK_LITERAL: &str = "exists x, y. x != y & (forall z. notin(z, {x, y}) -> \
    deg(z) = 2 & (E(x,z) | E(y,z)) & (E(x,z) <-> !E(y,z)) \
    & (forall w. notin(w, {x, y, z}) -> (E(z,w) -> (E(x,z) <-> !E(x,w)))))";

const BOOK_CORRECTED: &str = "exists x, y. x != y & E(x,y) & (forall z. notin(z, {x, y}) -> \
    deg(z) = 2 & (E(x,z) | E(y,z)) & (E(x,z) <-> !E(y,z)) \
    & (forall w. notin(w, {x, y, z}) -> (E(z,w) -> (E(x,z) <-> !E(x,w)))))";

const GEAR_LITERAL: &str = "exists x. deg(x) >= 4 & (forall y, z. notin(y, {x}) & notin(z, {x}) -> \
    ((deg(y) = 2 | deg(y) = 3) & deg(y) = 2 <-> deg(z) = 3 & (deg(y) = 3 <-> E(y,x))))";

const GEAR_CORRECTED: &str = "exists x. deg(x) >= 4 \
    & (forall y. y != x -> (deg(y) = 2 | deg(y) = 3) & (deg(y) = 3 <-> E(y,x))) \
    & (forall y, z. y != x & z != x & E(y,z) -> (deg(y) = 2 <-> deg(z) = 3))";

const CUBIC_SQUARES: &str = "(forall x. deg(x) = 3) \
    & (forall t, s. E(t,s) -> exists r, p. distinct(t, s, r, p) & E(s,r) & E(r,p) & E(p,t))";

fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::from_edges(leaves + 1, &edges).expect("star edges are valid")
}

/// Hub 0 and a rim of `2k` vertices, the hub joined to every other one.
fn gear(k: usize) -> Graph {
    let mut g = Graph::empty(2 * k + 1);
    for i in 0..2 * k {
        g.add_edge(1 + i, 1 + (i + 1) % (2 * k));
        if i % 2 == 0 {
            g.add_edge(0, 1 + i);
        }
    }
    g
}

fn circulant(n: usize, jumps: &[usize]) -> Graph {
    let mut g = Graph::empty(n);
    for i in 0..n {
        for &j in jumps {
            g.add_edge(i, (i + j) % n);
        }
    }
    g
}

/// Two `m`-cycles `a_i = i`, `b_i = m + i`, joined by the crossed pairs
/// `a_j b_{j+1}`, `a_{j+1} b_j` for even `j`.
fn crossed_prism(m: usize) -> Graph {
    let mut g = Graph::empty(2 * m);
    for i in 0..m {
        g.add_edge(i, (i + 1) % m);
        g.add_edge(m + i, m + (i + 1) % m);
    }
    for j in (0..m).step_by(2) {
        g.add_edge(j, m + j + 1);
        g.add_edge(j + 1, m + j);
    }
    g
}

fn has_card(g: &Graph, card: &Graph) -> bool {
    let n = g.order();
    if card.order() + 1 != n || card.edge_count() > g.edge_count() {
        return false;
    }
    let want = canonical_form(card);
    (0..n).any(|v| g.edge_count() - g.degree(v) == card.edge_count() && canonical_form(&g.induced(full_mask(n) & !(1 << v))) == want)
}

struct MemberKey {
    edges: usize,
    degrees: Vec<usize>,
    form: CanonicalForm,
}

fn sorted_degrees(g: &Graph) -> Vec<usize> {
    let mut d: Vec<usize> = (0..g.order()).map(|v| g.degree(v)).collect();
    d.sort_unstable();
    d
}

/// Exact membership test for one family, with members cached by order.
pub struct Oracle {
    family: Family,
    cache: BTreeMap<usize, Vec<MemberKey>>,
}

impl Oracle {
    pub fn new(family: Family) -> Self {
        Oracle { family, cache: BTreeMap::new() }
    }

    pub fn is_member(&mut self, g: &Graph) -> bool {
        let family = self.family;
        let keys = self.cache.entry(g.order()).or_insert_with(|| {
            family
                .members(g.order())
                .iter()
                .map(|m| MemberKey { edges: m.edge_count(), degrees: sorted_degrees(m), form: canonical_form(m) })
                .collect()
        });
        let edges = g.edge_count();
        let candidates: Vec<&MemberKey> = keys.iter().filter(|k| k.edges == edges).collect();
        if candidates.is_empty() {
            return false;
        }
        let degrees = sorted_degrees(g);
        let candidates: Vec<_> = candidates.into_iter().filter(|k| k.degrees == degrees).collect();
        if candidates.is_empty() {
            return false;
        }
        let form = canonical_form(g);
        candidates.iter().any(|k| k.form == form)
    }
}

/// Membership in `family` of `g`, decided exactly.
pub fn is_member(family: Family, g: &Graph) -> bool {
    Oracle::new(family).is_member(g)
}

/// A family's sentence together with its side condition.
#[derive(Clone, Debug)]
pub struct Recognizer {
    pub family: Family,
    pub source: FormulaSource,
    formula: Formula,
    compiled: CompiledFormula,
}

impl Recognizer {
    pub fn new(family: Family, source: FormulaSource) -> Result<Self> {
        let text = family.formula_text(source).ok_or_else(|| {
            Error::InvalidArgument(format!("no {source:?} sentence for the {family} family").to_lowercase())
        })?;
        let formula = parse_sentence(text)?;
        let compiled = CompiledFormula::new(&formula)?;
        Ok(Recognizer { family, source, formula, compiled })
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn quantifier_rank(&self) -> usize {
        quantifier_rank(&self.formula)
    }

    pub fn sentence_holds(&self, g: &Graph) -> bool {
        self.compiled.evaluate(g)
    }

    /// Side condition and sentence both hold.
    pub fn accepts(&self, g: &Graph) -> bool {
        self.compiled.evaluate(g) && self.family.side_condition(g)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OrderStats {
    pub n: usize,
    pub graphs: usize,
    pub members: usize,
    pub accepted: usize,
    /// Accepted non-members.
    pub false_accepts: usize,
    /// Rejected members.
    pub false_rejects: usize,
    /// A few graph6 strings of disagreeing graphs.
    pub examples: Vec<String>,
}

impl OrderStats {
    pub fn agrees(&self) -> bool {
        self.false_accepts == 0 && self.false_rejects == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ThresholdReport {
    pub family: Family,
    pub source: FormulaSource,
    pub formula: String,
    pub side_condition: String,
    pub quantifier_rank: usize,
    pub orders: Vec<OrderStats>,
    /// Least order from which sentence and oracle agree through the end
    /// of the sweep.
    pub threshold: Option<usize>,
    pub stated_threshold: Option<usize>,
}

impl ThresholdReport {
    /// Members of the family at or above the threshold within the sweep.
    pub fn members_from_threshold(&self) -> usize {
        match self.threshold {
            Some(t) => self.orders.iter().filter(|o| o.n >= t).map(|o| o.members).sum(),
            None => 0,
        }
    }
}

const MAX_EXAMPLES: usize = 3;

/// Sweep every graph of order `min_n..=max_n` once and score each
/// recognizer against its family's oracle.
pub fn recognizer_sweep(recognizers: &[Recognizer], min_n: usize, max_n: usize) -> Result<Vec<ThresholdReport>> {
    let mut oracles: Vec<Oracle> = recognizers.iter().map(|r| Oracle::new(r.family)).collect();
    let mut orders: Vec<Vec<OrderStats>> = vec![Vec::new(); recognizers.len()];
    for n in min_n..=max_n {
        let mut stats: Vec<OrderStats> = recognizers
            .iter()
            .map(|_| OrderStats {
                n,
                graphs: 0,
                members: 0,
                accepted: 0,
                false_accepts: 0,
                false_rejects: 0,
                examples: Vec::new(),
            })
            .collect();
        for g in enumerate_graphs_with_limit(n, false, max_n)? {
            for (i, r) in recognizers.iter().enumerate() {
                let s = &mut stats[i];
                s.graphs += 1;
                let member = oracles[i].is_member(&g);
                let accepted = r.accepts(&g);
                s.members += member as usize;
                s.accepted += accepted as usize;
                if member != accepted {
                    if accepted {
                        s.false_accepts += 1;
                    } else {
                        s.false_rejects += 1;
                    }
                    if s.examples.len() < MAX_EXAMPLES {
                        s.examples.push(emit_graph6(&g));
                    }
                }
            }
        }
        for (i, s) in stats.into_iter().enumerate() {
            orders[i].push(s);
        }
    }
    Ok(recognizers
        .iter()
        .zip(orders)
        .map(|(r, orders)| {
            let mut threshold = None;
            for o in orders.iter().rev() {
                if !o.agrees() {
                    break;
                }
                threshold = Some(o.n);
            }
            ThresholdReport {
                family: r.family,
                source: r.source,
                formula: r.formula.to_string(),
                side_condition: r.family.side_condition_text().to_string(),
                quantifier_rank: r.quantifier_rank(),
                orders,
                threshold,
                stated_threshold: r.family.stated_threshold(),
            }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn members_have_expected_shape() {
        let l5 = &Family::Ladder.members(10)[0];
        assert_eq!((l5.edge_count(), sorted_degrees(l5)[..4].to_vec()), (13, vec![2, 2, 2, 2]));
        let b3 = &Family::Book.members(8)[0];
        assert_eq!(b3.edge_count(), 10);
        let g4 = &Family::Gear.members(9)[0];
        assert_eq!((g4.edge_count(), g4.max_degree()), (12, 4));
        assert!(has_card(g4, &Graph::cycle(8)));
        for f in [Family::Prism, Family::Moebius, Family::CrossedPrism, Family::Antiprism] {
            for n in [6, 8, 10] {
                for m in f.members(n) {
                    let deg = if f == Family::Antiprism { 4 } else { 3 };
                    assert!((0..n).all(|v| m.degree(v) == deg), "{f} {n}");
                    assert!(m.is_connected());
                }
            }
        }
        assert_eq!(Family::Grid.members(12).len(), 2);
        assert!(Family::Moebius.members(6)[0] != Family::Prism.members(6)[0]);
        assert!(!is_member(Family::Prism, &Family::Moebius.members(8)[0]));
        assert!(is_member(Family::Grid, &Family::Ladder.members(8)[0]));
        assert!(is_member(Family::Ladder, &Graph::cycle(4)));
        assert_eq!("Crossed-Prism".parse::<Family>().unwrap(), Family::CrossedPrism);
    }

    #[test]
    fn ladder_examples() {
        let r = Recognizer::new(Family::Ladder, FormulaSource::Corrected).unwrap();
        let l5 = Graph::path(2).cartesian_product(&Graph::path(5));
        assert!(r.accepts(&l5));
        assert!(!r.accepts(&Graph::cycle(10)));
        let literal = Recognizer::new(Family::Ladder, FormulaSource::Literal).unwrap();
        assert!(!literal.accepts(&l5));
        assert!(literal.accepts(&Graph::cycle(4)));
    }

    #[test]
    fn literal_sentences_misfire() {
        let book = Recognizer::new(Family::Book, FormulaSource::Literal).unwrap();
        let b3 = &Family::Book.members(8)[0];
        let mut spineless = b3.clone();
        let (x, y) = (0..8)
            .flat_map(|u| (u + 1..8).map(move |v| (u, v)))
            .find(|&(u, v)| b3.has_edge(u, v) && b3.degree(u) == 4 && b3.degree(v) == 4)
            .unwrap();
        spineless.remove_edge(x, y);
        assert!(book.accepts(b3) && book.accepts(&spineless));
        let gear = Recognizer::new(Family::Gear, FormulaSource::Literal).unwrap();
        assert!(!gear.accepts(&Family::Gear.members(9)[0]));
        assert!(Recognizer::new(Family::Gear, FormulaSource::Corrected).unwrap().accepts(&Family::Gear.members(9)[0]));
    }

    #[test]
    fn small_sweep() {
        let recognizers: Vec<_> = [Family::Clique, Family::Ladder, Family::Book, Family::Gear, Family::Prism, Family::Moebius]
            .into_iter()
            .map(|f| Recognizer::new(f, FormulaSource::Corrected).unwrap())
            .collect();
        let reports = recognizer_sweep(&recognizers, 1, 7).unwrap();
        for r in &reports {
            for o in &r.orders {
                assert_eq!(o.members, r.family.members(o.n).len());
            }
        }
        let clique = &reports[0];
        assert_eq!(clique.threshold, Some(1));
        assert_eq!(clique.members_from_threshold(), 7);
    }
}
