//! Model checking by quantifier expansion. Sentences are compiled once:
//! bound variables get their own slots, macros are evaluated natively,
//! and quantifiers are pushed inward past subformulas that ignore them.

use super::formula::{DegCmp, Formula};
use crate::error::{Error, Result};
use crate::graph::Graph;

type Slot = u16;

#[derive(Clone, Debug, PartialEq)]
enum Node {
    Const(bool),
    Edge(Slot, Slot),
    Eq(Slot, Slot),
    Deg(Slot, DegCmp, u32),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
    Iff(Box<Node>, Box<Node>),
    Forall(Slot, Box<Node>),
    Exists(Slot, Box<Node>),
}

/// A sentence prepared for repeated evaluation.
#[derive(Clone, Debug)]
pub struct CompiledFormula {
    root: Node,
    slots: usize,
}

struct Compiler {
    scope: Vec<(String, Slot)>,
    next: Slot,
}

impl Compiler {
    fn lookup(&self, v: &str) -> Result<Slot> {
        self.scope
            .iter()
            .rev()
            .find(|(name, _)| name == v)
            .map(|&(_, s)| s)
            .ok_or_else(|| Error::FreeVariables(v.to_string()))
    }

    fn compile(&mut self, f: &Formula) -> Result<Node> {
        Ok(match f {
            Formula::Const(b) => Node::Const(*b),
            Formula::Edge(a, b) => Node::Edge(self.lookup(a)?, self.lookup(b)?),
            Formula::Eq(a, b) => Node::Eq(self.lookup(a)?, self.lookup(b)?),
            Formula::Deg(x, cmp, k) => Node::Deg(self.lookup(x)?, *cmp, *k),
            Formula::Distinct(vs) => {
                let slots = vs.iter().map(|v| self.lookup(v)).collect::<Result<Vec<_>>>()?;
                let mut parts = Vec::new();
                for i in 0..slots.len() {
                    for j in i + 1..slots.len() {
                        parts.push(Node::Not(Box::new(Node::Eq(slots[i], slots[j]))));
                    }
                }
                Node::And(parts)
            }
            Formula::NotIn(x, ys) => {
                let x = self.lookup(x)?;
                let parts = ys
                    .iter()
                    .map(|y| Ok(Node::Not(Box::new(Node::Eq(x, self.lookup(y)?)))))
                    .collect::<Result<Vec<_>>>()?;
                Node::And(parts)
            }
            Formula::Not(a) => Node::Not(Box::new(self.compile(a)?)),
            Formula::And(a, b) => Node::And(vec![self.compile(a)?, self.compile(b)?]),
            Formula::Or(a, b) => Node::Or(vec![self.compile(a)?, self.compile(b)?]),
            Formula::Implies(a, b) => Node::Or(vec![Node::Not(Box::new(self.compile(a)?)), self.compile(b)?]),
            Formula::Iff(a, b) => Node::Iff(Box::new(self.compile(a)?), Box::new(self.compile(b)?)),
            Formula::Forall(v, a) | Formula::Exists(v, a) => {
                let slot = self.next;
                self.next += 1;
                self.scope.push((v.clone(), slot));
                let body = self.compile(a);
                self.scope.pop();
                let body = Box::new(body?);
                if matches!(f, Formula::Forall(..)) {
                    Node::Forall(slot, body)
                } else {
                    Node::Exists(slot, body)
                }
            }
        })
    }
}

fn mentions(node: &Node, s: Slot) -> bool {
    match node {
        Node::Const(_) => false,
        Node::Edge(a, b) | Node::Eq(a, b) => *a == s || *b == s,
        Node::Deg(a, _, _) => *a == s,
        Node::Not(a) | Node::Forall(_, a) | Node::Exists(_, a) => mentions(a, s),
        Node::And(cs) | Node::Or(cs) => cs.iter().any(|c| mentions(c, s)),
        Node::Iff(a, b) => mentions(a, s) || mentions(b, s),
    }
}

/// Quantifier nesting depth, a proxy for evaluation cost.
fn depth(node: &Node) -> usize {
    match node {
        Node::Const(_) | Node::Edge(..) | Node::Eq(..) | Node::Deg(..) => 0,
        Node::Not(a) => depth(a),
        Node::And(cs) | Node::Or(cs) => cs.iter().map(depth).max().unwrap_or(0),
        Node::Iff(a, b) => depth(a).max(depth(b)),
        Node::Forall(_, a) | Node::Exists(_, a) => 1 + depth(a),
    }
}

/// Put cheap operands of each connective first so short-circuiting
/// skips the expensive ones.
fn order_by_cost(node: Node) -> Node {
    match node {
        Node::Not(a) => Node::Not(Box::new(order_by_cost(*a))),
        Node::And(cs) => {
            let mut cs: Vec<Node> = cs.into_iter().map(order_by_cost).collect();
            cs.sort_by_key(depth);
            Node::And(cs)
        }
        Node::Or(cs) => {
            let mut cs: Vec<Node> = cs.into_iter().map(order_by_cost).collect();
            cs.sort_by_key(depth);
            Node::Or(cs)
        }
        Node::Iff(a, b) => Node::Iff(Box::new(order_by_cost(*a)), Box::new(order_by_cost(*b))),
        Node::Forall(s, a) => Node::Forall(s, Box::new(order_by_cost(*a))),
        Node::Exists(s, a) => Node::Exists(s, Box::new(order_by_cost(*a))),
        other => other,
    }
}

fn flatten(node: Node) -> Node {
    match node {
        Node::And(cs) => {
            let mut out = Vec::new();
            for c in cs {
                match c {
                    Node::And(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            if out.len() == 1 { out.pop().unwrap() } else { Node::And(out) }
        }
        Node::Or(cs) => {
            let mut out = Vec::new();
            for c in cs {
                match c {
                    Node::Or(inner) => out.extend(inner),
                    other => out.push(other),
                }
            }
            if out.len() == 1 { out.pop().unwrap() } else { Node::Or(out) }
        }
        other => other,
    }
}

/// Push quantifiers inward. `exists v (A & B)` with `v` absent from `A`
/// becomes `A & exists v B`; dually for `forall` over disjunctions. Both
/// rewrites are sound over the empty domain too, since the quantifier is
/// kept on the remaining part.
fn miniscope(node: Node) -> Node {
    match node {
        Node::Not(a) => Node::Not(Box::new(miniscope(*a))),
        Node::And(cs) => flatten(Node::And(cs.into_iter().map(miniscope).collect())),
        Node::Or(cs) => flatten(Node::Or(cs.into_iter().map(miniscope).collect())),
        Node::Iff(a, b) => Node::Iff(Box::new(miniscope(*a)), Box::new(miniscope(*b))),
        Node::Exists(s, body) => match miniscope(*body) {
            Node::Or(cs) => flatten(Node::Or(cs.into_iter().map(|c| miniscope(Node::Exists(s, Box::new(c)))).collect())),
            Node::And(cs) => {
                let (inner, outer): (Vec<_>, Vec<_>) = cs.into_iter().partition(|c| mentions(c, s));
                if outer.is_empty() {
                    return Node::Exists(s, Box::new(Node::And(inner)));
                }
                let mut parts = outer;
                parts.push(Node::Exists(s, Box::new(flatten(Node::And(inner)))));
                flatten(Node::And(parts))
            }
            body => Node::Exists(s, Box::new(body)),
        },
        Node::Forall(s, body) => match miniscope(*body) {
            Node::And(cs) => {
                flatten(Node::And(cs.into_iter().map(|c| miniscope(Node::Forall(s, Box::new(c)))).collect()))
            }
            Node::Or(cs) => {
                let (inner, outer): (Vec<_>, Vec<_>) = cs.into_iter().partition(|c| mentions(c, s));
                if outer.is_empty() {
                    return Node::Forall(s, Box::new(Node::Or(inner)));
                }
                let mut parts = outer;
                parts.push(Node::Forall(s, Box::new(flatten(Node::Or(inner)))));
                flatten(Node::Or(parts))
            }
            body => Node::Forall(s, Box::new(body)),
        },
        other => other,
    }
}

fn eval(node: &Node, g: &Graph, env: &mut [usize]) -> bool {
    match node {
        Node::Const(b) => *b,
        Node::Edge(a, b) => g.has_edge(env[*a as usize], env[*b as usize]),
        Node::Eq(a, b) => env[*a as usize] == env[*b as usize],
        Node::Deg(a, cmp, k) => {
            let d = g.degree(env[*a as usize]) as u32;
            match cmp {
                DegCmp::Eq => d == *k,
                DegCmp::Ge => d >= *k,
            }
        }
        Node::Not(a) => !eval(a, g, env),
        Node::And(cs) => cs.iter().all(|c| eval(c, g, env)),
        Node::Or(cs) => cs.iter().any(|c| eval(c, g, env)),
        Node::Iff(a, b) => eval(a, g, env) == eval(b, g, env),
        Node::Forall(s, body) => (0..g.order()).all(|v| {
            env[*s as usize] = v;
            eval(body, g, env)
        }),
        Node::Exists(s, body) => (0..g.order()).any(|v| {
            env[*s as usize] = v;
            eval(body, g, env)
        }),
    }
}

impl CompiledFormula {
    /// Compile a sentence; free variables are an error.
    pub fn new(f: &Formula) -> Result<Self> {
        let free = f.free_variables();
        if !free.is_empty() {
            return Err(Error::FreeVariables(free.into_iter().collect::<Vec<_>>().join(", ")));
        }
        let mut c = Compiler { scope: Vec::new(), next: 0 };
        let root = order_by_cost(miniscope(c.compile(f)?));
        Ok(CompiledFormula { root, slots: c.next as usize })
    }

    /// Compile without pushing quantifiers inward.
    pub fn new_unoptimized(f: &Formula) -> Result<Self> {
        let mut c = Compiler { scope: Vec::new(), next: 0 };
        let root = c.compile(f)?;
        Ok(CompiledFormula { root, slots: c.next as usize })
    }

    pub fn evaluate(&self, g: &Graph) -> bool {
        let mut small = [0usize; 32];
        if self.slots <= small.len() {
            eval(&self.root, g, &mut small)
        } else {
            eval(&self.root, g, &mut vec![0usize; self.slots])
        }
    }
}

/// Truth of a sentence in `g`.
pub fn evaluate(g: &Graph, f: &Formula) -> Result<bool> {
    Ok(CompiledFormula::new(f)?.evaluate(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folcheck::formula::parse_sentence;
    use crate::graph::enumerate_graphs_with_limit;
    use proptest::prelude::*;

    fn holds(g: &Graph, text: &str) -> bool {
        evaluate(g, &parse_sentence(text).unwrap()).unwrap()
    }

    #[test]
    fn clique_formula() {
        let clique = "forall x, y. (x != y <-> E(x,y))";
        assert!(holds(&Graph::complete(3), clique));
        assert!(!holds(&Graph::path(3), clique));
        assert!(holds(&Graph::complete(1), clique));
        assert!(holds(&Graph::empty(0), clique));
    }

    #[test]
    fn graph_axiom_holds_everywhere() {
        for n in 0..=5 {
            for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                assert!(holds(&g, "forall x. forall y. (!E(x,x) & (E(x,y) -> E(y,x)))"));
            }
        }
    }

    #[test]
    fn empty_domain() {
        let e = Graph::empty(0);
        assert!(!holds(&e, "exists x. true"));
        assert!(holds(&e, "forall x. false"));
        assert!(!holds(&e, "true & exists x. x = x"));
        assert!(holds(&e, "false | forall x. E(x,x)"));
    }

    #[test]
    fn macros_agree_with_expansion() {
        for text in [
            "exists x. deg(x) = 2",
            "forall x. deg(x) >= 1",
            "exists x, y, z. distinct(x, y, z) & E(x,y) & notin(z, {x, y})",
            "forall x. (deg(x) = 3 -> exists y. E(x,y) & deg(y) = 1)",
        ] {
            let f = parse_sentence(text).unwrap();
            let e = f.expand_macros();
            for n in 0..=5 {
                for g in enumerate_graphs_with_limit(n, false, 9).unwrap() {
                    assert_eq!(evaluate(&g, &f).unwrap(), evaluate(&g, &e).unwrap(), "{text} on n={n}");
                }
            }
        }
    }

    #[test]
    fn shadowing_uses_the_inner_binding() {
        let g = Graph::path(3);
        assert!(holds(&g, "exists x. (deg(x) = 2 & exists x. deg(x) = 1)"));
        assert!(!holds(&g, "exists x. (deg(x) = 2 & exists y. (E(x,y) & exists x. x = y & deg(x) = 2))"));
    }

    fn arb_formula() -> impl Strategy<Value = Formula> {
        let vars = prop::sample::select(vec!["x", "y", "z"]);
        let leaf = prop_oneof![
            (vars.clone(), vars.clone()).prop_map(|(a, b)| Formula::edge(a, b)),
            (vars.clone(), vars.clone()).prop_map(|(a, b)| Formula::eq(a, b)),
            (vars.clone(), 0u32..3).prop_map(|(a, k)| Formula::Deg(a.into(), DegCmp::Ge, k)),
            any::<bool>().prop_map(Formula::Const),
        ];
        leaf.prop_recursive(4, 24, 2, move |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
                (vars.clone(), inner.clone()).prop_map(|(v, a)| Formula::forall(v, a)),
                (vars.clone(), inner.clone()).prop_map(|(v, a)| Formula::exists(v, a)),
            ]
        })
    }

    fn close(f: Formula) -> Formula {
        ["x", "y", "z"].iter().fold(f, |acc, v| Formula::exists(v, acc))
    }

    proptest! {
        #[test]
        fn print_parse_round_trip(f in arb_formula()) {
            let text = f.to_string();
            prop_assert_eq!(crate::folcheck::formula::parse_formula(&text).unwrap(), f);
        }

        #[test]
        fn miniscoping_preserves_truth(f in arb_formula(), n in 0usize..5, edges in any::<u16>()) {
            let f = close(f);
            let mut g = Graph::empty(n);
            let mut bit = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edges >> bit & 1 == 1 {
                        g.add_edge(u, v);
                    }
                    bit += 1;
                }
            }
            let fast = CompiledFormula::new(&f).unwrap().evaluate(&g);
            let slow = CompiledFormula::new_unoptimized(&f.expand_macros()).unwrap().evaluate(&g);
            prop_assert_eq!(fast, slow);
        }
    }
}
