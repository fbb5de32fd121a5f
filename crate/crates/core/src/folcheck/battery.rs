//! A fixed, seeded collection of sentences of quantifier rank at most 2.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::eval::CompiledFormula;
use super::formula::{parse_sentence, quantifier_rank, Formula};
use crate::graph::Graph;

const TEMPLATES: [&str; 12] = [
    "true",
    "exists x. x = x",
    "exists x, y. E(x,y)",
    "forall x, y. !E(x,y)",
    "forall x. exists y. E(x,y)",
    "exists x. forall y. !E(x,y)",
    "exists x. forall y. (x = y | E(x,y))",
    "forall x, y. (x = y | E(x,y))",
    "exists x, y. (x != y & !E(x,y))",
    "forall x. exists y. (x != y & !E(x,y))",
    "(exists x, y. E(x,y)) & exists x. forall y. !E(x,y)",
    "forall x. ((exists y. E(x,y)) -> exists y. (x != y & !E(x,y)))",
];

#[derive(Clone, Debug)]
pub struct BatterySentence {
    formula: Formula,
    compiled: CompiledFormula,
    rank: usize,
}

impl BatterySentence {
    fn new(formula: Formula) -> Self {
        let compiled = CompiledFormula::new(&formula).expect("battery sentences are closed");
        let rank = quantifier_rank(&formula);
        BatterySentence { formula, compiled, rank }
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn evaluate(&self, g: &Graph) -> bool {
        self.compiled.evaluate(g)
    }
}

#[derive(Clone, Debug)]
pub struct Battery {
    seed: u64,
    sentences: Vec<BatterySentence>,
}

impl Battery {
    pub const SIZE: usize = 50;

    /// Degree, adjacency and non-adjacency templates followed by random
    /// sentences in two variables, deduplicated by their printed form.
    pub fn generate(seed: u64) -> Battery {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut seen = std::collections::BTreeSet::new();
        let mut sentences = Vec::new();
        let mut push = |f: Formula, sentences: &mut Vec<BatterySentence>| {
            if seen.insert(f.to_string()) {
                sentences.push(BatterySentence::new(f));
            }
        };
        for t in TEMPLATES {
            push(parse_sentence(t).expect("template parses"), &mut sentences);
        }
        while sentences.len() < Self::SIZE {
            let f = random_sentence(&mut rng);
            if quantifier_rank(&f) <= 2 {
                push(f, &mut sentences);
            }
        }
        Battery { seed, sentences }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn sentences(&self) -> &[BatterySentence] {
        &self.sentences
    }
}

fn literal(rng: &mut ChaCha8Rng, vars: &[&str]) -> Formula {
    let a = *vars.choose(rng).unwrap();
    let b = *vars.choose(rng).unwrap();
    let atom = if rng.gen_bool(0.7) { Formula::edge(a, b) } else { Formula::eq(a, b) };
    if rng.gen_bool(0.4) { Formula::not(atom) } else { atom }
}

fn connect(rng: &mut ChaCha8Rng, a: Formula, b: Formula) -> Formula {
    match rng.gen_range(0..4) {
        0 => Formula::and(a, b),
        1 => Formula::or(a, b),
        2 => Formula::implies(a, b),
        _ => Formula::iff(a, b),
    }
}

fn quantifier_free(rng: &mut ChaCha8Rng, vars: &[&str]) -> Formula {
    let mut f = literal(rng, vars);
    for _ in 0..rng.gen_range(0..3) {
        let l = literal(rng, vars);
        f = connect(rng, f, l);
    }
    f
}

fn quantify(rng: &mut ChaCha8Rng, v: &str, body: Formula) -> Formula {
    if rng.gen_bool(0.5) { Formula::forall(v, body) } else { Formula::exists(v, body) }
}

fn block(rng: &mut ChaCha8Rng) -> Formula {
    let body = if rng.gen_bool(0.85) {
        let qf = quantifier_free(rng, &["x", "y"]);
        let inner = quantify(rng, "y", qf);
        if rng.gen_bool(0.3) {
            let side = quantifier_free(rng, &["x"]);
            connect(rng, side, inner)
        } else {
            inner
        }
    } else {
        quantifier_free(rng, &["x"])
    };
    quantify(rng, "x", body)
}

fn random_sentence(rng: &mut ChaCha8Rng) -> Formula {
    let mut f = block(rng);
    if rng.gen_bool(0.4) {
        let b = block(rng);
        f = connect(rng, f, b);
    }
    if rng.gen_bool(0.2) { Formula::not(f) } else { f }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn battery_is_deterministic_and_bounded() {
        let a = Battery::generate(7);
        let b = Battery::generate(7);
        assert_eq!(a.sentences().len(), Battery::SIZE);
        let texts = |bat: &Battery| bat.sentences().iter().map(|s| s.formula().to_string()).collect::<Vec<_>>();
        assert_eq!(texts(&a), texts(&b));
        assert_ne!(texts(&a), texts(&Battery::generate(8)));
        assert!(a.sentences().iter().all(|s| s.rank() <= 2 && s.formula().is_sentence()));
        for k in 0..=2 {
            assert!(a.sentences().iter().any(|s| s.rank() == k));
        }
        for s in a.sentences() {
            assert_eq!(parse_sentence(&s.formula().to_string()).unwrap(), *s.formula());
        }
    }
}
