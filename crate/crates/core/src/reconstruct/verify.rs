//! Exhaustive comparison of reconstructed and directly computed invariants.

use std::cell::RefCell;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::Reconstructor;
use crate::error::{Error, Result};
use crate::graph::io::{emit_colored, emit_graph6};
use crate::graph::{deck, enumerate_graphs, gf2_rank, perfect_matching_count, ColoredGraph, Deck, Graph};
use crate::invariants;
use crate::poly::MultiPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Invariant {
    U,
    ULab,
    Xi,
    XiLab,
    Interlace,
    Rank,
    PmParity,
}

impl Invariant {
    pub const ALL: [Invariant; 7] = [
        Invariant::U,
        Invariant::ULab,
        Invariant::Xi,
        Invariant::XiLab,
        Invariant::Interlace,
        Invariant::Rank,
        Invariant::PmParity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Invariant::U => "u",
            Invariant::ULab => "ulab",
            Invariant::Xi => "xi",
            Invariant::XiLab => "xilab",
            Invariant::Interlace => "interlace",
            Invariant::Rank => "rank",
            Invariant::PmParity => "pmparity",
        }
    }

    /// Whether edge colors take part in the invariant.
    pub fn uses_colors(self) -> bool {
        matches!(self, Invariant::ULab | Invariant::XiLab)
    }

    /// Deck-only side.
    pub fn reconstruct(self, r: &mut Reconstructor, d: &Deck) -> Result<MultiPoly> {
        Ok(match self {
            Invariant::U => r.u(d)?,
            Invariant::ULab => r.u_lab(d)?,
            Invariant::Xi => r.xi(d)?,
            Invariant::XiLab => r.xi_lab(d)?,
            Invariant::Interlace => r.interlace(d)?,
            Invariant::Rank => MultiPoly::constant(r.gf2_rank(d)? as i64),
            Invariant::PmParity => MultiPoly::constant(r.perfect_matching_parity(d)? as i64),
        })
    }

    /// Direct side, from the graph.
    pub fn direct(self, g: &ColoredGraph) -> MultiPoly {
        let base = g.base();
        match self {
            Invariant::U => invariants::u_poly(base),
            Invariant::ULab => invariants::u_lab(g),
            Invariant::Xi => invariants::xi(base),
            Invariant::XiLab => invariants::xi_lab(g),
            Invariant::Interlace => invariants::interlace(base),
            Invariant::Rank => MultiPoly::constant(gf2_rank(base) as i64),
            Invariant::PmParity => MultiPoly::constant((perfect_matching_count(base) % 2) as i64),
        }
    }
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Invariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Invariant::ALL
            .into_iter()
            .find(|i| i.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown invariant `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub invariant: Invariant,
    pub min_n: usize,
    pub max_n: usize,
    /// Palette for random edge colorings; `None` checks plain graphs.
    pub colors: Option<u8>,
    /// Random colorings per graph when `colors` is set.
    pub colorings: usize,
    pub seed: u64,
    pub timing: bool,
}

impl VerifyConfig {
    pub fn new(invariant: Invariant, max_n: usize) -> Self {
        VerifyConfig {
            invariant,
            min_n: 3,
            max_n,
            colors: None,
            colorings: 20,
            seed: 0,
            timing: false,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Mismatch {
    pub graph6: String,
    /// Colored edge list, for colored runs.
    pub coloring: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub graph6: String,
    pub micros: u128,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub invariant: Invariant,
    pub min_n: usize,
    pub max_n: usize,
    pub colors: Option<u8>,
    pub seed: u64,
    /// `(n, graphs checked)` per order.
    pub graphs_per_order: Vec<(usize, usize)>,
    pub checks: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Vec<Timing>>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }

    pub fn graphs(&self) -> usize {
        self.graphs_per_order.iter().map(|p| p.1).sum()
    }
}

/// Compare the reconstruction from `d` with the direct value on `g`.
/// Returns a description of the disagreement, if any.
pub fn check_deck(r: &mut Reconstructor, invariant: Invariant, d: &Deck, g: &ColoredGraph) -> Option<String> {
    let expected = invariant.direct(g);
    match invariant.reconstruct(r, d) {
        Ok(p) if p == expected => None,
        Ok(p) => Some(format!("reconstructed {p}, direct {expected}")),
        Err(e) => Some(e.to_string()),
    }
}

thread_local! {
    static WORKER: RefCell<Reconstructor> = RefCell::new(Reconstructor::new());
}

struct Case {
    graph: Graph,
    colored: ColoredGraph,
}

/// Sweep all graphs of order `min_n..=max_n`.
pub fn verify_reconstruction(cfg: &VerifyConfig) -> Result<VerifyReport> {
    if cfg.min_n < 3 {
        return Err(Error::InvalidArgument("sweeps start at order 3".into()));
    }
    let mut graphs_per_order = Vec::new();
    let mut cases = Vec::new();
    for n in cfg.min_n..=cfg.max_n {
        let graphs: Vec<Graph> = enumerate_graphs(n, false)?.collect();
        graphs_per_order.push((n, graphs.len()));
        for (i, g) in graphs.into_iter().enumerate() {
            match cfg.colors {
                Some(palette) if cfg.invariant.uses_colors() => {
                    let mut rng = ChaCha8Rng::seed_from_u64(mix(cfg.seed, n as u64, i as u64));
                    for _ in 0..cfg.colorings {
                        let colors: Vec<u8> = (0..g.edge_count()).map(|_| rng.gen_range(1..=palette)).collect();
                        let colored = ColoredGraph::with_colors(&g, palette, &colors)?;
                        cases.push(Case { graph: g.clone(), colored });
                    }
                }
                _ => {
                    let colored = ColoredGraph::monochrome(&g);
                    cases.push(Case { graph: g, colored });
                }
            }
        }
    }
    let colored_run = cfg.colors.is_some() && cfg.invariant.uses_colors();
    let results: Vec<(Option<Mismatch>, Timing)> = cases
        .par_iter()
        .map(|case| {
            let start = Instant::now();
            let outcome = WORKER.with(|w| {
                let mut r = w.borrow_mut();
                let d = if colored_run { deck(&case.colored) } else { deck(&case.graph) };
                match d {
                    Ok(d) => check_deck(&mut r, cfg.invariant, &d, &case.colored),
                    Err(e) => Some(e.to_string()),
                }
            });
            let graph6 = emit_graph6(&case.graph);
            let timing = Timing {
                graph6: graph6.clone(),
                micros: start.elapsed().as_micros(),
            };
            let mismatch = outcome.map(|detail| Mismatch {
                graph6,
                coloring: colored_run.then(|| emit_colored(&case.colored)),
                detail,
            });
            (mismatch, timing)
        })
        .collect();
    let checks = results.len();
    let mut mismatches: Vec<Mismatch> = Vec::new();
    let mut timings = Vec::new();
    for (m, t) in results {
        mismatches.extend(m);
        timings.push(t);
    }
    mismatches.sort_by(|a, b| (&a.graph6, &a.coloring).cmp(&(&b.graph6, &b.coloring)));
    timings.sort_by(|a, b| a.graph6.cmp(&b.graph6));
    Ok(VerifyReport {
        invariant: cfg.invariant,
        min_n: cfg.min_n,
        max_n: cfg.max_n,
        colors: if colored_run { cfg.colors } else { None },
        seed: cfg.seed,
        graphs_per_order,
        checks,
        mismatches,
        timings: cfg.timing.then_some(timings),
    })
}

fn mix(seed: u64, n: u64, i: u64) -> u64 {
    seed ^ n.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ i.wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
}
