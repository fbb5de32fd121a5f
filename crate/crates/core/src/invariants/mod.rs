//! Graph polynomials computed directly from the graph.

mod charpoly;
mod chromatic;
mod interlace;
pub(crate) mod subsets;
mod tutte;
mod upoly;

pub use charpoly::{characteristic_poly, charpoly_coefficients};
pub use chromatic::{bivariate_chromatic, bivariate_chromatic_count, chromatic, chromatic_symmetric, truncate_power_sums};
pub use interlace::interlace;
pub(crate) use interlace::rank_nullity_poly;
pub use tutte::{rank_nullity, tutte, RankNullity};
pub use upoly::{specialize_u_to_tutte, u_lab, u_poly, xi, xi_lab};

use crate::error::{Error, Result};
use crate::graph::{AnyGraph, ColoredGraph};
use crate::poly::MultiPoly;

/// Names accepted by [`compute`].
pub const NAMES: [&str; 9] = ["tutte", "charpoly", "chromatic", "interlace", "u", "ulab", "xi", "xilab", "xg"];

/// Compute an invariant by name. The edge-labelled ones treat a plain graph
/// as having every edge in color 1; the rest ignore colors.
pub fn compute(name: &str, g: &AnyGraph) -> Result<MultiPoly> {
    let colored = || match g {
        AnyGraph::Plain(p) => ColoredGraph::monochrome(p),
        AnyGraph::Colored(c) => c.clone(),
    };
    let base = g.base();
    Ok(match name {
        "tutte" => tutte(base),
        "charpoly" => characteristic_poly(base),
        "chromatic" => chromatic(base),
        "interlace" => interlace(base),
        "u" => u_poly(base),
        "ulab" => u_lab(&colored()),
        "xi" => xi(base),
        "xilab" => xi_lab(&colored()),
        "xg" => chromatic_symmetric(base),
        _ => return Err(Error::InvalidArgument(format!("unknown invariant `{name}`; expected one of {}", NAMES.join(", ")))),
    })
}
