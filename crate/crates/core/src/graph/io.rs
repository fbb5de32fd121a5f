//! Text formats: graph6, the colored edge list, deck files and pointed
//! graph6 (`<graph6>:<root>`).
//!
//! Colored edge list: records separated by newlines or `;`. The first record
//! is the order `n`, an optional second single-integer record is the palette
//! size `Λ`, and every further record is `u v c`. `emit_colored` writes the
//! single-line form `n; Λ; u v c; ...` so that it fits on one deck line.

use super::{canonical_form, AnyGraph, CanonicalForm, ColoredGraph, Deck, Graph};
use crate::error::{Error, Result};

const GRAPH6_HEADER: &str = ">>graph6<<";

pub fn emit_graph6(g: &Graph) -> String {
    let n = g.order();
    let mut out = String::new();
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else {
        out.push(126 as char);
        for shift in [12, 6, 0] {
            out.push((((n >> shift) & 63) as u8 + 63) as char);
        }
    }
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
            nbits += 1;
            if nbits == 6 {
                out.push((acc + 63) as char);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push(((acc << (6 - nbits)) + 63) as char);
    }
    out
}

/// Parse one graph6 string. Byte offsets in errors are relative to `text`.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let trimmed = text.trim_end();
    let (body, base) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (rest, GRAPH6_HEADER.len()),
        None => (trimmed, 0),
    };
    let bytes = body.as_bytes();
    for (i, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(Error::parse(base + i, format!("byte {b:#04x} outside the graph6 alphabet")));
        }
    }
    if bytes.is_empty() {
        return Err(Error::parse(base, "empty graph6 string"));
    }
    let (n, mut pos) = if bytes[0] < 126 {
        ((bytes[0] - 63) as usize, 1)
    } else {
        if bytes.len() < 4 || bytes[1] == 126 {
            return Err(Error::parse(base + 1, "unsupported graph6 size header"));
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| a << 6 | (b - 63) as usize);
        (n, 4)
    };
    if n > super::MAX_ORDER {
        return Err(Error::parse(base, format!("order {n} exceeds {}", super::MAX_ORDER)));
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(Error::parse(
            base + bytes.len().min(pos + need),
            format!("expected {need} adjacency bytes for order {n}, found {}", bytes.len() - pos),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = bytes[pos + k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
            if k == nbits {
                break 'outer;
            }
        }
    }
    pos += need;
    if nbits % 6 != 0 {
        let last = bytes[pos - 1] - 63;
        if last & ((1 << (6 - nbits % 6)) - 1) != 0 {
            return Err(Error::parse(base + pos - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}

pub fn emit_colored(g: &ColoredGraph) -> String {
    let mut out = format!("{}; {}", g.order(), g.palette());
    for (u, v, c) in g.edges() {
        out.push_str(&format!("; {u} {v} {c}"));
    }
    out
}

pub fn parse_colored(text: &str) -> Result<ColoredGraph> {
    let mut records = Vec::new();
    let mut start = 0;
    for (i, ch) in text.char_indices() {
        if ch == ';' || ch == '\n' {
            records.push((start, &text[start..i]));
            start = i + 1;
        }
    }
    records.push((start, &text[start..]));
    let mut records = records.into_iter().filter(|(_, r)| !r.trim().is_empty()).map(|(off, r)| {
        let lead = r.len() - r.trim_start().len();
        (off + lead, r.trim())
    });
    let (off, header) = records.next().ok_or_else(|| Error::parse(0, "empty edge list"))?;
    let n = parse_uint(header, off)?;
    if n > super::MAX_ORDER {
        return Err(Error::parse(off, format!("order {n} exceeds {}", super::MAX_ORDER)));
    }
    let mut palette = None;
    let mut edges: Vec<(usize, usize, u8)> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (idx, (off, rec)) in records.enumerate() {
        let fields: Vec<&str> = rec.split_whitespace().collect();
        if idx == 0 && fields.len() == 1 {
            let p = parse_uint(rec, off)?;
            if p == 0 || p > 255 {
                return Err(Error::parse(off, format!("palette size {p} out of range 1..=255")));
            }
            palette = Some(p as u8);
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::parse(off, format!("expected `u v c`, found `{rec}`")));
        }
        let mut vals = [0usize; 3];
        let mut field_off = off;
        for (slot, f) in vals.iter_mut().zip(&fields) {
            let rel = rec[field_off - off..].find(f).unwrap() + (field_off - off);
            field_off = off + rel + f.len();
            *slot = parse_uint(f, off + rel)?;
        }
        let [u, v, c] = vals;
        if u >= n || v >= n {
            return Err(Error::parse(off, format!("vertex out of range in `{rec}` (order {n})")));
        }
        if u == v {
            return Err(Error::parse(off, format!("self-loop in `{rec}`")));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(Error::parse(off, format!("duplicate edge in `{rec}`")));
        }
        if c == 0 || c > 255 {
            return Err(Error::parse(off, format!("color {c} out of range")));
        }
        edges.push((u, v, c as u8));
    }
    let used = edges.iter().map(|e| e.2).max().unwrap_or(1);
    let palette = palette.unwrap_or(used);
    if used > palette {
        return Err(Error::parse(0, format!("color {used} exceeds palette {palette}")));
    }
    ColoredGraph::from_edges(n, palette, &edges).map_err(|e| Error::parse(0, e.to_string()))
}

fn parse_uint(s: &str, offset: usize) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| Error::parse(offset, format!("expected a nonnegative integer, found `{}`", s.trim())))
}

/// Parse either format: text starting with a digit is an edge list,
/// anything else is graph6.
pub fn parse_graph(text: &str) -> Result<AnyGraph> {
    let lead = text.len() - text.trim_start().len();
    let body = text.trim();
    if body.starts_with(|c: char| c.is_ascii_digit()) {
        parse_colored(body).map(AnyGraph::Colored).map_err(|e| shift(e, lead))
    } else {
        parse_graph6(body).map(AnyGraph::Plain).map_err(|e| shift(e, lead))
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { offset, message } => Error::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

pub fn emit_graph(g: &AnyGraph) -> String {
    match g {
        AnyGraph::Plain(g) => emit_graph6(g),
        AnyGraph::Colored(g) => emit_colored(g),
    }
}

/// `n=<order>` followed by one card per line, in canonical order.
pub fn emit_deck(deck: &Deck) -> String {
    let mut out = format!("n={}\n", deck.order());
    for card in deck.card_list() {
        out.push_str(&emit_form(&card, deck.palette()));
        out.push('\n');
    }
    out
}

fn emit_form(form: &CanonicalForm, palette: Option<u8>) -> String {
    match palette {
        None => emit_graph6(&form.to_graph()),
        Some(p) => emit_colored(&form.decode::<ColoredGraph>(Some(p))),
    }
}

/// Parse a deck file. Blank lines and `#` comments are ignored.
pub fn parse_deck(text: &str) -> Result<Deck> {
    let mut n = None;
    let mut cards = Vec::new();
    let mut palette: Option<u8> = None;
    let mut colored = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let body = line.trim();
        if body.is_empty() || body.starts_with('#') {
            continue;
        }
        let lead = line.len() - line.trim_start().len();
        if n.is_none() {
            let rest = body
                .strip_prefix("n=")
                .ok_or_else(|| Error::parse(here + lead, "deck must start with `n=<order>`"))?;
            n = Some(parse_uint(rest, here + lead + 2)?);
            continue;
        }
        let card = parse_graph(line).map_err(|e| shift(e, here))?;
        if *colored.get_or_insert(card.is_colored()) != card.is_colored() {
            return Err(Error::parse(here + lead, "deck mixes colored and uncolored cards"));
        }
        if let AnyGraph::Colored(c) = &card {
            palette = Some(palette.map_or(c.palette(), |p| p.max(c.palette())));
        }
        cards.push(card.canonical_form());
    }
    let n = n.ok_or_else(|| Error::parse(0, "missing `n=<order>` line"))?;
    Deck::new(n, palette, cards)
}

/// Pointed graph as `<graph6>:<root>`.
pub fn emit_pointed(form: &CanonicalForm) -> String {
    format!("{}:0", emit_graph6(&form.to_graph()))
}

pub fn parse_pointed(text: &str) -> Result<(Graph, usize)> {
    let text = text.trim();
    let (g6, root) = text
        .rsplit_once(':')
        .ok_or_else(|| Error::parse(text.len(), "missing `:root` suffix"))?;
    let g = parse_graph6(g6)?;
    let r = parse_uint(root, g6.len() + 1)?;
    if r >= g.order() {
        return Err(Error::parse(g6.len() + 1, format!("root {r} out of range")));
    }
    Ok((g, r))
}

/// Canonical graph6 key of a plain graph, used to identify graphs in reports.
pub fn canonical_graph6(g: &Graph) -> String {
    emit_graph6(&canonical_form(g).to_graph())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_form, deck};

    #[test]
    fn graph6_known_strings() {
        assert_eq!(emit_graph6(&Graph::complete(2)), "A_");
        assert_eq!(emit_graph6(&Graph::complete(3)), "Bw");
        assert_eq!(emit_graph6(&Graph::empty(0)), "?");
        // From the graph6 format description.
        let g = Graph::from_edges(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(emit_graph6(&g), "DQc");
        assert_eq!(parse_graph6("DQc").unwrap(), g);
        assert_eq!(parse_graph6(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn graph6_round_trip_large() {
        let g = Graph::cycle(62);
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
        let g = Graph::cycle(64);
        assert_eq!(parse_graph6(&emit_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn graph6_two_vertex_alphabet() {
        // Order 2 has one adjacency bit followed by five zero padding bits.
        for b in 63u8..=126 {
            let s = format!("A{}", b as char);
            let ok = parse_graph6(&s).is_ok();
            assert_eq!(ok, b == b'?' || b == b'_', "{s}");
        }
        assert!(parse_graph6("A").is_err());
        assert!(parse_graph6("A__").is_err());
        assert!(parse_graph6("A_\n").is_ok());
        match parse_graph6("A\u{1}") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 1),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn colored_edge_list() {
        let g = parse_colored("3; 0 1 1; 1 2 2").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.color(0, 1), Some(1));
        assert_eq!(g.color(1, 2), Some(2));
        assert_eq!(g.palette(), 2);
        let h = parse_colored("3; 4\n0 1 1\n").unwrap();
        assert_eq!(h.palette(), 4);
        assert_eq!(parse_colored(&emit_colored(&g)).unwrap(), g);
    }

    #[test]
    fn colored_edge_list_errors_carry_offsets() {
        match parse_colored("3; 0 5 1") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_colored("3; 0 1 1; 1 0 2") {
            Err(Error::Parse { offset, .. }) => assert_eq!(offset, 10),
            other => panic!("{other:?}"),
        }
        assert!(parse_colored("x").is_err());
        assert!(parse_colored("3; 0 1").is_err());
    }

    #[test]
    fn deck_file_round_trip() {
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 2)]).unwrap();
        let d = deck(&g).unwrap();
        let text = emit_deck(&d);
        assert_eq!(parse_deck(&text).unwrap(), d);
        let cg = ColoredGraph::from_edges(4, 2, &[(0, 1, 1), (1, 2, 2), (2, 3, 1)]).unwrap();
        let cd = deck(&cg).unwrap();
        assert_eq!(parse_deck(&emit_deck(&cd)).unwrap(), cd);
        assert!(parse_deck("B_\n").is_err());
        assert!(parse_deck("# comment\nn=3\nA_\nA_\n").is_err());
    }

    #[test]
    fn pointed_round_trip() {
        let f = crate::graph::canon::pointed_canonical_form(&Graph::path(3), 1);
        let (g, r) = parse_pointed(&emit_pointed(&f)).unwrap();
        assert_eq!(crate::graph::canon::pointed_canonical_form(&g, r), f);
        let _ = canonical_form(&g);
    }
}
