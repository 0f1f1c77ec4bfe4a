//! Edge-list text format.
//!
//! ```text
//! # comment
//! 3 2
//! a
//! b
//! c
//! a b
//! b c
//! ```
//!
//! The header gives the vertex count `n` and arc count `m`, followed by `n`
//! labels and `m` arcs `u v` (meaning `u -> v`). Text after `#` is ignored.

use crate::digraph::Digraph;
use crate::error::Error;

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let line = match line.find('#') {
            Some(p) => &line[..p],
            None => line,
        }
        .trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn format_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Format {
        line,
        msg: msg.into(),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, Error> {
    let mut lines = content_lines(text);
    let (hl, header) = lines.next().ok_or_else(|| format_err(0, "missing header"))?;
    let mut fields = header.split_whitespace();
    let mut count = |what: &str| -> Result<usize, Error> {
        fields
            .next()
            .ok_or_else(|| format_err(hl, format!("header lacks {what}")))?
            .parse()
            .map_err(|_| format_err(hl, format!("header {what} is not a count")))
    };
    let n = count("vertex count")?;
    let m = count("arc count")?;
    if fields.next().is_some() {
        return Err(format_err(hl, "header has trailing fields"));
    }

    let mut labels = Vec::with_capacity(n);
    for _ in 0..n {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| format_err(0, format!("expected {n} vertex labels")))?;
        if line.split_whitespace().count() != 1 {
            return Err(format_err(ln, "vertex line must hold exactly one label"));
        }
        labels.push(line.to_string());
    }
    let mut arcs = Vec::with_capacity(m);
    for _ in 0..m {
        let (ln, line) = lines
            .next()
            .ok_or_else(|| format_err(0, format!("expected {m} arcs")))?;
        let parts: Vec<&str> = line.split_whitespace().collect();
        if parts.len() != 2 {
            return Err(format_err(ln, "arc line must be `u v`"));
        }
        arcs.push((parts[0].to_string(), parts[1].to_string()));
    }
    if let Some((ln, _)) = lines.next() {
        return Err(format_err(ln, "unexpected content after the last arc"));
    }
    Ok(Digraph::new(labels, arcs.iter())?)
}

pub fn write_edge_list(g: &Digraph) -> String {
    let mut out = format!("{} {}\n", g.order(), g.arc_count());
    for l in g.labels() {
        out.push_str(l);
        out.push('\n');
    }
    for (u, v) in g.arcs() {
        out.push_str(g.label(u));
        out.push(' ');
        out.push_str(g.label(v));
        out.push('\n');
    }
    out
}

/// Graphviz rendering of a digraph; mutual pairs are drawn as one
/// double-headed edge.
pub fn digraph_to_dot(g: &Digraph) -> String {
    let mut out = String::from("digraph G {\n");
    for l in g.labels() {
        out.push_str(&format!("  \"{l}\";\n"));
    }
    for (u, v) in g.arcs() {
        if g.is_mutual(u, v) {
            if u < v {
                out.push_str(&format!(
                    "  \"{}\" -> \"{}\" [dir=both];\n",
                    g.label(u),
                    g.label(v)
                ));
            }
        } else {
            out.push_str(&format!("  \"{}\" -> \"{}\";\n", g.label(u), g.label(v)));
        }
    }
    out.push_str("}\n");
    out
}
