use std::fs;
use std::path::Path;

use diwidth::decomp::{parse_decomposition, Decomposition};
use diwidth::expr::parse_expr;
use diwidth::io::parse_edge_list;
use diwidth::{CoExpr, Digraph};

use crate::commands::CliError;

pub enum Input {
    Expr(CoExpr),
    Graph(Digraph),
}

impl Input {
    pub fn digraph(&self) -> Result<Digraph, CliError> {
        match self {
            Input::Graph(g) => Ok(g.clone()),
            Input::Expr(e) => e.evaluate().map_err(CliError::from),
        }
    }
}

pub fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::input(format!("cannot read: {e}")))
}

fn looks_like_edge_list(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.split_whitespace().all(|t| t.parse::<usize>().is_ok()))
}

/// `.dce` files hold expressions; anything else is an edge list unless its
/// first line is clearly not a header.
pub fn load(path: &Path) -> Result<Input, CliError> {
    let text = read(path)?;
    let is_expr = match path.extension().and_then(|e| e.to_str()) {
        Some("dce") => true,
        _ => !looks_like_edge_list(&text),
    };
    if is_expr {
        Ok(Input::Expr(parse_expr(text.trim())?))
    } else {
        Ok(Input::Graph(parse_edge_list(&text)?))
    }
}

pub fn load_digraph(path: &Path) -> Result<Digraph, CliError> {
    load(path)?.digraph()
}

/// Reads a decomposition file. Leading report lines before the first
/// `kind=` line are skipped, so structured width reports verify directly.
pub fn load_decomposition(path: &Path) -> Result<Option<Decomposition>, CliError> {
    let text = read(path)?;
    let Some(start) = text
        .lines()
        .position(|l| l.trim_start().starts_with("kind="))
    else {
        return Ok(None);
    };
    // Blank out the report lines so error line numbers still match the file.
    let body: Vec<&str> = text
        .lines()
        .enumerate()
        .map(|(i, l)| if i < start { "" } else { l })
        .collect();
    Ok(Some(parse_decomposition(&body.join("\n"))?))
}
