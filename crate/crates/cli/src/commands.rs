use std::fmt::Write as _;
use std::path::Path;

use diwidth::decomp::{
    build_path_decomposition, build_tree_decomposition, path_to_tree_decomposition, Decomposition,
};
use diwidth::expr::{condensation_expression, recognize_dicograph, Recognition};
use diwidth::generate::{random_expression, rng_from_seed, GeneratorConfig, OpMix};
use diwidth::io::digraph_to_dot;
use diwidth::oracle::dpw_exact;
use diwidth::verify::{verify_path_decomposition, verify_tree_decomposition, Verdict};
use diwidth::width::{annotate, preorder_nodes, width_of_digraph, Method};
use diwidth::{Caps, CoExpr, Digraph, Error, ErrorClass, Side};

use crate::input::{load, load_decomposition, load_digraph, Input};
use crate::output::write_atomic;
use crate::{Format, GlobalOpts, Kind};

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_INPUT: u8 = 2;
pub const EXIT_CAP: u8 = 3;

#[derive(Debug)]
pub struct Outcome {
    pub text: String,
    /// 0, or [`EXIT_NEGATIVE`] for an invalid certificate or a rejected digraph.
    pub code: u8,
}

impl Outcome {
    fn ok(text: String) -> Outcome {
        Outcome { text, code: 0 }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn input(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_INPUT, message: message.into() }
    }

    fn defect(message: impl Into<String>) -> CliError {
        CliError { code: EXIT_NEGATIVE, message: message.into() }
    }
}

impl<E: Into<Error>> From<E> for CliError {
    fn from(e: E) -> CliError {
        let e: Error = e.into();
        let code = match e.class() {
            ErrorClass::Input => EXIT_INPUT,
            ErrorClass::CapExceeded => EXIT_CAP,
        };
        CliError { code, message: e.to_string() }
    }
}

fn caps(opts: &GlobalOpts) -> Caps {
    Caps {
        oracle: opts.oracle_cap as usize,
        recognizer: opts.recognizer_cap as usize,
        ..Caps::default()
    }
}

fn side(s: Option<Side>) -> &'static str {
    match s {
        Some(Side::Left) => " keep=left",
        Some(Side::Right) => " keep=right",
        None => "",
    }
}

fn node_name(e: &CoExpr) -> String {
    match e {
        CoExpr::Leaf(l) => format!("leaf:{l}"),
        CoExpr::Compose { op, .. } => op.name().to_string(),
        CoExpr::Block(_) => "block".to_string(),
    }
}

fn bracket(lo: i64, hi: i64) -> String {
    if lo == hi {
        lo.to_string()
    } else {
        format!("[{lo},{hi}]")
    }
}

pub fn width(path: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    match load(path)? {
        Input::Expr(e) if !e.contains_block() => expression_width(&e, opts.format),
        input => digraph_width(&input.digraph()?, opts),
    }
}

fn expression_width(e: &CoExpr, format: Format) -> Result<Outcome, CliError> {
    let bin = e.binarize();
    let ann = annotate(&bin)?;
    let text = match format {
        Format::Text => format!("dpw={} dtw={}\n", ann.dpw, ann.dtw),
        Format::Dot => build_path_decomposition(&bin, &ann)?.to_dot(),
        Format::Structured => {
            let mut out = String::new();
            writeln!(out, "input_kind=expression").unwrap();
            writeln!(out, "vertices={}", ann.size).unwrap();
            writeln!(out, "dpw={}", ann.dpw).unwrap();
            writeln!(out, "dtw={}", ann.dtw).unwrap();
            for (i, (node, a)) in preorder_nodes(&bin).iter().zip(ann.preorder()).enumerate() {
                writeln!(
                    out,
                    "node={i} op={} size={} dpw={} dtw={}{}",
                    node_name(node),
                    a.size,
                    a.dpw,
                    a.dtw,
                    side(a.series_side)
                )
                .unwrap();
            }
            out.push_str(&build_path_decomposition(&bin, &ann)?.to_text());
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn digraph_width(g: &Digraph, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let w = width_of_digraph(g, &caps(opts))?;
    let cert = w.certificate();
    let text = match opts.format {
        Format::Text => format!("dpw={} dtw={}\n", w.dpw, bracket(w.dtw_lower, w.dtw_upper)),
        Format::Dot => cert.to_dot(),
        Format::Structured => {
            let mut out = String::new();
            writeln!(out, "input_kind=digraph").unwrap();
            writeln!(out, "vertices={}", g.order()).unwrap();
            writeln!(out, "arcs={}", g.arc_count()).unwrap();
            writeln!(out, "components={}", w.components.len()).unwrap();
            writeln!(out, "dpw={}", w.dpw).unwrap();
            writeln!(out, "dtw_lower={}", w.dtw_lower).unwrap();
            writeln!(out, "dtw_upper={}", w.dtw_upper).unwrap();
            for (i, c) in w.components.iter().enumerate() {
                write!(
                    out,
                    "component={i} size={} method={} dpw={} dtw={}",
                    c.vertices.len(),
                    if c.method == Method::Oracle && c.dtw_lower != c.dtw_upper {
                        "bracket"
                    } else {
                        c.method.name()
                    },
                    c.dpw,
                    bracket(c.dtw_lower as i64, c.dtw_upper as i64),
                )
                .unwrap();
                match &c.expression {
                    Some(e) => writeln!(out, " expression={e}").unwrap(),
                    None => writeln!(out, " vertices={{{}}}", c.vertices.join(",")).unwrap(),
                }
            }
            out.push_str(&cert.to_text());
            out
        }
    };
    Ok(Outcome::ok(text))
}

fn certify(g: &Digraph, d: &Decomposition) -> Result<Verdict, CliError> {
    let verdict = match d {
        Decomposition::Path(p) => verify_path_decomposition(g, p)?,
        Decomposition::Tree(t) => verify_tree_decomposition(g, t)?,
    };
    if !verdict.valid {
        return Err(CliError::defect(format!(
            "built certificate failed verification: {}",
            verdict.to_text().trim_end()
        )));
    }
    Ok(verdict)
}

pub fn decompose(path: &Path, kind: Kind, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let input = load(path)?;
    let g = input.digraph()?;
    let d = match input {
        Input::Expr(e) if !e.contains_block() => {
            let bin = e.binarize();
            let ann = annotate(&bin)?;
            match kind {
                Kind::Path => Decomposition::Path(build_path_decomposition(&bin, &ann)?),
                Kind::Tree => Decomposition::Tree(build_tree_decomposition(&bin, &ann)?),
            }
        }
        _ => {
            let p = width_of_digraph(&g, &caps(opts))?.certificate();
            match kind {
                Kind::Path => Decomposition::Path(p),
                Kind::Tree => Decomposition::Tree(path_to_tree_decomposition(&g, &p)?),
            }
        }
    };
    certify(&g, &d)?;
    let text = match opts.format {
        Format::Dot => d.to_dot(),
        _ => d.to_text(),
    };
    Ok(Outcome::ok(text))
}

pub fn verify(graph: &Path, decomposition: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let g = load_digraph(graph)?;
    let d = load_decomposition(decomposition)?
        .ok_or_else(|| CliError::input("no `kind=path` or `kind=tree` header"))?;
    let verdict = match &d {
        Decomposition::Path(p) => verify_path_decomposition(&g, p)?,
        Decomposition::Tree(t) => verify_tree_decomposition(&g, t)?,
    };
    let text = match opts.format {
        Format::Structured => {
            let mut out = format!("valid={}\nwidth={}\n", verdict.valid, verdict.width);
            for v in &verdict.violations {
                writeln!(out, "violation={v}").unwrap();
            }
            out
        }
        _ => verdict.to_text(),
    };
    Ok(Outcome {
        text,
        code: if verdict.valid { 0 } else { EXIT_NEGATIVE },
    })
}

pub fn oracle(path: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let g = load_digraph(path)?;
    if g.is_empty() {
        return Ok(Outcome::ok("dpw=-1\n".into()));
    }
    let sol = dpw_exact(&g, opts.oracle_cap as usize)?;
    let text = match opts.format {
        Format::Text => format!("dpw={}\n", sol.width),
        Format::Dot => sol.decomposition.to_dot(),
        Format::Structured => format!(
            "dpw={}\nordering={}\n{}",
            sol.width,
            sol.ordering.join(","),
            sol.decomposition.to_text()
        ),
    };
    Ok(Outcome::ok(text))
}

pub fn recognize(path: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let g = load_digraph(path)?;
    let out = match recognize_dicograph(&g, opts.recognizer_cap as usize)? {
        Recognition::Cograph(e) => Outcome::ok(match opts.format {
            Format::Structured => format!("cograph=true\nexpression={e}\n"),
            _ => format!("{e}\n"),
        }),
        Recognition::NotCograph { witness } => Outcome {
            text: match opts.format {
                Format::Structured => format!("cograph=false\nwitness={}\n", witness.join(",")),
                _ => format!("not a directed co-graph; witness {{{}}}\n", witness.join(",")),
            },
            code: EXIT_NEGATIVE,
        },
    };
    Ok(out)
}

pub fn condense(path: &Path, opts: &GlobalOpts) -> Result<Outcome, CliError> {
    let g = load_digraph(path)?;
    if g.is_empty() {
        return Ok(Outcome::ok("components=0\n".into()));
    }
    let e = condensation_expression(&g, opts.recognizer_cap as usize)?;
    if e.evaluate()? != g {
        return Err(CliError::defect("condensation expression does not rebuild the input"));
    }
    if opts.format == Format::Dot {
        return Ok(Outcome::ok(digraph_to_dot(&g)));
    }
    let cond = g.strong_components();
    let mut out = format!("components={}\n", cond.len());
    for (i, comp) in cond.components.iter().enumerate() {
        let labels: Vec<&str> = comp.iter().map(|&v| g.label(v)).collect();
        writeln!(out, "component={i} vertices={{{}}}", labels.join(",")).unwrap();
    }
    writeln!(out, "expression={e}").unwrap();
    Ok(Outcome::ok(out))
}

pub struct GenerateArgs<'a> {
    pub seed: u64,
    pub count: usize,
    pub min_size: usize,
    pub max_size: usize,
    pub mix: &'a str,
    pub max_arity: usize,
    pub arc_density: f64,
    pub out_dir: Option<&'a Path>,
}

fn parse_mix(s: &str) -> Result<OpMix, CliError> {
    match s {
        "cograph" => return Ok(OpMix::cograph()),
        "extended" => return Ok(OpMix::extended()),
        _ => {}
    }
    let w: Vec<u32> = s
        .split(':')
        .map(|t| t.parse::<u32>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::input(format!("bad operator mix `{s}`")))?;
    match w[..] {
        [union, series, order, directed_union] if w.iter().any(|&x| x > 0) => Ok(OpMix {
            union,
            series,
            order,
            directed_union,
        }),
        _ => Err(CliError::input(format!("bad operator mix `{s}`"))),
    }
}

pub fn generate(args: &GenerateArgs<'_>) -> Result<Outcome, CliError> {
    if args.min_size > args.max_size {
        return Err(CliError::input("--min-size exceeds --max-size"));
    }
    if args.max_arity < 2 {
        return Err(CliError::input("--max-arity must be at least 2"));
    }
    if !(0.0..=1.0).contains(&args.arc_density) {
        return Err(CliError::input("--arc-density must lie in [0, 1]"));
    }
    let cfg = GeneratorConfig {
        min_size: args.min_size,
        max_size: args.max_size,
        mix: parse_mix(args.mix)?,
        max_arity: args.max_arity,
        arc_density: args.arc_density,
    };
    let mut rng = rng_from_seed(args.seed);
    let exprs: Vec<CoExpr> = (0..args.count).map(|_| random_expression(&mut rng, &cfg)).collect();
    let width = args.count.saturating_sub(1).to_string().len().max(4);
    match args.out_dir {
        Some(dir) => {
            std::fs::create_dir_all(dir)
                .map_err(|e| CliError::input(format!("cannot create {}: {e}", dir.display())))?;
            for (i, e) in exprs.iter().enumerate() {
                let file = dir.join(format!("expr-{i:0width$}.dce"));
                write_atomic(&file, &format!("{e}\n"))?;
            }
            Ok(Outcome::ok(format!("wrote {} expressions to {}\n", exprs.len(), dir.display())))
        }
        None => Ok(Outcome::ok(exprs.iter().map(|e| format!("{e}\n")).collect())),
    }
}

pub fn export_dot(path: &Path) -> Result<Outcome, CliError> {
    if let Some(d) = load_decomposition(path)? {
        return Ok(Outcome::ok(d.to_dot()));
    }
    Ok(Outcome::ok(digraph_to_dot(&load_digraph(path)?)))
}
