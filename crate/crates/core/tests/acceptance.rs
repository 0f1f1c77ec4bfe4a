//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::collections::HashSet;
use std::process::ExitCode;
use std::time::Instant;

use diwidth::decomp::{
    build_path_decomposition, build_tree_decomposition, normalize_singleton_bags,
    path_to_tree_decomposition,
};
use diwidth::generate::{random_digraph, random_expression, rng_from_seed, GeneratorConfig, OpMix};
use diwidth::oracle::{dpw_exact, dtw_bracket, pw_exact_undirected};
use diwidth::verify::{is_z_normal, verify_path_decomposition, verify_tree_decomposition};
use diwidth::width::{annotate, compute_dpw, compute_dtw};
use diwidth::{ArborealDecomposition, Caps, CoExpr, Digraph, UndirectedGraph};
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn corpus(mix: OpMix, count: u64, seed_base: u64) -> Vec<CoExpr> {
    let cfg = GeneratorConfig {
        min_size: 2,
        max_size: 10,
        mix,
        ..GeneratorConfig::default()
    };
    (0..count)
        .map(|i| random_expression(&mut rng_from_seed(seed_base + i), &cfg))
        .collect()
}

fn cographs() -> Vec<CoExpr> {
    corpus(OpMix::cograph(), 600, 1000)
}

fn extended() -> Vec<CoExpr> {
    corpus(OpMix::extended(), 300, 5000)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn formula_matches_oracle() -> Outcome {
    let start = Instant::now();
    let exprs = cographs();
    for e in &exprs {
        let bin = e.binarize();
        let formula = compute_dpw(&bin).map_err(|x| x.to_string())?;
        let g = e.evaluate().map_err(|x| x.to_string())?;
        let exact = dpw_exact(&g, 12).map_err(|x| x.to_string())?.width;
        ensure(formula == exact, || format!("{e}: formula {formula}, oracle {exact}"))?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} expressions agree in {secs:.2}s", exprs.len()))
}

fn dtw_equals_dpw() -> Outcome {
    let caps = Caps::default();
    let exprs = cographs();
    for e in &exprs {
        let bin = e.binarize();
        let dpw = compute_dpw(&bin).map_err(|x| x.to_string())?;
        let dtw = compute_dtw(&bin).map_err(|x| x.to_string())?;
        ensure(dpw == dtw, || format!("{e}: dpw {dpw}, dtw {dtw}"))?;
        let g = e.evaluate().map_err(|x| x.to_string())?;
        let (lo, hi) = dtw_bracket(&g, &caps).map_err(|x| x.to_string())?;
        ensure(lo == hi && hi == dtw as i64, || {
            format!("{e}: bracket ({lo}, {hi}), formula {dtw}")
        })?;
    }
    Ok(format!("{} expressions, all brackets collapsed", exprs.len()))
}

fn certificates_verify() -> Outcome {
    let mut checked = 0;
    for e in cographs().iter().chain(extended().iter()) {
        let bin = e.binarize();
        let g = e.evaluate().map_err(|x| x.to_string())?;
        let ann = annotate(&bin).map_err(|x| x.to_string())?;
        let p = build_path_decomposition(&bin, &ann).map_err(|x| x.to_string())?;
        let v = verify_path_decomposition(&g, &p).map_err(|x| x.to_string())?;
        ensure(v.valid && v.width == ann.dpw as i64, || {
            format!("{e}: path certificate {v} against dpw {}", ann.dpw)
        })?;
        let t = build_tree_decomposition(&bin, &ann).map_err(|x| x.to_string())?;
        let v = verify_tree_decomposition(&g, &t).map_err(|x| x.to_string())?;
        ensure(v.valid && v.width == ann.dtw as i64, || {
            format!("{e}: tree certificate {v} against dtw {}", ann.dtw)
        })?;
        checked += 1;
    }
    Ok(format!("{checked} expressions (600 co-graph, 300 extended), both certificates exact"))
}

fn star(n: usize) -> CoExpr {
    let leaves: Vec<CoExpr> = (1..=n).map(|i| CoExpr::leaf(format!("l{i}"))).collect();
    let rest = if n == 1 {
        leaves.into_iter().next().unwrap()
    } else {
        CoExpr::union(leaves)
    };
    CoExpr::series(vec![CoExpr::leaf("c"), rest])
}

fn leaves(n: usize) -> Vec<CoExpr> {
    (1..=n).map(|i| CoExpr::leaf(format!("v{i}"))).collect()
}

fn fixture(e: &CoExpr, expected: usize) -> Result<(), String> {
    let bin = e.binarize();
    let g = e.evaluate().map_err(|x| x.to_string())?;
    let dpw = compute_dpw(&bin).map_err(|x| x.to_string())?;
    let dtw = compute_dtw(&bin).map_err(|x| x.to_string())?;
    let exact = dpw_exact(&g, 12).map_err(|x| x.to_string())?.width;
    let (lo, hi) = dtw_bracket(&g, &Caps::default()).map_err(|x| x.to_string())?;
    ensure(
        dpw == expected && dtw == expected && exact == expected && lo == hi && hi == expected as i64,
        || format!("{e}: dpw {dpw}, dtw {dtw}, oracle {exact}, bracket ({lo}, {hi}), expected {expected}"),
    )
}

fn fixtures() -> Outcome {
    fixture(&CoExpr::leaf("v"), 0)?;
    for n in 1..=8 {
        let e = star(n);
        fixture(&e, 1)?;
        let g = e.evaluate().map_err(|x| x.to_string())?;
        let clique = g.largest_bioriented_clique(20).map_err(|x| x.to_string())?;
        ensure(clique.len() == 2, || format!("star {n}: clique {clique:?}"))?;
    }
    for n in 2..=8 {
        fixture(&CoExpr::series(leaves(n)), n - 1)?;
        fixture(&CoExpr::order(leaves(n)), 0)?;
    }
    Ok("single vertex, stars 1..8, cliques 2..8, transitive tournaments 2..8".into())
}

/// Copy of `e` with every label prefixed.
fn relabel(e: &CoExpr, prefix: &str) -> CoExpr {
    match e {
        CoExpr::Leaf(l) => CoExpr::leaf(format!("{prefix}{l}")),
        CoExpr::Compose { op, children } => CoExpr::Compose {
            op: op.clone(),
            children: children.iter().map(|c| relabel(c, prefix)).collect(),
        },
        CoExpr::Block(_) => unreachable!("generated expressions have no blocks"),
    }
}

fn order_gap() -> Outcome {
    let cfg = GeneratorConfig {
        min_size: 1,
        max_size: 5,
        ..GeneratorConfig::default()
    };
    let mut rng = rng_from_seed(77);
    for i in 0..100 {
        let g = relabel(&random_expression(&mut rng, &cfg), "g");
        let h = relabel(&random_expression(&mut rng, &cfg), "h");
        let e = CoExpr::order(vec![g, h]);
        let d = e.evaluate().map_err(|x| x.to_string())?;
        let pw = pw_exact_undirected(&d.underlying(), 12)
            .map_err(|x| x.to_string())?
            .width;
        let dpw = dpw_exact(&d, 12).map_err(|x| x.to_string())?.width;
        ensure(pw > dpw, || format!("pair {i} {e}: pw {pw}, dpw {dpw}"))?;
    }
    Ok("100 pairs strictly separated".into())
}

fn strong_components_law() -> Outcome {
    let mut rng = rng_from_seed(99);
    let mut nontrivial = 0;
    for i in 0..100 {
        let n = rng.gen_range(1..=10);
        let p = [0.15, 0.25, 0.4][i % 3];
        let g = random_digraph(&mut rng, n, p);
        let whole = dpw_exact(&g, 12).map_err(|x| x.to_string())?.width;
        let cond = g.strong_components();
        if cond.len() > 1 {
            nontrivial += 1;
        }
        let mut best = 0;
        for comp in &cond.components {
            best = best.max(dpw_exact(&g.induced(comp), 12).map_err(|x| x.to_string())?.width);
        }
        ensure(whole == best, || format!("digraph {i} ({n} vertices): whole {whole}, components {best}"))?;
    }
    Ok(format!("100 digraphs, {nontrivial} with several strong components"))
}

fn conversion_and_normalization() -> Outcome {
    let mut checked = 0;
    for e in cographs().iter().chain(extended().iter()) {
        let bin = e.binarize();
        let g = e.evaluate().map_err(|x| x.to_string())?;
        let ann = annotate(&bin).map_err(|x| x.to_string())?;
        let p = build_path_decomposition(&bin, &ann).map_err(|x| x.to_string())?;
        let converted = path_to_tree_decomposition(&g, &p).map_err(|x| x.to_string())?;
        let v = verify_tree_decomposition(&g, &converted).map_err(|x| x.to_string())?;
        ensure(v.valid && v.width <= p.width(), || {
            format!("{e}: converted {v} from path width {}", p.width())
        })?;
        let built = build_tree_decomposition(&bin, &ann).map_err(|x| x.to_string())?;
        for d in [&converted, &built] {
            let n = normalize_singleton_bags(&g, d).map_err(|x| x.to_string())?;
            let v = verify_tree_decomposition(&g, &n).map_err(|x| x.to_string())?;
            ensure(v.valid && v.width <= d.width() && singleton(&n), || {
                format!("{e}: normalized {v} from width {}", d.width())
            })?;
        }
        checked += 1;
    }
    Ok(format!("{checked} expressions, three conversions each"))
}

fn singleton(d: &ArborealDecomposition) -> bool {
    d.nodes.iter().all(|n| n.w.len() == 1)
}

/// All digraphs on `n` labelled vertices.
fn all_digraphs(n: usize) -> impl Iterator<Item = Digraph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (0..n).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let labels: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    (0u32..1 << pairs.len()).map(move |mask| {
        let arcs = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &a)| a);
        Digraph::from_indices(labels.clone(), arcs).unwrap()
    })
}

/// `(first, last, visited)` for every walk in `g - z`, as masks.
fn walk_signatures(g: &Digraph, z: u32) -> HashSet<(usize, usize, u32)> {
    let n = g.order();
    let mut seen = HashSet::new();
    let mut stack: Vec<(usize, usize, u32)> = (0..n)
        .filter(|&v| z >> v & 1 == 0)
        .map(|v| (v, v, 1 << v))
        .collect();
    while let Some(state) = stack.pop() {
        if !seen.insert(state) {
            continue;
        }
        let (first, at, mask) = state;
        for &w in g.out_neighbors(at) {
            if z >> w & 1 == 0 {
                stack.push((first, w, mask | 1 << w));
            }
        }
    }
    seen
}

fn z_normality_exhaustive() -> Outcome {
    let mut checks = 0u64;
    for n in 1..=4 {
        for g in all_digraphs(n) {
            for z in 0u32..1 << n {
                let walks = walk_signatures(&g, z);
                for s in 0u32..1 << n {
                    let bad = walks.iter().any(|&(first, last, mask)| {
                        s >> first & 1 == 1 && s >> last & 1 == 1 && mask & !s != 0
                    });
                    let members = |m: u32| (0..n).filter(|&v| m >> v & 1 == 1).collect::<Vec<_>>();
                    let (normal, witness) = is_z_normal(&g, &members(s), &members(z));
                    ensure(normal == !bad, || {
                        format!("{g:?} S={s:b} Z={z:b}: checker {normal}, walks say {}", !bad)
                    })?;
                    if let Some(w) = witness {
                        check_witness(&g, s, z, &w)?;
                    }
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} (digraph, S, Z) triples"))
}

fn check_witness(g: &Digraph, s: u32, z: u32, walk: &[String]) -> Result<(), String> {
    let idx: Vec<usize> = walk.iter().map(|l| g.index_of(l).unwrap()).collect();
    let ok = idx.len() >= 3
        && s >> idx[0] & 1 == 1
        && s >> idx[idx.len() - 1] & 1 == 1
        && idx.iter().all(|&v| z >> v & 1 == 0)
        && idx.iter().any(|&v| s >> v & 1 == 0)
        && idx.windows(2).all(|p| g.has_arc(p[0], p[1]));
    ensure(ok, || format!("bad witness {walk:?} for {g:?}"))
}

fn monotonicity() -> Outcome {
    let mut rng = rng_from_seed(123);
    for i in 0..200 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.1..0.6);
        let g = random_digraph(&mut rng, n, p);
        let mut keep: Vec<usize> = (0..n).collect();
        keep.shuffle(&mut rng);
        keep.truncate(rng.gen_range(1..=n));
        keep.sort_unstable();
        let h = g.induced(&keep);
        let dg = dpw_exact(&g, 12).map_err(|x| x.to_string())?.width;
        let dh = dpw_exact(&h, 12).map_err(|x| x.to_string())?.width;
        ensure(dh <= dg, || format!("pair {i}: subdigraph {dh} > digraph {dg}"))?;
    }
    Ok("200 pairs".into())
}

fn binary_tree(height: u32) -> Digraph {
    let n = (1usize << (height + 1)) - 1;
    let labels: Vec<String> = (1..=n).map(|i| format!("t{i}")).collect();
    let edges = (1..n).map(|v| ((v - 1) / 2, v));
    UndirectedGraph::new(labels, edges).unwrap().complete_biorientation()
}

fn binary_trees() -> Outcome {
    let caps = Caps {
        oracle: 31,
        ..Caps::default()
    };
    let mut report = Vec::new();
    for h in 1..=4u32 {
        let g = binary_tree(h);
        let expected = h.div_ceil(2) as usize;
        let sol = dpw_exact(&g, caps.oracle).map_err(|x| x.to_string())?;
        ensure(sol.width == expected, || format!("height {h}: dpw {} expected {expected}", sol.width))?;
        let v = verify_path_decomposition(&g, &sol.decomposition).map_err(|x| x.to_string())?;
        ensure(v.valid && v.width == expected as i64, || format!("height {h}: certificate {v}"))?;
        let (lo, hi) = dtw_bracket(&g, &caps).map_err(|x| x.to_string())?;
        ensure(lo == 1 && hi == expected as i64, || {
            format!("height {h}: bracket ({lo}, {hi}), expected (1, {expected})")
        })?;
        report.push(format!("h={h}: {} in [{lo}, {hi}]", sol.width));
    }
    Ok(report.join(", "))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("formula agrees with oracle", formula_matches_oracle),
        ("dtw equals dpw on co-graphs", dtw_equals_dpw),
        ("certificate soundness", certificates_verify),
        ("fixture values", fixtures),
        ("order gap", order_gap),
        ("strong components law", strong_components_law),
        ("conversion and normalization", conversion_and_normalization),
        ("z-normality exhaustive", z_normality_exhaustive),
        ("monotonicity", monotonicity),
        ("perfect binary trees", binary_trees),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} ({detail}; {secs:.2}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name} ({detail})", i + 1);
            }
        }
    }
    if failed == 0 {
        println!("acceptance: all {} criteria passed", criteria.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {failed} of {} criteria failed", criteria.len());
        ExitCode::FAILURE
    }
}
