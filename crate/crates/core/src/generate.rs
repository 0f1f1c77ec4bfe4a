//! Seeded random expressions and digraphs for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::digraph::Digraph;
use crate::expr::CoExpr;

/// Relative weights of the operations at inner nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OpMix {
    pub union: u32,
    pub series: u32,
    pub order: u32,
    pub directed_union: u32,
}

impl OpMix {
    /// Plain directed co-graphs.
    pub fn cograph() -> OpMix {
        OpMix { union: 2, series: 1, order: 1, directed_union: 0 }
    }

    /// Extended directed co-graphs: series compositions and directed unions.
    pub fn extended() -> OpMix {
        OpMix { union: 0, series: 1, order: 0, directed_union: 2 }
    }

    fn total(&self) -> u32 {
        self.union + self.series + self.order + self.directed_union
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorConfig {
    pub min_size: usize,
    pub max_size: usize,
    pub mix: OpMix,
    /// Largest number of operands at an inner node.
    pub max_arity: usize,
    /// Probability of each admissible cross arc under a directed union.
    pub arc_density: f64,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        GeneratorConfig {
            min_size: 2,
            max_size: 10,
            mix: OpMix::cograph(),
            max_arity: 3,
            arc_density: 0.3,
        }
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random expression whose leaf count is drawn from the configured range.
/// Leaves are labelled `v1 .. vn` in shuffled order.
pub fn random_expression<R: Rng>(rng: &mut R, cfg: &GeneratorConfig) -> CoExpr {
    assert!(cfg.min_size >= 1 && cfg.min_size <= cfg.max_size);
    assert!(cfg.mix.total() > 0 && cfg.max_arity >= 2);
    let n = rng.gen_range(cfg.min_size..=cfg.max_size);
    let mut labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    labels.shuffle(rng);
    build(rng, &labels, cfg)
}

fn build<R: Rng>(rng: &mut R, labels: &[String], cfg: &GeneratorConfig) -> CoExpr {
    if labels.len() == 1 {
        return CoExpr::leaf(labels[0].clone());
    }
    let arity = rng.gen_range(2..=cfg.max_arity.min(labels.len()));
    // Random composition of labels.len() into `arity` positive parts.
    let mut cuts: Vec<usize> = (1..labels.len()).collect();
    cuts.shuffle(rng);
    let mut cuts = cuts[..arity - 1].to_vec();
    cuts.sort_unstable();
    cuts.insert(0, 0);
    cuts.push(labels.len());
    let parts: Vec<&[String]> = cuts.windows(2).map(|w| &labels[w[0]..w[1]]).collect();
    let children: Vec<CoExpr> = parts.iter().map(|p| build(rng, p, cfg)).collect();

    let mix = cfg.mix;
    let mut pick = rng.gen_range(0..mix.total());
    if pick < mix.union {
        return CoExpr::union(children);
    }
    pick -= mix.union;
    if pick < mix.series {
        return CoExpr::series(children);
    }
    pick -= mix.series;
    if pick < mix.order {
        return CoExpr::order(children);
    }
    let mut arcs = Vec::new();
    for (i, from) in parts.iter().enumerate() {
        for to in &parts[i + 1..] {
            for u in from.iter() {
                for v in to.iter() {
                    if rng.gen_bool(cfg.arc_density) {
                        arcs.push((u.clone(), v.clone()));
                    }
                }
            }
        }
    }
    CoExpr::directed_union(children, arcs)
}

/// Random digraph on `n` vertices `v1 .. vn` where each ordered pair is an
/// arc independently with probability `p`.
pub fn random_digraph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Digraph {
    let labels: Vec<String> = (1..=n).map(|i| format!("v{i}")).collect();
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v));
            }
        }
    }
    Digraph::from_indices(labels, arcs).expect("generated labels are valid")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_per_seed() {
        let cfg = GeneratorConfig::default();
        let a = random_expression(&mut rng_from_seed(7), &cfg);
        let b = random_expression(&mut rng_from_seed(7), &cfg);
        assert_eq!(a, b);
        let g1 = random_digraph(&mut rng_from_seed(3), 8, 0.3);
        let g2 = random_digraph(&mut rng_from_seed(3), 8, 0.3);
        assert_eq!(g1, g2);
    }

    #[test]
    fn expressions_are_valid() {
        let mut rng = rng_from_seed(1);
        for mix in [OpMix::cograph(), OpMix::extended()] {
            let cfg = GeneratorConfig { mix, ..GeneratorConfig::default() };
            for _ in 0..200 {
                let e = random_expression(&mut rng, &cfg);
                e.validate().unwrap();
                assert!((2..=10).contains(&e.size()));
                assert_eq!(e.evaluate().unwrap().order(), e.size());
                if mix == OpMix::cograph() {
                    assert!(e.is_di_co_tree());
                }
            }
        }
    }
}
