#![allow(dead_code)]

use domprod::graphkit::{Factor, Graph, ProductSpec};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// G(n, p) with `p` drawn per graph so sparse and dense cases both appear.
pub fn random_graph(rng: &mut impl Rng, max_n: usize) -> Graph {
    let n = rng.gen_range(1..=max_n);
    let p: f64 = rng.gen_range(0.05..0.95);
    Graph::from_fn(n, |_, _| rng.gen_bool(p))
}

/// Every canonical spec with at most `max_vertices` vertices.
pub fn all_specs(max_vertices: u64) -> Vec<ProductSpec> {
    fn extend(prefix: &mut Vec<Factor>, product: u64, max: u64, out: &mut Vec<ProductSpec>) {
        let start = prefix.last().map_or((2, 1), |f| (f.b, f.a));
        for b in start.0..=max / product {
            let a_min = if b == start.0 { start.1 } else { 1 };
            for a in a_min.. {
                if product * a * b > max {
                    break;
                }
                prefix.push(Factor { a, b });
                out.push(ProductSpec::new(prefix.clone()).unwrap());
                extend(prefix, product * a * b, max, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut Vec::new(), 1, max_vertices, &mut out);
    out
}

/// A random canonical spec with at most `max_vertices` vertices.
pub fn random_spec(rng: &mut impl Rng, max_vertices: u64) -> ProductSpec {
    loop {
        let t = rng.gen_range(1..=4);
        let mut factors = Vec::new();
        let mut total = 1u64;
        for _ in 0..t {
            let b = rng.gen_range(2..=7);
            let a = if rng.gen_bool(0.7) { 1 } else { rng.gen_range(2..=3) };
            total = total.saturating_mul(a * b);
            factors.push(Factor { a, b });
        }
        if total <= max_vertices {
            return ProductSpec::new(factors).unwrap().canonical();
        }
    }
}
