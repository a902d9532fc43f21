use std::collections::HashMap;

use rand::Rng;
use vminor_core::cutrank::{cut_rank, decomposition_width, exact_rankwidth};
use vminor_core::perturb::cut_perturbation_witness;
use vminor_core::vmsearch::VertexMinorSearch;
use vminor_core::{Graph, VertexId, VertexSet};

use crate::oracle::{self, graph_of, local_complement, mask, Canon, Rows, VertexMinorOracle};
use crate::{ensure, Check, SuiteConfig};

pub(crate) fn random_rows(rng: &mut impl Rng, n: usize, p: f64) -> Rows {
    let mut rows = vec![0u64; n];
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(p) {
                rows[a] |= 1 << b;
                rows[b] |= 1 << a;
            }
        }
    }
    rows
}

fn v(i: usize) -> VertexId {
    VertexId::of(i)
}

pub(crate) fn identities(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(1);
    let (mut lcs, mut pivots, mut swaps) = (0, 0, 0);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.2..0.8);
        let rows = random_rows(&mut rng, n, p);
        let g = graph_of(&rows);
        for a in 0..n {
            let once = g.local_complement(v(a))?;
            ensure!(once == graph_of(&local_complement(&rows, a)), "G*{a} differs from the definition on {rows:?}");
            ensure!(once.local_complement(v(a))? == g, "(G*{a})*{a} != G on {rows:?}");
            lcs += 1;
        }
        let lc = |h: &Graph, x: usize| h.local_complement(v(x));
        for (a, b) in g.edges() {
            let (a, b) = (a.index(), b.index());
            let p = g.pivot(v(a), v(b))?;
            ensure!(p == lc(&lc(&lc(&g, a)?, b)?, a)?, "G×{a}{b} != G*{a}*{b}*{a} on {rows:?}");
            ensure!(p == lc(&lc(&lc(&g, b)?, a)?, b)?, "G×{a}{b} != G*{b}*{a}*{b} on {rows:?}");
            let naive = (0..3).fold(rows.clone(), |r, i| local_complement(&r, [a, b, a][i]));
            ensure!(p == graph_of(&naive), "G×{a}{b} differs from the definition on {rows:?}");
            pivots += 1;
        }
        for x in 0..n {
            let nb: Vec<usize> = (0..n).filter(|&y| rows[x] >> y & 1 == 1).collect();
            for &u1 in &nb {
                for &u2 in &nb {
                    if u1 == u2 {
                        continue;
                    }
                    let left = g.pivot(v(x), v(u1))?;
                    let right = g.pivot(v(x), v(u2))?.pivot(v(u1), v(u2))?;
                    ensure!(left == right, "G×{x}{u1} != (G×{x}{u2})×{u1}{u2} on {rows:?}");
                    swaps += 1;
                }
            }
        }
    }
    Ok(format!(
        "1000 graphs: {lcs} local complementations, {pivots} pivots, {swaps} neighbour swaps, all exact"
    ))
}

pub(crate) fn cut_rank_laws(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(2);
    for _ in 0..1000 {
        let n = rng.gen_range(1..=12);
        let p = rng.gen_range(0.1..0.9);
        let rows = random_rows(&mut rng, n, p);
        let g = graph_of(&rows);
        let all = mask(n);
        let x = rng.gen::<u64>() & all;
        let y = rng.gen::<u64>() & all;
        let a = rng.gen_range(0..n);
        let r = |s: u64| cut_rank(&g, VertexSet(s));
        ensure!(r(x) == oracle::cut_rank(&rows, x), "cut-rank of {x:#b} differs from the oracle on {rows:?}");
        ensure!(r(x) == r(all & !x), "cut-rank not symmetric at {x:#b} on {rows:?}");
        ensure!(
            r(x | y) + r(x & y) <= r(x) + r(y),
            "submodularity fails for {x:#b}, {y:#b} on {rows:?}"
        );
        let h = g.local_complement(v(a))?;
        ensure!(cut_rank(&h, VertexSet(x)) == r(x), "cut-rank changed by G*{a} at {x:#b} on {rows:?}");
    }
    Ok("1000 instances with n ≤ 12: symmetry, submodularity, invariance, oracle agreement".into())
}

pub(crate) fn containment(_cfg: &SuiteConfig) -> Check {
    let targets: [(&str, Rows); 3] = [
        ("K3", vec![0b110, 0b101, 0b011]),
        ("P4", vec![0b0010, 0b0101, 0b1010, 0b0100]),
        ("C4", vec![0b1010, 0b0101, 0b1010, 0b0101]),
    ];
    let mut canon = Canon::default();
    let mut classes: Vec<Rows> = Vec::new();
    let mut labeled: Vec<(Rows, usize)> = Vec::new();
    for n in 0..=6usize {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        let mut seen = HashMap::new();
        for bits in 0u64..1 << pairs.len() {
            let mut rows = vec![0u64; n];
            for (i, &(a, b)) in pairs.iter().enumerate() {
                if bits >> i & 1 == 1 {
                    rows[a] |= 1 << b;
                    rows[b] |= 1 << a;
                }
            }
            let key = canon.key(&rows);
            let class = *seen.entry(key).or_insert_with(|| {
                classes.push(rows.clone());
                classes.len() - 1
            });
            labeled.push((rows, class));
        }
    }
    ensure!(classes.len() == 209, "expected 209 graphs up to isomorphism on at most 6 vertices, found {}", classes.len());
    let mut positives = Vec::new();
    for (name, h) in &targets {
        let mut brute = VertexMinorOracle::new(h);
        let expect: Vec<bool> = classes.iter().map(|c| brute.contains(c)).collect();
        let mut search = VertexMinorSearch::new(&graph_of(h))?;
        for (rows, class) in &labeled {
            let got = search.contains(&graph_of(rows))?;
            ensure!(got == expect[*class], "{name} in {rows:?}: search says {got}, orbit oracle says {}", expect[*class]);
        }
        positives.push(format!("{name} in {}", expect.iter().filter(|&&b| b).count()));
    }
    Ok(format!(
        "{} labeled graphs ({} classes) against K3, P4, C4; classes containing: {}",
        labeled.len(),
        classes.len(),
        positives.join(", ")
    ))
}

pub(crate) fn cut_witnesses(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(4);
    let mut orders = 0;
    for _ in 0..500 {
        let n = rng.gen_range(1..=10);
        let p = rng.gen_range(0.1..0.9);
        let rows = random_rows(&mut rng, n, p);
        let g = graph_of(&rows);
        let x = rng.gen::<u64>() & mask(n);
        let w = cut_perturbation_witness(&g, VertexSet(x))?;
        ensure!(w.verify().is_valid(), "witness for {x:#b} on {rows:?} fails verification: {}", w.verify());
        ensure!(
            w.script1.replay(&w.supergraph)? == w.base && w.script2.replay(&w.supergraph)? == w.target,
            "witness for {x:#b} on {rows:?} does not replay"
        );
        let rho = oracle::cut_rank(&rows, x);
        ensure!(w.order == 2 * rho, "order {} but 2ρ = {} for {x:#b} on {rows:?}", w.order, 2 * rho);
        ensure!(w.supergraph.order() == n + w.order, "supergraph size does not match the order");
        let cut: Rows = rows
            .iter()
            .enumerate()
            .map(|(i, &r)| if x >> i & 1 == 1 { r & x } else { r & !x })
            .collect();
        ensure!(w.base == g && w.target == graph_of(&cut), "target is not G − δ(X) for {x:#b} on {rows:?}");
        orders += w.order;
    }
    Ok(format!("500 instances with n ≤ 10, total order {orders}, all equal to 2ρ and replaying to G − δ(X)"))
}

pub(crate) fn rankwidth(_cfg: &SuiteConfig) -> Check {
    let mut cases: Vec<(String, Rows, usize)> = Vec::new();
    for n in 1..=6 {
        cases.push((format!("edgeless on {n}"), vec![0; n], 0));
    }
    for n in 2..=8 {
        cases.push((format!("K{n}"), (0..n).map(|i| mask(n) & !(1 << i)).collect(), 1));
    }
    cases.push(("C5".into(), (0..5).map(|i| (1 << ((i + 1) % 5)) | (1 << ((i + 4) % 5))).collect(), 2));
    for (name, rows, want) in &cases {
        let g = graph_of(rows);
        let (width, d) = exact_rankwidth(&g)?;
        let brute = oracle::rankwidth(rows);
        ensure!(width == *want, "{name}: library says {width}, expected {want}");
        ensure!(brute == *want, "{name}: exhaustive enumeration says {brute}, expected {want}");
        if g.order() >= 2 {
            ensure!(decomposition_width(&g, &d)? == width, "{name}: returned decomposition has another width");
        }
    }
    Ok(format!("{} graphs, values confirmed by enumerating every cubic tree", cases.len()))
}
