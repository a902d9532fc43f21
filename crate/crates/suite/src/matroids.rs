use std::collections::HashMap;

use rand::Rng;
use vminor_core::gf2::BitMatrix;
use vminor_core::matroid::{
    cycle_matroid, elementary_lifts, elementary_projections, fundamental_graph, is_rank_p_perturbation, matroid_minor_contains, perturbation_distance,
    perturbation_path, rank_p_perturb, rank_perturbation_from_path, BinaryMatroid, Multigraph,
};
use vminor_core::vmsearch::contains_pivot_minor_bipartite;

use crate::oracle::{self, columns, has_matroid_minor, span};
use crate::{ensure, Check, Failure, SuiteConfig};

fn random_matrix(rng: &mut impl Rng, r: usize, n: usize) -> BitMatrix {
    BitMatrix::from_rows(n, (0..r).map(|_| rng.gen::<u64>() & oracle::mask(n)).collect())
}

fn cols(m: &BinaryMatroid) -> Vec<u64> {
    columns(m.matrix().rows(), m.len())
}

pub(crate) fn fundamental_minors(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(10);
    let (mut yes, mut no, mut pairs) = (0, 0, 0);
    for _ in 0..100 {
        let m = BinaryMatroid::from_matrix(&random_matrix(&mut rng, 3, 6));
        let k = rng.gen_range(1..=5);
        let r = rng.gen_range(1..=3);
        let n = BinaryMatroid::from_matrix(&random_matrix(&mut rng, r, k));
        let brute = has_matroid_minor(&cols(&m), &cols(&n));
        let lib = matroid_minor_contains(&m, &n)?;
        ensure!(lib == brute, "minor containment of {:?} in {:?}: library {lib}, oracle {brute}", n.matrix(), m.matrix());
        for b2 in m.bases() {
            let fm = fundamental_graph(&m, b2)?;
            for b1 in n.bases() {
                let fn_ = fundamental_graph(&n, b1)?;
                let pm = contains_pivot_minor_bipartite(&fm, &fn_)?;
                ensure!(
                    pm == brute,
                    "pivot-minor containment {pm} disagrees with minor containment {brute} for bases {b1:?}, {b2:?} of {:?} and {:?}",
                    n.matrix(),
                    m.matrix()
                );
                pairs += 1;
            }
        }
        if brute {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("100 matroids (3×6): {yes} contain N, {no} do not; {pairs} base pairs agree"))
}

fn k3() -> Result<BinaryMatroid, Failure> {
    Ok(cycle_matroid(&Multigraph::from_pairs(3, &[(0, 1), (1, 2), (0, 2)])?)?)
}

/// Rank-`p` perturbations in both directions: a rank-`p` change is at most
/// `2p` moves away, and a path of `d` moves yields matrices differing by
/// rank at most `d` that represent its ends.
fn rank_perturbations(rng: &mut impl Rng) -> Result<String, Failure> {
    let mut dists = [0usize; 5];
    let mut made = 0;
    while made < 50 {
        let p = 1 + made % 2;
        let (rows, n) = (rng.gen_range(2..=3), rng.gen_range(4..=6));
        let m = BinaryMatroid::from_matrix(&random_matrix(rng, rows, n));
        let r = m.rank();
        if r == 0 {
            continue;
        }
        let factors: Vec<(u64, u64)> = (0..p)
            .map(|_| (rng.gen_range(1..1u64 << r), rng.gen_range(1..1u64 << m.len())))
            .collect();
        let (a, b, mt) = rank_p_perturb(&m, &factors)?;
        let diff: Vec<u64> = a.rows().iter().zip(b.rows()).map(|(x, y)| x ^ y).collect();
        ensure!(oracle::rank(&diff) <= p && is_rank_p_perturbation(&a, &b, p)?, "constructed change has rank above {p}");
        ensure!(span(b.rows()) == span(mt.matrix().rows()), "perturbed matrix does not represent the returned matroid");
        let d = perturbation_distance(&m, &mt, 2 * p)?
            .ok_or_else(|| Failure(format!("rank-{p} perturbation more than {} moves away", 2 * p)))?;
        let path = perturbation_path(&m, &mt, 2 * p)?.expect("distance found");
        ensure!(path.len() == d + 1, "path length disagrees with the distance");
        let (pa, pb) = rank_perturbation_from_path(&path)?;
        let pdiff: Vec<u64> = pa.rows().iter().zip(pb.rows()).map(|(x, y)| x ^ y).collect();
        ensure!(oracle::rank(&pdiff) <= d, "path of {d} moves gives matrices differing by rank {}", oracle::rank(&pdiff));
        ensure!(
            span(pa.rows()) == span(m.matrix().rows()) && span(pb.rows()) == span(mt.matrix().rows()),
            "matrices from the path do not represent its ends"
        );
        dists[d] += 1;
        made += 1;
    }
    Ok(format!("50 rank-p perturbations (p ≤ 2) with distances by count {dists:?}, and path matrices within rank d"))
}

/// Every lift and projection of `kN` keeps `(k−1)N` as a minor.
fn lifts_of_copies() -> Result<String, Failure> {
    let bases = [("M(K3)", k3()?), ("loop", BinaryMatroid::rank_zero(1)), ("coloop", BinaryMatroid::free(1))];
    let mut moves = 0;
    for (name, n) in &bases {
        for k in 2..=3usize {
            let m = n.copies(k)?;
            let smaller = n.copies(k - 1)?;
            let mut all = elementary_projections(&m)?;
            all.extend(elementary_lifts(&m)?);
            for m2 in &all {
                ensure!(
                    matroid_minor_contains(m2, &smaller)?,
                    "a lift or projection of {k}·{name} lost {}·{name}",
                    k - 1
                );
                if k == 2 {
                    ensure!(
                        has_matroid_minor(&cols(m2), &cols(&smaller)),
                        "oracle: a lift or projection of 2·{name} lost {name}"
                    );
                }
                moves += 1;
            }
        }
    }
    Ok(format!("{moves} lifts and projections of kN (N ∈ M(K3), loop, coloop; k = 2, 3) keep (k−1)N"))
}

/// Engineered instances of the converse: a rank-`p` perturbation without
/// `N` rules out `(2p+1)N`.
fn converse(rng: &mut impl Rng) -> Result<String, Failure> {
    let coloop = BinaryMatroid::free(1);
    let a_loop = BinaryMatroid::rank_zero(1);
    for p in 1..=2usize {
        for _ in 0..10 {
            let n = rng.gen_range(p + 1..=6);
            // Rank at most p: the zero matrix is a rank-p change without coloops.
            let m = BinaryMatroid::from_matrix(&random_matrix(rng, p, n));
            let zero = BitMatrix::zeros(p, n);
            let mut a = m.matrix().rows().to_vec();
            a.resize(p, 0);
            ensure!(is_rank_p_perturbation(&BitMatrix::from_rows(n, a), &zero, p)?, "rank drop exceeds {p}");
            let flat = BinaryMatroid::from_matrix(&zero);
            ensure!(!matroid_minor_contains(&flat, &coloop)?, "a rank-0 matroid has a coloop");
            let many = coloop.copies(2 * p + 1)?;
            ensure!(
                !matroid_minor_contains(&m, &many)? && !has_matroid_minor(&cols(&m), &cols(&many)),
                "rank ≤ {p} matroid has {} coloops as a minor",
                2 * p + 1
            );
            // Corank at most p: unit rows on the non-pivot columns give a free matroid.
            let mut rows = vec![0u64; n - p];
            for (i, r) in rows.iter_mut().enumerate() {
                *r = 1 << i | (rng.gen::<u64>() & oracle::mask(n) & !oracle::mask(n - p));
            }
            let m = BinaryMatroid::from_matrix(&BitMatrix::from_rows(n, rows.clone()));
            let mut padded = rows.clone();
            let mut unit = rows.clone();
            for j in n - p..n {
                padded.push(0);
                unit.push(1 << j);
            }
            let (pa, pu) = (BitMatrix::from_rows(n, padded), BitMatrix::from_rows(n, unit));
            ensure!(is_rank_p_perturbation(&pa, &pu, p)?, "unit rows change more than rank {p}");
            let free = BinaryMatroid::from_matrix(&pu);
            ensure!(free.rank() == n && !matroid_minor_contains(&free, &a_loop)?, "padded matrix is not free");
            let many = a_loop.copies(2 * p + 1)?;
            ensure!(
                !matroid_minor_contains(&m, &many)? && !has_matroid_minor(&cols(&m), &cols(&many)),
                "corank ≤ {p} matroid has {} loops as a minor",
                2 * p + 1
            );
        }
    }
    // Three triangles: every rank-1 change, with one extra row, keeps a triangle.
    let tri = k3()?;
    let m = tri.copies(3)?;
    let mut rows = m.matrix().rows().to_vec();
    rows.push(0);
    let mut memo: HashMap<Vec<u64>, bool> = HashMap::new();
    let mut checked = 0;
    for u in 1u64..1 << rows.len() {
        for v in 1u64..1 << m.len() {
            let changed: Vec<u64> = rows.iter().enumerate().map(|(i, &r)| if u >> i & 1 == 1 { r ^ v } else { r }).collect();
            let mt = BinaryMatroid::from_matrix(&BitMatrix::from_rows(m.len(), changed));
            let key = mt.matrix().rows().to_vec();
            let keeps = match memo.get(&key) {
                Some(&b) => b,
                None => {
                    let b = matroid_minor_contains(&mt, &tri)?;
                    memo.insert(key, b);
                    b
                }
            };
            ensure!(keeps, "a rank-1 perturbation of 3·M(K3) has no triangle");
            checked += 1;
        }
    }
    Ok(format!(
        "rank and corank instances for p ≤ 2 exclude 2p+1 coloops or loops; all {checked} rank-1 changes of 3·M(K3) ({} distinct) keep M(K3)",
        memo.len()
    ))
}

pub(crate) fn lifts_and_projections(cfg: &SuiteConfig) -> Check {
    let mut rng = cfg.rng(12);
    let a = rank_perturbations(&mut rng)?;
    let b = lifts_of_copies()?;
    let c = converse(&mut rng)?;
    Ok(format!("{a}; {b}; {c}"))
}
