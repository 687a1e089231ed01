//! Shared corpus, random generators and brute-force oracles for the
//! integration tests. Nothing here calls into the code paths it is used to
//! check.

#![allow(dead_code)]

use extgraph::{AddedEdge, DirectedMultigraph, GraphBuilder, IntMatrix, OneSinkExtension};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn loops(n: usize) -> DirectedMultigraph {
    DirectedMultigraph::from_counts(["v"], &[vec![n]]).unwrap()
}

/// `w1` with a loop, `w1 -> w2`, and the 2-cycle `w2 <-> w3`.
pub fn intro_graph() -> DirectedMultigraph {
    GraphBuilder::new()
        .vertex("w1")
        .vertex("w2")
        .vertex("w3")
        .edge("a", "w1", "w1")
        .edge("b", "w1", "w2")
        .edge("c", "w2", "w3")
        .edge("d", "w3", "w2")
        .build()
        .unwrap()
}

/// The intro graph with an extra edge `w3 -> w1`, giving the 2-cycle an exit.
pub fn exit_graph() -> DirectedMultigraph {
    GraphBuilder::new()
        .vertex("w1")
        .vertex("w2")
        .vertex("w3")
        .edge("a", "w1", "w1")
        .edge("b", "w1", "w2")
        .edge("c", "w2", "w3")
        .edge("d", "w3", "w2")
        .edge("f", "w3", "w1")
        .build()
        .unwrap()
}

fn sink_extension(base: DirectedMultigraph, edges: &[(&str, &str)]) -> OneSinkExtension {
    let added = edges
        .iter()
        .enumerate()
        .map(|(k, (s, r))| AddedEdge {
            id: format!("s{k}"),
            source: s.to_string(),
            range: r.to_string(),
        })
        .collect();
    OneSinkExtension::new(base, vec!["v0".into()], added, "v0").unwrap()
}

/// First extension of the intro graph, drawn edge by edge: `w1`, `w2` and
/// twice `w3` into `v0`.
pub fn e1() -> OneSinkExtension {
    sink_extension(
        intro_graph(),
        &[("w1", "v0"), ("w2", "v0"), ("w3", "v0"), ("w3", "v0")],
    )
}

/// Second extension of the intro graph: `w1` and `w3` into `v0`.
pub fn e2() -> OneSinkExtension {
    sink_extension(intro_graph(), &[("w1", "v0"), ("w3", "v0")])
}

pub fn names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("u{i}")).collect()
}

/// A random graph with at most `max_vertices` vertices and `max_edges`
/// edges, without sinks and satisfying Condition (L).
pub fn random_hypothesis_graph(
    rng: &mut ChaCha8Rng,
    max_vertices: usize,
    max_edges: usize,
) -> DirectedMultigraph {
    loop {
        let n = rng.gen_range(1..=max_vertices);
        let m = rng.gen_range(n..=max_edges.max(n));
        let mut counts = vec![vec![0usize; n]; n];
        for row in counts.iter_mut() {
            row[rng.gen_range(0..n)] += 1;
        }
        for _ in n..m {
            counts[rng.gen_range(0..n)][rng.gen_range(0..n)] += 1;
        }
        let g = DirectedMultigraph::from_counts(names(n), &counts).unwrap();
        if brute_force_condition_l(&counts) {
            return g;
        }
    }
}

/// Random 1-sink extension: added vertices `h1 … hk` in topological order
/// with the sink last, no sources or extra sinks among them, and random
/// boundary edges out of the base.
pub fn random_extension(
    rng: &mut ChaCha8Rng,
    base: &DirectedMultigraph,
    max_added: usize,
) -> OneSinkExtension {
    let k = rng.gen_range(1..=max_added);
    let hs: Vec<String> = (1..=k).map(|i| format!("h{i}")).collect();
    let sink = hs[k - 1].clone();
    let base_ids = base.vertices();
    let mut edges: Vec<(String, String)> = Vec::new();
    for i in 0..k {
        // an incoming edge, from the base or an earlier added vertex
        let from = if i == 0 || rng.gen_bool(0.5) {
            base_ids[rng.gen_range(0..base_ids.len())].clone()
        } else {
            hs[rng.gen_range(0..i)].clone()
        };
        edges.push((from, hs[i].clone()));
        // every non-sink needs a way forward
        if i + 1 < k {
            edges.push((hs[i].clone(), hs[rng.gen_range(i + 1..k)].clone()));
        }
    }
    for _ in 0..rng.gen_range(0..=2 * k) {
        if rng.gen_bool(0.5) && k > 1 {
            let i = rng.gen_range(0..k - 1);
            let j = rng.gen_range(i + 1..k);
            edges.push((hs[i].clone(), hs[j].clone()));
        } else {
            let w = base_ids[rng.gen_range(0..base_ids.len())].clone();
            edges.push((w, hs[rng.gen_range(0..k)].clone()));
        }
    }
    let added = edges
        .into_iter()
        .enumerate()
        .map(|(n, (source, range))| AddedEdge {
            id: format!("x{n}"),
            source,
            range,
        })
        .collect();
    OneSinkExtension::new(base.clone(), hs, added, sink).unwrap()
}

pub fn random_vector(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..len)
        .map(|_| BigInt::from(rng.gen_range(lo..=hi)))
        .collect()
}

pub fn counts_of(g: &DirectedMultigraph) -> Vec<Vec<usize>> {
    let n = g.vertex_count();
    let mut c = vec![vec![0; n]; n];
    for e in g.edges() {
        c[e.source][e.range] += 1;
    }
    c
}

/// Transitive closure by repeated boolean squaring of the adjacency matrix:
/// `closure[v][w]` iff a path of length ≥ 1 runs from `v` to `w`.
pub fn boolean_closure(counts: &[Vec<usize>]) -> Vec<Vec<bool>> {
    let mut reach: Vec<Vec<bool>> = counts
        .iter()
        .map(|r| r.iter().map(|&c| c > 0).collect())
        .collect();
    loop {
        let mut next = reach.clone();
        for (i, row) in next.iter_mut().enumerate() {
            for (k, reach_k) in reach.iter().enumerate() {
                if reach[i][k] {
                    for (cell, &r) in row.iter_mut().zip(reach_k) {
                        *cell |= r;
                    }
                }
            }
        }
        if next == reach {
            return reach;
        }
        reach = next;
    }
}

/// All simple cycles as vertex sequences, each reported from its smallest vertex.
pub fn simple_cycles(counts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    fn extend(
        counts: &[Vec<usize>],
        start: usize,
        path: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let last = *path.last().unwrap();
        for next in start..counts.len() {
            if counts[last][next] == 0 {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if !path.contains(&next) {
                path.push(next);
                extend(counts, start, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for start in 0..counts.len() {
        extend(counts, start, &mut vec![start], &mut out);
    }
    out
}

/// Condition (L) by enumeration: every simple cycle passes through a vertex
/// emitting more than the one edge the cycle uses. Parallel edges along the
/// cycle count as exits.
pub fn brute_force_condition_l(counts: &[Vec<usize>]) -> bool {
    simple_cycles(counts)
        .iter()
        .all(|cycle| cycle.iter().any(|&v| counts[v].iter().sum::<usize>() >= 2))
}

/// Path counts into the sink along added edges, by explicit enumeration.
pub fn brute_force_wojciech(e: &OneSinkExtension) -> Vec<BigInt> {
    let g = e.graph();
    let first_added = e.base().edge_count();
    let sink = g.vertex_index(e.sink()).unwrap();
    fn count(g: &DirectedMultigraph, first_added: usize, sink: usize, v: usize) -> u64 {
        let mut total = 0;
        for &k in g.out_edges(v) {
            if k < first_added {
                continue;
            }
            let w = g.edges()[k].range;
            total += if w == sink { 1 } else { 0 } + count(g, first_added, sink, w);
        }
        total
    }
    (0..e.base().vertex_count())
        .map(|v| BigInt::from(count(g, first_added, sink, v)))
        .collect()
}

/// Exact determinant by cofactor expansion, for tiny matrices.
pub fn cofactor_det(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::from(1);
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut total = BigInt::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<BigInt>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * cofactor_det(&minor);
        if j % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Invariant factors from determinantal divisors: `D_k` is the gcd of all
/// `k × k` minors and `d_k = D_k / D_{k-1}`. Returns the full diagonal
/// `d_1 … d_min(rows, cols)`.
pub fn determinantal_diagonal(m: &IntMatrix) -> Vec<BigInt> {
    let (r, c) = (m.rows(), m.cols());
    let mut prev = BigInt::from(1);
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = BigInt::zero();
        for rows in combinations(r, k) {
            for cols in combinations(c, k) {
                let minor: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m[(i, j)].clone()).collect())
                    .collect();
                g = g.gcd(&cofactor_det(&minor));
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), r.min(c) - out.len()));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

/// `(A - I)·n` on machine integers, straight from the adjacency counts.
pub fn a_minus_i_times(counts: &[Vec<usize>], n: &[BigInt]) -> Vec<i64> {
    let n: Vec<i64> = n.iter().map(|x| x.to_i64().unwrap()).collect();
    (0..counts.len())
        .map(|v| {
            let row: i64 = counts[v].iter().zip(&n).map(|(&a, &x)| a as i64 * x).sum();
            row - n[v]
        })
        .collect()
}

pub fn all_nonnegative(v: &[BigInt]) -> bool {
    v.iter().all(|x| !x.is_negative())
}
