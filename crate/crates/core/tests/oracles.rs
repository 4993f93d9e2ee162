//! Library results checked against independent brute-force computations.

mod common;

use common::*;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tesc::engine::{test_correlation, Decision, Engine, SamplerChoice, TestConfig};
use tesc::graph::{batch_bfs, h_hop_bfs, BfsScratch, EventSet, Graph, NodeId, NodeSet, VicinityIndex};
use tesc::rng::rng_from_seed;
use tesc::sampling::{
    expected_discards, reject_samp, sample_batch_bfs, sample_importance, sample_whole_graph, VicinityPrefix,
};
use tesc::simulation::{
    add_noise, distance_probabilities, draw_distance, gen_negative_pair, gen_positive_pair, watts_strogatz, Polarity,
    SimPairSpec,
};
use tesc::stats::{kendall_t, null_variance, permutation_null_z, weighted_t, Probability, TieProfile};

#[test]
fn batch_bfs_is_union_of_single_searches() {
    let g = random_graph(50, 0.06, 1);
    let adj = adjacency(&g);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..100 {
        let k = rng.random_range(1..8);
        let sources: Vec<u64> = (0..k).map(|_| rng.random_range(0..50)).collect();
        let h = rng.random_range(0..5);
        let got = batch_bfs(&g, &sources, h).unwrap();
        let ids: Vec<NodeId> = sources.iter().map(|&s| s as NodeId).collect();
        assert_eq!(got, ball_oracle(&adj, &ids, h as usize));
        let mut union: Vec<NodeId> = sources.iter().flat_map(|&s| h_hop_bfs(&g, s, h).unwrap()).collect();
        union.sort_unstable();
        union.dedup();
        assert_eq!(got, union);
    }
}

#[test]
fn index_matches_all_pairs_distances() {
    let g = random_graph(100, 0.03, 3);
    let d = floyd_warshall(&g);
    let idx = VicinityIndex::build(&g, 4).unwrap();
    for h in 1..=4u32 {
        for (v, row) in d.iter().enumerate() {
            let expect = row.iter().filter(|&&x| x <= h as usize).count() as u32;
            assert_eq!(idx.size(h, v as NodeId).unwrap(), expect, "h={h} v={v}");
        }
    }
}

#[test]
fn cycle_ball_matches_distances() {
    let g = cycle(6);
    let d = floyd_warshall(&g);
    let expect: Vec<NodeId> = (0..6).filter(|&v| d[0][v as usize] <= 2).collect();
    assert_eq!(expect, vec![0, 1, 2, 4, 5]);
    assert_eq!(h_hop_bfs(&g, 0, 2).unwrap(), expect);
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

#[test]
fn tied_variance_matches_permutation_enumeration() {
    // a has one pair tied, b has none
    let va = [0u32, 0, 1, 2];
    let vb = [0u32, 1, 2, 3];
    let perms = permutations(4);
    let mut sum = 0i64;
    let mut sq = 0i64;
    for p in &perms {
        let pb: Vec<u32> = p.iter().map(|&i| vb[i]).collect();
        let s = kendall_t(&va, &pb).unwrap().s;
        sum += s;
        sq += s * s;
    }
    let k = perms.len() as i64;
    let var = Ratio::new(sq * k - sum * sum, k * k);
    assert_eq!(var, Ratio::new(138, 18));
    let nv = null_variance(4, &TieProfile::new(vec![2, 1, 1], vec![1, 1, 1, 1])).unwrap();
    assert_eq!(nv.sigma_c_sq.numer().to_string(), "23");
    assert_eq!(nv.sigma_c_sq.denom().to_string(), "3");
}

#[test]
fn permutation_null_is_standard_normal() {
    // n = 100 with tie groups on both sides
    let va: Vec<u32> = (0..100).map(|i| i / 4).collect();
    let vb: Vec<u32> = (0..100).map(|i| (i * 37 % 100) / 10).collect();
    let z = permutation_null_z(&va, &vb, 10_000, 17).unwrap();
    let n = z.len() as f64;
    let mean = z.iter().sum::<f64>() / n;
    let sd = (z.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt();
    assert!(mean.abs() <= 0.05, "mean {mean}");
    assert!((0.9..=1.1).contains(&sd), "sd {sd}");
}

/// Population τ over a fully enumerated reference set.
fn exact_tau(g: &Graph, a: &EventSet, b: &EventSet, h: u32) -> f64 {
    let adj = adjacency(g);
    let union: Vec<NodeId> = a.union(b);
    let refs = ball_oracle(&adj, &union, h as usize);
    let dens: Vec<(Ratio<i64>, Ratio<i64>)> = refs
        .iter()
        .map(|&r| {
            let d = distances(&adj, r);
            let ball: Vec<usize> = (0..adj.len()).filter(|&v| d[v] <= h as usize).collect();
            let size = ball.len() as i64;
            let ca = ball.iter().filter(|&&v| a.contains(v as NodeId)).count() as i64;
            let cb = ball.iter().filter(|&&v| b.contains(v as NodeId)).count() as i64;
            (Ratio::new(ca, size), Ratio::new(cb, size))
        })
        .collect();
    let mut s = 0i64;
    for i in 0..dens.len() {
        for j in i + 1..dens.len() {
            let x = (dens[i].0 - dens[j].0) * (dens[i].1 - dens[j].1);
            s += match x.cmp(&Ratio::from_integer(0)) {
                std::cmp::Ordering::Greater => 1,
                std::cmp::Ordering::Less => -1,
                std::cmp::Ordering::Equal => 0,
            };
        }
    }
    let n = dens.len() as f64;
    s as f64 / (n * (n - 1.0) / 2.0)
}

#[test]
fn weighted_estimator_converges_with_draws() {
    let g = watts_strogatz(400, 4, 0.2, 8).unwrap();
    let a = EventSet::new("a", (0..400).step_by(23).collect(), 400).unwrap();
    let b = EventSet::new("b", (5..400).step_by(31).collect(), 400).unwrap();
    let h = 1;
    let tau = exact_tau(&g, &a, &b, h);
    let idx = VicinityIndex::build(&g, h).unwrap();
    let union = NodeSet::new(a.union(&b), 400);
    let prefix = VicinityPrefix::new(&idx, h, &union).unwrap();
    let mut scratch = BfsScratch::new(400);
    let mut err_at = |draws: usize| {
        let mut total = 0.0;
        for rep in 0..20u64 {
            let mut rng = rng_from_seed(1000 * draws as u64 + rep);
            let mut weight = std::collections::BTreeMap::<NodeId, u32>::new();
            for _ in 0..draws {
                let v = prefix.draw(&mut rng);
                let ball = scratch.ball(&g, v, h);
                let u = ball.nodes()[rng.random_range(0..ball.len())];
                *weight.entry(u).or_default() += 1;
            }
            let (mut w, mut p, mut va, mut vb) = (vec![], vec![], vec![], vec![]);
            for (&u, &k) in &weight {
                let ball = scratch.ball(&g, u, h).nodes().to_vec();
                let hits = ball.iter().filter(|&&x| union.contains(x)).count() as u32;
                let size = ball.len() as i64;
                w.push(k);
                p.push(Probability { hits, total: prefix.n_sum() });
                va.push(Ratio::new(ball.iter().filter(|&&x| a.contains(x)).count() as i64, size));
                vb.push(Ratio::new(ball.iter().filter(|&&x| b.contains(x)).count() as i64, size));
            }
            total += (weighted_t(&w, &p, &va, &vb).unwrap().value - tau).abs();
        }
        total / 20.0
    };
    let e3 = err_at(1_000);
    let e5 = err_at(100_000);
    assert!(e5 < e3, "error at 1e3 draws {e3}, at 1e5 draws {e5}");
}

#[test]
fn batch_bfs_inclusion_frequencies() {
    let g = random_graph(200, 0.012, 5);
    let union = NodeSet::new(vec![3, 50, 120], 200);
    let mut scratch = BfsScratch::new(200);
    let refs = tesc::sampling::reference_set(&g, &union, 2, &mut scratch);
    let big_n = refs.len();
    let n = big_n / 3;
    assert!(n >= 2, "reference set too small: {big_n}");
    let reps = 10_000;
    let mut hits = vec![0u64; 200];
    for s in 0..reps {
        let smp = sample_batch_bfs(&g, &union, 2, n, s, &mut scratch).unwrap();
        assert_eq!(smp.len(), n);
        for &v in &smp.nodes {
            hits[v as usize] += 1;
        }
    }
    let p = n as f64 / big_n as f64;
    let sd = (reps as f64 * p * (1.0 - p)).sqrt();
    let mut outside3 = 0;
    for &v in &refs {
        let dev = (hits[v as usize] as f64 - reps as f64 * p).abs() / sd;
        assert!(dev < 4.5, "node {v}: {dev} sd");
        if dev > 3.0 {
            outside3 += 1;
        }
    }
    assert!(outside3 as f64 <= 0.01 * big_n as f64 + 1.0, "{outside3} of {big_n} beyond 3 sd");
    assert!(
        (0..200u32).filter(|v| !refs.contains(v)).all(|v| hits[v as usize] == 0),
        "sampled outside the reference set"
    );
}

#[test]
fn whole_graph_kept_frequencies() {
    let g = random_graph(300, 0.008, 6);
    let union = NodeSet::new(vec![10, 100, 200, 250], 300);
    let mut scratch = BfsScratch::new(300);
    let refs = tesc::sampling::reference_set(&g, &union, 2, &mut scratch);
    let n = (refs.len() / 2).max(2);
    let reps = 1_000;
    let mut hits = vec![0u64; 300];
    for s in 0..reps {
        for &v in &sample_whole_graph(&g, &union, 2, n, s, &mut scratch).unwrap().nodes {
            hits[v as usize] += 1;
        }
    }
    let p = n as f64 / refs.len() as f64;
    let sd = (reps as f64 * p * (1.0 - p)).sqrt();
    for v in 0..300u32 {
        if refs.contains(&v) {
            let dev = (hits[v as usize] as f64 - reps as f64 * p).abs() / sd;
            assert!(dev < 4.5, "node {v}: {dev} sd");
        } else {
            assert_eq!(hits[v as usize], 0);
        }
    }
}

#[test]
fn discards_formula() {
    assert!((expected_discards(100, 1000, 500) - 100.0).abs() < 1e-12);
}

#[test]
fn uniform_samplers_are_indistinguishable() {
    let g = random_graph(60, 0.04, 9);
    let union = NodeSet::new(vec![1, 20, 40], 60);
    let h = 2;
    let idx = VicinityIndex::build(&g, h).unwrap();
    let prefix = VicinityPrefix::new(&idx, h, &union).unwrap();
    let mut scratch = BfsScratch::new(60);
    let reps = 10_000;
    let mut bfs = vec![0u64; 60];
    let mut whole = vec![0u64; 60];
    let mut rej = vec![0u64; 60];
    for s in 0..reps {
        bfs[sample_batch_bfs(&g, &union, h, 2, s, &mut scratch).unwrap().nodes[0] as usize] += 1;
        whole[sample_whole_graph(&g, &union, h, 2, s, &mut scratch).unwrap().nodes[0] as usize] += 1;
    }
    let mut rng = rng_from_seed(3);
    let mut accepted = 0;
    while accepted < reps {
        if let Some(u) = reject_samp(&g, &union, &prefix, h, &mut rng, &mut scratch) {
            rej[u as usize] += 1;
            accepted += 1;
        }
    }
    for (x, y) in [(&bfs, &whole), (&bfs, &rej), (&whole, &rej)] {
        let (stat, df) = chi_square_two_sample(x, y);
        assert!(chi_square_p(stat, df) > 0.01, "chi2 {stat} on {df} df");
    }
}

#[test]
fn importance_first_draw_follows_hit_distribution() {
    let g = random_graph(40, 0.08, 12);
    let union = NodeSet::new(vec![0, 7, 13, 29], 40);
    let h = 1;
    let idx = VicinityIndex::build(&g, h).unwrap();
    let mut scratch = BfsScratch::new(40);
    let prefix = VicinityPrefix::new(&idx, h, &union).unwrap();
    let refs = tesc::sampling::reference_set(&g, &union, h, &mut scratch);
    let n_sum = prefix.n_sum() as f64;
    let p: Vec<f64> = refs
        .iter()
        .map(|&u| scratch.ball(&g, u, h).nodes().iter().filter(|&&x| union.contains(x)).count() as f64 / n_sum)
        .collect();
    assert!((p.iter().sum::<f64>() - 1.0).abs() < 1e-12);
    let mut counts = vec![0u64; refs.len()];
    for s in 0..20_000 {
        let smp = sample_importance(&g, &union, &idx, h, 2, 1, s, &mut scratch).unwrap();
        let first = smp.nodes[0];
        counts[refs.iter().position(|&r| r == first).unwrap()] += 1;
    }
    let (stat, df) = chi_square_fit(&counts, &p);
    assert!(chi_square_p(stat, df) > 0.01, "chi2 {stat} on {df} df");
}

#[test]
fn importance_uniform_when_vicinities_disjoint() {
    // three disjoint triangles: every reference node sees exactly one event
    let g = Graph::from_edges(9, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (6, 7), (7, 8), (6, 8)]).unwrap();
    let union = NodeSet::new(vec![0, 3, 6], 9);
    let idx = VicinityIndex::build(&g, 1).unwrap();
    let prefix = VicinityPrefix::new(&idx, 1, &union).unwrap();
    let mut scratch = BfsScratch::new(9);
    let mut rng = rng_from_seed(4);
    let mut counts = vec![0u64; 9];
    for _ in 0..10_000 {
        let v = prefix.draw(&mut rng);
        let ball = scratch.ball(&g, v, 1);
        counts[ball.nodes()[rng.random_range(0..ball.len())] as usize] += 1;
    }
    let sd = (10_000.0f64 / 9.0 * (8.0 / 9.0)).sqrt();
    assert!(counts.iter().all(|&c| (c as f64 - 10_000.0 / 9.0).abs() < 3.0 * sd), "{counts:?}");
}

#[test]
fn simulated_distances_follow_clipped_half_normal() {
    for h in [1, 2, 3] {
        let mut rng = rng_from_seed(h as u64);
        let mut counts = vec![0u64; h as usize + 1];
        for _ in 0..100_000 {
            counts[draw_distance(&mut rng, h) as usize] += 1;
        }
        let (stat, df) = chi_square_fit(&counts, &distance_probabilities(h));
        assert!(chi_square_p(stat, df) > 0.01, "h={h}: chi2 {stat}");
    }
}

#[test]
fn negative_pairs_are_separated() {
    let g = watts_strogatz(500, 4, 0.1, 2).unwrap();
    let adj = adjacency(&g);
    let mut scratch = BfsScratch::new(500);
    for h in [1, 2] {
        let spec = SimPairSpec { m: 10, h, polarity: Polarity::Negative, noise_p: 0.0, seed: 40 + h as u64 };
        let pair = gen_negative_pair(&g, &spec, &mut scratch).unwrap();
        for &u in pair.a.nodes() {
            let d = distances(&adj, u);
            assert!(pair.b.nodes().iter().all(|&v| d[v as usize] > h as usize));
        }
    }
}

#[test]
fn broken_link_fraction_is_binomial() {
    let g = watts_strogatz(4000, 6, 0.1, 3).unwrap();
    let mut scratch = BfsScratch::new(4000);
    let spec = SimPairSpec { m: 1, h: 1, polarity: Polarity::Positive, noise_p: 0.0, seed: 0 };
    let reps = 1000;
    let mut broken = 0;
    for s in 0..reps {
        let pair = gen_positive_pair(&g, &SimPairSpec { seed: s, ..spec }, &mut scratch).unwrap();
        broken += add_noise(&g, &pair, 0.5, 10_000 + s, &mut scratch).unwrap().stats.relocated;
    }
    let sd = (reps as f64 * 0.25).sqrt();
    assert!((broken as f64 - 500.0).abs() <= 3.0 * sd, "{broken}");
}

#[test]
fn separated_components_are_negative() {
    // two 20-node paths with no edge between them
    let mut edges: Vec<(NodeId, NodeId)> = (1..20).map(|v| (v - 1, v)).collect();
    edges.extend((21..40).map(|v| (v - 1, v)));
    let g = Graph::from_edges(40, edges).unwrap();
    let a = EventSet::new("a", vec![2, 8, 14], 40).unwrap();
    let b = EventSet::new("b", vec![24, 30, 36], 40).unwrap();
    let tau = exact_tau(&g, &a, &b, 1);
    let r = test_correlation(&g, &a, &b, None, &TestConfig { h: 1, n: 100, seed: 1, ..TestConfig::default() }).unwrap();
    assert!(r.exact);
    assert!((r.statistic - tau).abs() < 1e-12);
    assert!(tau < 0.0);
    assert_eq!(r.decision, Decision::Negative);
}

#[test]
fn reference_nodes_are_in_sight() {
    let g = watts_strogatz(3000, 6, 0.1, 4).unwrap();
    let adj = adjacency(&g);
    let idx = VicinityIndex::build(&g, 2).unwrap();
    let engine = Engine::new(&g, Some(&idx)).unwrap();
    let a = EventSet::new("a", (0..3000).step_by(97).collect(), 3000).unwrap();
    let b = EventSet::new("b", (40..3000).step_by(131).collect(), 3000).unwrap();
    for sampler in [SamplerChoice::BatchBfs, SamplerChoice::Importance, SamplerChoice::WholeGraph] {
        let cfg = TestConfig { h: 2, n: 200, sampler, seed: 5, ..TestConfig::default() };
        let run = engine.run(&a, &b, &cfg).unwrap();
        for &r in &run.sample.nodes {
            let d = distances(&adj, r);
            assert!(a.union(&b).iter().any(|&e| d[e as usize] <= 2), "{sampler:?} node {r} out of sight");
        }
    }
}

#[test]
fn exact_mode_ignores_seed() {
    let g = path(30);
    let a = EventSet::new("a", vec![3, 4], 30).unwrap();
    let b = EventSet::new("b", vec![5, 20], 30).unwrap();
    let t: Vec<f64> = (0..5)
        .map(|s| test_correlation(&g, &a, &b, None, &TestConfig { h: 2, n: 500, seed: s, ..TestConfig::default() }))
        .map(|r| r.unwrap().statistic)
        .collect();
    assert!(t.windows(2).all(|w| w[0] == w[1]));
    assert!((t[0] - exact_tau(&g, &a, &b, 2)).abs() < 1e-12);
}
