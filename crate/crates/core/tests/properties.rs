mod common;

use approx::assert_relative_eq;
use proptest::prelude::*;

use common::{brute_conductance, gaussian, rng};
use probekit::graph::{cut_stats, mqi_improve, sweep};
use probekit::levselect::{column_leverage, row_leverage};
use probekit::lsq::{exact_ls, LsProblem};
use probekit::matcore::{best_rank_k_error, pivoted_qr, svd, Norm};
use probekit::ncp::{default_scales, ncp_exhaustive, ncp_local_spectral};
use probekit::{Graph, NodeSet};

fn graph_strategy() -> impl Strategy<Value = Graph> {
    (4usize..12).prop_flat_map(|n| {
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        let len = pairs.len();
        (Just(n), Just(pairs), proptest::collection::vec((any::<bool>(), 1u8..4), len)).prop_map(|(n, pairs, picks)| {
            // A spanning path keeps the graph connected.
            let mut edges: Vec<(usize, usize, f64)> = (1..n).map(|v| (v - 1, v, 1.0)).collect();
            for (&(u, v), (keep, w)) in pairs.iter().zip(picks) {
                if keep {
                    edges.push((u, v, w as f64));
                }
            }
            Graph::from_edges(n, edges).unwrap().0
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn best_rank_k_is_monotone_and_pythagorean(m in 3usize..9, n in 3usize..9, seed in any::<u64>()) {
        let a = gaussian(m, n, &mut rng(seed));
        let total = a.frobenius_norm().powi(2);
        let sigma = svd(&a).unwrap().sigma;
        let mut prev = f64::INFINITY;
        for k in 0..=m.min(n) {
            let e = best_rank_k_error(&a, k, Norm::Frobenius).unwrap();
            prop_assert!(e <= prev + 1e-12);
            prev = e;
            let kept: f64 = sigma[..k].iter().map(|s| s * s).sum();
            assert_relative_eq!(kept + e * e, total, max_relative = 1e-10);
        }
    }

    #[test]
    fn leverage_scores_are_probabilities_times_k(m in 4usize..10, n in 2usize..6, seed in any::<u64>()) {
        let a = gaussian(m, n, &mut rng(seed));
        let k = n.min(m) - 1;
        for profile in [row_leverage(&a, k).unwrap(), column_leverage(&a, k).unwrap()] {
            prop_assert!(profile.scores.iter().all(|&s| (-1e-12..=1.0 + 1e-12).contains(&s)));
            assert_relative_eq!(profile.scores.iter().sum::<f64>(), k as f64, epsilon = 1e-9);
        }
    }

    #[test]
    fn pivoted_qr_reconstructs_permuted_matrix(m in 2usize..8, n in 2usize..8, seed in any::<u64>()) {
        let a = gaussian(m, n, &mut rng(seed));
        let qr = pivoted_qr(&a).unwrap();
        let mut sorted = qr.pivot_order.clone();
        sorted.sort_unstable();
        prop_assert_eq!(sorted, (0..n).collect::<Vec<_>>());
        for i in 1..qr.r.rows().min(qr.r.cols()) {
            prop_assert!(qr.r[(i, i)].abs() <= qr.r[(i - 1, i - 1)].abs() + 1e-12);
        }
    }

    #[test]
    fn exact_residual_is_orthogonal_to_columns(seed in any::<u64>()) {
        let mut g = rng(seed);
        let a = gaussian(12, 4, &mut g);
        let b = gaussian(12, 1, &mut g).data().to_vec();
        let p = LsProblem::new(a.clone(), b.clone()).unwrap();
        let x = exact_ls(&p).unwrap().x;
        let r: Vec<f64> = a.matvec(&x).unwrap().iter().zip(&b).map(|(y, b)| b - y).collect();
        for v in a.tr_matvec(&r).unwrap() {
            prop_assert!(v.abs() < 1e-10);
        }
    }

    #[test]
    fn conductance_matches_brute_force_and_complement(g in graph_strategy(), bits in any::<u32>()) {
        let n = g.node_count();
        let ids: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
        prop_assume!(!ids.is_empty() && ids.len() < n);
        let s = NodeSet::new(ids, n).unwrap();
        let stats = cut_stats(&g, &s).unwrap();
        let c = cut_stats(&g, &s.complement(n)).unwrap();
        prop_assert_eq!(stats.conductance, c.conductance);
        prop_assert_eq!(stats.conductance, brute_conductance(&g, &s.mask(n)));
    }

    #[test]
    fn sweep_prefixes_match_recomputation(g in graph_strategy(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let ranking: Vec<(usize, f64)> =
            (0..g.node_count()).map(|v| (v, rand::Rng::random::<f64>(&mut r))).collect();
        let s = sweep(&g, ranking);
        for len in 1..=s.len() {
            let want = cut_stats(&g, &s.prefix_set(len)).unwrap().conductance;
            match (want, s.conductance[len - 1]) {
                (Some(a), Some(b)) => assert_relative_eq!(a, b, max_relative = 1e-12),
                (a, b) => prop_assert_eq!(a, b),
            }
        }
    }

    #[test]
    fn mqi_never_worsens(g in graph_strategy(), bits in any::<u32>()) {
        let n = g.node_count();
        let ids: Vec<usize> = (0..n).filter(|i| bits >> i & 1 == 1).collect();
        prop_assume!(!ids.is_empty() && ids.len() < n);
        let s = NodeSet::new(ids, n).unwrap();
        let before = cut_stats(&g, &s).unwrap();
        prop_assume!(before.vol_s <= g.total_volume() / 2.0);
        let (t, after) = mqi_improve(&g, &s).unwrap();
        prop_assert!(t.is_subset_of(&s));
        prop_assert!(after.conductance.unwrap() <= before.conductance.unwrap());
    }

    #[test]
    fn local_profile_never_beats_exhaustive(g in graph_strategy()) {
        let exact = ncp_exhaustive(&g).unwrap().any;
        let local = ncp_local_spectral(&g, 3, &default_scales(&g)).unwrap();
        for (&k, p) in &local.points {
            prop_assert!(p.conductance >= exact.get(k).unwrap() - 1e-12);
            prop_assert_eq!(p.nodes.len(), k);
        }
    }
}
