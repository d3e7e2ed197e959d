//! Sequential and parallel execution produce identical results.

mod common;

use common::{gaussian, low_rank_plus_noise, rng};
use probekit::exec::trial_seed;
use probekit::levselect::{exhaustive_cssp_oracle, hybrid_cssp};
use probekit::matcore::Norm;
use probekit::ncp::{
    default_scales, generate, ncp_exhaustive_with, ncp_local_spectral_with, GenModel, GenSpec, LocalNcpConfig,
    SeedSelection,
};
use probekit::Exec;

#[test]
fn exhaustive_cssp() {
    let a = low_rank_plus_noise(12, 10, 3, 1e-2, &mut rng(1));
    let s = exhaustive_cssp_oracle(&a, 3, Norm::Spectral, Exec::Sequential).unwrap();
    let p = exhaustive_cssp_oracle(&a, 3, Norm::Spectral, Exec::Parallel).unwrap();
    assert_eq!(s, p);
}

#[test]
fn trials_follow_index_order() {
    let f = |seed: u64| hybrid_cssp(&gaussian(8, 6, &mut rng(seed)), 2, None, seed).unwrap().indices;
    let s = Exec::Sequential.trials(40, 16, f);
    let p = Exec::Parallel.trials(40, 16, f);
    assert_eq!(s, p);
    assert_eq!(s[3], f(trial_seed(40, 3)));
}

#[test]
fn local_profile() {
    let g = generate(&GenSpec { model: GenModel::ChungLu { n: 400, beta: 2.5, average_degree: 5.0 }, seed: 2 })
        .unwrap()
        .graph;
    let scales = default_scales(&g);
    for selection in [SeedSelection::Stratified, SeedSelection::Random(5)] {
        let run = |exec| ncp_local_spectral_with(&g, 6, &scales, LocalNcpConfig { seed_selection: selection, exec });
        assert_eq!(run(Exec::Sequential).unwrap(), run(Exec::Parallel).unwrap());
    }
}

#[test]
fn exhaustive_profile() {
    let g = generate(&GenSpec { model: GenModel::Er { n: 14, p: 0.35 }, seed: 9 }).unwrap().graph;
    assert_eq!(ncp_exhaustive_with(&g, Exec::Sequential).unwrap(), ncp_exhaustive_with(&g, Exec::Parallel).unwrap());
}
