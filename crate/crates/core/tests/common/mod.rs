#![allow(dead_code)]

use altcsit_core::rational::q;
use altcsit_core::{subcase_of, CsitState, LambdaPmf, Subcase};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Entry groups `PP`, `PD/DP`, `PN/NP`, `DN/ND`, `DD`, `NN` and how many
/// states each one covers.
const GROUPS: [(CsitState, i64); 6] = [
    (CsitState::PP, 1),
    (CsitState::PD, 2),
    (CsitState::PN, 2),
    (CsitState::DN, 2),
    (CsitState::DD, 1),
    (CsitState::NN, 1),
];

/// A symmetric pmf whose fractions share a denominator of at most `max_den`.
/// A random subset of groups is switched off so boundary shapes show up.
pub fn random_pmf(rng: &mut ChaCha20Rng, max_den: i64) -> LambdaPmf {
    let den = rng.random_range(1..=max_den);
    let mut active: Vec<bool> = (0..6).map(|_| rng.random_bool(0.7)).collect();
    // keep at least one single-state group so any denominator can be filled
    if !(active[0] || active[4] || active[5]) {
        active[[0, 4, 5][rng.random_range(0..3)]] = true;
    }
    let mut counts = [0i64; 6];
    let mut left = den;
    while left > 0 {
        let k = rng.random_range(0..6);
        if active[k] && GROUPS[k].1 <= left {
            counts[k] += 1;
            left -= GROUPS[k].1;
        }
    }
    LambdaPmf::from_one_sided(
        GROUPS
            .iter()
            .zip(counts)
            .map(|((st, _), n)| (*st, q(n, den))),
    )
    .expect("construction keeps the pmf valid")
}

/// `n` random pmfs, extended until every sub-case appears at least
/// `per_case` times.
pub fn pmfs_covering_subcases(n: usize, per_case: usize, seed: u64) -> Vec<LambdaPmf> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut seen = [0usize; 6];
    while out.len() < n || seen.iter().any(|c| *c < per_case) {
        let p = random_pmf(&mut rng, 60);
        seen[Subcase::ALL
            .iter()
            .position(|s| *s == subcase_of(&p))
            .unwrap()] += 1;
        out.push(p);
        assert!(
            out.len() < 100 * n,
            "sub-case coverage not reached: {seen:?}"
        );
    }
    out
}
