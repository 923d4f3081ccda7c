#![allow(dead_code)]

use clusterclass::{BaseRing, SeedMatrix};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 1000;

/// Random skew-symmetrizable seed `B = S D` with `S` skew-symmetric and
/// `D = diag(d_i)`, `d_i in {1, 2}`. Principal entries have absolute value
/// at most 4; up to 4 frozen rows with entries in `[-4, 4]`.
///
/// When `acyclic` is set every arrow follows a hidden random vertex order.
pub fn random_seed<R: Rng>(rng: &mut R, acyclic: bool) -> SeedMatrix {
    let n = rng.gen_range(1..=8);
    let m = rng.gen_range(0..=4);
    let d: Vec<i64> = (0..n).map(|_| if rng.gen_bool(0.3) { 2 } else { 1 }).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let density = rng.gen_range(0.2..0.9);
    let mut rows = vec![vec![0i64; n]; n + m];
    for a in 0..n {
        for b in a + 1..n {
            if !rng.gen_bool(density) {
                continue;
            }
            let (i, j) = (order[a], order[b]);
            let bound = 4 / d[i].max(d[j]);
            let mut s = rng.gen_range(1..=bound);
            if !acyclic && rng.gen_bool(0.5) {
                s = -s;
            }
            rows[i][j] = s * d[j];
            rows[j][i] = -s * d[i];
        }
    }
    for row in rows.iter_mut().skip(n) {
        for x in row.iter_mut() {
            *x = rng.gen_range(-4..=4);
        }
    }
    SeedMatrix::from_i64(n, m, &rows).expect("generator produces valid seeds")
}

pub fn corpus(seed: u64, acyclic: bool) -> Vec<SeedMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..CORPUS_SIZE).map(|_| random_seed(&mut rng, acyclic)).collect()
}

pub fn rings() -> Vec<BaseRing> {
    ["Z", "Q", "algclosed", "custom:4"]
        .iter()
        .map(|r| r.parse().unwrap())
        .collect()
}
