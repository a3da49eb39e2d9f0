#![allow(dead_code)]

use lgfisher::{Block, CMatrix, PartitionSpec};
use num_complex::Complex64;
use proptest::prelude::*;

/// `exp(−iθ H)` by scaling and squaring of a truncated Taylor series.
pub fn expm_series(h: &CMatrix, theta: f64) -> CMatrix {
    let n = h.nrows();
    let norm = h.iter().map(|z| z.norm()).sum::<f64>() * theta.abs();
    let squarings = (norm.max(1.0).log2().ceil() as u32) + 4;
    let scale = theta / f64::from(1u32 << squarings);
    let a = h * Complex64::new(0.0, -scale);
    let mut term = CMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &a / Complex64::from(k as f64);
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    (a - b).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Random partition of the `2m` ladder of `two_j` into up to four blocks.
pub fn partition_for(two_j: u32) -> impl Strategy<Value = PartitionSpec> {
    let tj = two_j as i32;
    let d = two_j as usize + 1;
    (
        prop::collection::vec(0..4usize, d),
        prop::collection::vec(0..=tj, 4),
    )
        .prop_map(move |(assign, mus)| {
            let blocks = (0..4)
                .filter_map(|k| {
                    let members: Vec<i32> = (0..d)
                        .filter(|&i| assign[i] == k)
                        .map(|i| tj - 2 * i as i32)
                        .collect();
                    (!members.is_empty()).then(|| Block::new(2 * mus[k] - tj, members))
                })
                .collect();
            PartitionSpec::new(blocks).unwrap()
        })
}

/// Random partition closed under `m → −m`, `μ → −μ`, for half-integer spin.
pub fn symmetric_partition_for(two_j: u32) -> impl Strategy<Value = PartitionSpec> {
    assert!(two_j % 2 == 1);
    let tj = two_j as i32;
    let positive: Vec<i32> = (1..=tj).step_by(2).collect();
    let n = positive.len();
    (
        prop::collection::vec(0..3usize, n),
        prop::collection::vec(0..=tj, 3),
    )
        .prop_map(move |(assign, mus)| {
            let mut blocks = Vec::new();
            for (k, mu) in mus.iter().enumerate() {
                let members: Vec<i32> = (0..n)
                    .filter(|&i| assign[i] == k)
                    .map(|i| positive[i])
                    .collect();
                if members.is_empty() {
                    continue;
                }
                let mu = 2 * mu - tj;
                blocks.push(Block::new(-mu, members.iter().map(|m| -m)));
                blocks.push(Block::new(mu, members));
            }
            PartitionSpec::new(blocks).unwrap()
        })
}

/// Any spin up to 9/2 with a random partition.
pub fn spin_and_partition() -> impl Strategy<Value = (u32, PartitionSpec)> {
    (1u32..=9).prop_flat_map(|tj| (Just(tj), partition_for(tj)))
}

/// Half-integer spin up to 9/2 with a random symmetric partition.
pub fn half_spin_and_symmetric_partition() -> impl Strategy<Value = (u32, PartitionSpec)> {
    prop_oneof![Just(1u32), Just(3), Just(5), Just(7), Just(9)]
        .prop_flat_map(|tj| (Just(tj), symmetric_partition_for(tj)))
}

/// Random density matrix `GG†/Tr(GG†)` of the given dimension.
pub fn density_matrix(dim: usize) -> impl Strategy<Value = CMatrix> {
    prop::collection::vec((-1.0..1.0f64, -1.0..1.0f64), dim * dim).prop_map(move |entries| {
        let g = CMatrix::from_iterator(
            dim,
            dim,
            entries.into_iter().map(|(re, im)| Complex64::new(re, im)),
        );
        let m = &g * g.adjoint();
        let tr = m.trace();
        m / tr
    })
}
