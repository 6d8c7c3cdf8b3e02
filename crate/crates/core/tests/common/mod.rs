#![allow(dead_code)]

pub mod oracle;

use incidence_core::configurations::{generate, GeneratorSpec};
use incidence_core::PointSet;

/// Grids 2x2..7x7, near-pencils 4..30, parabolas 3..30 and 100 seeded
/// random sets with 3..=40 points.
pub fn standard_corpus() -> Vec<(String, PointSet)> {
    let mut out = Vec::new();
    for k in 2..=7 {
        out.push((format!("grid {k}x{k}"), generate(&GeneratorSpec::Grid { width: k, height: k }).unwrap()));
    }
    for n in 4..=30 {
        out.push((format!("near-pencil {n}"), generate(&GeneratorSpec::NearPencil { n }).unwrap()));
    }
    for n in 3..=30 {
        out.push((format!("parabola {n}"), generate(&GeneratorSpec::Parabola { n }).unwrap()));
    }
    for seed in 0..100u64 {
        let n = 3 + seed % 38;
        let extent = 6 + seed % 10;
        let ps = generate(&GeneratorSpec::RandomGrid { n, extent, seed }).unwrap();
        out.push((format!("random n={n} extent={extent} seed={seed}"), ps));
    }
    out
}

/// Dirac degree found by `search_min_dirac(12, 11, 10_000, 42)`.
pub const SEARCH_12_11_42_DEGREE: u64 = 8;
