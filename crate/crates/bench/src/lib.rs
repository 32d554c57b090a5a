//! Fixtures shared by the benchmarks.

use conheap_core::algebroid::standard;
use conheap_core::sampling::Sampler;
use conheap_core::{Algebroid, Connection};

/// The bundled models paired with three seeded random connections each.
pub fn fixtures(seed: u64) -> Vec<(&'static str, Algebroid, [Connection; 3])> {
    let mut s = Sampler::new(seed);
    [
        ("plane", standard::plane()),
        ("odd_plane", standard::odd_plane()),
        ("sl2", standard::sl2()),
        ("super_line", standard::super_line()),
    ]
    .into_iter()
    .map(|(name, alg)| {
        let c = [s.connection(&alg), s.connection(&alg), s.connection(&alg)];
        (name, alg, c)
    })
    .collect()
}
