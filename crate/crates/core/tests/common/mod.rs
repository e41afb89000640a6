#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use toric_fano::{examples, PointConfiguration};

pub const SEED: u64 = 0x5eed_2024;

/// Seeded small configurations: 3 to 8 distinct points in `Z^d`, `d <= 3`,
/// coordinates in `0..=2`.
pub fn random_configurations(count: usize, seed: u64) -> Vec<PointConfiguration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let d = rng.gen_range(1..=3usize);
        let max_points = if d == 1 { 3 } else { 8 };
        let target = rng.gen_range(3..=max_points);
        let mut pts: Vec<Vec<i64>> = Vec::new();
        while pts.len() < target {
            let p: Vec<i64> = (0..d).map(|_| rng.gen_range(0..=2)).collect();
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
        let refs: Vec<&[i64]> = pts.iter().map(Vec::as_slice).collect();
        out.push(PointConfiguration::from_i64(&refs).expect("distinct points"));
    }
    out
}

pub fn fixtures() -> Vec<(&'static str, PointConfiguration)> {
    vec![
        ("surface", examples::surface()),
        ("birkhoff", examples::birkhoff()),
        ("hexagon", examples::hexagon()),
        ("square", examples::square()),
        ("triangle", examples::triangle()),
        ("double_line", examples::double_line()),
        ("simple_line", examples::simple_line()),
    ]
}
