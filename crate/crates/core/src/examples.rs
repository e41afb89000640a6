//! Fixture configurations used throughout the tests and the documentation.

use crate::config::PointConfiguration;

fn build(points: &[&[i64]]) -> PointConfiguration {
    PointConfiguration::from_i64(points).expect("fixture is a valid configuration")
}

/// `{(0,0),(0,1),(1,0),(1,2)}`: the non-normal surface `xy^2 = zw^2`.
pub fn surface() -> PointConfiguration {
    build(&[&[0, 0], &[0, 1], &[1, 0], &[1, 2]])
}

/// Permutation matrix of `perm` (row `r` has its one in column `perm[r]`),
/// flattened row by row.
fn permutation_matrix(perm: [usize; 3]) -> Vec<i64> {
    let mut m = vec![0; 9];
    for (r, &c) in perm.iter().enumerate() {
        m[3 * r + c] = 1;
    }
    m
}

/// The six 3x3 permutation matrices in `Z^9`, ordered `u0,u1,u2,v0,v1,v2`
/// with `u_i` even, `v_i` odd, and both `u_i` and `v_i` having their first-row
/// one in column `i`.
pub fn birkhoff() -> PointConfiguration {
    let perms = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [0, 2, 1],
        [1, 0, 2],
        [2, 1, 0],
    ];
    let rows: Vec<Vec<i64>> = perms.iter().map(|&p| permutation_matrix(p)).collect();
    let refs: Vec<&[i64]> = rows.iter().map(Vec::as_slice).collect();
    build(&refs)
}

/// Hexagon with center, the anticanonical polygon of the blowup of the plane
/// in three points.
pub fn hexagon() -> PointConfiguration {
    build(&[&[0, 0], &[0, 1], &[0, -1], &[1, 0], &[1, 1], &[-1, 0], &[-1, -1]])
}

/// Unit square: `P^1 x P^1` in its Segre embedding.
pub fn square() -> PointConfiguration {
    build(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1]])
}

/// Standard triangle: the plane.
pub fn triangle() -> PointConfiguration {
    build(&[&[0, 0], &[1, 0], &[0, 1]])
}

/// Isolated line of multiplicity two over the bottom edge `{0, 1}`.
pub fn double_line() -> PointConfiguration {
    build(&[&[0, 0], &[1, 0], &[0, 1], &[1, 1], &[2, 2]])
}

/// Isolated reduced line over the bottom edge `{0, 1}`.
pub fn simple_line() -> PointConfiguration {
    build(&[&[0, 0], &[1, 0], &[0, 1], &[2, 1]])
}
