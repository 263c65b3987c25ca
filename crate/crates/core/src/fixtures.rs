//! The small poset corpus used across the test and verification
//! suites. Each fixture is named for the property it exhibits; the
//! same posets ship as JSON files under `fixtures/` for the CLI.

use crate::poset::Poset;

/// Rank-6 bounded graded poset on 10 elements, not Cohen--Macaulay
/// (its flag h-vector has a -1 entry). Decomposes as
/// `C2 * rank4_interior() * C2`; chi-Chow polynomial
/// `x^5 + 8x^4 + 20x^3 + 20x^2 + 8x + 1`.
pub fn rank6_non_cm() -> Poset {
    Poset::from_covers(
        10,
        &[
            (0, 1),
            (1, 2),
            (1, 3),
            (2, 4),
            (2, 5),
            (3, 5),
            (3, 4),
            (4, 6),
            (5, 7),
            (6, 8),
            (7, 8),
            (8, 9),
        ],
    )
    .unwrap()
}

/// The rank-4 middle factor of [`rank6_non_cm`]: its left augmented
/// chi-Chow polynomial is `x^4 + 7x^3 + 13x^2 + 7x + 1`.
pub fn rank4_interior() -> Poset {
    Poset::from_covers(
        8,
        &[
            (0, 1),
            (0, 2),
            (1, 3),
            (1, 4),
            (2, 4),
            (2, 3),
            (3, 5),
            (4, 6),
            (5, 7),
            (6, 7),
        ],
    )
    .unwrap()
}

/// Rank-5 Eulerian poset on 18 elements that is not Cohen--Macaulay
/// and not a lattice: two towers of stacked diamonds sharing bottom
/// and top. Eulerian Chow polynomial
/// `x^4 + 12x^3 + 6x^2 + 12x + 1`; chi-Chow polynomial
/// `x^4 + 13x^3 + 25x^2 + 13x + 1`.
pub fn rank5_eulerian_non_cm() -> Poset {
    let mut covers: Vec<(u32, u32)> = vec![(0, 1), (0, 2), (0, 3), (0, 4)];
    // Tower levels: {1,2} -> {5,6} -> {9,10} -> {13,14} and
    // {3,4} -> {7,8} -> {11,12} -> {15,16}, each complete bipartite.
    for (lo, hi) in [(1, 5), (5, 9), (9, 13), (3, 7), (7, 11), (11, 15)] {
        for a in 0..2 {
            for b in 0..2 {
                covers.push((lo + a, hi + b));
            }
        }
    }
    for c in [13, 14, 15, 16] {
        covers.push((c, 17));
    }
    Poset::from_covers(18, &covers).unwrap()
}

/// Rank-5 graded poset on 9 elements whose chi-Chow polynomial
/// `x^4 + 7x^3 + 11x^2 + 7x + 1` is unimodal but not gamma-positive
/// (gamma vector `1 + 3x - x^2`).
pub fn rank5_non_gamma() -> Poset {
    Poset::from_covers(
        9,
        &[
            (0, 1),
            (1, 2),
            (1, 3),
            (2, 4),
            (3, 5),
            (4, 6),
            (5, 7),
            (6, 8),
            (7, 8),
        ],
    )
    .unwrap()
}

/// Rank-4 Cohen--Macaulay poset with level sizes 1, 4, 8, 1, 1 and all
/// relations between consecutive levels. Its chi Z-polynomial and
/// right augmented Chow polynomial have negative coefficients
/// (`Z = x^4 + x^3 - 20x^2 + x + 1`, `F = x^4 + 11x^3 - x^2 + 11x + 1`),
/// and the right KLS polynomial is `1 - 3x`.
pub fn rank4_cm_negative_z() -> Poset {
    let mut covers: Vec<(u32, u32)> = Vec::new();
    for a in 1..=4 {
        covers.push((0, a));
        for b in 5..=12 {
            covers.push((a, b));
        }
    }
    for b in 5..=12 {
        covers.push((b, 13));
    }
    covers.push((13, 14));
    Poset::from_covers(15, &covers).unwrap()
}

/// The full graded fixture corpus as (name, poset) pairs.
pub fn graded_corpus() -> Vec<(&'static str, Poset)> {
    vec![
        ("rank6_non_cm", rank6_non_cm()),
        ("rank4_interior", rank4_interior()),
        ("rank5_eulerian_non_cm", rank5_eulerian_non_cm()),
        ("rank5_non_gamma", rank5_non_gamma()),
        ("rank4_cm_negative_z", rank4_cm_negative_z()),
        ("boolean_3", crate::poset::boolean(3)),
        ("boolean_4", crate::poset::boolean(4)),
        ("chain_5", crate::poset::chain(5)),
        ("cube_3", crate::poset::cube_face_lattice(3)),
        ("crosspoly_3", crate::poset::crosspolytope_face_lattice(3)),
        ("hexagon", crate::poset::polygon_face_lattice(6)),
    ]
}

/// The Eulerian subset of the corpus.
pub fn eulerian_corpus() -> Vec<(&'static str, Poset)> {
    use crate::poset::{
        crosspolytope_face_lattice, cube_face_lattice, polygon_face_lattice,
        simplex_face_lattice,
    };
    let mut out: Vec<(&'static str, Poset)> = vec![
        ("rank5_eulerian_non_cm", rank5_eulerian_non_cm()),
        ("pentagon", polygon_face_lattice(5)),
    ];
    for d in 1..=4 {
        let name: &'static str = match d {
            1 => "simplex_1",
            2 => "simplex_2",
            3 => "simplex_3",
            _ => "simplex_4",
        };
        out.push((name, simplex_face_lattice(d)));
    }
    for d in 2..=4 {
        let name: &'static str = match d {
            2 => "cube_2",
            3 => "cube_3",
            _ => "cube_4",
        };
        out.push((name, cube_face_lattice(d)));
        let name: &'static str = match d {
            2 => "crosspoly_2",
            3 => "crosspoly_3",
            _ => "crosspoly_4",
        };
        out.push((name, crosspolytope_face_lattice(d)));
    }
    out
}
