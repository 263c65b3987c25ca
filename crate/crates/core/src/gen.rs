//! Seeded random instances for the identity suites and the conjecture
//! harness: layered graded posets, prescribed KLS g-functions, Eulerian
//! posets assembled from face lattices, and Cohen--Macaulay posets
//! found by rejection.

use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::homology::is_cohen_macaulay;
use crate::incidence::{IncAlgebra, IncElem};
use crate::poly::Poly;
use crate::poset::{
    crosspolytope_face_lattice, cube_face_lattice, diamond_product, dual, polygon_face_lattice,
    simplex_face_lattice, Poset, RankFn,
};

/// Deterministic RNG for a (seed, stream) pair; the stream index keeps
/// parallel harness workers reproducible independently of scheduling.
pub fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ stream.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Random bounded graded poset built from a layered DAG: level sizes
/// are random, covers connect adjacent levels only, and every middle
/// element keeps at least one cover in each direction.
pub fn random_graded_poset(rng: &mut impl Rng, max_rank: u32, max_width: usize) -> Poset {
    let r = rng.gen_range(1..=max_rank) as usize;
    let mut sizes = vec![1usize];
    for _ in 1..r {
        sizes.push(rng.gen_range(1..=max_width));
    }
    sizes.push(1);

    let mut offsets = vec![0u32];
    for s in &sizes {
        offsets.push(offsets.last().unwrap() + *s as u32);
    }
    let n = *offsets.last().unwrap() as usize;
    let mut covers = Vec::new();
    for level in 0..r {
        let (lo, lo_size) = (offsets[level], sizes[level]);
        let (hi, hi_size) = (offsets[level + 1], sizes[level + 1]);
        let mut up_deg = vec![0usize; lo_size];
        let mut down_deg = vec![0usize; hi_size];
        for a in 0..lo_size {
            for b in 0..hi_size {
                if rng.gen_bool(0.45) {
                    covers.push((lo + a as u32, hi + b as u32));
                    up_deg[a] += 1;
                    down_deg[b] += 1;
                }
            }
        }
        // Patch missing covers so the result stays bounded and graded.
        for (a, &d) in up_deg.iter().enumerate() {
            if d == 0 {
                let b = rng.gen_range(0..hi_size);
                covers.push((lo + a as u32, hi + b as u32));
                down_deg[b] += 1;
            }
        }
        for (b, &d) in down_deg.iter().enumerate() {
            if d == 0 {
                let a = rng.gen_range(0..lo_size);
                covers.push((lo + a as u32, hi + b as u32));
            }
        }
    }
    covers.sort_unstable();
    covers.dedup();
    Poset::from_covers(n, &covers).expect("layered DAG is a graded poset")
}

/// Random element satisfying the left-KLS preconditions: unit diagonal
/// and `deg g_st < rho_st / 2`, with small random coefficients.
pub fn random_kls_g(rng: &mut impl Rng, alg: &IncAlgebra) -> IncElem {
    alg.from_fn(|s, t| {
        if s == t {
            return Poly::one();
        }
        let rho = alg.rho(s, t) as usize;
        let max_deg = rho.div_ceil(2) - 1; // largest degree < rho/2
        let coeffs: Vec<i64> = (0..=max_deg).map(|_| rng.gen_range(-3..=3)).collect();
        Poly::from_i64(&coeffs)
    })
}

/// Random Eulerian poset: a face lattice (simplex, cube,
/// cross-polytope, or polygon), possibly dualized, possibly a
/// face-lattice product of two such.
pub fn random_eulerian_poset(rng: &mut impl Rng, max_size: usize) -> Poset {
    loop {
        let pick = |rng: &mut dyn rand::RngCore| -> Poset {
            match rng.gen_range(0..4) {
                0 => simplex_face_lattice(rng.gen_range(1..=3)),
                1 => cube_face_lattice(rng.gen_range(1..=3)),
                2 => crosspolytope_face_lattice(rng.gen_range(1..=3)),
                _ => polygon_face_lattice(rng.gen_range(3..=8)),
            }
        };
        let mut poset = pick(rng);
        if rng.gen_bool(0.4) {
            let other = pick(rng);
            poset = diamond_product(&poset, &other).expect("face lattices are bounded");
        }
        if rng.gen_bool(0.3) {
            poset = dual(&poset);
        }
        if poset.n() <= max_size {
            return poset;
        }
    }
}

/// Random Cohen--Macaulay poset of rank at most `max_rank`, verified by
/// the homology test. Found by rejection over layered posets with a
/// bias toward dense cover relations (which are CM-rich); gives up on
/// a candidate quickly, never on the search.
pub fn random_cm_poset(rng: &mut impl Rng, max_rank: u32, max_width: usize) -> (Poset, RankFn) {
    loop {
        let candidate = if rng.gen_bool(0.5) {
            random_graded_poset(rng, max_rank, max_width)
        } else {
            // Fully layered posets (all adjacent relations) are always CM.
            let r = rng.gen_range(1..=max_rank) as usize;
            let mut sizes = vec![1usize];
            for _ in 1..r {
                sizes.push(rng.gen_range(1..=max_width));
            }
            sizes.push(1);
            complete_layered(&sizes)
        };
        let rank = RankFn::graded(&candidate).expect("layered posets are graded");
        if is_cohen_macaulay(&candidate, &rank).is_cohen_macaulay {
            return (candidate, rank);
        }
    }
}

/// The poset with the given level sizes and every relation between
/// consecutive levels.
pub fn complete_layered(sizes: &[usize]) -> Poset {
    let mut offsets = vec![0u32];
    for s in sizes {
        offsets.push(offsets.last().unwrap() + *s as u32);
    }
    let n = *offsets.last().unwrap() as usize;
    let mut covers = Vec::new();
    for level in 0..sizes.len() - 1 {
        for a in 0..sizes[level] {
            for b in 0..sizes[level + 1] {
                covers.push((offsets[level] + a as u32, offsets[level + 1] + b as u32));
            }
        }
    }
    Poset::from_covers(n, &covers).unwrap()
}

/// Convenience: poset plus graded rank wrapped for the incidence
/// algebra.
pub fn algebra_for(poset: Poset) -> IncAlgebra {
    let poset = Arc::new(poset);
    let rank = Arc::new(RankFn::graded(&poset).expect("graded bounded poset"));
    IncAlgebra::new(poset, rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::kernel_from_g;
    use crate::poset::{is_eulerian, is_eulerian_by_counts};

    #[test]
    fn graded_posets_are_graded_and_bounded() {
        let mut rng = rng_for(7, 0);
        for _ in 0..50 {
            let poset = random_graded_poset(&mut rng, 6, 5);
            assert!(poset.is_bounded());
            assert!(RankFn::graded(&poset).is_ok());
        }
    }

    #[test]
    fn random_g_generates_kernels() {
        let mut rng = rng_for(11, 0);
        for _ in 0..20 {
            let poset = random_graded_poset(&mut rng, 5, 4);
            let alg = algebra_for(poset);
            let g = random_kls_g(&mut rng, &alg);
            let kappa = kernel_from_g(&g).expect("preconditions hold by construction");
            assert!(crate::incidence::check_kernel(&kappa).is_kernel);
        }
    }

    #[test]
    fn eulerian_generator_is_eulerian() {
        let mut rng = rng_for(23, 0);
        for _ in 0..15 {
            let poset = random_eulerian_poset(&mut rng, 120);
            let rank = RankFn::graded(&poset).unwrap();
            assert!(is_eulerian(&poset, &rank).is_eulerian);
            assert!(is_eulerian_by_counts(&poset, &rank).is_eulerian);
        }
    }

    #[test]
    fn cm_generator_is_cm() {
        let mut rng = rng_for(31, 0);
        for _ in 0..10 {
            let (poset, rank) = random_cm_poset(&mut rng, 4, 4);
            assert!(is_cohen_macaulay(&poset, &rank).is_cohen_macaulay);
        }
    }

    #[test]
    fn determinism() {
        let p1 = random_graded_poset(&mut rng_for(99, 3), 6, 5);
        let p2 = random_graded_poset(&mut rng_for(99, 3), 6, 5);
        assert_eq!(p1, p2);
    }
}
