//! Permutation operators. Every operator maps permutations to permutations.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

pub fn random_permutation<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Vec<usize> {
    let mut genes: Vec<usize> = (0..len).collect();
    genes.shuffle(rng);
    genes
}

/// `mu` random permutations of `0..len`, pairwise distinct whenever
/// `len!` allows it.
pub fn init_population<R: Rng + ?Sized>(mu: usize, len: usize, rng: &mut R) -> Vec<Vec<usize>> {
    let distinct = factorial_at_least(len, mu);
    let mut seen = HashSet::with_capacity(mu);
    let mut population = Vec::with_capacity(mu);
    while population.len() < mu {
        let genes = random_permutation(len, rng);
        if distinct && !seen.insert(genes.clone()) {
            continue;
        }
        population.push(genes);
    }
    population
}

fn factorial_at_least(len: usize, target: usize) -> bool {
    let mut acc: usize = 1;
    for k in 2..=len {
        acc = acc.saturating_mul(k);
        if acc >= target {
            return true;
        }
    }
    acc >= target
}

/// Two distinct positions `a < b`, uniform over all such pairs.
pub fn cut_points<R: Rng + ?Sized>(len: usize, rng: &mut R) -> (usize, usize) {
    debug_assert!(len >= 2);
    let a = rng.gen_range(0..len);
    let mut b = rng.gen_range(0..len - 1);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

/// Order crossover (OX1) with inclusive cut points: the child keeps
/// `first[a..=b]` in place and fills the remaining positions, starting
/// after `b` and wrapping around, with the missing genes in the cyclic
/// order they appear in `second` starting after `b`.
pub fn order_crossover_at(first: &[usize], second: &[usize], a: usize, b: usize) -> Result<Vec<usize>> {
    let len = first.len();
    if second.len() != len {
        return Err(Error::LengthMismatch(len, second.len()));
    }
    assert!(a <= b && b < len, "cut points ({a}, {b}) out of range for {len}");

    let mut kept = vec![false; len];
    let mut child = vec![usize::MAX; len];
    for i in a..=b {
        child[i] = first[i];
        kept[first[i]] = true;
    }
    let mut fill = (b + 1..len).chain(0..a);
    for i in (b + 1..len).chain(0..=b) {
        let gene = second[i];
        if !kept[gene] {
            let pos = fill.next().expect("one free slot per missing gene");
            child[pos] = gene;
        }
    }
    Ok(child)
}

pub fn crossover<R: Rng + ?Sized>(first: &[usize], second: &[usize], rng: &mut R) -> Result<Vec<usize>> {
    if first.len() != second.len() {
        return Err(Error::LengthMismatch(first.len(), second.len()));
    }
    if first.len() < 2 {
        return Ok(first.to_vec());
    }
    let (a, b) = cut_points(first.len(), rng);
    order_crossover_at(first, second, a, b)
}

/// Reverses `genes[a..=b]`.
pub fn invert_at(genes: &mut [usize], a: usize, b: usize) {
    genes[a..=b].reverse();
}

/// Inversion mutation between two random points.
pub fn mutate<R: Rng + ?Sized>(genes: &mut [usize], rng: &mut R) {
    if genes.len() < 2 {
        return;
    }
    let (a, b) = cut_points(genes.len(), rng);
    invert_at(genes, a, b);
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn is_permutation(genes: &[usize]) -> bool {
        let mut seen = vec![false; genes.len()];
        genes
            .iter()
            .all(|&g| g < genes.len() && !std::mem::replace(&mut seen[g], true))
    }

    #[test]
    fn ox1_worked_example() {
        // 1-based values shifted to 0-based
        let p1 = [0, 1, 2, 3, 4, 5];
        let p2 = [5, 4, 3, 2, 1, 0];
        let child = order_crossover_at(&p1, &p2, 2, 4).unwrap();
        // keeps 3,4,5 (1-based); p2 after position 4 cycles 1,6,5,4,3,2
        // -> missing 1,6,2 go to positions 5,0,1
        assert_eq!(child, vec![5, 1, 2, 3, 4, 0]);
    }

    #[test]
    fn ox1_identical_parents() {
        let p = [3, 0, 4, 1, 2];
        for a in 0..5 {
            for b in a..5 {
                assert_eq!(order_crossover_at(&p, &p, a, b).unwrap(), p.to_vec());
            }
        }
    }

    #[test]
    fn ox1_length_mismatch() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(matches!(
            crossover(&[0, 1, 2], &[0, 1], &mut rng),
            Err(Error::LengthMismatch(3, 2))
        ));
    }

    #[test]
    fn inversion_examples() {
        let mut g = vec![1, 2, 3, 4, 5];
        invert_at(&mut g, 1, 3);
        assert_eq!(g, vec![1, 4, 3, 2, 5]);
        let mut g = vec![1, 2, 3, 4, 5];
        invert_at(&mut g, 2, 3);
        assert_eq!(g, vec![1, 2, 4, 3, 5]);
    }

    #[test]
    fn operators_keep_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10_000 {
            let p1 = random_permutation(30, &mut rng);
            let p2 = random_permutation(30, &mut rng);
            let mut child = crossover(&p1, &p2, &mut rng).unwrap();
            assert!(is_permutation(&child));
            mutate(&mut child, &mut rng);
            assert!(is_permutation(&child));
        }
    }

    #[test]
    fn cut_points_are_ordered_and_distinct() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut hits = vec![0u32; 6];
        for _ in 0..6000 {
            let (a, b) = cut_points(4, &mut rng);
            assert!(a < b && b < 4);
            let idx = match (a, b) {
                (0, 1) => 0,
                (0, 2) => 1,
                (0, 3) => 2,
                (1, 2) => 3,
                (1, 3) => 4,
                _ => 5,
            };
            hits[idx] += 1;
        }
        assert!(hits.iter().all(|&h| (850..1150).contains(&h)), "{hits:?}");
    }

    #[test]
    fn population_distinct_and_reproducible() {
        let a = init_population(200, 210, &mut ChaCha8Rng::seed_from_u64(5));
        let b = init_population(200, 210, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a, b);
        let unique: HashSet<_> = a.iter().collect();
        assert_eq!(unique.len(), 200);

        let one = init_population(1, 2, &mut ChaCha8Rng::seed_from_u64(5));
        assert!(one[0] == vec![0, 1] || one[0] == vec![1, 0]);
        // only 2 permutations of length 2 exist; duplicates are allowed
        let many = init_population(5, 2, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(many.len(), 5);
        let tiny = init_population(6, 3, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(tiny.iter().collect::<HashSet<_>>().len(), 6);
    }
}
