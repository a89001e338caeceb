#![allow(dead_code)]

use qcell::rootsys::{cartan_matrix, CartanType, RootSystem};

/// Tiny deterministic generator so test inputs are reproducible.
pub struct Lcg(pub u64);

impl Lcg {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        self.0 >> 33
    }

    pub fn below(&mut self, n: usize) -> usize {
        (self.next() % n as u64) as usize
    }
}

/// `s_{w_1} ... s_{w_k}(v)` straight from the Cartan matrix.
pub fn act(c: &[Vec<i64>], word: &[u8], v: &[i64]) -> Vec<i64> {
    let mut out = v.to_vec();
    for &l in word.iter().rev() {
        let i = l as usize - 1;
        let p: i64 = (0..out.len()).map(|j| out[j] * c[i][j]).sum();
        out[i] -= p;
    }
    out
}

/// Positive roots by closure under simple reflections, from the Cartan matrix alone.
pub fn roots_by_closure(t: CartanType) -> Vec<Vec<i64>> {
    let c = cartan_matrix(t);
    let n = t.rank;
    let mut seen: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i64).collect())
        .collect();
    let mut k = 0;
    while k < seen.len() {
        let v = seen[k].clone();
        for i in 1..=n as u8 {
            let w = act(&c, &[i], &v);
            if w.iter().all(|&x| x >= 0) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        k += 1;
    }
    seen
}

/// `{alpha > 0 : w^{-1} alpha < 0}` with the independent reflection code above.
pub fn inversions(t: CartanType, word: &[u8]) -> Vec<Vec<i64>> {
    let c = cartan_matrix(t);
    let inv: Vec<u8> = word.iter().rev().copied().collect();
    let mut out: Vec<Vec<i64>> = roots_by_closure(t)
        .into_iter()
        .filter(|a| act(&c, &inv, a).iter().all(|&x| x <= 0))
        .collect();
    out.sort();
    out
}

pub fn braid_order(c: &[Vec<i64>], i: usize, j: usize) -> usize {
    match c[i - 1][j - 1] * c[j - 1][i - 1] {
        0 => 2,
        1 => 3,
        2 => 4,
        _ => 6,
    }
}

/// Words obtained from `word` by single braid moves, deduplicated.
pub fn braid_neighbours(t: CartanType, word: &[u8]) -> Vec<Vec<u8>> {
    let c = cartan_matrix(t);
    let mut out = Vec::new();
    for start in 0..word.len() {
        for len in [2usize, 3, 4, 6] {
            if start + len > word.len() {
                continue;
            }
            let (a, b) = (word[start], word[start + 1]);
            if a == b || braid_order(&c, a as usize, b as usize) != len {
                continue;
            }
            let seg = &word[start..start + len];
            if seg.iter().enumerate().all(|(k, &x)| x == if k % 2 == 0 { a } else { b }) {
                let mut w = word.to_vec();
                for (k, x) in w[start..start + len].iter_mut().enumerate() {
                    *x = if k % 2 == 0 { b } else { a };
                }
                if !out.contains(&w) {
                    out.push(w);
                }
            }
        }
    }
    out
}

/// Up to `count` distinct reduced words of the same element, by breadth-first braid moves.
pub fn braid_variants(t: CartanType, word: &[u8], count: usize) -> Vec<Vec<u8>> {
    let mut all = vec![word.to_vec()];
    let mut k = 0;
    while k < all.len() && all.len() < count {
        for w in braid_neighbours(t, &all[k]) {
            if !all.contains(&w) && all.len() < count {
                all.push(w);
            }
        }
        k += 1;
    }
    all
}

/// A reduced word of a random element, as the canonical word of a random product.
pub fn random_reduced_word(rs: &RootSystem, rng: &mut Lcg, max_len: usize) -> Vec<u8> {
    let n = rs.rank();
    let len = rng.below(max_len + 1);
    let raw: Vec<u8> = (0..len).map(|_| (rng.below(n) + 1) as u8).collect();
    rs.word_from_key(&rs.element_key(&raw))
}

/// Nonempty subsets of `1..=n` in lexicographic bitmask order.
pub fn subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n))
        .map(|m| (1..=n).filter(|i| m >> (i - 1) & 1 == 1).collect())
        .collect()
}

pub fn ty(t: &str) -> CartanType {
    t.parse().unwrap()
}
