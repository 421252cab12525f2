//! Reference computations for the integration tests, written against plain
//! vectors and sets rather than the library types.
//!
//! Ranks over `Z/2(t)` are checked by evaluating `t` at a random element of
//! `GF(2^64)`: a nonzero minor survives unless the point is one of its
//! finitely many roots.

#![allow(dead_code)]

use std::collections::BTreeSet;

use novikov::{LaurentMatrix, Presentation, Word};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

// ---------------------------------------------------------------- words

/// A unit step `(generator, +1 | -1)`.
pub type Step = (usize, i64);

/// Stack-based free reduction of unit steps.
pub fn reduce_steps(steps: &[Step]) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::new();
    for &(g, s) in steps {
        if out.last() == Some(&(g, -s)) {
            out.pop();
        } else {
            out.push((g, s));
        }
    }
    out
}

pub fn invert_steps(steps: &[Step]) -> Vec<Step> {
    steps.iter().rev().map(|&(g, s)| (g, -s)).collect()
}

/// A freely reduced word of exactly `len` unit steps.
pub fn random_reduced(rng: &mut TestRng, rank: usize, len: usize) -> Vec<Step> {
    let mut out: Vec<Step> = Vec::with_capacity(len);
    while out.len() < len {
        let step = (
            rng.gen_range(0..rank),
            if rng.gen_bool(0.5) { 1 } else { -1 },
        );
        if out.last() != Some(&(step.0, -step.1)) {
            out.push(step);
        }
    }
    out
}

pub fn steps_of(word: &Word) -> Vec<Step> {
    word.letters()
        .iter()
        .flat_map(|l| {
            std::iter::repeat_n(
                (l.generator, l.exponent.signum()),
                l.exponent.unsigned_abs() as usize,
            )
        })
        .collect()
}

pub fn word_of(steps: &[Step], rank: usize) -> Word {
    Word::reduce(steps.iter().copied(), rank).expect("indices below rank")
}

/// Exponent sums per generator.
pub fn abelianize(steps: &[Step], rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank];
    for &(g, s) in steps {
        v[g] += s;
    }
    v
}

/// A nontrivial relator of at most `max_len` unit steps: either a random
/// reduced word or a commutator of two short random words.
pub fn random_relator(rng: &mut TestRng, rank: usize, max_len: usize) -> Vec<Step> {
    loop {
        let raw = if rng.gen_bool(0.5) || max_len < 4 {
            let len = rng.gen_range(1..=max_len);
            random_reduced(rng, rank, len)
        } else {
            let lx = rng.gen_range(1..=max_len / 4);
            let ly = rng.gen_range(1..=max_len / 4);
            let x = random_reduced(rng, rank, lx);
            let y = random_reduced(rng, rank, ly);
            let mut c = x.clone();
            c.extend(&y);
            c.extend(invert_steps(&x));
            c.extend(invert_steps(&y));
            reduce_steps(&c)
        };
        if !raw.is_empty() {
            return raw;
        }
    }
}

pub const NAMES: [&str; 8] = ["a", "b", "c", "d", "e", "f", "g", "h"];

pub fn presentation_of(rank: usize, relators: &[Vec<Step>]) -> Presentation {
    let names = NAMES[..rank].iter().map(|s| s.to_string()).collect();
    Presentation::new(names, relators.iter().map(|r| word_of(r, rank)).collect())
        .expect("valid presentation")
}

pub fn random_presentation(
    rng: &mut TestRng,
    rank: usize,
    relators: usize,
    max_len: usize,
) -> (Presentation, Vec<Vec<Step>>) {
    let rels: Vec<Vec<Step>> = (0..relators)
        .map(|_| random_relator(rng, rank, max_len))
        .collect();
    (presentation_of(rank, &rels), rels)
}

/// Every `u` in `[-bound, bound]^rank` killing each relator's exponent sums.
pub fn valid_weights(relators: &[Vec<Step>], rank: usize, bound: i64) -> Vec<Vec<i64>> {
    let abel: Vec<Vec<i64>> = relators.iter().map(|r| abelianize(r, rank)).collect();
    let side = (2 * bound + 1) as usize;
    let mut out = Vec::new();
    for mut n in 0..side.pow(rank as u32) {
        let mut u = vec![0i64; rank];
        for slot in u.iter_mut() {
            *slot = (n % side) as i64 - bound;
            n /= side;
        }
        if abel
            .iter()
            .all(|a| a.iter().zip(&u).map(|(x, y)| x * y).sum::<i64>() == 0)
        {
            out.push(u);
        }
    }
    out
}

// -------------------------------------------------- Laurent polynomials

/// Polynomial over `Z/2` in `n` Laurent variables, as a set of exponents.
pub type Poly = BTreeSet<Vec<i64>>;

pub fn poly_add(a: &Poly, b: &Poly) -> Poly {
    a.symmetric_difference(b).cloned().collect()
}

pub fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            let e: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if !out.remove(&e) {
                out.insert(e);
            }
        }
    }
    out
}

pub fn random_poly(rng: &mut TestRng, vars: usize, max_terms: usize, spread: i64) -> Poly {
    let mut p = Poly::new();
    for _ in 0..rng.gen_range(1..=max_terms) {
        let e: Vec<i64> = (0..vars).map(|_| rng.gen_range(-spread..=spread)).collect();
        if !p.remove(&e) {
            p.insert(e);
        }
    }
    p
}

pub type PolyMatrix = Vec<Vec<Poly>>;

pub fn matrix_of(m: &LaurentMatrix) -> PolyMatrix {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).terms().clone()).collect())
        .collect()
}

pub fn matrix_mul(a: &PolyMatrix, b: &PolyMatrix, inner: usize) -> PolyMatrix {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    (0..inner).fold(Poly::new(), |acc, k| {
                        poly_add(&acc, &poly_mul(&row[k], &b[k][j]))
                    })
                })
                .collect()
        })
        .collect()
}

// ------------------------------------------------------------ GF(2^64)

/// `x^64 = x^4 + x^3 + x + 1`.
const REDUCTION: u64 = 0x1b;

fn clmul(a: u64, b: u64) -> u128 {
    let mut acc = 0u128;
    for i in 0..64 {
        if b >> i & 1 == 1 {
            acc ^= (a as u128) << i;
        }
    }
    acc
}

pub fn gf_mul(a: u64, b: u64) -> u64 {
    let wide = clmul(a, b);
    let (hi, lo) = ((wide >> 64) as u64, wide as u64);
    let fold = clmul(hi, REDUCTION);
    let (hi2, lo2) = ((fold >> 64) as u64, fold as u64);
    lo ^ lo2 ^ clmul(hi2, REDUCTION) as u64
}

pub fn gf_pow(mut a: u64, mut e: u128) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = gf_mul(acc, a);
        }
        a = gf_mul(a, a);
        e >>= 1;
    }
    acc
}

pub fn gf_inv(a: u64) -> u64 {
    assert_ne!(a, 0);
    gf_pow(a, (1u128 << 64) - 2)
}

/// `alpha^k` for any integer `k`.
pub fn gf_ipow(alpha: u64, k: i64) -> u64 {
    if k >= 0 {
        gf_pow(alpha, k as u128)
    } else {
        gf_pow(gf_inv(alpha), k.unsigned_abs() as u128)
    }
}

/// Evaluates `x^v -> alpha^(u.v)`.
pub fn evaluate(p: &Poly, u: &[i64], alpha: u64) -> u64 {
    p.iter().fold(0, |acc, e| {
        acc ^ gf_ipow(alpha, e.iter().zip(u).map(|(a, b)| a * b).sum())
    })
}

pub fn gf_rank(mut m: Vec<Vec<u64>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else {
            continue;
        };
        m.swap(rank, p);
        let inv = gf_inv(m[rank][c]);
        let pivot: Vec<u64> = m[rank].iter().map(|&x| gf_mul(x, inv)).collect();
        for (r, row) in m.iter_mut().enumerate() {
            if r != rank && row[c] != 0 {
                let f = row[c];
                for (x, &y) in row.iter_mut().zip(&pivot) {
                    *x ^= gf_mul(f, y);
                }
            }
        }
        m[rank] = pivot;
        rank += 1;
    }
    rank
}

/// A point of `GF(2^64)` away from the prime field.
pub fn random_point(rng: &mut TestRng) -> u64 {
    loop {
        let a: u64 = rng.gen();
        if a > 1 {
            return a;
        }
    }
}

/// `b_k = n_k - rank d_k - rank d_{k+1}` from evaluated boundaries.
pub fn betti_from(dims: &[usize], boundaries: &[Vec<Vec<u64>>]) -> Vec<usize> {
    let ranks: Vec<usize> = boundaries.iter().map(|b| gf_rank(b.clone())).collect();
    (0..dims.len())
        .map(|k| {
            let incoming = if k == 0 { 0 } else { ranks[k - 1] };
            let outgoing = ranks.get(k).copied().unwrap_or(0);
            dims[k] - incoming - outgoing
        })
        .collect()
}

/// Boundaries of `C (x) D`, `d(x (x) y) = dx (x) y + x (x) dy`, assembled
/// from evaluated matrices of `C` and constant matrices of `D`.
pub fn tensor_boundaries(
    c_dims: &[usize],
    c: &[Vec<Vec<u64>>],
    d_dims: &[usize],
    d: &[Vec<Vec<u64>>],
) -> (Vec<usize>, Vec<Vec<Vec<u64>>>) {
    let top = c_dims.len() + d_dims.len() - 2;
    let mut dims = vec![0; top + 1];
    let mut start = vec![vec![0; d_dims.len()]; c_dims.len()];
    for m in 0..=top {
        for i in 0..c_dims.len() {
            if m >= i && m - i < d_dims.len() {
                start[i][m - i] = dims[m];
                dims[m] += c_dims[i] * d_dims[m - i];
            }
        }
    }
    let mut out: Vec<Vec<Vec<u64>>> = (1..=top)
        .map(|m| vec![vec![0; dims[m]]; dims[m - 1]])
        .collect();
    for i in 0..c_dims.len() {
        for j in 0..d_dims.len() {
            let m = i + j;
            if m == 0 {
                continue;
            }
            let target = &mut out[m - 1];
            for a in 0..c_dims[i] {
                for b in 0..d_dims[j] {
                    let col = start[i][j] + a * d_dims[j] + b;
                    if i > 0 {
                        for a2 in 0..c_dims[i - 1] {
                            target[start[i - 1][j] + a2 * d_dims[j] + b][col] ^= c[i - 1][a2][a];
                        }
                    }
                    if j > 0 {
                        for b2 in 0..d_dims[j - 1] {
                            target[start[i][j - 1] + a * d_dims[j - 1] + b2][col] ^=
                                d[j - 1][b2][b];
                        }
                    }
                }
            }
        }
    }
    (dims, out)
}

/// A random complex of Laurent matrices in `vars` variables: a direct sum of
/// free cells and two-cell pieces `f: x -> y`, hidden by elementary basis
/// changes. Elementary matrices square to the identity in characteristic 2,
/// so `d_k E` and `E d_{k+1}` keep `d^2 = 0`.
pub fn random_laurent_complex(
    rng: &mut TestRng,
    vars: usize,
    top: usize,
    constant: bool,
) -> (Vec<usize>, Vec<PolyMatrix>) {
    let one: Poly = [vec![0; vars]].into_iter().collect();
    let mut dims = vec![0usize; top + 1];
    // pieces: (degree of the upper cell, entry)
    let mut pieces: Vec<(usize, Poly)> = Vec::new();
    let mut free: Vec<usize> = Vec::new();
    for _ in 0..rng.gen_range(1..=4) {
        if top > 0 && rng.gen_bool(0.6) {
            let k = rng.gen_range(1..=top);
            let f = if constant || rng.gen_bool(0.15) {
                if rng.gen_bool(0.8) {
                    one.clone()
                } else {
                    Poly::new()
                }
            } else {
                random_poly(rng, vars, 3, 2)
            };
            pieces.push((k, f));
        } else {
            free.push(rng.gen_range(0..=top));
        }
    }
    let mut index: Vec<(usize, usize, usize)> = Vec::new();
    for (k, _) in &pieces {
        index.push((*k - 1, dims[*k - 1], dims[*k]));
        dims[*k - 1] += 1;
        dims[*k] += 1;
    }
    for &k in &free {
        dims[k] += 1;
    }
    let mut d: Vec<PolyMatrix> = (1..=top)
        .map(|k| vec![vec![Poly::new(); dims[k]]; dims[k - 1]])
        .collect();
    for ((k, f), &(_, row, col)) in pieces.iter().zip(&index) {
        d[*k - 1][row][col] = f.clone();
    }
    for k in 0..=top {
        if dims[k] < 2 {
            continue;
        }
        for _ in 0..3 {
            let i = rng.gen_range(0..dims[k]);
            let j = rng.gen_range(0..dims[k]);
            if i == j {
                continue;
            }
            let lambda = if constant {
                one.clone()
            } else {
                random_poly(rng, vars, 2, 1)
            };
            // d_k E: column j += lambda column i
            if k >= 1 {
                for row in d[k - 1].iter_mut() {
                    row[j] = poly_add(&row[j], &poly_mul(&lambda, &row[i]));
                }
            }
            // E d_{k+1}: row i += lambda row j
            if k < top {
                let source = d[k][j].clone();
                for (x, y) in d[k][i].iter_mut().zip(&source) {
                    *x = poly_add(x, &poly_mul(&lambda, y));
                }
            }
        }
    }
    (dims, d)
}

/// CW JSON text for a complex of polynomial matrices.
pub fn cw_json(vars: usize, dims: &[usize], d: &[PolyMatrix]) -> String {
    let boundaries: Vec<Vec<Vec<Vec<Vec<i64>>>>> = d
        .iter()
        .map(|m| {
            m.iter()
                .map(|row| row.iter().map(|p| p.iter().cloned().collect()).collect())
                .collect()
        })
        .collect();
    serde_json::json!({ "variables": vars, "dims": dims, "boundaries": boundaries }).to_string()
}
