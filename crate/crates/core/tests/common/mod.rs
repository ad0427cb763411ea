#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use burnside_core::eqcw::{Cell, ChainComplex, ChainMorphism, GCWComplex};
use burnside_core::groupkit::{catalog, catalog_group, FiniteGroup, Subgroup};
use burnside_core::zlinalg::integer_kernel;
use burnside_core::{BurnsideElement, BurnsideRing, IntMatrix};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn big(n: i64) -> BigInt {
    BigInt::from(n)
}

pub fn samples_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../samples")
}

pub fn ring(name: &str) -> BurnsideRing {
    BurnsideRing::of(catalog_group(name))
}

/// Catalog entries whose order is at most `max`.
pub fn catalog_up_to(max: usize) -> Vec<&'static str> {
    catalog().into_iter().filter(|n| catalog_group(n).order() <= max).collect()
}

pub fn random_element(r: &mut ChaCha8Rng, ring: &BurnsideRing, bound: i64) -> BurnsideElement {
    BurnsideElement { coeffs: (0..ring.len()).map(|_| big(r.gen_range(-bound..=bound))).collect() }
}

/// Orbits of a subgroup `h` acting by left multiplication on `G/K`, each with
/// its stabilizer. Cosets are enumerated directly.
pub fn coset_orbits(g: &FiniteGroup, h: &Subgroup, k: &Subgroup) -> Vec<Subgroup> {
    let mut seen = vec![false; g.order()];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        if seen[x] {
            continue;
        }
        let mut c: Vec<usize> = k.elements().iter().map(|&y| g.mul(x, y)).collect();
        c.sort_unstable();
        for &y in &c {
            seen[y] = true;
        }
        cosets.push(c);
    }
    let coset_of = |x: usize| cosets.iter().position(|c| c.binary_search(&x).is_ok()).unwrap();
    let mut done = vec![false; cosets.len()];
    let mut out = Vec::new();
    for (i, c) in cosets.iter().enumerate() {
        if done[i] {
            continue;
        }
        let x = c[0];
        for &a in h.elements() {
            done[coset_of(g.mul(a, x))] = true;
        }
        let stab: Vec<usize> = h.elements().iter().copied().filter(|&a| coset_of(g.mul(a, x)) == i).collect();
        out.push(Subgroup::from_elements(g, &stab).unwrap());
    }
    out
}

/// `[G/H]·[G/K]` by decomposing `G/H × G/K` into orbits directly.
pub fn product_by_orbits(ring: &BurnsideRing, i: usize, j: usize) -> BurnsideElement {
    let g = ring.group();
    let h = &ring.ccs().class(i).representative;
    let k = &ring.ccs().class(j).representative;
    let mut out = ring.zero();
    // G-orbits of G/H × G/K ↔ H-orbits on G/K, stabilizers match
    for stab in coset_orbits(g, h, k) {
        out.coeffs[ring.ccs().class_of(&stab).unwrap()] += 1;
    }
    out
}

pub fn random_census(r: &mut ChaCha8Rng, ring: &BurnsideRing, max_cells: usize, max_dim: usize) -> GCWComplex {
    let n = r.gen_range(1..=max_cells);
    let cells = (0..n).map(|_| Cell { dim: r.gen_range(0..=max_dim), isotropy: r.gen_range(0..ring.len()) }).collect();
    GCWComplex::new(cells)
}

pub fn random_matrix(r: &mut ChaCha8Rng, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let entries = (0..rows * cols).map(|_| big(r.gen_range(-bound..=bound))).collect();
    IntMatrix::from_vec(rows, cols, entries).unwrap()
}

/// Random complex of length `len` with entries drawn from `[-2, 2]`; each
/// boundary is a random combination of the kernel of the previous one.
pub fn random_complex(r: &mut ChaCha8Rng, len: usize, max_dim: usize, zero_boundary: bool) -> ChainComplex {
    let dims: Vec<usize> = (0..len).map(|_| r.gen_range(0..=max_dim)).collect();
    if zero_boundary || len < 2 {
        return ChainComplex::free(dims);
    }
    let mut boundaries: Vec<IntMatrix> = Vec::new();
    for k in 1..len {
        let b = if k == 1 {
            random_matrix(r, dims[0], dims[1], 2)
        } else {
            let prev = &boundaries[k - 2];
            let kernel = integer_kernel(&prev.transpose());
            if kernel.rows() == 0 {
                IntMatrix::zeros(dims[k - 1], dims[k])
            } else {
                &kernel.transpose() * &random_matrix(r, kernel.rows(), dims[k], 2)
            }
        };
        boundaries.push(b);
    }
    ChainComplex::new(dims, boundaries).unwrap()
}

/// `a·id + ∂h + h∂` for random `h` (a chain map homotopic to `a·id`) when
/// source equals target; `∂h + h∂` otherwise. Over zero boundaries any
/// matrices are chain maps, so those are returned fully random.
pub fn random_chain_map(r: &mut ChaCha8Rng, x: &ChainComplex, y: &ChainComplex) -> ChainMorphism {
    let len = x.len();
    let zero = x.boundaries().iter().all(|b| b.is_zero()) && y.boundaries().iter().all(|b| b.is_zero());
    let maps: Vec<IntMatrix> = if zero {
        (0..len).map(|k| random_matrix(r, y.dims()[k], x.dims()[k], 2)).collect()
    } else {
        // h_k: X_k → Y_{k+1}
        let h: Vec<IntMatrix> =
            (0..len).map(|k| random_matrix(r, y.dims().get(k + 1).copied().unwrap_or(0), x.dims()[k], 2)).collect();
        let a = if x == y { r.gen_range(-2..=2) } else { 0 };
        (0..len)
            .map(|k| {
                let mut m = IntMatrix::zeros(y.dims()[k], x.dims()[k]);
                if a != 0 {
                    m = IntMatrix::identity(x.dims()[k]).scale_by(a);
                }
                if let Some(dy) = y.boundary(k + 1) {
                    m = m.add_matrix(&(dy * &h[k]));
                }
                if let Some(dx) = x.boundary(k) {
                    m = m.add_matrix(&(&h[k - 1] * dx));
                }
                m
            })
            .collect()
    };
    ChainMorphism::new(x.clone(), y.clone(), maps).unwrap()
}

trait MatrixOps {
    fn scale_by(&self, a: i64) -> IntMatrix;
    fn add_matrix(&self, other: &IntMatrix) -> IntMatrix;
}

impl MatrixOps for IntMatrix {
    fn scale_by(&self, a: i64) -> IntMatrix {
        let entries = self.entries().iter().map(|e| e * a).collect();
        IntMatrix::from_vec(self.rows(), self.cols(), entries).unwrap()
    }

    fn add_matrix(&self, other: &IntMatrix) -> IntMatrix {
        let entries = self.entries().iter().zip(other.entries()).map(|(a, b)| a + b).collect();
        IntMatrix::from_vec(self.rows(), self.cols(), entries).unwrap()
    }
}

/// Möbius function.
pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut out = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            out = -out;
        }
        p += 1;
    }
    if n > 1 {
        out = -out;
    }
    out
}

/// Profile `x(1..=bound)` is the profile of an integral combination of the
/// `ℤ/n` iff every `c_n = (1/n) Σ_{m|n} μ(n/m) x(m)` is an integer.
pub fn mobius_integral(values: &[BigInt]) -> bool {
    (1..=values.len()).all(|n| {
        let s: BigInt = (1..=n).filter(|m| n % m == 0).map(|m| mobius(n / m) * &values[m - 1]).sum();
        (s % BigInt::from(n)) == BigInt::from(0)
    })
}

pub fn arc(g: FiniteGroup) -> Arc<FiniteGroup> {
    Arc::new(g)
}

pub fn coeff_map(pairs: &[(usize, i64)]) -> BTreeMap<usize, BigInt> {
    pairs.iter().map(|&(n, c)| (n, big(c))).collect()
}
