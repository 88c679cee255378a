//! Seeded random complexes, representations and morphisms.

use std::collections::BTreeMap;
use std::sync::Arc;

use qshape_core::matrix::{Matrix, MatrixOps};
use qshape_core::meshcat::MeshCategory;
use qshape_core::module::PresentedModule;
use qshape_core::quiver::Vertex;
use qshape_core::repmod::{
    cofree_at, cokernel_of_morphism, free_at, kernel_of_morphism, morphism_space, stalk_rep, ChainComplex, RepMorphism,
    Representation,
};
use qshape_core::ring::Ring;
use qshape_core::Result;
use rand::seq::SliceRandom;
use rand::Rng as _;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub type Rng = ChaCha8Rng;

pub const DEFAULT_SEED: u64 = 20_240_917;

pub fn rng(seed: u64) -> Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn all_vectors(len: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// A bounded complex with at most `max_len` degrees, ranks at most
/// `max_rank` and entries in `[-bound, bound]`. Each boundary is built
/// from small vectors in the kernel of the previous one, so `d² = 0`.
pub fn random_complex<R: Ring>(rng: &mut Rng, r: &R, max_len: usize, max_rank: usize, bound: i64) -> ChainComplex<R::Elem> {
    let len = rng.gen_range(1..=max_len);
    let lowest = rng.gen_range(-3..=3);
    let ranks: Vec<usize> = (0..len).map(|_| rng.gen_range(0..=max_rank)).collect();
    let mut boundaries: Vec<Matrix<R::Elem>> = Vec::new();
    for k in 1..len {
        let (rows, cols) = (ranks[k - 1], ranks[k]);
        let m = match boundaries.last() {
            None => {
                let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
                r.int_matrix(rows, cols, &entries)
            }
            Some(prev) => {
                let candidates: Vec<Vec<R::Elem>> = all_vectors(rows, bound)
                    .into_iter()
                    .map(|v| v.iter().map(|x| r.from_i64(*x)).collect::<Vec<_>>())
                    .filter(|v| r.mat_vec(prev, v).iter().all(|x| r.is_zero(x)))
                    .collect();
                let cols_v: Vec<Vec<R::Elem>> = (0..cols)
                    .map(|_| {
                        if rng.gen_bool(0.25) {
                            vec![r.zero(); rows]
                        } else {
                            candidates.choose(rng).cloned().unwrap_or_else(|| vec![r.zero(); rows])
                        }
                    })
                    .collect();
                Matrix::from_columns(rows, &cols_v, r.zero())
            }
        };
        boundaries.push(m);
    }
    ChainComplex { lowest, ranks, boundaries }
}

/// `F_q(R)`, `G_q(R)` or `S_q(R)` at a random vertex.
pub fn random_block<R: Ring>(rng: &mut Rng, cat: &Arc<MeshCategory>, r: &R) -> Result<Representation<R>> {
    let verts: Vec<Vertex> = cat.quiver().vertices().to_vec();
    let q = *verts.choose(rng).expect("vertices");
    let one = PresentedModule::free(r.clone(), 1);
    match rng.gen_range(0..3) {
        0 => free_at(cat, &q, &one),
        1 => cofree_at(cat, &q, &one),
        _ => stalk_rep(cat, &q, &one),
    }
}

pub fn random_sum<R: Ring>(rng: &mut Rng, cat: &Arc<MeshCategory>, r: &R, max_summands: usize) -> Result<Representation<R>> {
    let k = rng.gen_range(1..=max_summands);
    let mut x = random_block(rng, cat, r)?;
    for _ in 1..k {
        x = x.direct_sum(&random_block(rng, cat, r)?)?;
    }
    Ok(x)
}

/// A random combination of a basis of `Hom(X, Y)`; needs free values.
pub fn random_morphism<R: Ring>(rng: &mut Rng, x: &Representation<R>, y: &Representation<R>) -> Result<RepMorphism<R>> {
    let r = x.ring();
    let basis = morphism_space(x, y)?;
    let mut comps: BTreeMap<Vertex, Matrix<R::Elem>> = BTreeMap::new();
    for b in &basis {
        let c = r.from_i64(rng.gen_range(-2..=2));
        if r.is_zero(&c) {
            continue;
        }
        for (v, m) in b.components() {
            let scaled = r.mat_scale(&c, m);
            let entry = comps.entry(*v).or_insert_with(|| r.zeros(m.rows(), m.cols()));
            *entry = r.mat_add(entry, &scaled);
        }
    }
    RepMorphism::new(x.clone(), y.clone(), comps)
}

/// A kernel, cokernel or sum built from random morphisms between sums of
/// free, cofree and stalk representations, with simplified values.
pub fn random_representation<R: Ring>(rng: &mut Rng, cat: &Arc<MeshCategory>, r: &R) -> Result<Representation<R>> {
    let p = random_sum(rng, cat, r, 3)?;
    let q = random_sum(rng, cat, r, 3)?;
    let x = match rng.gen_range(0..4) {
        0 => cokernel_of_morphism(&random_morphism(rng, &p, &q)?)?.0,
        1 => kernel_of_morphism(&random_morphism(rng, &p, &q)?)?.0,
        2 => {
            let c = cokernel_of_morphism(&random_morphism(rng, &p, &q)?)?.0.simplified();
            c.direct_sum(&random_block(rng, cat, r)?)?
        }
        _ => p,
    };
    Ok(x.simplified())
}
