//! Brute-force computation of `Q^l(p, -)` from the path category modulo the
//! mesh ideal, independent of the closed forms in [`crate::meshcat`].
//!
//! The degree-`l` part of the mesh ideal at `q` is spanned by `a·I^{l-1}`
//! over arrows `a` into `q` plus `μ_q·P^{l-2}(p, τq)`, so
//! `Q^l(p,q) = (⊕_a Q^{l-1}(p, s(a))) / μ_q·Q^{l-2}(p, τq)`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixOps};
use crate::meshcat::{BasisElement, MeshCategory};
use crate::module::{NormalForm, PresentedModule};
use crate::quiver::{Arrow, Vertex};
use crate::ring::Ring;
use crate::linalg::solve;

#[derive(Clone, Debug)]
struct Space<R: Ring> {
    module: PresentedModule<R>,
    /// Left multiplication by each incoming arrow, from the previous degree.
    incoming: BTreeMap<Arrow, Matrix<R::Elem>>,
}

/// All graded pieces `Q^l(p, q)` for a fixed source `p` and every window
/// vertex `q`.
#[derive(Clone, Debug)]
pub struct PathOracle<R: Ring> {
    ring: R,
    source: Vertex,
    levels: Vec<BTreeMap<Vertex, Space<R>>>,
}

impl<R: Ring> PathOracle<R> {
    pub fn build(cat: &MeshCategory, ring: R, source: Vertex, max_len: usize) -> Result<Self> {
        let quiver = cat.quiver();
        if !quiver.in_window(&source) {
            return Err(Error::UnknownVertex(quiver.vertex_name(&source)));
        }
        let verts: Vec<Vertex> = quiver.vertices().to_vec();
        let mut levels: Vec<BTreeMap<Vertex, Space<R>>> = Vec::new();
        let mut first = BTreeMap::new();
        first.insert(source, Space { module: PresentedModule::free(ring.clone(), 1), incoming: BTreeMap::new() });
        levels.push(first);

        for l in 1..=max_len {
            let mut level = BTreeMap::new();
            for q in &verts {
                let arrows: Vec<Arrow> = quiver
                    .arrows_into(q)
                    .into_iter()
                    .filter(|a| quiver.in_window(&quiver.source(a)))
                    .collect();
                let prev = &levels[l - 1];
                let blocks: Vec<(Arrow, PresentedModule<R>)> = arrows
                    .iter()
                    .filter_map(|a| prev.get(&quiver.source(a)).map(|s| (*a, s.module.clone())))
                    .collect();
                let total: usize = blocks.iter().map(|(_, m)| m.generators()).sum();
                if total == 0 {
                    continue;
                }
                let mut rel = ring.block_diag(&blocks.iter().map(|(_, m)| m.relations().clone()).collect::<Vec<_>>());
                let tq = quiver.tau(q);
                if l >= 2 && quiver.in_window(&tq) {
                    if let Some(start) = levels[l - 2].get(&tq) {
                        let mut mesh = ring.zeros(0, start.module.generators());
                        for (a, m) in &blocks {
                            let s = quiver.sigma(a);
                            let block = prev
                                .get(&quiver.source(a))
                                .and_then(|sp| sp.incoming.get(&s).cloned())
                                .unwrap_or_else(|| ring.zeros(m.generators(), start.module.generators()));
                            mesh = mesh.vstack(&block);
                        }
                        rel = rel.hstack(&mesh);
                    }
                }
                let module = PresentedModule::new(ring.clone(), total, rel)?;
                let simple = module.simplify();
                if simple.module.generators() == 0 {
                    continue;
                }
                let mut incoming = BTreeMap::new();
                let mut offset = 0;
                for (a, m) in &blocks {
                    let cols: Vec<usize> = (offset..offset + m.generators()).collect();
                    incoming.insert(*a, simple.to_new.select_cols(&cols));
                    offset += m.generators();
                }
                level.insert(*q, Space { module: simple.module, incoming });
            }
            let empty = level.is_empty();
            levels.push(level);
            if empty {
                break;
            }
        }
        Ok(PathOracle { ring, source, levels })
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn max_degree(&self) -> usize {
        self.levels.len() - 1
    }

    /// Normal form of `Q^l(p, q)`; zero beyond the computed range.
    pub fn piece(&self, q: &Vertex, l: usize) -> NormalForm<R::Elem> {
        self.levels
            .get(l)
            .and_then(|lv| lv.get(q))
            .map(|s| s.module.normal_form().clone())
            .unwrap_or(NormalForm { free_rank: 0, torsion: Vec::new() })
    }

    /// `(degree, normal form)` for every nonzero piece of `Q(p, q)`.
    pub fn graded_dims(&self, q: &Vertex) -> Vec<(usize, NormalForm<R::Elem>)> {
        (0..self.levels.len())
            .map(|l| (l, self.piece(q, l)))
            .filter(|(_, nf)| !nf.is_zero())
            .collect()
    }

    /// Total free rank of `Q(p, q)` if every piece is free.
    pub fn total_rank(&self, q: &Vertex) -> Option<usize> {
        let mut total = 0;
        for (_, nf) in self.graded_dims(q) {
            if !nf.torsion.is_empty() {
                return None;
            }
            total += nf.free_rank;
        }
        Some(total)
    }

    fn generators(&self, q: &Vertex, l: usize) -> usize {
        self.levels.get(l).and_then(|lv| lv.get(q)).map(|s| s.module.generators()).unwrap_or(0)
    }

    /// Image of an arrow path starting at `p` (first arrow first), with each
    /// `a_q` weighted by `(-1)^q` when `signed`.
    pub fn path_image(&self, cat: &MeshCategory, path: &[Arrow], signed: bool) -> (Vertex, usize, Vec<R::Elem>) {
        let r = &self.ring;
        let quiver = cat.quiver();
        let mut at = self.source;
        let mut vec = alloc::vec![r.one()];
        for (k, a) in path.iter().enumerate() {
            let next = quiver.target(a);
            let l = k + 1;
            let m = self
                .levels
                .get(l)
                .and_then(|lv| lv.get(&next))
                .and_then(|s| s.incoming.get(a).cloned())
                .unwrap_or_else(|| r.zeros(self.generators(&next, l), vec.len()));
            vec = if m.cols() == vec.len() { r.mat_vec(&m, &vec) } else { alloc::vec![r.zero(); m.rows()] };
            if signed && !a.is_star() && a.q % 2 == 1 {
                vec = vec.iter().map(|x| r.neg(x)).collect();
            }
            at = next;
        }
        (at, path.len(), vec)
    }

    /// Oracle coordinates of the basis element `e` (which must start at `p`).
    pub fn basis_image(&self, cat: &MeshCategory, e: &BasisElement) -> Result<Vec<R::Elem>> {
        let (sign, path) = cat.canonical_path(e)?;
        let (_, _, v) = self.path_image(cat, &path, false);
        let s = self.ring.from_i64(sign);
        Ok(v.iter().map(|x| self.ring.mul(&s, x)).collect())
    }

    /// Whether every closed-form basis element starting at `p` maps to a
    /// generator of its rank-one oracle piece, and every oracle piece is
    /// accounted for.
    pub fn basis_matches(&self, cat: &MeshCategory) -> Result<bool> {
        let r = &self.ring;
        for q in cat.quiver().vertices() {
            let closed = cat.hom_degrees(&self.source, q);
            let seen: Vec<usize> = self.graded_dims(q).iter().map(|(l, _)| *l).collect();
            if closed != seen {
                return Ok(false);
            }
            for l in closed {
                let nf = self.piece(q, l);
                if nf.free_rank != 1 || !nf.torsion.is_empty() || self.generators(q, l) != 1 {
                    return Ok(false);
                }
                let v = self.basis_image(cat, &BasisElement { source: self.source, target: *q, degree: l })?;
                if v.len() != 1 || !r.is_unit(&v[0]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Left multiplication by `a` on `Q(p, s(a)) -> Q(p, t(a))`, written in
    /// the closed-form bases via [`Self::basis_image`].
    pub fn arrow_matrix(&self, cat: &MeshCategory, a: &Arrow) -> Result<Matrix<R::Elem>> {
        let r = &self.ring;
        let quiver = cat.quiver();
        let (s, t) = (quiver.source(a), quiver.target(a));
        let from = cat.hom_basis(&self.source, &s);
        let to = cat.hom_basis(&self.source, &t);
        let mut m = r.zeros(to.len(), from.len());
        for (j, e) in from.iter().enumerate() {
            let v = self.basis_image(cat, e)?;
            let l = e.degree + 1;
            let Some(mult) = self.levels.get(l).and_then(|lv| lv.get(&t)).and_then(|sp| sp.incoming.get(a)) else {
                continue;
            };
            let img = r.mat_vec(mult, &v);
            if img.iter().all(|x| r.is_zero(x)) {
                continue;
            }
            let i = to
                .iter()
                .position(|f| f.degree == l)
                .ok_or_else(|| Error::CrossCheck("oracle has a piece the closed form lacks".into()))?;
            let target_vec = self.basis_image(cat, &to[i])?;
            let col = Matrix::from_columns(target_vec.len(), &[target_vec], r.zero());
            let k = solve(r, &col, &img).map_err(|_| Error::CrossCheck("image is not a multiple of the basis element".into()))?;
            m[(i, j)] = k[0].clone();
        }
        Ok(m)
    }

    /// Checks that every signed path from `p` of length below `max_len`
    /// maps either to zero or to the image of the basis element with the
    /// same endpoints and degree.
    pub fn signed_paths_consistent(&self, cat: &MeshCategory, max_len: usize) -> Result<bool> {
        let quiver = cat.quiver();
        let mut frontier: Vec<Vec<Arrow>> = alloc::vec![Vec::new()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for path in frontier {
                let end = path.last().map(|a| quiver.target(a)).unwrap_or(self.source);
                for a in quiver.arrows_out(&end) {
                    if !quiver.in_window(&quiver.target(&a)) {
                        continue;
                    }
                    let mut p = path.clone();
                    p.push(a);
                    let (t, l, v) = self.path_image(cat, &p, true);
                    if v.iter().all(|x| self.ring.is_zero(x)) {
                        continue;
                    }
                    let e = BasisElement { source: self.source, target: t, degree: l };
                    if !cat.contains(&e) || self.basis_image(cat, &e)? != v {
                        return Ok(false);
                    }
                    next.push(p);
                }
            }
            frontier = next;
        }
        Ok(true)
    }
}

/// The graded dimension table of `Q(p, q)` from path enumeration.
pub fn hom_basis_oracle<R: Ring>(
    cat: &MeshCategory,
    ring: R,
    p: &Vertex,
    q: &Vertex,
    max_len: usize,
) -> Result<Vec<(usize, NormalForm<R::Elem>)>> {
    Ok(PathOracle::build(cat, ring, *p, max_len)?.graded_dims(q))
}
