//! Corner functors, mesh homology, derived (co)homology at a vertex and the
//! decision procedures built on them.
//!
//! Derived functors are computed by resolving the stalk functor at `q` by
//! representables and evaluating `X` on the resolution: a left resolution
//! by `Q(r, -)` turns into the cochain complex `⊕ X(r)` computing
//! `Ext^i(S_[q⟩, X)`, a right resolution by `Q(-, r)` into the chain
//! complex computing `Tor_i(S_⟨q], X)`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::linalg::{in_span, kernel};
use crate::matrix::{Matrix, MatrixOps};
use crate::meshcat::{BasisElement, MeshCategory};
use crate::module::{induced_map_on_subquotient, ModuleMap, PresentedModule, Subquotient};
use crate::quiver::Vertex;
use crate::repmod::{RepMorphism, Representation};
use crate::ring::{Integers, Ring};

/// Which stalk functor is resolved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    /// `S_[q⟩` by representables `Q(r, -)`; gives cohomology `H^i_[q⟩`.
    Left,
    /// `S_⟨q]` by representables `Q(-, r)`; gives homology `H_i^⟨q]`.
    Right,
}

/// How the first syzygy is covered.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Head {
    /// One summand per arrow at `q`; every later step is minimal too.
    Minimal,
    /// One summand per radical basis element at `q`.
    BasisIndexed,
}

/// A summand `Q(vertex, -)` (or `Q(-, vertex)`) of a resolution term,
/// generated in total degree `shift`. `image` lists the components of its
/// generator in the previous term: `(summand, basis element, coefficient)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub vertex: Vertex,
    pub shift: usize,
    pub image: Vec<(usize, BasisElement, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StalkResolution {
    pub vertex: Vertex,
    pub side: Side,
    pub head: Head,
    /// `terms[0]` is the single summand at `vertex`.
    pub terms: Vec<Vec<Summand>>,
}

const CACHED_LENGTH: usize = 4;

/// Resolutions for the vertices of one `τ`-orbit representative per row,
/// published once.
pub struct ResolutionCache {
    slots: Vec<OnceBox<StalkResolution>>,
}

impl ResolutionCache {
    pub(crate) fn new(n: usize) -> Self {
        ResolutionCache { slots: (0..n * 4).map(|_| OnceBox::new()).collect() }
    }
}

fn view_hom(cat: &MeshCategory, side: Side, r: &Vertex, s: &Vertex) -> Vec<BasisElement> {
    match side {
        Side::Left => cat.hom_basis(r, s),
        Side::Right => cat.hom_basis(s, r),
    }
}

fn view_targets(cat: &MeshCategory, side: Side, r: &Vertex) -> Vec<Vertex> {
    match side {
        Side::Left => cat.targets_from(r),
        Side::Right => cat.sources_to(r),
    }
}

/// `h · x` for `x` in `view_hom(r, s)` and a view morphism `h: s -> s'`.
fn view_act(cat: &MeshCategory, side: Side, h: &BasisElement, x: &BasisElement) -> Option<BasisElement> {
    match side {
        Side::Left => cat.compose_basis(h, x).expect("composable"),
        Side::Right => cat.compose_basis(x, h).expect("composable"),
    }
}

fn view_source(side: Side, h: &BasisElement) -> Vertex {
    match side {
        Side::Left => h.source,
        Side::Right => h.target,
    }
}

type Graded = BTreeMap<(usize, Vertex), Vec<(usize, BasisElement)>>;

fn graded_basis(cat: &MeshCategory, side: Side, term: &[Summand]) -> Graded {
    let mut out = Graded::new();
    for (j, sm) in term.iter().enumerate() {
        for s in view_targets(cat, side, &sm.vertex) {
            for e in view_hom(cat, side, &sm.vertex, &s) {
                out.entry((sm.shift + e.degree, s)).or_default().push((j, e));
            }
        }
    }
    out
}

fn to_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::CrossCheck("resolution coefficient overflow".into()))
}

impl StalkResolution {
    /// Resolves the stalk functor at `q` up to `terms[length]`, verifying
    /// exactness at every step.
    pub fn compute(cat: &MeshCategory, q: &Vertex, side: Side, head: Head, length: usize) -> Result<Self> {
        if !cat.quiver().is_vertex(q) {
            return Err(Error::UnknownVertex(cat.quiver().vertex_name(q)));
        }
        let z = Integers;
        let mut terms: Vec<Vec<Summand>> = alloc::vec![alloc::vec![Summand { vertex: *q, shift: 0, image: Vec::new() }]];
        for k in 0..length {
            let term = &terms[k];
            let graded = graded_basis(cat, side, term);
            let prev_graded = if k > 0 { graded_basis(cat, side, &terms[k - 1]) } else { Graded::new() };
            let mut gens: Vec<(Vertex, usize, Vec<BigInt>)> = Vec::new();
            for ((d, s), basis) in &graded {
                let kern = if k == 0 {
                    let cols: Vec<Vec<BigInt>> = (0..basis.len())
                        .filter(|i| !(basis[*i].1.degree == 0 && *s == *q))
                        .map(|i| {
                            let mut c = alloc::vec![BigInt::from(0); basis.len()];
                            c[i] = BigInt::from(1);
                            c
                        })
                        .collect();
                    Matrix::from_columns(basis.len(), &cols, BigInt::from(0))
                } else {
                    let rows = prev_graded.get(&(*d, *s)).cloned().unwrap_or_default();
                    let mut m = z.zeros(rows.len(), basis.len());
                    for (col, (j, e)) in basis.iter().enumerate() {
                        for (i, f, c) in &term[*j].image {
                            if let Some(g) = view_act(cat, side, e, f) {
                                let row = rows.iter().position(|x| *x == (*i, g)).ok_or_else(|| {
                                    Error::CrossCheck("resolution image outside the previous term".into())
                                })?;
                                m[(row, col)] += BigInt::from(*c);
                            }
                        }
                    }
                    kernel(&z, &m)
                };
                // part of the kernel already generated by earlier generators
                let mut generated: Vec<Vec<BigInt>> = Vec::new();
                for (s2, d2, y) in &gens {
                    if d2 > d {
                        continue;
                    }
                    let src_basis = &graded[&(*d2, *s2)];
                    for h in view_hom(cat, side, s2, s).into_iter().filter(|h| h.degree == d - d2) {
                        let _ = view_source(side, &h);
                        let mut v = alloc::vec![BigInt::from(0); basis.len()];
                        let mut any = false;
                        for (idx, coef) in y.iter().enumerate() {
                            if *coef == BigInt::from(0) {
                                continue;
                            }
                            let (j, e) = &src_basis[idx];
                            if let Some(g) = view_act(cat, side, &h, e) {
                                let pos = basis.iter().position(|x| *x == (*j, g)).expect("graded basis");
                                v[pos] += coef;
                                any = true;
                            }
                        }
                        if any {
                            generated.push(v);
                        }
                    }
                }
                let gmat = Matrix::from_columns(basis.len(), &generated, BigInt::from(0));
                let new_cols: Vec<Vec<BigInt>> = if k == 0 && head == Head::BasisIndexed {
                    kern.columns()
                } else {
                    let sq = Subquotient::new(z, kern.clone(), gmat.clone());
                    let simple = sq.module().simplify();
                    z.matmul(&kern, &simple.from_new).columns()
                };
                let all = gmat.hstack(&Matrix::from_columns(basis.len(), &new_cols, BigInt::from(0)));
                if !in_span(&z, &all, &kern) {
                    return Err(Error::CrossCheck("resolution step does not cover its kernel".into()));
                }
                for c in new_cols {
                    gens.push((*s, *d, c));
                }
            }
            // exactness: images of the new generators lie in the kernel
            let mut next = Vec::with_capacity(gens.len());
            for (s, d, y) in gens {
                let basis = &graded[&(d, s)];
                let mut image = Vec::new();
                for (idx, coef) in y.iter().enumerate() {
                    if *coef != BigInt::from(0) {
                        let (j, e) = basis[idx];
                        image.push((j, e, to_i64(coef)?));
                    }
                }
                next.push(Summand { vertex: s, shift: d, image });
            }
            terms.push(next);
            if k > 0 {
                let res = StalkResolution { vertex: *q, side, head, terms: terms.clone() };
                if !res.composite_vanishes(cat, k + 1) {
                    return Err(Error::CrossCheck("consecutive resolution maps do not compose to zero".into()));
                }
            }
        }
        Ok(StalkResolution { vertex: *q, side, head, terms })
    }

    /// Checks that `P_k -> P_{k-1} -> P_{k-2}` composes to zero on generators.
    fn composite_vanishes(&self, cat: &MeshCategory, k: usize) -> bool {
        let side = self.side;
        for sm in &self.terms[k] {
            let mut acc: BTreeMap<(usize, BasisElement), i64> = BTreeMap::new();
            for (j, e, c) in &sm.image {
                for (i, f, c2) in &self.terms[k - 1][*j].image {
                    if let Some(g) = view_act(cat, side, e, f) {
                        *acc.entry((*i, g)).or_insert(0) += c * c2;
                    }
                }
            }
            if acc.values().any(|v| *v != 0) {
                return false;
            }
        }
        true
    }

    pub fn length(&self) -> usize {
        self.terms.len() - 1
    }

    /// The same resolution moved along `τ^delta` (repetitive quivers only).
    pub fn shifted(&self, delta: i64) -> Self {
        let sv = |v: &Vertex| Vertex::new(v.row, v.index + delta);
        let se = |e: &BasisElement| BasisElement { source: sv(&e.source), target: sv(&e.target), degree: e.degree };
        StalkResolution {
            vertex: sv(&self.vertex),
            side: self.side,
            head: self.head,
            terms: self
                .terms
                .iter()
                .map(|t| {
                    t.iter()
                        .map(|s| Summand {
                            vertex: sv(&s.vertex),
                            shift: s.shift,
                            image: s.image.iter().map(|(j, e, c)| (*j, se(e), *c)).collect(),
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn truncated(&self, length: usize) -> Self {
        let mut out = self.clone();
        out.terms.truncate(length + 1);
        out
    }

    pub fn summand_vertices(&self) -> BTreeSet<Vertex> {
        self.terms.iter().flatten().map(|s| s.vertex).collect()
    }
}

/// The resolution of the stalk at `q`, from the per-row cache when short
/// enough.
pub fn resolve_stalk(cat: &MeshCategory, q: &Vertex, side: Side, head: Head, length: usize) -> Result<StalkResolution> {
    if !cat.quiver().is_vertex(q) {
        return Err(Error::UnknownVertex(cat.quiver().vertex_name(q)));
    }
    if length > CACHED_LENGTH {
        return StalkResolution::compute(cat, q, side, head, length);
    }
    let slot = (q.row - 1) * 4 + 2 * usize::from(side == Side::Right) + usize::from(head == Head::BasisIndexed);
    let base = cat.resolutions.slots[slot].get_or_try_init(|| {
        let v = Vertex::new(q.row, 0);
        StalkResolution::compute(cat, &v, side, head, CACHED_LENGTH).map(alloc::boxed::Box::new)
    })?;
    let res = if cat.is_double() { base.clone() } else { base.shifted(q.index) };
    Ok(res.truncated(length))
}

/// The complex `⊕ X(r_j)` obtained by evaluating `X` on a stalk
/// resolution, in degrees `0..=max_degree + 1`.
#[derive(Clone, Debug)]
pub struct DerivedComplex<R: Ring> {
    pub side: Side,
    pub modules: Vec<PresentedModule<R>>,
    /// `offsets[i][j]`: first generator of summand `j` in degree `i`.
    offsets: Vec<Vec<usize>>,
    /// Left: `d^i: C^i -> C^{i+1}`; Right: `∂_{i+1}: C_{i+1} -> C_i`.
    maps: Vec<Matrix<R::Elem>>,
    vertices: Vec<Vec<Vertex>>,
}

impl<R: Ring> DerivedComplex<R> {
    pub fn build(x: &Representation<R>, res: &StalkResolution) -> Result<Self> {
        let r = x.ring();
        let mut cache: BTreeMap<BasisElement, Matrix<R::Elem>> = BTreeMap::new();
        let mut eval = |e: &BasisElement| -> Result<Matrix<R::Elem>> {
            if let Some(m) = cache.get(e) {
                return Ok(m.clone());
            }
            let m = x.eval(e)?;
            cache.insert(*e, m.clone());
            Ok(m)
        };
        let mut modules = Vec::new();
        let mut offsets = Vec::new();
        let mut vertices = Vec::new();
        for term in &res.terms {
            let mut off = Vec::with_capacity(term.len());
            let mut acc = 0;
            let mut parts = Vec::new();
            for sm in term {
                off.push(acc);
                acc += x.generators(&sm.vertex);
                parts.push(x.value(&sm.vertex).relations().clone());
            }
            modules.push(PresentedModule::new(r.clone(), acc, r.block_diag(&parts))?);
            offsets.push(off);
            vertices.push(term.iter().map(|s| s.vertex).collect());
        }
        let mut maps = Vec::new();
        for k in 1..res.terms.len() {
            let (lo, hi) = (&modules[k - 1], &modules[k]);
            let mut m = match res.side {
                Side::Left => r.zeros(hi.generators(), lo.generators()),
                Side::Right => r.zeros(lo.generators(), hi.generators()),
            };
            for (jn, sm) in res.terms[k].iter().enumerate() {
                let gn = x.generators(&sm.vertex);
                if gn == 0 {
                    continue;
                }
                for (j, e, c) in &sm.image {
                    let gj = x.generators(&res.terms[k - 1][*j].vertex);
                    if gj == 0 {
                        continue;
                    }
                    let block = r.mat_scale(&r.from_i64(*c), &eval(e)?);
                    let (r0, c0) = match res.side {
                        Side::Left => (offsets[k][jn], offsets[k - 1][*j]),
                        Side::Right => (offsets[k - 1][*j], offsets[k][jn]),
                    };
                    for a in 0..block.rows() {
                        for b in 0..block.cols() {
                            m[(r0 + a, c0 + b)] = r.add(&m[(r0 + a, c0 + b)], &block[(a, b)]);
                        }
                    }
                }
            }
            maps.push(m);
        }
        Ok(DerivedComplex { side: res.side, modules, offsets, maps, vertices })
    }

    pub fn top(&self) -> usize {
        self.modules.len() - 1
    }

    /// `H^i` (left) or `H_i` (right) as a subquotient of degree `i`.
    pub fn subquotient(&self, i: usize) -> Subquotient<R> {
        let m = &self.modules[i];
        let r = m.ring();
        let out = match self.side {
            Side::Left => self.maps.get(i).map(|d| (d, &self.modules[i + 1])),
            Side::Right => (i > 0).then(|| (&self.maps[i - 1], &self.modules[i - 1])),
        };
        let base = match out {
            Some((d, tgt)) => ModuleMap { source: m.clone(), target: tgt.clone(), matrix: d.clone() }.kernel(),
            None => Subquotient::new(r.clone(), r.identity(m.generators()), m.relations().clone()),
        };
        let incoming = match self.side {
            Side::Left => (i > 0).then(|| self.maps[i - 1].clone()),
            Side::Right => self.maps.get(i).cloned(),
        };
        let rel = match incoming {
            Some(d) => base.rel.hstack(&d),
            None => base.rel,
        };
        Subquotient::new(r.clone(), base.sub, rel)
    }

    /// The chain map induced by `φ` in degree `i`; both complexes must come
    /// from the same resolution.
    pub fn chain_map(&self, other: &Self, phi: &RepMorphism<R>, i: usize) -> Matrix<R::Elem> {
        let r = self.modules[i].ring();
        let blocks: Vec<Matrix<R::Elem>> = self.vertices[i].iter().map(|v| phi.component(v)).collect();
        let m = r.block_diag(&blocks);
        debug_assert_eq!(m.shape(), (other.modules[i].generators(), self.modules[i].generators()));
        let _ = &self.offsets;
        m
    }
}

/// `K_q`, `C_q` and the subquotient presenting `K_q` inside `X(q)`.
#[derive(Clone, Debug)]
pub struct CornerValues<R: Ring> {
    pub vertex: Vertex,
    pub k: PresentedModule<R>,
    pub k_inclusion: Subquotient<R>,
    pub c: PresentedModule<R>,
}

fn check_interior(cat: &MeshCategory, q: &Vertex) -> Result<()> {
    let quiver = cat.quiver();
    if !quiver.is_vertex(q) {
        return Err(Error::UnknownVertex(quiver.vertex_name(q)));
    }
    if !quiver.is_interior(q) {
        return Err(Error::BoundaryVertex(quiver.vertex_name(q)));
    }
    Ok(())
}

/// Basis elements of degree at least `l` out of `q` (identity included for `l = 0`).
fn maps_out_of(cat: &MeshCategory, q: &Vertex, l: usize) -> Vec<BasisElement> {
    cat.targets_from(q).iter().flat_map(|r| cat.radical_basis(q, r, l)).collect()
}

fn maps_into(cat: &MeshCategory, q: &Vertex, l: usize) -> Vec<BasisElement> {
    cat.sources_to(q).iter().flat_map(|s| cat.radical_basis(s, q, l)).collect()
}

/// `(K^l_q, C^l_q)`: the kernel of all `X(g)` with `g` of degree at least
/// `l` out of `q`, and `X(q)` modulo the images of those into `q`.
pub fn radical_filtration<R: Ring>(x: &Representation<R>, q: &Vertex, l: usize) -> Result<CornerValues<R>> {
    let cat = x.category();
    check_interior(cat, q)?;
    let r = x.ring();
    let xq = x.value(q).clone();
    let g = xq.generators();
    let mut stacked = r.zeros(0, g);
    let mut targets = Vec::new();
    for e in maps_out_of(cat, q, l) {
        if x.generators(&e.target) == 0 && !(e.degree == 0) {
            continue;
        }
        stacked = stacked.vstack(&x.eval(&e)?);
        targets.push(x.value(&e.target).clone());
    }
    let tgt = targets.iter().fold(PresentedModule::zero(r.clone()), |acc, m| acc.direct_sum(m));
    let k_inclusion = ModuleMap { source: xq.clone(), target: tgt, matrix: stacked }.kernel();
    let k = k_inclusion.module();
    let mut rel = xq.relations().clone();
    for e in maps_into(cat, q, l) {
        if x.generators(&e.source) == 0 {
            continue;
        }
        rel = rel.hstack(&x.eval(&e)?);
    }
    let c = PresentedModule::new(r.clone(), g, rel)?;
    Ok(CornerValues { vertex: *q, k, k_inclusion, c })
}

pub fn corner_functors<R: Ring>(x: &Representation<R>, q: &Vertex) -> Result<CornerValues<R>> {
    radical_filtration(x, q, 1)
}

/// Middle homology of `X(τq) -> ⊕ X(p_i) -> X(q)` as a subquotient of
/// `⊕ X(p_i)`.
pub fn mesh_homology_subquotient<R: Ring>(x: &Representation<R>, q: &Vertex) -> Result<(Subquotient<R>, Vec<Vertex>)> {
    let cat = x.category();
    check_interior(cat, q)?;
    let quiver = cat.quiver();
    let mesh = quiver.mesh_at(q)?;
    let r = x.ring();
    let mids: Vec<Vertex> = mesh.incoming.iter().map(|a| quiver.source(a)).collect();
    let middle = mids.iter().fold(PresentedModule::zero(r.clone()), |acc, v| acc.direct_sum(x.value(v)));
    let beta = r.hcat(x.generators(q), &mesh.incoming.iter().map(|a| x.arrow_map(a)).collect::<Vec<_>>());
    let alpha = r.vcat(x.generators(&mesh.start), &mesh.paired.iter().map(|a| x.arrow_map(a)).collect::<Vec<_>>());
    let ker = ModuleMap { source: middle, target: x.value(q).clone(), matrix: beta }.kernel();
    Ok((Subquotient::new(r.clone(), ker.sub, ker.rel.hstack(&alpha)), mids))
}

pub fn mesh_homology<R: Ring>(x: &Representation<R>, q: &Vertex) -> Result<PresentedModule<R>> {
    Ok(mesh_homology_subquotient(x, q)?.0.module())
}

/// `mH_q(φ)`.
pub fn mesh_homology_map<R: Ring>(phi: &RepMorphism<R>, q: &Vertex) -> Result<ModuleMap<R>> {
    let (sx, mids) = mesh_homology_subquotient(&phi.source, q)?;
    let (sy, _) = mesh_homology_subquotient(&phi.target, q)?;
    let r = phi.source.ring();
    let big = r.block_diag(&mids.iter().map(|v| phi.component(v)).collect::<Vec<_>>());
    induced_map_on_subquotient(r, &sx, &sy, &big)
}

/// `H^i_[q⟩(X)` (left) or `H_i^⟨q](X)` (right) for `i = 0..=max_degree`.
pub fn derived_homology<R: Ring>(
    x: &Representation<R>,
    q: &Vertex,
    side: Side,
    max_degree: usize,
) -> Result<Vec<PresentedModule<R>>> {
    check_interior(x.category(), q)?;
    let res = resolve_stalk(x.category(), q, side, Head::Minimal, max_degree + 1)?;
    derived_homology_with(x, &res, max_degree)
}

pub fn derived_homology_with<R: Ring>(
    x: &Representation<R>,
    res: &StalkResolution,
    max_degree: usize,
) -> Result<Vec<PresentedModule<R>>> {
    let cx = DerivedComplex::build(x, res)?;
    Ok((0..=max_degree.min(cx.top().saturating_sub(1))).map(|i| cx.subquotient(i).module()).collect())
}

/// `H_i(φ)` or `H^i(φ)` for `i = 0..=max_degree`, through one shared
/// resolution.
pub fn derived_homology_maps<R: Ring>(
    phi: &RepMorphism<R>,
    q: &Vertex,
    side: Side,
    max_degree: usize,
) -> Result<Vec<ModuleMap<R>>> {
    check_interior(phi.source.category(), q)?;
    let res = resolve_stalk(phi.source.category(), q, side, Head::Minimal, max_degree + 1)?;
    let cx = DerivedComplex::build(&phi.source, &res)?;
    let cy = DerivedComplex::build(&phi.target, &res)?;
    let r = phi.source.ring();
    (0..=max_degree)
        .map(|i| {
            let big = cx.chain_map(&cy, phi, i);
            induced_map_on_subquotient(r, &cx.subquotient(i), &cy.subquotient(i), &big)
        })
        .collect()
}

/// Vertices at which the mesh homology of a representation with the given
/// support can be nonzero.
pub fn mesh_relevant_vertices(cat: &MeshCategory, support: &[Vertex]) -> BTreeSet<Vertex> {
    let quiver = cat.quiver();
    if quiver.is_double() {
        return quiver.vertices().iter().copied().collect();
    }
    let mut out = BTreeSet::new();
    for v in support {
        out.insert(*v);
        out.insert(quiver.tau_inverse(v));
        for a in quiver.arrows_out(v) {
            out.insert(quiver.target(&a));
        }
    }
    out
}

/// Vertices at which derived (co)homology up to `max_degree` can be nonzero.
pub fn derived_relevant_vertices(cat: &MeshCategory, support: &[Vertex], max_degree: usize) -> Result<BTreeSet<Vertex>> {
    let quiver = cat.quiver();
    if quiver.is_double() {
        return Ok(quiver.vertices().iter().copied().collect());
    }
    let mut out = BTreeSet::new();
    for side in [Side::Left, Side::Right] {
        for row in 1..=cat.n() {
            let res = resolve_stalk(cat, &Vertex::new(row, 0), side, Head::Minimal, max_degree + 1)?;
            for r in res.summand_vertices() {
                for v in support.iter().filter(|v| v.row == r.row) {
                    out.insert(Vertex::new(row, v.index - r.index));
                }
            }
        }
    }
    Ok(out)
}

fn require_interior(cat: &MeshCategory, verts: &BTreeSet<Vertex>) -> Result<()> {
    let quiver = cat.quiver();
    match verts.iter().find(|v| !quiver.is_interior(v)) {
        Some(v) => Err(Error::WindowTooSmall(alloc::format!(
            "homology at {} is needed but it is not an interior vertex",
            quiver.vertex_name(v)
        ))),
        None => Ok(()),
    }
}

/// A yes/no answer, or a computation whose reading as a theorem needs
/// hypotheses the ring does not meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
    NotTheoremBacked,
}

impl Verdict {
    fn from_bool(b: bool) -> Self {
        if b {
            Verdict::Yes
        } else {
            Verdict::No
        }
    }
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub is_exact: Verdict,
    pub is_projective: Verdict,
    pub is_injective: Verdict,
    /// Vertices with nonzero mesh homology.
    pub mesh_homology_nonzero: Vec<Vertex>,
    /// Vertices with nonzero `H_1^⟨q]`.
    pub homology_nonzero: Vec<Vertex>,
    /// Vertices with nonzero `H^1_[q⟩`.
    pub cohomology_nonzero: Vec<Vertex>,
    pub non_projective_corners: Vec<Vertex>,
    pub non_injective_corners: Vec<Vertex>,
}

/// Decides exactness, projectivity and injectivity.
///
/// Exactness is vanishing mesh homology, which is a theorem only over
/// hereditary rings. Projectivity is `H_1 = 0` everywhere with all `C_q`
/// projective; injectivity is `H^1 = 0` everywhere with all `K_q` injective.
pub fn classify_object<R: Ring>(x: &Representation<R>) -> Result<Classification> {
    let cat = x.category();
    let support = x.support();
    let mesh_verts = mesh_relevant_vertices(cat, &support);
    let derived_verts = derived_relevant_vertices(cat, &support, 1)?;
    require_interior(cat, &mesh_verts)?;
    require_interior(cat, &derived_verts)?;
    let mut out = Classification {
        is_exact: Verdict::No,
        is_projective: Verdict::No,
        is_injective: Verdict::No,
        mesh_homology_nonzero: Vec::new(),
        homology_nonzero: Vec::new(),
        cohomology_nonzero: Vec::new(),
        non_projective_corners: Vec::new(),
        non_injective_corners: Vec::new(),
    };
    for q in &mesh_verts {
        if !mesh_homology(x, q)?.is_zero() {
            out.mesh_homology_nonzero.push(*q);
        }
    }
    for q in &derived_verts {
        if !derived_homology(x, q, Side::Right, 1)?[1].is_zero() {
            out.homology_nonzero.push(*q);
        }
        if !derived_homology(x, q, Side::Left, 1)?[1].is_zero() {
            out.cohomology_nonzero.push(*q);
        }
    }
    for q in &support {
        let c = corner_functors(x, q)?;
        if !c.c.is_projective() {
            out.non_projective_corners.push(*q);
        }
        if !c.k.is_injective() {
            out.non_injective_corners.push(*q);
        }
    }
    out.is_exact = if x.ring().base().is_hereditary() {
        Verdict::from_bool(out.mesh_homology_nonzero.is_empty())
    } else {
        Verdict::NotTheoremBacked
    };
    out.is_projective = Verdict::from_bool(out.homology_nonzero.is_empty() && out.non_projective_corners.is_empty());
    out.is_injective = Verdict::from_bool(out.cohomology_nonzero.is_empty() && out.non_injective_corners.is_empty());
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakEquivalenceReport {
    pub is_weak_equivalence: bool,
    /// The verdict from degree one alone.
    pub degree_one_verdict: bool,
    /// Whether both verdicts agree; only meaningful when `r^2 = 0`.
    pub routes_agree: Option<bool>,
    /// `(vertex, degree, H_degree(φ) is an isomorphism)`.
    pub table: Vec<(Vertex, usize, bool)>,
    pub theorem_backed: bool,
}

/// Whether `H_1(φ)` and `H_2(φ)` are isomorphisms at every vertex.
pub fn is_weak_equivalence<R: Ring>(phi: &RepMorphism<R>) -> Result<WeakEquivalenceReport> {
    let cat = phi.source.category();
    let mut support = phi.source.support();
    support.extend(phi.target.support());
    support.sort();
    support.dedup();
    let verts = derived_relevant_vertices(cat, &support, 2)?;
    require_interior(cat, &verts)?;
    let mut table = Vec::new();
    for q in &verts {
        let maps = derived_homology_maps(phi, q, Side::Right, 2)?;
        for (i, m) in maps.iter().enumerate().skip(1) {
            table.push((*q, i, m.is_isomorphism()));
        }
    }
    let all = table.iter().all(|t| t.2);
    let one = table.iter().filter(|t| t.1 == 1).all(|t| t.2);
    Ok(WeakEquivalenceReport {
        is_weak_equivalence: all,
        degree_one_verdict: one,
        routes_agree: (cat.nilpotency_index() == 2).then_some(all == one),
        table,
        theorem_backed: phi.source.ring().base().is_hereditary(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroTest {
    pub direct: bool,
    pub via_kernels: bool,
    pub via_cokernels: bool,
    /// A vertex with nonzero `K_q`, rendered.
    pub witness: Option<(Vertex, String)>,
}

impl ZeroTest {
    pub fn agree(&self) -> bool {
        self.direct == self.via_kernels && self.direct == self.via_cokernels
    }
}

/// Vanishing of `X` decided three ways: directly, by all `K_q = 0` and by
/// all `C_q = 0`.
pub fn zero_test<R: Ring>(x: &Representation<R>) -> Result<ZeroTest> {
    let quiver = x.category().quiver();
    let verts: Vec<Vertex> = if quiver.is_double() { quiver.vertices().to_vec() } else { quiver.interior_vertices() };
    let direct = verts.iter().all(|v| x.value(v).is_zero());
    let mut via_kernels = true;
    let mut via_cokernels = true;
    let mut witness = None;
    for q in &verts {
        let c = corner_functors(x, q)?;
        if !c.k.is_zero() {
            via_kernels = false;
            if witness.is_none() {
                witness = Some((*q, c.k.describe()));
            }
        }
        if !c.c.is_zero() {
            via_cokernels = false;
        }
    }
    Ok(ZeroTest { direct, via_kernels, via_cokernels, witness })
}

/// Pairs `(p, q)` with `mH_q(Q(p, -)) != 0`, computed from hom spaces for
/// every window vertex `p` and interior vertex `q`.
pub fn normality_failures<R: Ring>(cat: &MeshCategory, ring: &R) -> Result<Vec<(Vertex, Vertex)>> {
    let quiver = cat.quiver();
    let mut out = Vec::new();
    for p in quiver.vertices() {
        for q in quiver.interior_vertices() {
            let mesh = quiver.mesh_at(&q)?;
            let mids: Vec<Vertex> = mesh.incoming.iter().map(|a| quiver.source(a)).collect();
            let mid_rank: usize = mids.iter().map(|v| cat.rank(p, v)).sum();
            if mid_rank == 0 {
                continue;
            }
            let beta = ring.hcat(
                cat.rank(p, &q),
                &mesh.incoming.iter().map(|a| cat.arrow_left_mult(ring, a, p)).collect::<Vec<_>>(),
            );
            let alpha = ring.vcat(
                cat.rank(p, &mesh.start),
                &mesh.paired.iter().map(|a| cat.arrow_left_mult(ring, a, p)).collect::<Vec<_>>(),
            );
            let ker = kernel(ring, &beta);
            let sq = Subquotient::new(ring.clone(), ker, alpha);
            if !sq.module().is_zero() {
                out.push((*p, q));
            }
        }
    }
    Ok(out)
}

/// Everything computed at one vertex.
#[derive(Clone, Debug)]
pub struct VertexHomology<R: Ring> {
    pub vertex: Vertex,
    pub mesh: PresentedModule<R>,
    pub homology: Vec<PresentedModule<R>>,
    pub cohomology: Vec<PresentedModule<R>>,
    pub corners: CornerValues<R>,
}

pub fn vertex_homology<R: Ring>(x: &Representation<R>, q: &Vertex, max_degree: usize) -> Result<VertexHomology<R>> {
    Ok(VertexHomology {
        vertex: *q,
        mesh: mesh_homology(x, q)?,
        homology: derived_homology(x, q, Side::Right, max_degree)?,
        cohomology: derived_homology(x, q, Side::Left, max_degree)?,
        corners: corner_functors(x, q)?,
    })
}
