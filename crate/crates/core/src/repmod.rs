//! Representations of a mesh category: finitely supported functors to
//! finitely presented modules.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixOps};
use crate::meshcat::{BasisElement, MeshCategory, Morphism};
use crate::module::{induced_map_on_subquotient, ModuleMap, PresentedModule, Subquotient};
use crate::quiver::{Arrow, Vertex};
use crate::ring::Ring;

/// A representation `X`, zero outside its listed values. Arrow matrices
/// act on generators.
#[derive(Clone, Debug)]
pub struct Representation<R: Ring> {
    category: Arc<MeshCategory>,
    ring: R,
    values: BTreeMap<Vertex, PresentedModule<R>>,
    arrows: BTreeMap<Arrow, Matrix<R::Elem>>,
    zero: PresentedModule<R>,
}

/// Outcome of [`Representation::validate`].
#[derive(Clone, Debug)]
pub struct Validation<E> {
    /// Mesh relations that fail, with the offending map `X(τq) -> X(q)`.
    pub mesh_residuals: Vec<(Vertex, Matrix<E>)>,
    /// Arrows whose matrices do not respect the relations of their source.
    pub ill_defined: Vec<Arrow>,
}

impl<E> Validation<E> {
    pub fn is_valid(&self) -> bool {
        self.mesh_residuals.is_empty() && self.ill_defined.is_empty()
    }
}

impl<R: Ring> Representation<R> {
    /// Builds a representation, checking vertices, arrows and matrix
    /// shapes. Mesh relations are checked by [`Self::validate`].
    pub fn new(
        category: Arc<MeshCategory>,
        ring: R,
        values: BTreeMap<Vertex, PresentedModule<R>>,
        arrows: BTreeMap<Arrow, Matrix<R::Elem>>,
    ) -> Result<Self> {
        let quiver = category.quiver();
        let zero = PresentedModule::zero(ring.clone());
        let values: BTreeMap<_, _> = values.into_iter().filter(|(_, m)| m.generators() > 0).collect();
        for (v, m) in &values {
            if !quiver.is_vertex(v) {
                return Err(Error::UnknownVertex(quiver.vertex_name(v)));
            }
            if !quiver.is_double() && !quiver.is_interior(v) {
                return Err(Error::InvalidRepresentation(alloc::format!(
                    "value at {} lies outside the window interior",
                    quiver.vertex_name(v)
                )));
            }
            if m.ring() != &ring {
                return Err(Error::InvalidRepresentation("value over a different ring".into()));
            }
        }
        let gens = |v: &Vertex| values.get(v).map(|m| m.generators()).unwrap_or(0);
        let mut kept = BTreeMap::new();
        for (a, m) in arrows {
            if !quiver.is_arrow(&a) {
                return Err(Error::UnknownArrow(quiver.arrow_name(&a)));
            }
            let (s, t) = (quiver.source(&a), quiver.target(&a));
            if m.shape() != (gens(&t), gens(&s)) {
                return Err(Error::DimensionMismatch(alloc::format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    quiver.arrow_name(&a),
                    gens(&t),
                    gens(&s),
                    m.rows(),
                    m.cols()
                )));
            }
            if m.rows() > 0 && m.cols() > 0 {
                kept.insert(a, m);
            }
        }
        Ok(Representation { category, ring, values, arrows: kept, zero })
    }

    pub fn zero(category: Arc<MeshCategory>, ring: R) -> Self {
        Self::new(category, ring, BTreeMap::new(), BTreeMap::new()).expect("zero representation")
    }

    pub fn category(&self) -> &Arc<MeshCategory> {
        &self.category
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn value(&self, v: &Vertex) -> &PresentedModule<R> {
        self.values.get(v).unwrap_or(&self.zero)
    }

    pub fn values(&self) -> &BTreeMap<Vertex, PresentedModule<R>> {
        &self.values
    }

    pub fn arrow_maps(&self) -> &BTreeMap<Arrow, Matrix<R::Elem>> {
        &self.arrows
    }

    pub fn generators(&self, v: &Vertex) -> usize {
        self.value(v).generators()
    }

    /// Vertices with a nonzero generator count.
    pub fn support(&self) -> Vec<Vertex> {
        self.values.keys().copied().collect()
    }

    pub fn arrow_map(&self, a: &Arrow) -> Matrix<R::Elem> {
        let quiver = self.category.quiver();
        self.arrows.get(a).cloned().unwrap_or_else(|| {
            self.ring.zeros(self.generators(&quiver.target(a)), self.generators(&quiver.source(a)))
        })
    }

    /// `X(e)` for a basis element, along its canonical path.
    pub fn eval(&self, e: &BasisElement) -> Result<Matrix<R::Elem>> {
        let r = &self.ring;
        if self.generators(&e.source) == 0 || self.generators(&e.target) == 0 {
            return Ok(r.zeros(self.generators(&e.target), self.generators(&e.source)));
        }
        let start = r.identity(self.generators(&e.source));
        let (sign, m) = self.category.eval_path(e, start, |acc, a| r.matmul(&self.arrow_map(a), &acc))?;
        Ok(r.mat_scale(&r.from_i64(sign), &m))
    }

    pub fn eval_morphism(&self, f: &Morphism<R::Elem>) -> Result<Matrix<R::Elem>> {
        let r = &self.ring;
        let mut acc = r.zeros(self.generators(&f.target), self.generators(&f.source));
        for (c, e) in f.coeffs.iter().zip(self.category.hom_basis(&f.source, &f.target)) {
            if !r.is_zero(c) {
                acc = r.mat_add(&acc, &r.mat_scale(c, &self.eval(&e)?));
            }
        }
        Ok(acc)
    }

    /// The map `X(τq) -> X(q)` given by the mesh relation at `q`.
    pub fn mesh_map(&self, q: &Vertex) -> Result<Matrix<R::Elem>> {
        let r = &self.ring;
        let quiver = self.category.quiver();
        let mesh = quiver.mesh_at(q)?;
        let mut acc = r.zeros(self.generators(q), self.generators(&mesh.start));
        for (a, s) in mesh.incoming.iter().zip(&mesh.paired) {
            acc = r.mat_add(&acc, &r.matmul(&self.arrow_map(a), &self.arrow_map(s)));
        }
        Ok(acc)
    }

    pub fn validate(&self) -> Validation<R::Elem> {
        let quiver = self.category.quiver();
        let mut out = Validation { mesh_residuals: Vec::new(), ill_defined: Vec::new() };
        for (a, m) in &self.arrows {
            let src = self.value(&quiver.source(a));
            let img = self.ring.matmul(m, src.relations());
            if !self.value(&quiver.target(a)).vanishes(&img) {
                out.ill_defined.push(*a);
            }
        }
        for q in self.values.keys() {
            if self.generators(&quiver.tau(q)) == 0 {
                continue;
            }
            let m = match self.mesh_map(q) {
                Ok(m) => m,
                Err(_) => continue,
            };
            if !self.value(q).vanishes(&m) {
                out.mesh_residuals.push((*q, m));
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Whether every value is the zero module.
    pub fn is_zero(&self) -> bool {
        self.values.values().all(|m| m.is_zero())
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if !Arc::ptr_eq(&self.category, &other.category) {
            return Err(Error::InvalidRepresentation("direct sum across categories".into()));
        }
        let r = &self.ring;
        let verts: BTreeSet<Vertex> = self.values.keys().chain(other.values.keys()).copied().collect();
        let values = verts.iter().map(|v| (*v, self.value(v).direct_sum(other.value(v)))).collect();
        let arrow_keys: BTreeSet<Arrow> = self.arrows.keys().chain(other.arrows.keys()).copied().collect();
        let arrows = arrow_keys
            .into_iter()
            .map(|a| (a, r.block_diag(&[self.arrow_map(&a), other.arrow_map(&a)])))
            .collect();
        Self::new(self.category.clone(), r.clone(), values, arrows)
    }

    /// An isomorphic representation with simplified presentations.
    pub fn simplified(&self) -> Self {
        let r = &self.ring;
        let quiver = self.category.quiver();
        let simple: BTreeMap<Vertex, _> = self.values.iter().map(|(v, m)| (*v, m.simplify())).collect();
        let values = simple.iter().map(|(v, s)| (*v, s.module.clone())).collect();
        let arrows = self
            .arrows
            .iter()
            .map(|(a, m)| {
                let s = &simple[&quiver.source(a)];
                let t = &simple[&quiver.target(a)];
                (*a, r.matmul(&r.matmul(&t.to_new, m), &s.from_new))
            })
            .collect();
        Self::new(self.category.clone(), r.clone(), values, arrows).expect("same shape")
    }

    pub fn describe_values(&self) -> BTreeMap<String, String> {
        let quiver = self.category.quiver();
        self.values.iter().map(|(v, m)| (quiver.vertex_name(v), m.describe())).collect()
    }
}

fn check_support(cat: &MeshCategory, verts: &[Vertex], what: &str) -> Result<()> {
    let quiver = cat.quiver();
    if quiver.is_double() {
        return Ok(());
    }
    match verts.iter().find(|v| !quiver.is_interior(v)) {
        Some(v) => Err(Error::WindowTooSmall(alloc::format!(
            "{what} needs vertex {} inside the window interior",
            quiver.vertex_name(v)
        ))),
        None => Ok(()),
    }
}

fn arrows_within(cat: &MeshCategory, verts: &[Vertex]) -> Vec<Arrow> {
    let quiver = cat.quiver();
    let set: BTreeSet<Vertex> = verts.iter().copied().collect();
    let mut out: Vec<Arrow> = verts
        .iter()
        .flat_map(|v| quiver.arrows_out(v))
        .filter(|a| set.contains(&quiver.target(a)))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `F_q(M) = Q(q, -) ⊗ M`.
pub fn free_at<R: Ring>(cat: &Arc<MeshCategory>, q: &Vertex, m: &PresentedModule<R>) -> Result<Representation<R>> {
    let r = m.ring();
    let verts = cat.targets_from(q);
    if m.generators() > 0 {
        check_support(cat, &verts, "F_q")?;
    }
    let g = m.generators();
    let mut values = BTreeMap::new();
    for v in &verts {
        let k = cat.rank(q, v);
        let rel = r.kron(&r.identity(k), m.relations());
        values.insert(*v, PresentedModule::new(r.clone(), k * g, rel)?);
    }
    let arrows = arrows_within(cat, &verts)
        .into_iter()
        .map(|a| (a, r.kron(&cat.arrow_left_mult(r, &a, q), &r.identity(g))))
        .collect();
    Representation::new(cat.clone(), r.clone(), values, arrows)
}

/// `G_q(M) = Hom(Q(-, q), M)`.
pub fn cofree_at<R: Ring>(cat: &Arc<MeshCategory>, q: &Vertex, m: &PresentedModule<R>) -> Result<Representation<R>> {
    let r = m.ring();
    let verts = cat.sources_to(q);
    if m.generators() > 0 {
        check_support(cat, &verts, "G_q")?;
    }
    let g = m.generators();
    let mut values = BTreeMap::new();
    for v in &verts {
        let k = cat.rank(v, q);
        let rel = r.kron(&r.identity(k), m.relations());
        values.insert(*v, PresentedModule::new(r.clone(), k * g, rel)?);
    }
    let arrows = arrows_within(cat, &verts)
        .into_iter()
        .map(|a| (a, r.kron(&cat.arrow_right_mult(r, &a, q).transpose(), &r.identity(g))))
        .collect();
    Representation::new(cat.clone(), r.clone(), values, arrows)
}

/// `S_q(M)`: `M` at `q` and zero elsewhere.
pub fn stalk_rep<R: Ring>(cat: &Arc<MeshCategory>, q: &Vertex, m: &PresentedModule<R>) -> Result<Representation<R>> {
    check_support(cat, &[*q], "S_q")?;
    let mut values = BTreeMap::new();
    values.insert(*q, m.clone());
    Representation::new(cat.clone(), m.ring().clone(), values, BTreeMap::new())
}

/// `Q(p, -)` over the base ring.
pub fn representable_rep<R: Ring>(cat: &Arc<MeshCategory>, ring: &R, p: &Vertex) -> Result<Representation<R>> {
    free_at(cat, p, &PresentedModule::free(ring.clone(), 1))
}

/// A natural transformation given by one matrix per vertex (on generators).
#[derive(Clone, Debug)]
pub struct RepMorphism<R: Ring> {
    pub source: Representation<R>,
    pub target: Representation<R>,
    components: BTreeMap<Vertex, Matrix<R::Elem>>,
}

impl<R: Ring> RepMorphism<R> {
    /// Checks shapes, well-definedness at each vertex and naturality along
    /// every arrow between supported vertices.
    pub fn new(
        source: Representation<R>,
        target: Representation<R>,
        components: BTreeMap<Vertex, Matrix<R::Elem>>,
    ) -> Result<Self> {
        if !Arc::ptr_eq(source.category(), target.category()) {
            return Err(Error::InvalidMorphism("representations live on different categories".into()));
        }
        let r = source.ring().clone();
        let cat = Arc::clone(source.category());
        let quiver = cat.quiver();
        for (v, m) in &components {
            if m.shape() != (target.generators(v), source.generators(v)) {
                return Err(Error::InvalidMorphism(alloc::format!(
                    "component at {} has the wrong shape",
                    quiver.vertex_name(v)
                )));
            }
        }
        let phi = RepMorphism { source, target, components };
        let verts: BTreeSet<Vertex> =
            phi.source.values.keys().chain(phi.target.values.keys()).copied().collect();
        for v in &verts {
            let m = phi.component(v);
            if m.cols() > 0 && !phi.target.value(v).vanishes(&r.matmul(&m, phi.source.value(v).relations())) {
                return Err(Error::InvalidMorphism(alloc::format!(
                    "component at {} is not well defined",
                    quiver.vertex_name(v)
                )));
            }
            for a in quiver.arrows_out(v) {
                let t = quiver.target(&a);
                let lhs = r.matmul(&phi.component(&t), &phi.source.arrow_map(&a));
                let rhs = r.matmul(&phi.target.arrow_map(&a), &phi.component(v));
                if !phi.target.value(&t).vanishes(&r.mat_sub(&lhs, &rhs)) {
                    return Err(Error::InvalidMorphism(alloc::format!(
                        "not natural along {}",
                        quiver.arrow_name(&a)
                    )));
                }
            }
        }
        Ok(phi)
    }

    pub fn identity(x: &Representation<R>) -> Self {
        let r = x.ring();
        let components = x.values.iter().map(|(v, m)| (*v, r.identity(m.generators()))).collect();
        RepMorphism::new(x.clone(), x.clone(), components).expect("identity is natural")
    }

    pub fn zero(x: &Representation<R>, y: &Representation<R>) -> Result<Self> {
        RepMorphism::new(x.clone(), y.clone(), BTreeMap::new())
    }

    pub fn component(&self, v: &Vertex) -> Matrix<R::Elem> {
        self.components
            .get(v)
            .cloned()
            .unwrap_or_else(|| self.source.ring().zeros(self.target.generators(v), self.source.generators(v)))
    }

    pub fn components(&self) -> &BTreeMap<Vertex, Matrix<R::Elem>> {
        &self.components
    }

    pub fn module_map(&self, v: &Vertex) -> ModuleMap<R> {
        ModuleMap::new(self.source.value(v).clone(), self.target.value(v).clone(), self.component(v))
            .expect("checked on construction")
    }
}

/// `Ker φ` with its inclusion into the source.
pub fn kernel_of_morphism<R: Ring>(phi: &RepMorphism<R>) -> Result<(Representation<R>, RepMorphism<R>)> {
    let x = &phi.source;
    let r = x.ring();
    let quiver = x.category().quiver();
    let subs: BTreeMap<Vertex, Subquotient<R>> =
        x.values.keys().map(|v| (*v, phi.module_map(v).kernel())).collect();
    let values = subs.iter().map(|(v, s)| (*v, s.module())).collect();
    let mut arrows = BTreeMap::new();
    for (a, m) in &x.arrows {
        let (s, t) = (quiver.source(a), quiver.target(a));
        let induced = induced_map_on_subquotient(r, &subs[&s], &subs[&t], m)?;
        arrows.insert(*a, induced.matrix);
    }
    let k = Representation::new(x.category().clone(), r.clone(), values, arrows)?;
    let incl = subs.iter().map(|(v, s)| (*v, s.sub.clone())).collect();
    let inclusion = RepMorphism::new(k.clone(), x.clone(), incl)?;
    Ok((k, inclusion))
}

/// `Coker φ` with the projection from the target.
pub fn cokernel_of_morphism<R: Ring>(phi: &RepMorphism<R>) -> Result<(Representation<R>, RepMorphism<R>)> {
    let y = &phi.target;
    let r = y.ring();
    let values = y
        .values
        .iter()
        .map(|(v, m)| (*v, PresentedModule::new(r.clone(), m.generators(), m.relations().hstack(&phi.component(v))).expect("shape")))
        .collect();
    let c = Representation::new(y.category().clone(), r.clone(), values, y.arrows.clone())?;
    let proj = y.values.iter().map(|(v, m)| (*v, r.identity(m.generators()))).collect();
    let projection = RepMorphism::new(y.clone(), c.clone(), proj)?;
    Ok((c, projection))
}

/// A basis of `Hom(X, Y)` for representations with free values: the
/// solutions of the naturality equations along every arrow.
pub fn morphism_space<R: Ring>(x: &Representation<R>, y: &Representation<R>) -> Result<Vec<RepMorphism<R>>> {
    let r = x.ring();
    if x.values.values().chain(y.values.values()).any(|m| !r.mat_is_zero(m.relations())) {
        return Err(Error::InvalidRepresentation("morphism spaces need free values".into()));
    }
    let quiver = x.category().quiver();
    let mut offset = BTreeMap::new();
    let mut unknowns = 0;
    for v in x.values.keys().filter(|v| y.values.contains_key(v)) {
        offset.insert(*v, unknowns);
        unknowns += x.generators(v) * y.generators(v);
    }
    let idx = |v: &Vertex, i: usize, j: usize| offset[v] + i * x.generators(v) + j;
    let mut arrows: BTreeSet<Arrow> = BTreeSet::new();
    for v in x.values.keys().chain(y.values.keys()) {
        arrows.extend(quiver.arrows_out(v));
    }
    let mut rows: Vec<Vec<R::Elem>> = Vec::new();
    for a in &arrows {
        let (s, t) = (quiver.source(a), quiver.target(a));
        let (xa, ya) = (x.arrow_map(a), y.arrow_map(a));
        for i in 0..y.generators(&t) {
            for j in 0..x.generators(&s) {
                let mut row = alloc::vec![r.zero(); unknowns];
                if offset.contains_key(&s) {
                    for k in 0..y.generators(&s) {
                        let c = idx(&s, k, j);
                        row[c] = r.add(&row[c], &ya[(i, k)]);
                    }
                }
                if offset.contains_key(&t) {
                    for l in 0..x.generators(&t) {
                        let c = idx(&t, i, l);
                        row[c] = r.sub(&row[c], &xa[(l, j)]);
                    }
                }
                rows.push(row);
            }
        }
    }
    let eqs = Matrix::from_rows(rows.len(), unknowns, rows)?;
    let sol = crate::linalg::kernel(r, &eqs);
    sol.columns()
        .into_iter()
        .map(|c| {
            let comps = offset
                .keys()
                .map(|v| {
                    let (gy, gx) = (y.generators(v), x.generators(v));
                    let entries = (0..gy * gx).map(|e| c[offset[v] + e].clone()).collect::<Vec<_>>();
                    (*v, Matrix::from_rows(gy, gx, entries.chunks(gx.max(1)).map(|s| s.to_vec()).collect()).expect("shape"))
                })
                .collect();
            RepMorphism::new(x.clone(), y.clone(), comps)
        })
        .collect()
}

/// A bounded complex of free modules, `ranks[k]` in degree `lowest + k`,
/// with `boundaries[k]` the differential from degree `lowest + k + 1` to
/// `lowest + k`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainComplex<E> {
    pub lowest: i64,
    pub ranks: Vec<usize>,
    pub boundaries: Vec<Matrix<E>>,
}

impl<E: Clone> ChainComplex<E> {
    pub fn highest(&self) -> i64 {
        self.lowest + self.ranks.len() as i64 - 1
    }

    pub fn rank(&self, degree: i64) -> usize {
        let k = degree - self.lowest;
        if k < 0 {
            return 0;
        }
        self.ranks.get(k as usize).copied().unwrap_or(0)
    }
}

/// Chain degree `c` sits at the vertex `(1, (c+1)/2)` for odd `c` and
/// `(2, (c+2)/2)` for even `c`, so the zigzag line of `ZA_2` reads
/// `... -> X_c -> X_{c-1} -> ...` along its arrows. Arrows `a_{1,i}` leave
/// odd degrees and `a*_{1,i}` leave even ones.
pub fn bridge_vertex(degree: i64) -> Vertex {
    if degree.rem_euclid(2) == 1 {
        Vertex::new(1, (degree + 1).div_euclid(2))
    } else {
        Vertex::new(2, (degree + 2).div_euclid(2))
    }
}

pub fn bridge_degree(v: &Vertex) -> i64 {
    2 * v.index - v.row as i64
}

/// The arrow carrying the differential out of degree `c`.
pub fn bridge_arrow(degree: i64) -> Arrow {
    let v = bridge_vertex(degree);
    if v.row == 1 {
        Arrow::plain(1, v.index)
    } else {
        Arrow::star(1, v.index)
    }
}

/// Vertex whose mesh homology is the chain homology in degree `c`.
pub fn bridge_homology_vertex(degree: i64) -> Vertex {
    bridge_vertex(degree - 1)
}

/// A window of `ZA_2` in which degrees `lowest - 2 ..= highest + 2` are
/// interior.
pub fn bridge_window(lowest: i64, highest: i64) -> (i64, i64) {
    let lo = bridge_vertex(lowest - 2).index.min(bridge_vertex(lowest - 3).index);
    let hi = bridge_vertex(highest + 2).index.max(bridge_vertex(highest + 3).index);
    (lo, hi + 1)
}

fn check_bridge_category(cat: &MeshCategory) -> Result<()> {
    if cat.is_double() || cat.n() != 2 {
        return Err(Error::InvalidQuiver("the chain-complex bridge needs the repetitive quiver of A_2".into()));
    }
    Ok(())
}

pub fn complex_to_representation<R: Ring>(
    cat: &Arc<MeshCategory>,
    ring: &R,
    complex: &ChainComplex<R::Elem>,
) -> Result<Representation<R>> {
    check_bridge_category(cat)?;
    if complex.boundaries.len() + 1 != complex.ranks.len().max(1) {
        return Err(Error::DimensionMismatch("a complex needs one boundary between consecutive degrees".into()));
    }
    let quiver = cat.quiver();
    let mut values = BTreeMap::new();
    let mut arrows = BTreeMap::new();
    for (k, rank) in complex.ranks.iter().enumerate() {
        let c = complex.lowest + k as i64;
        if *rank == 0 {
            continue;
        }
        let v = bridge_vertex(c);
        if !quiver.is_interior(&v) {
            return Err(Error::WindowTooSmall(alloc::format!("degree {c} falls outside the window interior")));
        }
        values.insert(v, PresentedModule::free(ring.clone(), *rank));
    }
    for (k, d) in complex.boundaries.iter().enumerate() {
        let c = complex.lowest + k as i64 + 1;
        if d.shape() != (complex.rank(c - 1), complex.rank(c)) {
            return Err(Error::DimensionMismatch(alloc::format!("boundary out of degree {c}")));
        }
        arrows.insert(bridge_arrow(c), d.clone());
    }
    Representation::new(cat.clone(), ring.clone(), values, arrows)
}

pub fn representation_to_complex<R: Ring>(x: &Representation<R>) -> Result<ChainComplex<R::Elem>> {
    check_bridge_category(x.category())?;
    let r = x.ring();
    if x.values.values().any(|m| !r.mat_is_zero(m.relations())) {
        return Err(Error::InvalidRepresentation("the bridge needs free values".into()));
    }
    let degrees: Vec<i64> = x.support().iter().map(bridge_degree).collect();
    let (Some(lo), Some(hi)) = (degrees.iter().min().copied(), degrees.iter().max().copied()) else {
        return Ok(ChainComplex { lowest: 0, ranks: alloc::vec![0], boundaries: Vec::new() });
    };
    let ranks: Vec<usize> = (lo..=hi).map(|c| x.generators(&bridge_vertex(c))).collect();
    let boundaries = (lo + 1..=hi).map(|c| x.arrow_map(&bridge_arrow(c))).collect();
    Ok(ChainComplex { lowest: lo, ranks, boundaries })
}
