//! Finitely presented modules, maps between them and subquotients.

use alloc::string::String;
use alloc::vec::Vec;

use once_cell::race::OnceBox;

use crate::error::{Error, Result};
use crate::linalg::{diagonalize, in_span, kernel, solve_matrix};
use crate::matrix::{Matrix, MatrixOps};
use crate::ring::{BaseRing, Ring};

/// `R^free_rank ⊕ ⊕ R/(d)` with the torsion factors canonical, non-unit,
/// nonzero and each dividing the next.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm<E> {
    pub free_rank: usize,
    pub torsion: Vec<E>,
}

impl<E> NormalForm<E> {
    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

pub fn render_normal_form<R: Ring>(ring: &R, nf: &NormalForm<R::Elem>) -> String {
    if nf.is_zero() {
        return "0".into();
    }
    let mut parts: Vec<String> = nf.torsion.iter().map(|d| ring.render_cyclic(d)).collect();
    match nf.free_rank {
        0 => {}
        1 => parts.push(alloc::format!("{}", ring.base())),
        r => parts.push(alloc::format!("{}^{r}", ring.base())),
    }
    parts.join(" ⊕ ")
}

/// The cokernel of `relations: R^r -> R^generators`.
pub struct PresentedModule<R: Ring> {
    ring: R,
    generators: usize,
    relations: Matrix<R::Elem>,
    normal_form: OnceBox<NormalForm<R::Elem>>,
}

impl<R: Ring> Clone for PresentedModule<R> {
    fn clone(&self) -> Self {
        let out = PresentedModule::new(self.ring.clone(), self.generators, self.relations.clone())
            .expect("shape already checked");
        if let Some(nf) = self.normal_form.get() {
            let _ = out.normal_form.set(alloc::boxed::Box::new(nf.clone()));
        }
        out
    }
}

impl<R: Ring> core::fmt::Debug for PresentedModule<R> {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.debug_struct("PresentedModule")
            .field("generators", &self.generators)
            .field("relations", &self.relations)
            .finish()
    }
}

impl<R: Ring> PresentedModule<R> {
    pub fn new(ring: R, generators: usize, relations: Matrix<R::Elem>) -> Result<Self> {
        if relations.rows() != generators {
            return Err(Error::DimensionMismatch(alloc::format!(
                "relation matrix has {} rows for {} generators",
                relations.rows(),
                generators
            )));
        }
        Ok(PresentedModule { ring, generators, relations, normal_form: OnceBox::new() })
    }

    pub fn free(ring: R, rank: usize) -> Self {
        let rel = ring.zeros(rank, 0);
        PresentedModule::new(ring, rank, rel).expect("free module")
    }

    pub fn zero(ring: R) -> Self {
        Self::free(ring, 0)
    }

    pub fn cyclic(ring: R, d: R::Elem) -> Self {
        let rel = Matrix::from_rows(1, 1, alloc::vec![alloc::vec![d]]).expect("1x1");
        PresentedModule::new(ring, 1, rel).expect("cyclic module")
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &Matrix<R::Elem> {
        &self.relations
    }

    pub fn normal_form(&self) -> &NormalForm<R::Elem> {
        self.normal_form.get_or_init(|| {
            let r = &self.ring;
            let diag = diagonalize(r, &self.relations).diagonal();
            let mut torsion = Vec::new();
            let mut killed = 0;
            for d in diag {
                if r.is_zero(&d) {
                    continue;
                }
                killed += 1;
                if !r.is_unit(&d) {
                    torsion.push(d);
                }
            }
            alloc::boxed::Box::new(NormalForm { free_rank: self.generators - killed, torsion })
        })
    }

    pub fn is_zero(&self) -> bool {
        self.normal_form().is_zero()
    }

    pub fn describe(&self) -> String {
        render_normal_form(&self.ring, self.normal_form())
    }

    /// Whether the vectors in the columns of `v` are zero in the module.
    pub fn vanishes(&self, v: &Matrix<R::Elem>) -> bool {
        in_span(&self.ring, &self.relations, v)
    }

    /// An isomorphic presentation with no invertible relations and diagonal
    /// relation matrix, plus coordinate changes in both directions.
    pub fn simplify(&self) -> Simplified<R> {
        let r = &self.ring;
        let d = diagonalize(r, &self.relations);
        let diag = d.diagonal();
        let keep: Vec<usize> = (0..self.generators)
            .filter(|&i| match diag.get(i) {
                Some(x) => !r.is_unit(x),
                None => true,
            })
            .collect();
        let nonzero: Vec<R::Elem> = keep
            .iter()
            .filter_map(|&i| diag.get(i).filter(|x| !r.is_zero(x)).cloned())
            .collect();
        let mut rel = r.zeros(keep.len(), nonzero.len());
        // Nonzero kept factors come first in `keep` because zero ones sit at the end.
        for (j, x) in nonzero.iter().enumerate() {
            rel[(j, j)] = x.clone();
        }
        let module = PresentedModule::new(r.clone(), keep.len(), rel).expect("shape");
        let to_new = d.u.select_rows(&keep);
        let from_new = d.u_inv.select_cols(&keep);
        Simplified { module, to_new, from_new }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let r = &self.ring;
        PresentedModule::new(
            r.clone(),
            self.generators + other.generators,
            r.block_diag(&[self.relations.clone(), other.relations.clone()]),
        )
        .expect("shape")
    }

    pub fn is_projective(&self) -> bool {
        module_is_projective(self)
    }

    pub fn is_injective(&self) -> bool {
        module_is_injective(self)
    }

    /// Whether two modules are abstractly isomorphic.
    pub fn isomorphic(&self, other: &Self) -> bool {
        self.normal_form() == other.normal_form()
    }
}

/// Result of [`PresentedModule::simplify`]. `to_new` maps old generator
/// coordinates to new ones and `from_new` goes back.
#[derive(Clone, Debug)]
pub struct Simplified<R: Ring> {
    pub module: PresentedModule<R>,
    pub to_new: Matrix<R::Elem>,
    pub from_new: Matrix<R::Elem>,
}

/// A homomorphism given on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap<R: Ring> {
    pub source: PresentedModule<R>,
    pub target: PresentedModule<R>,
    pub matrix: Matrix<R::Elem>,
}

impl<R: Ring> ModuleMap<R> {
    pub fn new(source: PresentedModule<R>, target: PresentedModule<R>, matrix: Matrix<R::Elem>) -> Result<Self> {
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(Error::DimensionMismatch("map matrix shape".into()));
        }
        let image = target.ring().matmul(&matrix, source.relations());
        if !target.vanishes(&image) {
            return Err(Error::NotWellDefined("relations of the source do not map to zero".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// The kernel as a subquotient of the source generators.
    pub fn kernel(&self) -> Subquotient<R> {
        let r = self.source.ring();
        let big = self.matrix.hstack(self.target.relations());
        let k = kernel(r, &big);
        let sub = k.select_rows(&(0..self.source.generators()).collect::<Vec<_>>());
        Subquotient::new(r.clone(), sub, self.source.relations().clone())
    }

    pub fn cokernel(&self) -> PresentedModule<R> {
        let rel = self.target.relations().hstack(&self.matrix);
        PresentedModule::new(self.target.ring().clone(), self.target.generators(), rel).expect("shape")
    }

    pub fn is_isomorphism(&self) -> bool {
        is_isomorphism(self)
    }

    pub fn is_zero(&self) -> bool {
        self.target.vanishes(&self.matrix)
    }
}

/// `span(sub) / span(rel)` inside a free module with `rel ⊆ span(sub)`.
#[derive(Clone, Debug)]
pub struct Subquotient<R: Ring> {
    ring: R,
    pub sub: Matrix<R::Elem>,
    pub rel: Matrix<R::Elem>,
}

impl<R: Ring> Subquotient<R> {
    pub fn new(ring: R, sub: Matrix<R::Elem>, rel: Matrix<R::Elem>) -> Self {
        assert_eq!(sub.rows(), rel.rows(), "subquotient ambient mismatch");
        Subquotient { ring, sub, rel }
    }

    pub fn ambient(&self) -> usize {
        self.sub.rows()
    }

    /// A presentation with one generator per column of `sub`.
    pub fn module(&self) -> PresentedModule<R> {
        let r = &self.ring;
        let big = self.sub.hstack(&self.rel);
        let k = kernel(r, &big);
        let z = k.select_rows(&(0..self.sub.cols()).collect::<Vec<_>>());
        PresentedModule::new(r.clone(), self.sub.cols(), z).expect("shape")
    }
}

/// The map between subquotients induced by `big` on the ambient free
/// modules, in terms of the generators of [`Subquotient::module`].
pub fn induced_map_on_subquotient<R: Ring>(
    ring: &R,
    source: &Subquotient<R>,
    target: &Subquotient<R>,
    big: &Matrix<R::Elem>,
) -> Result<ModuleMap<R>> {
    if big.shape() != (target.ambient(), source.ambient()) {
        return Err(Error::DimensionMismatch("induced map shape".into()));
    }
    let t = target.sub.hstack(&target.rel);
    let images = ring.matmul(big, &source.sub);
    let sol = solve_matrix(ring, &t, &images)
        .map_err(|_| Error::NotWellDefined("image leaves the target subquotient".into()))?;
    if !in_span(ring, &target.rel, &ring.matmul(big, &source.rel)) {
        return Err(Error::NotWellDefined("source relations do not vanish".into()));
    }
    let z = sol.select_rows(&(0..target.sub.cols()).collect::<Vec<_>>());
    ModuleMap::new(source.module(), target.module(), z)
}

/// Bijectivity of a module map, checked through its cokernel and kernel.
pub fn is_isomorphism<R: Ring>(f: &ModuleMap<R>) -> bool {
    if !f.cokernel().is_zero() {
        return false;
    }
    let r = f.source.ring();
    let big = f.matrix.hstack(f.target.relations());
    let k = kernel(r, &big);
    let x = k.select_rows(&(0..f.source.generators()).collect::<Vec<_>>());
    f.source.vanishes(&x)
}

pub fn module_is_projective<R: Ring>(m: &PresentedModule<R>) -> bool {
    if m.ring().base().is_field() {
        return true;
    }
    m.normal_form().torsion.is_empty()
}

pub fn module_is_injective<R: Ring>(m: &PresentedModule<R>) -> bool {
    match m.ring().base() {
        BaseRing::Rationals => true,
        BaseRing::Integers => m.is_zero(),
        BaseRing::IntegersMod(_) => m.normal_form().torsion.is_empty(),
    }
}
