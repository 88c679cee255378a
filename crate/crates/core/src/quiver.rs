//! Stable translation quivers: the double quiver of `A_n` and the windowed
//! repetitive quiver `ZA_n`.
//!
//! Vertices and arrows of the repetitive quiver are addressed on the
//! infinite quiver; the window only decides which vertices carry data and
//! which meshes are complete.

use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    DoubleAn { n: usize },
    RepetitiveAn { n: usize, i_min: i64, i_max: i64 },
}

/// A vertex `q` (double quiver, `index` is 0) or `(q, i)` (repetitive quiver).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub index: i64,
    pub row: usize,
}

impl Vertex {
    pub const fn new(row: usize, index: i64) -> Self {
        Vertex { index, row }
    }

    pub const fn double(row: usize) -> Self {
        Vertex { index: 0, row }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ArrowKind {
    Plain,
    Star,
}

/// `a_q: q -> q+1` and `a*_q: q+1 -> q` in the double quiver;
/// `a_{q,i}: (q,i) -> (q+1,i)` and `a*_{q,i}: (q+1,i) -> (q,i-1)` in the
/// repetitive quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Arrow {
    pub index: i64,
    pub q: usize,
    pub kind: ArrowKind,
}

impl Arrow {
    pub const fn plain(q: usize, index: i64) -> Self {
        Arrow { index, q, kind: ArrowKind::Plain }
    }

    pub const fn star(q: usize, index: i64) -> Self {
        Arrow { index, q, kind: ArrowKind::Star }
    }

    pub fn is_star(&self) -> bool {
        self.kind == ArrowKind::Star
    }
}

/// All arrows `a_1..a_k` ending at `target`, each paired with `σ(a_i)`
/// starting at `τ(target)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mesh {
    pub target: Vertex,
    pub start: Vertex,
    pub incoming: Vec<Arrow>,
    pub paired: Vec<Arrow>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableTranslationQuiver {
    flavor: Flavor,
    vertices: Vec<Vertex>,
    arrows: Vec<Arrow>,
}

pub fn build_double_an(n: usize) -> Result<StableTranslationQuiver> {
    if n < 2 {
        return Err(Error::InvalidQuiver(alloc::format!("n = {n}, need n >= 2")));
    }
    let vertices = (1..=n).map(Vertex::double).collect();
    let mut arrows = Vec::new();
    for q in 1..n {
        arrows.push(Arrow::plain(q, 0));
        arrows.push(Arrow::star(q, 0));
    }
    arrows.sort();
    Ok(StableTranslationQuiver { flavor: Flavor::DoubleAn { n }, vertices, arrows })
}

pub fn build_repetitive_an(n: usize, i_min: i64, i_max: i64) -> Result<StableTranslationQuiver> {
    if n < 2 {
        return Err(Error::InvalidQuiver(alloc::format!("n = {n}, need n >= 2")));
    }
    if i_min > i_max {
        return Err(Error::InvalidQuiver(alloc::format!("window [{i_min}, {i_max}] is empty")));
    }
    let mut quiver = StableTranslationQuiver {
        flavor: Flavor::RepetitiveAn { n, i_min, i_max },
        vertices: Vec::new(),
        arrows: Vec::new(),
    };
    for i in i_min..=i_max {
        for q in 1..=n {
            quiver.vertices.push(Vertex::new(q, i));
        }
    }
    quiver.vertices.sort();
    let mut arrows = Vec::new();
    for i in i_min..=i_max {
        for q in 1..n {
            for a in [Arrow::plain(q, i), Arrow::star(q, i)] {
                if quiver.in_window(&quiver.source(&a)) && quiver.in_window(&quiver.target(&a)) {
                    arrows.push(a);
                }
            }
        }
    }
    arrows.sort();
    quiver.arrows = arrows;
    Ok(quiver)
}

impl StableTranslationQuiver {
    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn n(&self) -> usize {
        match self.flavor {
            Flavor::DoubleAn { n } | Flavor::RepetitiveAn { n, .. } => n,
        }
    }

    pub fn is_double(&self) -> bool {
        matches!(self.flavor, Flavor::DoubleAn { .. })
    }

    /// Vertices carrying data: all of them for the double quiver, the window
    /// for the repetitive one.
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// Whether `v` is a vertex of the infinite quiver.
    pub fn is_vertex(&self, v: &Vertex) -> bool {
        let n = self.n();
        v.row >= 1 && v.row <= n && (!self.is_double() || v.index == 0)
    }

    pub fn is_arrow(&self, a: &Arrow) -> bool {
        a.q >= 1 && a.q < self.n() && (!self.is_double() || a.index == 0)
    }

    pub fn in_window(&self, v: &Vertex) -> bool {
        match self.flavor {
            Flavor::DoubleAn { .. } => self.is_vertex(v),
            Flavor::RepetitiveAn { i_min, i_max, .. } => {
                self.is_vertex(v) && v.index >= i_min && v.index <= i_max
            }
        }
    }

    /// Whether the full mesh ending at `v` lies in the window.
    pub fn is_interior(&self, v: &Vertex) -> bool {
        match self.flavor {
            Flavor::DoubleAn { .. } => self.is_vertex(v),
            Flavor::RepetitiveAn { i_min, i_max, .. } => {
                self.is_vertex(v) && v.index >= i_min && v.index < i_max
            }
        }
    }

    pub fn interior_vertices(&self) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|v| self.is_interior(v)).collect()
    }

    pub fn source(&self, a: &Arrow) -> Vertex {
        match (self.is_double(), a.kind) {
            (true, ArrowKind::Plain) => Vertex::double(a.q),
            (true, ArrowKind::Star) => Vertex::double(a.q + 1),
            (false, ArrowKind::Plain) => Vertex::new(a.q, a.index),
            (false, ArrowKind::Star) => Vertex::new(a.q + 1, a.index),
        }
    }

    pub fn target(&self, a: &Arrow) -> Vertex {
        match (self.is_double(), a.kind) {
            (true, ArrowKind::Plain) => Vertex::double(a.q + 1),
            (true, ArrowKind::Star) => Vertex::double(a.q),
            (false, ArrowKind::Plain) => Vertex::new(a.q + 1, a.index),
            (false, ArrowKind::Star) => Vertex::new(a.q, a.index - 1),
        }
    }

    pub fn tau(&self, v: &Vertex) -> Vertex {
        if self.is_double() {
            *v
        } else {
            Vertex::new(v.row, v.index + 1)
        }
    }

    pub fn tau_inverse(&self, v: &Vertex) -> Vertex {
        if self.is_double() {
            *v
        } else {
            Vertex::new(v.row, v.index - 1)
        }
    }

    pub fn sigma(&self, a: &Arrow) -> Arrow {
        match (self.is_double(), a.kind) {
            (true, ArrowKind::Plain) => Arrow::star(a.q, 0),
            (true, ArrowKind::Star) => Arrow::plain(a.q, 0),
            (false, ArrowKind::Plain) => Arrow::star(a.q, a.index + 1),
            (false, ArrowKind::Star) => Arrow::plain(a.q, a.index),
        }
    }

    /// Arrows of the infinite quiver ending at `v`.
    pub fn arrows_into(&self, v: &Vertex) -> Vec<Arrow> {
        let n = self.n();
        let mut out = Vec::new();
        if v.row >= 2 {
            out.push(Arrow::plain(v.row - 1, v.index));
        }
        if v.row < n {
            let idx = if self.is_double() { 0 } else { v.index + 1 };
            out.push(Arrow::star(v.row, idx));
        }
        out
    }

    /// Arrows of the infinite quiver starting at `v`.
    pub fn arrows_out(&self, v: &Vertex) -> Vec<Arrow> {
        let n = self.n();
        let mut out = Vec::new();
        if v.row < n {
            out.push(Arrow::plain(v.row, v.index));
        }
        if v.row >= 2 {
            out.push(Arrow::star(v.row - 1, v.index));
        }
        out
    }

    pub fn mesh_at(&self, v: &Vertex) -> Result<Mesh> {
        if !self.is_vertex(v) {
            return Err(Error::UnknownVertex(self.vertex_name(v)));
        }
        if !self.is_interior(v) {
            return Err(Error::BoundaryVertex(self.vertex_name(v)));
        }
        let incoming = self.arrows_into(v);
        let paired = incoming.iter().map(|a| self.sigma(a)).collect();
        Ok(Mesh { target: *v, start: self.tau(v), incoming, paired })
    }

    pub fn vertex_name(&self, v: &Vertex) -> String {
        if self.is_double() {
            v.row.to_string()
        } else {
            alloc::format!("{}@{}", v.row, v.index)
        }
    }

    pub fn arrow_name(&self, a: &Arrow) -> String {
        let star = if a.is_star() { "*" } else { "" };
        if self.is_double() {
            alloc::format!("a{}{}", a.q, star)
        } else {
            alloc::format!("a{}{}@{}", a.q, star, a.index)
        }
    }

    pub fn parse_vertex(&self, s: &str) -> Result<Vertex> {
        let bad = || Error::UnknownVertex(s.into());
        let v = if self.is_double() {
            Vertex::double(usize::from_str(s).map_err(|_| bad())?)
        } else {
            let (q, i) = s.split_once('@').ok_or_else(bad)?;
            Vertex::new(usize::from_str(q).map_err(|_| bad())?, i64::from_str(i).map_err(|_| bad())?)
        };
        if self.is_vertex(&v) {
            Ok(v)
        } else {
            Err(bad())
        }
    }

    pub fn parse_arrow(&self, s: &str) -> Result<Arrow> {
        let bad = || Error::UnknownArrow(s.into());
        let body = s.strip_prefix('a').ok_or_else(bad)?;
        let (head, index) = if self.is_double() {
            (body, 0)
        } else {
            let (h, i) = body.split_once('@').ok_or_else(bad)?;
            (h, i64::from_str(i).map_err(|_| bad())?)
        };
        let (digits, kind) = match head.strip_suffix('*') {
            Some(d) => (d, ArrowKind::Star),
            None => (head, ArrowKind::Plain),
        };
        let q = usize::from_str(digits).map_err(|_| bad())?;
        let a = Arrow { index, q, kind };
        if self.is_arrow(&a) {
            Ok(a)
        } else {
            Err(bad())
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Flavor::DoubleAn { n } => write!(f, "double_an(n={n})"),
            Flavor::RepetitiveAn { n, i_min, i_max } => {
                write!(f, "repetitive_an(n={n}, window=[{i_min},{i_max}])")
            }
        }
    }
}
