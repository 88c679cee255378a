//! Diagonalization and the linear algebra built on it: kernels, solving
//! and span membership over any [`Ring`].

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, MatrixOps};
use crate::ring::{BaseRing, Ring};

/// `u * m * v = s` with `s` diagonal, each diagonal entry dividing the next
/// and every nonzero entry in canonical form. `u_inv` is the inverse of `u`.
#[derive(Clone, Debug)]
pub struct Diagonalization<E> {
    pub s: Matrix<E>,
    pub u: Matrix<E>,
    pub u_inv: Matrix<E>,
    pub v: Matrix<E>,
}

impl<E: Clone> Diagonalization<E> {
    pub fn diagonal(&self) -> Vec<E> {
        let n = self.s.rows().min(self.s.cols());
        (0..n).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Work<'a, R: Ring> {
    ring: &'a R,
    a: Matrix<R::Elem>,
    u: Matrix<R::Elem>,
    u_inv: Matrix<R::Elem>,
    v: Matrix<R::Elem>,
}

impl<R: Ring> Work<'_, R> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    /// row_i += c * row_t
    fn add_row(&mut self, i: usize, t: usize, c: &R::Elem) {
        let r = self.ring;
        for j in 0..self.a.cols() {
            let x = r.mul(c, &self.a[(t, j)]);
            self.a[(i, j)] = r.add(&self.a[(i, j)], &x);
        }
        for j in 0..self.u.cols() {
            let x = r.mul(c, &self.u[(t, j)]);
            self.u[(i, j)] = r.add(&self.u[(i, j)], &x);
        }
        for k in 0..self.u_inv.rows() {
            let x = r.mul(c, &self.u_inv[(k, i)]);
            self.u_inv[(k, t)] = r.sub(&self.u_inv[(k, t)], &x);
        }
    }

    /// col_j += c * col_t
    fn add_col(&mut self, j: usize, t: usize, c: &R::Elem) {
        let r = self.ring;
        for i in 0..self.a.rows() {
            let x = r.mul(c, &self.a[(i, t)]);
            self.a[(i, j)] = r.add(&self.a[(i, j)], &x);
        }
        for i in 0..self.v.rows() {
            let x = r.mul(c, &self.v[(i, t)]);
            self.v[(i, j)] = r.add(&self.v[(i, j)], &x);
        }
    }

    fn scale_row(&mut self, t: usize, unit: &R::Elem) {
        let r = self.ring;
        let inv = r.unit_inverse(unit).expect("scaling by a unit");
        for j in 0..self.a.cols() {
            self.a[(t, j)] = r.mul(unit, &self.a[(t, j)]);
        }
        for j in 0..self.u.cols() {
            self.u[(t, j)] = r.mul(unit, &self.u[(t, j)]);
        }
        for k in 0..self.u_inv.rows() {
            self.u_inv[(k, t)] = r.mul(&self.u_inv[(k, t)], &inv);
        }
    }

    fn best_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = &self.a[(i, j)];
                if r.is_zero(x) {
                    continue;
                }
                match best {
                    Some((bi, bj)) if r.size_cmp(x, &self.a[(bi, bj)]).is_ge() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let r = self.ring;
        let n = self.a.rows().min(self.a.cols());
        for t in 0..n {
            let Some((bi, bj)) = self.best_in_block(t) else { break };
            self.swap_rows(t, bi);
            self.swap_cols(t, bj);
            loop {
                let mut dirty = None;
                for i in t + 1..self.a.rows() {
                    if r.is_zero(&self.a[(i, t)]) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(&self.a[(i, t)], &self.a[(t, t)]);
                    self.add_row(i, t, &r.neg(&q));
                    if !r.is_zero(&rem) {
                        dirty = Some((i, t));
                    }
                }
                for j in t + 1..self.a.cols() {
                    if r.is_zero(&self.a[(t, j)]) {
                        continue;
                    }
                    let (q, rem) = r.div_rem(&self.a[(t, j)], &self.a[(t, t)]);
                    self.add_col(j, t, &r.neg(&q));
                    if !r.is_zero(&rem) {
                        dirty = Some((t, j));
                    }
                }
                if let Some((i, j)) = dirty {
                    // a smaller remainder appeared: promote it to the pivot
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let pivot = self.a[(t, t)].clone();
                let mut bad = None;
                'scan: for i in t + 1..self.a.rows() {
                    for j in t + 1..self.a.cols() {
                        if !r.divides(&pivot, &self.a[(i, j)]) {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        let one = r.one();
                        self.add_row(t, i, &one);
                    }
                    None => break,
                }
            }
            let (unit, _) = r.normalize(&self.a[(t, t)]);
            self.scale_row(t, &unit);
        }
    }
}

/// Diagonalizes `m` over any supported ring.
pub fn diagonalize<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Diagonalization<R::Elem> {
    let mut w = Work {
        ring,
        a: m.clone(),
        u: ring.identity(m.rows()),
        u_inv: ring.identity(m.rows()),
        v: ring.identity(m.cols()),
    };
    w.run();
    Diagonalization { s: w.a, u: w.u, u_inv: w.u_inv, v: w.v }
}

/// Smith normal form over `Z` or `Z/p^k`. Over a field the invariant
/// factors carry no information, so the rationals are rejected.
pub fn smith_normal_form<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Result<Diagonalization<R::Elem>> {
    if ring.base() == BaseRing::Rationals {
        return Err(Error::UnsupportedRing(alloc::string::ToString::to_string(&ring.base())));
    }
    Ok(diagonalize(ring, m))
}

/// Generators of `{x : m x = 0}`, as the columns of the result.
pub fn kernel<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let d = diagonalize(ring, m);
    let diag = d.diagonal();
    let mut gens: Vec<Vec<R::Elem>> = Vec::new();
    for i in 0..m.cols() {
        let scale = match diag.get(i) {
            Some(di) if !ring.is_zero(di) => match ring.annihilator(di) {
                Some(a) => a,
                None => continue,
            },
            _ => ring.one(),
        };
        let col: Vec<R::Elem> = d.v.column(i).iter().map(|x| ring.mul(&scale, x)).collect();
        if col.iter().any(|x| !ring.is_zero(x)) {
            gens.push(col);
        }
    }
    Matrix::from_columns(m.cols(), &gens, ring.zero())
}

/// Some `x` with `m x = b`.
pub fn solve<R: Ring>(ring: &R, m: &Matrix<R::Elem>, b: &[R::Elem]) -> Result<Vec<R::Elem>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "right-hand side has length {}, expected {}",
            b.len(),
            m.rows()
        )));
    }
    let d = diagonalize(ring, m);
    let diag = d.diagonal();
    let ub = ring.mat_vec(&d.u, b);
    let mut y = alloc::vec![ring.zero(); m.cols()];
    for (i, bi) in ub.iter().enumerate() {
        match diag.get(i) {
            Some(di) if !ring.is_zero(di) => {
                y[i] = ring.exact_div(bi, di).ok_or(Error::NoSolution)?;
            }
            _ => {
                if !ring.is_zero(bi) {
                    return Err(Error::NoSolution);
                }
            }
        }
    }
    Ok(ring.mat_vec(&d.v, &y))
}

/// Solves `m X = b` column by column.
pub fn solve_matrix<R: Ring>(ring: &R, m: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    if b.rows() != m.rows() {
        return Err(Error::DimensionMismatch("solve_matrix row mismatch".into()));
    }
    let d = diagonalize(ring, m);
    let diag = d.diagonal();
    let ub = ring.matmul(&d.u, b);
    let mut y = ring.zeros(m.cols(), b.cols());
    for j in 0..b.cols() {
        for i in 0..m.rows() {
            let bi = &ub[(i, j)];
            match diag.get(i) {
                Some(di) if !ring.is_zero(di) => {
                    y[(i, j)] = ring.exact_div(bi, di).ok_or(Error::NoSolution)?;
                }
                _ => {
                    if !ring.is_zero(bi) {
                        return Err(Error::NoSolution);
                    }
                }
            }
        }
    }
    Ok(ring.matmul(&d.v, &y))
}

/// Whether every column of `b` lies in the column span of `m`.
pub fn in_span<R: Ring>(ring: &R, m: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    if ring.mat_is_zero(b) {
        return true;
    }
    solve_matrix(ring, m, b).is_ok()
}

/// Number of invertible invariant factors.
pub fn unit_rank<R: Ring>(ring: &R, m: &Matrix<R::Elem>) -> usize {
    diagonalize(ring, m).diagonal().iter().filter(|d| ring.is_unit(d)).count()
}
