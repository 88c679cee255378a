//! Homology of bounded complexes straight from invariant factors.

use std::collections::BTreeMap;

use qshape_core::linalg::smith_normal_form;
use qshape_core::module::NormalForm;
use qshape_core::repmod::ChainComplex;
use qshape_core::ring::Ring;
use qshape_core::{Error, Result};

/// `H_c` for every degree of the complex, as `R^f ⊕ ⊕ R/(d_i)` with the
/// `d_i` the non-unit invariant factors of the incoming boundary. Only
/// valid over principal ideal domains.
pub fn chain_homology<R: Ring>(r: &R, c: &ChainComplex<R::Elem>) -> Result<BTreeMap<i64, NormalForm<R::Elem>>> {
    if !r.base().is_hereditary() || !(r.base().is_field() || r.base() == qshape_core::ring::BaseRing::Integers) {
        return Err(Error::UnsupportedRing(format!("direct chain homology over {}", r.base())));
    }
    // (rank, non-unit invariant factors) of each boundary
    let mut boundary = Vec::with_capacity(c.boundaries.len());
    for d in &c.boundaries {
        let diag = if r.base().is_field() {
            qshape_core::linalg::diagonalize(r, d).diagonal()
        } else {
            smith_normal_form(r, d)?.diagonal()
        };
        let nonzero: Vec<R::Elem> = diag.into_iter().filter(|e| !r.is_zero(e)).collect();
        let torsion = nonzero.iter().filter(|e| !r.is_unit(e)).map(|e| r.normalize(e).1).collect::<Vec<_>>();
        boundary.push((nonzero.len(), torsion));
    }
    let mut out = BTreeMap::new();
    for (k, rank) in c.ranks.iter().enumerate() {
        let rank_out = if k > 0 { boundary[k - 1].0 } else { 0 };
        let (rank_in, torsion) = boundary.get(k).cloned().unwrap_or((0, Vec::new()));
        out.insert(
            c.lowest + k as i64,
            NormalForm { free_rank: rank - rank_out - rank_in, torsion },
        );
    }
    Ok(out)
}
