use qshape_core::meshcat::{BasisElement, MeshCategory};
use qshape_core::oracle::PathOracle;
use qshape_core::quiver::{Arrow, Vertex};
use qshape_core::ring::{Integers, IntegersMod, Rationals};
use qshape_core::matrix::MatrixOps;

fn all_basis(cat: &MeshCategory) -> Vec<BasisElement> {
    let verts = cat.quiver().vertices().to_vec();
    let mut out = Vec::new();
    for p in &verts {
        for q in &verts {
            out.extend(cat.hom_basis(p, q));
        }
    }
    out
}

#[test]
fn ranks_match_min_formula_and_oracle() {
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        for p in 1..=n {
            let oracle = PathOracle::build(&cat, Integers, Vertex::double(p), 2 * n + 2).unwrap();
            for q in 1..=n {
                let expect = p.min(q).min(n + 1 - p).min(n + 1 - q);
                assert_eq!(cat.rank(&Vertex::double(p), &Vertex::double(q)), expect, "n={n} p={p} q={q}");
                assert_eq!(oracle.total_rank(&Vertex::double(q)), Some(expect), "oracle n={n} p={p} q={q}");
            }
            assert!(oracle.basis_matches(&cat).unwrap());
        }
    }
}

#[test]
fn oracle_over_prime_field_agrees() {
    let cat = MeshCategory::double(4).unwrap();
    let f5 = IntegersMod::new(5).unwrap();
    for p in 1..=4 {
        let oracle = PathOracle::build(&cat, f5, Vertex::double(p), 10).unwrap();
        assert!(oracle.basis_matches(&cat).unwrap());
    }
}

#[test]
fn radical_nilpotency() {
    for n in 2..=6 {
        assert_eq!(MeshCategory::double(n).unwrap().nilpotency_index(), n);
    }
}

#[test]
fn closed_form_arrow_matrices_match_oracle() {
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        for p in 1..=n {
            let pv = Vertex::double(p);
            let oracle = PathOracle::build(&cat, Integers, pv, 2 * n + 2).unwrap();
            for q in 1..n {
                for (star, a) in [(false, Arrow::plain(q, 0)), (true, Arrow::star(q, 0))] {
                    let closed = cat.arrow_mult_matrix(&Integers, q, p, star).unwrap();
                    assert_eq!(closed, oracle.arrow_matrix(&cat, &a).unwrap(), "n={n} p={p} a={a:?}");
                    assert_eq!(closed, cat.arrow_left_mult(&Integers, &a, &pv));
                }
            }
        }
    }
}

#[test]
fn signed_paths_land_on_basis() {
    for n in 2..=5 {
        let cat = MeshCategory::double(n).unwrap();
        for p in 1..=n {
            let oracle = PathOracle::build(&cat, Integers, Vertex::double(p), 2 * n).unwrap();
            assert!(oracle.signed_paths_consistent(&cat, n + 1).unwrap(), "n={n} p={p}");
        }
    }
}

#[test]
fn composition_is_associative() {
    for n in 2..=5 {
        let cat = MeshCategory::double(n).unwrap();
        let basis = all_basis(&cat);
        for f in &basis {
            for g in basis.iter().filter(|g| g.source == f.target) {
                for h in basis.iter().filter(|h| h.source == g.target) {
                    let gf = cat.compose_basis(g, f).unwrap();
                    let hg = cat.compose_basis(h, g).unwrap();
                    let left = gf.and_then(|x| cat.compose_basis(h, &x).unwrap());
                    let right = hg.and_then(|x| cat.compose_basis(&x, f).unwrap());
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn composition_rejects_mismatched_endpoints() {
    let cat = MeshCategory::double(3).unwrap();
    let f = cat.identity(&Vertex::double(1));
    let g = cat.identity(&Vertex::double(2));
    assert!(cat.compose_basis(&g, &f).is_err());
}

#[test]
fn serre_functor_checks() {
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        let z = cat.serre_report(&Integers);
        assert!(z.all_pass(), "n={n} over Z: {:?}", z.failures);
        let f5 = cat.serre_report(&IntegersMod::new(5).unwrap());
        assert!(f5.all_pass(), "n={n} over F5: {:?}", f5.failures);
    }
}

#[test]
fn serre_functor_on_repetitive_window() {
    let cat = MeshCategory::repetitive(3, -4, 4).unwrap();
    let report = cat.serre_report(&Integers);
    assert!(report.all_pass(), "{:?}", report.failures);
}

#[test]
fn strong_retraction() {
    for n in 2..=6 {
        assert!(MeshCategory::double(n).unwrap().strong_retraction_holds());
    }
    assert!(MeshCategory::repetitive(4, -3, 3).unwrap().strong_retraction_holds());
}

#[test]
fn repetitive_hom_spaces_match_oracle() {
    for n in 2..=4 {
        let cat = MeshCategory::repetitive(n, -(n as i64) - 1, n as i64 + 1).unwrap();
        for p in cat.quiver().vertices().to_vec() {
            let oracle = PathOracle::build(&cat, Integers, p, 2 * n + 2).unwrap();
            assert!(oracle.basis_matches(&cat).unwrap(), "n={n} p={p:?}");
            assert!(oracle.signed_paths_consistent(&cat, n + 1).unwrap());
        }
    }
}

#[test]
fn repetitive_hom_spaces_are_thin() {
    let cat = MeshCategory::repetitive(4, -5, 5).unwrap();
    let p = Vertex::new(2, 0);
    for q in cat.targets_from(&p) {
        assert!(cat.rank(&p, &q) <= 1);
    }
    assert!(cat.arrow_mult_matrix(&Integers, 1, 1, false).is_err());
}

#[test]
fn rationals_and_integers_give_the_same_multiplication() {
    let cat = MeshCategory::double(4).unwrap();
    let a = Arrow::star(2, 0);
    let z = cat.arrow_left_mult(&Integers, &a, &Vertex::double(2));
    let q = cat.arrow_left_mult(&Rationals, &a, &Vertex::double(2));
    assert_eq!(z.map(|x| num_rational::BigRational::from_integer(x.clone())), q);
    assert!(!Integers.mat_is_zero(&z));
}
