use std::collections::BTreeMap;
use std::sync::Arc;

use qshape_core::homology::*;
use qshape_core::matrix::MatrixOps;
use qshape_core::meshcat::MeshCategory;
use qshape_core::module::PresentedModule;
use qshape_core::quiver::{Arrow, Vertex};
use qshape_core::repmod::*;
use qshape_core::ring::{BaseRing, Integers, IntegersMod, Ring};
use qshape_core::Error;

fn double(n: usize) -> Arc<MeshCategory> {
    Arc::new(MeshCategory::double(n).unwrap())
}

fn f3() -> IntegersMod {
    IntegersMod::new(3).unwrap()
}

fn counter() -> (Representation<IntegersMod>, Representation<IntegersMod>, RepMorphism<IntegersMod>) {
    let k = f3();
    let cat = Arc::new(MeshCategory::repetitive(3, -6, 6).unwrap());
    let one = || PresentedModule::free(k, 1);
    let (v1, v2, v3) = (Vertex::new(1, 0), Vertex::new(3, 1), Vertex::new(2, 0));
    let x = Representation::new(
        cat.clone(),
        k,
        BTreeMap::from([(v1, one()), (v2, one()), (v3, one())]),
        BTreeMap::from([(Arrow::plain(1, 0), k.identity(1)), (Arrow::star(2, 1), k.identity(1))]),
    )
    .unwrap();
    let y = Representation::new(cat, k, BTreeMap::from([(v1, one())]), BTreeMap::new()).unwrap();
    let phi = RepMorphism::new(x.clone(), y.clone(), BTreeMap::from([(v1, k.identity(1))])).unwrap();
    (x, y, phi)
}

#[test]
fn counterexample() {
    let (x, y, phi) = counter();
    let cat = x.category().clone();
    let v3 = Vertex::new(2, 0);
    let v4 = Vertex::new(1, -1);
    for q in cat.quiver().interior_vertices() {
        let (mx, my) = (mesh_homology(&x, &q).unwrap(), mesh_homology(&y, &q).unwrap());
        if q == v3 {
            assert_eq!(mx.describe(), "Z/3");
            assert_eq!(my.describe(), "Z/3");
        } else {
            assert!(mx.is_zero() && my.is_zero(), "{q:?}");
        }
    }
    assert!(mesh_homology_map(&phi, &v3).unwrap().is_isomorphism());
    let (ker, _) = kernel_of_morphism(&phi).unwrap();
    assert_eq!(mesh_homology(&ker, &v4).unwrap().describe(), "Z/3");
    let report = is_weak_equivalence(&phi).unwrap();
    assert!(!report.is_weak_equivalence);
    assert!(report.theorem_backed);
}

#[test]
fn boundary_vertices_are_refused() {
    let (x, _, _) = counter();
    assert!(matches!(mesh_homology(&x, &Vertex::new(1, 6)), Err(Error::BoundaryVertex(_))));
    assert!(matches!(corner_functors(&x, &Vertex::new(1, 6)), Err(Error::BoundaryVertex(_))));
}

#[test]
fn small_window_is_refused() {
    let k = f3();
    let cat = Arc::new(MeshCategory::repetitive(2, 0, 1).unwrap());
    let x = stalk_rep(&cat, &Vertex::new(1, 0), &PresentedModule::free(k, 1)).unwrap();
    assert!(matches!(classify_object(&x), Err(Error::WindowTooSmall(_))));
}

fn corner_identities<R: Ring>(r: &R, m: &PresentedModule<R>) {
    for n in 2..=4 {
        let cat = double(n);
        for q in 1..=n {
            let qv = Vertex::double(q);
            let f = free_at(&cat, &qv, m).unwrap();
            let g = cofree_at(&cat, &qv, m).unwrap();
            for p in 1..=n {
                let pv = Vertex::double(p);
                let cf = corner_functors(&f, &pv).unwrap();
                let kg = corner_functors(&g, &pv).unwrap();
                if p == q {
                    assert!(cf.c.isomorphic(m) && kg.k.isomorphic(m));
                } else {
                    assert!(cf.c.is_zero() && kg.k.is_zero());
                }
                for i in 1..=2 {
                    assert!(derived_homology(&f, &pv, Side::Right, 2).unwrap()[i].is_zero());
                    assert!(derived_homology(&g, &pv, Side::Left, 2).unwrap()[i].is_zero());
                }
            }
            let _ = r;
        }
    }
}

#[test]
fn corners_of_free_and_cofree() {
    corner_identities(&Integers, &PresentedModule::free(Integers, 2));
    corner_identities(&Integers, &PresentedModule::cyclic(Integers, 6.into()));
    let z4 = IntegersMod::new(4).unwrap();
    corner_identities(&z4, &PresentedModule::cyclic(z4, 2));
}

#[test]
fn degree_zero_is_a_corner() {
    let cat = double(3);
    let x = free_at(&cat, &Vertex::double(2), &PresentedModule::free(f3(), 1)).unwrap();
    let y = cofree_at(&cat, &Vertex::double(1), &PresentedModule::free(f3(), 1)).unwrap();
    let z = x.direct_sum(&y).unwrap();
    for q in 1..=3 {
        let v = Vertex::double(q);
        let c = corner_functors(&z, &v).unwrap();
        assert!(derived_homology(&z, &v, Side::Right, 0).unwrap()[0].isomorphic(&c.c));
        assert!(derived_homology(&z, &v, Side::Left, 0).unwrap()[0].isomorphic(&c.k));
    }
}

#[test]
fn first_homology_is_mesh_homology() {
    for n in 2..=4 {
        let cat = double(n);
        for q in 1..=n {
            let k = PresentedModule::free(f3(), 1);
            let s = stalk_rep(&cat, &Vertex::double(q), &k).unwrap();
            let sum = s.direct_sum(&free_at(&cat, &Vertex::double(1), &k).unwrap()).unwrap();
            for x in [s, sum] {
                for p in 1..=n {
                    let v = Vertex::double(p);
                    let h1 = &derived_homology(&x, &v, Side::Right, 1).unwrap()[1];
                    assert!(h1.isomorphic(&mesh_homology(&x, &v).unwrap()), "n={n} q={q} p={p}");
                }
            }
        }
    }
}

#[test]
fn resolution_heads_agree() {
    let cat = double(3);
    let x = stalk_rep(&cat, &Vertex::double(2), &PresentedModule::free(Integers, 1)).unwrap();
    for q in 1..=3 {
        let v = Vertex::double(q);
        for side in [Side::Left, Side::Right] {
            let a = resolve_stalk(&cat, &v, side, Head::Minimal, 3).unwrap();
            let b = resolve_stalk(&cat, &v, side, Head::BasisIndexed, 3).unwrap();
            assert!(b.terms[1].len() >= a.terms[1].len());
            let ha = derived_homology_with(&x, &a, 2).unwrap();
            let hb = derived_homology_with(&x, &b, 2).unwrap();
            for i in 1..=2 {
                assert!(ha[i].isomorphic(&hb[i]), "q={q} side={side:?} i={i}");
            }
        }
    }
}

#[test]
fn long_resolutions_are_computed_fresh() {
    let cat = double(2);
    let short = resolve_stalk(&cat, &Vertex::double(1), Side::Right, Head::Minimal, 4).unwrap();
    let long = resolve_stalk(&cat, &Vertex::double(1), Side::Right, Head::Minimal, 6).unwrap();
    assert_eq!(long.terms[..5], short.terms[..]);
}

#[test]
fn repetitive_resolutions_shift_along_tau() {
    let cat = MeshCategory::repetitive(3, -8, 8).unwrap();
    let v = Vertex::new(2, 3);
    let cached = resolve_stalk(&cat, &v, Side::Left, Head::Minimal, 3).unwrap();
    let fresh = StalkResolution::compute(&cat, &v, Side::Left, Head::Minimal, 3).unwrap();
    assert_eq!(cached, fresh);
}

#[test]
fn classification_of_free_cofree_and_stalks() {
    fn run<R: Ring>(r: &R) {
        for n in 2..=4 {
            let cat = double(n);
            for q in 1..=n {
                let v = Vertex::double(q);
                let one = PresentedModule::free(r.clone(), 1);
                let f = classify_object(&free_at(&cat, &v, &one).unwrap()).unwrap();
                assert_eq!(f.is_projective, Verdict::Yes);
                let g = classify_object(&cofree_at(&cat, &v, &one).unwrap()).unwrap();
                let injective = r.base() != BaseRing::Integers;
                let expect = if injective { Verdict::Yes } else { Verdict::No };
                assert_eq!(g.is_injective, expect, "{:?}", r.base());
                let s = classify_object(&stalk_rep(&cat, &v, &one).unwrap()).unwrap();
                assert_eq!(s.is_projective, Verdict::No);
                assert_eq!(s.is_injective, Verdict::No);
            }
        }
    }
    run(&Integers);
    run(&f3());
    run(&IntegersMod::new(4).unwrap());
}

#[test]
fn exactness_needs_a_hereditary_ring() {
    let cat = double(2);
    let z4 = IntegersMod::new(4).unwrap();
    let x = free_at(&cat, &Vertex::double(1), &PresentedModule::free(z4, 1)).unwrap();
    assert_eq!(classify_object(&x).unwrap().is_exact, Verdict::NotTheoremBacked);
    let y = free_at(&cat, &Vertex::double(1), &PresentedModule::free(Integers, 1)).unwrap();
    assert_eq!(classify_object(&y).unwrap().is_exact, Verdict::Yes);
}

#[test]
fn zero_test_routes_agree() {
    let cat = double(3);
    let k = PresentedModule::free(f3(), 1);
    let zero = Representation::zero(cat.clone(), f3());
    let t = zero_test(&zero).unwrap();
    assert!(t.direct && t.agree());
    for x in [
        stalk_rep(&cat, &Vertex::double(2), &k).unwrap(),
        free_at(&cat, &Vertex::double(1), &k).unwrap(),
        cofree_at(&cat, &Vertex::double(3), &k).unwrap(),
    ] {
        let t = zero_test(&x).unwrap();
        assert!(!t.direct && t.agree() && t.witness.is_some());
    }
}

#[test]
fn representables_are_normal() {
    for n in 2..=5 {
        assert!(normality_failures(&MeshCategory::double(n).unwrap(), &Integers).unwrap().is_empty());
    }
    for n in 2..=4 {
        let w = n as i64;
        let cat = MeshCategory::repetitive(n, -w, w).unwrap();
        assert!(normality_failures(&cat, &Integers).unwrap().is_empty());
    }
}

#[test]
fn identity_is_a_weak_equivalence() {
    let cat = double(2);
    let x = stalk_rep(&cat, &Vertex::double(1), &PresentedModule::free(f3(), 1)).unwrap();
    let report = is_weak_equivalence(&RepMorphism::identity(&x)).unwrap();
    assert!(report.is_weak_equivalence);
    assert_eq!(report.routes_agree, Some(true));
}

#[test]
fn morphism_space_of_stalk_into_cofree() {
    let cat = double(3);
    let k = PresentedModule::free(f3(), 1);
    let s = stalk_rep(&cat, &Vertex::double(2), &k).unwrap();
    let g = cofree_at(&cat, &Vertex::double(2), &k).unwrap();
    // Hom(S, G_2(k)) = Hom_k(S(2), k) is one dimensional
    assert_eq!(morphism_space(&s, &g).unwrap().len(), 1);
    let f = free_at(&cat, &Vertex::double(2), &k).unwrap();
    // Hom(F_2(k), F_2(k)) = Q(2, 2)
    assert_eq!(morphism_space(&f, &f).unwrap().len(), cat.rank(&Vertex::double(2), &Vertex::double(2)));
}
