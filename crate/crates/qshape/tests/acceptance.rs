//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines show up in plain
//! `cargo test` output. Exits nonzero if any criterion fails
//! unexpectedly. A criterion that cannot hold as stated is printed as
//! FAIL with the reason; its check asserts the correct behavior instead.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use qshape::commands::{bridge_agrees, COUNTER_FIXTURE};
use qshape::format::{morphism_from_json, read_document, AnyRing, RingChoice};
use qshape::random::{random_complex, random_morphism, random_representation, random_sum, rng, DEFAULT_SEED};
use qshape_core::homology::*;
use qshape_core::linalg::{diagonalize, smith_normal_form};
use qshape_core::matrix::{Matrix, MatrixOps};
use qshape_core::meshcat::MeshCategory;
use qshape_core::module::{module_is_injective, module_is_projective, PresentedModule};
use qshape_core::oracle::PathOracle;
use qshape_core::quiver::{Arrow, Vertex};
use qshape_core::repmod::*;
use qshape_core::ring::{Integers, IntegersMod, Ring};
use rand::Rng as _;

enum Outcome {
    Pass(String),
    Fail(String),
    /// Cannot hold as stated; the check confirmed the correct behavior.
    Unattainable(String),
}

type Check = Result<Outcome, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|x| x.to_string())
}

fn f3() -> IntegersMod {
    IntegersMod::new(3).unwrap()
}

fn f5() -> IntegersMod {
    IntegersMod::new(5).unwrap()
}

fn z4() -> IntegersMod {
    IntegersMod::new(4).unwrap()
}

fn double(n: usize) -> Arc<MeshCategory> {
    Arc::new(MeshCategory::double(n).unwrap())
}

fn ranks() -> Check {
    let mut pairs = 0;
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        for p in 1..=n {
            let z = e(PathOracle::build(&cat, Integers, Vertex::double(p), 2 * n + 2))?;
            let f = e(PathOracle::build(&cat, f5(), Vertex::double(p), 2 * n + 2))?;
            ensure(e(z.basis_matches(&cat))? && e(f.basis_matches(&cat))?, || format!("basis mismatch n={n} p={p}"))?;
            for q in 1..=n {
                let expect = p.min(q).min(n + 1 - p).min(n + 1 - q);
                let (pv, qv) = (Vertex::double(p), Vertex::double(q));
                ensure(cat.rank(&pv, &qv) == expect, || format!("rank n={n} ({p},{q})"))?;
                ensure(z.total_rank(&qv) == Some(expect), || format!("oracle over Z n={n} ({p},{q})"))?;
                ensure(f.total_rank(&qv) == Some(expect), || format!("oracle over F5 n={n} ({p},{q})"))?;
                pairs += 1;
            }
        }
    }
    Ok(Outcome::Pass(format!("{pairs} hom spaces, n = 2..6, min formula = path oracle over Z and F5")))
}

fn nilpotency() -> Check {
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        ensure(cat.nilpotency_index() == n, || format!("index for n={n}"))?;
        // the oracle sees a nonzero path of length n-1 and none longer
        let mut top = 0;
        for p in 1..=n {
            let o = e(PathOracle::build(&cat, Integers, Vertex::double(p), 2 * n + 2))?;
            for q in 1..=n {
                for (deg, nf) in o.graded_dims(&Vertex::double(q)) {
                    if !nf.is_zero() {
                        top = top.max(deg);
                    }
                }
            }
        }
        ensure(top == n - 1, || format!("longest nonzero path {top} for n={n}"))?;
    }
    Ok(Outcome::Pass("r^n = 0 and r^(n-1) != 0 for n = 2..6".into()))
}

fn arrow_matrices() -> Check {
    let mut count = 0;
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        for p in 1..=n {
            let pv = Vertex::double(p);
            let o = e(PathOracle::build(&cat, Integers, pv, 2 * n + 2))?;
            for q in 1..n {
                for (star, a) in [(false, Arrow::plain(q, 0)), (true, Arrow::star(q, 0))] {
                    let closed = e(cat.arrow_mult_matrix(&Integers, q, p, star))?;
                    ensure(closed == e(o.arrow_matrix(&cat, &a))?, || format!("n={n} p={p} {a:?}"))?;
                    ensure(closed == cat.arrow_left_mult(&Integers, &a, &pv), || format!("table n={n} p={p} {a:?}"))?;
                    count += 1;
                }
            }
        }
    }
    Ok(Outcome::Pass(format!("{count} arrow matrices equal the path oracle")))
}

fn serre() -> Check {
    for n in 2..=6 {
        let cat = MeshCategory::double(n).unwrap();
        let z = cat.serre_report(&Integers);
        let f = cat.serre_report(&f5());
        ensure(z.all_pass(), || format!("n={n} over Z: {:?}", z.failures))?;
        ensure(f.all_pass(), || format!("n={n} over F5: {:?}", f.failures))?;
    }
    Ok(Outcome::Pass("involution, mesh relations, pairings and naturality over Z and F5, n = 2..6".into()))
}

fn normality() -> Check {
    for n in 2..=5 {
        let bad = e(normality_failures(&MeshCategory::double(n).unwrap(), &Integers))?;
        ensure(bad.is_empty(), || format!("double n={n}: {bad:?}"))?;
    }
    for n in 2..=4 {
        let cat = MeshCategory::repetitive(n, -(n as i64), n as i64).unwrap();
        let bad = e(normality_failures(&cat, &Integers))?;
        ensure(bad.is_empty(), || format!("repetitive n={n}: {bad:?}"))?;
    }
    Ok(Outcome::Pass("mH(Q(p,-)) = 0: double n <= 5, repetitive n <= 4 on a window of width 2n".into()))
}

fn counterexample() -> Check {
    let doc: serde_json::Value = e(serde_json::from_str(COUNTER_FIXTURE))?;
    let (input, _) = e(read_document(&doc))?;
    let cat = e(input.category())?;
    let AnyRing::Q(r) = e(input.ring())? else {
        return Err("fixture should be over Q".into());
    };
    let phi = e(morphism_from_json(&cat, &r, &doc, ""))?;
    let (x, y) = (&phi.source, &phi.target);
    ensure(x.is_valid() && y.is_valid(), || "invalid fixture".into())?;
    let three = Vertex::new(2, 0);
    let four = Vertex::new(1, -1);
    for q in cat.quiver().interior_vertices() {
        let (mx, my) = (e(mesh_homology(x, &q))?, e(mesh_homology(y, &q))?);
        let expect_nonzero = q == three;
        ensure(mx.is_zero() != expect_nonzero && my.is_zero() != expect_nonzero, || format!("mH at {q:?}"))?;
    }
    ensure(e(mesh_homology_map(&phi, &three))?.is_isomorphism(), || "mH(φ) not iso".into())?;
    let (ker, _) = e(kernel_of_morphism(&phi))?;
    ensure(e(mesh_homology(&ker, &four))?.describe() == "Q", || "kernel mH".into())?;
    let w = e(is_weak_equivalence(&phi))?;
    ensure(!w.is_weak_equivalence, || "φ came out a weak equivalence".into())?;
    let bad: Vec<String> =
        w.table.iter().filter(|t| !t.2).map(|t| format!("H_{} at {}", t.1, cat.quiver().vertex_name(&t.0))).collect();
    Ok(Outcome::Pass(format!(
        "mH(φ) iso at 2@0, mH(Ker φ) = Q at 1@-1, not a weak equivalence ({})",
        bad.join(", "),
    )))
}

fn bridge() -> Check {
    let mut detail = Vec::new();
    for choice in [RingChoice::Z, RingChoice::Mod(5)] {
        let mut g = rng(DEFAULT_SEED);
        let mut ok = 0;
        qshape::with_ring!(e(AnyRing::new(choice, ""))?, r => {
            for _ in 0..50 {
                let c = random_complex(&mut g, &r, 6, 4, 3);
                let (same, agree) = e(bridge_agrees(&r, &c))?;
                ok += usize::from(same && agree);
            }
            detail.push(format!("{ok}/50 over {}", r.base()));
        });
        if ok != 50 {
            return Ok(Outcome::Fail(detail.join(", ")));
        }
    }
    Ok(Outcome::Pass(format!("bridge mesh homology = direct homology: {}", detail.join(", "))))
}

fn free_cofree_classification() -> Check {
    let mut checked = 0;
    let mut z_cofree_injective = Vec::new();
    fn run<R: Ring>(r: R, expect_cofree_injective: bool, checked: &mut usize, odd: &mut Vec<String>) -> Result<(), String> {
        let m = PresentedModule::free(r.clone(), 1);
        for n in 2..=4 {
            let cat = double(n);
            for q in 1..=n {
                let qv = Vertex::double(q);
                let f = e(classify_object(&e(free_at(&cat, &qv, &m))?))?;
                ensure(f.is_projective == Verdict::Yes, || format!("F_{q}({}) n={n} not projective", r.base()))?;
                let g = e(classify_object(&e(cofree_at(&cat, &qv, &m))?))?;
                if expect_cofree_injective {
                    ensure(g.is_injective == Verdict::Yes, || format!("G_{q}({}) n={n} not injective", r.base()))?;
                } else {
                    // H^1 vanishes; only the corner K_q = R fails
                    ensure(g.is_injective == Verdict::No, || format!("G_{q}({}) n={n} injective", r.base()))?;
                    ensure(g.cohomology_nonzero.is_empty() && g.non_injective_corners == vec![qv], || {
                        format!("G_{q}({}) n={n}: unexpected obstruction", r.base())
                    })?;
                    odd.push(format!("n={n} q={q}"));
                }
                if r.base().is_field() {
                    let s = e(classify_object(&e(stalk_rep(&cat, &qv, &m))?))?;
                    ensure(s.is_projective == Verdict::No && s.is_injective == Verdict::No, || {
                        format!("stalk at {q} n={n} classified projective or injective")
                    })?;
                }
                *checked += 1;
            }
        }
        Ok(())
    }
    run(Integers, false, &mut checked, &mut z_cofree_injective)?;
    run(f3(), true, &mut checked, &mut z_cofree_injective)?;
    run(z4(), true, &mut checked, &mut z_cofree_injective)?;
    Ok(Outcome::Unattainable(format!(
        "F_q(R) projective for R in {{Z, F3, Z/4}} and G_q(I) injective for I in {{F3, Z/4}} on {checked} cases, \
         but G_q(Z) is correctly not injective in all {} cases: its corner K_q = Z is not an injective Z-module \
         (Z is not divisible), so the stated expectation for I = Z cannot hold",
        z_cofree_injective.len()
    )))
}

fn exactness_routes() -> Check {
    let mut g = rng(DEFAULT_SEED ^ 9);
    let r = f3();
    let mut exact = 0;
    let total = 200;
    for i in 0..total {
        let n = 2 + i % 3;
        let cat = double(n);
        let x = e(random_representation(&mut g, &cat, &r))?;
        let mut mesh_zero = true;
        let mut homology_zero = true;
        let mut cohomology_zero = true;
        for q in 1..=n {
            let qv = Vertex::double(q);
            let m = e(mesh_homology(&x, &qv))?;
            let h = e(derived_homology(&x, &qv, Side::Right, 3))?;
            let c = e(derived_homology(&x, &qv, Side::Left, 3))?;
            ensure(h[1].isomorphic(&m), || format!("sample {i}: H_1 != mH at {q}"))?;
            mesh_zero &= m.is_zero();
            homology_zero &= h[1..].iter().all(|x| x.is_zero());
            cohomology_zero &= c[1..].iter().all(|x| x.is_zero());
        }
        ensure(mesh_zero == homology_zero && mesh_zero == cohomology_zero, || {
            format!("sample {i} (n={n}): mH {mesh_zero}, H_* {homology_zero}, H^* {cohomology_zero}")
        })?;
        exact += usize::from(mesh_zero);
    }
    Ok(Outcome::Pass(format!("{total} representations over F3, {exact} exact, three routes agree, H_1 = mH")))
}

fn degree_one_weq() -> Check {
    let mut g = rng(DEFAULT_SEED ^ 10);
    let r = f3();
    let cat = double(2);
    let mut weak = 0;
    for i in 0..100 {
        let x = e(random_sum(&mut g, &cat, &r, 3))?;
        let y = if g.gen_bool(0.5) { x.clone() } else { e(random_sum(&mut g, &cat, &r, 3))? };
        let phi = e(random_morphism(&mut g, &x, &y))?;
        let w = e(is_weak_equivalence(&phi))?;
        ensure(w.routes_agree == Some(true), || format!("morphism {i}: degree one {}, full {}", w.degree_one_verdict, w.is_weak_equivalence))?;
        weak += usize::from(w.is_weak_equivalence);
    }
    Ok(Outcome::Pass(format!("100 morphisms on double A2 over F3 ({weak} weak equivalences): H_1 alone decides")))
}

fn corner_fixtures() -> Check {
    let mut fixtures = 0;
    fn run<R: Ring>(m: PresentedModule<R>, fixtures: &mut usize) -> Result<(), String> {
        for n in 2..=4 {
            let cat = double(n);
            for q in 1..=n {
                let qv = Vertex::double(q);
                let f = e(free_at(&cat, &qv, &m))?;
                let g = e(cofree_at(&cat, &qv, &m))?;
                let s = e(stalk_rep(&cat, &qv, &m))?;
                for p in 1..=n {
                    let pv = Vertex::double(p);
                    let cf = e(corner_functors(&f, &pv))?;
                    let kg = e(corner_functors(&g, &pv))?;
                    let ok = if p == q { cf.c.isomorphic(&m) && kg.k.isomorphic(&m) } else { cf.c.is_zero() && kg.k.is_zero() };
                    ensure(ok, || format!("corners n={n} q={q} p={p} over {}", m.ring().base()))?;
                    let hf = e(derived_homology(&f, &pv, Side::Right, 2))?;
                    let hg = e(derived_homology(&g, &pv, Side::Left, 2))?;
                    ensure(hf[1..].iter().chain(&hg[1..]).all(|h| h.is_zero()), || {
                        format!("FGH n={n} q={q} p={p} over {}", m.ring().base())
                    })?;
                }
                for x in [&f, &g, &s] {
                    let z = e(zero_test(x))?;
                    ensure(z.agree() && !z.direct, || format!("zero test n={n} q={q}"))?;
                    *fixtures += 1;
                }
            }
            let z = e(zero_test(&Representation::zero(cat, m.ring().clone())))?;
            ensure(z.agree() && z.direct, || "zero test on 0".into())?;
            *fixtures += 1;
        }
        Ok(())
    }
    run(PresentedModule::free(Integers, 2), &mut fixtures)?;
    run(PresentedModule::cyclic(Integers, BigInt::from(6)), &mut fixtures)?;
    run(PresentedModule::free(f3(), 1), &mut fixtures)?;
    run(PresentedModule::cyclic(z4(), 2), &mut fixtures)?;
    Ok(Outcome::Pass(format!("C_p F_q = δ_pq M, K_p G_q = δ_pq M, H_i F = H^i G = 0; zero test agrees on {fixtures} fixtures")))
}

// ---- exact algebra against brute force ----

fn det(m: &[Vec<i64>]) -> i64 {
    let k = m.len();
    if k == 0 {
        return 1;
    }
    let mut total = 0;
    for j in 0..k {
        let minor: Vec<Vec<i64>> =
            m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| *x).collect()).collect();
        let sign = if j % 2 == 0 { 1 } else { -1 };
        total += sign * m[0][j] * det(&minor);
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// gcd of all k×k minors.
fn determinantal_divisor(m: &[Vec<i64>], k: usize) -> i64 {
    let (rows, cols) = (m.len(), m[0].len());
    let mut g = 0;
    for rs in subsets(rows, k) {
        for cs in subsets(cols, k) {
            let sub: Vec<Vec<i64>> = rs.iter().map(|&i| cs.iter().map(|&j| m[i][j]).collect()).collect();
            g = gcd(g, det(&sub));
        }
    }
    g
}

fn valuation(mut a: i64, p: i64, cap: u32) -> u32 {
    if a == 0 {
        return cap;
    }
    let mut v = 0;
    while a % p == 0 && v < cap {
        a /= p;
        v += 1;
    }
    v
}

fn snf_checks() -> Check {
    let mut g = rng(DEFAULT_SEED ^ 12);
    for _ in 0..500 {
        let (rows, cols) = (g.gen_range(1..=4), g.gen_range(1..=4));
        let entries: Vec<i64> = (0..rows * cols).map(|_| g.gen_range(-9..=9)).collect();
        let grid: Vec<Vec<i64>> = entries.chunks(cols).map(<[i64]>::to_vec).collect();
        let m = Integers.int_matrix(rows, cols, &entries);
        let d = e(smith_normal_form(&Integers, &m))?;
        factorization_holds(&Integers, &m, &d.s, &d.u, &d.u_inv, &d.v)?;
        let diag: Vec<i64> = d.diagonal().iter().map(|x| i64::try_from(x).unwrap()).collect();
        let mut prod = 1;
        for k in 1..=rows.min(cols) {
            prod *= diag[k - 1];
            ensure(prod.abs() == determinantal_divisor(&grid, k), || format!("Z invariant factors of {grid:?}"))?;
        }
        for (modulus, p, cap) in [(4u64, 2i64, 2u32), (9, 3, 2)] {
            let r = IntegersMod::new(modulus).unwrap();
            let m = r.int_matrix(rows, cols, &entries);
            let d = diagonalize(&r, &m);
            factorization_holds(&r, &m, &d.s, &d.u, &d.u_inv, &d.v)?;
            let diag = d.diagonal();
            let mut total = 0;
            for k in 1..=rows.min(cols) {
                total = (total + valuation(diag[k - 1] as i64, p, cap)).min(cap);
                let want = valuation(determinantal_divisor(&grid, k), p, cap);
                ensure(total == want, || format!("Z/{modulus} invariant factors of {grid:?}"))?;
            }
        }
    }
    let (mut modules, mut agree) = (0, 0);
    for (modulus, p, k) in [(2u64, 2u64, 1u32), (3, 3, 1), (4, 2, 2), (8, 2, 3), (9, 3, 2)] {
        let r = IntegersMod::new(modulus).unwrap();
        for _ in 0..60 {
            let gens = g.gen_range(1..=3);
            let rels = g.gen_range(0..=3);
            let cols: Vec<Vec<u64>> = (0..rels).map(|_| (0..gens).map(|_| g.gen_range(0..modulus)).collect()).collect();
            let Some(fm) = FiniteModule::new(modulus, gens, &cols) else { continue };
            if fm.size() > 8 {
                continue;
            }
            let rel = Matrix::from_columns(gens, &cols, 0u64);
            let pm = e(PresentedModule::new(r, gens, rel))?;
            let (proj, inj) = (fm.splits(), fm.baer(p, k));
            modules += 1;
            ensure(module_is_projective(&pm) == proj && module_is_injective(&pm) == inj, || {
                format!("Z/{modulus} module {cols:?} on {gens} generators: brute force proj {proj} inj {inj}")
            })?;
            agree += 1;
        }
    }
    Ok(Outcome::Pass(format!(
        "500 matrices over Z, Z/4, Z/9: UMV = S, U invertible, invariant factors = determinantal divisors; \
         {agree}/{modules} modules with at most 8 elements match exhaustive lifting and Baer checks"
    )))
}

fn factorization_holds<R: Ring>(
    r: &R,
    m: &Matrix<R::Elem>,
    s: &Matrix<R::Elem>,
    u: &Matrix<R::Elem>,
    u_inv: &Matrix<R::Elem>,
    v: &Matrix<R::Elem>,
) -> Result<(), String> {
    ensure(r.matmul(&r.matmul(u, m), v) == *s, || "U M V != S".into())?;
    ensure(r.matmul(u, u_inv) == r.identity(m.rows()), || "U not invertible".into())?;
    let n = s.rows().min(s.cols());
    for i in 0..s.rows() {
        for j in 0..s.cols() {
            ensure(i == j || r.is_zero(&s[(i, j)]), || "S not diagonal".into())?;
        }
    }
    for i in 1..n {
        ensure(r.divides(&s[(i - 1, i - 1)], &s[(i, i)]), || "diagonal not a divisor chain".into())?;
    }
    // V is invertible iff V x = 0 has only the trivial solution over a finite
    // or integral ring of this size; check through its own diagonal.
    let dv = diagonalize(r, v);
    ensure(dv.diagonal().iter().all(|x| r.is_unit(x)), || "V not invertible".into())?;
    Ok(())
}

/// `(Z/m)^g` modulo the span of some columns, by enumeration.
struct FiniteModule {
    m: u64,
    gens: usize,
    rels: Vec<Vec<u64>>,
    lattice: BTreeSet<Vec<u64>>,
}

impl FiniteModule {
    fn new(m: u64, gens: usize, rels: &[Vec<u64>]) -> Option<Self> {
        let mut lattice: BTreeSet<Vec<u64>> = BTreeSet::from([vec![0; gens]]);
        for c in rels {
            let mut next = BTreeSet::new();
            for v in &lattice {
                for t in 0..m {
                    next.insert(v.iter().zip(c).map(|(a, b)| (a + t * b) % m).collect::<Vec<_>>());
                }
            }
            lattice = next;
        }
        let total = m.checked_pow(gens as u32)?;
        (total / lattice.len() as u64 <= 64).then_some(FiniteModule { m, gens, rels: rels.to_vec(), lattice })
    }

    fn size(&self) -> usize {
        self.m.pow(self.gens as u32) as usize / self.lattice.len()
    }

    fn all_vectors(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for _ in 0..self.gens {
            out = out.into_iter().flat_map(|v: Vec<u64>| (0..self.m).map(move |x| [v.clone(), vec![x]].concat())).collect();
        }
        out
    }

    fn canonical(&self, v: &[u64]) -> Vec<u64> {
        self.lattice.iter().map(|l| v.iter().zip(l).map(|(a, b)| (a + b) % self.m).collect::<Vec<_>>()).min().unwrap()
    }

    fn elements(&self) -> BTreeSet<Vec<u64>> {
        self.all_vectors().iter().map(|v| self.canonical(v)).collect()
    }

    fn scale(&self, c: u64, v: &[u64]) -> Vec<u64> {
        self.canonical(&v.iter().map(|x| x * c % self.m).collect::<Vec<_>>())
    }

    /// Whether the projection `(Z/m)^g -> M` has a section: every hom
    /// `M -> (Z/m)^g` is tried.
    fn splits(&self) -> bool {
        // homs M -> Z/m: values on generators killing every relation
        let homs: Vec<Vec<u64>> = self
            .all_vectors()
            .into_iter()
            .filter(|f| self.rels.iter().all(|c| c.iter().zip(f).map(|(a, b)| a * b).sum::<u64>() % self.m == 0))
            .collect();
        let mut choice = vec![0usize; self.gens];
        loop {
            // s(e_j) has coordinates homs[choice[i]][j]
            let section = (0..self.gens).all(|j| {
                let image: Vec<u64> = (0..self.gens).map(|i| homs[choice[i]][j]).collect();
                let mut unit = vec![0; self.gens];
                unit[j] = 1;
                self.canonical(&image) == self.canonical(&unit)
            });
            if section {
                return true;
            }
            let mut i = 0;
            while i < self.gens {
                choice[i] += 1;
                if choice[i] < homs.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == self.gens {
                return false;
            }
        }
    }

    /// Baer's criterion over `Z/p^k`: every hom from an ideal `p^j` extends.
    fn baer(&self, p: u64, k: u32) -> bool {
        let elems = self.elements();
        (0..=k).all(|j| {
            let pj = p.pow(j);
            let ann = p.pow(k - j);
            let multiples: BTreeSet<Vec<u64>> = elems.iter().map(|x| self.scale(pj, x)).collect();
            elems.iter().filter(|m| self.scale(ann, m) == self.canonical(&vec![0; self.gens])).all(|m| multiples.contains(m))
        })
    }
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("hom ranks", ranks),
        ("radical nilpotency", nilpotency),
        ("arrow matrices", arrow_matrices),
        ("Serre functor", serre),
        ("normality", normality),
        ("counterexample", counterexample),
        ("complex bridge", bridge),
        ("free and cofree objects", free_cofree_classification),
        ("exactness routes", exactness_routes),
        ("degree-one weak equivalence", degree_one_weq),
        ("corner functors", corner_fixtures),
        ("exact algebra", snf_checks),
    ];
    let mut unexpected = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f().unwrap_or_else(Outcome::Fail);
        let took = start.elapsed();
        let (status, detail) = match &outcome {
            Outcome::Pass(d) => ("PASS", d.clone()),
            Outcome::Fail(d) => {
                unexpected += 1;
                ("FAIL", d.clone())
            }
            Outcome::Unattainable(d) => ("FAIL", format!("unattainable as stated: {d}")),
        };
        println!("criterion {:>2} ({name}): {status} [{took:.1?}] {detail}", i + 1);
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
