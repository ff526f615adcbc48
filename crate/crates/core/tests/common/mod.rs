//! Shared fixtures, independent oracles and property suites for the
//! integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::Arc;

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use symmpow::cli::{Problem, ProblemDoc, Settings};
use symmpow::construct::assemble;
use symmpow::fields::{make_field, FieldElem, FieldEmbedding, FieldSpec};
use symmpow::groups::{GroupData, DEFAULT_GROUP_CAP};
use symmpow::homs::{hom_space, intertwines_all};
use symmpow::linalg::{EchelonBasis, Mat};
use symmpow::meataxe::{distinct_irreducibles, is_irreducible, CertifiedIrreducible, Verdict};
use symmpow::reps::{apply_to_poly, induced_from_center, paired_rep, poly_mul, sym_power, MonomialBasis, PolyVec, Rep};

pub type Check = Result<(), String>;

/// The suite groups of the full sweep, by problem document name.
pub const SWEEP: [&str; 7] = ["c3_gf7", "c4_gf5", "c6_gl1_gf7", "s3_gf7", "sl2_2_gf2", "sl2_3_gf3", "q8_gf5"];

pub fn field(p: u32, f: u32) -> FieldSpec {
    make_field(p, f, None).unwrap()
}

pub fn mat(field: &FieldSpec, rows: &[&[i64]]) -> Mat {
    let rows: Vec<Vec<FieldElem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
    Mat::from_rows(field, &rows).unwrap()
}

pub fn group(field: &FieldSpec, gens: &[&[&[i64]]]) -> Arc<GroupData> {
    let gens: Vec<Mat> = gens.iter().map(|g| mat(field, g)).collect();
    Arc::new(GroupData::enumerate(&gens, DEFAULT_GROUP_CAP).unwrap())
}

pub fn sl2(p: u32) -> Arc<GroupData> {
    group(&field(p, 1), &[&[&[1, 1], &[0, 1]], &[&[1, 0], &[1, 1]]])
}

pub fn problems_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/problems")
}

pub fn doc_path(name: &str) -> PathBuf {
    problems_dir().join(format!("{name}.json"))
}

pub fn load_problem(name: &str) -> Problem {
    let text = std::fs::read_to_string(doc_path(name)).unwrap();
    let doc = ProblemDoc::parse(&text).unwrap();
    Problem::load(&doc, Settings::default()).unwrap()
}

/// A suite group with its defining module and every irreducible over the
/// group field.
pub struct Suite {
    pub name: String,
    pub group: Arc<GroupData>,
    pub v: Rep,
    pub irreducibles: Vec<CertifiedIrreducible>,
}

impl Suite {
    pub fn load(name: &str) -> Suite {
        let problem = load_problem(name);
        let irreducibles = distinct_irreducibles(&problem.group, 1).unwrap();
        Suite { name: name.to_string(), group: problem.group, v: problem.v, irreducibles }
    }

    pub fn coprime(&self) -> bool {
        !self.group.order().is_multiple_of(self.group.field().p() as usize)
    }
}

pub fn sweep() -> Vec<Suite> {
    SWEEP.iter().map(|n| Suite::load(n)).collect()
}

/// Number of conjugacy classes of elements of order prime to `p`, computed
/// from the multiplication table alone.
pub fn p_regular_classes(group: &GroupData) -> usize {
    let p = group.field().p() as usize;
    let n = group.order();
    let mut seen = vec![false; n];
    let mut count = 0;
    for g in 0..n {
        if seen[g] {
            continue;
        }
        for h in 0..n {
            seen[group.mul(group.mul(h, g), group.inverse(h))] = true;
        }
        if !group.element_order(g).is_multiple_of(p) {
            count += 1;
        }
    }
    count
}

/// Dimension of the smallest subspace containing `v` and stable under
/// `gens`, by naive closure.
pub fn closure_dim(v: &[FieldElem], gens: &[&Mat], field: &FieldSpec) -> usize {
    let mut basis = EchelonBasis::new(field, v.len());
    let mut queue = vec![v.to_vec()];
    basis.insert(v);
    while let Some(x) = queue.pop() {
        for g in gens {
            let y = g.mul_vec(&x).unwrap();
            if basis.insert(&y) {
                queue.push(y);
            }
        }
    }
    basis.rank()
}

/// Irreducibility by exhaustive spinning; `None` when the space is too big.
pub fn brute_irreducible(r: &Rep, limit: u64) -> Option<bool> {
    let f = r.field();
    let q = f.size() as u64;
    let n = r.dim();
    let total = q.checked_pow(n as u32)?;
    if total > limit {
        return None;
    }
    let gens = r.generator_images();
    for code in 1..total {
        let mut c = code;
        let v: Vec<FieldElem> = (0..n)
            .map(|_| {
                let x = f.elem((c % q) as u32).unwrap();
                c /= q;
                x
            })
            .collect();
        if closure_dim(&v, &gens, f) < n {
            return Some(false);
        }
    }
    Some(true)
}

pub fn fixed_runner(cases: u32, seed: u8) -> TestRunner {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &[seed; 32]))
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn case(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

// --- field oracle: schoolbook polynomials over Z_p ---

fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn poly_mod(mut a: Vec<u32>, m: &[u32], p: u32) -> Vec<u32> {
    let d = m.len() - 1;
    poly_trim(&mut a);
    while a.len() > d {
        let lead = a[a.len() - 1];
        let shift = a.len() - 1 - d;
        for (k, &c) in m.iter().enumerate() {
            a[shift + k] = (a[shift + k] + p * p - lead * c % p) % p;
        }
        poly_trim(&mut a);
    }
    a
}

fn poly_times(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut out = vec![0; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    out
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut code: u32, p: u32, f: u32) -> Vec<u32> {
    (0..f)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

fn oracle_mul(k: &FieldSpec, a: u32, b: u32) -> u32 {
    let (p, f) = (k.p(), k.degree());
    let prod = poly_times(&decode(a, p, f), &decode(b, p, f), p);
    encode(&poly_mod(prod, k.modulus(), p), p)
}

/// Monic irreducible by trial division over all monic divisors of degree
/// at most half.
fn oracle_irreducible(m: &[u32], p: u32) -> bool {
    let d = m.len() - 1;
    for deg in 1..=d / 2 {
        for code in 0..p.pow(deg as u32) {
            let mut div = decode(code, p, deg as u32);
            div.push(1);
            if poly_mod(m.to_vec(), &div, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lex-min monic irreducible of degree f, coefficients compared from the
/// constant term up.
fn oracle_default_modulus(p: u32, f: u32) -> Vec<u32> {
    let mut candidates: Vec<Vec<u32>> = (0..p.pow(f))
        .map(|code| {
            let mut m = decode(code, p, f);
            m.push(1);
            m
        })
        .filter(|m| oracle_irreducible(m, p))
        .collect();
    candidates.sort();
    candidates.swap_remove(0)
}

const AXIOM_FIELDS: [(u32, u32); 11] =
    [(2, 1), (3, 1), (7, 1), (13, 1), (2, 3), (3, 2), (5, 2), (2, 4), (3, 4), (2, 8), (3, 5)];

pub fn field_axioms() -> Check {
    for (p, f) in AXIOM_FIELDS {
        let k = field(p, f);
        let again = make_field(p, f, None).map_err(|e| e.to_string())?;
        ensure(k == again && k.modulus() == again.modulus(), || format!("GF({p}^{f}) not deterministic"))?;
        if f > 1 {
            let m = k.modulus().to_vec();
            ensure(m.len() == f as usize + 1 && m[f as usize] == 1, || {
                format!("modulus {m:?} not monic of degree {f}")
            })?;
            ensure(m == oracle_default_modulus(p, f), || {
                format!("modulus {m:?} of GF({p}^{f}) is not the lex-min irreducible")
            })?;
        }
        let q = k.size();
        let el = |c: u32| k.elem(c).unwrap();
        if q <= 81 {
            for a in 0..q {
                let x = el(a);
                ensure(k.pow(x, q as u64) == x, || format!("a^q != a for {a} in GF({q})"))?;
                if a != 0 {
                    ensure(k.mul(x, k.inv(x).unwrap()) == k.one(), || format!("a·a⁻¹ != 1 for {a} in GF({q})"))?;
                }
                for b in 0..q {
                    let y = el(b);
                    ensure(k.mul(x, y).code() == oracle_mul(&k, a, b), || format!("{a}·{b} wrong in GF({q})"))?;
                    let sum: Vec<u32> = decode(a, p, f).iter().zip(decode(b, p, f)).map(|(s, t)| (s + t) % p).collect();
                    ensure(k.add(x, y).code() == encode(&sum, p), || format!("{a}+{b} wrong in GF({q})"))?;
                }
            }
        } else {
            ensure(k.inv(k.zero()).is_err(), || "zero is invertible".into())?;
        }
        let mut runner = fixed_runner(256, 1);
        runner
            .run(&(0..q, 0..q, 0..q), |(a, b, c)| {
                let (x, y, z) = (el(a), el(b), el(c));
                case(k.add(k.add(x, y), z) == k.add(x, k.add(y, z)), || "additive associativity".into())?;
                case(k.mul(k.mul(x, y), z) == k.mul(x, k.mul(y, z)), || "multiplicative associativity".into())?;
                case(k.mul(x, y) == k.mul(y, x) && k.add(x, y) == k.add(y, x), || "commutativity".into())?;
                case(k.mul(x, k.add(y, z)) == k.add(k.mul(x, y), k.mul(x, z)), || "distributivity".into())?;
                case(k.mul_add(x, y, z) == k.add(x, k.mul(y, z)), || "mul_add".into())?;
                case(k.sub(k.add(x, y), y) == x && k.add(x, k.neg(x)).is_zero(), || "subtraction".into())?;
                case(k.mul(x, y).code() == oracle_mul(&k, a, b), || format!("{a}·{b} disagrees with the oracle"))?;
                let frob = |u: FieldElem| k.pow(u, p as u64);
                case(frob(k.add(x, y)) == k.add(frob(x), frob(y)), || "Frobenius is additive".into())?;
                case(k.pow(x, q as u64) == x, || "a^q != a".into())?;
                if b != 0 {
                    case(k.div(k.mul(x, y), y).unwrap() == x, || "division".into())?;
                    case(k.mul(y, k.inv(y).unwrap()) == k.one(), || "inverse".into())?;
                }
                Ok(())
            })
            .map_err(|e| format!("GF({p}^{f}): {e}"))?;
    }
    Ok(())
}

const LINALG_FIELDS: [(u32, u32); 6] = [(2, 1), (3, 1), (5, 1), (7, 1), (2, 2), (3, 2)];

fn random_mat(k: &FieldSpec, rows: usize, cols: usize, codes: &[u32]) -> Mat {
    let q = k.size();
    let data = (0..rows * cols).map(|i| k.elem(codes[i] % q).unwrap()).collect();
    Mat::new(k, rows, cols, data).unwrap()
}

pub fn rank_nullity() -> Check {
    let fields: Vec<FieldSpec> = LINALG_FIELDS.iter().map(|&(p, f)| field(p, f)).collect();
    let strategy = (0..fields.len(), 1usize..9, 1usize..9, prop::collection::vec(any::<u32>(), 64), any::<bool>());
    fixed_runner(300, 2)
        .run(&strategy, |(fi, r, c, codes, sparse)| {
            let k = &fields[fi];
            // Sparse draws keep rank deficiency common.
            let codes: Vec<u32> =
                if sparse { codes.iter().map(|&x| if x % 3 == 0 { x } else { 0 }).collect() } else { codes };
            let m = random_mat(k, r, c, &codes);
            let rr = m.rref();
            let null = m.null_space();
            case(rr.rank + null.len() == c, || format!("rank {} + nullity {} != {c}", rr.rank, null.len()))?;
            for x in &null {
                case(m.mul_vec(x).unwrap().iter().all(|e| e.is_zero()), || "null vector not annihilated".into())?;
            }
            if !null.is_empty() {
                let stacked = Mat::from_rows(k, &null).unwrap();
                case(stacked.rank() == null.len(), || "null basis dependent".into())?;
            }
            case(rr.matrix.rref().matrix == rr.matrix, || "rref not idempotent".into())?;
            case(m.transpose().rank() == rr.rank, || "row rank != column rank".into())?;
            case(m.vstack(&rr.matrix).unwrap().rank() == rr.rank, || "rref changed the row space".into())?;
            for (row, &col) in rr.pivots.iter().enumerate() {
                case(rr.matrix.get(row, col) == k.one(), || "pivot not normalised".into())?;
            }
            if r == c {
                match m.inverse() {
                    Some(inv) => case(m.mul(&inv).unwrap() == Mat::identity(k, r), || "bad inverse".into())?,
                    None => case(rr.rank < r, || "full-rank matrix has no inverse".into())?,
                }
            }
            Ok(())
        })
        .map_err(|e| e.to_string())
}

/// Small groups with modules of dimension 2 and 3 for the functor checks.
pub fn functor_corpus() -> Vec<(String, Rep)> {
    let f7 = field(7, 1);
    let s3 = group(&f7, &[&[&[0, 1], &[1, 0]], &[&[0, 6], &[1, 6]]]);
    let perm = group(&f7, &[&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]], &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]]]);
    let diag = group(&field(13, 1), &[&[&[2, 0, 0], &[0, 3, 0], &[0, 0, 12]]]);
    let mut out = vec![
        ("S3/GF(7)".to_string(), Rep::natural(&s3)),
        ("S3 permutation/GF(7)".to_string(), Rep::natural(&perm)),
        ("diagonal/GF(13)".to_string(), Rep::natural(&diag)),
        ("SL2(3)".to_string(), Rep::natural(&sl2(3))),
    ];
    for name in ["q8_gf5", "c3_gf4_ext", "sl2_2_gf2"] {
        out.push((name.to_string(), load_problem(name).v));
    }
    out
}

pub fn sym_power_homomorphism() -> Check {
    for (name, v) in functor_corpus() {
        let g = v.group().clone();
        let n = g.order();
        if n > 50 {
            continue;
        }
        let f = v.field().clone();
        let identity = g.index_of(&Mat::identity(&f, v.dim())).ok_or("identity missing")?;
        ensure(sym_power(&v, 1).images() == v.images(), || format!("{name}: Sym^1 differs from V"))?;
        let s0 = sym_power(&v, 0);
        ensure(s0.dim() == 1 && s0.images().iter().all(|m| *m == Mat::identity(&f, 1)), || {
            format!("{name}: Sym^0 not trivial")
        })?;
        for m in 0..=10 {
            let s = sym_power(&v, m);
            let basis = MonomialBasis::new(v.dim(), m);
            ensure(s.image(identity) == &Mat::identity(&f, s.dim()), || format!("{name}: Sym^{m}(1) != I"))?;
            for a in 0..n {
                for b in 0..n {
                    let lhs = s.image(a).mul(s.image(b)).unwrap();
                    if lhs != *s.image(g.mul(a, b)) {
                        return Err(format!("{name}: Sym^{m} fails on ({a},{b})"));
                    }
                }
                // Diagonal elements act diagonally with monomial eigenvalues.
                let x = g.element(a);
                let diagonal = (0..v.dim()).all(|r| (0..v.dim()).all(|c| r == c || x.get(r, c).is_zero()));
                if diagonal {
                    for (idx, alpha) in basis.exponents().iter().enumerate() {
                        let eig = alpha
                            .iter()
                            .enumerate()
                            .fold(f.one(), |acc, (i, &e)| f.mul(acc, f.pow(x.get(i, i), e as u64)));
                        for row in 0..s.dim() {
                            let want = if row == idx { eig } else { f.zero() };
                            ensure(s.image(a).get(row, idx) == want, || {
                                format!("{name}: Sym^{m} of diagonal element {a}")
                            })?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn poly_add(a: &PolyVec, b: &PolyVec) -> PolyVec {
    let f = a.field();
    let coeffs = a.coeffs().iter().zip(b.coeffs()).map(|(&x, &y)| f.add(x, y)).collect();
    PolyVec::new(f, a.basis().clone(), coeffs).unwrap()
}

fn random_poly(v: &Rep, degree: usize, codes: &[u32]) -> PolyVec {
    let f = v.field();
    let basis = MonomialBasis::new(v.dim(), degree);
    let coeffs = (0..basis.len()).map(|i| f.elem(codes[i % codes.len()] % f.size()).unwrap()).collect();
    PolyVec::new(f, basis, coeffs).unwrap()
}

pub fn apply_to_poly_automorphism() -> Check {
    let corpus = functor_corpus();
    let strategy = (
        0..corpus.len(),
        any::<usize>(),
        any::<usize>(),
        0usize..5,
        0usize..5,
        prop::collection::vec(any::<u32>(), 1..40),
        prop::collection::vec(any::<u32>(), 1..40),
    );
    fixed_runner(200, 3)
        .run(&strategy, |(ci, g0, h0, da, db, ca, cb)| {
            let (name, v) = &corpus[ci];
            let grp = v.group();
            let (g, h) = (g0 % grp.order(), h0 % grp.order());
            let a = random_poly(v, da, &ca);
            let b = random_poly(v, db, &cb);
            let b2 = random_poly(v, da, &cb);
            let act = |x: usize, p: &PolyVec| apply_to_poly(x, p, v).unwrap();
            let prod = poly_mul(&a, &b).unwrap();
            case(act(g, &prod) == poly_mul(&act(g, &a), &act(g, &b)).unwrap(), || {
                format!("{name}: not multiplicative")
            })?;
            case(act(g, &poly_add(&a, &b2)) == poly_add(&act(g, &a), &act(g, &b2)), || {
                format!("{name}: not additive")
            })?;
            case(act(g, &act(h, &a)) == act(grp.mul(g, h), &a), || format!("{name}: not an action"))?;
            let s = sym_power(v, da);
            let by_matrix = s.image(g).mul_vec(a.coeffs()).unwrap();
            case(act(g, &a).coeffs() == by_matrix.as_slice(), || format!("{name}: disagrees with Sym^{da} matrix"))?;
            let w: Vec<FieldElem> = a.coeffs().iter().cycle().take(v.dim()).copied().collect();
            let form = PolyVec::linear_form(v.field(), &w);
            let moved = PolyVec::linear_form(v.field(), &v.image(g).mul_vec(&w).unwrap());
            case(act(g, &form) == moved, || format!("{name}: linear forms move by the matrix"))?;
            Ok(())
        })
        .map_err(|e| e.to_string())
}

pub fn coset_regularity() -> Check {
    let mut groups: Vec<(String, Arc<GroupData>)> =
        SWEEP.iter().map(|n| (n.to_string(), load_problem(n).group)).collect();
    groups.push(("SL2(5)".into(), sl2(5)));
    for (name, g) in groups {
        let z = g.center();
        let cos = g.cosets();
        let (n, zo) = (g.num_cosets(), g.center_order());
        ensure(n * zo == g.order() && cos.transversal.len() == n, || format!("{name}: |G| != N|Z|"))?;
        let f = g.field();
        let lambda = z.lambda;
        ensure(f.mult_order(lambda).unwrap() as usize == zo, || format!("{name}: λ has wrong order"))?;
        for (t, &e) in z.powers.iter().enumerate() {
            ensure(*g.element(e) == Mat::scalar(f, g.dim(), f.pow(lambda, t as u64)), || {
                format!("{name}: z^{t} wrong")
            })?;
        }
        let scalars = (0..g.order()).filter(|&x| g.element(x).as_scalar().is_some()).count();
        ensure(scalars == zo, || format!("{name}: Z is not all scalars"))?;
        for h in 0..g.order() {
            let c = cos.coset_of[h];
            let s = cos.z_exponent[h];
            ensure(g.mul(cos.transversal[c], z.powers[s]) == h, || format!("{name}: h != rep·z^s for {h}"))?;
        }
        for (c, &r) in cos.transversal.iter().enumerate() {
            ensure(cos.coset_of[r] == c && cos.z_exponent[r] == 0, || format!("{name}: transversal element {r}"))?;
        }
        let mut hits = vec![vec![0usize; n]; n];
        for x in 0..g.order() {
            let image: Vec<usize> = cos.transversal.iter().map(|&r| cos.coset_of[g.mul(x, r)]).collect();
            let mut sorted = image.clone();
            sorted.sort_unstable();
            ensure(sorted == (0..n).collect::<Vec<_>>(), || format!("{name}: element {x} does not permute cosets"))?;
            let fixed = image.iter().enumerate().filter(|(c, &d)| *c == d).count();
            let central = g.is_central(x);
            ensure(if central { fixed == n } else { fixed == 0 }, || {
                format!("{name}: element {x} has {fixed} fixed cosets")
            })?;
            for (c, &d) in image.iter().enumerate() {
                hits[c][d] += 1;
            }
        }
        ensure(hits.iter().flatten().all(|&k| k == zo), || format!("{name}: action of G/Z is not regular"))?;
    }
    Ok(())
}

/// Modules for the seed-independence check, with the expected verdict.
pub fn meataxe_corpus() -> Vec<(String, Rep, bool)> {
    let f7 = field(7, 1);
    let s3 = group(&f7, &[&[&[0, 1], &[1, 0]], &[&[0, 6], &[1, 6]]]);
    let sign = paired_rep(&s3, &[mat(&f7, &[&[6]]), mat(&f7, &[&[1]])]).unwrap();
    let perm = paired_rep(
        &s3,
        &[mat(&f7, &[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]), mat(&f7, &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]])],
    )
    .unwrap();
    let f2 = field(2, 1);
    let c3 = group(&f2, &[&[&[0, 1], &[1, 1]]]);
    let unipotent = group(&field(3, 1), &[&[&[1, 1], &[0, 1]]]);
    let g3 = sl2(3);
    let v3 = Rep::natural(&g3);
    let g5 = sl2(5);
    let v5 = Rep::natural(&g5);
    let q8 = load_problem("q8_gf5").v;
    let mut out = vec![
        ("S3 natural".into(), Rep::natural(&s3), true),
        ("S3 sign".into(), sign, true),
        ("S3 permutation".into(), perm, false),
        ("C3/GF(2) natural".into(), Rep::natural(&c3), true),
        ("C3/GF(2) regular".into(), Rep::regular(&c3), false),
        ("C3/GF(4) natural".into(), Rep::natural(&c3).extend_scalars(2).unwrap(), false),
        ("unipotent C3".into(), Rep::natural(&unipotent), false),
        ("Q8 natural".into(), q8.clone(), true),
        ("Q8 regular".into(), Rep::regular(q8.group()), false),
    ];
    for m in 0..=4 {
        out.push((format!("SL2(3) Sym^{m}"), sym_power(&v3, m), m <= 2));
    }
    for m in [2, 4, 5] {
        out.push((format!("SL2(5) Sym^{m}"), sym_power(&v5, m), m <= 4));
    }
    out
}

pub fn meataxe_seed_independence() -> Check {
    for (name, r, expected) in meataxe_corpus() {
        if let Some(truth) = brute_irreducible(&r, 5000) {
            ensure(truth == expected, || format!("{name}: exhaustive oracle says irreducible = {truth}"))?;
        }
        for seed in 1..=6u64 {
            let verdict = is_irreducible(&r, seed).map_err(|e| format!("{name} seed {seed}: {e}"))?;
            match verdict {
                Verdict::Irreducible(_) => ensure(expected, || format!("{name}: seed {seed} claims irreducible"))?,
                Verdict::Split(s) => {
                    ensure(!expected, || format!("{name}: seed {seed} claims a split"))?;
                    let b = &s.submodule_basis;
                    let d = b.cols();
                    ensure(d > 0 && d < r.dim() && b.rank() == d, || format!("{name}: improper submodule"))?;
                    for g in r.images() {
                        let moved = g.mul(b).unwrap();
                        ensure(b.hstack(&moved).unwrap().rank() == d, || format!("{name}: submodule not stable"))?;
                    }
                    ensure(s.submodule.dim() + s.quotient.dim() == r.dim(), || {
                        format!("{name}: dimensions do not add up")
                    })?;
                    ensure(s.submodule.is_homomorphism() && s.quotient.is_homomorphism(), || {
                        format!("{name}: pieces are not modules")
                    })?;
                }
            }
        }
    }
    Ok(())
}

/// Invariance of the certificate polynomials under the whole group, the
/// Z-scalar action of induced modules and intertwining of hom bases.
pub fn certificate_invariants() -> Check {
    for name in ["s3_gf7", "sl2_3_gf3", "q8_gf5", "sl2_2_gf2"] {
        let suite = Suite::load(name);
        let g = &suite.group;
        for t in 0..g.center_order() {
            let ind = induced_from_center(g, t).map_err(|e| e.to_string())?;
            ensure(ind.is_homomorphism(), || format!("{name}: induced module λ^{t} is not a module"))?;
            let f = g.field();
            let want = Mat::scalar(f, ind.dim(), f.pow(g.center().lambda, t as u64));
            ensure(*ind.image(g.center().z_generator_index) == want, || format!("{name}: z on Ind(λ^{t})"))?;
        }
        for w in &suite.irreducibles {
            for u in &suite.irreducibles {
                let h = hom_space(w.rep(), u.rep()).map_err(|e| e.to_string())?;
                ensure(h.basis.iter().all(|x| intertwines_all(w.rep(), u.rep(), x)), || {
                    format!("{name}: hom basis does not intertwine")
                })?;
            }
            if g.num_cosets() == 1 {
                continue;
            }
            for k in 0..=1 {
                let cert = assemble(w, &suite.v, k).map_err(|e| e.to_string())?;
                let step = FieldEmbedding::find(g.field(), &cert.field).map_err(|e| e.to_string())?;
                let v_l = suite.v.extend_along(&step).map_err(|e| e.to_string())?;
                let b = cert.b_generator.as_ref().ok_or("missing B")?;
                let c = cert.c_generator.as_ref().ok_or("missing C")?;
                for x in 0..g.order() {
                    let bx = apply_to_poly(x, b, &v_l).map_err(|e| e.to_string())?;
                    ensure(
                        Mat::from_rows(&cert.field, &[bx.coeffs().to_vec(), b.coeffs().to_vec()]).unwrap().rank() == 1,
                        || format!("{name}: B line moved by {x}"),
                    )?;
                    ensure(apply_to_poly(x, c, &v_l).map_err(|e| e.to_string())? == *c, || {
                        format!("{name}: C moved by {x}")
                    })?;
                }
                ensure(cert.all_verified(), || format!("{name}: certificate flags {:?}", cert.flags))?;
            }
        }
    }
    Ok(())
}

pub type Property = (&'static str, fn() -> Check);

pub const PROPERTY_SUITES: [Property; 7] = [
    ("field axioms", field_axioms),
    ("rank-nullity", rank_nullity),
    ("sym_power homomorphism", sym_power_homomorphism),
    ("apply_to_poly ring automorphism", apply_to_poly_automorphism),
    ("coset-permutation regularity", coset_regularity),
    ("meataxe seed independence", meataxe_seed_independence),
    ("certificate invariants", certificate_invariants),
];
