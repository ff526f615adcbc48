//! Irreducibility testing and splitting of modules (Norton's criterion).
//!
//! Random algebra elements are sums of four generator words with random
//! nonzero coefficients; randomness comes from [`Lcg`] so verdicts and
//! certificates are reproducible from the seed alone.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldSpec};
use crate::groups::GroupData;
use crate::homs::hom_space;
use crate::linalg::{EchelonBasis, Mat};
use crate::reps::Rep;

/// Draw budget before a test gives up.
pub const DEFAULT_BUDGET: usize = 64;
/// Kernels with at most this many lines are spun exhaustively.
pub const MAX_KERNEL_LINES: u64 = 4096;
const WORDS_PER_ELEMENT: usize = 4;
const MAX_WORD_LEN: u64 = 6;

/// 64-bit linear congruential generator with Knuth's MMIX constants.
/// Outputs are taken from the high 31 bits of the updated state.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub const MULTIPLIER: u64 = 6_364_136_223_846_793_005;
    pub const INCREMENT: u64 = 1_442_695_040_888_963_407;

    pub fn new(seed: u64) -> Self {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self.state.wrapping_mul(Self::MULTIPLIER).wrapping_add(Self::INCREMENT);
        (self.state >> 33) as u32
    }

    /// Uniform-ish value in `0..n` by reduction.
    pub fn below(&mut self, n: u64) -> u64 {
        u64::from(self.next_u32()) % n
    }
}

/// Smallest subspace containing `v0` stable under `gens`, as basis columns in
/// discovery order.
pub fn spin_up(v0: &[FieldElem], gens: &[&Mat], field: &FieldSpec) -> Result<Mat> {
    let dim = v0.len();
    let mut echelon = EchelonBasis::new(field, dim);
    let mut basis: Vec<Vec<FieldElem>> = Vec::new();
    if echelon.insert(v0) {
        basis.push(v0.to_vec());
    }
    let mut next = 0;
    while next < basis.len() && basis.len() < dim {
        let v = basis[next].clone();
        next += 1;
        for g in gens {
            let w = g.mul_vec(&v)?;
            if echelon.insert(&w) {
                basis.push(w);
                if basis.len() == dim {
                    break;
                }
            }
        }
    }
    Mat::from_columns(field, dim, &basis)
}

/// Replay data for a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MeataxeCertificate {
    pub seed: u64,
    /// Number of algebra elements drawn, including the decisive one.
    pub draws: usize,
    /// `(coefficient code, generator word)` summands of the decisive element.
    pub words: Vec<(u32, Vec<usize>)>,
    /// Code of the scalar `c` added to the element to make it singular.
    pub shift: u32,
    pub kernel_dim: usize,
    pub kernel_lines_spun: u64,
    /// Kernel vector of the transposed element spun on the dual.
    pub dual_vector: Vec<u32>,
}

impl MeataxeCertificate {
    fn trivial(seed: u64) -> Self {
        MeataxeCertificate {
            seed,
            draws: 0,
            words: Vec::new(),
            shift: 0,
            kernel_dim: 0,
            kernel_lines_spun: 0,
            dual_vector: Vec::new(),
        }
    }
}

/// A module whose irreducibility has been certified.
#[derive(Clone, Debug)]
pub struct CertifiedIrreducible {
    rep: Rep,
    certificate: MeataxeCertificate,
}

impl CertifiedIrreducible {
    pub fn rep(&self) -> &Rep {
        &self.rep
    }

    pub fn certificate(&self) -> &MeataxeCertificate {
        &self.certificate
    }

    pub fn into_rep(self) -> Rep {
        self.rep
    }
}

/// A proper nonzero submodule and the induced actions.
#[derive(Clone, Debug)]
pub struct SplitResult {
    /// `dim × k` matrix whose columns span the submodule.
    pub submodule_basis: Mat,
    pub submodule: Rep,
    pub quotient: Rep,
}

#[derive(Clone, Debug)]
pub enum Verdict {
    Irreducible(CertifiedIrreducible),
    Split(SplitResult),
}

impl Verdict {
    pub fn is_irreducible(&self) -> bool {
        matches!(self, Verdict::Irreducible(_))
    }
}

fn random_element(r: &Rep, rng: &mut Lcg) -> (Mat, Vec<(u32, Vec<usize>)>) {
    let f = r.field();
    let gens = r.generator_images();
    let mut theta = Mat::zeros(f, r.dim(), r.dim());
    let mut words = Vec::with_capacity(WORDS_PER_ELEMENT);
    for _ in 0..WORDS_PER_ELEMENT {
        let len = 1 + rng.below(MAX_WORD_LEN) as usize;
        let word: Vec<usize> = (0..len).map(|_| rng.below(gens.len() as u64) as usize).collect();
        let coeff = f.elem(1 + rng.below(u64::from(f.size()) - 1) as u32).expect("code in range");
        let mut prod = gens[word[0]].clone();
        for &s in &word[1..] {
            prod = prod.mul(gens[s]).expect("square");
        }
        theta = theta.add(&prod.scale(coeff)).expect("square");
        words.push((coeff.code(), word));
    }
    (theta, words)
}

fn line_count(q: u64, k: usize) -> Option<u64> {
    // (q^k - 1)/(q - 1), saturating.
    let mut total: u64 = 0;
    for _ in 0..k {
        total = total.checked_mul(q)?.checked_add(1)?;
    }
    Some(total)
}

/// Normalised representatives (first nonzero coefficient 1) of the lines of
/// the column span of `kernel`, as vectors in the ambient space.
fn kernel_lines(kernel: &[Vec<FieldElem>], f: &FieldSpec) -> Vec<Vec<FieldElem>> {
    let k = kernel.len();
    let q = f.size();
    let dim = kernel.first().map_or(0, |v| v.len());
    let mut out = Vec::new();
    for lead in 0..k {
        let tail = k - lead - 1;
        let combos = u64::from(q).pow(tail as u32);
        for mut code in 0..combos {
            let mut v = kernel[lead].clone();
            for basis in &kernel[lead + 1..] {
                let c = f.elem((code % u64::from(q)) as u32).expect("code in range");
                code /= u64::from(q);
                if !c.is_zero() {
                    for (x, &b) in v.iter_mut().zip(basis) {
                        *x = f.mul_add(*x, c, b);
                    }
                }
            }
            debug_assert_eq!(v.len(), dim);
            out.push(v);
        }
    }
    out
}

/// Block-triangularise along the stable subspace spanned by `basis` columns.
fn split_along(r: &Rep, basis: Mat) -> Result<SplitResult> {
    let f = r.field();
    let dim = r.dim();
    let k = basis.cols();
    let mut echelon = EchelonBasis::new(f, dim);
    let mut cols = basis.columns();
    for c in &cols {
        echelon.insert(c);
    }
    for i in 0..dim {
        let mut e = vec![f.zero(); dim];
        e[i] = f.one();
        if echelon.insert(&e) {
            cols.push(e);
        }
    }
    let t = Mat::from_columns(f, dim, &cols)?;
    let conj = r.change_basis(&t)?;
    for m in conj.images() {
        if !m.block(k, dim, 0, k).is_zero() {
            return Err(Error::Contract("split subspace is not invariant".into()));
        }
    }
    Ok(SplitResult {
        submodule: conj.diagonal_block(0, k),
        quotient: conj.diagonal_block(k, dim),
        submodule_basis: basis,
    })
}

/// Annihilator in `V` of a subspace of the dual; stable when the subspace is
/// stable under the transposed generators.
fn annihilator(dual_span: &Mat) -> Mat {
    let f = dual_span.field();
    let ns = dual_span.transpose().null_space();
    Mat::from_columns(f, dual_span.rows(), &ns).expect("consistent sizes")
}

/// Norton's irreducibility test with a budget of [`DEFAULT_BUDGET`] draws.
pub fn is_irreducible(r: &Rep, seed: u64) -> Result<Verdict> {
    is_irreducible_with_budget(r, seed, DEFAULT_BUDGET)
}

pub fn is_irreducible_with_budget(r: &Rep, seed: u64, budget: usize) -> Result<Verdict> {
    let dim = r.dim();
    if dim == 0 {
        return Err(Error::Contract("zero-dimensional module".into()));
    }
    if dim == 1 {
        return Ok(Verdict::Irreducible(CertifiedIrreducible {
            rep: r.clone(),
            certificate: MeataxeCertificate::trivial(seed),
        }));
    }
    let f = r.field().clone();
    let gens = r.generator_images();
    let gens_t: Vec<Mat> = gens.iter().map(|m| m.transpose()).collect();
    let gens_t_ref: Vec<&Mat> = gens_t.iter().collect();
    let mut rng = Lcg::new(seed);
    let small_space = line_count(u64::from(f.size()), dim).is_some_and(|n| n <= MAX_KERNEL_LINES);

    for draw in 1..=budget {
        let (theta, words) = random_element(r, &mut rng);
        let mut chosen = None;
        for c in f.elements() {
            let shifted = theta.add(&Mat::scalar(&f, dim, c))?;
            if shifted.rank() < dim {
                chosen = Some((shifted, c));
                break;
            }
        }
        let (theta, shift, words) = match chosen {
            Some((m, c)) => (m, c, words),
            // Nothing singular: over a small space the zero element makes the
            // test exhaustive.
            None if small_space => (Mat::zeros(&f, dim, dim), f.zero(), Vec::new()),
            None => continue,
        };
        let kernel = theta.null_space();
        let n_lines = line_count(u64::from(f.size()), kernel.len());
        let exhaustive = n_lines.is_some_and(|n| n <= MAX_KERNEL_LINES);
        let candidates = if exhaustive { kernel_lines(&kernel, &f) } else { kernel.clone() };
        for v in &candidates {
            let span = spin_up(v, &gens, &f)?;
            if span.cols() < dim {
                return Ok(Verdict::Split(split_along(r, span)?));
            }
        }
        if !exhaustive {
            continue;
        }
        let dual_kernel = theta.transpose().null_space();
        let w = &dual_kernel[0];
        let dual_span = spin_up(w, &gens_t_ref, &f)?;
        if dual_span.cols() < dim {
            return Ok(Verdict::Split(split_along(r, annihilator(&dual_span))?));
        }
        return Ok(Verdict::Irreducible(CertifiedIrreducible {
            rep: r.clone(),
            certificate: MeataxeCertificate {
                seed,
                draws: draw,
                words,
                shift: shift.code(),
                kernel_dim: kernel.len(),
                kernel_lines_spun: candidates.len() as u64,
                dual_vector: w.iter().map(|x| x.code()).collect(),
            },
        }));
    }
    Err(Error::Inconclusive(budget))
}

/// Certify `r` or fail with [`Error::Contract`] when it splits.
pub fn certify(r: &Rep, seed: u64) -> Result<CertifiedIrreducible> {
    match is_irreducible(r, seed)? {
        Verdict::Irreducible(c) => Ok(c),
        Verdict::Split(s) => Err(Error::Contract(format!(
            "module of dimension {} has a submodule of dimension {}",
            r.dim(),
            s.submodule.dim()
        ))),
    }
}

/// A simple submodule with its inclusion: `basis` (`dim r × dim S`) satisfies
/// `ρ(g)·basis = basis·ρ_S(g)`.
#[derive(Clone, Debug)]
pub struct SimpleSubmodule {
    pub module: CertifiedIrreducible,
    pub basis: Mat,
}

/// A simple quotient with its projection: `projection` (`dim Q × dim r`)
/// satisfies `projection·ρ(g) = ρ_Q(g)·projection`.
#[derive(Clone, Debug)]
pub struct SimpleQuotient {
    pub module: CertifiedIrreducible,
    pub projection: Mat,
}

pub fn simple_submodule(r: &Rep, seed: u64) -> Result<SimpleSubmodule> {
    let mut current = r.clone();
    let mut inclusion = Mat::identity(r.field(), r.dim());
    loop {
        match is_irreducible(&current, seed)? {
            Verdict::Irreducible(module) => return Ok(SimpleSubmodule { module, basis: inclusion }),
            Verdict::Split(s) => {
                inclusion = inclusion.mul(&s.submodule_basis)?;
                current = s.submodule;
            }
        }
    }
}

/// Simple submodule of the dual, dualised back. Restricting functionals to
/// that submodule is the projection.
pub fn simple_quotient(r: &Rep, seed: u64) -> Result<SimpleQuotient> {
    let sub = simple_submodule(&r.dual(), seed)?;
    let quotient = sub.module.rep().dual();
    let module = certify(&quotient, seed)?;
    Ok(SimpleQuotient { module, projection: sub.basis.transpose() })
}

/// Degree of the smallest extension over which `r` acquires an absolutely
/// irreducible simple submodule, and that submodule.
#[derive(Clone, Debug)]
pub struct SplittingData {
    pub degree: u32,
    pub submodule: SimpleSubmodule,
}

pub fn splitting_extension(r: &CertifiedIrreducible, seed: u64) -> Result<SplittingData> {
    let dim = r.rep().dim() as u32;
    for e in 1..=dim {
        let extended = r.rep().extend_scalars(e)?;
        let sub = simple_submodule(&extended, seed)?;
        if hom_space(sub.module.rep(), sub.module.rep())?.dim() == 1 {
            return Ok(SplittingData { degree: e, submodule: sub });
        }
    }
    Err(Error::Contract("no splitting extension up to the module dimension".into()))
}

/// Composition factors of `r` in discovery order (with repetition).
pub fn composition_factors(r: &Rep, seed: u64) -> Result<Vec<CertifiedIrreducible>> {
    let mut out = Vec::new();
    let mut stack = vec![r.clone()];
    while let Some(top) = stack.pop() {
        match is_irreducible(&top, seed)? {
            Verdict::Irreducible(c) => out.push(c),
            Verdict::Split(s) => {
                stack.push(s.quotient);
                stack.push(s.submodule);
            }
        }
    }
    Ok(out)
}

/// Pairwise non-isomorphic irreducibles over the group's field: the distinct
/// composition factors of the regular module, sorted by dimension and then by
/// the trace sequence over the element table.
pub fn distinct_irreducibles(group: &Arc<GroupData>, seed: u64) -> Result<Vec<CertifiedIrreducible>> {
    let factors = composition_factors(&Rep::regular(group), seed)?;
    let mut distinct: Vec<CertifiedIrreducible> = Vec::new();
    for c in factors {
        let mut seen = false;
        for d in &distinct {
            if d.rep().dim() == c.rep().dim() && hom_space(d.rep(), c.rep())?.dim() > 0 {
                seen = true;
                break;
            }
        }
        if !seen {
            distinct.push(c);
        }
    }
    let key = |c: &CertifiedIrreducible| {
        let f = c.rep().field();
        let traces: Vec<u32> = c
            .rep()
            .images()
            .iter()
            .map(|m| (0..m.rows()).fold(f.zero(), |acc, i| f.add(acc, m.get(i, i))).code())
            .collect();
        (c.rep().dim(), traces)
    };
    distinct.sort_by_cached_key(key);
    Ok(distinct)
}
