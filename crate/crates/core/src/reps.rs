//! Representations of an enumerated group and the functors the engine needs.
//!
//! Matrices act on column vectors from the left. For a group element `g`
//! with matrix `A` on `V`, the variable `x_i` maps to the linear form given by
//! column `i` of `A`, and `Sym^m(V)` is the space of degree-`m` homogeneous
//! polynomials in `x_1..x_n` with monomials in graded-lexicographic order
//! (`x_1^m` first, `x_n^m` last).

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldEmbedding, FieldSpec};
use crate::groups::GroupData;
use crate::linalg::Mat;

/// Exponent vectors of total degree `m` in `n` variables, ordered
/// lexicographically decreasing.
#[derive(Debug, PartialEq, Eq)]
pub struct MonomialBasis {
    n: usize,
    m: usize,
    exponents: Vec<Vec<u32>>,
}

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of monomials of degree `m` in `n` variables, `C(n+m-1, m)`.
pub fn monomial_count(n: usize, m: usize) -> usize {
    if n == 0 {
        return usize::from(m == 0);
    }
    binomial((n + m - 1) as u64, m as u64) as usize
}

fn exponent_vectors(n: usize, m: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return if m == 0 { vec![vec![]] } else { vec![] };
    }
    if n == 1 {
        return vec![vec![m as u32]];
    }
    let mut out = Vec::with_capacity(monomial_count(n, m));
    for first in (0..=m).rev() {
        for rest in exponent_vectors(n - 1, m - first) {
            let mut v = Vec::with_capacity(n);
            v.push(first as u32);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

type BasisCache = Mutex<HashMap<(usize, usize), Arc<MonomialBasis>>>;

fn basis_cache() -> &'static BasisCache {
    static CACHE: OnceLock<BasisCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl MonomialBasis {
    pub fn new(n: usize, m: usize) -> Arc<MonomialBasis> {
        if let Some(hit) = basis_cache().lock().unwrap().get(&(n, m)) {
            return hit.clone();
        }
        let basis = Arc::new(MonomialBasis { n, m, exponents: exponent_vectors(n, m) });
        basis_cache().lock().unwrap().entry((n, m)).or_insert(basis).clone()
    }

    pub fn variables(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn exponents(&self) -> &[Vec<u32>] {
        &self.exponents
    }

    /// Position of an exponent vector of this degree.
    pub fn index_of(&self, alpha: &[u32]) -> Option<usize> {
        if alpha.len() != self.n || alpha.iter().map(|&a| a as usize).sum::<usize>() != self.m {
            return None;
        }
        let n = self.n;
        let mut rank = 0usize;
        let mut remaining = self.m;
        for (i, &a) in alpha.iter().enumerate().take(n.saturating_sub(1)) {
            let parts = n - i - 1;
            // Vectors agreeing so far but with a larger i-th exponent come first.
            for v in (a as usize + 1)..=remaining {
                rank += monomial_count(parts, remaining - v);
            }
            remaining -= a as usize;
        }
        Some(rank)
    }
}

/// A homogeneous polynomial as a coefficient vector over a [`MonomialBasis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyVec {
    field: FieldSpec,
    basis: Arc<MonomialBasis>,
    coeffs: Vec<FieldElem>,
}

impl PolyVec {
    pub fn new(field: &FieldSpec, basis: Arc<MonomialBasis>, coeffs: Vec<FieldElem>) -> Result<Self> {
        if coeffs.len() != basis.len() {
            return Err(Error::ShapeMismatch(format!("{} coefficients for {} monomials", coeffs.len(), basis.len())));
        }
        Ok(PolyVec { field: field.clone(), basis, coeffs })
    }

    pub fn constant(field: &FieldSpec, n: usize, c: FieldElem) -> Self {
        PolyVec { field: field.clone(), basis: MonomialBasis::new(n, 0), coeffs: vec![c] }
    }

    /// The linear form `Σ w_k x_k` identified with the vector `w`.
    pub fn linear_form(field: &FieldSpec, w: &[FieldElem]) -> Self {
        PolyVec { field: field.clone(), basis: MonomialBasis::new(w.len(), 1), coeffs: w.to_vec() }
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn basis(&self) -> &Arc<MonomialBasis> {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.basis.degree()
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(self.coeffs.iter().map(|&c| self.field.to_json(c)).collect())
    }

    pub fn pow(&self, j: usize) -> Result<PolyVec> {
        let mut out = PolyVec::constant(&self.field, self.basis.variables(), self.field.one());
        for _ in 0..j {
            out = poly_mul(&out, self)?;
        }
        Ok(out)
    }
}

/// Product of homogeneous polynomials by convolution on exponent vectors.
pub fn poly_mul(a: &PolyVec, b: &PolyVec) -> Result<PolyVec> {
    if a.field != b.field {
        return Err(Error::FieldMismatch("polynomials over different fields".into()));
    }
    let n = a.basis.variables();
    if b.basis.variables() != n {
        return Err(Error::ShapeMismatch("polynomials in different variable counts".into()));
    }
    let f = &a.field;
    let basis = MonomialBasis::new(n, a.degree() + b.degree());
    let mut coeffs = vec![FieldElem::ZERO; basis.len()];
    let mut sum = vec![0u32; n];
    for (alpha, &ca) in a.basis.exponents().iter().zip(&a.coeffs) {
        if ca.is_zero() {
            continue;
        }
        for (beta, &cb) in b.basis.exponents().iter().zip(&b.coeffs) {
            if cb.is_zero() {
                continue;
            }
            for k in 0..n {
                sum[k] = alpha[k] + beta[k];
            }
            let idx = basis.index_of(&sum).expect("degree adds up");
            coeffs[idx] = f.mul_add(coeffs[idx], ca, cb);
        }
    }
    Ok(PolyVec { field: f.clone(), basis, coeffs })
}

/// A representation of an enumerated group over some extension of the
/// group's field.
#[derive(Clone, Debug)]
pub struct Rep {
    group: Arc<GroupData>,
    embedding: FieldEmbedding,
    dim: usize,
    images: Vec<Mat>,
}

impl Rep {
    /// Wraps a full element→matrix table. The caller vouches for the
    /// homomorphism property; [`Rep::is_homomorphism`] checks it.
    pub fn from_images(group: &Arc<GroupData>, embedding: FieldEmbedding, dim: usize, images: Vec<Mat>) -> Result<Rep> {
        if embedding.source() != group.field() {
            return Err(Error::FieldMismatch("embedding does not start at the group field".into()));
        }
        if images.len() != group.order() {
            return Err(Error::ShapeMismatch(format!("{} images for {} elements", images.len(), group.order())));
        }
        for m in &images {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::ShapeMismatch(format!("image is not {dim}x{dim}")));
            }
            if m.field() != embedding.target() {
                return Err(Error::FieldMismatch("image over the wrong field".into()));
            }
        }
        Ok(Rep { group: group.clone(), embedding, dim, images })
    }

    /// The defining module `V`: every element acts by its own matrix.
    pub fn natural(group: &Arc<GroupData>) -> Rep {
        Rep {
            group: group.clone(),
            embedding: FieldEmbedding::identity(group.field()),
            dim: group.dim(),
            images: group.elements().to_vec(),
        }
    }

    pub fn trivial(group: &Arc<GroupData>) -> Rep {
        let f = group.field();
        Rep {
            group: group.clone(),
            embedding: FieldEmbedding::identity(f),
            dim: 1,
            images: vec![Mat::identity(f, 1); group.order()],
        }
    }

    /// Left regular module on the basis `e_h`, `g·e_h = e_{gh}`.
    pub fn regular(group: &Arc<GroupData>) -> Rep {
        let f = group.field();
        let n = group.order();
        let images = (0..n)
            .into_par_iter()
            .map(|g| {
                let mut m = Mat::zeros(f, n, n);
                for h in 0..n {
                    m.set(group.mul(g, h), h, f.one());
                }
                m
            })
            .collect();
        Rep { group: group.clone(), embedding: FieldEmbedding::identity(f), dim: n, images }
    }

    pub fn group(&self) -> &Arc<GroupData> {
        &self.group
    }

    pub fn field(&self) -> &FieldSpec {
        self.embedding.target()
    }

    /// Embedding of the group's field into this module's field.
    pub fn embedding(&self) -> &FieldEmbedding {
        &self.embedding
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn images(&self) -> &[Mat] {
        &self.images
    }

    pub fn image(&self, g: usize) -> &Mat {
        &self.images[g]
    }

    pub fn generator_images(&self) -> Vec<&Mat> {
        self.group.generators().iter().map(|&g| &self.images[g]).collect()
    }

    /// Same group, same field and same embedding of the group's field.
    pub fn check_compatible(&self, other: &Rep) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) {
            return Err(Error::Contract("modules of different groups".into()));
        }
        if self.embedding != other.embedding {
            return Err(Error::FieldMismatch(format!(
                "modules over {} and {} (or differently embedded)",
                self.field(),
                other.field()
            )));
        }
        Ok(())
    }

    /// Exhaustive check of `ρ(a)ρ(b) = ρ(ab)` and `ρ(1) = I`.
    pub fn is_homomorphism(&self) -> bool {
        let n = self.group.order();
        if self.images[0] != Mat::identity(self.field(), self.dim) {
            return false;
        }
        (0..n).into_par_iter().all(|a| {
            (0..n)
                .all(|b| self.images[a].mul(&self.images[b]).ok().as_ref() == Some(&self.images[self.group.mul(a, b)]))
        })
    }

    /// Contragredient module, `g ↦ ρ(g^{-1})^T`.
    pub fn dual(&self) -> Rep {
        let images = (0..self.group.order()).map(|g| self.images[self.group.inverse(g)].transpose()).collect();
        Rep { group: self.group.clone(), embedding: self.embedding.clone(), dim: self.dim, images }
    }

    /// Re-encode the module along `step`, which must start at this module's
    /// field.
    pub fn extend_along(&self, step: &FieldEmbedding) -> Result<Rep> {
        if step.source() != self.field() {
            return Err(Error::FieldMismatch("extension does not start at the module's field".into()));
        }
        let embedding = self.embedding.then(step)?;
        let images = self.images.iter().map(|m| m.map_field(step)).collect::<Result<Vec<_>>>()?;
        Ok(Rep { group: self.group.clone(), embedding, dim: self.dim, images })
    }

    /// Module over `GF(q^e)` where `q` is the size of this module's field.
    pub fn extend_scalars(&self, e: u32) -> Result<Rep> {
        if e == 1 {
            return Ok(self.clone());
        }
        self.extend_along(&FieldEmbedding::extension(self.field(), e)?)
    }

    /// Re-express a module over the group's field on the field of `other`,
    /// through the same embedding `other` uses.
    pub fn extend_like(&self, other: &Rep) -> Result<Rep> {
        if self.embedding == other.embedding {
            return Ok(self.clone());
        }
        if self.field() != self.group.field() {
            return Err(Error::FieldMismatch("only modules over the group field can be re-embedded".into()));
        }
        self.extend_along(&other.embedding)
    }

    /// Whether the generator of `Z` acts as a scalar, and if so the exponent
    /// `i` with that scalar equal to `λ^i`.
    pub fn restrict_scalar_character(&self) -> Result<(bool, usize)> {
        let center = self.group.center();
        let Some(c) = self.images[center.z_generator_index].as_scalar() else {
            return Ok((false, 0));
        };
        let lambda = self.embedding.apply(center.lambda);
        let i = self.field().discrete_log(lambda, c, self.group.center_order() as u64)?;
        Ok((true, i as usize))
    }

    /// Action of the group on the invariant subspace spanned by the columns
    /// of `basis` (full column rank), in that basis.
    pub fn restrict_to(&self, basis: &Mat) -> Result<Rep> {
        let images = self
            .images
            .par_iter()
            .map(|m| {
                let moved = m.mul(basis)?;
                Mat::solve_in_span(basis, &moved)?.ok_or_else(|| Error::Contract("subspace is not invariant".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Rep { group: self.group.clone(), embedding: self.embedding.clone(), dim: basis.cols(), images })
    }

    /// Conjugate every image by an invertible change of basis `t`:
    /// `ρ'(g) = t^{-1} ρ(g) t`.
    pub fn change_basis(&self, t: &Mat) -> Result<Rep> {
        let t_inv = t.inverse().ok_or_else(|| Error::Contract("change of basis is singular".into()))?;
        let images = self.images.par_iter().map(|m| t_inv.mul(&m.mul(t)?)).collect::<Result<Vec<_>>>()?;
        Ok(Rep { group: self.group.clone(), embedding: self.embedding.clone(), dim: self.dim, images })
    }

    /// Images restricted to the diagonal block `start..end`.
    pub fn diagonal_block(&self, start: usize, end: usize) -> Rep {
        let images = self.images.iter().map(|m| m.block(start, end, start, end)).collect();
        Rep { group: self.group.clone(), embedding: self.embedding.clone(), dim: end - start, images }
    }
}

/// The module `W` defined by one matrix per generator of `group`, extended to
/// all elements along the enumeration steps. Every step that revisits an
/// element must reproduce its matrix, which certifies a homomorphism.
pub fn paired_rep(group: &Arc<GroupData>, generator_images: &[Mat]) -> Result<Rep> {
    let f = group.field();
    if generator_images.len() != group.generators().len() {
        return Err(Error::Contract(format!(
            "{} images for {} generators",
            generator_images.len(),
            group.generators().len()
        )));
    }
    let dim = generator_images.first().map_or(0, |m| m.rows());
    for (k, m) in generator_images.iter().enumerate() {
        if !m.is_square() || m.rows() != dim || dim == 0 {
            return Err(Error::ShapeMismatch(format!("image {k} is not a nonempty square of size {dim}")));
        }
        if m.field() != f {
            return Err(Error::FieldMismatch(format!("image {k} is over {}", m.field())));
        }
    }
    let n = group.order();
    let mut images: Vec<Mat> = Vec::with_capacity(n);
    images.push(Mat::identity(f, dim));
    for e in 1..n {
        let (parent, s) = group.parent(e).expect("non-identity elements have a parent");
        images.push(images[parent].mul(&generator_images[s])?);
    }
    for a in 0..n {
        for (s, w) in generator_images.iter().enumerate() {
            let b = group.right_mul_gen(a, s);
            if images[a].mul(w)? != images[b] {
                return Err(Error::NotARepresentation(format!(
                    "element {a} times generator {s} disagrees with element {b}"
                )));
            }
        }
    }
    Rep::from_images(group, FieldEmbedding::identity(f), dim, images)
}

/// Precomputed `up[d][idx][k]`: index in degree `d+1` of monomial `idx` of
/// degree `d` times `x_k`.
fn raise_tables(n: usize, m: usize) -> Vec<Vec<Vec<usize>>> {
    (0..m)
        .map(|d| {
            let lower = MonomialBasis::new(n, d);
            let upper = MonomialBasis::new(n, d + 1);
            lower
                .exponents()
                .iter()
                .map(|alpha| {
                    (0..n)
                        .map(|k| {
                            let mut beta = alpha.clone();
                            beta[k] += 1;
                            upper.index_of(&beta).expect("raised monomial")
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}

fn sym_power_matrix(field: &FieldSpec, g: &Mat, m: usize, raise: &[Vec<Vec<usize>>]) -> Mat {
    let n = g.rows();
    if m == 0 {
        return Mat::identity(field, 1);
    }
    // cols[idx] = coefficient vector of g·x^alpha for alpha of the current degree.
    let mut cols: Vec<Vec<FieldElem>> = (0..n).map(|i| g.column(i)).collect();
    for (d, raise_d) in raise.iter().enumerate().take(m).skip(1) {
        let upper = MonomialBasis::new(n, d + 1);
        let mut next = Vec::with_capacity(upper.len());
        for beta in upper.exponents() {
            let i = beta.iter().position(|&b| b > 0).expect("degree is positive");
            let mut alpha = beta.clone();
            alpha[i] -= 1;
            let lower_idx = MonomialBasis::new(n, d).index_of(&alpha).expect("lowered monomial");
            let src = &cols[lower_idx];
            let mut out = vec![FieldElem::ZERO; upper.len()];
            for (idx, &c) in src.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (k, &t) in raise_d[idx].iter().enumerate().take(n) {
                    let l = g.get(k, i);
                    if l.is_zero() {
                        continue;
                    }
                    out[t] = field.mul_add(out[t], c, l);
                }
            }
            next.push(out);
        }
        cols = next;
    }
    Mat::from_columns(field, cols.first().map_or(0, |c| c.len()), &cols).expect("square")
}

/// `Sym^m` of a module, on [`MonomialBasis`]`(dim, m)`.
pub fn sym_power(v: &Rep, m: usize) -> Rep {
    let f = v.field().clone();
    let raise = raise_tables(v.dim, m);
    let images: Vec<Mat> = v.images.par_iter().map(|g| sym_power_matrix(&f, g, m, &raise)).collect();
    let dim = monomial_count(v.dim, m);
    Rep { group: v.group.clone(), embedding: v.embedding.clone(), dim, images }
}

/// Substitute the linear forms of element `g` into `p` and re-expand.
pub fn apply_to_poly(g: usize, p: &PolyVec, v_rep: &Rep) -> Result<PolyVec> {
    let n = v_rep.dim;
    if p.basis.variables() != n {
        return Err(Error::ShapeMismatch("polynomial variable count differs from the module dimension".into()));
    }
    if p.field != *v_rep.field() {
        return Err(Error::FieldMismatch("polynomial and module over different fields".into()));
    }
    let f = &p.field;
    let mat = &v_rep.images[g];
    let forms: Vec<PolyVec> = (0..n).map(|i| PolyVec::linear_form(f, &mat.column(i))).collect();
    let m = p.degree();
    // powers[i][a] = (g·x_i)^a
    let mut powers: Vec<Vec<PolyVec>> = Vec::with_capacity(n);
    for form in &forms {
        let mut row = vec![PolyVec::constant(f, n, f.one())];
        for a in 1..=m {
            row.push(poly_mul(&row[a - 1], form)?);
        }
        powers.push(row);
    }
    let mut out = vec![FieldElem::ZERO; p.basis.len()];
    for (alpha, &c) in p.basis.exponents().iter().zip(&p.coeffs) {
        if c.is_zero() {
            continue;
        }
        let mut term = PolyVec::constant(f, n, c);
        for (i, &a) in alpha.iter().enumerate() {
            if a > 0 {
                term = poly_mul(&term, &powers[i][a as usize])?;
            }
        }
        for (o, &t) in out.iter_mut().zip(&term.coeffs) {
            *o = f.add(*o, t);
        }
    }
    Ok(PolyVec { field: f.clone(), basis: p.basis.clone(), coeffs: out })
}

/// `Ind_Z^G(λ^t)` on the coset basis `e_c`, `c` indexing the transversal:
/// `g·e_c = λ^{t·s} e_{c'}` where `g·rep_c = rep_{c'}·z^s`.
pub fn induced_from_center(group: &Arc<GroupData>, t: usize) -> Result<Rep> {
    if t >= group.center_order() {
        return Err(Error::Contract(format!("exponent {t} outside [0, {})", group.center_order())));
    }
    let f = group.field();
    let cosets = group.cosets();
    let n = group.num_cosets();
    let lambda_t = f.pow(group.center().lambda, t as u64);
    let images = (0..group.order())
        .into_par_iter()
        .map(|g| {
            let mut m = Mat::zeros(f, n, n);
            for (c, &h) in cosets.transversal.iter().enumerate() {
                let gh = group.mul(g, h);
                m.set(cosets.coset_of[gh], c, f.pow(lambda_t, cosets.z_exponent[gh] as u64));
            }
            m
        })
        .collect();
    Rep::from_images(group, FieldEmbedding::identity(f), n, images)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::make_field;
    use crate::groups::DEFAULT_GROUP_CAP;

    fn mat(field: &FieldSpec, rows: &[&[i64]]) -> Mat {
        let rows: Vec<Vec<FieldElem>> = rows.iter().map(|r| r.iter().map(|&x| field.from_int(x)).collect()).collect();
        Mat::from_rows(field, &rows).unwrap()
    }

    fn s3() -> (FieldSpec, Arc<GroupData>) {
        let f7 = make_field(7, 1, None).unwrap();
        let gens = [mat(&f7, &[&[0, 1], &[1, 0]]), mat(&f7, &[&[0, 6], &[1, 6]])];
        (f7.clone(), Arc::new(GroupData::enumerate(&gens, DEFAULT_GROUP_CAP).unwrap()))
    }

    #[test]
    fn monomial_order_and_rank() {
        let b = MonomialBasis::new(2, 2);
        assert_eq!(b.exponents(), &[vec![2, 0], vec![1, 1], vec![0, 2]]);
        let b3 = MonomialBasis::new(3, 4);
        assert_eq!(b3.len(), 15);
        for (i, e) in b3.exponents().iter().enumerate() {
            assert_eq!(b3.index_of(e), Some(i));
        }
        assert_eq!(monomial_count(2, 3), 4);
    }

    #[test]
    fn paired_rep_sign_and_failure() {
        let (f, g) = s3();
        let w = paired_rep(&g, &[mat(&f, &[&[6]]), mat(&f, &[&[1]])]).unwrap();
        assert_eq!(w.images().iter().filter(|m| m.get(0, 0) == f.from_int(6)).count(), 3);
        assert!(w.is_homomorphism());
        let bad = paired_rep(&g, &[mat(&f, &[&[6]]), mat(&f, &[&[6]])]);
        assert!(matches!(bad, Err(Error::NotARepresentation(_))));
        let same =
            paired_rep(&g, &[g.element(g.generators()[0]).clone(), g.element(g.generators()[1]).clone()]).unwrap();
        assert_eq!(same.images(), Rep::natural(&g).images());
    }

    #[test]
    fn sym_power_basics() {
        let (f, g) = s3();
        let v = Rep::natural(&g);
        let s3v = sym_power(&v, 3);
        assert_eq!(s3v.dim(), 4);
        assert_eq!(s3v.image(0), &Mat::identity(&f, 4));
        assert_eq!(sym_power(&v, 1).images(), v.images());
        assert_eq!(sym_power(&v, 0).dim(), 1);
        assert!(sym_power(&v, 4).is_homomorphism());
    }

    #[test]
    fn diagonal_sym_square() {
        let f7 = make_field(7, 1, None).unwrap();
        let (a, b) = (3, 5);
        let g = Arc::new(GroupData::enumerate(&[mat(&f7, &[&[a, 0], &[0, b]])], DEFAULT_GROUP_CAP).unwrap());
        let s2 = sym_power(&Rep::natural(&g), 2);
        let gi = g.generators()[0];
        let expect = mat(&f7, &[&[a * a, 0, 0], &[0, a * b, 0], &[0, 0, b * b]]);
        assert_eq!(s2.image(gi), &expect);
    }

    #[test]
    fn poly_products() {
        let f5 = make_field(5, 1, None).unwrap();
        let x1 = PolyVec::linear_form(&f5, &[f5.one(), f5.zero()]);
        let x2 = PolyVec::linear_form(&f5, &[f5.zero(), f5.one()]);
        let one = PolyVec::constant(&f5, 2, f5.one());
        assert_eq!(poly_mul(&x1, &one).unwrap(), x1);
        let x1x2 = poly_mul(&x1, &x2).unwrap();
        assert_eq!(x1x2.coeffs(), &[f5.zero(), f5.one(), f5.zero()]);
        let sum = PolyVec::linear_form(&f5, &[f5.one(), f5.one()]);
        let diff = PolyVec::linear_form(&f5, &[f5.one(), f5.from_int(-1)]);
        let prod = poly_mul(&sum, &diff).unwrap();
        assert_eq!(prod.coeffs(), &[f5.one(), f5.zero(), f5.from_int(4)]);
    }

    #[test]
    fn apply_to_poly_examples() {
        let (f, g) = s3();
        let v = Rep::natural(&g);
        let x1 = PolyVec::linear_form(&f, &[f.one(), f.zero()]);
        assert_eq!(apply_to_poly(0, &x1, &v).unwrap(), x1);
        let swap = g.generators()[0];
        assert_eq!(apply_to_poly(swap, &x1, &v).unwrap().coeffs(), &[f.zero(), f.one()]);

        let d = Arc::new(GroupData::enumerate(&[mat(&f, &[&[2, 0], &[0, 1]])], DEFAULT_GROUP_CAP).unwrap());
        let sq = PolyVec::linear_form(&f, &[f.one(), f.one()]).pow(2).unwrap();
        let out = apply_to_poly(d.generators()[0], &sq, &Rep::natural(&d)).unwrap();
        assert_eq!(out.coeffs(), &[f.from_int(4), f.from_int(4), f.one()]);
    }

    #[test]
    fn induced_modules() {
        let (f, g) = s3();
        let reg = induced_from_center(&g, 0).unwrap();
        assert_eq!(reg.dim(), 6);
        assert!(reg.is_homomorphism());
        for m in reg.images() {
            let ones = m.entries().iter().filter(|&&x| x == f.one()).count();
            assert_eq!(ones, 6);
        }
        let f3 = make_field(3, 1, None).unwrap();
        let sl = Arc::new(
            GroupData::enumerate(&[mat(&f3, &[&[1, 1], &[0, 1]]), mat(&f3, &[&[1, 0], &[1, 1]])], DEFAULT_GROUP_CAP)
                .unwrap(),
        );
        let ind = induced_from_center(&sl, 1).unwrap();
        assert_eq!(ind.dim(), 12);
        assert!(ind.is_homomorphism());
        let z = sl.center().z_generator_index;
        let trace = (0..12).fold(f3.zero(), |acc, i| f3.add(acc, ind.image(z).get(i, i)));
        assert_eq!(trace, f3.from_int(-12));
        assert_eq!(ind.image(z).as_scalar(), Some(f3.from_int(-1)));
        assert!(induced_from_center(&sl, 2).is_err());
    }

    #[test]
    fn scalar_character_exponents() {
        let f3 = make_field(3, 1, None).unwrap();
        let sl = Arc::new(
            GroupData::enumerate(&[mat(&f3, &[&[1, 1], &[0, 1]]), mat(&f3, &[&[1, 0], &[1, 1]])], DEFAULT_GROUP_CAP)
                .unwrap(),
        );
        let v = Rep::natural(&sl);
        assert_eq!(v.restrict_scalar_character().unwrap(), (true, 1));
        assert_eq!(sym_power(&v, 2).restrict_scalar_character().unwrap(), (true, 0));
        assert_eq!(Rep::trivial(&sl).restrict_scalar_character().unwrap(), (true, 0));
    }

    #[test]
    fn extension_of_scalars() {
        let f3 = make_field(3, 1, None).unwrap();
        let sl = Arc::new(
            GroupData::enumerate(&[mat(&f3, &[&[1, 1], &[0, 1]]), mat(&f3, &[&[1, 0], &[1, 1]])], DEFAULT_GROUP_CAP)
                .unwrap(),
        );
        let v = Rep::natural(&sl);
        assert_eq!(v.extend_scalars(1).unwrap().images(), v.images());
        let v9 = v.extend_scalars(2).unwrap();
        assert_eq!(v9.field().size(), 9);
        for (a, b) in v.images().iter().zip(v9.images()) {
            for (x, y) in a.entries().iter().zip(b.entries()) {
                assert_eq!(v9.field().coeffs(*y), vec![x.code(), 0]);
            }
        }
        assert!(v9.is_homomorphism());
        let t = Rep::trivial(&sl).extend_like(&v9).unwrap();
        t.check_compatible(&v9).unwrap();
    }
}
