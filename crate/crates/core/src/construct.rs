//! Explicit occurrence witnesses built from coset products of a generic
//! vector.
//!
//! For a vector `v` whose line no non-scalar element fixes, the polynomials
//! `F(c) = ∏_{c' ≠ c} rep_{c'}·v` (one per coset of `G/Z`) have powers that
//! span a copy of the module induced from `Z`. Multiplying by the coset
//! product `B_i` and the full orbit product `C` moves that copy to the degree
//! whose central character matches `W`, which then embeds in and is a
//! quotient of the symmetric power.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldEmbedding, FieldSpec};
use crate::groups::GroupData;
use crate::homs::{hom_space, intertwines_all, occurs_as_quotient, occurs_as_submodule};
use crate::linalg::Mat;
use crate::meataxe::{certify, CertifiedIrreducible};
use crate::reps::{apply_to_poly, induced_from_center, poly_mul, sym_power, PolyVec, Rep};

/// Largest extension degree tried when searching for a generic vector.
pub const MAX_GENERIC_EXTENSION: u32 = 32;

/// A vector whose line is moved by every non-scalar element.
#[derive(Clone, Debug)]
pub struct GenericVector {
    pub v: Vec<FieldElem>,
    /// From the searched module's field to the field containing `v`.
    pub step: FieldEmbedding,
}

/// Whether no element outside `Z` maps `v` to a multiple of itself.
pub fn is_generic(v_rep: &Rep, v: &[FieldElem]) -> Result<bool> {
    let f = v_rep.field();
    let Some(lead) = v.iter().position(|x| !x.is_zero()) else {
        return Ok(false);
    };
    let group = v_rep.group();
    for a in 0..group.order() {
        if group.is_central(a) {
            continue;
        }
        let w = v_rep.image(a).mul_vec(v)?;
        let c = f.div(w[lead], v[lead])?;
        if w.iter().zip(v).all(|(&wk, &vk)| wk == f.mul(c, vk)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nonzero vectors in increasing lexicographic order of coordinate codes
/// (first coordinate most significant), one per line: the lex-least vector
/// of a line is the one whose leading coordinate is 1.
fn first_generic(v_rep: &Rep) -> Result<Option<Vec<FieldElem>>> {
    let f = v_rep.field();
    let n = v_rep.dim();
    let q = u64::from(f.size());
    for lead in (0..n).rev() {
        let tail = n - lead - 1;
        for code in 0..q.pow(tail as u32) {
            let mut v = vec![f.zero(); n];
            v[lead] = f.one();
            let mut rest = code;
            for k in (lead + 1..n).rev() {
                v[k] = f.elem((rest % q) as u32)?;
                rest /= q;
            }
            if is_generic(v_rep, &v)? {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Sweep the lines of `V`; when none qualifies, retry over `GF(q^e)` for
/// `e = 2, 3, …`.
pub fn find_generic_vector(v_rep: &Rep) -> Result<GenericVector> {
    let group = v_rep.group();
    if group.num_cosets() == 1 {
        return Err(Error::Contract("every element is scalar; no generic vector is needed".into()));
    }
    for e in 1..=MAX_GENERIC_EXTENSION {
        let step =
            if e == 1 { FieldEmbedding::identity(v_rep.field()) } else { FieldEmbedding::extension(v_rep.field(), e)? };
        let ext = v_rep.extend_along(&step)?;
        if let Some(v) = first_generic(&ext)? {
            return Ok(GenericVector { v, step });
        }
    }
    Err(Error::Contract(format!("no generic vector up to extension degree {MAX_GENERIC_EXTENSION}")))
}

/// The linear forms `rep_c·v` in coset order.
pub fn coset_forms(v: &[FieldElem], v_rep: &Rep) -> Result<Vec<PolyVec>> {
    let group = v_rep.group();
    group
        .cosets()
        .transversal
        .iter()
        .map(|&h| Ok(PolyVec::linear_form(v_rep.field(), &v_rep.image(h).mul_vec(v)?)))
        .collect()
}

/// `F(c)` for every coset `c`: the product of the other cosets' forms.
pub fn build_coset_products(v: &[FieldElem], v_rep: &Rep) -> Result<Vec<PolyVec>> {
    let forms = coset_forms(v, v_rep)?;
    let f = v_rep.field();
    let n = v_rep.dim();
    let one = PolyVec::constant(f, n, f.one());
    // prefix[c] = ∏_{c' < c}, suffix[c] = ∏_{c' > c}
    let mut prefix = vec![one.clone()];
    for form in &forms {
        prefix.push(poly_mul(prefix.last().expect("nonempty"), form)?);
    }
    let mut suffix = vec![one];
    for form in forms.iter().rev() {
        suffix.push(poly_mul(suffix.last().expect("nonempty"), form)?);
    }
    suffix.reverse();
    (0..forms.len()).map(|c| poly_mul(&prefix[c], &suffix[c + 1])).collect()
}

fn coefficient_matrix(field: &FieldSpec, polys: &[PolyVec]) -> Result<Mat> {
    let rows = polys.first().map_or(0, |p| p.coeffs().len());
    let cols: Vec<Vec<FieldElem>> = polys.iter().map(|p| p.coeffs().to_vec()).collect();
    Mat::from_columns(field, rows, &cols)
}

/// Whether the `j`-th powers of the coset products are linearly independent.
pub fn check_independence(f_list: &[PolyVec], j: usize) -> Result<bool> {
    let Some(first) = f_list.first() else { return Ok(true) };
    let powers = f_list.iter().map(|p| p.pow(j)).collect::<Result<Vec<_>>>()?;
    Ok(coefficient_matrix(first.field(), &powers)?.rank() == f_list.len())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Degrees {
    pub i: usize,
    pub j: usize,
    pub m: usize,
}

/// `j = |Z| − i` and `m = N·i + (N − 1)·j = N|Z| − j` for `N > 1`.
pub fn compute_degrees(n_cosets: usize, z_order: usize, i: usize) -> Result<Degrees> {
    if i >= z_order || n_cosets < 2 {
        return Err(Error::Contract(format!("degrees undefined for N = {n_cosets}, |Z| = {z_order}, i = {i}")));
    }
    let j = z_order - i;
    Ok(Degrees { i, j, m: n_cosets * z_order - j })
}

/// Smallest `m ≥ 1` with `m ≡ i (mod |Z|)`, used when every element is scalar.
pub fn central_degree(z_order: usize, i: usize) -> usize {
    if i == 0 {
        z_order
    } else {
        i
    }
}

/// Outcome of each check made by [`assemble`]. Checks that do not apply in
/// the all-scalar case are `None`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub span_dim_is_n: Option<bool>,
    pub lines_permuted: Option<bool>,
    pub z_character: bool,
    pub induced_isomorphism: Option<bool>,
    pub frobenius_homs: Option<bool>,
    pub b_line_stable: Option<bool>,
    pub c_invariant: Option<bool>,
    pub embedding_witness: bool,
    pub quotient_witness: bool,
    pub degree_bound: bool,
}

impl Flags {
    pub fn all_verified(&self) -> bool {
        let optional = [
            self.span_dim_is_n,
            self.lines_permuted,
            self.induced_isomorphism,
            self.frobenius_homs,
            self.b_line_stable,
            self.c_invariant,
        ];
        optional.iter().all(|f| f.unwrap_or(true))
            && self.z_character
            && self.embedding_witness
            && self.quotient_witness
            && self.degree_bound
    }
}

/// Witness data for one occurrence degree.
#[derive(Clone, Debug)]
pub struct Certificate {
    pub field: FieldSpec,
    pub central: bool,
    pub v: Vec<FieldElem>,
    pub i: usize,
    pub j: usize,
    pub n_cosets: usize,
    pub z_order: usize,
    pub group_order: usize,
    pub m: usize,
    pub k: usize,
    pub f_products: Vec<PolyVec>,
    pub a_basis: Vec<PolyVec>,
    pub b_generator: Option<PolyVec>,
    pub c_generator: Option<PolyVec>,
    pub embedding_witness: Option<Mat>,
    pub quotient_witness: Option<Mat>,
    pub flags: Flags,
}

impl Certificate {
    /// Degree of the symmetric power holding the witnesses.
    pub fn degree(&self) -> usize {
        self.m + self.k * self.group_order
    }

    pub fn all_verified(&self) -> bool {
        self.flags.all_verified()
    }

    pub fn to_json(&self) -> Value {
        let polys = |ps: &[PolyVec]| Value::Array(ps.iter().map(PolyVec::to_json).collect());
        json!({
            "field": self.field.descriptor(),
            "central": self.central,
            "v": self.v.iter().map(|&x| self.field.to_json(x)).collect::<Vec<_>>(),
            "i": self.i,
            "j": self.j,
            "N": self.n_cosets,
            "Z_order": self.z_order,
            "m": self.m,
            "k": self.k,
            "degree": self.degree(),
            "F_products": polys(&self.f_products),
            "A_basis": polys(&self.a_basis),
            "B_generator": self.b_generator.as_ref().map(PolyVec::to_json),
            "C_generator": self.c_generator.as_ref().map(PolyVec::to_json),
            "embedding_witness": self.embedding_witness.as_ref().map(Mat::to_json),
            "quotient_witness": self.quotient_witness.as_ref().map(Mat::to_json),
            "flags": self.flags,
            "verified": self.all_verified(),
        })
    }
}

fn column(p: &PolyVec) -> Vec<FieldElem> {
    p.coeffs().to_vec()
}

/// Whether `a = c·b` for some nonzero `c`; false when `b` is zero.
fn proportional(field: &FieldSpec, a: &[FieldElem], b: &[FieldElem]) -> bool {
    let Some(k) = b.iter().position(|x| !x.is_zero()) else { return false };
    let Ok(c) = field.div(a[k], b[k]) else { return false };
    !c.is_zero() && a.iter().zip(b).all(|(&x, &y)| x == field.mul(c, y))
}

fn check_group(w: &Rep, v_rep: &Rep) -> Result<Arc<GroupData>> {
    if !Arc::ptr_eq(w.group(), v_rep.group()) {
        return Err(Error::Contract("W and V belong to different groups".into()));
    }
    if v_rep.field() != v_rep.group().field() {
        return Err(Error::Contract("V must be the defining module over the group field".into()));
    }
    Ok(v_rep.group().clone())
}

fn assemble_central(w: &Rep, v_rep: &Rep, i: usize, k: usize) -> Result<Certificate> {
    let group = v_rep.group().clone();
    let z_order = group.center_order();
    let m = central_degree(z_order, i);
    let degree = m + k * group.order();
    let v_k = v_rep.extend_like(w)?;
    let s = sym_power(&v_k, degree);
    let f = w.field().clone();
    let lambda = w.embedding().apply(group.center().lambda);
    let w_cert = certify(w, 0)?;
    let sub = occurs_as_submodule(&w_cert, &s)?;
    let quo = occurs_as_quotient(&w_cert, &s)?;
    let flags = Flags {
        z_character: f.pow(lambda, degree as u64) == f.pow(lambda, i as u64),
        embedding_witness: sub.occurs(),
        quotient_witness: quo.occurs(),
        degree_bound: (1..=group.order()).contains(&m),
        ..Flags::default()
    };
    Ok(Certificate {
        field: f,
        central: true,
        v: Vec::new(),
        i,
        j: 0,
        n_cosets: 1,
        z_order,
        group_order: group.order(),
        m,
        k,
        f_products: Vec::new(),
        a_basis: Vec::new(),
        b_generator: None,
        c_generator: None,
        embedding_witness: sub.witness,
        quotient_witness: quo.witness,
        flags,
    })
}

/// Build and verify the witnesses for `W` in `Sym^{m + k|G|}(V)`.
///
/// `W` must act on the generator of `Z` by a scalar; `v_rep` is the defining
/// module over the group field. The field is extended further when no
/// generic vector exists over `W`'s field.
pub fn assemble(w: &CertifiedIrreducible, v_rep: &Rep, k: usize) -> Result<Certificate> {
    let group = check_group(w.rep(), v_rep)?;
    let (scalar, i) = w.rep().restrict_scalar_character()?;
    if !scalar {
        return Err(Error::Contract("the central subgroup does not act on W by scalars".into()));
    }
    if group.num_cosets() == 1 {
        return assemble_central(w.rep(), v_rep, i, k);
    }
    let generic = find_generic_vector(&v_rep.extend_like(w.rep())?)?;
    let w_l = certify(&w.rep().extend_along(&generic.step)?, w.certificate().seed)?;
    let v_l = v_rep.extend_like(w_l.rep())?;
    let f = v_l.field().clone();
    let n_cosets = group.num_cosets();
    let z_order = group.center_order();
    let degrees = compute_degrees(n_cosets, z_order, i)?;
    let degree = degrees.m + k * group.order();
    let lambda = v_l.embedding().apply(group.center().lambda);
    let v = generic.v;
    let n = v_l.dim();

    let f_products = build_coset_products(&v, &v_l)?;
    let a_basis = f_products.iter().map(|p| p.pow(degrees.j)).collect::<Result<Vec<_>>>()?;
    let mut b = PolyVec::constant(&f, n, f.one());
    for form in coset_forms(&v, &v_l)? {
        b = poly_mul(&b, &form.pow(i)?)?;
    }
    let mut c = PolyVec::constant(&f, n, f.one());
    if k > 0 {
        for h in 0..group.order() {
            let form = PolyVec::linear_form(&f, &v_l.image(h).mul_vec(&v)?);
            c = poly_mul(&c, &form.pow(k)?)?;
        }
    }
    let bc = poly_mul(&b, &c)?;
    let products = a_basis.iter().map(|a| poly_mul(a, &bc)).collect::<Result<Vec<_>>>()?;

    let s = sym_power(&v_l, degree);
    let p_mat = coefficient_matrix(&f, &products)?;
    let mut flags = Flags { span_dim_is_n: Some(p_mat.rank() == n_cosets), ..Flags::default() };

    let cosets = group.cosets();
    let moved: Vec<Vec<Vec<FieldElem>>> = (0..group.order())
        .into_par_iter()
        .map(|g| products.iter().map(|p| s.image(g).mul_vec(&column(p))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let permuted = (0..group.order()).all(|g| {
        cosets.transversal.iter().enumerate().all(|(ci, &h)| {
            let target = cosets.coset_of[group.mul(g, h)];
            proportional(&f, &moved[g][ci], &column(&products[target]))
        })
    });
    flags.lines_permuted = Some(permuted);

    let z = group.center().z_generator_index;
    let lambda_i = f.pow(lambda, i as u64);
    let z_on_span =
        moved[z].iter().zip(&products).all(|(mv, p)| mv.iter().zip(p.coeffs()).all(|(&x, &y)| x == f.mul(lambda_i, y)));
    flags.z_character = z_on_span && f.pow(lambda, degree as u64) == lambda_i;

    let gens = group.generators();
    let b_stable = gens
        .iter()
        .map(|&s_idx| Ok(proportional(&f, apply_to_poly(s_idx, &b, &v_l)?.coeffs(), b.coeffs())))
        .collect::<Result<Vec<_>>>()?;
    flags.b_line_stable = Some(b_stable.into_iter().all(|x| x));
    let c_fixed = gens.iter().map(|&s_idx| Ok(apply_to_poly(s_idx, &c, &v_l)? == c)).collect::<Result<Vec<_>>>()?;
    flags.c_invariant = Some(c_fixed.into_iter().all(|x| x));

    let mut embedding_witness = None;
    if flags.span_dim_is_n == Some(true) && permuted {
        let span = s.restrict_to(&p_mat)?;
        // e_c ↦ rep_c·P_0, the copy of the induced module inside Sym.
        let ind = induced_from_center(&group, i)?.extend_like(&v_l)?;
        let phi_cols: Vec<Vec<FieldElem>> = cosets.transversal.iter().map(|&h| moved[h][0].clone()).collect();
        let phi = Mat::from_columns(&f, s.dim(), &phi_cols)?;
        flags.induced_isomorphism = Some(phi.rank() == n_cosets && intertwines_all(&ind, &s, &phi));

        let into_span = hom_space(w_l.rep(), &span)?;
        let onto_w = hom_space(&span, w_l.rep())?;
        flags.frobenius_homs = Some(!into_span.is_zero() && !onto_w.is_zero());
        if let Some(x) = into_span.basis.first() {
            let e = p_mat.mul(x)?;
            if e.rank() == w_l.rep().dim() && intertwines_all(w_l.rep(), &s, &e) {
                embedding_witness = Some(e);
            }
        }
    } else {
        flags.induced_isomorphism = Some(false);
        flags.frobenius_homs = Some(false);
    }
    flags.embedding_witness = embedding_witness.is_some();
    let quo = occurs_as_quotient(&w_l, &s)?;
    flags.quotient_witness = quo.occurs();
    flags.degree_bound = degrees.m >= 1 && degrees.m < group.order();

    Ok(Certificate {
        field: f,
        central: false,
        v,
        i,
        j: degrees.j,
        n_cosets,
        z_order,
        group_order: group.order(),
        m: degrees.m,
        k,
        f_products,
        a_basis,
        b_generator: Some(b),
        c_generator: Some(c),
        embedding_witness,
        quotient_witness: quo.witness,
        flags,
    })
}

/// Certificates for `k = 1..=k_max`, computed independently.
pub fn verify_periodicity(w: &CertifiedIrreducible, v_rep: &Rep, k_max: usize) -> Result<Vec<Certificate>> {
    (1..=k_max).into_par_iter().map(|k| assemble(w, v_rep, k)).collect()
}
