//! Finite matrix groups given by generators, enumerated in full.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::{FieldElem, FieldSpec};
use crate::linalg::Mat;

/// Default limit on the number of enumerated elements.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// The central scalar subgroup `Z = Z(GL(V)) ∩ G`.
#[derive(Clone, Debug)]
pub struct CenterScalars {
    /// Indices of scalar elements, ascending.
    pub z_indices: Vec<usize>,
    pub z_generator_index: usize,
    /// Scalar by which the generator acts on V.
    pub lambda: FieldElem,
    /// `powers[t]` is the element index of `z^t`.
    pub powers: Vec<usize>,
}

/// Result of the greedy coset sweep for `G/Z`.
#[derive(Clone, Debug)]
pub struct CosetTransversal {
    pub transversal: Vec<usize>,
    pub coset_of: Vec<usize>,
    /// `h = transversal[coset_of[h]] · z^{z_exponent[h]}`.
    pub z_exponent: Vec<usize>,
}

/// Counts recorded in reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub center_order: usize,
    pub cosets: usize,
}

/// A fully enumerated finite matrix group acting on `F^dim`.
#[derive(Debug)]
pub struct GroupData {
    field: FieldSpec,
    dim: usize,
    elements: Vec<Mat>,
    index: HashMap<Vec<FieldElem>, usize>,
    generators: Vec<usize>,
    parent: Vec<Option<(usize, usize)>>,
    right_gen: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    center: CenterScalars,
    cosets: CosetTransversal,
}

impl GroupData {
    /// Breadth-first closure of the generators under right multiplication.
    /// Element 0 is the identity; each discovered element records the
    /// (parent, generator) step that reached it.
    pub fn enumerate(generators: &[Mat], cap: usize) -> Result<GroupData> {
        let first = generators.first().ok_or_else(|| Error::Contract("at least one generator is required".into()))?;
        let field = first.field().clone();
        let dim = first.rows();
        for (k, g) in generators.iter().enumerate() {
            if !g.is_square() || g.rows() != dim {
                return Err(Error::ShapeMismatch(format!("generator {k} is not {dim}x{dim}")));
            }
            if g.field() != &field {
                return Err(Error::FieldMismatch(format!("generator {k} is over {}", g.field())));
            }
            if g.rank() < dim {
                return Err(Error::SingularGenerator(k));
            }
        }
        let identity = Mat::identity(&field, dim);
        let mut index = HashMap::new();
        index.insert(identity.entries().to_vec(), 0usize);
        let mut elements = vec![identity];
        let mut parent = vec![None];
        let mut right_gen: Vec<Vec<usize>> = Vec::new();
        let mut pos = 0;
        while pos < elements.len() {
            let mut row = Vec::with_capacity(generators.len());
            for (s, g) in generators.iter().enumerate() {
                let prod = elements[pos].mul(g)?;
                let idx = match index.get(prod.entries()) {
                    Some(&i) => i,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::GroupCapExceeded(cap));
                        }
                        let i = elements.len();
                        index.insert(prod.entries().to_vec(), i);
                        elements.push(prod);
                        parent.push(Some((pos, s)));
                        i
                    }
                };
                row.push(idx);
            }
            right_gen.push(row);
            pos += 1;
        }
        let gen_indices = generators.iter().map(|g| index[g.entries()]).collect();
        let inverse = elements
            .iter()
            .map(|m| {
                let inv = m.inverse().expect("group elements are invertible");
                index[inv.entries()]
            })
            .collect();
        let mut group = GroupData {
            field,
            dim,
            elements,
            index,
            generators: gen_indices,
            parent,
            right_gen,
            inverse,
            center: CenterScalars { z_indices: vec![0], z_generator_index: 0, lambda: FieldElem::ONE, powers: vec![0] },
            cosets: CosetTransversal { transversal: vec![], coset_of: vec![], z_exponent: vec![] },
        };
        group.center = center_scalars(&group);
        group.cosets = coset_transversal(&group);
        Ok(group)
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Mat] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Mat) -> Option<usize> {
        if m.field() != &self.field {
            return None;
        }
        self.index.get(m.entries()).copied()
    }

    /// Element indices of the generators, in input order.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// The (parent, generator position) step by which element `i` was first
    /// reached; `None` for the identity.
    pub fn parent(&self, i: usize) -> Option<(usize, usize)> {
        self.parent[i]
    }

    /// Index of `element(a) · generator(s)`.
    pub fn right_mul_gen(&self, a: usize, s: usize) -> usize {
        self.right_gen[a][s]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverse[a]
    }

    /// Index of `element(a) · element(b)`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        let prod = self.elements[a].mul(&self.elements[b]).expect("same shapes");
        self.index[prod.entries()]
    }

    pub fn center(&self) -> &CenterScalars {
        &self.center
    }

    pub fn center_order(&self) -> usize {
        self.center.z_indices.len()
    }

    pub fn is_central(&self, a: usize) -> bool {
        self.center.z_indices.binary_search(&a).is_ok()
    }

    pub fn cosets(&self) -> &CosetTransversal {
        &self.cosets
    }

    /// `N = |G/Z|`.
    pub fn num_cosets(&self) -> usize {
        self.cosets.transversal.len()
    }

    /// Order of element `a`.
    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary { order: self.order(), center_order: self.center_order(), cosets: self.num_cosets() }
    }
}

/// Scalar elements of the group, and a generator of that cyclic subgroup
/// (largest multiplicative order of its scalar, lowest index on ties).
pub fn center_scalars(group: &GroupData) -> CenterScalars {
    let f = group.field();
    let mut z_indices = Vec::new();
    let mut best: Option<(u64, usize, FieldElem)> = None;
    for (i, m) in group.elements().iter().enumerate() {
        if let Some(c) = m.as_scalar() {
            z_indices.push(i);
            let ord = f.mult_order(c).expect("group elements are invertible");
            if best.is_none_or(|(o, _, _)| ord > o) {
                best = Some((ord, i, c));
            }
        }
    }
    let (_, z_generator_index, lambda) = best.expect("the identity is scalar");
    let mut powers = Vec::with_capacity(z_indices.len());
    let mut c = f.one();
    for _ in 0..z_indices.len() {
        let m = Mat::scalar(f, group.dim(), c);
        powers.push(group.index_of(&m).expect("powers of z lie in G"));
        c = f.mul(c, lambda);
    }
    CenterScalars { z_indices, z_generator_index, lambda, powers }
}

/// Greedy sweep in element order: an element starts a new coset unless it
/// already lies in the coset of an earlier transversal member.
pub fn coset_transversal(group: &GroupData) -> CosetTransversal {
    let n = group.order();
    let f = group.field();
    let center = group.center();
    let mut coset_of = vec![usize::MAX; n];
    let mut z_exponent = vec![0usize; n];
    let mut transversal = Vec::new();
    for h in 0..n {
        if coset_of[h] != usize::MAX {
            continue;
        }
        let t = transversal.len();
        transversal.push(h);
        let mut c = f.one();
        for s in 0..center.powers.len() {
            let member = group.index_of(&group.element(h).scale(c)).expect("hZ lies in G");
            coset_of[member] = t;
            z_exponent[member] = s;
            c = f.mul(c, center.lambda);
        }
    }
    CosetTransversal { transversal, coset_of, z_exponent }
}
