//! Spaces of module homomorphisms as null spaces of intertwining equations.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;
use crate::meataxe::CertifiedIrreducible;
use crate::reps::Rep;

/// A basis of `Hom_G(U, V)`; each element is a `dim V × dim U` matrix.
#[derive(Clone, Debug)]
pub struct HomSpace {
    pub source_dim: usize,
    pub target_dim: usize,
    pub basis: Vec<Mat>,
}

impl HomSpace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }
}

/// Solve `ρ_v(s)·X = X·ρ_u(s)` for every generator `s`, with `X` flattened
/// row-major. Generator equations are eliminated one block at a time so the
/// working system never exceeds `rank + block` rows.
pub fn hom_space(u: &Rep, v: &Rep) -> Result<HomSpace> {
    u.check_compatible(v)?;
    let f = u.field();
    let (du, dv) = (u.dim(), v.dim());
    let unknowns = du * dv;
    let mut reduced = Mat::zeros(f, 0, unknowns);
    for (a, b) in v.generator_images().into_iter().zip(u.generator_images()) {
        let mut block = Mat::zeros(f, unknowns, unknowns);
        // Row (r, c) encodes (A X - X B)[r][c].
        for r in 0..dv {
            for c in 0..du {
                let row = r * du + c;
                for k in 0..dv {
                    let x = a.get(r, k);
                    if !x.is_zero() {
                        let col = k * du + c;
                        block.set(row, col, f.add(block.get(row, col), x));
                    }
                }
                for k in 0..du {
                    let x = b.get(k, c);
                    if !x.is_zero() {
                        let col = r * du + k;
                        block.set(row, col, f.sub(block.get(row, col), x));
                    }
                }
            }
        }
        let stacked = reduced.vstack(&block)?;
        let echelon = stacked.rref();
        reduced = echelon.matrix.block(0, echelon.rank, 0, unknowns);
    }
    let basis = reduced.null_space().into_iter().map(|x| Mat::new(f, dv, du, x)).collect::<Result<Vec<_>>>()?;
    Ok(HomSpace { source_dim: du, target_dim: dv, basis })
}

/// Whether `x` intertwines every group element, not only generators.
pub fn intertwines_all(u: &Rep, v: &Rep, x: &Mat) -> bool {
    u.images().iter().zip(v.images()).all(|(a, b)| match (b.mul(x), x.mul(a)) {
        (Ok(l), Ok(r)) => l == r,
        _ => false,
    })
}

/// Occurrence verdict with a witness map of full rank `dim W`.
#[derive(Clone, Debug)]
pub struct Occurrence {
    pub hom_dim: usize,
    pub witness: Option<Mat>,
}

impl Occurrence {
    pub fn occurs(&self) -> bool {
        self.witness.is_some()
    }
}

fn first_witness(space: HomSpace, w_dim: usize) -> Result<Occurrence> {
    let hom_dim = space.dim();
    let witness = space.basis.into_iter().next();
    if let Some(x) = &witness {
        if x.rank() != w_dim {
            return Err(Error::Contract(format!(
                "nonzero map from or onto an irreducible has rank {} < {w_dim}",
                x.rank()
            )));
        }
    }
    Ok(Occurrence { hom_dim, witness })
}

/// `W ↪ U`: the first basis element of `Hom_G(W, U)`, injective by
/// irreducibility.
pub fn occurs_as_submodule(w: &CertifiedIrreducible, u: &Rep) -> Result<Occurrence> {
    first_witness(hom_space(w.rep(), u)?, w.rep().dim())
}

/// `U ↠ W`: the first basis element of `Hom_G(U, W)`, surjective by
/// irreducibility.
pub fn occurs_as_quotient(w: &CertifiedIrreducible, u: &Rep) -> Result<Occurrence> {
    first_witness(hom_space(u, w.rep())?, w.rep().dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExtensionCheck {
    pub dim_base: usize,
    pub dim_ext: usize,
    pub equal: bool,
}

/// Compare `dim Hom_G(U, V)` before and after extending scalars by degree `e`.
pub fn verify_extension_invariance(u: &Rep, v: &Rep, e: u32) -> Result<ExtensionCheck> {
    let dim_base = hom_space(u, v)?.dim();
    let u_ext = u.extend_scalars(e)?;
    let v_ext = v.extend_scalars(e)?;
    let dim_ext = hom_space(&u_ext, &v_ext)?.dim();
    Ok(ExtensionCheck { dim_base, dim_ext, equal: dim_base == dim_ext })
}
