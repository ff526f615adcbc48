//! Occurrence tables over degrees, an independent character-theoretic
//! multiplicity oracle, and the end-to-end verification that every
//! irreducible embeds in and is a quotient of some `Sym^m(V)` with
//! `1 ≤ m ≤ |G|`.

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::construct::{assemble, Certificate};
use crate::error::{Error, Result};
use crate::fields::FieldEmbedding;
use crate::homs::{hom_space, verify_extension_invariance, ExtensionCheck};
use crate::meataxe::{simple_quotient, splitting_extension, CertifiedIrreducible};
use crate::reps::{monomial_count, sym_power, Rep};

/// Default ceiling on `dim Sym^m(V)` for a scan.
pub const DEFAULT_DIM_CAP: usize = 5000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceRow {
    pub m: usize,
    /// `dim Hom_G(W, Sym^m V)`.
    pub sub_dim: usize,
    /// `dim Hom_G(Sym^m V, W)`.
    pub quot_dim: usize,
    pub molien: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OccurrenceTable {
    pub rows: Vec<OccurrenceRow>,
    pub minimal_sub_m: Option<usize>,
    pub minimal_quot_m: Option<usize>,
    /// `|G|`.
    pub bound: usize,
}

impl OccurrenceTable {
    pub fn row(&self, m: usize) -> Option<&OccurrenceRow> {
        self.rows.iter().find(|r| r.m == m)
    }

    /// Both minima exist and lie in `1..=|G|`.
    pub fn within_bound(&self) -> bool {
        let ok = |x: Option<usize>| x.is_some_and(|m| (1..=self.bound).contains(&m));
        ok(self.minimal_sub_m) && ok(self.minimal_quot_m)
    }

    /// Rows where the oracle disagrees with either hom dimension.
    pub fn molien_mismatches(&self) -> Vec<usize> {
        self.rows.iter().filter(|r| r.molien.is_some_and(|x| x != r.sub_dim || x != r.quot_dim)).map(|r| r.m).collect()
    }
}

/// Check `dim Sym^{m_max}(V)` against the ceiling.
pub fn check_dim_cap(v: &Rep, m_max: usize, cap: usize) -> Result<()> {
    let dim = monomial_count(v.dim(), m_max);
    if dim > cap {
        return Err(Error::DimCapExceeded { dim, cap });
    }
    Ok(())
}

/// Hom dimensions in both directions for `m = 1..=m_max`.
pub fn occurrence_scan(v: &Rep, w: &CertifiedIrreducible, m_max: usize, dim_cap: usize) -> Result<OccurrenceTable> {
    if m_max == 0 {
        return Err(Error::Contract("scan needs m_max ≥ 1".into()));
    }
    check_dim_cap(v, m_max, dim_cap)?;
    let w_rep = w.rep();
    let v = v.extend_like(w_rep)?;
    let rows = (1..=m_max)
        .into_par_iter()
        .map(|m| {
            let s = sym_power(&v, m);
            Ok(OccurrenceRow {
                m,
                sub_dim: hom_space(w_rep, &s)?.dim(),
                quot_dim: hom_space(&s, w_rep)?.dim(),
                molien: None,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let minimal_sub_m = rows.iter().find(|r| r.sub_dim > 0).map(|r| r.m);
    let minimal_quot_m = rows.iter().find(|r| r.quot_dim > 0).map(|r| r.m);
    Ok(OccurrenceTable { rows, minimal_sub_m, minimal_quot_m, bound: v.group().order() })
}

/// Fill the oracle column of `table`.
pub fn attach_molien(table: &mut OccurrenceTable, v: &Rep, w: &Rep) -> Result<()> {
    let m_max = table.rows.iter().map(|r| r.m).max().unwrap_or(0);
    let mults = molien_multiplicities(&v.extend_like(w)?, w, m_max)?;
    for row in &mut table.rows {
        row.molien = Some(mults[row.m]);
    }
    Ok(())
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integer polynomials modulo `x^L − 1`, coefficient `a` at index `a`.
type Cyc = Vec<i128>;

fn cyc_mul(a: &Cyc, b: &Cyc, l: usize) -> Cyc {
    let mut out = vec![0i128; l];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[(i + j) % l] += x * y;
        }
    }
    out
}

/// Coefficients of the `l`-th cyclotomic polynomial, lowest degree first.
fn cyclotomic(l: usize) -> Vec<i128> {
    // x^l - 1 divided by Φ_d for every proper divisor d.
    let mut num = vec![0i128; l + 1];
    num[0] = -1;
    num[l] = 1;
    for d in (1..l).filter(|d| l.is_multiple_of(*d)) {
        num = poly_div_exact(&num, &cyclotomic(d));
    }
    num
}

fn poly_div_exact(num: &[i128], den: &[i128]) -> Vec<i128> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut quot = vec![0i128; rem.len() - dd];
    for k in (0..quot.len()).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        for (t, &d) in den.iter().enumerate() {
            rem[k + t] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quot
}

/// Remainder modulo a monic integer polynomial.
fn poly_rem(a: &[i128], monic: &[i128]) -> Vec<i128> {
    let mut rem = a.to_vec();
    let dd = monic.len() - 1;
    while rem.len() > dd {
        let top = rem.len() - 1;
        let c = rem[top];
        if c != 0 {
            for (t, &d) in monic.iter().enumerate() {
                rem[top - dd + t] -= c * d;
            }
        }
        rem.pop();
    }
    rem
}

/// Eigenvalue exponents of every image, as multiplicities of `ζ^a` with `ζ`
/// a fixed primitive `L`-th root of unity in a large enough extension.
fn eigen_exponents(r: &Rep, step: &FieldEmbedding, zeta_powers: &[crate::fields::FieldElem]) -> Result<Vec<Vec<i128>>> {
    let l = zeta_powers.len();
    let ext = r.extend_along(step)?;
    let f = ext.field().clone();
    let group = r.group();
    (0..group.order())
        .into_par_iter()
        .map(|g| {
            let order = group.element_order(g);
            let stride = l / order;
            let m = ext.image(g);
            let mut mult = vec![0i128; l];
            let mut total = 0;
            for a in (0..l).step_by(stride) {
                let shifted = m.sub(&crate::linalg::Mat::scalar(&f, m.rows(), zeta_powers[a]))?;
                let nullity = m.rows() - shifted.rank();
                mult[a] = nullity as i128;
                total += nullity;
            }
            if total != m.rows() {
                return Err(Error::Contract("image is not diagonalisable over the root-of-unity field".into()));
            }
            Ok(mult)
        })
        .collect()
}

/// `⟨χ_{Sym^m V}, χ_W⟩` for `m = 0..=m_max`, computed exactly from lifted
/// eigenvalues. Requires the characteristic to be coprime to `|G|`. When
/// the modules are semisimple the value equals `dim Hom_G(W, Sym^m V)`.
pub fn molien_multiplicities(v: &Rep, w: &Rep, m_max: usize) -> Result<Vec<usize>> {
    v.check_compatible(w)?;
    let group = v.group();
    let order = group.order();
    let f = v.field();
    if order.is_multiple_of(f.p() as usize) {
        return Err(Error::Contract(format!("characteristic {} divides |G| = {order}", f.p())));
    }
    let l = (0..order).map(|g| group.element_order(g)).fold(1, |a, b| a / gcd(a, b) * b);
    let q = u64::from(f.size());
    let mut e = 1u32;
    let mut qe = q % l as u64;
    while qe != 1 % l as u64 {
        qe = qe * q % l as u64;
        e += 1;
    }
    let step = if e == 1 { FieldEmbedding::identity(f) } else { FieldEmbedding::extension(f, e)? };
    let k = step.target();
    let zeta = k.pow(k.primitive_element(), (u64::from(k.size()) - 1) / l as u64);
    let zeta_powers: Vec<_> = (0..l).map(|a| k.pow(zeta, a as u64)).collect();

    let v_eig = eigen_exponents(v, &step, &zeta_powers)?;
    let w_eig = eigen_exponents(w, &step, &zeta_powers)?;
    let phi = cyclotomic(l);

    // h[g][d] = complete homogeneous symmetric polynomial of degree d in the
    // lifted eigenvalues of g.
    let sym_chars: Vec<Vec<Cyc>> = v_eig
        .par_iter()
        .map(|mult| {
            let mut h: Vec<Cyc> = vec![vec![0i128; l]; m_max + 1];
            h[0][0] = 1;
            for (a, &count) in mult.iter().enumerate() {
                for _ in 0..count {
                    for d in 1..=m_max {
                        let prev = h[d - 1].clone();
                        for (t, &x) in prev.iter().enumerate() {
                            h[d][(t + a) % l] += x;
                        }
                    }
                }
            }
            h
        })
        .collect();

    (0..=m_max)
        .map(|d| {
            let mut sum = vec![0i128; l];
            for g in 0..order {
                let prod = cyc_mul(&sym_chars[g][d], &w_eig[group.inverse(g)], l);
                for (s, x) in sum.iter_mut().zip(prod) {
                    *s += x;
                }
            }
            let reduced = poly_rem(&sum, &phi);
            let constant = reduced.first().copied().unwrap_or(0);
            if reduced.iter().skip(1).any(|&x| x != 0) || constant % order as i128 != 0 || constant < 0 {
                return Err(Error::Contract(format!("character inner product at degree {d} is not a natural number")));
            }
            Ok((constant / order as i128) as usize)
        })
        .collect()
}

pub fn molien_multiplicity(v: &Rep, w: &Rep, m: usize) -> Result<usize> {
    Ok(molien_multiplicities(v, w, m)?[m])
}

#[derive(Clone, Copy, Debug)]
pub struct TheoremOptions {
    pub seed: u64,
    pub k_max: usize,
}

impl Default for TheoremOptions {
    fn default() -> Self {
        TheoremOptions { seed: 1, k_max: 0 }
    }
}

/// Base-field hom dimensions at one degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BaseCheck {
    pub degree: usize,
    pub sub_dim: usize,
    pub quot_dim: usize,
    /// `dim Hom_G(W, Sym^degree V)` before and after extending to the
    /// splitting field.
    pub extension: ExtensionCheck,
}

impl BaseCheck {
    pub fn holds(&self) -> bool {
        self.sub_dim > 0 && self.quot_dim > 0 && self.extension.equal
    }
}

/// Outcome of the full chain: split over an extension, build witnesses for
/// a simple quotient and a simple submodule, descend to the base field.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub splitting_degree: u32,
    /// From a simple quotient of the extended module; gives the submodule
    /// degree.
    pub sub_certificate: Certificate,
    /// From a simple submodule of the extended module; gives the quotient
    /// degree.
    pub quot_certificate: Certificate,
    pub periodic: Vec<Certificate>,
    pub base_checks: Vec<BaseCheck>,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn m_sub(&self) -> usize {
        self.sub_certificate.m
    }

    pub fn m_quot(&self) -> usize {
        self.quot_certificate.m
    }

    pub fn verified(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "splitting_degree": self.splitting_degree,
            "m_sub": self.m_sub(),
            "m_quot": self.m_quot(),
            "sub_certificate": self.sub_certificate.to_json(),
            "quot_certificate": self.quot_certificate.to_json(),
            "periodic": self.periodic.iter().map(Certificate::to_json).collect::<Vec<_>>(),
            "base_checks": self.base_checks,
            "violations": self.violations,
            "verified": self.verified(),
        })
    }
}

fn base_check(v: &Rep, w: &Rep, degree: usize, e: u32) -> Result<BaseCheck> {
    let s = sym_power(v, degree);
    Ok(BaseCheck {
        degree,
        sub_dim: hom_space(w, &s)?.dim(),
        quot_dim: hom_space(&s, w)?.dim(),
        extension: verify_extension_invariance(w, &s, e)?,
    })
}

/// Run the constructive chain for an irreducible `w` over the group field;
/// `table`, when given, is cross-checked against the constructive degrees.
pub fn verify_theorem(
    v: &Rep,
    w: &CertifiedIrreducible,
    options: TheoremOptions,
    table: Option<&OccurrenceTable>,
) -> Result<TheoremReport> {
    if w.rep().field() != v.group().field() || v.field() != v.group().field() {
        return Err(Error::Contract("V and W must be given over the group field".into()));
    }
    let seed = options.seed;
    let order = v.group().order();
    let split = splitting_extension(w, seed)?;
    let e = split.degree;
    let quotient = simple_quotient(&w.rep().extend_scalars(e)?, seed)?;
    let mut violations = Vec::new();
    if hom_space(quotient.module.rep(), quotient.module.rep())?.dim() != 1 {
        violations.push("simple quotient over the splitting field is not absolutely irreducible".into());
    }

    let (sub_certificate, quot_certificate) =
        rayon::join(|| assemble(&quotient.module, v, 0), || assemble(&split.submodule.module, v, 0));
    let (sub_certificate, quot_certificate) = (sub_certificate?, quot_certificate?);
    let periodic = (1..=options.k_max)
        .into_par_iter()
        .flat_map_iter(|k| [assemble(&quotient.module, v, k), assemble(&split.submodule.module, v, k)])
        .collect::<Result<Vec<_>>>()?;

    for (name, cert) in std::iter::once(("submodule", &sub_certificate))
        .chain(std::iter::once(("quotient", &quot_certificate)))
        .chain(periodic.iter().map(|c| ("periodic", c)))
    {
        if !cert.all_verified() {
            violations.push(format!("{name} certificate at degree {} failed: {:?}", cert.degree(), cert.flags));
        }
        if !(1..=order).contains(&cert.m) {
            violations.push(format!("constructive degree {} outside 1..={order}", cert.m));
        }
    }

    let mut degrees: Vec<usize> = vec![sub_certificate.m, quot_certificate.m];
    degrees.extend(periodic.iter().map(Certificate::degree));
    degrees.sort_unstable();
    degrees.dedup();
    let base_checks = degrees.par_iter().map(|&d| base_check(v, w.rep(), d, e)).collect::<Result<Vec<_>>>()?;
    for b in &base_checks {
        if !b.holds() {
            violations.push(format!("base-field check failed at degree {}: {:?}", b.degree, b));
        }
    }

    if let Some(t) = table {
        if !t.within_bound() {
            violations
                .push(format!("scan minima {:?}/{:?} not within 1..={}", t.minimal_sub_m, t.minimal_quot_m, t.bound));
        }
        if t.minimal_sub_m.is_some_and(|m| m > sub_certificate.m) {
            violations.push("scan submodule minimum exceeds the constructive degree".into());
        }
        if t.minimal_quot_m.is_some_and(|m| m > quot_certificate.m) {
            violations.push("scan quotient minimum exceeds the constructive degree".into());
        }
    }

    Ok(TheoremReport { splitting_degree: e, sub_certificate, quot_certificate, periodic, base_checks, violations })
}
