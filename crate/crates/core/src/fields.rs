//! Exact arithmetic in GF(p^f) = Z_p[t] / (modulus).
//!
//! Elements are stored as a single integer `c_0 + c_1 p + ... + c_{f-1} p^{f-1}`
//! over the coefficients of the reduced representative polynomial (lowest
//! degree first). The encoding is a bijection onto `0..q`, so equality and
//! hashing are plain integer comparisons. Small fields carry log/exp tables
//! built from the polynomial arithmetic; larger ones multiply polynomials
//! directly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 31;

const LOG_TABLE_LIMIT: u32 = 1 << 20;
const ADD_TABLE_LIMIT: u32 = 256;

/// An element of some [`FieldSpec`], in canonical encoded form.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize)]
pub struct FieldElem(u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    /// Integer encoding of the element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

struct Tables {
    // exp has length 2(q-1) so that log a + log b never needs reducing.
    exp: Vec<u32>,
    log: Vec<u32>,
    add: Option<Vec<u32>>,
    neg: Vec<u32>,
}

struct FieldData {
    p: u32,
    f: u32,
    q: u32,
    modulus: Vec<u32>,
    tables: Option<Tables>,
}

/// GF(p^f) with a fixed monic irreducible modulus. Cheap to clone.
#[derive(Clone)]
pub struct FieldSpec(Arc<FieldData>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {:?})", self.0.p, self.0.f, self.0.modulus)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.f == 1 {
            write!(f, "GF({})", self.0.p)
        } else {
            write!(f, "GF({}^{})", self.0.p, self.0.f)
        }
    }
}

/// Serializable description `{p, f, modulus}` of a field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldDescriptor {
    pub p: u32,
    pub f: u32,
    pub modulus: Vec<u32>,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

// ---------------------------------------------------------------------------
// Polynomials over Z_p, coefficient vectors lowest degree first, no trailing
// zeros (the zero polynomial is empty).

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2) is the inverse.
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

fn poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = r[dr] as u64 * lead_inv % p as u64;
        for (k, &bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = ((r[idx] as u64 + (p as u64 - c) * bk as u64) % p as u64) as u32;
        }
        trim(&mut r);
    }
    r
}

fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
    trim(&mut out);
    out
}

fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out = vec![0u32; n];
    for (k, slot) in out.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(&mut out);
    out
}

/// Polynomial quotient and remainder; `b` must be nonzero.
fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut quot = vec![0u32; r.len() - db];
    let lead_inv = inv_mod_p(b[db], p) as u64;
    while r.len() > db {
        let dr = r.len() - 1;
        let c = (r[dr] as u64 * lead_inv % p as u64) as u32;
        quot[dr - db] = c;
        for (k, &bk) in b.iter().enumerate() {
            let idx = dr - db + k;
            r[idx] = ((r[idx] as u64 + (p as u64 - c as u64) * bk as u64) % p as u64) as u32;
        }
        trim(&mut r);
    }
    trim(&mut quot);
    (quot, r)
}

/// Monic polynomials of exact degree `d` over Z_p, in lexicographic order of
/// their coefficient lists read lowest degree first.
fn monic_polys(d: u32, p: u32) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d);
    (0..count).map(move |n| {
        // The c_0 digit is the most significant one, giving low-degree-first
        // lexicographic order.
        let mut digits = vec![0u32; d as usize + 1];
        let mut rest = n;
        for k in (0..d as usize).rev() {
            digits[k] = (rest % p as u64) as u32;
            rest /= p as u64;
        }
        digits[d as usize] = 1;
        digits
    })
}

/// True iff the monic polynomial has no monic factor of degree in `1..=deg/2`.
pub fn is_irreducible_poly(modulus: &[u32], p: u32) -> bool {
    let deg = modulus.len() as u32 - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        for cand in monic_polys(d, p) {
            if poly_rem(modulus, &cand, p).is_empty() {
                return false;
            }
        }
    }
    true
}

type FieldCache = Mutex<HashMap<(u32, Vec<u32>), FieldSpec>>;

fn field_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build GF(p^f). Without a modulus the lexicographically smallest monic
/// irreducible of degree `f` is used (coefficients compared lowest degree
/// first); for `f = 1` that is the polynomial `t`.
pub fn make_field(p: u32, f: u32, modulus: Option<&[u32]>) -> Result<FieldSpec> {
    if !is_prime(p as u64) {
        return Err(Error::NotPrime(p as u64));
    }
    if f == 0 {
        return Err(Error::InvalidField("extension degree must be at least 1".into()));
    }
    let q = (p as u64)
        .checked_pow(f)
        .filter(|&q| q <= MAX_FIELD_SIZE)
        .ok_or_else(|| Error::InvalidField(format!("GF({p}^{f}) exceeds the supported size")))?;
    let modulus = match modulus {
        Some(m) => {
            if m.len() != f as usize + 1 || m[f as usize] != 1 || m.iter().any(|&c| c >= p) {
                return Err(Error::InvalidField(format!(
                    "modulus {m:?} is not a reduced monic polynomial of degree {f}"
                )));
            }
            if !is_irreducible_poly(m, p) {
                return Err(Error::ReducibleModulus { modulus: m.to_vec(), p });
            }
            m.to_vec()
        }
        None => monic_polys(f, p)
            .find(|c| is_irreducible_poly(c, p))
            .ok_or_else(|| Error::Contract(format!("no irreducible of degree {f} over GF({p})")))?,
    };
    let key = (p, modulus.clone());
    if let Some(hit) = field_cache().lock().unwrap().get(&key) {
        return Ok(hit.clone());
    }
    let mut data = FieldData { p, f, q: q as u32, modulus, tables: None };
    if data.q <= LOG_TABLE_LIMIT {
        data.tables = Some(build_tables(&data));
    }
    let field = FieldSpec(Arc::new(data));
    Ok(field_cache().lock().unwrap().entry(key).or_insert(field).clone())
}

fn decode(data: &FieldData, a: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(data.f as usize);
    let mut rest = a;
    for _ in 0..data.f {
        out.push(rest % data.p);
        rest /= data.p;
    }
    trim(&mut out);
    out
}

fn encode(data: &FieldData, coeffs: &[u32]) -> u32 {
    coeffs.iter().rev().fold(0u32, |acc, &c| acc * data.p + c)
}

fn slow_mul(data: &FieldData, a: u32, b: u32) -> u32 {
    let prod = poly_mul(&decode(data, a), &decode(data, b), data.p);
    encode(data, &poly_rem(&prod, &data.modulus, data.p))
}

fn slow_add(data: &FieldData, a: u32, b: u32) -> u32 {
    let (p, mut x, mut y) = (data.p, a, b);
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..data.f {
        out += ((x % p + y % p) % p) * place;
        x /= p;
        y /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn slow_neg(data: &FieldData, a: u32) -> u32 {
    let (p, mut x) = (data.p, a);
    let (mut out, mut place) = (0u32, 1u32);
    for _ in 0..data.f {
        out += ((p - x % p) % p) * place;
        x /= p;
        place = place.wrapping_mul(p);
    }
    out
}

fn build_tables(data: &FieldData) -> Tables {
    let q = data.q;
    // Smallest primitive element by encoding.
    let mut gen = 1u32;
    for cand in 1..q {
        let mut x = cand;
        let mut order = 1u32;
        while x != 1 {
            x = slow_mul(data, x, cand);
            order += 1;
        }
        if order == q - 1 {
            gen = cand;
            break;
        }
    }
    let n = (q - 1) as usize;
    let mut exp = vec![0u32; 2 * n.max(1)];
    let mut log = vec![0u32; q as usize];
    let mut x = 1u32;
    for (k, e) in exp.iter_mut().take(n).enumerate() {
        *e = x;
        log[x as usize] = k as u32;
        x = slow_mul(data, x, gen);
    }
    exp.copy_within(0..n, n);
    let neg = (0..q).map(|a| slow_neg(data, a)).collect();
    let add = if data.f > 1 && data.p != 2 && q <= ADD_TABLE_LIMIT {
        let mut table = vec![0u32; (q * q) as usize];
        for a in 0..q {
            for b in 0..q {
                table[(a * q + b) as usize] = slow_add(data, a, b);
            }
        }
        Some(table)
    } else {
        None
    };
    Tables { exp, log, add, neg }
}

impl FieldSpec {
    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> u32 {
        self.0.f
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor { p: self.0.p, f: self.0.f, modulus: self.0.modulus.clone() }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The element with the given integer encoding.
    pub fn elem(&self, code: u32) -> Result<FieldElem> {
        if code < self.0.q {
            Ok(FieldElem(code))
        } else {
            Err(Error::InvalidField(format!("{code} is not an element code of {self}")))
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FieldElem {
        FieldElem(n.rem_euclid(self.0.p as i64) as u32)
    }

    /// Element from its coefficient list (lowest degree first); the list is
    /// reduced modulo the modulus, so any length is accepted.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> FieldElem {
        let p = self.0.p;
        let mut poly: Vec<u32> = coeffs.iter().map(|&c| c.rem_euclid(p as i64) as u32).collect();
        trim(&mut poly);
        if poly.len() > self.0.f as usize {
            poly = poly_rem(&poly, &self.0.modulus, p);
        }
        FieldElem(encode(&self.0, &poly))
    }

    /// Coefficient list of length `f`, lowest degree first.
    pub fn coeffs(&self, a: FieldElem) -> Vec<u32> {
        let mut out = decode(&self.0, a.0);
        out.resize(self.0.f as usize, 0);
        out
    }

    /// The generator `t` of the field over Z_p (equal to 0 when f = 1).
    pub fn t(&self) -> FieldElem {
        self.from_coeffs(&[0, 1])
    }

    /// All elements in encoding order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.0.q).map(FieldElem)
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        let d = &*self.0;
        if d.p == 2 {
            return FieldElem(a.0 ^ b.0);
        }
        if d.f == 1 {
            let s = a.0 + b.0;
            return FieldElem(if s >= d.p { s - d.p } else { s });
        }
        if let Some(Tables { add: Some(table), .. }) = &d.tables {
            return FieldElem(table[(a.0 * d.q + b.0) as usize]);
        }
        FieldElem(slow_add(d, a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: FieldElem) -> FieldElem {
        let d = &*self.0;
        if d.p == 2 || a.0 == 0 {
            return a;
        }
        if d.f == 1 {
            return FieldElem(d.p - a.0);
        }
        match &d.tables {
            Some(t) => FieldElem(t.neg[a.0 as usize]),
            None => FieldElem(slow_neg(d, a.0)),
        }
    }

    #[inline]
    pub fn sub(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        let d = &*self.0;
        if d.f == 1 {
            return FieldElem(((a.0 as u64 * b.0 as u64) % d.p as u64) as u32);
        }
        match &d.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElem(slow_mul(d, a.0, b.0)),
        }
    }

    /// `a + b * c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: FieldElem, b: FieldElem, c: FieldElem) -> FieldElem {
        self.add(a, self.mul(b, c))
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.0 == 0 {
            return Err(Error::ZeroInverse);
        }
        let d = &*self.0;
        if let Some(t) = &d.tables {
            let n = d.q - 1;
            return Ok(FieldElem(t.exp[((n - t.log[a.0 as usize]) % n) as usize]));
        }
        Ok(self.inv_euclid(a))
    }

    /// Inverse by the extended Euclidean algorithm on polynomials; the
    /// table-free reference path.
    pub fn inv_euclid(&self, a: FieldElem) -> FieldElem {
        let d = &*self.0;
        let p = d.p;
        let (mut r0, mut r1) = (d.modulus.clone(), decode(d, a.0));
        let (mut s0, mut s1): (Vec<u32>, Vec<u32>) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let s2 = poly_sub(&s0, &poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        // r0 is a nonzero constant c; s0 * a = c.
        let c_inv = inv_mod_p(r0[0], p) as u64;
        let s: Vec<u32> = s0.iter().map(|&x| (x as u64 * c_inv % p as u64) as u32).collect();
        FieldElem(encode(d, &poly_rem(&s, &d.modulus, p)))
    }

    /// Product by direct polynomial multiplication and reduction.
    pub fn mul_poly(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(slow_mul(&self.0, a.0, b.0))
    }

    pub fn pow(&self, a: FieldElem, mut e: u64) -> FieldElem {
        let mut result = FieldElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Smallest `d >= 1` with `a^d = 1`, by iterated multiplication.
    pub fn mult_order(&self, a: FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let mut x = a;
        let mut d = 1u64;
        while x != FieldElem::ONE {
            x = self.mul(x, a);
            d += 1;
        }
        Ok(d)
    }

    /// The unique `i` in `[0, order)` with `base^i = target`, by enumeration.
    pub fn discrete_log(&self, base: FieldElem, target: FieldElem, order: u64) -> Result<u64> {
        let mut x = FieldElem::ONE;
        for i in 0..order {
            if x == target {
                return Ok(i);
            }
            x = self.mul(x, base);
        }
        Err(Error::NotAPower)
    }

    /// Smallest-encoding generator of the multiplicative group.
    pub fn primitive_element(&self) -> FieldElem {
        let n = self.0.q as u64 - 1;
        self.elements()
            .skip(1)
            .find(|&a| self.mult_order(a).ok() == Some(n))
            .expect("the multiplicative group of a finite field is cyclic")
    }

    /// Element encoded for reports: a bare integer for prime fields, a
    /// coefficient list otherwise.
    pub fn to_json(&self, a: FieldElem) -> serde_json::Value {
        if self.0.f == 1 {
            serde_json::Value::from(a.0)
        } else {
            serde_json::Value::from(self.coeffs(a))
        }
    }
}

/// A field embedding `source -> target`, determined by the image of `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldEmbedding {
    source: FieldSpec,
    target: FieldSpec,
    image_of_t: FieldElem,
}

impl FieldEmbedding {
    pub fn identity(field: &FieldSpec) -> Self {
        FieldEmbedding { source: field.clone(), target: field.clone(), image_of_t: field.t() }
    }

    /// Embedding sending `t` to the smallest-encoding root of the source
    /// modulus in `target`.
    pub fn find(source: &FieldSpec, target: &FieldSpec) -> Result<Self> {
        if source.p() != target.p() || !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::FieldMismatch(format!("{source} does not embed in {target}")));
        }
        if source == target {
            return Ok(Self::identity(source));
        }
        let modulus = source.modulus();
        let root = target
            .elements()
            .find(|&x| {
                let val = modulus
                    .iter()
                    .rev()
                    .fold(FieldElem::ZERO, |acc, &c| target.add(target.mul(acc, x), target.from_int(c as i64)));
                val.is_zero()
            })
            .ok_or_else(|| Error::Contract(format!("modulus of {source} has no root in {target}")))?;
        Ok(FieldEmbedding { source: source.clone(), target: target.clone(), image_of_t: root })
    }

    /// The degree-`e` extension of `source` (lex-min modulus over Z_p) with
    /// its computed embedding.
    pub fn extension(source: &FieldSpec, e: u32) -> Result<Self> {
        if e == 0 {
            return Err(Error::InvalidField("extension degree must be at least 1".into()));
        }
        let target = make_field(source.p(), source.degree() * e, None)?;
        Self::find(source, &target)
    }

    pub fn source(&self) -> &FieldSpec {
        &self.source
    }

    pub fn target(&self) -> &FieldSpec {
        &self.target
    }

    pub fn image_of_t(&self) -> FieldElem {
        self.image_of_t
    }

    pub fn apply(&self, a: FieldElem) -> FieldElem {
        let tgt = &self.target;
        self.source
            .coeffs(a)
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &c| tgt.add(tgt.mul(acc, self.image_of_t), tgt.from_int(c as i64)))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &FieldEmbedding) -> Result<FieldEmbedding> {
        if next.source != self.target {
            return Err(Error::FieldMismatch("embeddings do not compose".into()));
        }
        Ok(FieldEmbedding {
            source: self.source.clone(),
            target: next.target.clone(),
            image_of_t: next.apply(self.image_of_t),
        })
    }
}
