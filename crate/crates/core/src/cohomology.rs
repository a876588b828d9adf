//! Finitely presented graded-commutative F2 algebras with a Steenrod action.
//!
//! A presentation is a tensor product of truncated polynomial algebras
//! `F2[g]/(g^e)`. The Steenrod action is generated by per-generator rules
//! `Sq^i(g)` and extended to arbitrary classes by the Cartan formula, using
//! `Sq(g^e) = (Sq g)^e` (Frobenius in characteristic 2) so powers never have
//! to be expanded into repeated factors.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::f2::F2Matrix;

/// One polynomial generator `g` with `g^trunc = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: u32,
    pub trunc: u32,
}

/// A truncated-polynomial presentation of the cohomology of a space of
/// dimension `dim`.
///
/// Generators with truncation exponent 1 are identically zero and are pruned
/// at construction, so the point is the empty presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "WirePresentation")]
pub struct AlgebraPresentation {
    generators: Vec<Generator>,
    dim: u32,
}

#[derive(Deserialize)]
struct WirePresentation {
    generators: Vec<Generator>,
    dim: u32,
}

impl TryFrom<WirePresentation> for AlgebraPresentation {
    type Error = Error;
    fn try_from(w: WirePresentation) -> Result<Self> {
        AlgebraPresentation::new(w.generators, w.dim)
    }
}

impl AlgebraPresentation {
    pub fn new(generators: Vec<Generator>, dim: u32) -> Result<Self> {
        let generators: Vec<Generator> = generators
            .into_iter()
            .filter(|g| g.trunc > 1)
            .collect();
        for g in &generators {
            if g.degree == 0 {
                return Err(Error::InvalidArgument(format!(
                    "generator {} has degree 0",
                    g.name
                )));
            }
            if g.name.is_empty() {
                return Err(Error::InvalidArgument("generator with empty name".into()));
            }
        }
        let mut seen = BTreeSet::new();
        for g in &generators {
            if !seen.insert(&g.name) {
                return Err(Error::InvalidArgument(format!(
                    "duplicate generator name {}",
                    g.name
                )));
            }
        }
        Ok(AlgebraPresentation { generators, dim })
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn arity(&self) -> usize {
        self.generators.len()
    }

    pub fn total_dimension(&self) -> u32 {
        self.dim
    }

    /// Top degree carried by the presentation itself, `sum (trunc-1)*deg`.
    pub fn top_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| (g.trunc - 1) * g.degree)
            .sum()
    }

    /// The product of all `g^(trunc-1)`, spanning the top graded piece.
    pub fn top_monomial(&self) -> Monomial {
        Monomial(self.generators.iter().map(|g| g.trunc - 1).collect())
    }

    pub fn degree_of(&self, m: &Monomial) -> u32 {
        m.0.iter()
            .zip(&self.generators)
            .map(|(e, g)| e * g.degree)
            .sum()
    }

    /// Product of monomials; `None` when truncation kills it.
    pub fn mul_monomials(&self, a: &Monomial, b: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.generators.len());
        for ((&x, &y), g) in a.0.iter().zip(&b.0).zip(&self.generators) {
            let e = x + y;
            if e >= g.trunc {
                return None;
            }
            out.push(e);
        }
        Some(Monomial(out))
    }

    /// Monomial basis of the degree-`deg` graded piece, descending-lex order.
    pub fn monomial_basis(&self, deg: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut acc = Vec::with_capacity(self.generators.len());
        self.basis_rec(0, deg, &mut acc, &mut out);
        out
    }

    fn basis_rec(&self, idx: usize, left: u32, acc: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if idx == self.generators.len() {
            if left == 0 {
                out.push(Monomial(acc.clone()));
            }
            return;
        }
        let g = &self.generators[idx];
        let hi = (g.trunc - 1).min(left / g.degree);
        for e in (0..=hi).rev() {
            acc.push(e);
            self.basis_rec(idx + 1, left - e * g.degree, acc, out);
            acc.pop();
        }
    }

    /// F2 Betti number of the model in degree `k`.
    pub fn betti(&self, k: u32) -> usize {
        self.monomial_basis(k).len()
    }

    /// Tensor product (Kunneth over a field): concatenated generator lists,
    /// dimensions added. Colliding names get a 1-based occurrence suffix.
    pub fn tensor(&self, other: &AlgebraPresentation) -> AlgebraPresentation {
        let merged: Vec<Generator> = self
            .generators
            .iter()
            .chain(&other.generators)
            .cloned()
            .collect();
        let mut counts: HashMap<&str, usize> = HashMap::new();
        for g in &merged {
            *counts.entry(g.name.as_str()).or_default() += 1;
        }
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut used: BTreeSet<String> = BTreeSet::new();
        let mut generators = Vec::with_capacity(merged.len());
        for g in &merged {
            let mut name = if counts[g.name.as_str()] > 1 {
                let occ = seen.entry(g.name.clone()).or_insert(0);
                *occ += 1;
                format!("{}{}", g.name, occ)
            } else {
                g.name.clone()
            };
            while !used.insert(name.clone()) {
                name.push('_');
            }
            generators.push(Generator {
                name,
                degree: g.degree,
                trunc: g.trunc,
            });
        }
        AlgebraPresentation {
            generators,
            dim: self.dim + other.dim,
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.0.iter().all(|&e| e == 0) {
            return "1".into();
        }
        let mut s = String::new();
        for (e, g) in m.0.iter().zip(&self.generators) {
            match e {
                0 => {}
                1 => {
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    s.push_str(&g.name);
                }
                _ => {
                    if !s.is_empty() {
                        s.push(' ');
                    }
                    let _ = write!(s, "{}^{}", g.name, e);
                }
            }
        }
        s
    }

    pub fn format_class(&self, x: &ClassElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        x.monomials()
            .map(|m| self.format_monomial(m))
            .collect::<Vec<_>>()
            .join(" + ")
    }

    fn check_arity(&self, x: &ClassElement) -> Result<()> {
        if x.monomials.iter().any(|m| m.0.len() != self.arity()) {
            return Err(Error::InvalidArgument(
                "mismatched rings: element does not belong to this presentation".into(),
            ));
        }
        Ok(())
    }
}

/// An exponent vector aligned with a presentation's generator list.
///
/// The derived `Ord` is ascending lexicographic; canonical presentation order
/// is descending, obtained by reverse iteration.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn is_unit(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

/// An F2-sum of monomials.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClassElement {
    monomials: BTreeSet<Monomial>,
}

impl ClassElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit(ring: &AlgebraPresentation) -> Self {
        Self::from_monomial(Monomial(vec![0; ring.arity()]))
    }

    pub fn from_monomial(m: Monomial) -> Self {
        let mut monomials = BTreeSet::new();
        monomials.insert(m);
        ClassElement { monomials }
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(iter: I) -> Self {
        let mut e = Self::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }

    pub fn toggle(&mut self, m: Monomial) {
        if !self.monomials.remove(&m) {
            self.monomials.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.contains(m)
    }

    /// Monomials in canonical (descending lexicographic) order.
    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.monomials.iter().rev()
    }

    pub fn add(&self, other: &ClassElement) -> ClassElement {
        ClassElement {
            monomials: self
                .monomials
                .symmetric_difference(&other.monomials)
                .cloned()
                .collect(),
        }
    }

    /// `Ok(None)` for zero, `Ok(Some(d))` when homogeneous of degree `d`.
    pub fn homogeneous_degree(&self, ring: &AlgebraPresentation) -> Result<Option<u32>> {
        let mut degrees = self.monomials.iter().map(|m| ring.degree_of(m));
        let Some(first) = degrees.next() else {
            return Ok(None);
        };
        if degrees.all(|d| d == first) {
            Ok(Some(first))
        } else {
            Err(Error::InvalidArgument(
                "element is not homogeneous; decompose it by degree first".into(),
            ))
        }
    }

    /// The part of the element in one degree.
    pub fn graded_part(&self, ring: &AlgebraPresentation, degree: u32) -> ClassElement {
        ClassElement {
            monomials: self
                .monomials
                .iter()
                .filter(|m| ring.degree_of(m) == degree)
                .cloned()
                .collect(),
        }
    }

    /// Pads an element of a tensor factor into the product ring, with the
    /// factor's generators occupying `offset..offset+width`.
    pub fn embed(&self, offset: usize, total: usize) -> ClassElement {
        ClassElement {
            monomials: self
                .monomials
                .iter()
                .map(|m| {
                    let mut e = vec![0; total];
                    e[offset..offset + m.0.len()].copy_from_slice(&m.0);
                    Monomial(e)
                })
                .collect(),
        }
    }

    /// Array of exponent vectors in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!(self
            .monomials()
            .map(|m| m.exponents().to_vec())
            .collect::<Vec<_>>())
    }

    pub fn from_json(value: &serde_json::Value, ring: &AlgebraPresentation) -> Result<Self> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::InvalidArgument("expected an array of exponent vectors".into()))?;
        let mut out = Self::zero();
        for mono in arr {
            let exps = mono
                .as_array()
                .ok_or_else(|| Error::InvalidArgument("expected an exponent vector".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::InvalidArgument("bad exponent".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            if exps.len() != ring.arity() {
                return Err(Error::InvalidArgument(
                    "exponent vector length does not match the presentation".into(),
                ));
            }
            if exps
                .iter()
                .zip(ring.generators())
                .any(|(&e, g)| e >= g.trunc)
            {
                return Err(Error::InvalidArgument(
                    "monomial does not survive truncation".into(),
                ));
            }
            out.toggle(Monomial(exps));
        }
        Ok(out)
    }
}

/// Cup product; monomials killed by truncation are dropped.
pub fn cup(a: &ClassElement, b: &ClassElement, ring: &AlgebraPresentation) -> Result<ClassElement> {
    ring.check_arity(a)?;
    ring.check_arity(b)?;
    let mut out = ClassElement::zero();
    for ma in a.monomials.iter() {
        for mb in b.monomials.iter() {
            if let Some(m) = ring.mul_monomials(ma, mb) {
                out.toggle(m);
            }
        }
    }
    Ok(out)
}

/// Per-generator total squares: `rules[g][i] = Sq^i(g)` for `0 <= i <= deg g`.
///
/// Construction checks `Sq^0(g) = g` and the instability condition
/// `Sq^(deg g)(g) = g^2` (which may be zero after truncation); intermediate
/// rules must be homogeneous of the right degree.
pub struct SqRuleSet {
    rules: Vec<Vec<ClassElement>>,
    // Read-mostly; writes are idempotent, so sharing across threads is safe.
    power_cache: RwLock<PowerCache>,
}

/// (generator, exponent) -> graded pieces of `(Sq g)^e`, indexed by added degree.
type PowerCache = HashMap<(usize, u32), Arc<Vec<ClassElement>>>;

impl Clone for SqRuleSet {
    fn clone(&self) -> Self {
        SqRuleSet {
            rules: self.rules.clone(),
            power_cache: RwLock::new(HashMap::new()),
        }
    }
}

impl PartialEq for SqRuleSet {
    fn eq(&self, other: &Self) -> bool {
        self.rules == other.rules
    }
}

impl Eq for SqRuleSet {}

impl std::fmt::Debug for SqRuleSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SqRuleSet").field("rules", &self.rules).finish()
    }
}

impl SqRuleSet {
    pub fn new(ring: &AlgebraPresentation, rules: Vec<Vec<ClassElement>>) -> Result<Self> {
        if rules.len() != ring.arity() {
            return Err(Error::InvalidArgument(
                "rule table length does not match the generator count".into(),
            ));
        }
        for (g, (gen, per_gen)) in ring.generators().iter().zip(&rules).enumerate() {
            if per_gen.len() != gen.degree as usize + 1 {
                return Err(Error::InvalidArgument(format!(
                    "generator {} needs rules Sq^0..Sq^{}",
                    gen.name, gen.degree
                )));
            }
            let mut gen_monomial = vec![0u32; ring.arity()];
            gen_monomial[g] = 1;
            let gen_class = ClassElement::from_monomial(Monomial(gen_monomial));
            if per_gen[0] != gen_class {
                return Err(Error::InvalidArgument(format!(
                    "Sq^0({}) must be {} itself",
                    gen.name, gen.name
                )));
            }
            for (i, cls) in per_gen.iter().enumerate() {
                ring.check_arity(cls)?;
                if let Some(d) = cls.homogeneous_degree(ring)? {
                    if d != gen.degree + i as u32 {
                        return Err(Error::InvalidArgument(format!(
                            "Sq^{i}({}) has degree {d}, expected {}",
                            gen.name,
                            gen.degree + i as u32
                        )));
                    }
                }
            }
            let square = cup(&gen_class, &gen_class, ring)?;
            if per_gen[gen.degree as usize] != square {
                return Err(Error::InvalidArgument(format!(
                    "Sq^{}({}) must be the cup square",
                    gen.degree, gen.name
                )));
            }
        }
        Ok(SqRuleSet {
            rules,
            power_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn rules(&self) -> &[Vec<ClassElement>] {
        &self.rules
    }

    /// The inhomogeneous total square `Sq(g) = sum_i Sq^i(g)`.
    fn total_square_of_generator(&self, g: usize) -> ClassElement {
        let mut total = ClassElement::zero();
        for piece in &self.rules[g] {
            total = total.add(piece);
        }
        total
    }

    /// Graded pieces of `(Sq g)^e` by added degree, computed by binary
    /// powering (squaring is the Frobenius, so it is monomial-wise).
    fn gen_power_pieces(
        &self,
        ring: &AlgebraPresentation,
        g: usize,
        e: u32,
    ) -> Result<Arc<Vec<ClassElement>>> {
        if let Some(hit) = self.power_cache.read().unwrap().get(&(g, e)) {
            return Ok(hit.clone());
        }
        let total = self.total_square_of_generator(g);
        let mut acc = ClassElement::unit(ring);
        let mut base = total;
        let mut exp = e;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = cup(&acc, &base, ring)?;
            }
            exp >>= 1;
            if exp > 0 {
                base = frobenius_square(&base, ring);
            }
        }
        let base_degree = e * ring.generators()[g].degree;
        let mut max_added = 0;
        for m in acc.monomials.iter() {
            max_added = max_added.max(ring.degree_of(m) - base_degree);
        }
        let mut pieces = vec![ClassElement::zero(); max_added as usize + 1];
        for m in acc.monomials.iter() {
            let s = ring.degree_of(m) - base_degree;
            pieces[s as usize].toggle(m.clone());
        }
        let arc = Arc::new(pieces);
        self.power_cache
            .write()
            .unwrap()
            .entry((g, e))
            .or_insert_with(|| arc.clone());
        Ok(arc)
    }
}

/// `x -> x^2` in characteristic 2: square each monomial, drop truncated ones.
fn frobenius_square(x: &ClassElement, ring: &AlgebraPresentation) -> ClassElement {
    let mut out = ClassElement::zero();
    for m in x.monomials.iter() {
        if let Some(sq) = ring.mul_monomials(m, m) {
            out.toggle(sq);
        }
    }
    out
}

/// `Sq^i(x)` for homogeneous `x`, by the Cartan formula over the generator
/// rules. Satisfies `Sq^0 = id`, `Sq^(deg x)(x) = x cup x`, and vanishes for
/// `i > deg x`.
pub fn sq(
    i: u32,
    x: &ClassElement,
    ring: &AlgebraPresentation,
    rules: &SqRuleSet,
) -> Result<ClassElement> {
    ring.check_arity(x)?;
    let Some(_) = x.homogeneous_degree(ring)? else {
        return Ok(ClassElement::zero());
    };
    if i == 0 {
        return Ok(x.clone());
    }
    let mut out = ClassElement::zero();
    for m in x.monomials.iter() {
        // dp[b] collects the partial product whose added degree is b
        let mut dp: Vec<ClassElement> = vec![ClassElement::zero(); i as usize + 1];
        dp[0] = ClassElement::unit(ring);
        for (g, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pieces = rules.gen_power_pieces(ring, g, e)?;
            let mut next: Vec<ClassElement> = vec![ClassElement::zero(); i as usize + 1];
            for (b, partial) in dp.iter().enumerate() {
                if partial.is_zero() {
                    continue;
                }
                for (s, piece) in pieces.iter().enumerate() {
                    if b + s > i as usize || piece.is_zero() {
                        continue;
                    }
                    let prod = cup(partial, piece, ring)?;
                    next[b + s] = next[b + s].add(&prod);
                }
            }
            dp = next;
        }
        out = out.add(&dp[i as usize]);
    }
    Ok(out)
}

/// The total square `Sq(x) = sum_i Sq^i(x)`; finite by instability and
/// truncation. Defined for inhomogeneous `x` as well (it is additive).
pub fn total_sq(
    x: &ClassElement,
    ring: &AlgebraPresentation,
    rules: &SqRuleSet,
) -> Result<ClassElement> {
    ring.check_arity(x)?;
    let mut out = ClassElement::zero();
    for m in x.monomials.iter() {
        let mut acc = ClassElement::unit(ring);
        for (g, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pieces = rules.gen_power_pieces(ring, g, e)?;
            let mut full = ClassElement::zero();
            for piece in pieces.iter() {
                full = full.add(piece);
            }
            acc = cup(&acc, &full, ring)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Applies a Steenrod element to a homogeneous class, word factors acting
/// right to left. Linear in both arguments.
pub fn apply_steenrod(
    e: &crate::steenrod::SteenrodElement,
    x: &ClassElement,
    ring: &AlgebraPresentation,
    rules: &SqRuleSet,
) -> Result<ClassElement> {
    ring.check_arity(x)?;
    x.homogeneous_degree(ring)?;
    let mut out = ClassElement::zero();
    for word in e.terms() {
        let mut acc = x.clone();
        for &k in word.exponents().iter().rev() {
            if acc.is_zero() {
                break;
            }
            acc = sq(k, &acc, ring, rules)?;
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// Evaluation against the fundamental class: the coefficient of the top
/// monomial. `x` must be homogeneous (mixed degrees are rejected); classes
/// below the top degree pair to zero.
pub fn pairing(x: &ClassElement, ring: &AlgebraPresentation) -> Result<bool> {
    ring.check_arity(x)?;
    x.homogeneous_degree(ring)?;
    Ok(x.contains(&ring.top_monomial()))
}

/// Whether every cup pairing `H^k x H^(n-k) -> F2` is perfect: matching
/// Betti numbers in complementary degrees and full-rank pairing matrices.
pub fn poincare_nondegenerate(ring: &AlgebraPresentation) -> bool {
    let n = ring.total_dimension();
    if ring.top_degree() != n {
        return false;
    }
    let top = ring.top_monomial();
    for k in 0..=n / 2 {
        let basis_k = ring.monomial_basis(k);
        let basis_nk = ring.monomial_basis(n - k);
        if basis_k.len() != basis_nk.len() {
            return false;
        }
        if basis_k.is_empty() {
            continue;
        }
        let mut matrix = F2Matrix::zero(basis_nk.len(), basis_k.len());
        for (r, x) in basis_nk.iter().enumerate() {
            for (c, y) in basis_k.iter().enumerate() {
                if ring.mul_monomials(x, y).as_ref() == Some(&top) {
                    matrix.set(r, c, true);
                }
            }
        }
        if matrix.rank() != basis_k.len() {
            return false;
        }
    }
    true
}
