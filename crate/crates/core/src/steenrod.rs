//! The mod-2 Steenrod algebra as a term-rewriting system.
//!
//! Elements are F2-sums of words `Sq^{i1} ... Sq^{ik}` (sets of monomials,
//! since coefficients live in F2). A word is *admissible* when every adjacent
//! pair satisfies `i_j >= 2 i_{j+1}`; the admissible monomials form the
//! Serre-Cartan basis, and `adem_reduce` rewrites any element onto it by
//! repeatedly expanding an inadmissible pair with the Adem relation
//!
//! ```text
//! Sq^i Sq^j = sum_{k=0}^{[i/2]} C(j-k-1, i-2k) Sq^{i+j-k} Sq^k   (i < 2j)
//! ```
//!
//! The general reduced-power form of the relation over F_q is exposed by
//! [`adem_expand_general`] for cross-checks; normalization itself is mod 2
//! only (no Bockstein factors are modeled).

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Rewrite budget per public reduction call. The position-weighted degree of
/// a word strictly decreases at every Adem step, so running out of fuel is
/// an engine bug, not a property of the input.
const REDUCTION_FUEL: u64 = 50_000_000;

// ---------------------------------------------------------------------------
// binomial coefficients
// ---------------------------------------------------------------------------

/// Primality by trial division; the primes seen here are tiny.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `C(n, k) mod p` by Lucas's theorem.
///
/// Convention: the value is 0 whenever `k < 0`, `n < 0`, or `k > n`.
pub fn binom_mod_p(n: i64, k: i64, p: u64) -> Result<u64> {
    if !is_prime(p) {
        return Err(Error::InvalidArgument(format!("{p} is not prime")));
    }
    if k < 0 || n < 0 || k > n {
        return Ok(0);
    }
    let (mut n, mut k) = (n as u64, k as u64);
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        acc = acc * binom_small(nd, kd) % p;
        n /= p;
        k /= p;
    }
    Ok(acc)
}

/// `C(n, k) mod p` for digits `0 <= k <= n < p`.
fn binom_small(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut num = 1u128;
    let mut den = 1u128;
    for t in 0..k {
        num *= (n - t) as u128;
        den *= (t + 1) as u128;
    }
    (num / den) as u64
}

/// Whether `C(n, k)` is odd, for `n, k >= 0` (Lucas mod 2: bit containment).
#[inline]
fn binom_odd(n: u64, k: u64) -> bool {
    n & k == k
}

/// Parity of the generalized binomial coefficient `C(n, k)` for possibly
/// negative `n`, via the reflection `C(n, k) = (-1)^k C(k - n - 1, k)`.
///
/// In particular `C(n, 0) = 1` for every `n`. This is the convention under
/// which Wu's formula is an identity; [`binom_mod_p`] keeps the plain
/// vanishing convention instead.
pub fn binom_mod2_generalized(n: i64, k: i64) -> bool {
    if k < 0 {
        return false;
    }
    if n >= 0 {
        return k <= n && binom_odd(n as u64, k as u64);
    }
    binom_odd((k - n - 1) as u64, k as u64)
}

// ---------------------------------------------------------------------------
// monomials and elements
// ---------------------------------------------------------------------------

/// A word `Sq^{i1} ... Sq^{ik}` with every `i_j >= 1`.
/// The empty word is the unit (`Sq^0 = 1`).
///
/// The derived `Ord` is ascending lexicographic on exponent sequences; the
/// canonical *presentation* order (printing, serialization, bases) is the
/// reverse of it, descending lexicographic, so `Sq^5` prints before
/// `Sq^4 Sq^1`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SqMonomial {
    exponents: Vec<u32>,
}

impl SqMonomial {
    pub fn unit() -> Self {
        SqMonomial { exponents: Vec::new() }
    }

    /// A single factor; `sq(0)` is the unit.
    pub fn sq(i: u32) -> Self {
        if i == 0 {
            Self::unit()
        } else {
            SqMonomial { exponents: vec![i] }
        }
    }

    pub fn new(exponents: Vec<u32>) -> Result<Self> {
        if exponents.contains(&0) {
            return Err(Error::InvalidArgument(
                "Sq^0 factors are absorbed into the unit; exponents must be >= 1".into(),
            ));
        }
        Ok(SqMonomial { exponents })
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn is_unit(&self) -> bool {
        self.exponents.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.exponents.iter().sum()
    }

    pub fn is_admissible(&self) -> bool {
        self.exponents.windows(2).all(|w| w[0] >= 2 * w[1])
    }

    /// Concatenation of words (composition of operations, left to right).
    pub fn concat(&self, other: &SqMonomial) -> SqMonomial {
        let mut exponents = self.exponents.clone();
        exponents.extend_from_slice(&other.exponents);
        SqMonomial { exponents }
    }
}

impl fmt::Display for SqMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return write!(f, "1");
        }
        for (t, e) in self.exponents.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "Sq^{e}")?;
        }
        Ok(())
    }
}

/// An F2-sum of [`SqMonomial`]s with set semantics: inserting a monomial
/// twice cancels it. The zero element is the empty set.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SteenrodElement {
    terms: BTreeSet<SqMonomial>,
}

impl SteenrodElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        Self::from_monomial(SqMonomial::unit())
    }

    pub fn from_monomial(m: SqMonomial) -> Self {
        let mut terms = BTreeSet::new();
        terms.insert(m);
        SteenrodElement { terms }
    }

    /// Folds an iterator of monomials with F2 cancellation.
    pub fn from_terms<I: IntoIterator<Item = SqMonomial>>(iter: I) -> Self {
        let mut e = Self::zero();
        for m in iter {
            e.toggle(m);
        }
        e
    }

    /// Adds one monomial mod 2.
    pub fn toggle(&mut self, m: SqMonomial) {
        if !self.terms.remove(&m) {
            self.terms.insert(m);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn contains(&self, m: &SqMonomial) -> bool {
        self.terms.contains(m)
    }

    /// Terms in canonical (descending lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = &SqMonomial> {
        self.terms.iter().rev()
    }

    /// Sum over F2 (symmetric difference of term sets).
    pub fn add(&self, other: &SteenrodElement) -> SteenrodElement {
        let terms = self
            .terms
            .symmetric_difference(&other.terms)
            .cloned()
            .collect();
        SteenrodElement { terms }
    }

    /// Every term admissible, i.e. the element is in normal form.
    pub fn is_normal(&self) -> bool {
        self.terms.iter().all(SqMonomial::is_admissible)
    }

    /// The degrees occurring among terms (empty for the zero element).
    pub fn degrees(&self) -> BTreeSet<u32> {
        self.terms.iter().map(SqMonomial::degree).collect()
    }

    /// `{"terms": [[5], [4,1]]}` with exponent arrays in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms()
            .map(|m| serde_json::json!(m.exponents()))
            .collect();
        serde_json::json!({ "terms": terms })
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let arr = value
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| Error::InvalidArgument("expected {\"terms\": [...]}".into()))?;
        let mut e = Self::zero();
        for term in arr {
            let word = term
                .as_array()
                .ok_or_else(|| Error::InvalidArgument("term must be an exponent array".into()))?;
            let exponents = word
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::InvalidArgument("bad exponent".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            e.toggle(SqMonomial::new(exponents)?);
        }
        Ok(e)
    }
}

impl fmt::Display for SteenrodElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, m) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

/// An F2-sum of simple tensors in the square of the algebra.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TensorElement {
    pairs: BTreeSet<(SqMonomial, SqMonomial)>,
}

impl TensorElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn unit() -> Self {
        let mut t = Self::zero();
        t.toggle(SqMonomial::unit(), SqMonomial::unit());
        t
    }

    pub fn toggle(&mut self, left: SqMonomial, right: SqMonomial) {
        let pair = (left, right);
        if !self.pairs.remove(&pair) {
            self.pairs.insert(pair);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> impl Iterator<Item = &(SqMonomial, SqMonomial)> {
        self.pairs.iter().rev()
    }

    pub fn add(&self, other: &TensorElement) -> TensorElement {
        let pairs = self
            .pairs
            .symmetric_difference(&other.pairs)
            .cloned()
            .collect();
        TensorElement { pairs }
    }

    /// Componentwise product, each factor normalized by [`multiply`].
    pub fn multiply(&self, other: &TensorElement) -> TensorElement {
        let mut out = TensorElement::zero();
        for (a, b) in self.pairs.iter() {
            for (c, d) in other.pairs.iter() {
                let left = multiply(
                    &SteenrodElement::from_monomial(a.clone()),
                    &SteenrodElement::from_monomial(c.clone()),
                );
                let right = multiply(
                    &SteenrodElement::from_monomial(b.clone()),
                    &SteenrodElement::from_monomial(d.clone()),
                );
                for l in left.terms() {
                    for r in right.terms() {
                        out.toggle(l.clone(), r.clone());
                    }
                }
            }
        }
        out
    }

    /// Applies the counit on the left factor: keeps `b` from each `1 (x) b`.
    pub fn counit_left(&self) -> SteenrodElement {
        SteenrodElement::from_terms(
            self.pairs
                .iter()
                .filter(|(a, _)| a.is_unit())
                .map(|(_, b)| b.clone()),
        )
    }

    /// Applies the counit on the right factor.
    pub fn counit_right(&self) -> SteenrodElement {
        SteenrodElement::from_terms(
            self.pairs
                .iter()
                .filter(|(_, b)| b.is_unit())
                .map(|(a, _)| a.clone()),
        )
    }
}

// ---------------------------------------------------------------------------
// Adem relations and reduction
// ---------------------------------------------------------------------------

/// Expands one inadmissible pair `Sq^i Sq^j` (`i < 2j`) into its admissible
/// right-hand side. Every returned term has degree `i + j`.
pub fn adem_expand(i: u32, j: u32) -> Result<SteenrodElement> {
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument(
            "adem_expand requires i >= 1 and j >= 1".into(),
        ));
    }
    if i >= 2 * j {
        return Err(Error::InvalidArgument(format!(
            "Sq^{i} Sq^{j} is already admissible, no relation applies"
        )));
    }
    let mut out = SteenrodElement::zero();
    for k in 0..=i / 2 {
        if binom_odd((j - k - 1) as u64, (i - 2 * k) as u64) {
            let word = if k == 0 {
                SqMonomial::sq(i + j)
            } else {
                SqMonomial::new(vec![i + j - k, k]).expect("positive exponents")
            };
            out.toggle(word);
        }
    }
    Ok(out)
}

/// One term of the general Adem relation: coefficient mod p and the exponent
/// pair `(i + j - k, k)` of `P^{i+j-k} P^k`.
pub type GeneralAdemTerm = (u64, (u32, u32));

/// The general Adem relation for reduced powers over F_q, `q = p^m`:
///
/// ```text
/// P^i P^j = sum_{k=0}^{[i/q]} (-1)^{i-qk} C((q-1)(j-k)-1, i-qk) P^{i+j-k} P^k
/// ```
///
/// Returns the nonzero terms with coefficients reduced mod p, ordered by
/// ascending `k`. At `q = 2` the terms with odd coefficient coincide with
/// [`adem_expand`].
pub fn adem_expand_general(i: u32, j: u32, q: u64) -> Result<Vec<GeneralAdemTerm>> {
    let p = prime_power_base(q).ok_or_else(|| {
        Error::InvalidArgument(format!("q = {q} is not a prime power"))
    })?;
    if i == 0 || j == 0 {
        return Err(Error::InvalidArgument(
            "adem_expand_general requires i >= 1 and j >= 1".into(),
        ));
    }
    if (i as u64) >= q * j as u64 {
        return Err(Error::InvalidArgument(format!(
            "P^{i} P^{j} is already admissible for q = {q}, no relation applies"
        )));
    }
    let mut out = Vec::new();
    let mut k = 0u32;
    while (k as u64) * q <= i as u64 {
        let upper = (q - 1) as i64 * (j - k) as i64 - 1;
        let lower = i as i64 - q as i64 * k as i64;
        let mut coeff = binom_mod_p(upper, lower, p)?;
        if coeff != 0 && lower % 2 == 1 {
            coeff = p - coeff;
        }
        if coeff != 0 {
            out.push((coeff, (i + j - k, k)));
        }
        k += 1;
    }
    Ok(out)
}

fn prime_power_base(q: u64) -> Option<u64> {
    if q < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= q {
        if q.is_multiple_of(p) {
            let mut v = q;
            while v.is_multiple_of(p) {
                v /= p;
            }
            return (v == 1).then_some(p);
        }
        p += 1;
    }
    Some(q) // q itself is prime
}

/// Which inadmissible adjacent pair a reduction step rewrites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// The leftmost inadmissible pair (the default; deterministic normal forms).
    Leftmost,
    /// The rightmost inadmissible pair. Exists so confluence can be tested
    /// rather than assumed.
    Rightmost,
}

fn find_inadmissible(word: &[u32], strategy: Strategy) -> Option<usize> {
    let positions = 0..word.len().saturating_sub(1);
    let hit = |t: &usize| word[*t] < 2 * word[*t + 1];
    match strategy {
        Strategy::Leftmost => positions.clone().find(|t| hit(t)),
        Strategy::Rightmost => positions.clone().rev().find(|t| hit(t)),
    }
}

type WordSet = BTreeSet<Vec<u32>>;

fn toggle_word(set: &mut WordSet, w: Vec<u32>) {
    if !set.remove(&w) {
        set.insert(w);
    }
}

fn reduce_word(
    word: &[u32],
    strategy: Strategy,
    memo: &mut HashMap<Vec<u32>, WordSet>,
    fuel: &mut u64,
) -> WordSet {
    if let Some(hit) = memo.get(word) {
        return hit.clone();
    }
    let Some(t) = find_inadmissible(word, strategy) else {
        let mut set = WordSet::new();
        set.insert(word.to_vec());
        return set;
    };
    assert!(*fuel > 0, "Adem reduction fuel exhausted: this is an engine bug");
    *fuel -= 1;

    let (i, j) = (word[t], word[t + 1]);
    let mut acc = WordSet::new();
    for k in 0..=i / 2 {
        if !binom_odd((j - k - 1) as u64, (i - 2 * k) as u64) {
            continue;
        }
        let mut child = Vec::with_capacity(word.len() + 1);
        child.extend_from_slice(&word[..t]);
        child.push(i + j - k);
        if k > 0 {
            child.push(k);
        }
        child.extend_from_slice(&word[t + 2..]);
        for w in reduce_word(&child, strategy, memo, fuel) {
            toggle_word(&mut acc, w);
        }
    }
    memo.insert(word.to_vec(), acc.clone());
    acc
}

/// Rewrites an element onto the admissible basis using the given strategy.
pub fn adem_reduce_with(e: &SteenrodElement, strategy: Strategy) -> SteenrodElement {
    let mut memo = HashMap::new();
    let mut fuel = REDUCTION_FUEL;
    let mut out = SteenrodElement::zero();
    for m in e.terms() {
        for word in reduce_word(m.exponents(), strategy, &mut memo, &mut fuel) {
            out.toggle(SqMonomial { exponents: word });
        }
    }
    out
}

/// Normal form: every term admissible. Total, linear, idempotent, and
/// degree-preserving on each term.
pub fn adem_reduce(e: &SteenrodElement) -> SteenrodElement {
    adem_reduce_with(e, Strategy::Leftmost)
}

/// Product in the Steenrod algebra: concatenation of words followed by Adem
/// reduction. Bilinear over F2.
pub fn multiply(a: &SteenrodElement, b: &SteenrodElement) -> SteenrodElement {
    let mut concatenated = SteenrodElement::zero();
    for ma in a.terms() {
        for mb in b.terms() {
            concatenated.toggle(ma.concat(mb));
        }
    }
    adem_reduce(&concatenated)
}

/// The comultiplication, `psi(Sq^k) = sum_{i+j=k} Sq^i (x) Sq^j` on
/// generators, extended multiplicatively to words and normalized.
pub fn coproduct(e: &SteenrodElement) -> TensorElement {
    let mut out = TensorElement::zero();
    for word in e.terms() {
        let mut acc = TensorElement::unit();
        for &k in word.exponents() {
            let mut next = TensorElement::zero();
            for (a, b) in acc.pairs.iter() {
                for i in 0..=k {
                    let left = adem_reduce(&SteenrodElement::from_monomial(
                        a.concat(&SqMonomial::sq(i)),
                    ));
                    let right = adem_reduce(&SteenrodElement::from_monomial(
                        b.concat(&SqMonomial::sq(k - i)),
                    ));
                    for l in left.terms() {
                        for r in right.terms() {
                            next.toggle(l.clone(), r.clone());
                        }
                    }
                }
            }
            acc = next;
        }
        out = out.add(&acc);
    }
    out
}

/// All admissible monomials of degree `n`, in canonical order (descending
/// lexicographic on exponent sequences; for 6: `Sq^6, Sq^5 Sq^1, Sq^4 Sq^2`).
pub fn admissible_basis(n: u32) -> Vec<SqMonomial> {
    let mut out = Vec::new();
    let mut acc = Vec::new();
    fn rec(remaining: u32, cap: u32, acc: &mut Vec<u32>, out: &mut Vec<SqMonomial>) {
        if remaining == 0 {
            out.push(SqMonomial { exponents: acc.clone() });
            return;
        }
        let hi = remaining.min(cap);
        for first in (1..=hi).rev() {
            acc.push(first);
            rec(remaining - first, first / 2, acc, out);
            acc.pop();
        }
    }
    rec(n, n, &mut acc, &mut out);
    out
}
