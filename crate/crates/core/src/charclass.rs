//! Wu classes, total Stiefel-Whitney classes, Stiefel-Whitney numbers, and
//! the consistency checks tying them together.
//!
//! The Wu class `nu_k` in `H^k` is the unique solution of
//! `<nu_k cup x, mu> = <Sq^k(x), mu>` for every `x` in `H^(n-k)`; uniqueness
//! is Poincare duality, and the engine finds it by solving one F2 linear
//! system per degree with a fixed pivot order. The total Stiefel-Whitney
//! class is then `w = Sq(nu)`, and Stiefel-Whitney numbers are pairings of
//! cup products of its graded parts against the fundamental class.

use std::collections::BTreeMap;

use crate::cohomology::{cup, pairing, sq, total_sq, AlgebraPresentation, ClassElement};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, SolveOutcome};
use crate::manifolds::{euler_characteristic, ConnectedModel, ManifoldModel};
use crate::partition::{partitions_of, Partition};
use crate::steenrod::binom_mod2_generalized;

/// A total (inhomogeneous) class `1 + x_1 + x_2 + ...` with `x_k` in `H^k`.
/// The degree-0 part is always the unit and is stored implicitly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TotalClass {
    dimension: u32,
    parts: BTreeMap<u32, ClassElement>,
}

impl TotalClass {
    /// The trivial class `1`.
    pub fn one(dimension: u32) -> Self {
        TotalClass {
            dimension,
            parts: BTreeMap::new(),
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    /// The degree-`k` part; `k = 0` yields the unit of the given ring.
    pub fn part(&self, k: u32, ring: &AlgebraPresentation) -> ClassElement {
        if k == 0 {
            return ClassElement::unit(ring);
        }
        self.parts.get(&k).cloned().unwrap_or_default()
    }

    /// Nonzero parts in positive degrees, ascending.
    pub fn positive_parts(&self) -> impl Iterator<Item = (u32, &ClassElement)> {
        self.parts.iter().map(|(&k, v)| (k, v))
    }

    pub fn set_part(&mut self, k: u32, value: ClassElement) {
        assert!(k >= 1 && k <= self.dimension, "part degree out of range");
        if value.is_zero() {
            self.parts.remove(&k);
        } else {
            self.parts.insert(k, value);
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.parts.is_empty()
    }

    /// `1 + a + a^2` style rendering with the ring's generator names.
    pub fn format(&self, ring: &AlgebraPresentation) -> String {
        let mut pieces = vec!["1".to_string()];
        for (_, cls) in self.positive_parts() {
            pieces.push(ring.format_class(cls));
        }
        pieces.join(" + ")
    }

    /// `[{"degree": 0, "element": [[0,..]]}, ...]`, ascending degree.
    pub fn to_json(&self, ring: &AlgebraPresentation) -> serde_json::Value {
        let mut classes = vec![serde_json::json!({
            "degree": 0,
            "element": ClassElement::unit(ring).to_json(),
        })];
        for (k, cls) in self.positive_parts() {
            classes.push(serde_json::json!({"degree": k, "element": cls.to_json()}));
        }
        serde_json::json!(classes)
    }
}

/// The complete Stiefel-Whitney-number invariant of a closed n-manifold:
/// one F2 value per partition of n, in canonical partition order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SWVector {
    dimension: u32,
    entries: Vec<(Partition, bool)>,
}

impl SWVector {
    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn entries(&self) -> &[(Partition, bool)] {
        &self.entries
    }

    pub fn get(&self, partition: &Partition) -> Option<bool> {
        self.entries
            .iter()
            .find(|(p, _)| p == partition)
            .map(|&(_, v)| v)
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|&(_, v)| !v)
    }

    /// `{"dimension": n, "numbers": [{"partition": [...], "value": 0|1}, ...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let numbers: Vec<serde_json::Value> = self
            .entries
            .iter()
            .map(|(p, v)| {
                serde_json::json!({"partition": p.parts(), "value": if *v { 1 } else { 0 }})
            })
            .collect();
        serde_json::json!({"dimension": self.dimension, "numbers": numbers})
    }
}

/// Solves for all Wu classes of a connected closed manifold.
///
/// `nu_0 = 1`; `nu_k = 0` for `k > n/2` (instability kills `Sq^k` on
/// `H^(n-k)` there, and duality then forces the zero solution), so only
/// degrees up to `n/2` are solved for.
pub fn wu_classes(m: &ConnectedModel) -> Result<TotalClass> {
    let ring = m.ring();
    let n = ring.total_dimension();
    let mut nu = TotalClass::one(n);
    for k in 1..=n / 2 {
        let unknowns = ring.monomial_basis(k);
        let equations = ring.monomial_basis(n - k);
        let mut rhs = Vec::with_capacity(equations.len());
        for x in &equations {
            let sqx = sq(k, &ClassElement::from_monomial(x.clone()), ring, m.rules())?;
            rhs.push(pairing(&sqx, ring)?);
        }
        if unknowns.is_empty() {
            if rhs.iter().any(|&b| b) {
                return Err(Error::InvariantViolation(format!(
                    "Sq^{k} pairs nontrivially but H^{k} is zero"
                )));
            }
            continue;
        }
        let top = ring.top_monomial();
        let mut matrix = F2Matrix::zero(equations.len(), unknowns.len());
        for (r, x) in equations.iter().enumerate() {
            for (c, u) in unknowns.iter().enumerate() {
                if ring.mul_monomials(u, x).as_ref() == Some(&top) {
                    matrix.set(r, c, true);
                }
            }
        }
        match matrix.solve(&rhs) {
            SolveOutcome::Unique(bits) => {
                let cls = ClassElement::from_monomials(
                    unknowns
                        .iter()
                        .zip(&bits)
                        .filter(|&(_, &b)| b)
                        .map(|(u, _)| u.clone()),
                );
                nu.set_part(k, cls);
            }
            SolveOutcome::Inconsistent | SolveOutcome::Underdetermined => {
                return Err(Error::InvariantViolation(format!(
                    "degenerate cup pairing in degree {k}: Wu class is not uniquely determined"
                )));
            }
        }
    }
    Ok(nu)
}

/// Total Stiefel-Whitney class `w = Sq(nu)`, regraded by degree.
pub fn sw_total(m: &ConnectedModel) -> Result<TotalClass> {
    let ring = m.ring();
    let n = ring.total_dimension();
    let nu = wu_classes(m)?;
    let mut total = ClassElement::unit(ring);
    for (_, part) in nu.positive_parts() {
        total = total.add(&total_sq(part, ring, m.rules())?);
    }
    let mut w = TotalClass::one(n);
    for k in 1..=n {
        let part = total.graded_part(ring, k);
        if !part.is_zero() {
            w.set_part(k, part);
        }
    }
    Ok(w)
}

/// One Stiefel-Whitney number `<w_{i1} ... w_{ip}, mu>`, summed over
/// components (so it is additive under disjoint union).
pub fn sw_number(m: &ManifoldModel, partition: &Partition) -> Result<bool> {
    if partition.sum() != m.dimension() {
        return Err(Error::InvalidArgument(format!(
            "partition {partition} of {} does not match dimension {}",
            partition.sum(),
            m.dimension()
        )));
    }
    let mut acc = false;
    for comp in m.components() {
        let w = sw_total(comp)?;
        acc ^= component_number(comp, &w, partition)?;
    }
    Ok(acc)
}

fn component_number(
    comp: &ConnectedModel,
    w: &TotalClass,
    partition: &Partition,
) -> Result<bool> {
    let ring = comp.ring();
    let mut prod = ClassElement::unit(ring);
    for &p in partition.parts() {
        let part = w.part(p, ring);
        if part.is_zero() {
            return Ok(false);
        }
        prod = cup(&prod, &part, ring)?;
    }
    pairing(&prod, ring)
}

/// The full Stiefel-Whitney vector over all partitions of the dimension.
pub fn all_sw_numbers(m: &ManifoldModel) -> Result<SWVector> {
    let n = m.dimension();
    let parts = partitions_of(n);
    let mut values = vec![false; parts.len()];
    for comp in m.components() {
        let w = sw_total(comp)?;
        for (slot, partition) in values.iter_mut().zip(&parts) {
            *slot ^= component_number(comp, &w, partition)?;
        }
    }
    Ok(SWVector {
        dimension: n,
        entries: parts.into_iter().zip(values).collect(),
    })
}

/// `<w_n, mu> = chi mod 2` for closed manifolds.
pub fn euler_parity_check(m: &ManifoldModel) -> Result<bool> {
    let n = m.dimension();
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Euler parity is checked for dimension >= 1".into(),
        ));
    }
    let top = sw_number(m, &Partition::new(vec![n])?)?;
    let chi_parity = euler_characteristic(m).rem_euclid(2) == 1;
    Ok(top == chi_parity)
}

/// Verifies Wu's formula
/// `Sq^i(w_j) = sum_{k=0}^{i} C(j+k-i-1, k) w_{i-k} w_{j+k}`
/// in `H^(i+j)` of every component, with the generalized binomial parity
/// (so the `k = 0` coefficient `C(j-i-1, 0)` is 1 even when `j <= i`).
pub fn wu_formula_check(m: &ManifoldModel, i: u32, j: u32) -> Result<bool> {
    if i + j > m.dimension() {
        return Err(Error::InvalidArgument(format!(
            "need i + j <= dim: {i} + {j} > {}",
            m.dimension()
        )));
    }
    for comp in m.components() {
        let ring = comp.ring();
        let w = sw_total(comp)?;
        let lhs = sq(i, &w.part(j, ring), ring, comp.rules())?;
        let mut rhs = ClassElement::zero();
        for k in 0..=i {
            if !binom_mod2_generalized(j as i64 + k as i64 - i as i64 - 1, k as i64) {
                continue;
            }
            let term = cup(&w.part(i - k, ring), &w.part(j + k, ring), ring)?;
            rhs = rhs.add(&term);
        }
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Graded product of total classes truncated at `n`; the Whitney-sum law
/// `w(E1 + E2) = w(E1) w(E2)` for bundles over a common base ring.
pub fn whitney_sum_check(
    wa: &TotalClass,
    wb: &TotalClass,
    ring: &AlgebraPresentation,
    n: u32,
) -> Result<TotalClass> {
    let mut out = TotalClass::one(n);
    for k in 1..=n {
        let mut part = ClassElement::zero();
        for i in 0..=k {
            let (pa, pb) = (wa.part(i, ring), wb.part(k - i, ring));
            if pa.is_zero() || pb.is_zero() {
                continue;
            }
            part = part.add(&cup(&pa, &pb, ring)?);
        }
        out.set_part(k, part);
    }
    Ok(out)
}
