//! The unoriented cobordism ring at desk scale.
//!
//! A closed n-manifold bounds iff all its Stiefel-Whitney numbers vanish, and
//! two n-manifolds are cobordant iff their SW vectors agree, so every
//! decision here reduces to F2 linear algebra on SW vectors. The ring is
//! polynomial on one generator per degree not of the form `2^k - 1`, realized
//! by projective spaces in even degrees and Dold manifolds `P(2^r-1, s 2^r)`
//! in the remaining odd ones; products of generators in a fixed degree span
//! the whole group, which is what `classify` inverts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::charclass::{all_sw_numbers, SWVector};
use crate::error::{Error, Result};
use crate::f2::{F2Matrix, SolveOutcome};
use crate::manifolds::{dold, product, rp, ManifoldModel};
use crate::partition::{partitions_of, Partition};

pub use crate::partition::nondyadic_partitions;

/// Default ceiling for classification into generator monomials.
pub const DEFAULT_MAX_DIM: u32 = 8;

/// `dim_F2` of the degree-`n` part of the cobordism ring: the number of
/// partitions of `n` with no part of the form `2^s - 1`.
pub fn omega_dim(n: u32) -> usize {
    nondyadic_partitions(n).len()
}

/// A manifold bounds iff its SW vector vanishes.
pub fn is_null_cobordant(m: &ManifoldModel) -> Result<bool> {
    if m.dimension() == 0 {
        return Err(Error::InvalidArgument(
            "null-cobordism is decided for dimension >= 1".into(),
        ));
    }
    Ok(all_sw_numbers(m)?.is_zero())
}

/// Two manifolds of equal dimension are cobordant iff their SW vectors agree.
pub fn are_cobordant(a: &ManifoldModel, b: &ManifoldModel) -> Result<bool> {
    if a.dimension() != b.dimension() {
        return Err(Error::DimensionMismatch {
            left: a.dimension(),
            right: b.dimension(),
        });
    }
    Ok(all_sw_numbers(a)? == all_sw_numbers(b)?)
}

/// The degree-`i` polynomial generator: `RP^i` for even `i`, the Dold
/// manifold `P(2^r - 1, s 2^r)` for `i = 2^r (2s+1) - 1`. Degrees of the
/// form `2^k - 1` carry no generator.
pub fn dold_generator(i: u32) -> Result<ManifoldModel> {
    if (i + 1).is_power_of_two() {
        return Err(Error::NoGenerator(i));
    }
    if i.is_multiple_of(2) {
        return Ok(rp(i));
    }
    let r = (i + 1).trailing_zeros();
    let s = ((i + 1) >> r) / 2; // (odd part - 1) / 2, and odd part >= 3 here
    debug_assert!(r >= 1 && s >= 1);
    Ok(dold((1 << r) - 1, s << r))
}

/// An F2 combination of monomials in the generators `x_i`, each monomial a
/// descending multiset of generator degrees summing to `dimension`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassExpression {
    dimension: u32,
    monomials: BTreeSet<Vec<u32>>,
}

impl ClassExpression {
    pub fn new(dimension: u32, monomials: Vec<Vec<u32>>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for mut mono in monomials {
            mono.sort_unstable_by(|a, b| b.cmp(a));
            if mono.iter().sum::<u32>() != dimension {
                return Err(Error::InvalidArgument(format!(
                    "generator monomial degrees must sum to {dimension}"
                )));
            }
            if mono.iter().any(|&d| (d + 1).is_power_of_two()) {
                return Err(Error::InvalidArgument(
                    "generator degrees 2^k - 1 do not exist".into(),
                ));
            }
            if !set.insert(mono) {
                return Err(Error::InvalidArgument("duplicate generator monomial".into()));
            }
        }
        Ok(ClassExpression {
            dimension,
            monomials: set,
        })
    }

    pub fn zero(dimension: u32) -> Self {
        ClassExpression {
            dimension,
            monomials: BTreeSet::new(),
        }
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn is_zero(&self) -> bool {
        self.monomials.is_empty()
    }

    /// Monomials in canonical (descending lexicographic) order.
    pub fn monomials(&self) -> impl Iterator<Item = &Vec<u32>> {
        self.monomials.iter().rev()
    }

    /// `{"dimension": n, "monomials": [[...], ...]}` in canonical order.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "dimension": self.dimension,
            "monomials": self.monomials().collect::<Vec<_>>(),
        })
    }
}

impl fmt::Display for ClassExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (t, mono) in self.monomials().enumerate() {
            if t > 0 {
                write!(f, " + ")?;
            }
            let mut idx = 0;
            while idx < mono.len() {
                let d = mono[idx];
                let run = mono[idx..].iter().take_while(|&&x| x == d).count();
                if idx > 0 {
                    write!(f, " ")?;
                }
                if run == 1 {
                    write!(f, "x{d}")?;
                } else {
                    write!(f, "x{d}^{run}")?;
                }
                idx += run;
            }
        }
        Ok(())
    }
}

/// The product manifold named by one generator monomial.
pub fn realize_monomial(monomial: &[u32]) -> Result<ManifoldModel> {
    let mut acc: Option<ManifoldModel> = None;
    for &d in monomial {
        let g = dold_generator(d)?;
        acc = Some(match acc {
            None => g,
            Some(m) => product(&m, &g),
        });
    }
    acc.ok_or_else(|| Error::InvalidArgument("empty generator monomial".into()))
}

/// A manifold representing the expression: the disjoint union of its
/// monomials' product manifolds. The zero expression names no manifold.
pub fn realize(expr: &ClassExpression) -> Result<ManifoldModel> {
    let mut acc: Option<ManifoldModel> = None;
    for mono in expr.monomials() {
        let m = realize_monomial(mono)?;
        acc = Some(match acc {
            None => m,
            Some(prev) => crate::manifolds::disjoint_union(&prev, &m)?,
        });
    }
    acc.ok_or_else(|| {
        Error::InvalidArgument("the zero class has no canonical representative".into())
    })
}

/// The SW matrix of all degree-`n` generator monomials: one column per
/// monomial (canonical order), one row per partition of `n` (canonical
/// order). Dold's theorem makes the columns independent, which the
/// acceptance suite verifies for every covered degree.
#[derive(Debug, Clone)]
pub struct DegreeTable {
    dimension: u32,
    partitions: Vec<Partition>,
    monomials: Vec<Vec<u32>>,
    matrix: F2Matrix,
}

impl DegreeTable {
    pub fn compute(n: u32) -> Result<Self> {
        let partitions = partitions_of(n);
        let monomials: Vec<Vec<u32>> = nondyadic_partitions(n)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        let mut matrix = F2Matrix::zero(partitions.len(), monomials.len());
        for (c, mono) in monomials.iter().enumerate() {
            let model = realize_monomial(mono)?;
            let vector = all_sw_numbers(&model)?;
            for (r, (_, value)) in vector.entries().iter().enumerate() {
                matrix.set(r, c, *value);
            }
        }
        Ok(DegreeTable {
            dimension: n,
            partitions,
            monomials,
            matrix,
        })
    }

    /// Rebuilds a table from stored parts (e.g. a cache file), validating
    /// shapes but trusting the matrix values.
    pub fn from_parts(
        dimension: u32,
        monomials: Vec<Vec<u32>>,
        matrix: F2Matrix,
    ) -> Result<Self> {
        let partitions = partitions_of(dimension);
        let expected: Vec<Vec<u32>> = nondyadic_partitions(dimension)
            .into_iter()
            .map(|p| p.parts().to_vec())
            .collect();
        if monomials != expected {
            return Err(Error::InvalidArgument(
                "stored monomial list does not match this engine's canonical list".into(),
            ));
        }
        if matrix.rows() != partitions.len() || matrix.cols() != monomials.len() {
            return Err(Error::InvalidArgument("stored matrix has the wrong shape".into()));
        }
        Ok(DegreeTable {
            dimension,
            partitions,
            monomials,
            matrix,
        })
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn partitions(&self) -> &[Partition] {
        &self.partitions
    }

    pub fn monomials(&self) -> &[Vec<u32>] {
        &self.monomials
    }

    pub fn matrix(&self) -> &F2Matrix {
        &self.matrix
    }

    /// Expresses an SW vector in generator monomials.
    pub fn solve(&self, vector: &SWVector) -> Result<ClassExpression> {
        if vector.dimension() != self.dimension {
            return Err(Error::DimensionMismatch {
                left: vector.dimension(),
                right: self.dimension,
            });
        }
        let rhs: Vec<bool> = vector.entries().iter().map(|&(_, v)| v).collect();
        match self.matrix.solve(&rhs) {
            SolveOutcome::Unique(bits) => {
                let monomials = self
                    .monomials
                    .iter()
                    .zip(&bits)
                    .filter(|&(_, &b)| b)
                    .map(|(m, _)| m.clone())
                    .collect();
                Ok(ClassExpression {
                    dimension: self.dimension,
                    monomials,
                })
            }
            SolveOutcome::Inconsistent => Err(Error::InvariantViolation(format!(
                "SW vector in dimension {} lies outside the span of generator monomials",
                self.dimension
            ))),
            SolveOutcome::Underdetermined => Err(Error::InvariantViolation(format!(
                "generator monomials in dimension {} are linearly dependent",
                self.dimension
            ))),
        }
    }
}

/// Precomputed degree tables for dimensions `1..=max_dim`.
#[derive(Debug, Clone)]
pub struct GeneratorCatalog {
    max_dim: u32,
    tables: BTreeMap<u32, DegreeTable>,
}

impl GeneratorCatalog {
    pub fn new(max_dim: u32) -> Result<Self> {
        let mut tables = BTreeMap::new();
        for n in 1..=max_dim {
            tables.insert(n, DegreeTable::compute(n)?);
        }
        Ok(GeneratorCatalog { max_dim, tables })
    }

    pub fn max_dim(&self) -> u32 {
        self.max_dim
    }

    pub fn table(&self, n: u32) -> Option<&DegreeTable> {
        self.tables.get(&n)
    }
}

/// Expresses a manifold's cobordism class as generator monomials.
pub fn classify(m: &ManifoldModel, catalog: &GeneratorCatalog) -> Result<ClassExpression> {
    classify_with_table(m, lookup_table(catalog, m.dimension())?)
}

fn lookup_table(catalog: &GeneratorCatalog, dim: u32) -> Result<&DegreeTable> {
    if dim == 0 {
        return Err(Error::InvalidArgument(
            "classification needs dimension >= 1".into(),
        ));
    }
    catalog.table(dim).ok_or(Error::UnsupportedDimension {
        dim,
        max: catalog.max_dim(),
    })
}

/// Classification against one precomputed degree table.
pub fn classify_with_table(m: &ManifoldModel, table: &DegreeTable) -> Result<ClassExpression> {
    if m.dimension() != table.dimension() {
        return Err(Error::DimensionMismatch {
            left: m.dimension(),
            right: table.dimension(),
        });
    }
    table.solve(&all_sw_numbers(m)?)
}

/// `dim` of the degree-`p` bordism of a space with the given F2 Betti
/// numbers: `sum_{r+s=p} b_r * dim Omega_s`.
pub fn bordism_of_space_dim(betti: &[u64], p: u32) -> u64 {
    (0..=p)
        .map(|r| {
            let b = betti.get(r as usize).copied().unwrap_or(0);
            b * omega_dim(p - r) as u64
        })
        .sum()
}

/// The same tensor-dimension formula, exposed under the name used for weak
/// integral bordism groups of a PDE's ambient space; the caller chooses the
/// summation degree.
pub fn weak_integral_bordism_dim(betti: &[u64], degree: u32) -> u64 {
    bordism_of_space_dim(betti, degree)
}
