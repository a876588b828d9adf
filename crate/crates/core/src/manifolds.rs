//! Catalog of closed-manifold models: real and complex projective spaces,
//! Dold manifolds, spheres, and their finite products and disjoint unions.
//!
//! A connected model bundles a cohomology presentation, Steenrod rules, the
//! fundamental-class monomial, and the Euler characteristic. A manifold is a
//! nonempty list of connected components; for cobordism arithmetic all
//! components share one dimension.

use crate::cohomology::{
    poincare_nondegenerate, AlgebraPresentation, ClassElement, Generator, Monomial, SqRuleSet,
};
use crate::error::{Error, Result};

/// One connected closed manifold.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectedModel {
    ring: AlgebraPresentation,
    rules: SqRuleSet,
    fundamental: Monomial,
    euler: i64,
}

impl ConnectedModel {
    pub fn new(
        ring: AlgebraPresentation,
        rules: SqRuleSet,
        fundamental: Monomial,
        euler: i64,
    ) -> Result<Self> {
        if fundamental != ring.top_monomial() {
            return Err(Error::InvalidArgument(
                "fundamental class must be the top monomial of the presentation".into(),
            ));
        }
        Ok(ConnectedModel {
            ring,
            rules,
            fundamental,
            euler,
        })
    }

    pub fn ring(&self) -> &AlgebraPresentation {
        &self.ring
    }

    pub fn rules(&self) -> &SqRuleSet {
        &self.rules
    }

    pub fn fundamental(&self) -> &Monomial {
        &self.fundamental
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    pub fn dimension(&self) -> u32 {
        self.ring.total_dimension()
    }

    /// Structural well-formedness of a closed-manifold model: the top class
    /// sits in the manifold dimension, H^0 is one-dimensional, the cup
    /// pairing is perfect, and the stored Euler characteristic matches the
    /// alternating sum of Betti numbers.
    pub fn validate(&self) -> Result<()> {
        let n = self.ring.total_dimension();
        if self.ring.top_degree() != n {
            return Err(Error::InvariantViolation(format!(
                "top degree {} does not match dimension {n}",
                self.ring.top_degree()
            )));
        }
        if self.ring.betti(0) != 1 {
            return Err(Error::InvariantViolation("H^0 must be one-dimensional".into()));
        }
        if !poincare_nondegenerate(&self.ring) {
            return Err(Error::InvariantViolation(
                "cup pairing is degenerate; not a closed-manifold algebra".into(),
            ));
        }
        let alternating: i64 = (0..=n)
            .map(|k| {
                let b = self.ring.betti(k) as i64;
                if k % 2 == 0 {
                    b
                } else {
                    -b
                }
            })
            .sum();
        if alternating != self.euler {
            return Err(Error::InvariantViolation(format!(
                "stored Euler characteristic {} differs from Betti alternating sum {alternating}",
                self.euler
            )));
        }
        Ok(())
    }

    /// Tensor of two connected models (cartesian product of manifolds).
    fn product(&self, other: &ConnectedModel) -> ConnectedModel {
        let ring = self.ring.tensor(&other.ring);
        let total = ring.arity();
        let left = self.ring.arity();
        let mut rules = Vec::with_capacity(total);
        for per_gen in self.rules.rules() {
            rules.push(per_gen.iter().map(|c| c.embed(0, total)).collect());
        }
        for per_gen in other.rules.rules() {
            rules.push(per_gen.iter().map(|c| c.embed(left, total)).collect());
        }
        let rules = SqRuleSet::new(&ring, rules)
            .expect("tensor of valid Steenrod rule sets is valid");
        let mut fundamental = self.fundamental.exponents().to_vec();
        fundamental.extend_from_slice(other.fundamental.exponents());
        ConnectedModel {
            ring,
            rules,
            fundamental: Monomial::new(fundamental),
            euler: self.euler * other.euler,
        }
    }
}

/// A closed manifold as a disjoint union of connected models.
#[derive(Debug, Clone, PartialEq)]
pub struct ManifoldModel {
    label: String,
    dimension: u32,
    components: Vec<ConnectedModel>,
}

impl ManifoldModel {
    pub fn connected(label: impl Into<String>, component: ConnectedModel) -> Self {
        ManifoldModel {
            label: label.into(),
            dimension: component.dimension(),
            components: vec![component],
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn dimension(&self) -> u32 {
        self.dimension
    }

    pub fn components(&self) -> &[ConnectedModel] {
        &self.components
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn validate(&self) -> Result<()> {
        for c in &self.components {
            if c.dimension() != self.dimension {
                return Err(Error::InvariantViolation(
                    "component dimensions disagree".into(),
                ));
            }
            c.validate()?;
        }
        Ok(())
    }

    /// `{"label": ..., "dimension": n, "components": [...]}` with each
    /// component carrying its presentation, rules, fundamental monomial and
    /// Euler characteristic.
    pub fn to_json(&self) -> serde_json::Value {
        let components: Vec<serde_json::Value> = self
            .components
            .iter()
            .map(|c| {
                let rules: Vec<Vec<serde_json::Value>> = c
                    .rules
                    .rules()
                    .iter()
                    .map(|per_gen| per_gen.iter().map(|cls| cls.to_json()).collect())
                    .collect();
                serde_json::json!({
                    "ring": serde_json::to_value(&c.ring).expect("presentation serializes"),
                    "rules": rules,
                    "fundamental": c.fundamental.exponents(),
                    "euler": c.euler,
                })
            })
            .collect();
        serde_json::json!({
            "label": self.label,
            "dimension": self.dimension,
            "components": components,
        })
    }

    /// Parses and fully validates a model (including Poincare duality), so
    /// imported presentations are usable wherever catalog ones are.
    pub fn from_json(value: &serde_json::Value) -> Result<Self> {
        let label = value
            .get("label")
            .and_then(|v| v.as_str())
            .unwrap_or("imported")
            .to_string();
        let dimension = value
            .get("dimension")
            .and_then(|v| v.as_u64())
            .and_then(|v| u32::try_from(v).ok())
            .ok_or_else(|| Error::InvalidArgument("missing dimension".into()))?;
        let comps = value
            .get("components")
            .and_then(|v| v.as_array())
            .ok_or_else(|| Error::InvalidArgument("missing components".into()))?;
        if comps.is_empty() {
            return Err(Error::InvalidArgument("a manifold needs at least one component".into()));
        }
        let mut components = Vec::with_capacity(comps.len());
        for comp in comps {
            let ring: AlgebraPresentation = serde_json::from_value(
                comp.get("ring")
                    .cloned()
                    .ok_or_else(|| Error::InvalidArgument("missing ring".into()))?,
            )
            .map_err(|e| Error::InvalidArgument(format!("bad presentation: {e}")))?;
            let rule_rows = comp
                .get("rules")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidArgument("missing rules".into()))?;
            let mut rules = Vec::with_capacity(rule_rows.len());
            for row in rule_rows {
                let row = row
                    .as_array()
                    .ok_or_else(|| Error::InvalidArgument("bad rule row".into()))?;
                let mut per_gen = Vec::with_capacity(row.len());
                for cls in row {
                    per_gen.push(ClassElement::from_json(cls, &ring)?);
                }
                rules.push(per_gen);
            }
            let rules = SqRuleSet::new(&ring, rules)?;
            let fundamental = comp
                .get("fundamental")
                .and_then(|v| v.as_array())
                .ok_or_else(|| Error::InvalidArgument("missing fundamental".into()))?
                .iter()
                .map(|v| {
                    v.as_u64()
                        .and_then(|x| u32::try_from(x).ok())
                        .ok_or_else(|| Error::InvalidArgument("bad fundamental exponent".into()))
                })
                .collect::<Result<Vec<u32>>>()?;
            let euler = comp
                .get("euler")
                .and_then(|v| v.as_i64())
                .ok_or_else(|| Error::InvalidArgument("missing euler".into()))?;
            components.push(ConnectedModel::new(
                ring,
                rules,
                Monomial::new(fundamental),
                euler,
            )?);
        }
        let model = ManifoldModel {
            label,
            dimension,
            components,
        };
        model.validate()?;
        Ok(model)
    }
}

/// Index of a named generator in a presentation, if it survived truncation.
fn gen_index(ring: &AlgebraPresentation, name: &str) -> Option<usize> {
    ring.generators().iter().position(|g| g.name == name)
}

/// The class `prod name^e`, or zero when a named generator is missing
/// (truncated away) or the exponent dies.
fn named_class(ring: &AlgebraPresentation, powers: &[(&str, u32)]) -> ClassElement {
    let mut exps = vec![0u32; ring.arity()];
    for &(name, e) in powers {
        if e == 0 {
            continue;
        }
        let Some(idx) = gen_index(ring, name) else {
            return ClassElement::zero();
        };
        exps[idx] += e;
        if exps[idx] >= ring.generators()[idx].trunc {
            return ClassElement::zero();
        }
    }
    ClassElement::from_monomial(Monomial::new(exps))
}

/// Rule table shared by all catalog constructors. Degree-1 generators obey
/// the forced `Sq(g) = g + g^2`; the degree-2 projective class `c` has
/// `Sq^1 c = 0`, the degree-2 Dold fibre class `d` has `Sq^1 d = c d`; any
/// other generator (spheres) has all intermediate squares zero. The top rule
/// is always the cup square.
fn catalog_rules(ring: &AlgebraPresentation) -> SqRuleSet {
    let rules = ring
        .generators()
        .iter()
        .map(|g| {
            let name = g.name.as_str();
            let mut per_gen = Vec::with_capacity(g.degree as usize + 1);
            per_gen.push(named_class(ring, &[(name, 1)]));
            match (name, g.degree) {
                (_, 1) => {}
                ("c", 2) => per_gen.push(ClassElement::zero()),
                ("d", 2) => per_gen.push(named_class(ring, &[("c", 1), ("d", 1)])),
                _ => {
                    for _ in 1..g.degree {
                        per_gen.push(ClassElement::zero());
                    }
                }
            }
            per_gen.push(named_class(ring, &[(name, 2)]));
            per_gen
        })
        .collect();
    SqRuleSet::new(ring, rules).expect("catalog rules are well-formed")
}

fn catalog_model(label: String, gens: Vec<Generator>, dim: u32, euler: i64) -> ManifoldModel {
    let ring = AlgebraPresentation::new(gens, dim).expect("catalog presentation is well-formed");
    let rules = catalog_rules(&ring);
    let fundamental = ring.top_monomial();
    ManifoldModel::connected(
        label,
        ConnectedModel::new(ring, rules, fundamental, euler).expect("catalog model is well-formed"),
    )
}

/// Real projective space: `F2[a]/(a^(n+1))`, `Sq(a) = a + a^2`.
/// `rp(0)` is the point.
pub fn rp(n: u32) -> ManifoldModel {
    let euler = if n.is_multiple_of(2) { 1 } else { 0 };
    catalog_model(
        format!("RP({n})"),
        vec![Generator {
            name: "a".into(),
            degree: 1,
            trunc: n + 1,
        }],
        n,
        euler,
    )
}

/// Complex projective space: `F2[c]/(c^(n+1))` with `deg c = 2`,
/// `Sq^1 c = 0`, `Sq^2 c = c^2`; dimension `2n`, Euler characteristic `n+1`.
pub fn cp(n: u32) -> ManifoldModel {
    catalog_model(
        format!("CP({n})"),
        vec![Generator {
            name: "c".into(),
            degree: 2,
            trunc: n + 1,
        }],
        2 * n,
        n as i64 + 1,
    )
}

/// Dold manifold `P(m, n) = (S^m x CP^n)/involution`: dimension `m + 2n`,
/// `F2[c,d]/(c^(m+1), d^(n+1))` with `deg c = 1`, `deg d = 2`,
/// `Sq(c) = c + c^2`, `Sq(d) = d + cd + d^2`.
pub fn dold(m: u32, n: u32) -> ManifoldModel {
    let euler_rp = if m.is_multiple_of(2) { 1 } else { 0 };
    catalog_model(
        format!("Dold({m},{n})"),
        vec![
            Generator {
                name: "c".into(),
                degree: 1,
                trunc: m + 1,
            },
            Generator {
                name: "d".into(),
                degree: 2,
                trunc: n + 1,
            },
        ],
        m + 2 * n,
        euler_rp * (n as i64 + 1),
    )
}

/// The sphere: `F2[s]/(s^2)` with `deg s = n >= 1`; all intermediate squares
/// vanish by truncation.
pub fn sphere(n: u32) -> Result<ManifoldModel> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "S^0 is not connected; build it as RP(0) + RP(0)".into(),
        ));
    }
    let euler = if n.is_multiple_of(2) { 2 } else { 0 };
    Ok(catalog_model(
        format!("S({n})"),
        vec![Generator {
            name: "s".into(),
            degree: n,
            trunc: 2,
        }],
        n,
        euler,
    ))
}

fn product_label(m: &ManifoldModel) -> String {
    if m.components.len() > 1 {
        format!("({})", m.label)
    } else {
        m.label.clone()
    }
}

/// Cartesian product; distributes over disjoint unions. Dimensions add and
/// Euler characteristics multiply.
pub fn product(a: &ManifoldModel, b: &ManifoldModel) -> ManifoldModel {
    let mut components = Vec::with_capacity(a.components.len() * b.components.len());
    for ca in &a.components {
        for cb in &b.components {
            components.push(ca.product(cb));
        }
    }
    ManifoldModel {
        label: format!("{}*{}", product_label(a), product_label(b)),
        dimension: a.dimension + b.dimension,
        components,
    }
}

/// Disjoint union (addition in the bordism group). Both sides must have the
/// same dimension.
pub fn disjoint_union(a: &ManifoldModel, b: &ManifoldModel) -> Result<ManifoldModel> {
    if a.dimension != b.dimension {
        return Err(Error::DimensionMismatch {
            left: a.dimension,
            right: b.dimension,
        });
    }
    let mut components = a.components.clone();
    components.extend(b.components.iter().cloned());
    Ok(ManifoldModel {
        label: format!("{} + {}", a.label, b.label),
        dimension: a.dimension,
        components,
    })
}

/// Sum of component Euler characteristics.
pub fn euler_characteristic(m: &ManifoldModel) -> i64 {
    m.components.iter().map(|c| c.euler).sum()
}
