//! Structural laws of the Steenrod action on catalog cohomology rings:
//! Cartan identity, instability, and compatibility with the Adem relations.

use cobord::cohomology::{
    apply_steenrod, cup, sq, AlgebraPresentation, ClassElement, Generator, Monomial, SqRuleSet,
};
use cobord::manifolds::{cp, dold, product, rp, ManifoldModel};
use cobord::steenrod::{adem_expand, SqMonomial, SteenrodElement};

fn catalog_rings() -> Vec<ManifoldModel> {
    vec![
        rp(6),
        rp(8),
        cp(3),
        dold(1, 2),
        dold(2, 2),
        product(&rp(2), &rp(2)),
        product(&rp(3), &cp(1)),
    ]
}

#[test]
fn cartan_identity_on_catalog_rings() {
    for model in catalog_rings() {
        let comp = &model.components()[0];
        let (ring, rules) = (comp.ring(), comp.rules());
        let top = ring.top_degree();
        for dx in 1..=8.min(top) {
            for dy in 1..=8.min(top.saturating_sub(dx)) {
                for x in ring.monomial_basis(dx) {
                    let x = ClassElement::from_monomial(x);
                    for y in ring.monomial_basis(dy) {
                        let y = ClassElement::from_monomial(y);
                        let xy = cup(&x, &y, ring).unwrap();
                        for k in 0..=8u32 {
                            let lhs = sq(k, &xy, ring, rules).unwrap();
                            let mut rhs = ClassElement::zero();
                            for i in 0..=k {
                                let sx = sq(i, &x, ring, rules).unwrap();
                                let sy = sq(k - i, &y, ring, rules).unwrap();
                                rhs = rhs.add(&cup(&sx, &sy, ring).unwrap());
                            }
                            assert_eq!(
                                lhs,
                                rhs,
                                "Cartan fails: ring {}, Sq^{k}({} . {})",
                                model.label(),
                                ring.format_class(&x),
                                ring.format_class(&y),
                            );
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn instability_on_catalog_basis_monomials() {
    for model in catalog_rings() {
        let comp = &model.components()[0];
        let (ring, rules) = (comp.ring(), comp.rules());
        for d in 0..=ring.top_degree() {
            for m in ring.monomial_basis(d) {
                let x = ClassElement::from_monomial(m);
                let square = sq(d, &x, ring, rules).unwrap();
                assert_eq!(square, cup(&x, &x, ring).unwrap(), "cup square in {model:?}");
                for extra in 1..=3 {
                    assert!(
                        sq(d + extra, &x, ring, rules).unwrap().is_zero(),
                        "Sq^{} above degree {d} must vanish",
                        d + extra
                    );
                }
            }
        }
    }
}

/// `Sq^i Sq^j` and its Adem expansion act identically on every basis
/// monomial of degree <= 10 in three variables, for all inadmissible pairs
/// with `i + j <= 12`.
#[test]
fn adem_compatibility_of_the_action() {
    let gens = (1..=3)
        .map(|t| Generator {
            name: format!("t{t}"),
            degree: 1,
            trunc: 32,
        })
        .collect();
    let ring = AlgebraPresentation::new(gens, 0).unwrap();
    let rules = ring
        .generators()
        .iter()
        .enumerate()
        .map(|(g, _)| {
            let mut e = vec![0u32; 3];
            e[g] = 1;
            let lin = ClassElement::from_monomial(Monomial::new(e.clone()));
            e[g] = 2;
            vec![lin, ClassElement::from_monomial(Monomial::new(e))]
        })
        .collect();
    let rules = SqRuleSet::new(&ring, rules).unwrap();

    let inputs: Vec<ClassElement> = (0..=10u32)
        .flat_map(|d| ring.monomial_basis(d))
        .map(ClassElement::from_monomial)
        .collect();

    for j in 1..=11u32 {
        for i in 1..(2 * j).min(13 - j) {
            let word = SteenrodElement::from_monomial(SqMonomial::new(vec![i, j]).unwrap());
            let expanded = adem_expand(i, j).unwrap();
            for x in &inputs {
                assert_eq!(
                    apply_steenrod(&word, x, &ring, &rules).unwrap(),
                    apply_steenrod(&expanded, x, &ring, &rules).unwrap(),
                    "Sq^{i} Sq^{j} on {}",
                    ring.format_class(x)
                );
            }
        }
    }
}

/// Composition law: applying a product equals applying factors in sequence.
#[test]
fn action_respects_multiplication() {
    let model = rp(10);
    let comp = &model.components()[0];
    let (ring, rules) = (comp.ring(), comp.rules());
    let a = SteenrodElement::from_terms([
        SqMonomial::new(vec![2, 1]).unwrap(),
        SqMonomial::sq(4),
    ]);
    // b is kept homogeneous so the staged intermediate is a valid input
    let b = SteenrodElement::from_terms([
        SqMonomial::sq(3),
        SqMonomial::new(vec![2, 1]).unwrap(),
    ]);
    let ab = cobord::steenrod::multiply(&a, &b);
    for d in 1..=6u32 {
        for m in ring.monomial_basis(d) {
            let x = ClassElement::from_monomial(m);
            let via_product = apply_steenrod(&ab, &x, ring, rules).unwrap();
            let staged = apply_steenrod(&b, &x, ring, rules).unwrap();
            let via_stages = apply_steenrod(&a, &staged, ring, rules).unwrap();
            assert_eq!(via_product, via_stages);
        }
    }
}
