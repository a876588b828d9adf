//! Property tests for the Steenrod algebra: bialgebra laws on random
//! elements, faithfulness of the polynomial action, and the classical
//! squares of `Sq^(2^k)` as a regression set.

use std::collections::BTreeSet;

use proptest::prelude::*;

use cobord::cohomology::{
    apply_steenrod, AlgebraPresentation, ClassElement, Generator, Monomial, SqRuleSet,
};
use cobord::steenrod::{
    adem_expand, adem_reduce, coproduct, multiply, SqMonomial, SteenrodElement, TensorElement,
};

fn arb_word(max_len: usize, max_exp: u32) -> impl Strategy<Value = SqMonomial> {
    prop::collection::vec(1..=max_exp, 0..=max_len)
        .prop_map(|exps| SqMonomial::new(exps).expect("positive exponents"))
}

fn arb_element(max_len: usize, max_exp: u32) -> impl Strategy<Value = SteenrodElement> {
    prop::collection::vec(arb_word(max_len, max_exp), 0..=3)
        .prop_map(SteenrodElement::from_terms)
}

/// Simple tensors of length three, for the coassociativity check.
type Triple = (SqMonomial, SqMonomial, SqMonomial);

fn toggle(set: &mut BTreeSet<Triple>, t: Triple) {
    if !set.remove(&t) {
        set.insert(t);
    }
}

fn expand_left(t: &TensorElement) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for (a, b) in t.pairs() {
        for (x, y) in coproduct(&SteenrodElement::from_monomial(a.clone())).pairs() {
            toggle(&mut out, (x.clone(), y.clone(), b.clone()));
        }
    }
    out
}

fn expand_right(t: &TensorElement) -> BTreeSet<Triple> {
    let mut out = BTreeSet::new();
    for (a, b) in t.pairs() {
        for (x, y) in coproduct(&SteenrodElement::from_monomial(b.clone())).pairs() {
            toggle(&mut out, (a.clone(), x.clone(), y.clone()));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiply_is_associative(
        a in arb_element(3, 4),
        b in arb_element(3, 4),
        c in arb_element(3, 4),
    ) {
        let left = multiply(&multiply(&a, &b), &c);
        let right = multiply(&a, &multiply(&b, &c));
        prop_assert_eq!(left, right);
    }

    #[test]
    fn coproduct_is_coassociative(e in arb_element(3, 4)) {
        let psi = coproduct(&e);
        prop_assert_eq!(expand_left(&psi), expand_right(&psi));
    }

    #[test]
    fn coproduct_is_an_algebra_map(a in arb_element(2, 4), b in arb_element(2, 4)) {
        let lhs = coproduct(&multiply(&a, &b));
        let rhs = coproduct(&a).multiply(&coproduct(&b));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn counit_laws(e in arb_element(3, 4)) {
        let normal = adem_reduce(&e);
        let psi = coproduct(&e);
        prop_assert_eq!(psi.counit_left(), normal.clone());
        prop_assert_eq!(psi.counit_right(), normal);
    }

    #[test]
    fn reduction_is_linear_and_idempotent(a in arb_element(4, 8), b in arb_element(4, 8)) {
        let ra = adem_reduce(&a);
        prop_assert!(ra.is_normal());
        prop_assert_eq!(adem_reduce(&ra), ra.clone());
        prop_assert_eq!(adem_reduce(&a.add(&b)), ra.add(&adem_reduce(&b)));
    }
}

fn three_variable_model() -> (AlgebraPresentation, SqRuleSet) {
    let gens = ["t1", "t2", "t3"]
        .iter()
        .map(|name| Generator {
            name: (*name).into(),
            degree: 1,
            trunc: 64,
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
            let square = ClassElement::from_monomial(Monomial::new(e));
            vec![lin, square]
        })
        .collect();
    let rules = SqRuleSet::new(&ring, rules).unwrap();
    (ring, rules)
}

fn monomials_up_to(ring: &AlgebraPresentation, max_degree: u32) -> Vec<ClassElement> {
    (0..=max_degree)
        .flat_map(|d| ring.monomial_basis(d))
        .map(ClassElement::from_monomial)
        .collect()
}

/// Elements of equal degree agree after reduction iff they act identically
/// on the rank-three polynomial algebra in degrees up to 23.
#[test]
fn action_on_three_variables_is_faithful_up_to_degree_twenty() {
    let (ring, rules) = three_variable_model();
    let inputs = monomials_up_to(&ring, 23);

    let acts_equally = |x: &SteenrodElement, y: &SteenrodElement| -> bool {
        inputs.iter().all(|m| {
            apply_steenrod(x, m, &ring, &rules).unwrap()
                == apply_steenrod(y, m, &ring, &rules).unwrap()
        })
    };

    // equal normal forms act equally: inadmissible words against their forms
    for (word, _) in [(vec![2, 3], 5), (vec![6, 5], 11), (vec![13, 7], 20)] {
        let raw = SteenrodElement::from_monomial(SqMonomial::new(word).unwrap());
        let reduced = adem_reduce(&raw);
        assert!(acts_equally(&raw, &reduced));
    }

    // distinct normal forms are separated by some input monomial
    let distinct = [
        (vec![20], vec![19, 1]),
        (vec![16, 4], vec![18, 2]),
        (vec![10, 5], vec![15]),
        (vec![4, 2, 1], vec![7]),
    ];
    for (u, v) in distinct {
        let x = SteenrodElement::from_monomial(SqMonomial::new(u).unwrap());
        let y = SteenrodElement::from_monomial(SqMonomial::new(v).unwrap());
        assert!(x.is_normal() && y.is_normal());
        assert!(!acts_equally(&x, &y), "{x} vs {y} should differ in action");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    /// Random elements of degree <= 20 agree after reduction iff they act
    /// identically on the rank-three polynomial algebra (inputs of degree
    /// <= 23 suffice to separate them).
    #[test]
    fn normal_form_equality_is_action_equality(
        a in arb_element(4, 5),
        b in arb_element(4, 5),
    ) {
        let (ring, rules) = three_variable_model();
        let inputs = monomials_up_to(&ring, 23);
        let same_action = inputs.iter().all(|m| {
            apply_steenrod(&a, m, &ring, &rules).unwrap()
                == apply_steenrod(&b, m, &ring, &rules).unwrap()
        });
        let same_normal = adem_reduce(&a) == adem_reduce(&b);
        prop_assert_eq!(same_action, same_normal, "{} vs {}", a, b);
    }
}

/// `Sq^1 Sq^1 = 0` and the squares of `Sq^(2^k)` reduce to the classical
/// admissible forms given directly by one Adem expansion.
#[test]
fn power_of_two_squares_regression() {
    let sq1 = SteenrodElement::from_monomial(SqMonomial::sq(1));
    assert!(multiply(&sq1, &sq1).is_zero());

    for k in 0..=4u32 {
        let n = 1 << k;
        let e = SteenrodElement::from_monomial(SqMonomial::sq(n));
        assert_eq!(multiply(&e, &e), adem_expand(n, n).unwrap(), "Sq^{n} Sq^{n}");
    }
}

/// Spot values against the literature: Sq^2 Sq^2 = Sq^3 Sq^1,
/// Sq^4 Sq^4 = Sq^7 Sq^1 + Sq^6 Sq^2.
#[test]
fn classical_square_values() {
    let words = |wws: &[&[u32]]| {
        SteenrodElement::from_terms(wws.iter().map(|w| SqMonomial::new(w.to_vec()).unwrap()))
    };
    assert_eq!(adem_expand(2, 2).unwrap(), words(&[&[3, 1]]));
    assert_eq!(adem_expand(4, 4).unwrap(), words(&[&[7, 1], &[6, 2]]));
    assert_eq!(adem_expand(8, 8).unwrap(), words(&[&[15, 1], &[14, 2], &[12, 4]]));
}

/// Reduction of long high-degree words stays inside the fuel bound.
#[test]
fn reduction_terminates_on_degree_forty_words() {
    let words: Vec<Vec<u32>> = vec![
        vec![1, 2, 4, 8, 25],
        vec![5, 7, 11, 17],
        vec![10, 10, 10, 10],
        vec![1, 39],
        vec![13, 14, 13],
        vec![2, 3, 5, 7, 11, 12],
    ];
    for w in words {
        let degree: u32 = w.iter().sum();
        let e = SteenrodElement::from_monomial(SqMonomial::new(w).unwrap());
        let normal = adem_reduce(&e);
        assert!(normal.is_normal());
        for term in normal.terms() {
            assert_eq!(term.degree(), degree);
        }
    }
}
