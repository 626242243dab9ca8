mod common;

use mixgraph::codec::decode_digraph6;
use mixgraph::families::{build_f, kautz};
use mixgraph::graph::MixedGraph;
use mixgraph::reference::{ORDER14_K4_DIGRAPH6, SPECTRUM_CLASS_SIZES};
use mixgraph::spectra::*;
use num_bigint::BigInt;
use proptest::prelude::*;

#[test]
fn catalogue_classes() {
    let mut sizes = [0usize; 6];
    for s in ORDER14_K4_DIGRAPH6 {
        let class = classify(&decode_digraph6(s).unwrap()).unwrap().expect("every catalogue graph has a class");
        sizes[class.id as usize - 1] += 1;
    }
    assert_eq!(sizes, SPECTRUM_CLASS_SIZES);
    for c in spectrum_classes() {
        assert_eq!(c.degree(), 14);
        assert_eq!(c.expected_members, SPECTRUM_CLASS_SIZES[c.id as usize - 1]);
    }
}

#[test]
fn cospectral_class_of_five_is_nonisomorphic() {
    let members: Vec<MixedGraph> = ORDER14_K4_DIGRAPH6
        .iter()
        .map(|s| decode_digraph6(s).unwrap())
        .filter(|g| classify(g).unwrap().map(|c| c.id) == Some(3))
        .collect();
    assert_eq!(members.len(), 5);
    let forms: std::collections::BTreeSet<_> = members.iter().map(mixgraph::canonical_form).collect();
    assert_eq!(forms.len(), 5);
}

#[test]
fn unclassified_graphs() {
    assert!(classify(&build_f(3).unwrap().graph).unwrap().is_none());
}

#[test]
fn kautz_spectrum() {
    // K(2,2) is the line digraph of K3: eigenvalues 2, -1, -1 and three zeros.
    let g = kautz(2, 2).to_mixed_digons_as_edges();
    let expected = &(&IntPolynomial::linear(2) * &IntPolynomial::linear(-1).pow(2)) * &IntPolynomial::monomial(3);
    assert_eq!(char_poly(&g).unwrap(), expected);
}

#[test]
fn polynomial_arithmetic() {
    let p = &IntPolynomial::from_high(&[1, 0, -1]) * &IntPolynomial::linear(1).pow(2);
    assert_eq!(p.multiplicity_of(&IntPolynomial::linear(1)), 3);
    assert_eq!(p.multiplicity_of(&IntPolynomial::linear(-1)), 1);
    assert_eq!(p.degree(), Some(4));
    assert_eq!(p.eval(&BigInt::from(-1)), BigInt::from(0));
    assert_eq!(IntPolynomial::from_high(&[1, -3, 0, 2]).to_string(), "x^3 - 3x^2 + 2");
    assert!(IntPolynomial::new([]).is_zero());
}

#[test]
fn oversized_graphs_are_refused() {
    let g = MixedGraph::build(MAX_CHAR_POLY_ORDER + 1, [], []).unwrap();
    assert!(char_poly(&g).is_err());
}

proptest! {
    #[test]
    fn two_routes_agree(g in common::arb_mixed(9)) {
        prop_assert_eq!(char_poly(&g).unwrap(), char_poly_by_interpolation(&g).unwrap());
    }

    #[test]
    fn monic_with_trace_coefficient((g, perm) in common::arb_relabeled(9)) {
        let p = char_poly(&g).unwrap();
        let n = g.order();
        prop_assert_eq!(p.degree(), Some(n));
        prop_assert_eq!(p.leading().unwrap(), &BigInt::from(1));
        let loops = g.arcs().iter().filter(|(u, v)| u == v).count() as i64;
        prop_assert_eq!(&p.coeffs()[n - 1], &BigInt::from(-loops));
        prop_assert_eq!(char_poly(&g.relabel(&perm)).unwrap(), p);
    }

    #[test]
    fn determinant_is_constant_term(g in common::arb_mixed(8)) {
        let m: Vec<Vec<BigInt>> = g.adjacency_matrix().into_iter()
            .map(|r| r.into_iter().map(|x| -BigInt::from(x)).collect()).collect();
        let p = char_poly(&g).unwrap();
        prop_assert_eq!(&p.coeffs()[0], &bareiss_determinant(m));
    }
}
