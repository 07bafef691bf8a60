use proptest::prelude::*;

use trirep::classify::{assemble_representation, solve_extensions, ExtensionProblem};
use trirep::exact::{RatMatrix, Rational};
use trirep::family::{build_family_module, enumerate_params, validate_params, weight_violation, EwMode, ModuleParams};
use trirep::graded::GradedSpace;
use trirep::liealg::{
    adjoint_grading, adjoint_representation, build_sl2_lambda, check_axioms, LeviData, LieAlgebra,
};
use trirep::rep::{homomorphism_violation, verify, Representation};

fn q(x: i64) -> Rational {
    Rational::from(x)
}

fn ad_representation(l: &LieAlgebra) -> Representation {
    let images = (0..l.dim()).map(|i| l.ad_basis(i)).collect();
    let none = LeviData { levi: vec![], radical: vec![], nilradical: vec![] };
    Representation::new(l.clone(), none, GradedSpace::new(vec![l.dim()]), images).unwrap()
}

/// An antisymmetric table with arbitrary small constants.
fn random_table(dim: usize, consts: &[i64]) -> LieAlgebra {
    let mut l = LieAlgebra::abelian((0..dim).map(|i| format!("x{i}")).collect());
    let mut it = consts.iter().cycle();
    for i in 0..dim {
        for j in i + 1..dim {
            let v: Vec<Rational> = (0..dim).map(|_| q(*it.next().unwrap())).collect();
            l.set_bracket(i, j, &v).unwrap();
        }
    }
    l
}

/// `l` rewritten in the basis given by the columns of the invertible `p`.
fn change_basis(l: &LieAlgebra, p: &RatMatrix) -> LieAlgebra {
    let n = l.dim();
    let inv = p.inverse().unwrap();
    let cols = p.columns();
    let mut out = LieAlgebra::abelian((0..n).map(|i| format!("y{i}")).collect());
    for i in 0..n {
        for j in i + 1..n {
            let br = l.bracket(&cols[i], &cols[j]).unwrap();
            out.set_bracket(i, j, &inv.mul_vec(&br)).unwrap();
        }
    }
    out
}

fn unit_lower(n: usize, entries: &[i64]) -> RatMatrix {
    let mut it = entries.iter().cycle();
    RatMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => q(1),
        std::cmp::Ordering::Greater => q(*it.next().unwrap()),
        std::cmp::Ordering::Less => q(0),
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn adjoint_homomorphism_matches_jacobi(dim in 2usize..=4, consts in prop::collection::vec(-2i64..=2, 1..24)) {
        let l = random_table(dim, &consts);
        let jacobi = check_axioms(&l).jacobi;
        prop_assert_eq!(homomorphism_violation(&ad_representation(&l)).is_none(), jacobi);
    }

    #[test]
    fn adjoint_of_rebased_lie_algebra_is_homomorphism(lambda in 1i64..=2, entries in prop::collection::vec(-2i64..=2, 1..30)) {
        let (l, _) = build_sl2_lambda(lambda).unwrap();
        let rebased = change_basis(&l, &unit_lower(l.dim(), &entries));
        prop_assert!(check_axioms(&rebased).all_pass());
        prop_assert!(homomorphism_violation(&ad_representation(&rebased)).is_none());
    }

    #[test]
    fn nilradical_raises_degree(lambda in 1i64..=3, coeffs in prop::collection::vec(-3i64..=3, 4)) {
        let (l, d) = build_sl2_lambda(lambda).unwrap();
        let g = adjoint_grading(&l, &d).unwrap();
        let rho = adjoint_representation(&l, &d, &g).unwrap();
        let mut z = vec![q(0); l.dim()];
        for (k, &i) in d.nilradical.iter().enumerate() {
            z[i] = q(coeffs[k % coeffs.len()]);
        }
        let image = trirep::graded::GradedMap::new(rho.space().clone(), rho.image_of(&z).unwrap()).unwrap();
        prop_assert!(image.is_triangular());
        prop_assert!(image.stripe(0).matrix().is_zero());
        prop_assert!(image.matrix().pow(rho.space().num_components() as u32).is_zero());
    }

    #[test]
    fn enumeration_equals_filter(lambda in 1usize..=5, max_m in 0usize..=6, max_n in 0usize..=6) {
        let mut filtered = Vec::new();
        for m in 0..=max_m {
            for n in 0..=max_n {
                for s in 0..=n {
                    for big_n in 0..=m {
                        let p = ModuleParams::new(lambda, m, n, s, big_n, vec![q(0); n - s]);
                        if validate_params(&p).valid {
                            filtered.push((m, n, s, big_n));
                        }
                    }
                }
            }
        }
        prop_assert_eq!(enumerate_params(lambda, max_m, max_n), filtered);
    }

    #[test]
    fn family_entries_respect_weights(lambda in 1usize..=3, pick in 0usize..64, seed in prop::collection::vec(-4i64..=4, 6)) {
        let tuples = enumerate_params(lambda, 5, 5);
        let (m, n, s, big_n) = tuples[pick % tuples.len()];
        let a = (0..n - s).map(|t| Rational::frac(seed[t % seed.len()], 2)).collect();
        let fm = build_family_module(&ModuleParams::new(lambda, m, n, s, big_n, a), EwMode::Corrected).unwrap();
        prop_assert!(weight_violation(&fm).is_none());
        prop_assert!(fm.conflicts.is_empty());
    }

    #[test]
    fn scaled_solutions_assemble(lambda in 1usize..=3, n in 0usize..=3, m in 0usize..=4, num in -5i64..=5, den in 1i64..=4) {
        let p = ExtensionProblem::new(lambda, n, m).unwrap();
        for z0 in solve_extensions(&p).basis {
            let rho = assemble_representation(&p, &z0.scale(&Rational::frac(num, den))).unwrap();
            let r = verify(&rho);
            prop_assert!(r.is_triangular_representation());
            prop_assert!(r.all_components_irreducible());
        }
    }
}
