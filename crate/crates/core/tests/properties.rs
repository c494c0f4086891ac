mod common;

use proptest::prelude::*;
use rand::Rng;
use subtrop::oracle::{exhaustive_decide, grid_search, GridResult, GridSpec, Verdict};
use subtrop::witness::random_bindings;
use subtrop::{
    build_cnf, decide, decide_with, evaluate_t, parse_system, print_system, scale_to_integer, shrink_model, solve_cnf,
    symbolic_t, verify_witness, DecideOptions, Decision, Rational, Satisfiability, Sign,
};

use common::{concrete, parametric, random_shape, rng, ShapeLimits};

fn small() -> ShapeLimits {
    ShapeLimits { max_polys: 2, max_monomials: 5, max_vars: 2, max_exponent: 4 }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn clause_counts_follow_sign_pattern(seed in any::<u64>()) {
        let shape = random_shape(&mut rng(seed), ShapeLimits::default());
        let cond = build_cnf(&parametric(&shape));
        let negatives: usize = shape.signs.iter().map(|r| r.iter().filter(|&&s| s == Sign::Negative).count()).sum();
        prop_assert_eq!(cond.clauses.len(), negatives);
        for clause in &cond.clauses {
            let positives = shape.signs[clause.row].iter().filter(|&&s| s == Sign::Positive).count();
            prop_assert_eq!(clause.literals.len(), positives);
            for lit in &clause.literals {
                let diff: Vec<i64> = (0..shape.dim)
                    .map(|l| i64::from(shape.exponents[lit.positive][l]) - i64::from(shape.exponents[lit.negative][l]))
                    .collect();
                prop_assert_eq!(&lit.coeffs, &diff);
            }
        }
    }

    #[test]
    fn condition_ignores_coefficients(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let shape = random_shape(&mut rng, ShapeLimits::default());
        let a = concrete(&shape, &mut rng, 9, 9);
        prop_assert_eq!(build_cnf(&a), build_cnf(&parametric(&shape)));
    }

    #[test]
    fn solver_models_are_sound_and_agree_with_oracle(seed in any::<u64>()) {
        let cond = build_cnf(&parametric(&random_shape(&mut rng(seed), small())));
        let result = solve_cnf::<Rational>(&cond);
        if let Satisfiability::Sat(model) = &result {
            prop_assert!(cond.holds(&model.values));
            let n = scale_to_integer(model);
            prop_assert!(cond.holds_integer(&n.values));
            prop_assert!(cond.holds_integer(&shrink_model(&cond, &n).values));
        }
        let oracle = exhaustive_decide(&cond).unwrap();
        prop_assert_eq!(result.is_sat(), oracle == Verdict::Sat);
    }

    #[test]
    fn grid_points_satisfy_the_condition(seed in any::<u64>()) {
        let cond = build_cnf(&parametric(&random_shape(&mut rng(seed), small())));
        match grid_search(&cond, GridSpec::new(6).unwrap()).unwrap() {
            GridResult::Found(n) => {
                prop_assert!(cond.holds_integer(&n.values));
                prop_assert!(solve_cnf::<Rational>(&cond).is_sat());
            }
            GridResult::NotFoundWithin(b) => prop_assert_eq!(b, 6),
        }
    }

    #[test]
    fn witness_terms_are_the_sign_pairs(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let shape = random_shape(&mut rng, small());
        let sys = parametric(&shape);
        let Decision::Sat { n, .. } = decide(&sys) else { return Ok(()) };
        let w = symbolic_t(&sys, &n).unwrap();
        let pairs: usize = shape
            .signs
            .iter()
            .map(|r| {
                let pos = r.iter().filter(|&&s| s == Sign::Positive).count();
                let neg = r.iter().filter(|&&s| s == Sign::Negative).count();
                pos * neg
            })
            .sum();
        prop_assert_eq!(w.terms.len(), pairs);
        let t = evaluate_t(&w, &random_bindings(&sys.coefficient_names(), &mut rng)).unwrap();
        let one = Rational::from_integer(1.into());
        let expected_above_one = pairs > 0;
        prop_assert_eq!(t > one, expected_above_one);
        prop_assert!(t >= one);
    }

    #[test]
    fn witnesses_verify_above_t(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let sys = parametric(&random_shape(&mut rng, small()));
        let shrink = rng.gen_bool(0.5);
        let Decision::Sat { n, .. } = decide_with(&sys, DecideOptions { shrink }) else { return Ok(()) };
        let w = symbolic_t(&sys, &n).unwrap();
        let bindings = random_bindings(&sys.coefficient_names(), &mut rng);
        let t = evaluate_t(&w, &bindings).unwrap();
        let r = &t + Rational::new(rng.gen_range(0..20i64).into(), rng.gen_range(1..5i64).into());
        let report = verify_witness(&sys.instantiate(&bindings).unwrap(), &n, &r).unwrap();
        prop_assert!(report.ok);
        prop_assert!(report.values.iter().all(|v| *v > Rational::from_integer(0.into())));
    }

    #[test]
    fn printing_round_trips(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let shape = random_shape(&mut rng, ShapeLimits::default());
        for sys in [parametric(&shape), concrete(&shape, &mut rng, 30, 30)] {
            let text = print_system(&sys);
            let parsed = parse_system(&text).unwrap();
            prop_assert_eq!(&parsed, &sys);
            prop_assert_eq!(print_system(&parsed), text);
        }
    }
}
