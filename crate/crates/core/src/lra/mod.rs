//! Exact satisfiability of linear conditions.
//!
//! Conjunctions of `coeffs·n ≥ 1` rows are decided by Fourier–Motzkin
//! elimination. Conditions in conjunctive normal form are decided by a
//! depth-first search over literal selections that prunes every partial
//! selection whose conjunction is already infeasible.

mod fourier_motzkin;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::condition::LinearCondition;
use crate::scalar::{common_denominator, Scalar};
use crate::system::ExponentSolution;
use crate::Rational;

use fourier_motzkin::{feasible_point, Inequality};

/// A point `n` over some ordered field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Model<T> {
    pub values: Vec<T>,
}

/// Conjunction of `coeffs · n ≥ 1`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ConjunctionSystem {
    pub dim: usize,
    pub rows: Vec<Vec<i64>>,
}

impl ConjunctionSystem {
    pub fn new(dim: usize) -> Self {
        ConjunctionSystem { dim, rows: Vec::new() }
    }

    pub fn with_rows(dim: usize, rows: Vec<Vec<i64>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == dim), "row length must equal dim");
        ConjunctionSystem { dim, rows }
    }

    fn inequalities<T: Scalar>(&self) -> Vec<Inequality<T>> {
        self.rows
            .iter()
            .map(|r| Inequality { coeffs: r.iter().map(|&c| T::from_int(c)).collect(), bound: T::one() })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Feasibility<T> {
    Feasible(Model<T>),
    Infeasible,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Satisfiability<T> {
    Sat(Model<T>),
    Unsat,
}

impl<T> Satisfiability<T> {
    pub fn is_sat(&self) -> bool {
        matches!(self, Satisfiability::Sat(_))
    }

    pub fn model(self) -> Option<Model<T>> {
        match self {
            Satisfiability::Sat(m) => Some(m),
            Satisfiability::Unsat => None,
        }
    }
}

/// Decides a conjunction. A feasible answer carries the back-substituted
/// point: the midpoint of each variable's interval, `lower + 1` / `upper − 1`
/// when only one side is bounded, and `0` when neither is.
pub fn solve_conjunction<T: Scalar>(sys: &ConjunctionSystem) -> Feasibility<T> {
    match feasible_point(sys.dim, sys.inequalities()) {
        Some(values) => Feasibility::Feasible(Model { values }),
        None => Feasibility::Infeasible,
    }
}

/// Decides `cond` by chronological backtracking over clauses and literals in
/// stored order. The returned model is the first one reached and is checked
/// against every clause before it is returned.
pub fn solve_cnf<T: Scalar>(cond: &LinearCondition) -> Satisfiability<T> {
    if cond.has_empty_clause() {
        return Satisfiability::Unsat;
    }
    let mut selected = ConjunctionSystem::new(cond.dim);
    let found = if cond.clauses.is_empty() {
        match solve_conjunction(&selected) {
            Feasibility::Feasible(m) => Some(m),
            Feasibility::Infeasible => None,
        }
    } else {
        search(cond, 0, &mut selected)
    };
    match found {
        Some(model) => {
            assert!(
                cond.holds(&model.values),
                "linear solver produced a point that violates its condition: {model:?}"
            );
            Satisfiability::Sat(model)
        }
        None => Satisfiability::Unsat,
    }
}

fn search<T: Scalar>(cond: &LinearCondition, depth: usize, selected: &mut ConjunctionSystem) -> Option<Model<T>> {
    for literal in &cond.clauses[depth].literals {
        let duplicate = selected.rows.contains(&literal.coeffs);
        if !duplicate {
            selected.rows.push(literal.coeffs.clone());
        }
        if let Feasibility::Feasible(model) = solve_conjunction::<T>(selected) {
            if depth + 1 == cond.clauses.len() {
                return Some(model);
            }
            if let Some(model) = search(cond, depth + 1, selected) {
                return Some(model);
            }
        }
        if !duplicate {
            selected.rows.pop();
        }
    }
    None
}

/// Multiplies a rational model by the least common multiple of its
/// denominators. Since every row has bound 1 and the factor is at least 1,
/// the integer point satisfies everything the rational one did.
pub fn scale_to_integer(model: &Model<Rational>) -> ExponentSolution {
    let delta = common_denominator(&model.values);
    ExponentSolution::new(
        model
            .values
            .iter()
            .map(|v| v.numer() * (&delta / v.denom()))
            .collect(),
    )
}

/// Greedily moves each coordinate of a satisfying integer point as close to
/// zero as possible while `cond` keeps holding. Positive values win ties.
pub fn shrink_model(cond: &LinearCondition, n: &ExponentSolution) -> ExponentSolution {
    assert!(cond.holds_integer(&n.values), "shrink_model needs a satisfying point");
    let mut point = n.values.clone();
    loop {
        let mut changed = false;
        for l in 0..point.len() {
            let mut candidates = vec![BigInt::zero(), point[l].clone()];
            for literal in cond.clauses.iter().flat_map(|c| &c.literals) {
                let a = BigInt::from(literal.coeffs[l]);
                if a.is_zero() {
                    continue;
                }
                let rest: BigInt = literal
                    .coeffs
                    .iter()
                    .zip(&point)
                    .enumerate()
                    .filter(|&(m, _)| m != l)
                    .map(|(_, (&c, x))| BigInt::from(c) * x)
                    .sum();
                let need = BigInt::one() - rest;
                candidates.push(if a.is_positive() { need.div_ceil(&a) } else { need.div_floor(&a) });
            }
            candidates.sort_by(|x, y| x.abs().cmp(&y.abs()).then_with(|| y.cmp(x)));
            candidates.dedup();
            let original = point[l].clone();
            for candidate in candidates {
                point[l] = candidate;
                if cond.holds_integer(&point) {
                    break;
                }
            }
            changed |= point[l] != original;
        }
        if !changed {
            return ExponentSolution::new(point);
        }
    }
}
