//! End-to-end decision: does a signed system admit a parametric positive solution?

use crate::condition::{build_cnf, LinearCondition};
use crate::lra::{scale_to_integer, shrink_model, solve_cnf, Satisfiability};
use crate::scalar::Scalar;
use crate::system::{ExponentSolution, SignedSystem};
use crate::RationalModel;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnsatReason {
    /// Polynomial at this row is identically zero, so it is never positive.
    ZeroRow(usize),
    /// The linear condition has no solution.
    NoModel,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Decision {
    Sat { model: RationalModel, n: ExponentSolution },
    Unsat(UnsatReason),
}

impl Decision {
    pub fn is_sat(&self) -> bool {
        matches!(self, Decision::Sat { .. })
    }

    pub fn exponent(&self) -> Option<&ExponentSolution> {
        match self {
            Decision::Sat { n, .. } => Some(n),
            Decision::Unsat(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    /// Move the integer exponent vector toward the origin before returning it.
    pub shrink: bool,
}

pub fn decide<T: Scalar>(sys: &SignedSystem<T>) -> Decision {
    decide_with(sys, DecideOptions::default())
}

pub fn decide_with<T: Scalar>(sys: &SignedSystem<T>, options: DecideOptions) -> Decision {
    let cond = build_cnf(sys);
    decide_condition(sys, &cond, options)
}

/// Like [`decide_with`] for a condition already built from `sys`.
pub fn decide_condition<T: Scalar>(sys: &SignedSystem<T>, cond: &LinearCondition, options: DecideOptions) -> Decision {
    if let Some(&row) = sys.zero_rows().first() {
        return Decision::Unsat(UnsatReason::ZeroRow(row));
    }
    match solve_cnf(cond) {
        Satisfiability::Sat(model) => {
            let mut n = scale_to_integer(&model);
            if options.shrink {
                n = shrink_model(cond, &n);
            }
            debug_assert!(cond.holds_integer(&n.values));
            Decision::Sat { model, n }
        }
        Satisfiability::Unsat => Decision::Unsat(UnsatReason::NoModel),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_system;
    use crate::system::ExponentSolution;

    #[test]
    fn intro_pair() {
        let f = parse_system("vars x\npoly f = c2*x^2 - c1*x + c0\n").unwrap();
        let decision = decide(&f);
        assert_eq!(decision.exponent(), Some(&ExponentSolution::from_i64(&[2])));
        let shrunk = decide_with(&f, DecideOptions { shrink: true });
        assert_eq!(shrunk.exponent(), Some(&ExponentSolution::from_i64(&[1])));
        let g = parse_system("vars x\npoly g = -c2*x^2 + c1*x - c0\n").unwrap();
        assert_eq!(decide(&g), Decision::Unsat(UnsatReason::NoModel));
    }

    #[test]
    fn zero_row_wins() {
        let sys = parse_system("vars x\npoly f = x + 1\npoly g = x - x\n").unwrap();
        assert_eq!(decide(&sys), Decision::Unsat(UnsatReason::ZeroRow(1)));
    }

    #[test]
    fn all_positive_is_sat_at_origin() {
        let sys = parse_system("vars x y\npoly f = x*y + 2\n").unwrap();
        assert_eq!(decide(&sys).exponent(), Some(&ExponentSolution::zeros(2)));
    }
}
