//! The linear condition `C(n)` attached to a signed system.
//!
//! For every polynomial `i` and every negative monomial `k` of it there is one
//! clause, a disjunction over the positive monomials `j` of the same
//! polynomial of `(e_j − e_k)·n ≥ 1`.

use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::scalar::{FromBigInt, Scalar};
use crate::system::SignedSystem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConditionError {
    #[error("single-inequality form needs exactly one polynomial, got {0}")]
    MultiRow(usize),
}

/// `coeffs · n ≥ 1`, tagged with the `(row, positive, negative)` monomial
/// triple it came from.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearLiteral {
    pub coeffs: Vec<i64>,
    pub row: usize,
    pub positive: usize,
    pub negative: usize,
}

impl LinearLiteral {
    pub fn value<T: Scalar>(&self, point: &[T]) -> T {
        self.coeffs
            .iter()
            .zip(point)
            .fold(T::zero(), |acc, (&c, x)| acc + T::from_int(c) * x.clone())
    }

    pub fn holds<T: Scalar>(&self, point: &[T]) -> bool {
        self.value(point) >= T::one()
    }

    pub fn integer_value(&self, point: &[BigInt]) -> BigInt {
        self.coeffs.iter().zip(point).map(|(&c, x)| BigInt::from(c) * x).sum()
    }

    pub fn holds_integer(&self, point: &[BigInt]) -> bool {
        self.integer_value(point) >= BigInt::from(1)
    }
}

/// Disjunction of literals for the negative monomial `negative` of polynomial `row`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause {
    pub row: usize,
    pub negative: usize,
    pub literals: Vec<LinearLiteral>,
}

impl Clause {
    pub fn holds<T: Scalar>(&self, point: &[T]) -> bool {
        self.literals.iter().any(|l| l.holds(point))
    }

    pub fn holds_integer(&self, point: &[BigInt]) -> bool {
        self.literals.iter().any(|l| l.holds_integer(point))
    }
}

/// Conjunction of clauses over `dim` unknowns.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearCondition {
    pub dim: usize,
    pub clauses: Vec<Clause>,
}

impl LinearCondition {
    pub fn holds<T: Scalar>(&self, point: &[T]) -> bool {
        point.len() == self.dim && self.clauses.iter().all(|c| c.holds(point))
    }

    pub fn holds_integer(&self, point: &[BigInt]) -> bool {
        point.len() == self.dim && self.clauses.iter().all(|c| c.holds_integer(point))
    }

    /// Exact check of an integer point through any scalar that embeds ℤ.
    pub fn holds_via<T: FromBigInt>(&self, point: &[BigInt]) -> bool {
        let lifted: Vec<T> = point.iter().map(T::from_bigint).collect();
        self.holds(&lifted)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(|c| c.literals.is_empty())
    }

    /// Number of one-literal-per-clause selections, saturating.
    pub fn selection_count(&self) -> u128 {
        self.clauses
            .iter()
            .fold(1u128, |acc, c| acc.saturating_mul(c.literals.len() as u128))
    }
}

/// Debug text: one `clause i k: [j: coeffs...] ...` line per clause, 1-based indices.
impl fmt::Display for LinearCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for clause in &self.clauses {
            write!(f, "clause {} {}:", clause.row + 1, clause.negative + 1)?;
            for lit in &clause.literals {
                write!(f, " [{}:", lit.positive + 1)?;
                for c in &lit.coeffs {
                    write!(f, " {c}")?;
                }
                write!(f, "]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// One disjunct of the single-inequality form: monomial `pivot` dominates
/// every negative monomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DnfBranch {
    pub pivot: usize,
    pub constraints: Vec<LinearLiteral>,
}

impl DnfBranch {
    pub fn holds<T: Scalar>(&self, point: &[T]) -> bool {
        self.constraints.iter().all(|l| l.holds(point))
    }
}

/// Builds `C(n)`. Clauses are ordered by `(row, negative)`, literals by positive index.
pub fn build_cnf<T: Scalar>(sys: &SignedSystem<T>) -> LinearCondition {
    let mut clauses = Vec::new();
    for row in 0..sys.num_polys() {
        let support = sys.row_supports(row).expect("row in range");
        for &negative in &support.negative {
            let literals = support
                .positive
                .iter()
                .map(|&positive| LinearLiteral {
                    coeffs: sys.exponents().difference(positive, negative),
                    row,
                    positive,
                    negative,
                })
                .collect();
            clauses.push(Clause { row, negative, literals });
        }
    }
    LinearCondition { dim: sys.num_vars(), clauses }
}

/// Disjunctive form for a single polynomial: one branch per positive monomial.
pub fn build_dnf_single<T: Scalar>(sys: &SignedSystem<T>) -> Result<Vec<DnfBranch>, ConditionError> {
    if sys.num_polys() != 1 {
        return Err(ConditionError::MultiRow(sys.num_polys()));
    }
    let support = sys.row_supports(0).expect("row in range");
    Ok(support
        .positive
        .iter()
        .map(|&pivot| DnfBranch {
            pivot,
            constraints: support
                .negative
                .iter()
                .map(|&negative| LinearLiteral {
                    coeffs: sys.exponents().difference(pivot, negative),
                    row: 0,
                    positive: pivot,
                    negative,
                })
                .collect(),
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_system;

    const EXAMPLE2: &str = "\
vars x1 x2
monomials x1^5, x1^2*x2, x1^2, x2^3, x2^2
poly f1 = -c11*x1^5 + c12*x1^2*x2 - c13*x1^2 + c15*x2^2
poly f2 = c21*x1^5 + c22*x1^2*x2 + c23*x1^2 - c24*x2^3
";

    #[test]
    fn example2_clauses() {
        let cond = build_cnf(&parse_system(EXAMPLE2).unwrap());
        let shape: Vec<(usize, usize, Vec<usize>)> = cond
            .clauses
            .iter()
            .map(|c| (c.row, c.negative, c.literals.iter().map(|l| l.positive).collect()))
            .collect();
        assert_eq!(shape, vec![(0, 0, vec![1, 4]), (0, 2, vec![1, 4]), (1, 3, vec![0, 1, 2])]);
        assert_eq!(cond.clauses[0].literals[0].coeffs, vec![-3, 1]);
        assert_eq!(cond.dim, 2);
    }

    #[test]
    fn intro_g_clauses() {
        let cond = build_cnf(&parse_system("vars x\npoly g = -c2*x^2 + c1*x - c0\n").unwrap());
        assert_eq!(cond.clauses.len(), 2);
        let coeffs: Vec<Vec<i64>> = cond.clauses.iter().map(|c| c.literals[0].coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![-1], vec![1]]);
        assert!(cond.clauses.iter().all(|c| c.literals.len() == 1));
    }

    #[test]
    fn all_positive_has_no_clauses() {
        let cond = build_cnf(&parse_system("vars x y\npoly f = x + y^2 + 3\npoly g = x*y\n").unwrap());
        assert!(cond.clauses.is_empty());
        assert!(cond.holds::<crate::Rational>(&[0.into(), 0.into()].map(crate::Rational::from_integer)));
    }

    #[test]
    fn negative_only_row_gives_empty_clause() {
        let cond = build_cnf(&parse_system("vars x\npoly f = -x - 1\n").unwrap());
        assert_eq!(cond.clauses.len(), 2);
        assert!(cond.has_empty_clause());
        assert_eq!(cond.selection_count(), 0);
    }

    #[test]
    fn intro_f_branches() {
        let branches = build_dnf_single(&parse_system("vars x\npoly f = c2*x^2 - c1*x + c0\n").unwrap()).unwrap();
        assert_eq!(branches.len(), 2);
        assert_eq!((branches[0].pivot, branches[0].constraints[0].coeffs.clone()), (0, vec![1]));
        assert_eq!((branches[1].pivot, branches[1].constraints[0].coeffs.clone()), (2, vec![-1]));
    }

    #[test]
    fn intro_g_single_branch() {
        let branches = build_dnf_single(&parse_system("vars x\npoly g = -c2*x^2 + c1*x - c0\n").unwrap()).unwrap();
        assert_eq!(branches.len(), 1);
        let coeffs: Vec<Vec<i64>> = branches[0].constraints.iter().map(|l| l.coeffs.clone()).collect();
        assert_eq!(coeffs, vec![vec![-1], vec![1]]);
    }

    #[test]
    fn lone_positive_monomial_branch_is_empty() {
        let branches = build_dnf_single(&parse_system("vars x\npoly f = 5*x^3\n").unwrap()).unwrap();
        assert_eq!(branches.len(), 1);
        assert!(branches[0].constraints.is_empty());
    }

    #[test]
    fn dnf_rejects_multiple_rows() {
        let err = build_dnf_single(&parse_system(EXAMPLE2).unwrap()).unwrap_err();
        assert_eq!(err, ConditionError::MultiRow(2));
    }

    #[test]
    fn debug_text() {
        let cond = build_cnf(&parse_system("vars x\npoly f = c2*x^2 - c1*x + c0\n").unwrap());
        assert_eq!(cond.to_string(), "clause 1 2: [1: 1] [3: -1]\n");
    }

    #[test]
    fn known_point_satisfies_example2() {
        let cond = build_cnf(&parse_system(EXAMPLE2).unwrap());
        let n = [BigInt::from(-12), BigInt::from(-11)];
        assert!(cond.holds_integer(&n));
        assert!(cond.holds_via::<crate::Rational>(&n));
        let lit = |c: usize, l: usize| {
            let literal = &cond.clauses[c].literals[l];
            (literal.coeffs.clone(), literal.integer_value(&n))
        };
        assert_eq!(lit(0, 0), (vec![-3, 1], BigInt::from(25)));
        assert_eq!(lit(1, 1), (vec![-2, 2], BigInt::from(2)));
        assert_eq!(lit(2, 2), (vec![2, -3], BigInt::from(9)));
    }
}
