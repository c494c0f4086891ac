//! Brute-force cross-checks for the linear solver.
//!
//! Nothing here reuses the `lra` code path: the elimination below works on
//! integer rows, eliminates variables from the lowest index up and only
//! answers feasible/infeasible.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::condition::LinearCondition;
use crate::system::ExponentSolution;

/// Upper limit on literal selections enumerated by [`exhaustive_decide`].
pub const MAX_SELECTIONS: u128 = 1_000_000;
/// Upper limit on lattice points scanned by [`grid_search`].
pub const MAX_GRID_POINTS: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} literal selections exceed the limit of {MAX_SELECTIONS}")]
    TooManySelections(u128),
    #[error("search box with {0} points exceeds the limit of {MAX_GRID_POINTS}")]
    BoxTooLarge(u128),
    #[error("grid radius must be at least 1")]
    ZeroRadius,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Sat,
    Unsat,
}

/// Search box `[-radius, radius]^d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    radius: u64,
}

impl GridSpec {
    pub fn new(radius: u64) -> Result<Self, OracleError> {
        if radius == 0 {
            return Err(OracleError::ZeroRadius);
        }
        Ok(GridSpec { radius })
    }

    pub fn radius(&self) -> u64 {
        self.radius
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GridResult {
    Found(ExponentSolution),
    NotFoundWithin(u64),
}

/// `a·x ≥ b` over the integers, kept primitive.
#[derive(Clone, PartialEq, Eq)]
struct Row {
    a: Vec<BigInt>,
    b: BigInt,
}

impl Row {
    fn reduce(mut self) -> Self {
        let g = self.a.iter().chain(std::iter::once(&self.b)).fold(BigInt::zero(), |g, x| g.gcd(x));
        if !g.is_zero() && g != BigInt::from(1) {
            for x in &mut self.a {
                *x /= &g;
            }
            self.b /= &g;
        }
        self
    }
}

/// Textbook Fourier–Motzkin feasibility test.
fn feasible(mut rows: Vec<Row>, dim: usize) -> bool {
    for var in 0..dim {
        let mut next = Vec::new();
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for row in rows {
            if row.a[var].is_positive() {
                pos.push(row);
            } else if row.a[var].is_negative() {
                neg.push(row);
            } else {
                next.push(row);
            }
        }
        for p in &pos {
            for n in &neg {
                let (mp, mn) = (-&n.a[var], p.a[var].clone());
                let a = p.a.iter().zip(&n.a).map(|(x, y)| &mp * x + &mn * y).collect();
                let b = &mp * &p.b + &mn * &n.b;
                let row = Row { a, b }.reduce();
                if !next.contains(&row) {
                    next.push(row);
                }
            }
        }
        rows = next;
    }
    rows.iter().all(|r| !r.b.is_positive())
}

/// Decides `cond` by trying every one-literal-per-clause selection.
pub fn exhaustive_decide(cond: &LinearCondition) -> Result<Verdict, OracleError> {
    let total = cond.selection_count();
    if total > MAX_SELECTIONS {
        return Err(OracleError::TooManySelections(total));
    }
    if total == 0 {
        return Ok(Verdict::Unsat);
    }
    let sizes: Vec<usize> = cond.clauses.iter().map(|c| c.literals.len()).collect();
    let mut pick = vec![0usize; sizes.len()];
    loop {
        let rows = cond
            .clauses
            .iter()
            .zip(&pick)
            .map(|(c, &p)| Row {
                a: c.literals[p].coeffs.iter().map(|&x| BigInt::from(x)).collect(),
                b: BigInt::from(1),
            })
            .collect();
        if feasible(rows, cond.dim) {
            return Ok(Verdict::Sat);
        }
        // odometer, last clause fastest
        let mut i = sizes.len();
        loop {
            if i == 0 {
                return Ok(Verdict::Unsat);
            }
            i -= 1;
            pick[i] += 1;
            if pick[i] < sizes[i] {
                break;
            }
            pick[i] = 0;
        }
    }
}

/// Scans `[-B, B]^d` in lexicographic order for an integer point satisfying
/// `cond`. Not finding one proves nothing.
pub fn grid_search(cond: &LinearCondition, grid: GridSpec) -> Result<GridResult, OracleError> {
    let side = 2 * u128::from(grid.radius) + 1;
    let points = (0..cond.dim).try_fold(1u128, |acc, _| acc.checked_mul(side)).unwrap_or(u128::MAX);
    if points > MAX_GRID_POINTS {
        return Err(OracleError::BoxTooLarge(points));
    }
    let b = i64::try_from(grid.radius).map_err(|_| OracleError::BoxTooLarge(points))?;
    let mut point = vec![-b; cond.dim];
    loop {
        let big: Vec<BigInt> = point.iter().map(|&x| BigInt::from(x)).collect();
        if cond.holds_integer(&big) {
            return Ok(GridResult::Found(ExponentSolution::new(big)));
        }
        let mut i = cond.dim;
        loop {
            if i == 0 {
                return Ok(GridResult::NotFoundWithin(grid.radius));
            }
            i -= 1;
            point[i] += 1;
            if point[i] <= b {
                break;
            }
            point[i] = -b;
        }
    }
}
