//! Fourier–Motzkin elimination for systems `a·x ≥ b` over an ordered field,
//! with back-substitution to recover a witness point.

use crate::scalar::Scalar;

/// `coeffs · x ≥ bound`.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Inequality<T> {
    pub coeffs: Vec<T>,
    pub bound: T,
}

impl<T: Scalar> Inequality<T> {
    fn is_constant(&self) -> bool {
        self.coeffs.iter().all(T::is_zero)
    }

    /// Scales so that the first nonzero coefficient has magnitude one.
    fn normalized(mut self) -> Self {
        if let Some(lead) = self.coeffs.iter().find(|c| !c.is_zero()).map(T::abs) {
            for c in &mut self.coeffs {
                *c = c.clone() / lead.clone();
            }
            self.bound = self.bound / lead;
        }
        self
    }
}

/// Normalizes, drops trivially true constant rows and keeps only the
/// tightest of each family of parallel rows. `None` on a false constant row.
fn prune<T: Scalar>(rows: Vec<Inequality<T>>) -> Option<Vec<Inequality<T>>> {
    let mut kept: Vec<Inequality<T>> = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.normalized();
        if row.is_constant() {
            if row.bound > T::zero() {
                return None;
            }
            continue;
        }
        match kept.iter_mut().find(|k| k.coeffs == row.coeffs) {
            Some(existing) => {
                if row.bound > existing.bound {
                    existing.bound = row.bound;
                }
            }
            None => kept.push(row),
        }
    }
    Some(kept)
}

fn eliminate<T: Scalar>(rows: &[Inequality<T>], var: usize) -> Option<Vec<Inequality<T>>> {
    let (mut lower, mut upper, mut out) = (Vec::new(), Vec::new(), Vec::new());
    for row in rows {
        let a = &row.coeffs[var];
        if a.is_positive() {
            lower.push(row);
        } else if a.is_negative() {
            upper.push(row);
        } else {
            out.push(row.clone());
        }
    }
    for lo in &lower {
        for up in &upper {
            // lo.a > 0, up.a < 0: combine with positive multipliers -up.a and lo.a.
            let (m_lo, m_up) = (-up.coeffs[var].clone(), lo.coeffs[var].clone());
            let coeffs = lo
                .coeffs
                .iter()
                .zip(&up.coeffs)
                .map(|(p, q)| m_lo.clone() * p.clone() + m_up.clone() * q.clone())
                .collect();
            let bound = m_lo.clone() * lo.bound.clone() + m_up * up.bound.clone();
            out.push(Inequality { coeffs, bound });
        }
    }
    prune(out)
}

/// Picks a value for `var` from the rows of the stage that still mention it,
/// given values for all lower-indexed variables.
fn choose<T: Scalar>(rows: &[Inequality<T>], var: usize, point: &[T]) -> T {
    let mut lower: Option<T> = None;
    let mut upper: Option<T> = None;
    for row in rows {
        let a = &row.coeffs[var];
        if a.is_zero() {
            continue;
        }
        let rest = row.coeffs[..var]
            .iter()
            .zip(point)
            .fold(T::zero(), |acc, (c, x)| acc + c.clone() * x.clone());
        let limit = (row.bound.clone() - rest) / a.clone();
        if a.is_positive() {
            if lower.as_ref().is_none_or(|l| limit > *l) {
                lower = Some(limit);
            }
        } else if upper.as_ref().is_none_or(|u| limit < *u) {
            upper = Some(limit);
        }
    }
    match (lower, upper) {
        (Some(l), Some(u)) => (l + u) / T::two(),
        (Some(l), None) => l + T::one(),
        (None, Some(u)) => u - T::one(),
        (None, None) => T::zero(),
    }
}

/// Returns a point satisfying every row, or `None` when the system is infeasible.
///
/// Variables are eliminated from the highest index down; the point is built
/// back up from index 0.
pub(crate) fn feasible_point<T: Scalar>(dim: usize, rows: Vec<Inequality<T>>) -> Option<Vec<T>> {
    debug_assert!(rows.iter().all(|r| r.coeffs.len() == dim));
    let mut current = prune(rows)?;
    let mut stages = vec![Vec::new(); dim];
    for var in (0..dim).rev() {
        let next = eliminate(&current, var)?;
        stages[var] = current;
        current = next;
    }
    debug_assert!(current.is_empty());
    let mut point: Vec<T> = Vec::with_capacity(dim);
    for (var, stage) in stages.iter().enumerate() {
        let value = choose(stage, var, &point);
        point.push(value);
    }
    Some(point)
}
