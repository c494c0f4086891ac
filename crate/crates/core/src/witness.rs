//! Explicit positive solutions `z(c) = t^n`.
//!
//! `t = 1 + Σ c_ik / c_ij`, summed over every polynomial `i`, every positive
//! monomial `j` and every negative monomial `k` of that polynomial. For any
//! integer `n` satisfying the linear condition and any `r ≥ t`, the point
//! `(r^{n_1}, …, r^{n_d})` makes every polynomial strictly positive.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use thiserror::Error;

use crate::condition::build_cnf;
use crate::scalar::{common_denominator, is_positive_integer, pow_signed, rational_bits, Scalar};
use crate::system::{Bindings, CoefficientSpec, ExponentSolution, Sign, SignedSystem};
use crate::{Rational, System};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("exponent vector {0} does not satisfy the linear condition")]
    UncertifiedExponent(ExponentSolution),
    #[error("exponent vector has {got} entries, system has {expected} variables")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("no value bound for coefficient `{0}`")]
    UnboundCoefficient(String),
    #[error("coefficient at ({row}, {col}) is not an integer ≥ 1")]
    NonIntegerCoefficient { row: usize, col: usize },
    #[error("operation requires concrete coefficients")]
    NotConcrete,
    #[error("point coordinate {0} is not strictly positive")]
    NonPositivePoint(usize),
    #[error("exponent {0} is too large to evaluate")]
    ExponentTooLarge(BigInt),
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("value size {bits} bits exceeds the limit of {limit} bits")]
    SizeLimit { bits: u64, limit: u64 },
    #[error("witness check failed at r = {r}: values {values:?} (solver defect)")]
    WitnessFailure { r: String, values: Vec<String> },
}

/// `c_ik / c_ij` by coefficient name.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatioTerm {
    pub numerator: String,
    pub denominator: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolicWitness {
    pub terms: Vec<RatioTerm>,
    pub n: ExponentSolution,
    pub var_names: Vec<String>,
}

impl SymbolicWitness {
    /// Text of `t` alone, e.g. `1 + c1/c2 + c1/c0`.
    pub fn t_text(&self) -> String {
        let mut out = String::from("1");
        for term in &self.terms {
            out.push_str(&format!(" + {}/{}", term.numerator, term.denominator));
        }
        out
    }
}

/// `t = 1 + c11/c12 + ...; z = (t^-12, t^-11)`
impl fmt::Display for SymbolicWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t = {}; z = (", self.t_text())?;
        for (l, exp) in self.n.values.iter().enumerate() {
            if l > 0 {
                write!(f, ", ")?;
            }
            write!(f, "t^{exp}")?;
        }
        write!(f, ")")
    }
}

/// Exact evaluation at `r^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport<T> {
    pub t_value: T,
    pub r_value: T,
    pub point: Vec<T>,
    pub values: Vec<T>,
    pub ok: bool,
}

/// Builds the symbolic witness for a certified `n`. Terms run row by row,
/// then over negative monomials `k`, then positive monomials `j`.
pub fn symbolic_t<T: Scalar>(sys: &SignedSystem<T>, n: &ExponentSolution) -> Result<SymbolicWitness, WitnessError> {
    if n.dim() != sys.num_vars() {
        return Err(WitnessError::DimensionMismatch { expected: sys.num_vars(), got: n.dim() });
    }
    if !build_cnf(sys).holds_integer(&n.values) {
        return Err(WitnessError::UncertifiedExponent(n.clone()));
    }
    let mut terms = Vec::new();
    for i in 0..sys.num_polys() {
        let support = sys.row_supports(i).expect("row in range");
        for &k in &support.negative {
            for &j in &support.positive {
                terms.push(RatioTerm {
                    numerator: sys.coefficient_name(i, k),
                    denominator: sys.coefficient_name(i, j),
                });
            }
        }
    }
    Ok(SymbolicWitness { terms, n: n.clone(), var_names: sys.var_names().to_vec() })
}

/// `1 + Σ c_ik / c_ij` under `bindings`.
pub fn evaluate_t<T: Scalar>(witness: &SymbolicWitness, bindings: &Bindings<T>) -> Result<T, WitnessError> {
    let lookup = |name: &String| {
        bindings
            .get(name)
            .filter(|v| v.is_positive())
            .cloned()
            .ok_or_else(|| WitnessError::UnboundCoefficient(name.clone()))
    };
    witness.terms.iter().try_fold(T::one(), |acc, term| {
        Ok(acc + lookup(&term.numerator)? / lookup(&term.denominator)?)
    })
}

/// `1 + v · Σ c_ik` over every negative entry of an integer-coefficient system.
pub fn uniform_bound(sys: &System) -> Result<Rational, WitnessError> {
    let CoefficientSpec::Concrete(values) = sys.coefficients() else {
        return Err(WitnessError::NotConcrete);
    };
    let mut negative_sum = Rational::zero();
    for (i, row) in values.iter().enumerate() {
        for (j, value) in row.iter().enumerate() {
            let sign = sys.signs().get(i, j);
            if sign == Sign::Zero {
                continue;
            }
            if !is_positive_integer(value) {
                return Err(WitnessError::NonIntegerCoefficient { row: i, col: j });
            }
            if sign == Sign::Negative {
                negative_sum += value;
            }
        }
    }
    let v = Rational::from_integer(BigInt::from(sys.num_monomials()));
    Ok(Rational::one() + v * negative_sum)
}

/// `f_i = Σ_j s_ij · c_ij · Π_l point_l^{e_jl}` for each polynomial.
pub fn evaluate_system_at<T: Scalar>(sys: &SignedSystem<T>, point: &[T]) -> Result<Vec<T>, WitnessError> {
    let CoefficientSpec::Concrete(values) = sys.coefficients() else {
        return Err(WitnessError::NotConcrete);
    };
    if point.len() != sys.num_vars() {
        return Err(WitnessError::DimensionMismatch { expected: sys.num_vars(), got: point.len() });
    }
    if let Some(l) = point.iter().position(|x| !x.is_positive()) {
        return Err(WitnessError::NonPositivePoint(l));
    }
    let monomials: Vec<T> = sys
        .exponents()
        .iter()
        .map(|exps| {
            exps.iter()
                .zip(point)
                .fold(T::one(), |acc, (&k, x)| acc * num_traits::pow::pow(x.clone(), k as usize))
        })
        .collect();
    Ok(values
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().fold(T::zero(), |acc, (j, c)| match sys.signs().get(i, j) {
                Sign::Positive => acc + c.clone() * monomials[j].clone(),
                Sign::Negative => acc - c.clone() * monomials[j].clone(),
                Sign::Zero => acc,
            })
        })
        .collect())
}

/// Checks `f(r^n) > 0` exactly. See [`verify_witness_limited`].
pub fn verify_witness(sys: &System, n: &ExponentSolution, r: &Rational) -> Result<VerificationReport<Rational>, WitnessError> {
    verify_witness_limited(sys, n, r, None)
}

/// Checks `f(r^n) > 0` exactly, refusing to build numbers wider than
/// `max_bits` when a limit is given.
///
/// Requires a concrete system without identically zero polynomials, an `n`
/// satisfying its linear condition and `r ≥ t`. Under those preconditions a
/// nonpositive value is reported as [`WitnessError::WitnessFailure`].
pub fn verify_witness_limited(
    sys: &System,
    n: &ExponentSolution,
    r: &Rational,
    max_bits: Option<u64>,
) -> Result<VerificationReport<Rational>, WitnessError> {
    if sys.is_parametric() {
        return Err(WitnessError::NotConcrete);
    }
    if let Some(&row) = sys.zero_rows().first() {
        return Err(WitnessError::PreconditionViolated(format!(
            "polynomial {} is identically zero",
            sys.poly_names()[row]
        )));
    }
    let witness = match symbolic_t(sys, n) {
        Err(WitnessError::UncertifiedExponent(n)) => {
            return Err(WitnessError::PreconditionViolated(format!("{n} does not satisfy the linear condition")))
        }
        other => other?,
    };
    let bindings = sys.bindings().map_err(|_| WitnessError::NotConcrete)?;
    let t = evaluate_t(&witness, &bindings)?;
    if *r < t {
        return Err(WitnessError::PreconditionViolated(format!("r = {r} is below t = {t}")));
    }

    if let Some(limit) = max_bits {
        let estimate = rational_bits(r).saturating_mul(n.max_abs().try_into().unwrap_or(u64::MAX));
        if estimate > limit {
            return Err(WitnessError::SizeLimit { bits: estimate, limit });
        }
    }
    let point = n
        .values
        .iter()
        .map(|exp| pow_signed(r, exp).ok_or_else(|| WitnessError::ExponentTooLarge(exp.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let values = evaluate_at_power(sys, r, n)?;
    if let Some(limit) = max_bits {
        if let Some(bits) = values.iter().map(rational_bits).max().filter(|&b| b > limit) {
            return Err(WitnessError::SizeLimit { bits, limit });
        }
    }
    let ok = values.iter().all(Signed::is_positive);
    if !ok {
        return Err(WitnessError::WitnessFailure {
            r: r.to_string(),
            values: values.iter().map(ToString::to_string).collect(),
        });
    }
    Ok(VerificationReport { t_value: t, r_value: r.clone(), point, values, ok })
}

/// `f(r^n)` through integer arithmetic.
///
/// With `r = a/b`, monomial `j` evaluates to `r^{m_j}` where `m_j = e_j·n`.
/// Writing `lo`, `hi` for the extreme `m_j` and `L` for the lcm of a row's
/// coefficient denominators, `f_i = r^lo · S / (L · b^(hi-lo))` with the
/// integer `S = Σ_j s_ij (L c_ij) a^(m_j-lo) b^(hi-m_j)`.
fn evaluate_at_power(sys: &System, r: &Rational, n: &ExponentSolution) -> Result<Vec<Rational>, WitnessError> {
    let CoefficientSpec::Concrete(values) = sys.coefficients() else {
        return Err(WitnessError::NotConcrete);
    };
    if n.dim() != sys.num_vars() {
        return Err(WitnessError::DimensionMismatch { expected: sys.num_vars(), got: n.dim() });
    }
    if !r.is_positive() {
        return Err(WitnessError::NonPositivePoint(0));
    }
    let degrees: Vec<BigInt> = sys
        .exponents()
        .iter()
        .map(|exps| exps.iter().zip(&n.values).map(|(&k, x)| x * BigInt::from(k)).sum())
        .collect();
    let (Some(lo), Some(hi)) = (degrees.iter().min(), degrees.iter().max()) else {
        return Ok(vec![Rational::zero(); sys.num_polys()]);
    };
    let pow = |base: &BigInt, exp: BigInt| -> Result<BigInt, WitnessError> {
        let k = usize::try_from(&exp).map_err(|_| WitnessError::ExponentTooLarge(exp.clone()))?;
        Ok(num_traits::pow::pow(base.clone(), k))
    };
    let (a, b) = (r.numer(), r.denom());
    let scaled: Vec<BigInt> = degrees
        .iter()
        .map(|m| Ok(pow(a, m - lo)? * pow(b, hi - m)?))
        .collect::<Result<_, WitnessError>>()?;
    let r_lo = pow_signed(r, lo).ok_or_else(|| WitnessError::ExponentTooLarge(lo.clone()))?;
    let spread = pow(b, hi - lo)?;
    let mut out = Vec::with_capacity(sys.num_polys());
    for (i, row) in values.iter().enumerate() {
        let support: Vec<usize> = (0..row.len()).filter(|&j| sys.signs().get(i, j) != Sign::Zero).collect();
        let lcm = common_denominator(&support.iter().map(|&j| row[j].clone()).collect::<Vec<_>>());
        let sum: BigInt = support
            .iter()
            .map(|&j| {
                let term = (&row[j] * Rational::from_integer(lcm.clone())).to_integer() * &scaled[j];
                if sys.signs().get(i, j) == Sign::Negative {
                    -term
                } else {
                    term
                }
            })
            .sum();
        out.push(Rational::new(sum, &lcm * &spread) * &r_lo);
    }
    Ok(out)
}

/// Random positive rational `p/q` with `1 ≤ p, q ≤ 10` for every name.
pub fn random_bindings<R: Rng + ?Sized>(names: &[String], rng: &mut R) -> Bindings<Rational> {
    names
        .iter()
        .map(|name| {
            let p: i64 = rng.gen_range(1..=10);
            let q: i64 = rng.gen_range(1..=10);
            (name.clone(), Rational::new(p.into(), q.into()))
        })
        .collect()
}
