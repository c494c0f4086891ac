//! Signed polynomial systems in sign/coefficient/exponent matrix form.
//!
//! A system of `u` polynomials over `d` variables with `v` distinct monomials
//! is stored as a `u×v` sign matrix, a `u×v` coefficient table and a
//! `v×d` exponent matrix. Polynomial `i` is `Σ_j s_ij · c_ij · x^{e_j}`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SystemError {
    #[error("row index {row} out of range for a system of {rows} polynomials")]
    RowOutOfRange { row: usize, rows: usize },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("monomial {0} occurs twice in the exponent matrix")]
    DuplicateMonomial(usize),
    #[error("monomial {0} has a zero sign in every polynomial")]
    UnusedMonomial(usize),
    #[error("coefficient name `{0}` is used more than once")]
    DuplicateName(String),
    #[error("coefficient at ({row}, {col}) must be named exactly when its sign is nonzero")]
    NameMismatch { row: usize, col: usize },
    #[error("coefficient at ({row}, {col}) must be strictly positive")]
    NonPositiveCoefficient { row: usize, col: usize },
    #[error("variable name `{0}` is used more than once")]
    DuplicateVariable(String),
    #[error("no value bound for coefficient `{0}`")]
    Unbound(String),
    #[error("binding for `{0}` is not strictly positive")]
    NonPositiveBinding(String),
    #[error("operation requires concrete coefficients")]
    NotConcrete,
}

/// Entry of the sign matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Zero => 0,
            Sign::Positive => 1,
        }
    }

    pub fn from_i8(value: i8) -> Option<Self> {
        match value {
            -1 => Some(Sign::Negative),
            0 => Some(Sign::Zero),
            1 => Some(Sign::Positive),
            _ => None,
        }
    }

    pub fn of<T: Scalar>(value: &T) -> Self {
        if value.is_positive() {
            Sign::Positive
        } else if value.is_negative() {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

/// `u×v` matrix over `{-1, 0, 1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    rows: Vec<Vec<Sign>>,
    cols: usize,
}

impl SignMatrix {
    pub fn new(rows: Vec<Vec<Sign>>, cols: usize) -> Result<Self, SystemError> {
        if let Some(i) = rows.iter().position(|r| r.len() != cols) {
            return Err(SystemError::DimensionMismatch(format!(
                "sign row {i} has {} entries, expected {cols}",
                rows[i].len()
            )));
        }
        Ok(SignMatrix { rows, cols })
    }

    /// Builds a matrix from `-1/0/1` literals. Panics on any other value.
    pub fn from_i8(rows: &[&[i8]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&s| Sign::from_i8(s).expect("sign must be -1, 0 or 1")).collect())
            .collect();
        SignMatrix::new(rows, cols).expect("ragged sign matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> Sign {
        self.rows[row][col]
    }

    pub fn row(&self, row: usize) -> &[Sign] {
        &self.rows[row]
    }

    pub fn to_i8(&self) -> Vec<Vec<i8>> {
        self.rows.iter().map(|r| r.iter().map(|s| s.as_i8()).collect()).collect()
    }
}

/// `v×d` matrix of nonnegative exponents; row `j` is the exponent vector of monomial `j`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    rows: Vec<Vec<u32>>,
    dim: usize,
}

impl ExponentMatrix {
    pub fn new(rows: Vec<Vec<u32>>, dim: usize) -> Result<Self, SystemError> {
        if let Some(j) = rows.iter().position(|r| r.len() != dim) {
            return Err(SystemError::DimensionMismatch(format!(
                "exponent row {j} has {} entries, expected {dim}",
                rows[j].len()
            )));
        }
        let mut seen = HashSet::new();
        for (j, row) in rows.iter().enumerate() {
            if !seen.insert(row) {
                return Err(SystemError::DuplicateMonomial(j));
            }
        }
        Ok(ExponentMatrix { rows, dim })
    }

    pub fn rows(&self) -> usize {
        self.rows.len()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn row(&self, j: usize) -> &[u32] {
        &self.rows[j]
    }

    pub fn iter(&self) -> impl Iterator<Item = &[u32]> {
        self.rows.iter().map(Vec::as_slice)
    }

    /// `e_j − e_k` entrywise.
    pub fn difference(&self, j: usize, k: usize) -> Vec<i64> {
        self.rows[j]
            .iter()
            .zip(&self.rows[k])
            .map(|(&a, &b)| i64::from(a) - i64::from(b))
            .collect()
    }
}

/// Coefficient matrix: either pairwise distinct indeterminates or concrete
/// positive values. Positions with a zero sign hold `None` / a placeholder one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoefficientSpec<T> {
    Parametric(Vec<Vec<Option<String>>>),
    Concrete(Vec<Vec<T>>),
}

/// Values assigned to coefficient names.
pub type Bindings<T> = BTreeMap<String, T>;

/// `f = (s ∘ c) x^e` with variable and polynomial names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedSystem<T> {
    signs: SignMatrix,
    exponents: ExponentMatrix,
    coefficients: CoefficientSpec<T>,
    var_names: Vec<String>,
    poly_names: Vec<String>,
}

/// Positive and negative support of one polynomial, as monomial indices in
/// ascending order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RowSupport {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl<T: Scalar> SignedSystem<T> {
    pub fn new(
        signs: SignMatrix,
        exponents: ExponentMatrix,
        coefficients: CoefficientSpec<T>,
        var_names: Vec<String>,
        poly_names: Vec<String>,
    ) -> Result<Self, SystemError> {
        let (u, v, d) = (signs.rows(), exponents.rows(), exponents.dim());
        if signs.cols() != v {
            return Err(SystemError::DimensionMismatch(format!(
                "sign matrix has {} columns but there are {v} monomials",
                signs.cols()
            )));
        }
        if var_names.len() != d {
            return Err(SystemError::DimensionMismatch(format!(
                "{} variable names for {d} exponent columns",
                var_names.len()
            )));
        }
        if poly_names.len() != u {
            return Err(SystemError::DimensionMismatch(format!(
                "{} polynomial names for {u} sign rows",
                poly_names.len()
            )));
        }
        let mut vars = HashSet::new();
        for name in &var_names {
            if !vars.insert(name) {
                return Err(SystemError::DuplicateVariable(name.clone()));
            }
        }
        if let Some(j) = (0..v).find(|&j| (0..u).all(|i| signs.get(i, j) == Sign::Zero)) {
            return Err(SystemError::UnusedMonomial(j));
        }
        match &coefficients {
            CoefficientSpec::Parametric(names) => {
                check_shape(names, u, v)?;
                let mut seen = HashSet::new();
                for (i, row) in names.iter().enumerate() {
                    for (j, name) in row.iter().enumerate() {
                        match (signs.get(i, j), name) {
                            (Sign::Zero, None) => {}
                            (Sign::Zero, Some(_)) | (_, None) => {
                                return Err(SystemError::NameMismatch { row: i, col: j })
                            }
                            (_, Some(name)) => {
                                if !seen.insert(name) {
                                    return Err(SystemError::DuplicateName(name.clone()));
                                }
                            }
                        }
                    }
                }
            }
            CoefficientSpec::Concrete(values) => {
                check_shape(values, u, v)?;
                for (i, row) in values.iter().enumerate() {
                    for (j, value) in row.iter().enumerate() {
                        if signs.get(i, j) != Sign::Zero && !value.is_positive() {
                            return Err(SystemError::NonPositiveCoefficient { row: i, col: j });
                        }
                    }
                }
            }
        }
        Ok(SignedSystem { signs, exponents, coefficients, var_names, poly_names })
    }

    /// Number of polynomials `u`.
    pub fn num_polys(&self) -> usize {
        self.signs.rows()
    }

    /// Number of distinct monomials `v`.
    pub fn num_monomials(&self) -> usize {
        self.exponents.rows()
    }

    /// Number of variables `d`.
    pub fn num_vars(&self) -> usize {
        self.exponents.dim()
    }

    pub fn signs(&self) -> &SignMatrix {
        &self.signs
    }

    pub fn exponents(&self) -> &ExponentMatrix {
        &self.exponents
    }

    pub fn coefficients(&self) -> &CoefficientSpec<T> {
        &self.coefficients
    }

    pub fn var_names(&self) -> &[String] {
        &self.var_names
    }

    pub fn poly_names(&self) -> &[String] {
        &self.poly_names
    }

    pub fn is_parametric(&self) -> bool {
        matches!(self.coefficients, CoefficientSpec::Parametric(_))
    }

    pub fn row_supports(&self, row: usize) -> Result<RowSupport, SystemError> {
        if row >= self.num_polys() {
            return Err(SystemError::RowOutOfRange { row, rows: self.num_polys() });
        }
        let mut support = RowSupport::default();
        for (j, sign) in self.signs.row(row).iter().enumerate() {
            match sign {
                Sign::Positive => support.positive.push(j),
                Sign::Negative => support.negative.push(j),
                Sign::Zero => {}
            }
        }
        Ok(support)
    }

    /// Rows whose polynomial is identically zero.
    pub fn zero_rows(&self) -> Vec<usize> {
        (0..self.num_polys())
            .filter(|&i| self.signs.row(i).iter().all(|&s| s == Sign::Zero))
            .collect()
    }

    /// Name of coefficient `c_ij`: the declared indeterminate for parametric
    /// systems, or the position label `c_<i>_<j>` (1-based) otherwise.
    pub fn coefficient_name(&self, row: usize, col: usize) -> String {
        match &self.coefficients {
            CoefficientSpec::Parametric(names) => names[row][col]
                .clone()
                .unwrap_or_else(|| position_name(row, col)),
            CoefficientSpec::Concrete(_) => position_name(row, col),
        }
    }

    /// Every coefficient name at a nonzero sign position, row-major.
    pub fn coefficient_names(&self) -> Vec<String> {
        let mut names = Vec::new();
        for i in 0..self.num_polys() {
            for j in 0..self.num_monomials() {
                if self.signs.get(i, j) != Sign::Zero {
                    names.push(self.coefficient_name(i, j));
                }
            }
        }
        names
    }

    /// Concrete coefficient magnitude at `(row, col)`.
    pub fn coefficient_value(&self, row: usize, col: usize) -> Option<&T> {
        match &self.coefficients {
            CoefficientSpec::Concrete(values) => Some(&values[row][col]),
            CoefficientSpec::Parametric(_) => None,
        }
    }

    /// Name → value map of a concrete system, keyed by [`Self::coefficient_name`].
    pub fn bindings(&self) -> Result<Bindings<T>, SystemError> {
        let CoefficientSpec::Concrete(values) = &self.coefficients else {
            return Err(SystemError::NotConcrete);
        };
        let mut map = Bindings::new();
        for (i, row) in values.iter().enumerate() {
            for (j, value) in row.iter().enumerate() {
                if self.signs.get(i, j) != Sign::Zero {
                    map.insert(self.coefficient_name(i, j), value.clone());
                }
            }
        }
        Ok(map)
    }

    /// Substitutes positive values for every indeterminate. Concrete systems
    /// are returned unchanged. Names beyond the system's own are ignored.
    pub fn instantiate(&self, bindings: &Bindings<T>) -> Result<Self, SystemError> {
        let CoefficientSpec::Parametric(names) = &self.coefficients else {
            return Ok(self.clone());
        };
        let mut values = Vec::with_capacity(names.len());
        for row in names {
            let mut out = Vec::with_capacity(row.len());
            for name in row {
                out.push(match name {
                    None => T::one(),
                    Some(name) => {
                        let value = bindings.get(name).ok_or_else(|| SystemError::Unbound(name.clone()))?;
                        if !value.is_positive() {
                            return Err(SystemError::NonPositiveBinding(name.clone()));
                        }
                        value.clone()
                    }
                });
            }
            values.push(out);
        }
        Ok(SignedSystem {
            coefficients: CoefficientSpec::Concrete(values),
            ..self.clone()
        })
    }

    /// Same `(s, e)` with coefficient values mapped into another scalar type.
    pub fn map_scalar<U: Scalar>(&self, f: impl Fn(&T) -> U) -> SignedSystem<U> {
        let coefficients = match &self.coefficients {
            CoefficientSpec::Parametric(names) => CoefficientSpec::Parametric(names.clone()),
            CoefficientSpec::Concrete(values) => CoefficientSpec::Concrete(
                values.iter().map(|r| r.iter().map(&f).collect()).collect(),
            ),
        };
        SignedSystem {
            signs: self.signs.clone(),
            exponents: self.exponents.clone(),
            coefficients,
            var_names: self.var_names.clone(),
            poly_names: self.poly_names.clone(),
        }
    }

    /// The same `(s, e)` with fresh indeterminates `c_<i>_<j>`.
    pub fn parametric_skeleton(&self) -> Self {
        let names = (0..self.num_polys())
            .map(|i| {
                (0..self.num_monomials())
                    .map(|j| (self.signs.get(i, j) != Sign::Zero).then(|| position_name(i, j)))
                    .collect()
            })
            .collect();
        SignedSystem { coefficients: CoefficientSpec::Parametric(names), ..self.clone() }
    }
}

fn check_shape<X>(rows: &[Vec<X>], u: usize, v: usize) -> Result<(), SystemError> {
    if rows.len() != u || rows.iter().any(|r| r.len() != v) {
        return Err(SystemError::DimensionMismatch(format!(
            "coefficient matrix must be {u}×{v}"
        )));
    }
    Ok(())
}

fn position_name(row: usize, col: usize) -> String {
    format!("c_{}_{}", row + 1, col + 1)
}

/// An integer point `n ∈ ℤ^d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ExponentSolution {
    pub values: Vec<BigInt>,
}

impl ExponentSolution {
    pub fn new(values: Vec<BigInt>) -> Self {
        ExponentSolution { values }
    }

    pub fn from_i64(values: &[i64]) -> Self {
        ExponentSolution { values: values.iter().map(|&v| BigInt::from(v)).collect() }
    }

    pub fn zeros(dim: usize) -> Self {
        ExponentSolution { values: vec![BigInt::default(); dim] }
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn scaled(&self, factor: &BigInt) -> Self {
        ExponentSolution { values: self.values.iter().map(|v| v * factor).collect() }
    }

    pub fn max_abs(&self) -> BigInt {
        self.values.iter().map(|v| v.abs()).max().unwrap_or_default()
    }
}

impl fmt::Display for ExponentSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (l, v) in self.values.iter().enumerate() {
            if l > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Distinct coefficient names of a parametric coefficient table, for quick membership checks.
pub fn declared_names<T>(spec: &CoefficientSpec<T>) -> BTreeSet<String> {
    match spec {
        CoefficientSpec::Parametric(names) => names.iter().flatten().flatten().cloned().collect(),
        CoefficientSpec::Concrete(_) => BTreeSet::new(),
    }
}
