//! Seeded random systems shared by the integration tests.

#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use subtrop::{CoefficientSpec, ExponentMatrix, Rational, Sign, SignMatrix, System};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Size limits of a random `(s, e)` shape.
#[derive(Debug, Clone, Copy)]
pub struct ShapeLimits {
    pub max_polys: usize,
    pub max_monomials: usize,
    pub max_vars: usize,
    pub max_exponent: u32,
}

impl Default for ShapeLimits {
    fn default() -> Self {
        ShapeLimits { max_polys: 3, max_monomials: 6, max_vars: 3, max_exponent: 5 }
    }
}

/// Signs and exponents with no unused monomial and no duplicate monomial.
#[derive(Debug, Clone)]
pub struct Shape {
    pub signs: Vec<Vec<Sign>>,
    pub exponents: Vec<Vec<u32>>,
    pub dim: usize,
}

impl Shape {
    pub fn polys(&self) -> usize {
        self.signs.len()
    }

    pub fn monomials(&self) -> usize {
        self.exponents.len()
    }
}

pub fn random_shape<R: Rng>(rng: &mut R, limits: ShapeLimits) -> Shape {
    let u = rng.gen_range(1..=limits.max_polys);
    let d = rng.gen_range(1..=limits.max_vars);
    let distinct = (u64::from(limits.max_exponent) + 1).saturating_pow(d as u32);
    let v = rng.gen_range(1..=limits.max_monomials.min(distinct as usize));
    let mut exponents: Vec<Vec<u32>> = Vec::with_capacity(v);
    while exponents.len() < v {
        let e: Vec<u32> = (0..d).map(|_| rng.gen_range(0..=limits.max_exponent)).collect();
        if !exponents.contains(&e) {
            exponents.push(e);
        }
    }
    let choices = [Sign::Negative, Sign::Zero, Sign::Positive];
    let mut signs: Vec<Vec<Sign>> = (0..u).map(|_| (0..v).map(|_| *choices.choose(rng).unwrap()).collect()).collect();
    for j in 0..v {
        if signs.iter().all(|row| row[j] == Sign::Zero) {
            let i = rng.gen_range(0..u);
            signs[i][j] = if rng.gen_bool(0.5) { Sign::Positive } else { Sign::Negative };
        }
    }
    Shape { signs, exponents, dim: d }
}

fn names(shape: &Shape) -> (Vec<String>, Vec<String>) {
    let vars = (1..=shape.dim).map(|l| format!("x{l}")).collect();
    let polys = (1..=shape.polys()).map(|i| format!("f{i}")).collect();
    (vars, polys)
}

fn assemble(shape: &Shape, coefficients: CoefficientSpec<Rational>) -> System {
    let (vars, polys) = names(shape);
    System::new(
        SignMatrix::new(shape.signs.clone(), shape.monomials()).unwrap(),
        ExponentMatrix::new(shape.exponents.clone(), shape.dim).unwrap(),
        coefficients,
        vars,
        polys,
    )
    .unwrap()
}

/// Named coefficients `c<i>_<j>` (1-based) at every nonzero sign.
pub fn parametric(shape: &Shape) -> System {
    let names = shape
        .signs
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .enumerate()
                .map(|(j, &s)| (s != Sign::Zero).then(|| format!("c{}_{}", i + 1, j + 1)))
                .collect()
        })
        .collect();
    assemble(shape, CoefficientSpec::Parametric(names))
}

/// Positive rationals `p/q` with `1 ≤ p ≤ max_num`, `1 ≤ q ≤ max_den`; the
/// placeholder at a zero sign is 1, as the parser produces.
pub fn concrete<R: Rng>(shape: &Shape, rng: &mut R, max_num: i64, max_den: i64) -> System {
    let values = shape
        .signs
        .iter()
        .map(|row| {
            row.iter()
                .map(|&s| match s {
                    Sign::Zero => Rational::from_integer(1.into()),
                    _ => Rational::new(rng.gen_range(1..=max_num).into(), rng.gen_range(1..=max_den).into()),
                })
                .collect()
        })
        .collect();
    assemble(shape, CoefficientSpec::Concrete(values))
}

pub fn has_zero_row(shape: &Shape) -> bool {
    shape.signs.iter().any(|row| row.iter().all(|&s| s == Sign::Zero))
}
