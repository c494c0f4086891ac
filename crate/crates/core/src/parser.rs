//! Reader and writer for the line-oriented `.spp` system format.
//!
//! ```text
//! # comment
//! vars x1 x2
//! poly f1 = 2*x1^2*x2 - 4*x1^3
//! poly f2 = -c21*x1 + c22        # named (parametric) coefficients
//! ```
//!
//! A file is parametric or concrete depending on its first coefficient
//! token. Monomials are numbered by their first surviving occurrence, unless
//! an optional `monomials` line right after `vars` fixes the order:
//!
//! ```text
//! vars x1 x2
//! monomials x1^2*x2, x1*x2^2, x1^3
//! ```
//!
//! Listed monomials take the first columns in the listed order (`1` is the
//! constant monomial); listed monomials that no polynomial uses are dropped.

use std::collections::{HashMap, HashSet};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::system::{
    Bindings, CoefficientSpec, ExponentMatrix, Sign, SignMatrix, SignedSystem, SystemError,
};
use crate::{Rational, System};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("expected a `vars` header before the first polynomial")]
    MissingHeader,
    #[error("variable `{0}` declared twice")]
    DuplicateVariable(String),
    #[error("polynomial `{0}` defined twice")]
    DuplicatePolynomial(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("coefficient name `{0}` used more than once")]
    DuplicateCoefficientName(String),
    #[error("monomial repeated within parametric polynomial `{0}`")]
    DuplicateMonomial(String),
    #[error("negative exponents are not allowed")]
    NegativeExponent,
    #[error("exponent does not fit in 32 bits")]
    ExponentOverflow,
    #[error("coefficient magnitude must be strictly positive")]
    NonPositiveCoefficient,
    #[error("file mixes named and numeric coefficients")]
    MixedCoefficients,
    #[error("parametric terms need a named coefficient")]
    MissingCoefficient,
    #[error("invalid system: {0}")]
    Invalid(SystemError),
}

impl ParseError {
    fn new(line: usize, col: usize, kind: ParseErrorKind) -> Self {
        ParseError { line, col, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(BigInt),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    Eq,
    Comma,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Num(n) => write!(f, "`{n}`"),
            Tok::Plus => f.write_str("`+`"),
            Tok::Minus => f.write_str("`-`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Caret => f.write_str("`^`"),
            Tok::Slash => f.write_str("`/`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Comma => f.write_str("`,`"),
        }
    }
}

/// Tokens of one line, each with its 1-based column.
fn lex_line(text: &str, line: usize) -> Result<Vec<(usize, Tok)>, ParseError> {
    let text = text.split('#').next().unwrap_or("");
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            let value = digits.parse::<BigInt>().expect("ascii digits");
            out.push((col, Tok::Num(value)));
            continue;
        }
        let tok = match c {
            '+' => Tok::Plus,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '^' => Tok::Caret,
            '/' => Tok::Slash,
            '=' => Tok::Eq,
            ',' => Tok::Comma,
            other => {
                return Err(ParseError::new(
                    line,
                    col,
                    ParseErrorKind::Syntax(format!("unexpected character `{other}`")),
                ))
            }
        };
        out.push((col, tok));
        i += 1;
    }
    Ok(out)
}

/// Cursor over the tokens of one line.
struct Cursor {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl Cursor {
    fn new(toks: Vec<(usize, Tok)>, line: usize, text: &str) -> Self {
        let end_col = text.split('#').next().unwrap_or("").chars().count() + 1;
        Cursor { toks, pos: 0, line, end_col }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(c, _)| *c)
    }

    fn next(&mut self) -> Option<Tok> {
        let tok = self.toks.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        tok
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn err(&self, kind: ParseErrorKind) -> ParseError {
        ParseError::new(self.line, self.col(), kind)
    }

    fn unexpected(&self, wanted: &str) -> ParseError {
        let found = match self.peek() {
            Some(t) => t.to_string(),
            None => "end of line".to_string(),
        };
        self.err(ParseErrorKind::Syntax(format!("expected {wanted}, found {found}")))
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<(), ParseError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(wanted))
        }
    }

    fn ident(&mut self, wanted: &str) -> Result<String, ParseError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.unexpected(wanted)),
        }
    }

    /// `p` or `p/q`, strictly positive.
    fn positive_rational(&mut self) -> Result<Rational, ParseError> {
        let col = self.col();
        let Some(Tok::Num(p)) = self.next() else {
            self.pos -= 1;
            return Err(self.unexpected("a number"));
        };
        let mut value = Rational::from_integer(p);
        if self.peek() == Some(&Tok::Slash) {
            self.pos += 1;
            let Some(Tok::Num(q)) = self.next() else {
                self.pos -= 1;
                return Err(self.unexpected("a denominator"));
            };
            if q.is_zero() {
                return Err(ParseError::new(self.line, col, ParseErrorKind::NonPositiveCoefficient));
            }
            value /= Rational::from_integer(q);
        }
        if !value.is_positive() {
            return Err(ParseError::new(self.line, col, ParseErrorKind::NonPositiveCoefficient));
        }
        Ok(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Parametric,
    Concrete,
}

#[derive(Debug, Clone)]
enum Coeff {
    Named(String),
    Value(Rational),
    Implicit,
}

struct RawTerm {
    negative: bool,
    coeff: Coeff,
    exps: Vec<u32>,
    line: usize,
    col: usize,
}

struct RawPoly {
    name: String,
    terms: Vec<RawTerm>,
}

fn parse_term(cur: &mut Cursor, vars: &HashMap<String, usize>, negative: bool) -> Result<RawTerm, ParseError> {
    let (line, col) = (cur.line, cur.col());
    let mut exps = vec![0u32; vars.len()];
    let coeff = match cur.peek() {
        Some(Tok::Num(_)) => Coeff::Value(cur.positive_rational()?),
        Some(Tok::Ident(name)) if !vars.contains_key(name) => {
            let name = name.clone();
            cur.pos += 1;
            if cur.peek() == Some(&Tok::Caret) {
                return Err(ParseError::new(line, col, ParseErrorKind::UnknownVariable(name)));
            }
            Coeff::Named(name)
        }
        Some(Tok::Ident(_)) => Coeff::Implicit,
        _ => return Err(cur.unexpected("a term")),
    };
    let mut need_factor = matches!(coeff, Coeff::Implicit);
    loop {
        if need_factor {
            let fcol = cur.col();
            let var = cur.ident("a variable")?;
            let Some(&l) = vars.get(&var) else {
                return Err(ParseError::new(line, fcol, ParseErrorKind::UnknownVariable(var)));
            };
            let mut power = 1u32;
            if cur.peek() == Some(&Tok::Caret) {
                cur.pos += 1;
                match cur.peek() {
                    Some(Tok::Minus) => return Err(cur.err(ParseErrorKind::NegativeExponent)),
                    Some(Tok::Num(k)) => {
                        power = u32::try_from(k).map_err(|_| cur.err(ParseErrorKind::ExponentOverflow))?;
                        cur.pos += 1;
                    }
                    _ => return Err(cur.unexpected("an exponent")),
                }
            }
            exps[l] = exps[l]
                .checked_add(power)
                .ok_or_else(|| cur.err(ParseErrorKind::ExponentOverflow))?;
        }
        if cur.peek() == Some(&Tok::Star) {
            cur.pos += 1;
            need_factor = true;
        } else {
            break;
        }
    }
    Ok(RawTerm { negative, coeff, exps, line, col })
}

fn parse_poly_line(cur: &mut Cursor, vars: &HashMap<String, usize>) -> Result<RawPoly, ParseError> {
    let name = cur.ident("a polynomial name")?;
    cur.expect(Tok::Eq, "`=`")?;
    let mut terms = Vec::new();
    if let Some(Tok::Num(n)) = cur.peek() {
        if n.is_zero() && cur.toks.len() == cur.pos + 1 {
            cur.pos += 1;
            return Ok(RawPoly { name, terms });
        }
    }
    let mut negative = match cur.peek() {
        Some(Tok::Minus) => {
            cur.pos += 1;
            true
        }
        Some(Tok::Plus) => {
            cur.pos += 1;
            false
        }
        _ => false,
    };
    loop {
        terms.push(parse_term(cur, vars, negative)?);
        match cur.peek() {
            None => break,
            Some(Tok::Plus) => negative = false,
            Some(Tok::Minus) => negative = true,
            Some(_) => return Err(cur.unexpected("`+`, `-` or end of line")),
        }
        cur.pos += 1;
    }
    Ok(RawPoly { name, terms })
}

/// Parses a `.spp` source into a signed system.
pub fn parse_system(src: &str) -> Result<System, ParseError> {
    let mut var_names: Option<Vec<String>> = None;
    let mut var_index = HashMap::new();
    let mut polys: Vec<RawPoly> = Vec::new();
    let mut poly_seen = HashSet::new();
    let mut declared: Option<Vec<Vec<u32>>> = None;

    for (idx, text) in src.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(text, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(toks, line, text);
        let keyword = cur.ident("`vars` or `poly`")?;
        match keyword.as_str() {
            "vars" => {
                if var_names.is_some() {
                    return Err(ParseError::new(line, 1, ParseErrorKind::Syntax("duplicate `vars` header".into())));
                }
                let mut names = Vec::new();
                while !cur.at_end() {
                    let col = cur.col();
                    let name = cur.ident("a variable name")?;
                    if matches!(name.as_str(), "vars" | "poly" | "monomials") {
                        return Err(ParseError::new(line, col, ParseErrorKind::Syntax(format!("`{name}` is a keyword"))));
                    }
                    if var_index.insert(name.clone(), names.len()).is_some() {
                        return Err(ParseError::new(line, col, ParseErrorKind::DuplicateVariable(name)));
                    }
                    names.push(name);
                }
                if names.is_empty() {
                    return Err(cur.unexpected("at least one variable name"));
                }
                var_names = Some(names);
            }
            "monomials" => {
                if var_names.is_none() {
                    return Err(ParseError::new(line, 1, ParseErrorKind::MissingHeader));
                }
                if declared.is_some() || !polys.is_empty() {
                    return Err(ParseError::new(
                        line,
                        1,
                        ParseErrorKind::Syntax("`monomials` must appear once, before the first polynomial".into()),
                    ));
                }
                declared = Some(parse_monomial_list(&mut cur, &var_index)?);
            }
            "poly" => {
                if var_names.is_none() {
                    return Err(ParseError::new(line, 1, ParseErrorKind::MissingHeader));
                }
                let name_col = cur.col();
                let poly = parse_poly_line(&mut cur, &var_index)?;
                if !poly_seen.insert(poly.name.clone()) {
                    return Err(ParseError::new(line, name_col, ParseErrorKind::DuplicatePolynomial(poly.name)));
                }
                polys.push(poly);
            }
            _ => {
                cur.pos -= 1;
                return Err(cur.unexpected("`vars` or `poly`"));
            }
        }
    }

    let Some(var_names) = var_names else {
        return Err(ParseError::new(1, 1, ParseErrorKind::MissingHeader));
    };
    assemble(polys, var_names, declared.unwrap_or_default())
}

fn parse_monomial_list(cur: &mut Cursor, vars: &HashMap<String, usize>) -> Result<Vec<Vec<u32>>, ParseError> {
    let mut list: Vec<Vec<u32>> = Vec::new();
    loop {
        let col = cur.col();
        let term = parse_term(cur, vars, false)?;
        let plain = match &term.coeff {
            Coeff::Implicit => true,
            Coeff::Value(v) => v.is_one(),
            Coeff::Named(name) => {
                return Err(ParseError::new(cur.line, col, ParseErrorKind::UnknownVariable(name.clone())))
            }
        };
        if !plain {
            return Err(ParseError::new(cur.line, col, ParseErrorKind::Syntax("expected a monomial".into())));
        }
        if list.contains(&term.exps) {
            return Err(ParseError::new(cur.line, col, ParseErrorKind::Syntax("monomial listed twice".into())));
        }
        list.push(term.exps);
        match cur.next() {
            None => return Ok(list),
            Some(Tok::Comma) => {}
            Some(_) => {
                cur.pos -= 1;
                return Err(cur.unexpected("`,` or end of line"));
            }
        }
    }
}

/// One polynomial after merging duplicate monomials: `(exponents, sign, coefficient)`
/// in first-appearance order. Concrete terms that cancel are kept with a zero sign.
type MergedRow = Vec<(Vec<u32>, Sign, Option<String>, Rational)>;

fn assemble(polys: Vec<RawPoly>, var_names: Vec<String>, declared: Vec<Vec<u32>>) -> Result<System, ParseError> {
    let mode = polys
        .iter()
        .flat_map(|p| p.terms.first())
        .next()
        .map_or(Mode::Concrete, |t| match t.coeff {
            Coeff::Named(_) => Mode::Parametric,
            _ => Mode::Concrete,
        });

    let mut names_seen = HashSet::new();
    let mut rows: Vec<MergedRow> = Vec::with_capacity(polys.len());
    for poly in &polys {
        let mut merged: MergedRow = Vec::new();
        let mut slot: HashMap<&[u32], usize> = HashMap::new();
        for term in &poly.terms {
            let at = |kind| ParseError::new(term.line, term.col, kind);
            let sign = if term.negative { Sign::Negative } else { Sign::Positive };
            match (mode, &term.coeff) {
                (Mode::Parametric, Coeff::Named(name)) => {
                    if !names_seen.insert(name.clone()) {
                        return Err(at(ParseErrorKind::DuplicateCoefficientName(name.clone())));
                    }
                    if slot.insert(&term.exps, merged.len()).is_some() {
                        return Err(at(ParseErrorKind::DuplicateMonomial(poly.name.clone())));
                    }
                    merged.push((term.exps.clone(), sign, Some(name.clone()), Rational::one()));
                }
                (Mode::Parametric, Coeff::Implicit) => return Err(at(ParseErrorKind::MissingCoefficient)),
                (Mode::Parametric, Coeff::Value(_)) | (Mode::Concrete, Coeff::Named(_)) => {
                    return Err(at(ParseErrorKind::MixedCoefficients))
                }
                (Mode::Concrete, coeff) => {
                    let magnitude = match coeff {
                        Coeff::Value(v) => v.clone(),
                        _ => Rational::one(),
                    };
                    let signed = if term.negative { -magnitude } else { magnitude };
                    match slot.get(term.exps.as_slice()) {
                        Some(&k) => merged[k].3 += signed,
                        None => {
                            slot.insert(&term.exps, merged.len());
                            merged.push((term.exps.clone(), Sign::Zero, None, signed));
                        }
                    }
                }
            }
        }
        if mode == Mode::Concrete {
            for entry in &mut merged {
                entry.1 = Sign::of(&entry.3);
                entry.3 = entry.3.abs();
            }
        }
        rows.push(merged);
    }

    // Column order: declared monomials first, then first surviving occurrence, row-major.
    let used: HashSet<&[u32]> =
        rows.iter().flatten().filter(|t| t.1 != Sign::Zero).map(|t| t.0.as_slice()).collect();
    let mut columns: Vec<Vec<u32>> = Vec::new();
    let mut column_of: HashMap<Vec<u32>, usize> = HashMap::new();
    let occurrences = rows.iter().flatten().filter(|t| t.1 != Sign::Zero).map(|t| &t.0);
    for exps in declared.iter().filter(|e| used.contains(e.as_slice())).chain(occurrences) {
        if !column_of.contains_key(exps) {
            column_of.insert(exps.clone(), columns.len());
            columns.push(exps.clone());
        }
    }

    let (u, v) = (rows.len(), columns.len());
    let mut signs = vec![vec![Sign::Zero; v]; u];
    let mut names = vec![vec![None; v]; u];
    let mut values = vec![vec![Rational::one(); v]; u];
    for (i, row) in rows.into_iter().enumerate() {
        for (exps, sign, name, value) in row {
            if sign == Sign::Zero {
                continue;
            }
            let j = column_of[&exps];
            signs[i][j] = sign;
            names[i][j] = name;
            values[i][j] = value;
        }
    }

    let invalid = |e: SystemError| ParseError::new(1, 1, ParseErrorKind::Invalid(e));
    let dim = var_names.len();
    let signs = SignMatrix::new(signs, v).map_err(invalid)?;
    let exponents = ExponentMatrix::new(columns, dim).map_err(invalid)?;
    let coefficients = match mode {
        Mode::Parametric => CoefficientSpec::Parametric(names),
        Mode::Concrete => CoefficientSpec::Concrete(values),
    };
    let poly_names = polys.into_iter().map(|p| p.name).collect();
    SignedSystem::new(signs, exponents, coefficients, var_names, poly_names).map_err(invalid)
}

fn format_rational(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

fn format_monomial(exps: &[u32], vars: &[String]) -> String {
    let factors: Vec<String> = exps
        .iter()
        .zip(vars)
        .filter(|(&k, _)| k > 0)
        .map(|(&k, name)| if k == 1 { name.clone() } else { format!("{name}^{k}") })
        .collect();
    factors.join("*")
}

/// Canonical text of a system. `parse_system(&print_system(s)) == s` for every
/// `s` produced by [`parse_system`].
pub fn print_system(sys: &System) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "vars {}", sys.var_names().join(" "));
    let mut seen = vec![false; sys.num_monomials()];
    let occurrence: Vec<usize> = (0..sys.num_polys())
        .flat_map(|i| (0..sys.num_monomials()).filter(move |&j| sys.signs().get(i, j) != Sign::Zero))
        .filter(|&j| !std::mem::replace(&mut seen[j], true))
        .collect();
    if occurrence.iter().enumerate().any(|(pos, &j)| pos != j) {
        let listed: Vec<String> = sys
            .exponents()
            .iter()
            .map(|e| match format_monomial(e, sys.var_names()) {
                m if m.is_empty() => "1".to_string(),
                m => m,
            })
            .collect();
        let _ = writeln!(out, "monomials {}", listed.join(", "));
    }
    for i in 0..sys.num_polys() {
        let _ = write!(out, "poly {} =", sys.poly_names()[i]);
        let mut first = true;
        for j in 0..sys.num_monomials() {
            let sign = sys.signs().get(i, j);
            if sign == Sign::Zero {
                continue;
            }
            let monomial = format_monomial(sys.exponents().row(j), sys.var_names());
            let coeff = match sys.coefficients() {
                CoefficientSpec::Parametric(_) => Some(sys.coefficient_name(i, j)),
                CoefficientSpec::Concrete(values) => {
                    let value = &values[i][j];
                    (!value.is_one() || monomial.is_empty()).then(|| format_rational(value))
                }
            };
            let term = match (coeff, monomial.is_empty()) {
                (Some(c), true) => c,
                (Some(c), false) => format!("{c}*{monomial}"),
                (None, _) => monomial,
            };
            let op = match (first, sign) {
                (true, Sign::Negative) => " -",
                (true, _) => " ",
                (false, Sign::Negative) => " - ",
                (false, _) => " + ",
            };
            let _ = write!(out, "{op}{term}");
            first = false;
        }
        if first {
            out.push_str(" 0");
        }
        out.push('\n');
    }
    out
}

/// Parses a coefficient file of `name = p[/q]` lines.
pub fn parse_bindings(src: &str) -> Result<Bindings<Rational>, ParseError> {
    let mut bindings = Bindings::new();
    for (idx, text) in src.lines().enumerate() {
        let line = idx + 1;
        let toks = lex_line(text, line)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cursor::new(toks, line, text);
        let col = cur.col();
        let name = cur.ident("a coefficient name")?;
        cur.expect(Tok::Eq, "`=`")?;
        let value = cur.positive_rational()?;
        if !cur.at_end() {
            return Err(cur.unexpected("end of line"));
        }
        if bindings.insert(name.clone(), value).is_some() {
            return Err(ParseError::new(line, col, ParseErrorKind::DuplicateCoefficientName(name)));
        }
    }
    Ok(bindings)
}
