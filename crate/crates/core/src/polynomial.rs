//! Sparse multivariate polynomials with arbitrary-precision integer
//! coefficients.
//!
//! A [`Poly`] is a map from exponent vectors to nonzero [`BigInt`]
//! coefficients over a fixed, ordered variable list. Terms are kept in a
//! `BTreeMap`, so iteration and every serialized form are in lexicographic
//! exponent order and byte-stable across runs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Exponent tuple of a single monomial; arity matches the owning
/// polynomial's variable list.
pub type ExponentVector = Vec<u64>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("variable lists differ: {0:?} vs {1:?}")]
    VarMismatch(Vec<String>, Vec<String>),
    #[error("unknown variable `{0}`")]
    UnknownVar(String),
    #[error("no value assigned to variable `{0}`")]
    MissingVar(String),
    #[error("exponent vector has arity {got}, expected {want}")]
    ArityMismatch { got: usize, want: usize },
    #[error("invalid polynomial JSON: {0}")]
    Json(String),
}

/// Substitution target for one variable: rename it or erase it (set to 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subst {
    Var(String),
    One,
}

/// A sparse multivariate polynomial with `BigInt` coefficients.
///
/// Invariants: no zero coefficients are stored, and each exponent vector
/// appears at most once. All binary operations require identical variable
/// lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    vars: Vec<String>,
    terms: BTreeMap<ExponentVector, BigInt>,
}

impl Poly {
    /// The zero polynomial over the given variables.
    pub fn zero(vars: &[&str]) -> Self {
        Poly {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(vars: &[&str]) -> Self {
        let mut p = Poly::zero(vars);
        p.terms.insert(vec![0; p.vars.len()], BigInt::one());
        p
    }

    /// A single monomial `c · x̄^e`. A zero coefficient yields the zero
    /// polynomial.
    pub fn monomial(vars: &[&str], exp: &[u64], coeff: BigInt) -> Result<Self, PolyError> {
        let mut p = Poly::zero(vars);
        if exp.len() != p.vars.len() {
            return Err(PolyError::ArityMismatch {
                got: exp.len(),
                want: p.vars.len(),
            });
        }
        if !coeff.is_zero() {
            p.terms.insert(exp.to_vec(), coeff);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of the exact exponent vector (zero if absent).
    pub fn coeff(&self, exp: &[u64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Adds `c · x̄^e` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, exp: ExponentVector, coeff: BigInt) {
        assert_eq!(exp.len(), self.vars.len(), "exponent arity mismatch");
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exp);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_same_vars(&self, other: &Poly) -> Result<(), PolyError> {
        if self.vars != other.vars {
            return Err(PolyError::VarMismatch(
                self.vars.clone(),
                other.vars.clone(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_same_vars(other)?;
        let mut out = Poly::zero_from(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: ExponentVector = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(exp, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `c · x̄^e`.
    pub fn mono_mul(&self, exp: &[u64], coeff: &BigInt) -> Result<Poly, PolyError> {
        if exp.len() != self.vars.len() {
            return Err(PolyError::ArityMismatch {
                got: exp.len(),
                want: self.vars.len(),
            });
        }
        let mut out = Poly::zero_from(&self.vars);
        if coeff.is_zero() {
            return Ok(out);
        }
        for (e, c) in &self.terms {
            let shifted: ExponentVector = e.iter().zip(exp).map(|(a, b)| a + b).collect();
            out.add_term(shifted, c * coeff);
        }
        Ok(out)
    }

    /// Exact big-integer evaluation under a total variable assignment.
    pub fn evaluate(&self, assignment: &BTreeMap<String, BigInt>) -> Result<BigInt, PolyError> {
        let values: Vec<&BigInt> = self
            .vars
            .iter()
            .map(|v| {
                assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVar(v.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut total = BigInt::zero();
        for (exp, coeff) in &self.terms {
            let mut prod = coeff.clone();
            for (e, v) in exp.iter().zip(&values) {
                if *e > 0 {
                    prod *= v.pow(*e as u32);
                }
            }
            total += prod;
        }
        Ok(total)
    }

    /// Evaluation with every variable set to 1, i.e. the coefficient sum.
    pub fn sum_of_coeffs(&self) -> BigInt {
        self.terms.values().sum()
    }

    /// Renames or erases variables. Every variable of `self` must be mapped;
    /// distinct variables may map to the same target, in which case their
    /// exponents add. The output variable list is the sorted set of targets.
    pub fn substitute(&self, mapping: &BTreeMap<String, Subst>) -> Result<Poly, PolyError> {
        let mut targets: Vec<String> = Vec::new();
        for v in &self.vars {
            match mapping.get(v) {
                None => return Err(PolyError::MissingVar(v.clone())),
                Some(Subst::Var(name)) => {
                    if !targets.contains(name) {
                        targets.push(name.clone());
                    }
                }
                Some(Subst::One) => {}
            }
        }
        targets.sort();
        // column of each source variable in the output exponent vector
        let cols: Vec<Option<usize>> = self
            .vars
            .iter()
            .map(|v| match mapping.get(v).unwrap() {
                Subst::Var(name) => Some(targets.iter().position(|t| t == name).unwrap()),
                Subst::One => None,
            })
            .collect();
        let mut out = Poly {
            vars: targets,
            terms: BTreeMap::new(),
        };
        for (exp, coeff) in &self.terms {
            let mut new_exp = vec![0u64; out.vars.len()];
            for (e, col) in exp.iter().zip(&cols) {
                if let Some(j) = col {
                    new_exp[*j] += e;
                }
            }
            out.add_term(new_exp, coeff.clone());
        }
        Ok(out)
    }

    /// Largest exponent of `var` over all terms; 0 for the zero polynomial.
    pub fn max_degree(&self, var: &str) -> Result<u64, PolyError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == var)
            .ok_or_else(|| PolyError::UnknownVar(var.to_string()))?;
        Ok(self.terms.keys().map(|e| e[idx]).max().unwrap_or(0))
    }

    /// Largest coefficient magnitude in bits; 0 for the zero polynomial.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms
            .values()
            .map(|c| c.magnitude().bits())
            .max()
            .unwrap_or(0)
    }

    /// Canonical JSON form: variables, then terms sorted lexicographically by
    /// exponent vector, coefficients as decimal strings.
    pub fn to_json_string(&self) -> String {
        let repr = PolyRepr {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(e, c)| TermRepr {
                    exp: e.clone(),
                    coeff: c.to_string(),
                })
                .collect(),
        };
        serde_json::to_string(&repr).expect("polynomial serialization cannot fail")
    }

    pub fn from_json_str(text: &str) -> Result<Poly, PolyError> {
        let repr: PolyRepr =
            serde_json::from_str(text).map_err(|e| PolyError::Json(e.to_string()))?;
        let mut out = Poly {
            vars: repr.vars,
            terms: BTreeMap::new(),
        };
        for t in repr.terms {
            if t.exp.len() != out.vars.len() {
                return Err(PolyError::ArityMismatch {
                    got: t.exp.len(),
                    want: out.vars.len(),
                });
            }
            let coeff = BigInt::from_str(&t.coeff)
                .map_err(|e| PolyError::Json(format!("bad coefficient `{}`: {e}", t.coeff)))?;
            out.add_term(t.exp, coeff);
        }
        Ok(out)
    }

    /// Human-readable form, `1 + 2*x*y + x^2*z`; terms in canonical order.
    pub fn to_text(&self) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::with_capacity(self.terms.len());
        for (exp, coeff) in &self.terms {
            let mut factors: Vec<String> = Vec::new();
            for (v, e) in self.vars.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            let coeff_str = coeff.to_string();
            if factors.is_empty() {
                parts.push(coeff_str);
            } else if coeff.is_one() {
                parts.push(factors.join("*"));
            } else if *coeff == -BigInt::one() {
                parts.push(format!("-{}", factors.join("*")));
            } else {
                parts.push(format!("{}*{}", coeff_str, factors.join("*")));
            }
        }
        parts.join(" + ")
    }

    fn zero_from(vars: &[String]) -> Poly {
        Poly {
            vars: vars.to_vec(),
            terms: BTreeMap::new(),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    vars: Vec<String>,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    exp: Vec<u64>,
    coeff: String,
}
