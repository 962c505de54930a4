//! Graded character traces and the bigraded multiplicity table of a module.
//!
//! For a module M with graded components M_d, the table entry at (lambda, mu)
//! is the multiplicity of the Specht module for lambda, weighted by the Schur
//! polynomial s_mu in the row-degree variables, such that
//! sum b_{lambda,mu} s_mu(q) s_lambda(w) reproduces every graded character.
//! The table does not depend on the number of rows used to compute it, apart
//! from dropping the mu with more rows than available.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::closure::{hilbert_polynomial, GradedSubspace};
use crate::error::{Error, Result};
use crate::operators::{permute, Permutation};
use crate::polycore::MultiDegree;
use crate::symfunc::{
    character_table, partitions_of, schur_polynomial, Basis, Partition, QPoly, SymFunc,
};

/// A class function on the symmetric group, stored by cycle type.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassFunction {
    n: u32,
    values: BTreeMap<Partition, BigRational>,
}

impl ClassFunction {
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn value(&self, rho: &Partition) -> BigRational {
        self.values.get(rho).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn values(&self) -> &BTreeMap<Partition, BigRational> {
        &self.values
    }
}

fn trace_of(
    v: &GradedSubspace,
    degree: &MultiDegree,
    sigma: &Permutation,
) -> Result<BigRational> {
    let mut trace = BigRational::zero();
    for (k, row) in v.basis(degree).iter().enumerate() {
        let image = permute(row, sigma)?;
        let coords = v
            .coordinates(&image)?
            .ok_or_else(|| Error::UnstableComponent {
                degree: degree.0.clone(),
            })?;
        trace += coords[k].clone();
    }
    Ok(trace)
}

/// Character of the column-permutation action on one graded component,
/// computed as the trace of one representative per cycle type.
pub fn component_character(v: &GradedSubspace, degree: &MultiDegree) -> Result<ClassFunction> {
    let n = v.shape().cols as u32;
    let mut values = BTreeMap::new();
    for rho in partitions_of(n) {
        let sigma = Permutation::with_cycle_type(rho.parts());
        let trace = trace_of(v, degree, &sigma)?;
        // Characters are class functions; cross-check a conjugate
        // representative on small groups while debug assertions are on.
        if cfg!(debug_assertions) && n <= 4 && n >= 2 {
            let rev = Permutation::from_images((1..=n as usize).rev().collect())
                .expect("reversal is a bijection");
            let other = rev
                .compose(&sigma)
                .and_then(|t| t.compose(&rev.inverse()))
                .expect("sizes match");
            debug_assert_eq!(trace_of(v, degree, &other)?, trace);
        }
        values.insert(rho, trace);
    }
    Ok(ClassFunction { n, values })
}

/// The bigraded multiplicity table of a module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusSeries {
    n: u32,
    entries: BTreeMap<(Partition, Partition), u64>,
}

impl FrobeniusSeries {
    pub fn new(n: u32, entries: impl IntoIterator<Item = ((Partition, Partition), u64)>) -> Self {
        let entries = entries.into_iter().filter(|(_, b)| *b > 0).collect();
        FrobeniusSeries { n, entries }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn entries(&self) -> &BTreeMap<(Partition, Partition), u64> {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn multiplicity(&self, lambda: &Partition, mu: &Partition) -> u64 {
        self.entries
            .get(&(lambda.clone(), mu.clone()))
            .copied()
            .unwrap_or(0)
    }

    /// Largest size of any mu in the table.
    pub fn mu_degree(&self) -> u32 {
        self.entries
            .keys()
            .map(|(_, mu)| mu.size())
            .max()
            .unwrap_or(0)
    }

    /// Drops every mu with more than `rows` parts.
    pub fn truncate(&self, rows: usize) -> Self {
        FrobeniusSeries {
            n: self.n,
            entries: self
                .entries
                .iter()
                .filter(|((_, mu), _)| mu.len() <= rows)
                .map(|(k, v)| (k.clone(), *v))
                .collect(),
        }
    }

    /// Groups the table by the symmetric-group side: lambda maps to the sum
    /// of b * basis-element(mu) over the row-degree side.
    fn grouped(&self, q_basis: Basis) -> BTreeMap<Partition, SymFunc> {
        let mut groups: BTreeMap<Partition, SymFunc> = BTreeMap::new();
        for ((lambda, mu), b) in &self.entries {
            let term = SymFunc::single(
                Basis::Schur,
                mu.clone(),
                BigRational::from_integer((*b as i64).into()),
            );
            groups
                .entry(lambda.clone())
                .and_modify(|g| *g = g.add(&term))
                .or_insert(term);
        }
        if q_basis != Basis::Schur {
            for g in groups.values_mut() {
                *g = g.change_basis(q_basis);
            }
        }
        groups
    }

    /// Rewrites sum P_lambda(q) s_lambda(w) with the w-side in the h basis:
    /// coefficients of h_nu(w) are combinations of the P_lambda.
    fn regroup_w_to_h(&self) -> BTreeMap<Partition, SymFunc> {
        let schur_groups = self.grouped(Basis::Schur);
        let mut out: BTreeMap<Partition, SymFunc> = BTreeMap::new();
        for (lambda, qside) in schur_groups {
            let w_in_h = SymFunc::single(Basis::Schur, lambda, BigRational::from_integer(1.into()))
                .change_basis(Basis::Homogeneous);
            for (nu, a) in w_in_h.terms() {
                let scaled = qside.scale(a);
                out.entry(nu.clone())
                    .and_modify(|g| *g = g.add(&scaled))
                    .or_insert(scaled);
            }
        }
        out.retain(|_, g| !g.is_zero());
        for g in out.values_mut() {
            *g = g.change_basis(Basis::Homogeneous);
        }
        out
    }

    pub fn render(&self, style: RenderStyle) -> String {
        let (groups, letter) = match style {
            RenderStyle::SchurSchur => (self.grouped(Basis::Schur), "s"),
            RenderStyle::HH => (self.regroup_w_to_h(), "h"),
        };
        if groups.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w_part, qside) in groups.iter().rev() {
            let (body, single) = format_group(qside, "q");
            let w_factor = format!("{letter}[{}](w)", w_part.bracket());
            if body == "1" {
                parts.push(w_factor);
            } else if single {
                parts.push(format!("{body} {w_factor}"));
            } else {
                parts.push(format!("({body}) {w_factor}"));
            }
        }
        parts.join(" + ")
    }

    /// One display formula in the style of the source tables: bold
    /// multiplicities, plain q-side letters, explicit w arguments.
    pub fn latex(&self, style: RenderStyle) -> String {
        let (groups, letter) = match style {
            RenderStyle::SchurSchur => (self.grouped(Basis::Schur), "s"),
            RenderStyle::HH => (self.regroup_w_to_h(), "h"),
        };
        if groups.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (w_part, qside) in groups.iter().rev() {
            let (body, single) = latex_group(qside);
            let w_factor = format!(
                "{letter}_{{{}}}({{\\bold w}})",
                w_part
                    .parts()
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            );
            if body == "1" {
                parts.push(w_factor);
            } else if single {
                parts.push(format!("{body}\\,{w_factor}"));
            } else {
                parts.push(format!("\\left({body}\\right){w_factor}"));
            }
        }
        parts.join("+")
    }

    pub fn to_json(&self) -> Value {
        let entries: Vec<Value> = self
            .entries
            .iter()
            .map(|((lambda, mu), b)| {
                json!({
                    "lambda": lambda.parts(),
                    "mu": mu.parts(),
                    "mult": b,
                })
            })
            .collect();
        json!({ "n": self.n, "entries": entries })
    }

    pub fn from_json(value: &Value) -> Result<Self> {
        let bad = |reason: &str| Error::Parse {
            input: value.to_string(),
            reason: reason.to_string(),
        };
        let n = value
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("missing integer field 'n'"))? as u32;
        let raw = value
            .get("entries")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("missing array field 'entries'"))?;
        let mut entries = BTreeMap::new();
        for item in raw {
            let parts = |key: &str| -> Result<Partition> {
                let arr = item
                    .get(key)
                    .and_then(Value::as_array)
                    .ok_or_else(|| bad("entry missing partition field"))?;
                let mut ps = Vec::with_capacity(arr.len());
                for x in arr {
                    let p = x
                        .as_u64()
                        .filter(|&p| p > 0)
                        .ok_or_else(|| bad("partition parts must be positive integers"))?;
                    ps.push(p as u32);
                }
                Ok(Partition::new(ps))
            };
            let lambda = parts("lambda")?;
            let mu = parts("mu")?;
            if lambda.size() != n {
                return Err(bad("lambda must be a partition of n"));
            }
            let mult = item
                .get("mult")
                .and_then(Value::as_u64)
                .filter(|&b| b > 0)
                .ok_or_else(|| bad("mult must be a positive integer"))?;
            entries.insert((lambda, mu), mult);
        }
        Ok(FrobeniusSeries { n, entries })
    }
}

/// Output style: both sides in Schur letters, or both sides in complete
/// homogeneous letters (the w side converted exactly, negative coefficients
/// printed as they come).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderStyle {
    SchurSchur,
    HH,
}

fn format_coefficient(c: &BigRational) -> String {
    c.to_string()
}

/// Terms ordered by size then reverse lexicographic, the table convention.
fn ordered_terms(sf: &SymFunc) -> Vec<(&Partition, &BigRational)> {
    let mut terms: Vec<_> = sf.terms().iter().collect();
    terms.sort_by(|(a, _), (b, _)| a.size().cmp(&b.size()).then_with(|| b.cmp(a)));
    terms
}

fn format_group(sf: &SymFunc, arg: &str) -> (String, bool) {
    let letter = sf.basis().letter();
    let terms = ordered_terms(sf);
    if terms.is_empty() {
        return ("0".to_string(), true);
    }
    let mut out = String::new();
    for (idx, (mu, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = if c.is_negative() {
            if idx == 0 { "-" } else { " - " }
        } else if idx == 0 {
            ""
        } else {
            " + "
        };
        out.push_str(sign);
        if mu.is_empty() {
            out.push_str(&format_coefficient(&mag));
        } else {
            if !mag.is_integer() || mag != BigRational::from_integer(1.into()) {
                out.push_str(&format_coefficient(&mag));
                out.push('*');
            }
            out.push_str(&format!("{letter}[{}]({arg})", mu.bracket()));
        }
    }
    (out, terms.len() == 1)
}

fn latex_group(sf: &SymFunc) -> (String, bool) {
    let letter = sf.basis().letter();
    let terms = ordered_terms(sf);
    if terms.is_empty() {
        return ("0".to_string(), true);
    }
    let one = BigRational::from_integer(1.into());
    let mut out = String::new();
    for (idx, (mu, c)) in terms.iter().enumerate() {
        let mag = c.abs();
        let sign = if c.is_negative() {
            "-"
        } else if idx == 0 {
            ""
        } else {
            "+"
        };
        out.push_str(sign);
        if mu.is_empty() {
            out.push_str(&format_coefficient(&mag));
        } else {
            if mag != one {
                out.push_str(&format!("\\boldsymbol{{{}}}\\,", format_coefficient(&mag)));
            }
            let subscript = mu
                .parts()
                .iter()
                .map(|p| p.to_string())
                .collect::<Vec<_>>()
                .join(",");
            out.push_str(&format!("{letter}_{{{subscript}}}"));
        }
    }
    (out, terms.len() == 1)
}

/// The multiplicity table of a stable module: for each lambda, the graded
/// multiplicities of the Specht module form a symmetric polynomial in the
/// row degrees, whose Schur expansion fills the lambda row of the table.
pub fn frobenius_series(m: &GradedSubspace) -> Result<FrobeniusSeries> {
    let n = m.shape().cols as u32;
    let rows = m.shape().rows;
    let degrees: Vec<MultiDegree> = m.components().keys().cloned().collect();
    let characters: Vec<(MultiDegree, ClassFunction)> = degrees
        .into_par_iter()
        .map(|d| component_character(m, &d).map(|chi| (d, chi)))
        .collect::<Result<Vec<_>>>()?;

    let table = character_table(n);
    let lambdas = partitions_of(n);
    let mut entries = BTreeMap::new();
    for lambda in &lambdas {
        let mut c_lambda = QPoly::zero(rows);
        for (d, chi) in &characters {
            let mut inner = BigRational::zero();
            for (rho, trace) in chi.values() {
                let irr = BigRational::from_integer(table.value(lambda, rho).into());
                let z = BigRational::from_integer((rho.z() as i64).into());
                inner += trace * irr / z;
            }
            if inner.is_zero() {
                continue;
            }
            if !inner.is_integer() || inner.is_negative() {
                return Err(Error::NonIntegerCoefficient {
                    context: "symmetric group character multiplicity",
                    value: format!("{inner} at lambda = {lambda}, degree = {d}"),
                });
            }
            c_lambda.add_assign_term(d.0.clone(), &inner);
        }
        if c_lambda.is_zero() {
            continue;
        }
        let schur = crate::symfunc::decompose_schur(&c_lambda)?;
        for (mu, b) in schur {
            if b < 0 {
                return Err(Error::NegativeMultiplicity {
                    lambda: lambda.to_string(),
                    mu: mu.to_string(),
                    value: b.to_string(),
                });
            }
            if b > 0 {
                debug_assert!(mu.len() <= n as usize, "mu must fit inside n columns");
                entries.insert((lambda.clone(), mu), b as u64);
            }
        }
    }
    let series = FrobeniusSeries { n, entries };

    // The table must reproduce the graded dimension count exactly.
    let from_table = hilbert_from_frobenius(&series, rows);
    let from_basis = hilbert_polynomial(m);
    if from_table != from_basis {
        let degree = first_difference(&from_table, &from_basis);
        return Err(Error::Reconciliation {
            degree: degree.clone(),
            from_table: from_table.coefficient(&degree).to_string(),
            from_basis: from_basis.coefficient(&degree).to_string(),
        });
    }
    Ok(series)
}

fn first_difference(a: &QPoly, b: &QPoly) -> Vec<u32> {
    let mut exps: Vec<&Vec<u32>> = a.terms().map(|(e, _)| e).collect();
    exps.extend(b.terms().map(|(e, _)| e));
    exps.sort();
    exps.dedup();
    for e in exps {
        if a.coefficient(e) != b.coefficient(e) {
            return e.clone();
        }
    }
    Vec::new()
}

/// Dimension generating polynomial implied by a table: replace each s_lambda
/// on the w side by the number of standard tableaux, keep s_mu in `rows`
/// variables on the q side.
pub fn hilbert_from_frobenius(fs: &FrobeniusSeries, rows: usize) -> QPoly {
    let mut out = QPoly::zero(rows);
    for ((lambda, mu), b) in fs.entries() {
        let weight = BigRational::from_integer(((*b * lambda.hook_dimension()) as i64).into());
        out = out.add(&schur_polynomial(mu, rows).scale(&weight));
    }
    out
}
