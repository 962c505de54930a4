//! Abstract symmetric functions in five classical bases with exact basis
//! changes routed through monomial coordinates.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use once_cell::sync::Lazy;

use crate::symfunc::linalg::solve;
use crate::symfunc::partition::{partitions_of, Partition};
use crate::symfunc::qpoly::{
    complete_homogeneous, elementary, power_sum, schur_polynomial, QPoly,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Monomial,
    Elementary,
    Homogeneous,
    PowerSum,
    Schur,
}

impl Basis {
    pub fn letter(self) -> &'static str {
        match self {
            Basis::Monomial => "m",
            Basis::Elementary => "e",
            Basis::Homogeneous => "h",
            Basis::PowerSum => "p",
            Basis::Schur => "s",
        }
    }

    pub fn all() -> [Basis; 5] {
        [
            Basis::Monomial,
            Basis::Elementary,
            Basis::Homogeneous,
            Basis::PowerSum,
            Basis::Schur,
        ]
    }
}

impl fmt::Display for Basis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// A finite linear combination of basis elements indexed by partitions;
/// mixed sizes are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymFunc {
    basis: Basis,
    terms: BTreeMap<Partition, BigRational>,
}

impl SymFunc {
    pub fn zero(basis: Basis) -> Self {
        SymFunc {
            basis,
            terms: BTreeMap::new(),
        }
    }

    pub fn new(
        basis: Basis,
        terms: impl IntoIterator<Item = (Partition, BigRational)>,
    ) -> Self {
        let mut map: BTreeMap<Partition, BigRational> = BTreeMap::new();
        for (p, c) in terms {
            let slot = map.entry(p).or_insert_with(BigRational::zero);
            *slot += c;
        }
        map.retain(|_, c| !c.is_zero());
        SymFunc { basis, terms: map }
    }

    pub fn single(basis: Basis, lambda: Partition, c: BigRational) -> Self {
        Self::new(basis, [(lambda, c)])
    }

    pub fn one(basis: Basis) -> Self {
        Self::single(basis, Partition::empty(), BigRational::one())
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.basis, other.basis, "mixed bases");
        Self::new(
            self.basis,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(p, c)| (p.clone(), c.clone())),
        )
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(
            self.basis,
            self.terms.iter().map(|(p, k)| (p.clone(), k * c)),
        )
    }

    /// Exact change of basis; round trips are the identity.
    pub fn change_basis(&self, target: Basis) -> SymFunc {
        if target == self.basis {
            return self.clone();
        }
        // Work degree by degree.
        let mut by_degree: BTreeMap<u32, Vec<(Partition, BigRational)>> = BTreeMap::new();
        for (p, c) in &self.terms {
            by_degree
                .entry(p.size())
                .or_default()
                .push((p.clone(), c.clone()));
        }
        let mut out = Vec::new();
        for (d, terms) in by_degree {
            let parts = partitions_of(d);
            let index: HashMap<&Partition, usize> =
                parts.iter().enumerate().map(|(k, p)| (p, k)).collect();
            // Source coefficients -> monomial coordinates.
            let mut mono = vec![BigRational::zero(); parts.len()];
            if self.basis == Basis::Monomial {
                for (p, c) in &terms {
                    mono[index[p]] += c;
                }
            } else {
                let t = transition(self.basis, d);
                for (p, c) in &terms {
                    for (j, tv) in t[index[p]].iter().enumerate() {
                        if !tv.is_zero() {
                            mono[j] += c * tv;
                        }
                    }
                }
            }
            // Monomial coordinates -> target coefficients.
            let coeffs = if target == Basis::Monomial {
                mono
            } else {
                let t = transition(target, d);
                let n = parts.len();
                let a: Vec<Vec<BigRational>> = (0..n)
                    .map(|row| (0..n).map(|col| t[col][row].clone()).collect())
                    .collect();
                solve(a, mono).expect("classical bases are invertible")
            };
            for (k, c) in coeffs.into_iter().enumerate() {
                if !c.is_zero() {
                    out.push((parts[k].clone(), c));
                }
            }
        }
        SymFunc::new(target, out)
    }

    /// Text form, highest degree first, e.g. `s[2,1](q) + 2 s[2](q)`.
    pub fn render(&self, arg: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            b.size()
                .cmp(&a.size())
                .then_with(|| b.parts().cmp(a.parts()))
        });
        let mut pieces = String::new();
        for (k, p) in keys.iter().enumerate() {
            let c = &self.terms[*p];
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    pieces.push('-');
                }
            } else {
                pieces.push_str(if neg { " - " } else { " + " });
            }
            if p.is_empty() {
                pieces.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                pieces.push_str(&mag.to_string());
                pieces.push(' ');
            }
            pieces.push_str(&format!("{}[{}]({})", self.basis.letter(), p.bracket(), arg));
        }
        pieces
    }

    /// LaTeX form matching the table layout, e.g. `s_{21}(\mathbf{q})`.
    pub fn latex(&self, arg: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Partition> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            a.size()
                .cmp(&b.size())
                .then_with(|| b.parts().cmp(a.parts()))
        });
        let mut out = String::new();
        for (k, p) in keys.iter().enumerate() {
            let c = &self.terms[*p];
            let neg = c.is_negative();
            let mag = c.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { "-" } else { "+" });
            }
            if p.is_empty() {
                out.push_str(&mag.to_string());
                continue;
            }
            if !mag.is_one() {
                out.push_str(&mag.to_string());
                out.push_str("\\,");
            }
            let sub = if p.parts().iter().all(|&x| x <= 9) {
                p.parts()
                    .iter()
                    .map(|x| x.to_string())
                    .collect::<String>()
            } else {
                p.bracket()
            };
            out.push_str(&format!(
                "{}_{{{}}}(\\mathbf{{{}}})",
                self.basis.letter(),
                sub,
                arg
            ));
        }
        out
    }
}

static TRANSITIONS: Lazy<Mutex<HashMap<(Basis, u32), Arc<Vec<Vec<BigRational>>>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

/// Row lambda of the result holds the monomial coordinates of the basis
/// element indexed by lambda, both sides in descending-lex order.
fn transition(basis: Basis, d: u32) -> Arc<Vec<Vec<BigRational>>> {
    let mut cache = TRANSITIONS.lock().unwrap();
    cache
        .entry((basis, d))
        .or_insert_with(|| Arc::new(build_transition(basis, d)))
        .clone()
}

fn build_transition(basis: Basis, d: u32) -> Vec<Vec<BigRational>> {
    let parts = partitions_of(d);
    let vars = d.max(1) as usize;
    parts
        .iter()
        .map(|lambda| {
            let poly = expand(basis, lambda, vars);
            parts
                .iter()
                .map(|mu| {
                    let mut exp: Vec<u32> = mu.parts().to_vec();
                    exp.resize(vars, 0);
                    poly.coefficient(&exp)
                })
                .collect()
        })
        .collect()
}

/// Concrete expansion of a basis element in enough variables to be faithful.
fn expand(basis: Basis, lambda: &Partition, vars: usize) -> QPoly {
    match basis {
        Basis::Monomial => crate::symfunc::qpoly::monomial_sym(lambda, vars),
        Basis::Schur => schur_polynomial(lambda, vars),
        Basis::Elementary | Basis::Homogeneous | Basis::PowerSum => {
            let mut out = QPoly::one(vars);
            for &part in lambda.parts() {
                let factor = match basis {
                    Basis::Elementary => elementary(part, vars),
                    Basis::Homogeneous => complete_homogeneous(part, vars),
                    Basis::PowerSum => power_sum(part, vars),
                    _ => unreachable!(),
                };
                out = out.mul(&factor);
            }
            out
        }
    }
}
