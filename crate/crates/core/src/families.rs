//! Named symmetric generators in the first variable row, the stable
//! families built from single variables, and the generator expression
//! grammar used by the command line.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::polycore::{ExponentMatrix, MatrixPolynomial, Shape};
use crate::symfunc::{
    complete_homogeneous, elementary, monomial_sym, power_sum, schur_polynomial, Basis, Partition,
    QPoly,
};

/// The four variable-built stable families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    /// d-th powers of single variables.
    Powers,
    /// Differences of d-th powers of two variables.
    Differences,
    /// Products of d distinct variables.
    Products,
    /// All monomials of total degree d.
    Monomials,
}

impl FamilyKind {
    pub fn letter(self) -> char {
        match self {
            FamilyKind::Powers => 'A',
            FamilyKind::Differences => 'B',
            FamilyKind::Products => 'C',
            FamilyKind::Monomials => 'T',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'A' => Some(FamilyKind::Powers),
            'B' => Some(FamilyKind::Differences),
            'C' => Some(FamilyKind::Products),
            'T' => Some(FamilyKind::Monomials),
            _ => None,
        }
    }
}

/// A parsed generator expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorSpec {
    /// Rational linear combination of classical basis elements.
    Terms(Vec<(BigRational, Basis, Partition)>),
    /// The alternating product of all variable differences.
    Vandermonde,
    /// A named family of polynomials of the given degree.
    Family { kind: FamilyKind, degree: u32 },
}

impl std::fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GeneratorSpec::Terms(terms) => {
                let parts: Vec<String> = terms
                    .iter()
                    .map(|(c, basis, lambda)| {
                        let elem = format!("{}[{}]", basis.letter(), lambda.bracket());
                        if c.is_one() {
                            elem
                        } else {
                            format!("{c}*{elem}")
                        }
                    })
                    .collect();
                write!(f, "{}", parts.join(" + "))
            }
            GeneratorSpec::Vandermonde => write!(f, "vdm"),
            GeneratorSpec::Family { kind, degree } => {
                write!(f, "{}:{}", kind.letter(), degree)
            }
        }
    }
}

/// Rewrites a polynomial in q_1..q_n as a matrix polynomial living in the
/// first row of an 1 x n variable matrix.
pub fn qpoly_to_row(p: &QPoly) -> MatrixPolynomial {
    let shape = Shape::new(1, p.vars().max(1));
    let terms: Vec<(ExponentMatrix, BigRational)> = p
        .terms()
        .map(|(exp, c)| {
            let mut e = ExponentMatrix::zero(shape);
            for (j, &d) in exp.iter().enumerate() {
                if d > 0 {
                    e = e.shifted(1, j + 1, d as i64).expect("in range");
                }
            }
            (e, c.clone())
        })
        .collect();
    MatrixPolynomial::from_terms(shape, terms)
}

/// The classical symmetric polynomial of the given basis and shape, in the
/// first row of n variable columns. Errors when the element vanishes or is
/// undefined at this n.
pub fn sym_poly(basis: Basis, lambda: &Partition, n: usize) -> Result<MatrixPolynomial> {
    if n == 0 {
        return Err(Error::UnsupportedGenerator {
            reason: "at least one column is required".to_string(),
        });
    }
    let q = match basis {
        Basis::Monomial => {
            if lambda.len() > n {
                return Err(Error::UnsupportedGenerator {
                    reason: format!("m[{}] vanishes in {n} variables", lambda.bracket()),
                });
            }
            monomial_sym(lambda, n)
        }
        Basis::Schur => {
            if lambda.len() > n {
                return Err(Error::UnsupportedGenerator {
                    reason: format!("s[{}] vanishes in {n} variables", lambda.bracket()),
                });
            }
            schur_polynomial(lambda, n)
        }
        Basis::Elementary => {
            if lambda.parts().first().is_some_and(|&p| p as usize > n) {
                return Err(Error::UnsupportedGenerator {
                    reason: format!("e[{}] vanishes in {n} variables", lambda.bracket()),
                });
            }
            lambda
                .parts()
                .iter()
                .fold(QPoly::one(n), |acc, &k| acc.mul(&elementary(k, n)))
        }
        Basis::Homogeneous => lambda
            .parts()
            .iter()
            .fold(QPoly::one(n), |acc, &k| acc.mul(&complete_homogeneous(k, n))),
        Basis::PowerSum => lambda
            .parts()
            .iter()
            .fold(QPoly::one(n), |acc, &k| acc.mul(&power_sum(k, n))),
    };
    Ok(qpoly_to_row(&q))
}

/// The expanded product of all differences x_1i - x_1j over i < j.
pub fn vandermonde(n: usize) -> MatrixPolynomial {
    let shape = Shape::new(1, n.max(1));
    let mut out = MatrixPolynomial::one(shape);
    for i in 1..=n {
        for j in i + 1..=n {
            let diff = MatrixPolynomial::var(shape, 1, i)
                .sub(&MatrixPolynomial::var(shape, 1, j))
                .expect("same shape");
            out = out.multiply(&diff).expect("same shape");
        }
    }
    out
}

/// The members of a named family at degree d with n columns.
pub fn family(kind: FamilyKind, degree: u32, n: usize) -> Result<Vec<MatrixPolynomial>> {
    use itertools::Itertools;
    if degree == 0 {
        return Err(Error::UnsupportedGenerator {
            reason: "family degree must be positive".to_string(),
        });
    }
    let shape = Shape::new(1, n.max(1));
    let members = match kind {
        FamilyKind::Powers => (1..=n)
            .map(|j| MatrixPolynomial::var(shape, 1, j).pow(degree))
            .collect(),
        FamilyKind::Differences => {
            let mut out = Vec::new();
            for i in 1..=n {
                for j in i + 1..=n {
                    out.push(
                        MatrixPolynomial::var(shape, 1, i)
                            .pow(degree)
                            .sub(&MatrixPolynomial::var(shape, 1, j).pow(degree))
                            .expect("same shape"),
                    );
                }
            }
            out
        }
        FamilyKind::Products => {
            if degree as usize > n {
                return Err(Error::UnsupportedGenerator {
                    reason: format!("products of {degree} distinct variables need n >= {degree}"),
                });
            }
            (1..=n)
                .combinations(degree as usize)
                .map(|subset| {
                    subset.into_iter().fold(MatrixPolynomial::one(shape), |acc, j| {
                        acc.multiply(&MatrixPolynomial::var(shape, 1, j))
                            .expect("same shape")
                    })
                })
                .collect()
        }
        FamilyKind::Monomials => (1..=n)
            .combinations_with_replacement(degree as usize)
            .map(|combo| {
                combo.into_iter().fold(MatrixPolynomial::one(shape), |acc, j| {
                    acc.multiply(&MatrixPolynomial::var(shape, 1, j))
                        .expect("same shape")
                })
            })
            .collect(),
    };
    Ok(members)
}

/// A single polynomial for the specs that denote one. Family specs denote
/// lists and are rejected here.
pub fn generator_polynomial(spec: &GeneratorSpec, n: usize) -> Result<MatrixPolynomial> {
    match spec {
        GeneratorSpec::Terms(terms) => {
            let shape = Shape::new(1, n.max(1));
            let mut out = MatrixPolynomial::zero(shape);
            for (c, basis, lambda) in terms {
                let f = sym_poly(*basis, lambda, n)?;
                out = out.add(&f.scale(c))?;
            }
            Ok(out)
        }
        GeneratorSpec::Vandermonde => Ok(vandermonde(n)),
        GeneratorSpec::Family { kind, degree } => Err(Error::UnsupportedGenerator {
            reason: format!(
                "{}:{degree} denotes a family of polynomials, not a single generator",
                kind.letter()
            ),
        }),
    }
}

/// The generating list for any spec: families list their members, single
/// generators are singletons.
pub fn stable_family(spec: &GeneratorSpec, n: usize) -> Result<Vec<MatrixPolynomial>> {
    match spec {
        GeneratorSpec::Family { kind, degree } => family(*kind, *degree, n),
        _ => Ok(vec![generator_polynomial(spec, n)?]),
    }
}

fn parse_partition(input: &str, body: &str) -> Result<Partition> {
    let inner = body.trim();
    if inner.is_empty() {
        return Err(Error::Parse {
            input: input.to_string(),
            reason: "empty partition brackets".to_string(),
        });
    }
    let mut parts = Vec::new();
    for piece in inner.split(',') {
        let p: u32 = piece.trim().parse().map_err(|_| Error::Parse {
            input: input.to_string(),
            reason: format!("bad partition part {:?}", piece.trim()),
        })?;
        if p == 0 {
            return Err(Error::Parse {
                input: input.to_string(),
                reason: "partition parts must be positive".to_string(),
            });
        }
        parts.push(p);
    }
    Ok(Partition::new(parts))
}

fn parse_coefficient(input: &str, body: &str) -> Result<BigRational> {
    let body = body.trim();
    let (num, den) = match body.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (body, "1"),
    };
    let parse_int = |s: &str| -> Result<num_bigint::BigInt> {
        s.parse().map_err(|_| Error::Parse {
            input: input.to_string(),
            reason: format!("bad rational coefficient {body:?}"),
        })
    };
    let d = parse_int(den)?;
    if d.is_zero() {
        return Err(Error::Parse {
            input: input.to_string(),
            reason: "zero denominator".to_string(),
        });
    }
    Ok(BigRational::new(parse_int(num)?, d))
}

fn parse_term(input: &str, term: &str) -> Result<(BigRational, Basis, Partition)> {
    let term = term.trim();
    let (coef, elem) = match term.split_once('*') {
        Some((c, e)) => (parse_coefficient(input, c)?, e.trim()),
        None => (BigRational::one(), term),
    };
    let mut chars = elem.chars();
    let letter = chars.next().ok_or_else(|| Error::Parse {
        input: input.to_string(),
        reason: "empty term".to_string(),
    })?;
    let basis = match letter {
        'm' => Basis::Monomial,
        'e' => Basis::Elementary,
        'h' => Basis::Homogeneous,
        'p' => Basis::PowerSum,
        's' => Basis::Schur,
        other => {
            return Err(Error::Parse {
                input: input.to_string(),
                reason: format!("unknown basis letter {other:?}"),
            })
        }
    };
    let rest: String = chars.collect();
    let body = rest
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::Parse {
            input: input.to_string(),
            reason: format!("expected {letter}[parts] in {term:?}"),
        })?;
    Ok((coef, basis, parse_partition(input, body)?))
}

/// Parses the generator grammar: `vdm`, family specs `A:d` .. `T:d`, basis
/// elements `p[3]`, `e[3,1]`, and rational linear combinations such as
/// `1*m[3] + 3*m[2,1] + 6*m[1,1,1]`.
pub fn parse_generator(input: &str) -> Result<GeneratorSpec> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::Parse {
            input: input.to_string(),
            reason: "empty generator expression".to_string(),
        });
    }
    if s == "vdm" {
        return Ok(GeneratorSpec::Vandermonde);
    }
    if let Some((letter, rest)) = s.split_once(':') {
        let letter = letter.trim();
        if letter.len() == 1 {
            if let Some(kind) = FamilyKind::from_letter(letter.chars().next().unwrap()) {
                let degree: u32 = rest.trim().parse().map_err(|_| Error::Parse {
                    input: input.to_string(),
                    reason: format!("bad family degree {:?}", rest.trim()),
                })?;
                if degree == 0 {
                    return Err(Error::Parse {
                        input: input.to_string(),
                        reason: "family degree must be positive".to_string(),
                    });
                }
                return Ok(GeneratorSpec::Family { kind, degree });
            }
        }
        return Err(Error::Parse {
            input: input.to_string(),
            reason: format!("unknown family letter {letter:?}"),
        });
    }
    // Split on top-level + and - signs; brackets never nest.
    let mut terms = Vec::new();
    let mut start = 0;
    let mut negate = false;
    let mut depth = 0usize;
    let bytes = s.as_bytes();
    for (idx, &b) in bytes.iter().enumerate() {
        match b {
            b'[' => depth += 1,
            b']' => {
                depth = depth.checked_sub(1).ok_or_else(|| Error::Parse {
                    input: input.to_string(),
                    reason: "unbalanced brackets".to_string(),
                })?
            }
            b'+' | b'-' if depth == 0 && idx > start => {
                let (c, basis, lambda) = parse_term(input, &s[start..idx])?;
                terms.push((if negate { -c } else { c }, basis, lambda));
                negate = b == b'-';
                start = idx + 1;
            }
            b'-' if depth == 0 && idx == start => {
                negate = true;
                start = idx + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(Error::Parse {
            input: input.to_string(),
            reason: "unbalanced brackets".to_string(),
        });
    }
    let (c, basis, lambda) = parse_term(input, &s[start..])?;
    terms.push((if negate { -c } else { c }, basis, lambda));
    Ok(GeneratorSpec::Terms(terms))
}
