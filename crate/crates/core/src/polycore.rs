//! Sparse polynomials with exact rational coefficients in a matrix of
//! variables x[i,j], i a row (variable set), j a column (site).
//!
//! Terms are kept sorted in descending graded lexicographic order on the
//! row-major flattened exponent matrix, with zero coefficients pruned, so
//! equality and hashing are structural.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dimensions of the variable matrix: `rows` variable sets, `cols` sites.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub rows: usize,
    pub cols: usize,
}

impl Shape {
    pub fn new(rows: usize, cols: usize) -> Self {
        assert!(rows >= 1 && cols >= 1, "shape must be at least 1x1");
        Shape { rows, cols }
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}x{}", self.rows, self.cols)
    }
}

/// Row degrees of a monomial; the grading on everything downstream.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiDegree(pub Vec<u32>);

impl MultiDegree {
    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

impl PartialOrd for MultiDegree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for MultiDegree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total()
            .cmp(&other.total())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl fmt::Display for MultiDegree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, d) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{d}")?;
        }
        write!(f, ")")
    }
}

/// Exponent matrix of a single monomial, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentMatrix {
    shape: Shape,
    entries: Vec<u32>,
}

impl ExponentMatrix {
    pub fn zero(shape: Shape) -> Self {
        ExponentMatrix {
            shape,
            entries: vec![0; shape.rows * shape.cols],
        }
    }

    /// Builds from explicit rows; every row must have the same length.
    pub fn from_rows(rows: &[Vec<u32>]) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        ExponentMatrix {
            shape: Shape::new(rows.len(), cols),
            entries: rows.concat(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    fn idx(&self, i: usize, j: usize) -> usize {
        assert!(
            (1..=self.shape.rows).contains(&i) && (1..=self.shape.cols).contains(&j),
            "index ({i},{j}) out of range for shape {}",
            self.shape
        );
        (i - 1) * self.shape.cols + (j - 1)
    }

    /// Exponent of x[i,j]; indices are 1-based.
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[self.idx(i, j)]
    }

    /// Copy with the exponent of x[i,j] shifted by `delta`; None on underflow.
    pub fn shifted(&self, i: usize, j: usize, delta: i64) -> Option<Self> {
        let k = self.idx(i, j);
        let new = i64::from(self.entries[k]) + delta;
        if new < 0 {
            return None;
        }
        let mut entries = self.entries.clone();
        entries[k] = new as u32;
        Some(ExponentMatrix {
            shape: self.shape,
            entries,
        })
    }

    /// Entrywise sum; the exponent matrix of a product of monomials.
    pub fn times(&self, other: &Self) -> Self {
        assert_eq!(self.shape, other.shape);
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        ExponentMatrix {
            shape: self.shape,
            entries,
        }
    }

    pub fn total_degree(&self) -> u32 {
        self.entries.iter().sum()
    }

    pub fn multidegree(&self) -> MultiDegree {
        MultiDegree(
            self.entries
                .chunks(self.shape.cols)
                .map(|row| row.iter().sum())
                .collect(),
        )
    }

    /// Applies a column relabeling: column j of the result is column
    /// `preimage[j]` of the input. `images` holds 1-based images.
    pub fn col_permuted(&self, images: &[usize]) -> Self {
        assert_eq!(images.len(), self.shape.cols);
        let mut entries = vec![0; self.entries.len()];
        for i in 0..self.shape.rows {
            for j in 0..self.shape.cols {
                let dst = i * self.shape.cols + (images[j] - 1);
                entries[dst] = self.entries[i * self.shape.cols + j];
            }
        }
        ExponentMatrix {
            shape: self.shape,
            entries,
        }
    }

    /// Pads with zero rows at the bottom to reach `rows` rows.
    pub fn embedded(&self, rows: usize) -> Result<Self> {
        if rows < self.shape.rows {
            return Err(Error::EmbedShrink {
                from: self.shape.rows,
                to: rows,
            });
        }
        let shape = Shape::new(rows, self.shape.cols);
        let mut entries = self.entries.clone();
        entries.resize(rows * self.shape.cols, 0);
        Ok(ExponentMatrix { shape, entries })
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        self.entries.chunks(self.shape.cols)
    }
}

impl PartialOrd for ExponentMatrix {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Graded lexicographic: total degree first, then lex on the flattening.
impl Ord for ExponentMatrix {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.entries.cmp(&other.entries))
            .then_with(|| self.shape.cmp(&other.shape))
    }
}

/// A polynomial in the matrix variables, canonical by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MatrixPolynomial {
    shape: Shape,
    terms: Vec<(ExponentMatrix, BigRational)>,
}

impl MatrixPolynomial {
    pub fn zero(shape: Shape) -> Self {
        MatrixPolynomial {
            shape,
            terms: Vec::new(),
        }
    }

    pub fn constant(shape: Shape, c: BigRational) -> Self {
        Self::from_terms(shape, [(ExponentMatrix::zero(shape), c)])
    }

    pub fn one(shape: Shape) -> Self {
        Self::constant(shape, BigRational::one())
    }

    /// The variable x[i,j], 1-based.
    pub fn var(shape: Shape, i: usize, j: usize) -> Self {
        let exp = ExponentMatrix::zero(shape).shifted(i, j, 1).unwrap();
        Self::from_terms(shape, [(exp, BigRational::one())])
    }

    pub fn monomial(exp: ExponentMatrix, coef: BigRational) -> Self {
        let shape = exp.shape();
        Self::from_terms(shape, [(exp, coef)])
    }

    /// Collects terms, merging duplicates and dropping zeros; the result is
    /// sorted descending so equal polynomials are structurally equal.
    pub fn from_terms(
        shape: Shape,
        terms: impl IntoIterator<Item = (ExponentMatrix, BigRational)>,
    ) -> Self {
        let mut acc: BTreeMap<ExponentMatrix, BigRational> = BTreeMap::new();
        for (exp, coef) in terms {
            assert_eq!(exp.shape(), shape, "term shape differs from polynomial shape");
            let slot = acc.entry(exp).or_insert_with(BigRational::zero);
            *slot += coef;
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        MatrixPolynomial { shape, terms }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending graded-lex order; the first one is leading.
    pub fn terms(&self) -> &[(ExponentMatrix, BigRational)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(ExponentMatrix, BigRational)> {
        self.terms.first()
    }

    pub fn coefficient(&self, exp: &ExponentMatrix) -> BigRational {
        match self
            .terms
            .binary_search_by(|(e, _)| exp.cmp(e))
        {
            Ok(k) => self.terms[k].1.clone(),
            Err(_) => BigRational::zero(),
        }
    }

    fn check_shape(&self, other: &Self) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape,
                right: other.shape,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.merged(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        Ok(self.merged(other, true))
    }

    /// Merge of two descending term lists; `negate` subtracts `other`.
    fn merged(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut a, mut b) = (self.terms.iter().peekable(), other.terms.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some((ea, ca)), Some((eb, cb))) => match ea.cmp(eb) {
                    Ordering::Greater => {
                        out.push((ea.clone(), ca.clone()));
                        a.next();
                    }
                    Ordering::Less => {
                        let c = if negate { -cb.clone() } else { cb.clone() };
                        out.push((eb.clone(), c));
                        b.next();
                    }
                    Ordering::Equal => {
                        let c = if negate {
                            ca.clone() - cb.clone()
                        } else {
                            ca.clone() + cb.clone()
                        };
                        if !c.is_zero() {
                            out.push((ea.clone(), c));
                        }
                        a.next();
                        b.next();
                    }
                },
                (Some(_), None) => {
                    out.extend(a.cloned());
                    break;
                }
                (None, Some(_)) => {
                    for (e, c) in b {
                        out.push((e.clone(), if negate { -c.clone() } else { c.clone() }));
                    }
                    break;
                }
                (None, None) => break,
            }
        }
        MatrixPolynomial {
            shape: self.shape,
            terms: out,
        }
    }

    pub fn neg(&self) -> Self {
        MatrixPolynomial {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        MatrixPolynomial {
            shape: self.shape,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_shape(other)?;
        let mut acc: BTreeMap<ExponentMatrix, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp = ea.times(eb);
                let slot = acc.entry(exp).or_insert_with(BigRational::zero);
                *slot += ca * cb;
            }
        }
        let terms = acc
            .into_iter()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Ok(MatrixPolynomial {
            shape: self.shape,
            terms,
        })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut out = Self::one(self.shape);
        while e > 0 {
            if e & 1 == 1 {
                out = out.multiply(&base).expect("same shape");
            }
            e >>= 1;
            if e > 0 {
                base = base.multiply(&base).expect("same shape");
            }
        }
        out
    }

    /// Maximal total degree over the support; None for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.first().map(|(e, _)| e.total_degree())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.iter().map(|(e, _)| e.multidegree());
        match degs.next() {
            None => true,
            Some(first) => degs.all(|d| d == first),
        }
    }

    /// Multidegree of a nonzero homogeneous polynomial.
    pub fn multidegree(&self) -> Option<MultiDegree> {
        if self.is_zero() || !self.is_homogeneous() {
            return None;
        }
        Some(self.terms[0].0.multidegree())
    }

    /// Splits into homogeneous parts keyed by multidegree.
    pub fn homogeneous_components(&self) -> BTreeMap<MultiDegree, MatrixPolynomial> {
        let mut out: BTreeMap<MultiDegree, Vec<(ExponentMatrix, BigRational)>> = BTreeMap::new();
        for (e, c) in &self.terms {
            out.entry(e.multidegree())
                .or_default()
                .push((e.clone(), c.clone()));
        }
        out.into_iter()
            .map(|(d, mut terms)| {
                terms.sort_by(|(a, _), (b, _)| b.cmp(a));
                (
                    d,
                    MatrixPolynomial {
                        shape: self.shape,
                        terms,
                    },
                )
            })
            .collect()
    }

    /// Reinterprets the polynomial in a taller variable matrix.
    pub fn embed(&self, rows: usize) -> Result<Self> {
        if rows == self.shape.rows {
            return Ok(self.clone());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| Ok((e.embedded(rows)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        // Padding with zero rows preserves the term order.
        Ok(MatrixPolynomial {
            shape: Shape::new(rows, self.shape.cols),
            terms,
        })
    }

    /// Plain-text form, e.g. `3*x[1,1]^2*x[1,2] - 1/2*x[2,1] + 2`.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, (exp, coef)) in self.terms.iter().enumerate() {
            let neg = coef < &BigRational::zero();
            let mag = if neg { -coef.clone() } else { coef.clone() };
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !mag.is_one() || exp.total_degree() == 0 {
                factors.push(mag.to_string());
            }
            for i in 1..=self.shape.rows {
                for j in 1..=self.shape.cols {
                    let e = exp.get(i, j);
                    if e == 1 {
                        factors.push(format!("x[{i},{j}]"));
                    } else if e > 1 {
                        factors.push(format!("x[{i},{j}]^{e}"));
                    }
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }

    /// JSON encoding: shape plus canonical term list.
    pub fn to_json(&self) -> serde_json::Value {
        let terms: Vec<serde_json::Value> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let rows: Vec<Vec<u32>> = e.rows().map(|r| r.to_vec()).collect();
                serde_json::json!({ "exp": rows, "coef": c.to_string() })
            })
            .collect();
        serde_json::json!({ "shape": [self.shape.rows, self.shape.cols], "terms": terms })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parse = |reason: &str| Error::Parse {
            input: v.to_string(),
            reason: reason.to_string(),
        };
        let shape = v
            .get("shape")
            .and_then(|s| s.as_array())
            .ok_or_else(|| parse("missing shape"))?;
        if shape.len() != 2 {
            return Err(parse("shape must be [rows, cols]"));
        }
        let rows = shape[0].as_u64().ok_or_else(|| parse("bad rows"))? as usize;
        let cols = shape[1].as_u64().ok_or_else(|| parse("bad cols"))? as usize;
        if rows == 0 || cols == 0 {
            return Err(parse("shape must be at least 1x1"));
        }
        let shape = Shape::new(rows, cols);
        let mut terms = Vec::new();
        for t in v
            .get("terms")
            .and_then(|t| t.as_array())
            .ok_or_else(|| parse("missing terms"))?
        {
            let exp = t
                .get("exp")
                .and_then(|e| e.as_array())
                .ok_or_else(|| parse("missing exp"))?;
            if exp.len() != rows {
                return Err(parse("exp row count differs from shape"));
            }
            let mut mat = Vec::with_capacity(rows);
            for row in exp {
                let row = row.as_array().ok_or_else(|| parse("exp row not an array"))?;
                if row.len() != cols {
                    return Err(parse("exp col count differs from shape"));
                }
                let row: Option<Vec<u32>> =
                    row.iter().map(|x| x.as_u64().map(|x| x as u32)).collect();
                mat.push(row.ok_or_else(|| parse("exp entry not a nonnegative integer"))?);
            }
            let coef = t
                .get("coef")
                .and_then(|c| c.as_str())
                .ok_or_else(|| parse("missing coef"))?;
            let coef: BigRational = coef
                .parse()
                .map_err(|_| parse("coef is not a rational p/q"))?;
            terms.push((ExponentMatrix::from_rows(&mat), coef));
        }
        Ok(Self::from_terms(shape, terms))
    }
}

impl fmt::Display for MatrixPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
