//! Projective coordinates of symmetric generators, the rank test that
//! separates the degenerate degree-3 modules, isomorphism-type prediction,
//! and expansion of Hilbert polynomials in products of complete homogeneous
//! polynomials.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::closure::{polarization_module, GradedSubspace};
use crate::error::{Error, Result};
use crate::families::sym_poly;
use crate::formulas::{h3_type_series, p1_power_series, power_sum_series};
use crate::frobenius::{frobenius_series, FrobeniusSeries};
use crate::operators::{is_column_symmetric, partial, polarize};
use crate::polycore::{MatrixPolynomial, Shape};
use crate::symfunc::{complete_homogeneous, partitions_of, Basis, Partition, QPoly};

/// Monomial-basis coordinates of a symmetric generator, up to scale.
/// Coordinates are listed in the partition enumeration order for the degree
/// and canonicalized so the first nonzero coordinate is one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectivePoint {
    degree: u32,
    coords: Vec<BigRational>,
}

impl ProjectivePoint {
    pub fn new(degree: u32, coords: Vec<BigRational>) -> Result<Self> {
        let expected = partitions_of(degree).len();
        if coords.len() != expected {
            return Err(Error::SizeMismatch {
                left: coords.len(),
                right: expected,
            });
        }
        let lead = coords
            .iter()
            .find(|c| !c.is_zero())
            .cloned()
            .ok_or(Error::ZeroPoint)?;
        let coords = coords.into_iter().map(|c| c / lead.clone()).collect();
        Ok(ProjectivePoint { degree, coords })
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }
}

impl std::fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let body: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]", body.join(":"))
    }
}

/// Isomorphism type of a module generated by one symmetric polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IsoType {
    P1Power,
    PowerSum,
    H3,
    Unknown,
}

impl IsoType {
    pub fn tag(self) -> &'static str {
        match self {
            IsoType::P1Power => "P1_POWER",
            IsoType::PowerSum => "POWER_SUM",
            IsoType::H3 => "H3",
            IsoType::Unknown => "UNKNOWN",
        }
    }
}

impl std::fmt::Display for IsoType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

/// Reads off the monomial-basis coordinates of a homogeneous symmetric
/// polynomial in the first variable row. Shapes too wide for a partition
/// contribute a zero coordinate.
pub fn projective_point(f: &MatrixPolynomial) -> Result<ProjectivePoint> {
    if f.is_zero() {
        return Err(Error::ZeroPoint);
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !is_column_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    let degree = f.total_degree().expect("nonzero homogeneous");
    let n = f.shape().cols;
    let mut coords = Vec::new();
    for lambda in partitions_of(degree) {
        if lambda.len() > n {
            coords.push(BigRational::zero());
            continue;
        }
        let mut exp = crate::polycore::ExponentMatrix::zero(f.shape());
        for (j, &part) in lambda.parts().iter().enumerate() {
            exp = exp.shifted(1, j + 1, part as i64).expect("in range");
        }
        coords.push(f.coefficient(&exp));
    }
    ProjectivePoint::new(degree, coords)
}

/// The polynomial with the given monomial coordinates at n columns.
/// Partitions needing more than n columns contribute nothing, which is the
/// honest restriction of the basis element.
pub fn point_polynomial(
    degree: u32,
    coords: &[BigRational],
    n: usize,
) -> Result<MatrixPolynomial> {
    let lambdas = partitions_of(degree);
    if coords.len() != lambdas.len() {
        return Err(Error::SizeMismatch {
            left: coords.len(),
            right: lambdas.len(),
        });
    }
    let mut out = MatrixPolynomial::zero(Shape::new(1, n.max(1)));
    for (lambda, c) in lambdas.iter().zip(coords) {
        if c.is_zero() || lambda.len() > n {
            continue;
        }
        out = out.add(&sym_poly(Basis::Monomial, lambda, n)?.scale(c))?;
    }
    Ok(out)
}

/// Dimension of the span of the first-row partials together with the
/// once-polarized second derivative. Requires degree at least two.
pub fn exception_rank(f: &MatrixPolynomial) -> Result<usize> {
    let degree = f.total_degree().unwrap_or(0);
    if f.is_zero() || degree < 2 {
        return Err(Error::DegreeTooSmall { degree, min: 2 });
    }
    if !f.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    if !is_column_symmetric(f) {
        return Err(Error::NotSymmetric);
    }
    let n = f.shape().cols;
    let mut v = GradedSubspace::new(f.shape());
    for j in 1..=n {
        v.insert(&partial(f, 1, j)?)?;
    }
    v.insert(&polarize(f, 1, 1, 2)?)?;
    Ok(v.dimension())
}

/// Whether the rank of the derivative span collapses to exactly n.
pub fn is_exception(f: &MatrixPolynomial) -> Result<bool> {
    Ok(exception_rank(f)? == f.shape().cols)
}

fn parallel_to(coords: (&BigRational, &BigRational, &BigRational), v: (i64, i64, i64)) -> bool {
    let (a, b, c) = coords;
    let (x, y, z) = (
        BigRational::from_integer(v.0.into()),
        BigRational::from_integer(v.1.into()),
        BigRational::from_integer(v.2.into()),
    );
    a * &y == b * &x && a * &z == c * &x && b * &z == c * &y
}

/// The published algebraic test for degree-3 rank collapse: for n >= 3 the
/// coordinates must satisfy 6a(2b + (n-2)c) = 4(n-1)b^2 away from the cube
/// point; for n = 2 the stated rule is b = 0 or b = 3a.
pub fn exception_criterion_deg3(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    n: usize,
) -> bool {
    debug_assert!(n >= 2);
    if n == 2 {
        return b.is_zero() || *b == a * BigRational::from_integer(3.into());
    }
    if parallel_to((a, b, c), (1, 3, 6)) {
        return false;
    }
    let rat = |k: i64| BigRational::from_integer(k.into());
    let lhs = rat(6) * a * (rat(2) * b + rat(n as i64 - 2) * c);
    let rhs = rat(4) * rat(n as i64 - 1) * b * b;
    lhs == rhs
}

/// Predicted type of the module of a m_2 + b m_{1,1}: the square of the
/// linear form against everything else.
pub fn classify_degree2(a: &BigRational, b: &BigRational) -> Result<IsoType> {
    if a.is_zero() && b.is_zero() {
        return Err(Error::ZeroPoint);
    }
    if !a.is_zero() && *b == a * BigRational::from_integer(2.into()) {
        Ok(IsoType::P1Power)
    } else {
        Ok(IsoType::PowerSum)
    }
}

/// Predicted type of the module of a m_3 + b m_{2,1} + c m_{1,1,1} at n
/// columns. The first branch detects proportionality to the cubed linear
/// form as polynomials, which at n = 2 absorbs the vanishing of m_{1,1,1};
/// the middle branch is the rank test.
pub fn classify_degree3(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    n: usize,
) -> Result<IsoType> {
    let f = point_polynomial(3, &[a.clone(), b.clone(), c.clone()], n)?;
    if f.is_zero() {
        return Err(Error::ZeroPoint);
    }
    let p1_cubed = sym_poly(Basis::PowerSum, &Partition::new(vec![1]), n)?.pow(3);
    if projective_point(&f)? == projective_point(&p1_cubed)? {
        return Ok(IsoType::P1Power);
    }
    if is_exception(&f)? {
        return Ok(IsoType::PowerSum);
    }
    Ok(IsoType::H3)
}

/// The closed-form table for a predicted type at the given degree, when one
/// exists.
pub fn branch_series(iso: IsoType, degree: u32, n: u32) -> Option<FrobeniusSeries> {
    match iso {
        IsoType::P1Power => Some(p1_power_series(degree, n)),
        IsoType::PowerSum => Some(power_sum_series(degree, n)),
        IsoType::H3 => (degree == 3).then(|| h3_type_series(n)),
        IsoType::Unknown => None,
    }
}

/// Classification plus a module computation: the returned flag says whether
/// the computed table equals the predicted branch table.
pub fn classify_degree2_verified(
    a: &BigRational,
    b: &BigRational,
    n: usize,
    rows: usize,
) -> Result<(IsoType, bool)> {
    let iso = classify_degree2(a, b)?;
    let f = point_polynomial(2, &[a.clone(), b.clone()], n)?;
    let (module, _) = polarization_module(&[f], rows)?;
    let computed = frobenius_series(&module)?;
    let expected = branch_series(iso, 2, n as u32)
        .expect("degree-2 types always have tables")
        .truncate(rows);
    Ok((iso, computed == expected))
}

/// Degree-3 counterpart of the verified classification.
pub fn classify_degree3_verified(
    a: &BigRational,
    b: &BigRational,
    c: &BigRational,
    n: usize,
    rows: usize,
) -> Result<(IsoType, bool)> {
    let iso = classify_degree3(a, b, c, n)?;
    let f = point_polynomial(3, &[a.clone(), b.clone(), c.clone()], n)?;
    let (module, _) = polarization_module(&[f], rows)?;
    let computed = frobenius_series(&module)?;
    let expected = branch_series(iso, 3, n as u32)
        .expect("degree-3 types always have tables")
        .truncate(rows);
    Ok((iso, computed == expected))
}

/// Expands a symmetric polynomial in products of complete homogeneous
/// polynomials h_mu restricted to the polynomial's variable count, using
/// only mu with at most that many parts; under that restriction the
/// products stay independent and the expansion is unique. Returns the
/// coefficients and whether they are all nonnegative integers.
pub fn h_positive(p: &QPoly) -> Result<(bool, BTreeMap<Partition, BigRational>)> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let vars = p.vars();
    let mut slices: BTreeMap<u32, Vec<(Vec<u32>, BigRational)>> = BTreeMap::new();
    for (exp, c) in p.terms() {
        slices
            .entry(exp.iter().sum())
            .or_default()
            .push((exp.clone(), c.clone()));
    }
    let mut coefficients = BTreeMap::new();
    for (degree, terms) in slices {
        if degree == 0 {
            coefficients.insert(Partition::empty(), terms[0].1.clone());
            continue;
        }
        let mus: Vec<Partition> = partitions_of(degree)
            .into_iter()
            .filter(|mu| mu.len() <= vars)
            .collect();
        let m_coord = |q: &QPoly, mu: &Partition| -> BigRational {
            let mut exp = vec![0u32; vars];
            exp[..mu.len()].copy_from_slice(mu.parts());
            q.coefficient(&exp)
        };
        // Matrix of the h products in monomial-symmetric coordinates.
        let h_products: Vec<QPoly> = mus
            .iter()
            .map(|mu| {
                mu.parts()
                    .iter()
                    .fold(QPoly::one(vars), |acc, &k| {
                        acc.mul(&complete_homogeneous(k, vars))
                    })
            })
            .collect();
        let mut slice = QPoly::zero(vars);
        for (exp, c) in &terms {
            slice.add_assign_term(exp.clone(), c);
        }
        let a: Vec<Vec<BigRational>> = mus
            .iter()
            .map(|mu| h_products.iter().map(|h| m_coord(h, mu)).collect())
            .collect();
        let b: Vec<BigRational> = mus.iter().map(|mu| m_coord(&slice, mu)).collect();
        let solution = crate::symfunc::linalg::solve(a, b)
            .ok_or(Error::NonUniqueExpansion { degree })?;
        // The coordinates determine symmetric polynomials completely, so
        // matching them is matching the polynomials.
        for (mu, x) in mus.into_iter().zip(solution) {
            if !x.is_zero() {
                coefficients.insert(mu, x);
            }
        }
    }
    let positive = coefficients
        .values()
        .all(|c| c.is_integer() && !c.is_negative());
    Ok((positive, coefficients))
}
