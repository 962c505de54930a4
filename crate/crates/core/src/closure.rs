//! Graded subspaces of matrix polynomials in reduced echelon form, plus the
//! fixed-point closures under partial derivatives and polarization operators.
//!
//! Each graded component keeps a basis in fully reduced form: pivot
//! monomials are distinct, normalized to coefficient one, and eliminated
//! from every other basis row. That makes membership tests and coordinate
//! extraction single-pass and the basis canonical, so two runs that build
//! the same space produce identical data.

use std::collections::{BTreeMap, VecDeque};

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::operators::{partial, polarize, permute, Permutation};
use crate::polycore::{MatrixPolynomial, MultiDegree, Shape};
use crate::symfunc::QPoly;

/// A multidegree-graded subspace with canonical echelon bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedSubspace {
    shape: Shape,
    components: BTreeMap<MultiDegree, Vec<MatrixPolynomial>>,
}

/// Statistics from a closure run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// Worklist items processed until the fixed point.
    pub iterations: usize,
    pub dimension: usize,
    pub graded_dims: BTreeMap<MultiDegree, usize>,
}

impl GradedSubspace {
    pub fn new(shape: Shape) -> Self {
        GradedSubspace {
            shape,
            components: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn dimension(&self) -> usize {
        self.components.values().map(|rows| rows.len()).sum()
    }

    pub fn graded_dims(&self) -> BTreeMap<MultiDegree, usize> {
        self.components
            .iter()
            .map(|(d, rows)| (d.clone(), rows.len()))
            .collect()
    }

    pub fn components(&self) -> &BTreeMap<MultiDegree, Vec<MatrixPolynomial>> {
        &self.components
    }

    pub fn basis(&self, degree: &MultiDegree) -> &[MatrixPolynomial] {
        self.components.get(degree).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn max_total_degree(&self) -> Option<u32> {
        self.components.keys().map(MultiDegree::total).max()
    }

    fn check_shape(&self, f: &MatrixPolynomial) -> Result<()> {
        if f.shape() != self.shape {
            return Err(Error::ShapeMismatch {
                left: self.shape,
                right: f.shape(),
            });
        }
        Ok(())
    }

    /// Residual of f after eliminating every pivot of its component, along
    /// with the coordinates used. Requires homogeneous f.
    fn reduce_with_coords(
        &self,
        f: &MatrixPolynomial,
    ) -> (MatrixPolynomial, Vec<(usize, BigRational)>) {
        let mut g = f.clone();
        let mut coords = Vec::new();
        if g.is_zero() {
            return (g, coords);
        }
        let degree = g.multidegree().expect("reduce expects homogeneous input");
        if let Some(rows) = self.components.get(&degree) {
            for (idx, row) in rows.iter().enumerate() {
                let pivot = &row.leading().expect("rows are nonzero").0;
                let c = g.coefficient(pivot);
                if !c.is_zero() {
                    g = g.sub(&row.scale(&c)).expect("same shape");
                    coords.push((idx, c));
                }
            }
        }
        (g, coords)
    }

    /// Adds a homogeneous polynomial; true if the dimension grew.
    pub fn insert(&mut self, f: &MatrixPolynomial) -> Result<bool> {
        Ok(self.insert_reduced(f)?.is_some())
    }

    /// Like insert, but hands back the canonical new basis row.
    fn insert_reduced(&mut self, f: &MatrixPolynomial) -> Result<Option<MatrixPolynomial>> {
        self.check_shape(f)?;
        if f.is_zero() {
            return Ok(None);
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let degree = f.multidegree().expect("nonzero homogeneous");
        let (reduced, _) = self.reduce_with_coords(f);
        if reduced.is_zero() {
            return Ok(None);
        }
        let lead = reduced.leading().expect("nonzero").1.clone();
        let row = reduced.scale(&lead.recip());
        let pivot = row.leading().expect("nonzero").0.clone();
        let rows = self.components.entry(degree).or_default();
        // Clear the new pivot from the existing rows to stay fully reduced.
        for existing in rows.iter_mut() {
            let c = existing.coefficient(&pivot);
            if !c.is_zero() {
                *existing = existing.sub(&row.scale(&c)).expect("same shape");
            }
        }
        let at = rows
            .binary_search_by(|r| {
                let p = &r.leading().expect("rows are nonzero").0;
                pivot.cmp(p)
            })
            .expect_err("pivot cannot already be present");
        rows.insert(at, row.clone());
        Ok(Some(row))
    }

    /// Membership; inhomogeneous input is split into graded parts.
    pub fn contains(&self, f: &MatrixPolynomial) -> Result<bool> {
        self.check_shape(f)?;
        Ok(f.homogeneous_components()
            .values()
            .all(|part| self.reduce_with_coords(part).0.is_zero()))
    }

    /// Coordinates of a homogeneous f in the basis of its component, or
    /// None when f lies outside the space.
    pub fn coordinates(&self, f: &MatrixPolynomial) -> Result<Option<Vec<BigRational>>> {
        self.check_shape(f)?;
        if f.is_zero() {
            return Ok(Some(Vec::new()));
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let degree = f.multidegree().expect("nonzero homogeneous");
        let dim = self.basis(&degree).len();
        let (residual, sparse) = self.reduce_with_coords(f);
        if !residual.is_zero() {
            return Ok(None);
        }
        let mut coords = vec![BigRational::zero(); dim];
        for (idx, c) in sparse {
            coords[idx] = c;
        }
        Ok(Some(coords))
    }
}

/// Echelonized span of a list of homogeneous polynomials.
pub fn span(
    shape: Shape,
    polys: impl IntoIterator<Item = MatrixPolynomial>,
) -> Result<GradedSubspace> {
    let mut v = GradedSubspace::new(shape);
    for f in polys {
        v.insert(&f)?;
    }
    Ok(v)
}

/// Runs the worklist to a fixed point: every newly inserted basis row is fed
/// to `ops` and the results inserted until nothing is new. Returns processed
/// item count.
fn close_under(
    v: &mut GradedSubspace,
    ops: impl Fn(&MatrixPolynomial) -> Vec<MatrixPolynomial>,
) -> usize {
    let bound = v.max_total_degree().unwrap_or(0);
    let mut queue: VecDeque<MatrixPolynomial> = v
        .components
        .values()
        .flat_map(|rows| rows.iter().cloned())
        .collect();
    let mut iterations = 0;
    while let Some(f) = queue.pop_front() {
        iterations += 1;
        for g in ops(&f) {
            if g.is_zero() {
                continue;
            }
            // Neither operator family raises total degree.
            assert!(
                g.total_degree().unwrap_or(0) <= bound,
                "closure left the degree-bounded region"
            );
            if let Some(row) = v.insert_reduced(&g).expect("ops preserve shape and grading") {
                queue.push_back(row);
            }
        }
    }
    iterations
}

fn derivative_images(f: &MatrixPolynomial) -> Vec<MatrixPolynomial> {
    let shape = f.shape();
    let degree = match f.multidegree() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for i in 1..=shape.rows {
        if degree.0[i - 1] == 0 {
            continue;
        }
        for j in 1..=shape.cols {
            out.push(partial(f, i, j).expect("index in range"));
        }
    }
    out
}

fn polarization_images(f: &MatrixPolynomial, max_p: u32) -> Vec<MatrixPolynomial> {
    let shape = f.shape();
    let degree = match f.multidegree() {
        Some(d) => d,
        None => return Vec::new(),
    };
    let mut out = Vec::new();
    for k in 1..=shape.rows {
        let dk = degree.0[k - 1];
        for p in 1..=max_p.min(dk) {
            for i in 1..=shape.rows {
                if i == k && p == 1 {
                    continue; // Euler operator only rescales
                }
                out.push(polarize(f, i, k, p).expect("indices in range"));
            }
        }
    }
    out
}

/// Smallest superspace closed under all partial derivatives.
pub fn derivative_closure(v: &GradedSubspace) -> GradedSubspace {
    let mut out = v.clone();
    close_under(&mut out, derivative_images);
    out
}

/// Smallest superspace closed under the polarization operators of order up
/// to max_p, which must cover the maximal total degree present.
pub fn polarization_closure(v: &GradedSubspace, max_p: u32) -> Result<GradedSubspace> {
    let need = v.max_total_degree().unwrap_or(0);
    if max_p < need {
        return Err(Error::PowerTooSmall {
            max_p,
            degree: need,
        });
    }
    let mut out = v.clone();
    close_under(&mut out, |f| polarization_images(f, max_p));
    Ok(out)
}

/// The polarization module of a column-stable family of homogeneous
/// generators, computed with `rows` variable rows.
///
/// Checks stability of the family first: each generator, permuted by each
/// adjacent column transposition, must stay inside the span of the family.
pub fn polarization_module(
    family: &[MatrixPolynomial],
    rows: usize,
) -> Result<(GradedSubspace, ClosureReport)> {
    let cols = family
        .iter()
        .map(|f| f.shape().cols)
        .max()
        .unwrap_or(1);
    let shape = Shape::new(rows.max(1), cols);
    let mut embedded = Vec::with_capacity(family.len());
    for f in family {
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        embedded.push(f.embed(shape.rows)?);
    }
    let seed = span(shape, embedded.iter().cloned())?;
    for a in 1..cols {
        let swap = Permutation::transposition(cols, a, a + 1)?;
        for f in &embedded {
            let g = permute(f, &swap)?;
            if !seed.contains(&g)? {
                return Err(Error::NotStable {
                    a,
                    b: a + 1,
                    witness: f.render(),
                });
            }
        }
    }
    let max_p = seed.max_total_degree().unwrap_or(0);
    let mut module = seed;
    let iterations = close_under(&mut module, |f| {
        let mut images = derivative_images(f);
        images.extend(polarization_images(f, max_p));
        images
    });
    let report = ClosureReport {
        iterations,
        dimension: module.dimension(),
        graded_dims: module.graded_dims(),
    };
    Ok((module, report))
}

/// Dimension generating polynomial: sum over components of dim * q^degree.
pub fn hilbert_polynomial(v: &GradedSubspace) -> QPoly {
    let vars = v.shape().rows;
    let mut out = QPoly::zero(vars);
    for (d, rows) in &v.components {
        out.add_assign_term(
            d.0.clone(),
            &BigRational::from_integer((rows.len() as i64).into()),
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn sh(r: usize, c: usize) -> Shape {
        Shape::new(r, c)
    }

    fn var(s: Shape, i: usize, j: usize) -> MatrixPolynomial {
        MatrixPolynomial::var(s, i, j)
    }

    fn power_sum(shape: Shape, row: usize, d: u32) -> MatrixPolynomial {
        let mut f = MatrixPolynomial::zero(shape);
        for j in 1..=shape.cols {
            f = f.add(&var(shape, row, j).pow(d)).unwrap();
        }
        f
    }

    fn dims(v: &GradedSubspace) -> Vec<(Vec<u32>, usize)> {
        v.graded_dims()
            .into_iter()
            .map(|(d, k)| (d.0, k))
            .collect()
    }

    #[test]
    fn span_reduces_dependent_vectors() {
        let s = sh(1, 2);
        let x = var(s, 1, 1);
        let y = var(s, 1, 2);
        let v = span(
            s,
            [
                x.add(&y).unwrap(),
                x.sub(&y).unwrap(),
                x.scale(&rat(2)),
            ],
        )
        .unwrap();
        assert_eq!(v.dimension(), 2);
        assert!(v.contains(&y).unwrap());
        assert_eq!(
            v.coordinates(&x.add(&y).unwrap()).unwrap(),
            Some(vec![rat(1), rat(1)])
        );
        assert!(v
            .coordinates(&var(s, 1, 1).pow(2))
            .unwrap()
            .is_none());
    }

    #[test]
    fn insert_rejects_inhomogeneous_and_flags_growth() {
        let s = sh(1, 1);
        let x = var(s, 1, 1);
        let mut v = GradedSubspace::new(s);
        assert!(v.insert(&x).unwrap());
        assert!(!v.insert(&x.scale(&rat(5))).unwrap());
        let bad = x.add(&x.pow(2)).unwrap();
        assert_eq!(v.insert(&bad), Err(Error::NotHomogeneous));
        // Mixed-degree membership splits into graded parts.
        assert!(v.insert(&MatrixPolynomial::one(s)).unwrap());
        assert!(v.contains(&bad.sub(&x.pow(2)).unwrap().add(&MatrixPolynomial::one(s)).unwrap()).unwrap());
        assert!(!v.contains(&bad).unwrap());
    }

    #[test]
    fn echelon_basis_is_fully_reduced() {
        let s = sh(1, 3);
        let a = var(s, 1, 1).add(&var(s, 1, 2)).unwrap();
        let b = var(s, 1, 2).add(&var(s, 1, 3)).unwrap();
        let c = var(s, 1, 1).sub(&var(s, 1, 3)).unwrap();
        let v = span(s, [a, b, c]).unwrap();
        assert_eq!(v.dimension(), 2);
        let rows = v.basis(&MultiDegree(vec![1]));
        // Each pivot appears in exactly one row, normalized to one.
        for (k, row) in rows.iter().enumerate() {
            let (pivot, lead) = row.leading().unwrap();
            assert_eq!(lead, &rat(1));
            for (other_k, other) in rows.iter().enumerate() {
                if other_k != k {
                    assert_eq!(other.coefficient(pivot), rat(0));
                }
            }
        }
    }

    #[test]
    fn derivative_closure_of_a_single_power() {
        let s = sh(1, 1);
        let v = span(s, [var(s, 1, 1).pow(2)]).unwrap();
        let d = derivative_closure(&v);
        assert_eq!(dims(&d), vec![(vec![0], 1), (vec![1], 1), (vec![2], 1)]);
    }

    #[test]
    fn derivative_closure_of_a_squarefree_quadratic() {
        let s = sh(1, 2);
        let f = var(s, 1, 1).multiply(&var(s, 1, 2)).unwrap();
        let d = derivative_closure(&span(s, [f]).unwrap());
        assert_eq!(d.dimension(), 4);
        assert_eq!(
            dims(&d),
            vec![(vec![0], 1), (vec![1], 2), (vec![2], 1)]
        );
    }

    #[test]
    fn polarization_closure_spreads_across_rows_without_constants() {
        let s = sh(2, 1);
        let v = span(s, [var(s, 1, 1)]).unwrap();
        let e = polarization_closure(&v, 1).unwrap();
        assert_eq!(
            dims(&e),
            vec![(vec![0, 1], 1), (vec![1, 0], 1)]
        );
        assert!(matches!(
            polarization_closure(&v, 0),
            Err(Error::PowerTooSmall { .. })
        ));
    }

    #[test]
    fn polarization_closure_of_a_power_sum_matches_naive_fixed_point() {
        let s = sh(2, 2);
        let p2 = power_sum(s, 1, 2);
        let v = span(s, [p2.clone()]).unwrap();
        let e = polarization_closure(&v, 2).unwrap();
        // Hand-checkable members.
        let mixed = var(s, 1, 1)
            .multiply(&var(s, 2, 1))
            .unwrap()
            .add(&var(s, 1, 2).multiply(&var(s, 2, 2)).unwrap())
            .unwrap();
        assert!(e.contains(&mixed).unwrap());
        assert!(e.contains(&power_sum(s, 2, 2)).unwrap());
        assert!(e.contains(&power_sum(s, 1, 1)).unwrap());
        assert!(e.contains(&power_sum(s, 2, 1)).unwrap());
        // Independent naive closure: apply every operator to every basis
        // vector each round until the dimension stabilizes.
        let mut space = vec![p2];
        loop {
            let before = span(s, space.iter().cloned()).unwrap().dimension();
            let mut next = space.clone();
            for f in &space {
                for i in 1..=2 {
                    for k in 1..=2 {
                        for p in 1..=2 {
                            next.push(polarize(f, i, k, p).unwrap());
                        }
                    }
                }
            }
            let after = span(s, next.iter().cloned()).unwrap().dimension();
            space = next;
            if after == before {
                break;
            }
        }
        let naive = span(s, space.into_iter()).unwrap();
        assert_eq!(e, naive);
    }

    #[test]
    fn module_of_first_power_sum() {
        let s = sh(1, 2);
        let p1 = power_sum(s, 1, 1);
        let (m, report) = polarization_module(&[p1], 2).unwrap();
        assert_eq!(m.dimension(), 3);
        assert_eq!(
            dims(&m),
            vec![(vec![0, 0], 1), (vec![0, 1], 1), (vec![1, 0], 1)]
        );
        assert_eq!(report.dimension, 3);
        assert_eq!(report.graded_dims.len(), 3);
        assert!(report.iterations >= 3);
        assert_eq!(hilbert_polynomial(&m).render("q"), "1 + q_1 + q_2");
    }

    #[test]
    fn module_of_the_two_point_vandermonde() {
        let s = sh(1, 2);
        let delta = var(s, 1, 1).sub(&var(s, 1, 2)).unwrap();
        let family = crate::operators::orbit(&delta);
        let (m1, _) = polarization_module(&family, 1).unwrap();
        assert_eq!(m1.dimension(), 2);
        let (m2, _) = polarization_module(&family, 2).unwrap();
        assert_eq!(m2.dimension(), 3);
    }

    #[test]
    fn module_of_the_quadratic_power_sum_at_one_row() {
        let s = sh(1, 2);
        let p2 = power_sum(s, 1, 2);
        let (m, _) = polarization_module(&[p2], 1).unwrap();
        assert_eq!(
            dims(&m),
            vec![(vec![0], 1), (vec![1], 2), (vec![2], 1)]
        );
        assert_eq!(hilbert_polynomial(&m).render("q"), "1 + 2q + q^2");
    }

    #[test]
    fn unstable_family_is_rejected_with_a_witness() {
        let s = sh(1, 2);
        let err = polarization_module(&[var(s, 1, 1)], 1).unwrap_err();
        match err {
            Error::NotStable { a, b, .. } => {
                assert_eq!((a, b), (1, 2));
            }
            other => panic!("expected stability error, got {other:?}"),
        }
    }

    #[test]
    fn empty_and_zero_families_give_the_zero_module() {
        let s = sh(1, 2);
        let (m, report) = polarization_module(&[], 2).unwrap();
        assert_eq!(m.dimension(), 0);
        assert_eq!(report.iterations, 0);
        let (mz, _) = polarization_module(&[MatrixPolynomial::zero(s)], 2).unwrap();
        assert_eq!(mz.dimension(), 0);
    }

    #[test]
    fn closures_commute() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for _ in 0..50 {
            let shape = sh(2, 2);
            let rowdeg = [rng.gen_range(0..=2), rng.gen_range(0..=2)];
            let nterms = rng.gen_range(1..=3);
            let mut terms = Vec::new();
            for _ in 0..nterms {
                let mut e = crate::polycore::ExponentMatrix::zero(shape);
                for (i, &d) in rowdeg.iter().enumerate() {
                    for _ in 0..d {
                        let j = rng.gen_range(1..=2);
                        e = e.shifted(i + 1, j, 1).unwrap();
                    }
                }
                terms.push((e, rat(rng.gen_range(-2..=2))));
            }
            let f = MatrixPolynomial::from_terms(shape, terms);
            if f.is_zero() {
                continue;
            }
            let v = span(shape, [f]).unwrap();
            let max_p = v.max_total_degree().unwrap_or(0);
            let de = derivative_closure(&polarization_closure(&v, max_p).unwrap());
            let ed = polarization_closure(&derivative_closure(&v), max_p).unwrap();
            assert_eq!(de, ed);
        }
    }

    #[test]
    fn module_is_stable_and_deterministic() {
        let s = sh(1, 3);
        let p2 = power_sum(s, 1, 2);
        let (m, _) = polarization_module(&[p2.clone()], 2).unwrap();
        let (m2, _) = polarization_module(&[p2], 2).unwrap();
        assert_eq!(m, m2);
        for sigma in Permutation::all(3) {
            for rows in m.components().values() {
                for row in rows {
                    assert!(m.contains(&permute(row, &sigma).unwrap()).unwrap());
                }
            }
        }
    }

    #[test]
    fn module_is_closed_under_row_substitutions() {
        let s = sh(1, 2);
        let p2 = power_sum(s, 1, 2);
        let (m, _) = polarization_module(&[p2], 2).unwrap();
        let mats = [
            vec![vec![rat(1), rat(2)], vec![rat(0), rat(1)]],
            vec![vec![rat(3), rat(0)], vec![rat(1), rat(1)]],
            vec![vec![rat(2), rat(-1)], vec![rat(1), rat(1)]],
        ];
        for mat in &mats {
            for rows in m.components().values() {
                for row in rows {
                    let image = crate::operators::matrix_substitute(row, mat).unwrap();
                    assert!(m.contains(&image).unwrap());
                }
            }
        }
    }

    #[test]
    fn embedding_guard() {
        let s = sh(2, 2);
        let f = var(s, 2, 1).add(&var(s, 2, 2)).unwrap();
        assert!(matches!(
            polarization_module(&[f], 1),
            Err(Error::EmbedShrink { .. })
        ));
    }
}
