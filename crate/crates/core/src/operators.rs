//! The column action of the symmetric group, partial derivatives, and the
//! generalized polarization operators E[i,k;p] = sum_j x[i,j] d^p/dx[k,j]^p.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::polycore::{MatrixPolynomial, Shape};

/// A permutation of columns 1..=n, stored as its image vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation {
            images: (1..=n).collect(),
        }
    }

    /// The transposition (a b); 1-based, a != b.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        if a < 1 || a > n {
            return Err(Error::IndexOutOfRange {
                axis: "column",
                index: a,
                bound: n,
            });
        }
        if b < 1 || b > n || a == b {
            return Err(Error::IndexOutOfRange {
                axis: "column",
                index: b,
                bound: n,
            });
        }
        let mut images: Vec<usize> = (1..=n).collect();
        images.swap(a - 1, b - 1);
        Ok(Permutation { images })
    }

    /// Validates that `images` is a bijection on 1..=n.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v < 1 || v > n || seen[v - 1] {
                return Err(Error::NotBijection);
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    /// Canonical representative of a cycle type: cycles laid out left to
    /// right over consecutive points.
    pub fn with_cycle_type(parts: &[u32]) -> Self {
        let n: u32 = parts.iter().sum();
        let mut images = vec![0usize; n as usize];
        let mut start = 1usize;
        for &len in parts {
            let len = len as usize;
            for off in 0..len {
                images[start + off - 1] = start + (off + 1) % len;
            }
            start += len;
        }
        Permutation { images }
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// sigma(j), 1-based.
    pub fn image(&self, j: usize) -> usize {
        self.images[j - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// (self . other)(j) = self(other(j)).
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j - 1]).collect(),
        })
    }

    pub fn inverse(&self) -> Self {
        let mut images = vec![0; self.n()];
        for (j, &v) in self.images.iter().enumerate() {
            images[v - 1] = j + 1;
        }
        Permutation { images }
    }

    /// Cycle lengths, sorted descending.
    pub fn cycle_type(&self) -> Vec<u32> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut len = 0u32;
            let mut j = start;
            while !seen[j] {
                seen[j] = true;
                len += 1;
                j = self.images[j] - 1;
            }
            lens.push(len);
        }
        lens.sort_unstable_by(|a, b| b.cmp(a));
        lens
    }

    /// All n! permutations, in lexicographic order of image vectors.
    pub fn all(n: usize) -> Vec<Permutation> {
        (1..=n)
            .permutations(n)
            .map(|images| Permutation { images })
            .collect()
    }
}

fn check_row(shape: Shape, i: usize) -> Result<()> {
    if i < 1 || i > shape.rows {
        return Err(Error::IndexOutOfRange {
            axis: "row",
            index: i,
            bound: shape.rows,
        });
    }
    Ok(())
}

fn check_col(shape: Shape, j: usize) -> Result<()> {
    if j < 1 || j > shape.cols {
        return Err(Error::IndexOutOfRange {
            axis: "column",
            index: j,
            bound: shape.cols,
        });
    }
    Ok(())
}

/// Partial derivative with respect to x[i,j].
pub fn partial(f: &MatrixPolynomial, i: usize, j: usize) -> Result<MatrixPolynomial> {
    partial_power(f, i, j, 1)
}

/// p-th partial derivative with respect to x[i,j].
pub fn partial_power(f: &MatrixPolynomial, i: usize, j: usize, p: u32) -> Result<MatrixPolynomial> {
    check_row(f.shape(), i)?;
    check_col(f.shape(), j)?;
    let mut terms = Vec::new();
    for (e, c) in f.terms() {
        let a = e.get(i, j);
        if a < p {
            continue;
        }
        // Falling factorial a (a-1) ... (a-p+1).
        let mut k = BigRational::from_integer(1.into());
        for t in 0..p {
            k *= BigRational::from_integer((a - t).into());
        }
        terms.push((e.shifted(i, j, -i64::from(p)).unwrap(), c * k));
    }
    Ok(MatrixPolynomial::from_terms(f.shape(), terms))
}

/// E[i,k;p] f = sum_j x[i,j] (d^p/dx[k,j]^p) f. Raises row-i degree by one
/// and lowers row-k degree by p.
pub fn polarize(f: &MatrixPolynomial, i: usize, k: usize, p: u32) -> Result<MatrixPolynomial> {
    check_row(f.shape(), i)?;
    check_row(f.shape(), k)?;
    if p == 0 {
        return Err(Error::DegreeTooSmall { degree: 0, min: 1 });
    }
    let mut out = MatrixPolynomial::zero(f.shape());
    for j in 1..=f.shape().cols {
        let d = partial_power(f, k, j, p)?;
        if d.is_zero() {
            continue;
        }
        let xd = d.multiply(&MatrixPolynomial::var(f.shape(), i, j))?;
        out = out.add(&xd)?;
    }
    Ok(out)
}

/// Relabels columns: x[i,j] becomes x[i, sigma(j)].
pub fn permute(f: &MatrixPolynomial, sigma: &Permutation) -> Result<MatrixPolynomial> {
    if sigma.n() != f.shape().cols {
        return Err(Error::PermutationSize {
            len: sigma.n(),
            cols: f.shape().cols,
        });
    }
    let terms: Vec<_> = f
        .terms()
        .iter()
        .map(|(e, c)| (e.col_permuted(sigma.images()), c.clone()))
        .collect();
    Ok(MatrixPolynomial::from_terms(f.shape(), terms))
}

/// Whether f is invariant under every column exchange. Adjacent
/// transpositions generate the full permutation action, so they suffice.
pub fn is_column_symmetric(f: &MatrixPolynomial) -> bool {
    let n = f.shape().cols;
    (1..n).all(|a| {
        let swap = Permutation::transposition(n, a, a + 1).expect("indices in range");
        permute(f, &swap).expect("matching column count") == *f
    })
}

/// The set of distinct column permutations of f, sorted canonically.
pub fn orbit(f: &MatrixPolynomial) -> Vec<MatrixPolynomial> {
    let n = f.shape().cols;
    let mut seen: BTreeSet<MatrixPolynomial> = BTreeSet::new();
    for sigma in Permutation::all(n) {
        seen.insert(permute(f, &sigma).expect("matching column count"));
    }
    seen.into_iter().collect()
}

/// Row substitution x[i,j] -> sum_k m[i][k] x[k,j]; `m` must be rows x rows.
pub fn matrix_substitute(f: &MatrixPolynomial, m: &[Vec<BigRational>]) -> Result<MatrixPolynomial> {
    let l = f.shape().rows;
    if m.len() != l || m.iter().any(|row| row.len() != l) {
        return Err(Error::SizeMismatch {
            left: m.len(),
            right: l,
        });
    }
    let shape = f.shape();
    // Image of each variable under the substitution.
    let mut images = vec![Vec::with_capacity(shape.cols); l];
    for (i, row) in m.iter().enumerate() {
        for j in 1..=shape.cols {
            let mut v = MatrixPolynomial::zero(shape);
            for (k, c) in row.iter().enumerate() {
                if !c.is_zero() {
                    v = v.add(&MatrixPolynomial::var(shape, k + 1, j).scale(c))?;
                }
            }
            images[i].push(v);
        }
    }
    let mut out = MatrixPolynomial::zero(shape);
    for (e, c) in f.terms() {
        let mut term = MatrixPolynomial::constant(shape, c.clone());
        for i in 1..=l {
            for j in 1..=shape.cols {
                let a = e.get(i, j);
                if a > 0 {
                    term = term.multiply(&images[i - 1][j - 1].pow(a))?;
                }
            }
        }
        out = out.add(&term)?;
    }
    Ok(out)
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

    fn power_sum(shape: Shape, row: usize, d: u32) -> MatrixPolynomial {
        let mut f = MatrixPolynomial::zero(shape);
        for j in 1..=shape.cols {
            f = f.add(&MatrixPolynomial::var(shape, row, j).pow(d)).unwrap();
        }
        f
    }

    fn random_poly(rng: &mut ChaCha8Rng, shape: Shape, max_deg: u32) -> MatrixPolynomial {
        let nterms = rng.gen_range(1..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let mut e = crate::polycore::ExponentMatrix::zero(shape);
            let deg = rng.gen_range(0..=max_deg);
            for _ in 0..deg {
                let i = rng.gen_range(1..=shape.rows);
                let j = rng.gen_range(1..=shape.cols);
                e = e.shifted(i, j, 1).unwrap();
            }
            terms.push((e, rat(rng.gen_range(-3..=3))));
        }
        MatrixPolynomial::from_terms(shape, terms)
    }

    /// Random nonzero polynomial of one fixed multidegree.
    fn random_homogeneous(rng: &mut ChaCha8Rng, shape: Shape, rowdeg: &[u32]) -> MatrixPolynomial {
        assert_eq!(rowdeg.len(), shape.rows);
        let nterms = rng.gen_range(1..=4);
        let mut terms = Vec::new();
        for _ in 0..nterms {
            let mut e = crate::polycore::ExponentMatrix::zero(shape);
            for (i, &d) in rowdeg.iter().enumerate() {
                for _ in 0..d {
                    let j = rng.gen_range(1..=shape.cols);
                    e = e.shifted(i + 1, j, 1).unwrap();
                }
            }
            terms.push((e, rat(rng.gen_range(1..=3))));
        }
        MatrixPolynomial::from_terms(shape, terms)
    }

    #[test]
    fn partial_power_rule() {
        let s = sh(1, 2);
        let x = MatrixPolynomial::var(s, 1, 1);
        let y = MatrixPolynomial::var(s, 1, 2);
        let f = x.pow(3).add(&x.multiply(&y).unwrap()).unwrap();
        let d = partial(&f, 1, 1).unwrap();
        assert_eq!(d, x.pow(2).scale(&rat(3)).add(&y).unwrap());
    }

    #[test]
    fn partial_annihilates_foreign_rows() {
        let s = sh(2, 2);
        let f = MatrixPolynomial::var(s, 1, 1).pow(2);
        assert!(partial(&f, 2, 1).unwrap().is_zero());
        assert!(matches!(
            partial(&f, 3, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn polarize_moves_degree_between_rows() {
        let s = sh(2, 2);
        let f = MatrixPolynomial::var(s, 1, 1).pow(2);
        let e = polarize(&f, 2, 1, 1).unwrap();
        let expect = MatrixPolynomial::var(s, 1, 1)
            .multiply(&MatrixPolynomial::var(s, 2, 1))
            .unwrap()
            .scale(&rat(2));
        assert_eq!(e, expect);
        assert_eq!(
            e.multidegree().unwrap(),
            crate::polycore::MultiDegree(vec![1, 1])
        );
    }

    #[test]
    fn second_order_polarization_of_cubic_power_sum() {
        let s = sh(1, 3);
        let p3 = power_sum(s, 1, 3);
        let e = polarize(&p3, 1, 1, 2).unwrap();
        assert_eq!(e, power_sum(s, 1, 2).scale(&rat(6)));
        assert!(matches!(
            polarize(&p3, 1, 1, 0),
            Err(Error::DegreeTooSmall { .. })
        ));
    }

    #[test]
    fn euler_identity_on_random_homogeneous_inputs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..100 {
            let shape = sh(rng.gen_range(1..=2), rng.gen_range(1..=3));
            let rowdeg: Vec<u32> = (0..shape.rows).map(|_| rng.gen_range(0..=3)).collect();
            let f = random_homogeneous(&mut rng, shape, &rowdeg);
            for (i, &di) in rowdeg.iter().enumerate() {
                let lhs = polarize(&f, i + 1, i + 1, 1).unwrap();
                assert_eq!(lhs, f.scale(&rat(i64::from(di))));
            }
        }
    }

    #[test]
    fn permute_relabels_columns() {
        let s = sh(1, 2);
        let x = MatrixPolynomial::var(s, 1, 1);
        let y = MatrixPolynomial::var(s, 1, 2);
        let f = x.pow(2).multiply(&y).unwrap();
        let swap = Permutation::transposition(2, 1, 2).unwrap();
        assert_eq!(permute(&f, &swap).unwrap(), y.pow(2).multiply(&x).unwrap());
        let sym = x.add(&y).unwrap();
        assert_eq!(permute(&sym, &swap).unwrap(), sym);
        assert!(matches!(
            permute(&f, &Permutation::identity(3)),
            Err(Error::PermutationSize { .. })
        ));
    }

    #[test]
    fn permutation_structure() {
        let sigma = Permutation::from_images(vec![2, 3, 1, 5, 4]).unwrap();
        assert_eq!(sigma.cycle_type(), vec![3, 2]);
        assert_eq!(Permutation::with_cycle_type(&[3, 2]), sigma);
        assert_eq!(
            sigma.compose(&sigma.inverse()).unwrap(),
            Permutation::identity(5)
        );
        assert!(Permutation::from_images(vec![1, 1, 3]).is_err());
        assert_eq!(Permutation::all(4).len(), 24);
    }

    #[test]
    fn equivariance_of_partial_under_the_column_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let shape = sh(rng.gen_range(1..=2), rng.gen_range(2..=3));
            let f = random_poly(&mut rng, shape, 3);
            let perms = Permutation::all(shape.cols);
            let sigma = &perms[rng.gen_range(0..perms.len())];
            let i = rng.gen_range(1..=shape.rows);
            let j = rng.gen_range(1..=shape.cols);
            let lhs = permute(&partial(&f, i, j).unwrap(), sigma).unwrap();
            let rhs = partial(&permute(&f, sigma).unwrap(), i, sigma.image(j)).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn polarization_commutes_with_the_column_action() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for _ in 0..50 {
            let shape = sh(2, rng.gen_range(2..=3));
            let f = random_poly(&mut rng, shape, 3);
            let perms = Permutation::all(shape.cols);
            let sigma = &perms[rng.gen_range(0..perms.len())];
            let (i, k, p) = (
                rng.gen_range(1..=2),
                rng.gen_range(1..=2),
                rng.gen_range(1..=2),
            );
            let lhs = permute(&polarize(&f, i, k, p).unwrap(), sigma).unwrap();
            let rhs = polarize(&permute(&f, sigma).unwrap(), i, k, p).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn orbit_of_a_single_variable_power() {
        let s = sh(1, 2);
        let o = orbit(&MatrixPolynomial::var(s, 1, 1).pow(2));
        assert_eq!(
            o,
            vec![
                MatrixPolynomial::var(s, 1, 2).pow(2),
                MatrixPolynomial::var(s, 1, 1).pow(2),
            ]
        );
        let delta = MatrixPolynomial::var(s, 1, 1)
            .sub(&MatrixPolynomial::var(s, 1, 2))
            .unwrap();
        assert_eq!(orbit(&delta).len(), 2);
        let sym = power_sum(s, 1, 3);
        assert_eq!(orbit(&sym), vec![sym.clone()]);
    }

    #[test]
    fn orbit_size_divides_group_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..25 {
            let n = rng.gen_range(2..=3);
            let f = random_poly(&mut rng, sh(1, n), 2);
            let size = orbit(&f).len();
            let fact: usize = (1..=n).product();
            assert_eq!(fact % size, 0, "orbit size {size} must divide {fact}");
        }
    }

    #[test]
    fn substitution_by_identity_and_row_swap() {
        let s = sh(2, 2);
        let f = MatrixPolynomial::var(s, 1, 1)
            .pow(2)
            .add(&MatrixPolynomial::var(s, 2, 2))
            .unwrap();
        let id = vec![
            vec![rat(1), rat(0)],
            vec![rat(0), rat(1)],
        ];
        assert_eq!(matrix_substitute(&f, &id).unwrap(), f);
        let swap = vec![
            vec![rat(0), rat(1)],
            vec![rat(1), rat(0)],
        ];
        let g = matrix_substitute(&f, &swap).unwrap();
        let expect = MatrixPolynomial::var(s, 2, 1)
            .pow(2)
            .add(&MatrixPolynomial::var(s, 1, 2))
            .unwrap();
        assert_eq!(g, expect);
        assert!(matrix_substitute(&f, &[vec![rat(1)]]).is_err());
    }

    #[test]
    fn substitution_composes_as_a_right_action() {
        // Substituting by M and then by N equals substituting by M*N:
        // each step rewrites x[i,j] as sum_k m[i][k] x[k,j].
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for _ in 0..50 {
            let l = rng.gen_range(1..=2);
            let shape = sh(l, 2);
            let f = random_poly(&mut rng, shape, 2);
            let rand_mat = |rng: &mut ChaCha8Rng| -> Vec<Vec<BigRational>> {
                (0..l)
                    .map(|_| (0..l).map(|_| rat(rng.gen_range(-2..=2))).collect())
                    .collect()
            };
            let m = rand_mat(&mut rng);
            let n = rand_mat(&mut rng);
            let two_step = matrix_substitute(&matrix_substitute(&f, &m).unwrap(), &n).unwrap();
            let mut mn = vec![vec![BigRational::zero(); l]; l];
            #[allow(clippy::needless_range_loop)]
            for i in 0..l {
                for j in 0..l {
                    for k in 0..l {
                        mn[i][j] += &m[i][k] * &n[k][j];
                    }
                }
            }
            let one_step = matrix_substitute(&f, &mn).unwrap();
            assert_eq!(two_step, one_step);
        }
    }

    #[test]
    fn polarization_degree_bookkeeping() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let shape = sh(2, 2);
            let rowdeg: Vec<u32> = (0..2).map(|_| rng.gen_range(0..=3)).collect();
            let f = random_homogeneous(&mut rng, shape, &rowdeg);
            let p = rng.gen_range(1..=3);
            let (i, k) = (rng.gen_range(1..=2), rng.gen_range(1..=2));
            let g = polarize(&f, i, k, p).unwrap();
            if g.is_zero() {
                continue;
            }
            let mut d = rowdeg.clone();
            d[i - 1] += 1;
            d[k - 1] -= p;
            assert_eq!(g.multidegree().unwrap().0, d);
        }
    }
}
