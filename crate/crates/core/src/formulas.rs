//! Closed-form multiplicity tables for the classified generators.
//!
//! Each builder returns the exact table for one named generator or family,
//! valid for every row count: the q side lists mu with its multiplicity, the
//! w side is a partition of n. Groups whose w-side partition degenerates
//! (first part smaller than the second) vanish and are skipped, which is
//! what the corresponding modules do at small n.

use crate::frobenius::FrobeniusSeries;
use crate::symfunc::Partition;

/// Accumulates (lambda, mu, mult) triples, dropping invalid lambda.
struct TableBuilder {
    n: u32,
    entries: Vec<((Partition, Partition), u64)>,
}

impl TableBuilder {
    fn new(n: u32) -> Self {
        TableBuilder {
            n,
            entries: Vec::new(),
        }
    }

    /// Adds mu |-> mult against the w-side partition made of `parts`.
    /// A non-monotone parts list means the group is absent at this n.
    fn group(&mut self, parts: &[i64], entries: &[(&[u32], u64)]) -> &mut Self {
        if parts.iter().any(|&p| p < 0) {
            return self;
        }
        let parts: Vec<u32> = parts
            .iter()
            .map(|&p| p as u32)
            .filter(|&p| p > 0)
            .collect();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return self;
        }
        debug_assert_eq!(parts.iter().sum::<u32>(), self.n);
        let lambda = Partition::new(parts);
        for (mu, mult) in entries {
            if *mult == 0 {
                continue;
            }
            self.entries
                .push(((lambda.clone(), Partition::new(mu.to_vec())), *mult));
        }
        self
    }

    fn build(self) -> FrobeniusSeries {
        FrobeniusSeries::new(self.n, self.entries)
    }
}

/// Single-row q-side run: (j) for lo <= j <= hi, each with multiplicity 1,
/// including the empty partition when lo == 0.
fn run(lo: u32, hi: u32) -> Vec<(Vec<u32>, u64)> {
    (lo..=hi)
        .map(|j| {
            if j == 0 {
                (Vec::new(), 1)
            } else {
                (vec![j], 1)
            }
        })
        .collect()
}

fn borrow(entries: &[(Vec<u32>, u64)]) -> Vec<(&[u32], u64)> {
    entries.iter().map(|(mu, b)| (mu.as_slice(), *b)).collect()
}

/// Table of the module generated by the d-th power of x_11 + ... + x_1n:
/// one trivial w-group carrying every single-row mu up to size d.
pub fn p1_power_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    let qs = run(0, d);
    t.group(&[n as i64], &borrow(&qs));
    t.build()
}

/// Table of the module generated by the degree-d power sum.
pub fn power_sum_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    let top = run(0, d);
    t.group(&[n as i64], &borrow(&top));
    if d >= 2 {
        let hook = run(1, d - 1);
        t.group(&[n as i64 - 1, 1], &borrow(&hook));
    }
    t.build()
}

/// Table of the module generated by the degree-d elementary symmetric
/// polynomial, for d <= n.
pub fn elementary_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    for i in 0..=d / 2 {
        let qs = run(i, d - i);
        t.group(&[n as i64 - i as i64, i as i64], &borrow(&qs));
    }
    t.build()
}

/// Table shared by every non-degenerate degree-3 generator: like the cubic
/// power sum's table but with the size-2 single-row multiplicity doubled.
pub fn h3_type_series(n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    t.group(
        &[n as i64],
        &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 1)],
    );
    t.group(&[n as i64 - 1, 1], &[(&[1], 1), (&[2], 1)]);
    t.build()
}

/// Conjectured table for the monomial symmetric generator of shape
/// (2, 1^{d-2}), d >= 3, n >= d.
pub fn hook_monomial_series(d: u32, n: u32) -> FrobeniusSeries {
    let h = d / 2;
    let mut t = TableBuilder::new(n);
    let mut top = vec![(Vec::new(), 1), (vec![1], 1)];
    for j in 2..d {
        top.push((vec![j], 2));
    }
    top.push((vec![d], 1));
    t.group(&[n as i64], &borrow(&top));
    for i in 1..h {
        let mut qs = vec![(vec![i], 1)];
        for j in i + 1..=d - i - 1 {
            qs.push((vec![j], 2));
        }
        qs.push((vec![d - i], 1));
        t.group(&[n as i64 - i as i64, i as i64], &borrow(&qs));
    }
    let last = run(h, d - h);
    t.group(&[n as i64 - h as i64, h as i64], &borrow(&last));
    t.build()
}

/// Conjectured table for the family of d-th powers of single variables.
pub fn family_powers_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    let top = run(0, d);
    t.group(&[n as i64], &borrow(&top));
    let hook = run(1, d);
    t.group(&[n as i64 - 1, 1], &borrow(&hook));
    t.build()
}

/// Conjectured table for the family of differences of d-th powers.
pub fn family_differences_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    let top = run(0, d - 1);
    t.group(&[n as i64], &borrow(&top));
    let hook = run(1, d);
    t.group(&[n as i64 - 1, 1], &borrow(&hook));
    t.build()
}

/// Conjectured table for the family of squarefree degree-d products.
pub fn family_products_series(d: u32, n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    let top = run(0, d);
    t.group(&[n as i64], &borrow(&top));
    for i in 1..=d / 2 {
        let qs = run(i, d - i + 1);
        t.group(&[n as i64 - i as i64, i as i64], &borrow(&qs));
    }
    t.build()
}

/// Conjectured table for the family of all quadratic monomials, which
/// changes shape with n before stabilizing at n = 4.
pub fn degree2_monomials_series(n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    match n {
        0 => {}
        1 => {
            t.group(&[1], &[(&[], 1), (&[1], 1), (&[2], 1)]);
        }
        2 => {
            t.group(&[2], &[(&[], 1), (&[1], 1), (&[2], 2)]);
            t.group(&[1, 1], &[(&[1], 1), (&[2], 1)]);
        }
        3 => {
            t.group(&[3], &[(&[], 1), (&[1], 1), (&[2], 2)]);
            t.group(&[2, 1], &[(&[1], 1), (&[2], 2)]);
        }
        _ => {
            t.group(&[n as i64], &[(&[], 1), (&[1], 1), (&[2], 2)]);
            t.group(&[n as i64 - 1, 1], &[(&[1], 1), (&[2], 2)]);
            t.group(&[n as i64 - 2, 2], &[(&[2], 1)]);
        }
    }
    t.build()
}

/// Conjectured table for the family of all cubic monomials, stated row by
/// row for n <= 5 and generically from n = 6 on.
pub fn degree3_monomials_series(n: u32) -> FrobeniusSeries {
    let mut t = TableBuilder::new(n);
    match n {
        0 => {}
        1 => {
            t.group(&[1], &[(&[], 1), (&[1], 1), (&[2], 1), (&[3], 1)]);
        }
        2 => {
            t.group(&[2], &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 2)]);
            t.group(&[1, 1], &[(&[1], 1), (&[2], 1), (&[1, 1], 1), (&[3], 2)]);
        }
        3 => {
            t.group(&[3], &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 3)]);
            t.group(
                &[2, 1],
                &[(&[1], 1), (&[2], 2), (&[1, 1], 1), (&[3], 3)],
            );
            t.group(&[1, 1, 1], &[(&[1, 1], 1), (&[3], 1)]);
        }
        4 => {
            t.group(&[4], &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 3)]);
            t.group(
                &[3, 1],
                &[(&[1], 1), (&[2], 2), (&[1, 1], 1), (&[3], 4)],
            );
            t.group(&[2, 2], &[(&[2], 1), (&[3], 1)]);
            t.group(&[2, 1, 1], &[(&[1, 1], 1), (&[3], 1)]);
        }
        5 => {
            t.group(&[5], &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 3)]);
            t.group(
                &[4, 1],
                &[(&[1], 1), (&[2], 2), (&[1, 1], 1), (&[3], 4)],
            );
            t.group(&[3, 2], &[(&[2], 1), (&[3], 2)]);
            t.group(&[3, 1, 1], &[(&[1, 1], 1), (&[3], 1)]);
        }
        _ => {
            let n = n as i64;
            t.group(&[n], &[(&[], 1), (&[1], 1), (&[2], 2), (&[3], 3)]);
            t.group(
                &[n - 1, 1],
                &[(&[1], 1), (&[2], 2), (&[1, 1], 1), (&[3], 4)],
            );
            t.group(&[n - 2, 2], &[(&[2], 1), (&[3], 2)]);
            t.group(&[n - 2, 1, 1], &[(&[1, 1], 1), (&[3], 1)]);
            t.group(&[n - 3, 3], &[(&[3], 1)]);
        }
    }
    t.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::polarization_module;
    use crate::frobenius::frobenius_series;
    use crate::polycore::{MatrixPolynomial, Shape};

    fn power_sum_poly(n: usize, d: u32) -> MatrixPolynomial {
        let s = Shape::new(1, n);
        let mut f = MatrixPolynomial::zero(s);
        for j in 1..=n {
            f = f.add(&MatrixPolynomial::var(s, 1, j).pow(d)).unwrap();
        }
        f
    }

    fn elementary_poly(n: usize, d: usize) -> MatrixPolynomial {
        use itertools::Itertools;
        let s = Shape::new(1, n);
        let mut f = MatrixPolynomial::zero(s);
        for subset in (1..=n).combinations(d) {
            let mut m = MatrixPolynomial::one(s);
            for j in subset {
                m = m.multiply(&MatrixPolynomial::var(s, 1, j)).unwrap();
            }
            f = f.add(&m).unwrap();
        }
        f
    }

    #[test]
    fn closed_forms_match_computed_modules() {
        for n in 2..=3u32 {
            for d in 1..=3u32 {
                let p1d = power_sum_poly(n as usize, 1).pow(d);
                let (m, _) = polarization_module(&[p1d], 2).unwrap();
                assert_eq!(frobenius_series(&m).unwrap(), p1_power_series(d, n));

                let pd = power_sum_poly(n as usize, d);
                let (m, _) = polarization_module(&[pd], 2).unwrap();
                assert_eq!(frobenius_series(&m).unwrap(), power_sum_series(d, n));

                if d <= n {
                    let ed = elementary_poly(n as usize, d as usize);
                    let (m, _) = polarization_module(&[ed], 2).unwrap();
                    assert_eq!(frobenius_series(&m).unwrap(), elementary_series(d, n));
                }
            }
        }
    }

    #[test]
    fn power_sum_and_linear_power_collapse_at_one_column() {
        assert_eq!(power_sum_series(3, 1), p1_power_series(3, 1));
    }

    #[test]
    fn hook_monomial_at_degree_three_is_the_generic_type() {
        for n in 3..=6 {
            assert_eq!(hook_monomial_series(3, n), h3_type_series(n));
        }
    }

    #[test]
    fn elementary_table_shares_hook_groups_with_the_power_sum() {
        // Degree two: both tables agree everywhere.
        for n in 2..=5 {
            assert_eq!(elementary_series(2, n), power_sum_series(2, n));
        }
        // Higher degree: the elementary table strictly contains the
        // power-sum hook group.
        let e = elementary_series(3, 4);
        let p = power_sum_series(3, 4);
        for ((lambda, mu), b) in p.entries() {
            if lambda.len() <= 2 {
                assert!(e.multiplicity(lambda, mu) >= *b);
            }
        }
    }

    #[test]
    fn quadratic_monomial_family_table_shapes() {
        assert_eq!(degree2_monomials_series(1).entries().len(), 3);
        assert_eq!(degree2_monomials_series(2).entries().len(), 5);
        assert_eq!(degree2_monomials_series(3).entries().len(), 5);
        let stable = degree2_monomials_series(4);
        assert_eq!(stable.entries().len(), 6);
        assert_eq!(
            stable.multiplicity(&Partition::new(vec![2, 2]), &Partition::new(vec![2])),
            1
        );
    }

    #[test]
    fn cubic_monomial_family_table_matches_small_computations() {
        use itertools::Itertools;
        for n in 1..=3usize {
            let s = Shape::new(1, n);
            let mut family = Vec::new();
            for combo in (1..=n).combinations_with_replacement(3) {
                let mut m = MatrixPolynomial::one(s);
                for j in combo {
                    m = m.multiply(&MatrixPolynomial::var(s, 1, j)).unwrap();
                }
                family.push(m);
            }
            let (module, _) = polarization_module(&family, 2).unwrap();
            let computed = frobenius_series(&module).unwrap();
            assert_eq!(computed, degree3_monomials_series(n as u32));
        }
    }

    #[test]
    fn family_tables_for_small_parameters() {
        let a = family_powers_series(2, 3);
        assert_eq!(a.multiplicity(&Partition::new(vec![3]), &Partition::empty()), 1);
        assert_eq!(
            a.multiplicity(&Partition::new(vec![2, 1]), &Partition::new(vec![2])),
            1
        );
        let b = family_differences_series(2, 3);
        assert_eq!(b.multiplicity(&Partition::new(vec![3]), &Partition::new(vec![2])), 0);
        assert_eq!(
            b.multiplicity(&Partition::new(vec![2, 1]), &Partition::new(vec![2])),
            1
        );
        let c = family_products_series(2, 4);
        assert_eq!(
            c.multiplicity(&Partition::new(vec![3, 1]), &Partition::new(vec![1])),
            1
        );
        assert_eq!(
            c.multiplicity(&Partition::new(vec![3, 1]), &Partition::new(vec![2])),
            1
        );
        let c4 = family_products_series(4, 4);
        assert_eq!(
            c4.multiplicity(&Partition::new(vec![2, 2]), &Partition::new(vec![2])),
            1
        );
        assert_eq!(
            c4.multiplicity(&Partition::new(vec![2, 2]), &Partition::new(vec![3])),
            1
        );
    }

    #[test]
    fn degenerate_groups_are_dropped() {
        // At n = 2 the two-row groups of the products family would need a
        // w-partition (0, 1) or (1, 2); both are skipped.
        let c = family_products_series(2, 2);
        for ((lambda, _), _) in c.entries() {
            assert!(lambda.parts()[0] >= lambda.parts().get(1).copied().unwrap_or(0));
        }
    }
}
