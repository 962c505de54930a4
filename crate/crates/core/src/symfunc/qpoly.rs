//! Polynomials in the grading variables q_1..q_l, plus the classical
//! symmetric polynomials in them and Schur decomposition.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::symfunc::partition::Partition;

/// Sparse exact polynomial in a fixed number of variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl QPoly {
    pub fn zero(vars: usize) -> Self {
        QPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: usize, c: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(vec![0; vars], c);
        }
        QPoly { vars, terms }
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, BigRational::one())
    }

    /// q_i, 1-based.
    pub fn var(vars: usize, i: usize) -> Self {
        assert!((1..=vars).contains(&i));
        let mut exp = vec![0; vars];
        exp[i - 1] = 1;
        Self::monomial(exp, BigRational::one())
    }

    pub fn monomial(exp: Vec<u32>, c: BigRational) -> Self {
        let vars = exp.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp, c);
        }
        QPoly { vars, terms }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigRational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u32]) -> BigRational {
        self.terms.get(exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add_assign_term(&mut self, exp: Vec<u32>, c: &BigRational) {
        use std::collections::btree_map::Entry;
        assert_eq!(exp.len(), self.vars);
        match self.terms.entry(exp) {
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
            Entry::Vacant(slot) => {
                if !c.is_zero() {
                    slot.insert(c.clone());
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_assign_term(e.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        QPoly {
            vars: self.vars,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.clone(), -c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.vars);
        }
        QPoly {
            vars: self.vars,
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.vars, other.vars, "variable count mismatch");
        let mut out = Self::zero(self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let exp: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_assign_term(exp, &(ca * cb));
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Leading exponent under graded lex; None for zero.
    pub fn leading_exponent(&self) -> Option<&Vec<u32>> {
        self.terms
            .keys()
            .max_by(|a, b| {
                let da: u32 = a.iter().sum();
                let db: u32 = b.iter().sum();
                da.cmp(&db).then_with(|| a.cmp(b))
            })
    }

    /// Value at q_1 = ... = q_l = 1; counts dimensions when coefficients do.
    pub fn eval_at_ones(&self) -> BigRational {
        self.terms.values().sum()
    }

    /// Invariance under all adjacent variable swaps.
    pub fn is_symmetric(&self) -> bool {
        for k in 0..self.vars.saturating_sub(1) {
            for (e, c) in &self.terms {
                let mut swapped = e.clone();
                swapped.swap(k, k + 1);
                if &self.coefficient(&swapped) != c {
                    return false;
                }
            }
        }
        true
    }

    /// Human form: ascending degree, `q` for one variable, `q_i` otherwise.
    pub fn render(&self, letter: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut keys: Vec<&Vec<u32>> = self.terms.keys().collect();
        keys.sort_by(|a, b| {
            let da: u32 = a.iter().sum();
            let db: u32 = b.iter().sum();
            // Ascending degree; within a degree, earlier variables first.
            da.cmp(&db).then_with(|| b.cmp(a))
        });
        let mut out = String::new();
        for (k, exp) in keys.iter().enumerate() {
            let coef = &self.terms[*exp];
            let neg = coef.is_negative();
            let mag = coef.abs();
            if k == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let deg: u32 = exp.iter().sum();
            let mut factors = Vec::new();
            if !mag.is_one() || deg == 0 {
                factors.push(mag.to_string());
            }
            for (i, &e) in exp.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let name = if self.vars == 1 {
                    letter.to_string()
                } else {
                    format!("{letter}_{}", i + 1)
                };
                if e == 1 {
                    factors.push(name);
                } else {
                    factors.push(format!("{name}^{e}"));
                }
            }
            out.push_str(&factors.join(if self.vars == 1 { "" } else { " " }));
        }
        out
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render("q"))
    }
}

/// h_m in `vars` variables: the sum of all monomials of degree m.
pub fn complete_homogeneous(m: u32, vars: usize) -> QPoly {
    let mut out = QPoly::zero(vars);
    let mut exp = vec![0u32; vars];
    fill_h(m, 0, &mut exp, &mut out);
    out
}

fn fill_h(remaining: u32, pos: usize, exp: &mut Vec<u32>, out: &mut QPoly) {
    if pos + 1 == exp.len() {
        exp[pos] = remaining;
        out.add_assign_term(exp.clone(), &BigRational::one());
        exp[pos] = 0;
        return;
    }
    for take in 0..=remaining {
        exp[pos] = take;
        fill_h(remaining - take, pos + 1, exp, out);
        exp[pos] = 0;
    }
}

/// e_m in `vars` variables: the sum of all squarefree monomials of degree m.
pub fn elementary(m: u32, vars: usize) -> QPoly {
    let mut out = QPoly::zero(vars);
    if m as usize > vars {
        return out;
    }
    let mut picked = Vec::new();
    fill_e(m as usize, 0, vars, &mut picked, &mut out);
    out
}

fn fill_e(m: usize, from: usize, vars: usize, picked: &mut Vec<usize>, out: &mut QPoly) {
    if picked.len() == m {
        let mut exp = vec![0u32; vars];
        for &i in picked.iter() {
            exp[i] = 1;
        }
        out.add_assign_term(exp, &BigRational::one());
        return;
    }
    for i in from..vars {
        picked.push(i);
        fill_e(m, i + 1, vars, picked, out);
        picked.pop();
    }
}

/// p_m = q_1^m + ... + q_l^m.
pub fn power_sum(m: u32, vars: usize) -> QPoly {
    assert!(m >= 1);
    let mut out = QPoly::zero(vars);
    for i in 0..vars {
        let mut exp = vec![0u32; vars];
        exp[i] = m;
        out.add_assign_term(exp, &BigRational::one());
    }
    out
}

/// m_lambda in `vars` variables; zero when lambda has too many parts.
pub fn monomial_sym(lambda: &Partition, vars: usize) -> QPoly {
    let mut out = QPoly::zero(vars);
    if lambda.len() > vars {
        return out;
    }
    if lambda.is_empty() {
        return QPoly::one(vars);
    }
    let mut exp: Vec<u32> = lambda.parts().to_vec();
    exp.resize(vars, 0);
    exp.sort_unstable();
    // Distinct permutations in lexicographic order.
    loop {
        out.add_assign_term(exp.clone(), &BigRational::one());
        if !next_permutation(&mut exp) {
            break;
        }
    }
    out
}

fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Schur polynomial s_lambda(q_1..q_vars) by the Jacobi-Trudi determinant
/// det(h_{lambda_i - i + j}).
pub fn schur_polynomial(lambda: &Partition, vars: usize) -> QPoly {
    if lambda.is_empty() {
        return QPoly::one(vars);
    }
    if lambda.len() > vars {
        return QPoly::zero(vars);
    }
    let k = lambda.len();
    let h = |m: i64| -> QPoly {
        if m < 0 {
            QPoly::zero(vars)
        } else {
            complete_homogeneous(m as u32, vars)
        }
    };
    let mat: Vec<Vec<QPoly>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| h(i64::from(lambda.parts()[i]) - i as i64 + j as i64))
                .collect()
        })
        .collect();
    determinant(&mat, vars)
}

fn determinant(mat: &[Vec<QPoly>], vars: usize) -> QPoly {
    let k = mat.len();
    if k == 1 {
        return mat[0][0].clone();
    }
    let mut out = QPoly::zero(vars);
    for (j, entry) in mat[0].iter().enumerate() {
        if entry.is_zero() {
            continue;
        }
        let minor: Vec<Vec<QPoly>> = mat[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, p)| p.clone())
                    .collect()
            })
            .collect();
        let cofactor = entry.mul(&determinant(&minor, vars));
        out = if j % 2 == 0 {
            out.add(&cofactor)
        } else {
            out.sub(&cofactor)
        };
    }
    out
}

/// Writes a symmetric polynomial as an integer combination of Schur
/// polynomials by peeling leading terms, which strictly decrease.
pub fn decompose_schur(p: &QPoly) -> Result<BTreeMap<Partition, i64>> {
    if !p.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let mut rest = p.clone();
    let mut coeffs: Vec<(Partition, BigRational)> = Vec::new();
    while let Some(exp) = rest.leading_exponent().cloned() {
        let mut sorted = exp.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted != exp {
            // The leading exponent of a symmetric polynomial is sorted.
            return Err(Error::NotSymmetric);
        }
        let mu = Partition::new(exp.clone());
        let c = rest.coefficient(&exp);
        rest = rest.sub(&schur_polynomial(&mu, p.vars()).scale(&c));
        coeffs.push((mu, c));
    }
    let mut out = BTreeMap::new();
    for (mu, c) in coeffs {
        if !c.is_integer() {
            return Err(Error::NonIntegerCoefficient {
                context: "schur decomposition",
                value: c.to_string(),
            });
        }
        let v = i64::try_from(c.to_integer()).map_err(|_| Error::NonIntegerCoefficient {
            context: "schur decomposition",
            value: c.to_string(),
        })?;
        if v != 0 {
            out.insert(mu, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symfunc::partition::partitions_of;

    fn rat(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn arithmetic_and_render() {
        let one = QPoly::one(1);
        let q = QPoly::var(1, 1);
        let p = one.add(&q.scale(&rat(2))).add(&q.mul(&q));
        assert_eq!(p.render("q"), "1 + 2q + q^2");
        assert_eq!(p.eval_at_ones(), rat(4));
        let two_vars = QPoly::one(2)
            .add(&QPoly::var(2, 1))
            .add(&QPoly::var(2, 2));
        assert_eq!(two_vars.render("q"), "1 + q_1 + q_2");
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn classical_families_agree_on_small_cases() {
        // h_2(q1,q2) = q1^2 + q1 q2 + q2^2
        let h2 = complete_homogeneous(2, 2);
        assert_eq!(h2.coefficient(&[2, 0]), rat(1));
        assert_eq!(h2.coefficient(&[1, 1]), rat(1));
        assert_eq!(h2.terms().count(), 3);
        // e_2(q1,q2) = q1 q2, and e_3 vanishes in two variables
        assert_eq!(elementary(2, 2), QPoly::monomial(vec![1, 1], rat(1)));
        assert!(elementary(3, 2).is_zero());
        // p_3(q1,q2) = q1^3 + q2^3
        let p3 = power_sum(3, 2);
        assert_eq!(p3.coefficient(&[3, 0]), rat(1));
        assert_eq!(p3.coefficient(&[0, 3]), rat(1));
        assert_eq!(p3.terms().count(), 2);
        // m_{2,1}(q1,q2) = q1^2 q2 + q1 q2^2
        let m21 = monomial_sym(&Partition::new(vec![2, 1]), 2);
        assert_eq!(m21.terms().count(), 2);
        assert_eq!(m21.coefficient(&[2, 1]), rat(1));
        assert!(monomial_sym(&Partition::new(vec![1, 1, 1]), 2).is_zero());
    }

    #[test]
    fn newton_identity_degree_two() {
        // p_2 = h_1^2 - 2 e_2 in any number of variables.
        for vars in 1..=4 {
            let h1 = complete_homogeneous(1, vars);
            let lhs = power_sum(2, vars);
            let rhs = h1.mul(&h1).sub(&elementary(2, vars).scale(&rat(2)));
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn schur_small_cases() {
        let s21 = schur_polynomial(&Partition::new(vec![2, 1]), 2);
        // s_{2,1}(q1,q2) = q1^2 q2 + q1 q2^2
        assert_eq!(s21, monomial_sym(&Partition::new(vec![2, 1]), 2));
        assert!(schur_polynomial(&Partition::new(vec![1, 1, 1]), 2).is_zero());
        // Single-row Schur is complete homogeneous.
        for j in 0..=4u32 {
            assert_eq!(
                schur_polynomial(&Partition::new(vec![j]), 3),
                complete_homogeneous(j, 3)
            );
        }
        // Single-column Schur is elementary.
        assert_eq!(
            schur_polynomial(&Partition::new(vec![1, 1, 1]), 4),
            elementary(3, 4)
        );
    }

    /// Brute-force semistandard tableau enumeration.
    fn schur_by_tableaux(lambda: &Partition, vars: usize) -> QPoly {
        fn fill(
            lambda: &[u32],
            vars: usize,
            row: usize,
            col: usize,
            tab: &mut Vec<Vec<u32>>,
            out: &mut QPoly,
        ) {
            if row == lambda.len() {
                let mut exp = vec![0u32; vars];
                for r in tab.iter() {
                    for &v in r {
                        exp[(v - 1) as usize] += 1;
                    }
                }
                out.add_assign_term(exp, &BigRational::one());
                return;
            }
            if col == lambda[row] as usize {
                fill(lambda, vars, row + 1, 0, tab, out);
                return;
            }
            let lo = {
                let mut lo = 1;
                if col > 0 {
                    lo = lo.max(tab[row][col - 1]);
                }
                if row > 0 {
                    lo = lo.max(tab[row - 1][col] + 1);
                }
                lo
            };
            for v in lo..=vars as u32 {
                tab[row].push(v);
                fill(lambda, vars, row, col + 1, tab, out);
                tab[row].pop();
            }
        }
        let mut out = QPoly::zero(vars);
        let mut tab = vec![Vec::new(); lambda.len()];
        fill(lambda.parts(), vars, 0, 0, &mut tab, &mut out);
        out
    }

    #[test]
    fn schur_matches_tableau_oracle() {
        for d in 1..=5u32 {
            for lambda in partitions_of(d) {
                for vars in 1..=3usize {
                    assert_eq!(
                        schur_polynomial(&lambda, vars),
                        schur_by_tableaux(&lambda, vars),
                        "shape {lambda} in {vars} variables"
                    );
                }
            }
        }
    }

    #[test]
    fn schur_polynomials_are_symmetric() {
        for d in 1..=4u32 {
            for lambda in partitions_of(d) {
                assert!(schur_polynomial(&lambda, 3).is_symmetric());
            }
        }
        assert!(!QPoly::var(2, 1).is_symmetric());
    }

    #[test]
    fn decompose_inverts_schur() {
        for d in 0..=4u32 {
            for lambda in partitions_of(d) {
                for vars in 1..=3usize {
                    if lambda.len() > vars {
                        continue;
                    }
                    let p = schur_polynomial(&lambda, vars);
                    let dec = decompose_schur(&p).unwrap();
                    assert_eq!(dec.len(), 1);
                    assert_eq!(dec[&lambda], 1);
                }
            }
        }
    }

    #[test]
    fn decompose_handles_products_and_rejects_asymmetry() {
        // h_1 * h_1 = s_2 + s_{1,1} in two variables.
        let h1 = complete_homogeneous(1, 2);
        let dec = decompose_schur(&h1.mul(&h1)).unwrap();
        assert_eq!(dec[&Partition::new(vec![2])], 1);
        assert_eq!(dec[&Partition::new(vec![1, 1])], 1);
        assert_eq!(dec.len(), 2);
        assert_eq!(
            decompose_schur(&QPoly::var(2, 1)),
            Err(Error::NotSymmetric)
        );
    }

    #[test]
    fn leading_exponent_is_graded_lex() {
        let p = QPoly::monomial(vec![3, 0], rat(1)).add(&QPoly::monomial(vec![1, 3], rat(1)));
        assert_eq!(p.leading_exponent(), Some(&vec![1, 3]));
    }
}
