//! Integer partitions with the combinatorial data attached to them.

use std::fmt;

/// A partition: weakly decreasing positive parts. The constructor
/// canonicalizes, so any multiset of nonnegative integers is accepted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(parts: impl Into<Vec<u32>>) -> Self {
        let mut parts = parts.into();
        parts.retain(|&p| p > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// |lambda|, the sum of the parts.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn conjugate(&self) -> Partition {
        if self.is_empty() {
            return Partition::empty();
        }
        let cols = self.0[0] as usize;
        let parts = (1..=cols)
            .map(|c| self.0.iter().filter(|&&p| p as usize >= c).count() as u32)
            .collect();
        Partition(parts)
    }

    /// z = prod over part values i of i^{c_i} c_i!, the centralizer order of
    /// a permutation with this cycle type.
    pub fn z(&self) -> u64 {
        let mut z = 1u64;
        let mut run = 0u64;
        for (k, &p) in self.0.iter().enumerate() {
            run += 1;
            z *= u64::from(p) * run;
            if k + 1 == self.0.len() || self.0[k + 1] != p {
                run = 0;
            }
        }
        z
    }

    /// Size of the conjugacy class with this cycle type in S_{|lambda|}.
    pub fn class_size(&self) -> u64 {
        factorial(self.size()) / self.z()
    }

    /// Hook lengths cell by cell, row-major.
    pub fn hook_lengths(&self) -> Vec<Vec<u32>> {
        let conj = self.conjugate();
        self.0
            .iter()
            .enumerate()
            .map(|(r, &len)| {
                (0..len as usize)
                    .map(|c| {
                        let arm = len - 1 - c as u32;
                        let leg = conj.0[c] - 1 - r as u32;
                        arm + leg + 1
                    })
                    .collect()
            })
            .collect()
    }

    /// Number of standard Young tableaux of this shape, by the hook length
    /// formula.
    pub fn hook_dimension(&self) -> u64 {
        let mut num = factorial(self.size());
        for row in self.hook_lengths() {
            for h in row {
                num /= u64::from(h);
            }
        }
        num
    }

    /// Short bracket form used by the renderers, e.g. `2,1`.
    pub fn bracket(&self) -> String {
        self.0
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.bracket())
    }
}

pub fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// All partitions of d in descending lexicographic order:
/// (d), (d-1,1), ..., (1,...,1). partitions_of(0) is the empty partition.
pub fn partitions_of(d: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    gen(d, d, &mut current, &mut out);
    out
}

fn gen(remaining: u32, max_part: u32, current: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if remaining == 0 {
        out.push(Partition(current.clone()));
        return;
    }
    for part in (1..=max_part.min(remaining)).rev() {
        current.push(part);
        gen(remaining - part, part, current, out);
        current.pop();
    }
}
