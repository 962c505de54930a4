//! Irreducible characters of the symmetric group via the Murnaghan-Nakayama
//! border-strip recursion, with per-n tables cached behind a lock.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::error::{Error, Result};
use crate::symfunc::partition::{partitions_of, Partition};

/// chi^lambda evaluated on the class of cycle type rho; |lambda| must equal
/// |rho|.
pub fn irreducible_character(lambda: &Partition, rho: &Partition) -> Result<i64> {
    if lambda.size() != rho.size() {
        return Err(Error::SizeMismatch {
            left: lambda.size() as usize,
            right: rho.size() as usize,
        });
    }
    let table = character_table(lambda.size());
    Ok(table.value(lambda, rho))
}

/// Full character table of S_n: rows are shapes, columns cycle types, both
/// in the descending-lex partition order.
#[derive(Debug)]
pub struct CharacterTable {
    pub n: u32,
    pub shapes: Vec<Partition>,
    values: Vec<Vec<i64>>,
    index: HashMap<Partition, usize>,
}

impl CharacterTable {
    pub fn value(&self, lambda: &Partition, rho: &Partition) -> i64 {
        let r = self.index[lambda];
        let c = self.index[rho];
        self.values[r][c]
    }

    pub fn row(&self, lambda: &Partition) -> &[i64] {
        &self.values[self.index[lambda]]
    }
}

static TABLES: Lazy<Mutex<HashMap<u32, Arc<CharacterTable>>>> =
    Lazy::new(|| Mutex::new(HashMap::new()));

pub fn character_table(n: u32) -> Arc<CharacterTable> {
    let mut tables = TABLES.lock().unwrap();
    tables
        .entry(n)
        .or_insert_with(|| Arc::new(build_table(n)))
        .clone()
}

fn build_table(n: u32) -> CharacterTable {
    let shapes = partitions_of(n);
    let index: HashMap<Partition, usize> = shapes
        .iter()
        .enumerate()
        .map(|(k, p)| (p.clone(), k))
        .collect();
    let mut memo: HashMap<(Vec<u32>, Vec<u32>), i64> = HashMap::new();
    let values = shapes
        .iter()
        .map(|lam| {
            shapes
                .iter()
                .map(|rho| mn(lam.parts(), rho.parts(), &mut memo))
                .collect()
        })
        .collect();
    CharacterTable {
        n,
        shapes,
        values,
        index,
    }
}

/// Murnaghan-Nakayama on beta-numbers: removing a border strip of length r
/// from lambda moves one beta-number down by r; the sign is set by how many
/// beta-numbers it jumps over.
fn mn(lambda: &[u32], rho: &[u32], memo: &mut HashMap<(Vec<u32>, Vec<u32>), i64>) -> i64 {
    if rho.is_empty() {
        return 1; // lambda is empty too whenever sizes agree
    }
    let key = (lambda.to_vec(), rho.to_vec());
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let r = rho[0];
    let rest = &rho[1..];
    let k = lambda.len();
    // beta[i] = lambda[i] + (k - 1 - i), strictly decreasing.
    let beta: Vec<u32> = lambda
        .iter()
        .enumerate()
        .map(|(i, &p)| p + (k - 1 - i) as u32)
        .collect();
    let mut total = 0i64;
    for (i, &b) in beta.iter().enumerate() {
        if b < r {
            continue;
        }
        let target = b - r;
        if beta.contains(&target) {
            continue;
        }
        let jumped = beta.iter().filter(|&&x| target < x && x < b).count();
        let sign = if jumped % 2 == 0 { 1 } else { -1 };
        let mut beta2 = beta.clone();
        beta2[i] = target;
        beta2.sort_unstable_by(|a, b| b.cmp(a));
        let lambda2: Vec<u32> = beta2
            .iter()
            .enumerate()
            .map(|(j, &x)| x - (k - 1 - j) as u32)
            .filter(|&p| p > 0)
            .collect();
        total += sign * mn(&lambda2, rest, memo);
    }
    memo.insert(key, total);
    total
}
