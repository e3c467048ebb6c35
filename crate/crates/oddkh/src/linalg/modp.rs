//! Ranks over GF(p) for small primes.

use super::{Int, IntMatrix};

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and small
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

fn reduce(v: &Int, p: u64) -> u64 {
    let pm = Int::from(p);
    let r = ((v % &pm) + &pm) % &pm;
    u64::try_from(r).expect("residue fits")
}

/// Rank of `a` over GF(p); sparse row elimination.
pub fn rank_mod_p(a: &IntMatrix, p: u64) -> usize {
    assert!(is_prime(p), "{p} is not prime");
    let mut rows: Vec<Vec<(u32, u64)>> = (0..a.rows())
        .map(|r| a.row(r).map(|(c, v)| (c as u32, reduce(v, p))).filter(|e| e.1 != 0).collect())
        .collect();
    rows.sort_by_key(|r| r.len());
    // pivot row per leading column
    let mut pivot_of: std::collections::HashMap<u32, Vec<(u32, u64)>> = std::collections::HashMap::new();
    let mut rank = 0;
    for mut row in rows {
        loop {
            let Some(&(lead, lv)) = row.first() else { break };
            match pivot_of.get(&lead) {
                None => {
                    // normalise and store
                    let inv = inv_mod(lv, p);
                    for e in row.iter_mut() {
                        e.1 = (e.1 as u128 * inv as u128 % p as u128) as u64;
                    }
                    pivot_of.insert(lead, row);
                    rank += 1;
                    break;
                }
                Some(prow) => {
                    // row -= lv * prow
                    let mut out = Vec::with_capacity(row.len() + prow.len());
                    let (mut i, mut j) = (0, 0);
                    while i < row.len() || j < prow.len() {
                        if j == prow.len() || (i < row.len() && row[i].0 < prow[j].0) {
                            out.push(row[i]);
                            i += 1;
                        } else if i == row.len() || prow[j].0 < row[i].0 {
                            out.push((prow[j].0, (p - (lv as u128 * prow[j].1 as u128 % p as u128) as u64) % p));
                            j += 1;
                        } else {
                            let t = (lv as u128 * prow[j].1 as u128 % p as u128) as u64;
                            let v = (row[i].1 + p - t) % p;
                            if v != 0 {
                                out.push((row[i].0, v));
                            }
                            i += 1;
                            j += 1;
                        }
                    }
                    row = out;
                }
            }
        }
    }
    rank
}
