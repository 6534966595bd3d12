//! Exhaustive reference for small instances: explicit DFS over every gap
//! sequence. Independent of the frontier code on purpose.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::sequence::BinarySequence;

pub const MAX_X_LEN: usize = 20;
pub const MAX_ROWS: usize = 10;

/// Reachable x-coordinates per row `0..=rows`, by enumerating gap choices.
pub fn brute_force_reachable(x: &BinarySequence, y: &BinarySequence, m: usize, rows: usize) -> Result<Vec<BTreeSet<usize>>> {
    if x.len() > MAX_X_LEN || rows > MAX_ROWS {
        return Err(Error::OracleSize { x_len: x.len(), rows });
    }
    if m == 0 {
        return Err(Error::ZeroStep);
    }
    if rows > y.len() {
        return Err(Error::InputBounds { requested: rows, available: y.len() });
    }
    let xs: Vec<bool> = x.iter().collect();
    let ys: Vec<bool> = y.iter().collect();
    let mut sets = vec![BTreeSet::new(); rows + 1];
    dfs(&xs, &ys, m, rows, 0, 0, &mut sets);
    Ok(sets)
}

fn dfs(xs: &[bool], ys: &[bool], m: usize, rows: usize, row: usize, pos: usize, sets: &mut [BTreeSet<usize>]) {
    sets[row].insert(pos);
    if row == rows {
        return;
    }
    for gap in 1..=m {
        let next = pos + gap;
        if next > xs.len() {
            break;
        }
        if xs[next - 1] == ys[row] {
            dfs(xs, ys, m, rows, row + 1, next, sets);
        }
    }
}
