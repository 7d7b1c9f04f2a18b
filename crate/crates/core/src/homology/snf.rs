use crate::int::Int;
use crate::simplicial::SparseMatrix;

/// Nonzero invariant factors `d_1 | d_2 | …` of a dense integer matrix.
///
/// Pivots on an entry of least absolute value and reduces its row and column
/// by division with remainder until both are clear, then restores
/// divisibility of the remaining block by adding rows into the pivot row.
pub fn smith_normal_form(a: &[Vec<Int>]) -> Vec<Int> {
    let mut a: Vec<Vec<Int>> = a.to_vec();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        let Some((pr, pc)) = smallest(&a, t) else { break };
        a.swap(t, pr);
        for row in a.iter_mut() {
            row.swap(t, pc);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let (q, _) = a[i][t].div_rem(&a[t][t]);
                let (top, rest) = a.split_at_mut(i);
                for (x, p) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x = &*x - &(&q * p);
                }
                clean &= a[i][t].is_zero();
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let (q, _) = a[t][j].div_rem(&a[t][t]);
                for row in a[t..].iter_mut() {
                    let p = row[t].clone();
                    row[j] = &row[j] - &(&q * &p);
                }
                clean &= a[t][j].is_zero();
            }
            if !clean {
                let (pr, pc) = smallest_in_cross(&a, t);
                a.swap(t, pr);
                for row in a.iter_mut() {
                    row.swap(t, pc);
                }
                continue;
            }
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !a[i][j].div_rem(&a[t][t]).1.is_zero()));
            match bad {
                Some(i) => {
                    let (top, rest) = a.split_at_mut(i);
                    for (x, y) in top[t][t..].iter_mut().zip(&rest[0][t..]) {
                        *x = &*x + y;
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

fn smallest(a: &[Vec<Int>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, Int)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, v) in row.iter().enumerate().skip(t) {
            if v.is_zero() {
                continue;
            }
            let m = v.abs();
            if best.as_ref().is_none_or(|b| m < b.2) {
                let unit = m.is_unit();
                best = Some((i, j, m));
                if unit {
                    return best.map(|b| (b.0, b.1));
                }
            }
        }
    }
    best.map(|b| (b.0, b.1))
}

fn smallest_in_cross(a: &[Vec<Int>], t: usize) -> (usize, usize) {
    let col = (t..a.len()).map(|i| (i, t));
    let row = (t..a[t].len()).map(|j| (t, j));
    col.chain(row)
        .filter(|&(i, j)| !a[i][j].is_zero())
        .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
        .expect("a nonzero remainder exists")
}

/// Invariant factors of a sparse matrix.
///
/// Unit entries are eliminated first by column operations, each removing one
/// row and one column and contributing a factor `1`; the block left over is
/// handed to [`smith_normal_form`].
pub fn sparse_invariant_factors(m: &SparseMatrix) -> Vec<Int> {
    let mut cols: Vec<Vec<(u32, Int)>> = m.columns().to_vec();
    let mut in_row: Vec<Vec<u32>> = vec![Vec::new(); m.num_rows()];
    for (j, c) in cols.iter().enumerate() {
        for (r, _) in c {
            in_row[*r as usize].push(j as u32);
        }
    }
    let mut alive = vec![true; cols.len()];
    let mut units = 0usize;
    let entry = |c: &[(u32, Int)], r: u32| c.binary_search_by_key(&r, |e| e.0).ok().map(|k| c[k].1.clone());
    loop {
        let mut progress = false;
        for c in 0..cols.len() {
            if !alive[c] || cols[c].is_empty() {
                continue;
            }
            let pivot = cols[c]
                .iter()
                .filter(|(_, v)| v.is_unit())
                .min_by_key(|(r, _)| in_row[*r as usize].len())
                .cloned();
            let Some((r, v)) = pivot else { continue };
            let others = std::mem::take(&mut in_row[r as usize]);
            let pivot_col = std::mem::take(&mut cols[c]);
            for &j in &others {
                let j = j as usize;
                if j == c || !alive[j] {
                    continue;
                }
                let Some(a) = entry(&cols[j], r) else { continue };
                let factor = &a * &v;
                let (merged, gained) = axpy(&cols[j], &factor, &pivot_col);
                cols[j] = merged;
                for g in gained {
                    in_row[g as usize].push(j as u32);
                }
            }
            alive[c] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }
    let rest: Vec<usize> = (0..cols.len()).filter(|&c| alive[c] && !cols[c].is_empty()).collect();
    let mut row_ids: Vec<u32> = rest.iter().flat_map(|&c| cols[c].iter().map(|e| e.0)).collect();
    row_ids.sort_unstable();
    row_ids.dedup();
    let mut dense = vec![vec![Int::ZERO; rest.len()]; row_ids.len()];
    for (k, &c) in rest.iter().enumerate() {
        for (r, v) in &cols[c] {
            let i = row_ids.binary_search(r).expect("row collected above");
            dense[i][k] = v.clone();
        }
    }
    let mut out = vec![Int::ONE; units];
    out.extend(smith_normal_form(&dense));
    out
}

/// `x - f·y` on sorted sparse columns, with the rows newly made nonzero.
fn axpy(x: &[(u32, Int)], f: &Int, y: &[(u32, Int)]) -> (Vec<(u32, Int)>, Vec<u32>) {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let mut gained = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        if j == y.len() || (i < x.len() && x[i].0 < y[j].0) {
            out.push(x[i].clone());
            i += 1;
        } else if i == x.len() || y[j].0 < x[i].0 {
            out.push((y[j].0, -(f * &y[j].1)));
            gained.push(y[j].0);
            j += 1;
        } else {
            let v = &x[i].1 - &(f * &y[j].1);
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    (out, gained)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Int>> {
        rows.iter().map(|r| r.iter().map(|&v| Int::from(v)).collect()).collect()
    }

    #[test]
    fn small_examples() {
        assert_eq!(smith_normal_form(&m(&[&[2, 4], &[6, 8]])), vec![Int::from(2), Int::from(4)]);
        assert!(smith_normal_form(&m(&[&[0, 0], &[0, 0]])).is_empty());
        assert_eq!(smith_normal_form(&m(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])), vec![Int::ONE; 3]);
        // diag(2, 3) ~ diag(1, 6)
        assert_eq!(smith_normal_form(&m(&[&[2, 0], &[0, 3]])), vec![Int::ONE, Int::from(6)]);
    }

    #[test]
    fn sparse_agrees_with_dense() {
        let rows = m(&[&[1, 2, 0, 3], &[0, 2, 4, 0], &[1, 0, -4, 3], &[0, 0, 0, 6]]);
        let sparse = SparseMatrix::from_dense(4, 4, &rows);
        assert_eq!(sparse_invariant_factors(&sparse), smith_normal_form(&rows));
    }
}
