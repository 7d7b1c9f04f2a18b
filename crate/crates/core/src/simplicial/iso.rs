use super::SSetFT;

#[derive(Clone)]
struct State {
    fwd: Vec<Vec<Option<usize>>>,
    bwd: Vec<Vec<Option<usize>>>,
}

impl State {
    fn assign(&mut self, x: &SSetFT, y: &SSetFT, n: usize, a: usize, b: usize) -> bool {
        match (self.fwd[n][a], self.bwd[n][b]) {
            (Some(c), _) => return c == b,
            (None, Some(_)) => return false,
            (None, None) => {}
        }
        self.fwd[n][a] = Some(b);
        self.bwd[n][b] = Some(a);
        for (fa, fb) in x.nondeg_faces(n, a).iter().zip(y.nondeg_faces(n, b)) {
            if fa.surj != fb.surj || !self.assign(x, y, fa.base_dim(), fa.base, fb.base) {
                return false;
            }
        }
        true
    }
}

/// Searches for an isomorphism `X ≅ Y` of truncated simplicial sets, which is
/// a dimensionwise bijection of nondegenerate simplices commuting with faces.
///
/// Top dimensions are matched first; each choice forces the images of all
/// faces, and conflicts backtrack. Returns `map[n][x]` on success.
pub fn find_isomorphism(x: &SSetFT, y: &SSetFT, pointed: bool) -> Option<Vec<Vec<usize>>> {
    if x.trunc() != y.trunc() || x.nondeg_counts() != y.nondeg_counts() {
        return None;
    }
    let empty = |s: &SSetFT| s.nondeg_counts().iter().map(|&c| vec![None; c]).collect::<Vec<_>>();
    let mut st = State { fwd: empty(x), bwd: empty(y) };
    if pointed {
        match (x.basepoint(), y.basepoint()) {
            (Some(a), Some(b)) => {
                if !st.assign(x, y, 0, a, b) {
                    return None;
                }
            }
            (None, None) => {}
            _ => return None,
        }
    }
    let order: Vec<(usize, usize)> = (0..=x.trunc())
        .rev()
        .flat_map(|n| (0..x.nondeg_counts()[n]).map(move |s| (n, s)))
        .collect();
    let done = search(x, y, &order, 0, st)?;
    Some(done.fwd.into_iter().map(|l| l.into_iter().map(|v| v.expect("complete")).collect()).collect())
}

fn search(x: &SSetFT, y: &SSetFT, order: &[(usize, usize)], mut pos: usize, st: State) -> Option<State> {
    while pos < order.len() && st.fwd[order[pos].0][order[pos].1].is_some() {
        pos += 1;
    }
    let Some(&(n, a)) = order.get(pos) else {
        return Some(st);
    };
    for b in 0..y.nondeg_counts()[n] {
        if st.bwd[n][b].is_some() {
            continue;
        }
        let mut next = st.clone();
        if next.assign(x, y, n, a, b) {
            if let Some(done) = search(x, y, order, pos + 1, next) {
                return Some(done);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::super::{simplicial_circle, simplicial_sphere, standard_simplex};
    use super::*;

    #[test]
    fn self_iso_and_mismatch() {
        let d = standard_simplex(2, 2);
        assert!(find_isomorphism(&d, &d, true).is_some());
        let c = simplicial_circle(2).unwrap();
        let s = simplicial_sphere(2, 2).unwrap();
        assert!(find_isomorphism(&c, &s, true).is_none());
    }

    #[test]
    fn orientation_matters() {
        use super::super::from_simplicial_complex;
        // two edges 0→1, 0→2 versus 0→1, 2→1 have the same counts
        let a = from_simplicial_complex(&[vec![0], vec![1], vec![2], vec![0, 1], vec![0, 2]], 1, None).unwrap();
        let b = from_simplicial_complex(&[vec![0], vec![1], vec![2], vec![0, 1], vec![1, 2]], 1, None).unwrap();
        let c = from_simplicial_complex(&[vec![0], vec![1], vec![2], vec![0, 2], vec![1, 2]], 1, None).unwrap();
        assert!(find_isomorphism(&a, &b, false).is_none());
        assert!(find_isomorphism(&b, &b, false).is_some());
        assert!(find_isomorphism(&a, &c, false).is_none());
    }
}
