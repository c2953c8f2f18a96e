//! Smith normal form over the integers, tracking the column transform.
//!
//! For a square matrix `A` we find unimodular `U`, `V` with `U A V = D`
//! diagonal and `d_1 | d_2 | ... | d_n`. Only `V` is kept: the row lattice of
//! `A` equals `{x D V^-1}`, so `λ` lies in it iff every `(λV)_i` is divisible
//! by `d_i`.

#[derive(Debug, Clone)]
pub struct SmithForm {
    pub diagonal: Vec<i64>,
    pub column_transform: Vec<Vec<i64>>,
}

pub fn smith_normal_form(a: &[Vec<i64>]) -> SmithForm {
    let n = a.len();
    let mut m: Vec<Vec<i64>> = a.to_vec();
    let mut v: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();

    for t in 0..n {
        while let Some((pi, pj)) = min_nonzero(&m, t) {
            m.swap(t, pi);
            swap_cols(&mut m, t, pj);
            swap_cols(&mut v, t, pj);

            let pivot = m[t][t];
            let mut clean = true;
            let (head, tail) = m.split_at_mut(t + 1);
            let row_t = &head[t];
            for row in tail.iter_mut() {
                let q = row[t] / pivot;
                if q != 0 {
                    for (x, y) in row[t..].iter_mut().zip(&row_t[t..]) {
                        *x -= q * y;
                    }
                }
                clean &= row[t] == 0;
            }
            for j in t + 1..n {
                let q = m[t][j] / pivot;
                if q != 0 {
                    for r in m.iter_mut() {
                        r[j] -= q * r[t];
                    }
                    for r in v.iter_mut() {
                        r[j] -= q * r[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility condition on the trailing block
            let bad = (t + 1..n).find(|&i| (t + 1..n).any(|j| m[i][j] % pivot != 0));
            match bad {
                Some(i) => {
                    let row_i = m[i].clone();
                    for (x, y) in m[t][t..].iter_mut().zip(&row_i[t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t][t..].iter_mut() {
                *x = -*x;
            }
        }
    }

    SmithForm { diagonal: (0..n).map(|i| m[i][i]).collect(), column_transform: v }
}

fn min_nonzero(m: &[Vec<i64>], t: usize) -> Option<(usize, usize)> {
    let n = m.len();
    let mut best: Option<(usize, usize)> = None;
    for i in t..n {
        for j in t..n {
            if m[i][j] != 0 && best.is_none_or(|(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}

fn swap_cols(m: &mut [Vec<i64>], a: usize, b: usize) {
    if a != b {
        for r in m.iter_mut() {
            r.swap(a, b);
        }
    }
}
