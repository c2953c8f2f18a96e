//! Reference computations that only read the Cartan matrix from the library
//! and redo everything else from scratch.

use std::collections::BTreeSet;

use num_rational::Ratio;

pub type Q = Ratio<i64>;

pub struct Roots {
    pub rank: usize,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`.
    pub cartan: Vec<Vec<i64>>,
    /// `(α_i, α_i) / 2`, scaled so the smallest is 1.
    pub half_norms: Vec<i64>,
    /// Positive roots in simple-root coordinates.
    pub positive: Vec<Vec<i64>>,
}

impl Roots {
    pub fn new(cartan: Vec<Vec<i64>>) -> Self {
        let rank = cartan.len();
        let half_norms = symmetrizer(&cartan);
        let mut positive: Vec<Vec<i64>> = (0..rank).map(|i| unit(rank, i)).collect();
        let mut seen: BTreeSet<Vec<i64>> = positive.iter().cloned().collect();
        // grow one height at a time so every string below β is already known
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..rank {
                    // p = how far the α_i-string extends down from β
                    let mut p = 0;
                    loop {
                        let mut down = beta.clone();
                        down[i] -= p + 1;
                        if down.iter().all(|&c| c >= 0) && seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..rank).map(|j| beta[j] * cartan[j][i]).sum();
                    if p - pairing > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if !next.contains(&up) {
                            next.push(up);
                        }
                    }
                }
            }
            seen.extend(next.iter().cloned());
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by_key(|r| (r.iter().sum::<i64>(), r.clone()));
        Roots { rank, cartan, half_norms, positive }
    }

    /// `(β, β)` for `β` in simple-root coordinates.
    pub fn norm(&self, beta: &[i64]) -> i64 {
        let mut total = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                total += beta[i] * beta[j] * self.cartan[i][j] * self.half_norms[j];
            }
        }
        total
    }

    pub fn highest(&self) -> &[i64] {
        self.positive.last().unwrap()
    }

    /// Fundamental-weight coordinates of `β`.
    pub fn to_omega(&self, beta: &[i64]) -> Vec<i64> {
        (0..self.rank).map(|j| (0..self.rank).map(|i| beta[i] * self.cartan[i][j]).sum()).collect()
    }

    /// `⟨γ, β^∨⟩` for `γ` in fundamental coordinates; exact since coroots
    /// pair integrally with weights.
    pub fn pair(&self, gamma: &[i64], beta: &[i64]) -> i64 {
        let inner: i64 = (0..self.rank).map(|j| gamma[j] * beta[j] * self.half_norms[j]).sum();
        let n = self.norm(beta);
        assert_eq!((2 * inner) % n, 0, "non-integral coroot pairing");
        2 * inner / n
    }

    pub fn b(&self, gamma: &[i64]) -> i64 {
        let long = self.positive.iter().map(|r| self.norm(r)).max().unwrap();
        self.positive.iter().filter(|r| self.norm(r) == long).map(|r| self.pair(gamma, r).abs()).max().unwrap()
    }

    pub fn d(&self, gamma: &[i64]) -> i64 {
        self.pair(gamma, self.highest())
    }

    /// Coefficient maximum of the highest root.
    pub fn c(&self) -> i64 {
        *self.highest().iter().max().unwrap()
    }

    /// Exponent of the weight lattice modulo the root lattice: the lcm of the
    /// denominators of the inverse Cartan matrix.
    pub fn t(&self) -> i64 {
        let inv = inverse(&self.cartan);
        inv.iter().flatten().fold(1, |acc, q| num_integer::lcm(acc, *q.denom()))
    }

    pub fn weyl_dimension(&self, lambda: &[i64]) -> Q {
        let rho = vec![1; self.rank];
        let shifted: Vec<i64> = lambda.iter().zip(&rho).map(|(a, b)| a + b).collect();
        self.positive.iter().fold(Q::from_integer(1), |acc, r| acc * Q::new(self.pair(&shifted, r), self.pair(&rho, r)))
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

/// `d_j` with `cartan[i][j] d_j` symmetric, normalized to a minimum of 1.
fn symmetrizer(cartan: &[Vec<i64>]) -> Vec<i64> {
    let n = cartan.len();
    let mut d: Vec<Option<Q>> = vec![None; n];
    d[0] = Some(Q::from_integer(1));
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..n {
            for j in 0..n {
                if i != j && cartan[i][j] != 0 {
                    if let (Some(di), None) = (d[i], d[j]) {
                        // (α_i, α_j) = cartan[i][j] d_j = cartan[j][i] d_i
                        d[j] = Some(di * Q::from_integer(cartan[j][i]) / Q::from_integer(cartan[i][j]));
                        changed = true;
                    }
                }
            }
        }
    }
    let d: Vec<Q> = d.into_iter().map(Option::unwrap).collect();
    let min = *d.iter().min().unwrap();
    d.iter()
        .map(|x| {
            let r = x / min;
            assert!(r.is_integer());
            r.to_integer()
        })
        .collect()
}

fn inverse(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Q> = row.iter().map(|&x| Q::from_integer(x)).collect();
            r.extend((0..n).map(|j| Q::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| a[r][col] != Q::from_integer(0)).expect("singular Cartan matrix");
        a.swap(col, piv);
        let inv = Q::from_integer(1) / a[col][col];
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col {
                let factor = a[r][col];
                if factor != Q::from_integer(0) {
                    let pivot_row = a[col].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot_row) {
                        *x -= factor * y;
                    }
                }
            }
        }
    }
    a.into_iter().map(|r| r[n..].to_vec()).collect()
}

/// Smallest `t` with `p^t > d`.
pub fn t_of(d: i64, p: i64) -> i64 {
    let mut t = 0;
    let mut pow = 1;
    while pow <= d {
        pow *= p;
        t += 1;
    }
    t
}

/// Most significant base-`p` digit of `d > 0`.
pub fn top_digit(mut d: i64, p: i64) -> i64 {
    while d >= p {
        d /= p;
    }
    d
}

/// Weight bound on the page for dominant `λ ≠ 0`, `s ≥ t(λ)`, `f ≥ t(μ)`.
pub fn exact_bound(p: i64, s: i64, m: i64, d_lambda: i64) -> i64 {
    let t = t_of(d_lambda, p);
    if p == 2 {
        m - (s - t)
    } else {
        (m - (s - t + 1) * (p - 2) + top_digit(d_lambda, p)).min(m - (s - t) * (p - 2))
    }
}

/// `p^{s+f} b(γ) ≤ p^s b(μ) + b(λ) + m p^{s+f}`, as a predicate on `b(γ)`.
pub fn rough_bound_holds(p: i64, s: u32, f: u32, m: i64, b_mu: i64, b_lambda: i64, b_gamma: i64) -> bool {
    let q = p.pow(s + f);
    q * b_gamma <= p.pow(s) * b_mu + b_lambda + m * q
}

/// Least `s` for `H^m(B_s, λ) = 0` by each variant that applies at `p`.
pub fn bs_thresholds(p: i64, m: i64, d: i64) -> Vec<Q> {
    let t = Q::from_integer(t_of(d, p));
    let m = Q::from_integer(m);
    if p == 2 {
        return vec![m + t];
    }
    let q = Q::from_integer(p - 2);
    let b = m / q + t;
    let c = b + Q::new(top_digit(d, p), p - 2) - Q::from_integer(1);
    vec![b, c]
}

/// Multisets of size `k` from `items` (with repetition when `repeat`).
fn choose(items: &[Vec<i64>], k: usize, repeat: bool) -> Vec<Vec<Vec<i64>>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, x) in items.iter().enumerate() {
        let rest = if repeat { &items[i..] } else { &items[i + 1..] };
        for mut tail in choose(rest, k - 1, repeat) {
            tail.insert(0, x.clone());
            out.push(tail);
        }
    }
    out
}

/// Weights `γ` with `p^{s+f} γ` a weight of some E1 term for
/// `H^m(B_{s+f}, λ + p^s μ)`, from explicit root monomials.
pub fn naive_page(
    roots: &Roots,
    p: i64,
    s: u32,
    f: u32,
    lambda: &[i64],
    mu_set: &[Vec<i64>],
    m: u32,
) -> BTreeSet<Vec<i64>> {
    let l = s + f;
    let omegas: Vec<Vec<i64>> = roots.positive.iter().map(|r| roots.to_omega(r)).collect();
    // (exterior, twist, cost)
    let mut slots: Vec<(bool, u32, u32)> = Vec::new();
    if p == 2 {
        slots.extend((1..=l).map(|n| (false, n - 1, 1)));
    } else {
        slots.extend((1..=l).map(|n| (false, n, 2)));
        slots.extend((0..l).map(|n| (true, n, 1)));
    }
    let modulus = p.pow(l);
    let mut out = BTreeSet::new();
    let mut degrees = vec![0u32; slots.len()];
    let mut visit = |deg: &[u32]| {
        let mut partial: Vec<Vec<i64>> =
            mu_set.iter().map(|mu| lambda.iter().zip(mu).map(|(a, b)| a + p.pow(s) * b).collect()).collect();
        for (&(ext, twist, _), &d) in slots.iter().zip(deg) {
            let scale = p.pow(twist);
            let monos = choose(&omegas, d as usize, !ext);
            let mut next = Vec::new();
            for base in &partial {
                for mono in &monos {
                    let mut v = base.clone();
                    for r in mono {
                        for (x, y) in v.iter_mut().zip(r) {
                            *x += scale * y;
                        }
                    }
                    next.push(v);
                }
            }
            partial = next;
        }
        for v in partial {
            if v.iter().all(|x| x % modulus == 0) {
                out.insert(v.iter().map(|x| x / modulus).collect());
            }
        }
    };
    compositions(0, m, &slots, &mut degrees, &mut visit);
    out
}

fn compositions(
    idx: usize,
    left: u32,
    slots: &[(bool, u32, u32)],
    degrees: &mut Vec<u32>,
    visit: &mut dyn FnMut(&[u32]),
) {
    if idx == slots.len() {
        if left == 0 {
            visit(degrees);
        }
        return;
    }
    let cost = slots[idx].2;
    for x in 0..=left / cost {
        degrees[idx] = x;
        compositions(idx + 1, left - x * cost, slots, degrees, visit);
    }
    degrees[idx] = 0;
}
