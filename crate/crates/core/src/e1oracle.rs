//! Brute-force E1 page of the `U_{s+f}` spectral sequence.
//!
//! The page at total degree `m` is a sum of tensor products of twisted
//! symmetric and exterior powers of `𝔲*` with the coefficient weights
//! `λ + p^s μ`. Taking `T_{s+f}`-invariants keeps the weights divisible by
//! `p^{s+f}`; the quotients `γ` are what the weight bounds speak about. Every
//! weight of the actual cohomology is among them, so an empty page certifies
//! vanishing and a bound that holds on the page holds for the cohomology.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::arith::{int, is_prime, pow_i64, rational_str, Rational};
use crate::bounds::{bs_vanish_threshold, variants_for, BsVariant};
use crate::config::Caps;
use crate::error::{invalid, Error, Result};
use crate::modchar::{combine, graded_power, nilradical_dual_weights, PowerKind, WeightMultiset};
use crate::rootsys::{RootSystem, Weight};
use crate::weightcomb::{b_invariant, b_of_weight, p_adic_digits, t_invariant};

/// Exponents of one E1 summand. `a[n]` and `b[n]` are the symmetric and
/// exterior degrees twisted `n` times (for `p = 2`, `a[n]` is twisted `n − 1`
/// times, `a[0]` is unused and `b` is absent).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ExponentTuple {
    pub a: Vec<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<Vec<u32>>,
    pub bidegree: (i64, i64),
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

fn check_caps(levels: usize, m: usize, caps: &Caps) -> Result<()> {
    if levels > caps.max_levels {
        return Err(Error::ResourceCap {
            what: "Frobenius levels",
            requested: levels as u128,
            cap: caps.max_levels as u128,
        });
    }
    if m > caps.max_degree {
        return Err(Error::ResourceCap { what: "total degree", requested: m as u128, cap: caps.max_degree as u128 });
    }
    Ok(())
}

/// Every `x` with `Σ cost[k]·x[k] = total`, in lexicographic order;
/// zero-cost slots stay at zero.
fn weighted_compositions(cost: &[u32], total: u32) -> Vec<Vec<u32>> {
    fn go(cost: &[u32], left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if prefix.len() == cost.len() {
            if left == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        let c = cost[prefix.len()];
        let max = left.checked_div(c).unwrap_or(0);
        for x in 0..=max {
            prefix.push(x);
            go(cost, left - x * c, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(cost, total, &mut Vec::new(), &mut out);
    out
}

/// Every exponent tuple of total degree `m` over `levels` Frobenius levels,
/// ordered lexicographically on `(a, b)`.
pub fn enumerate_tuples(p: u64, levels: usize, m: usize, caps: &Caps) -> Result<Vec<ExponentTuple>> {
    check_prime(p)?;
    if levels == 0 {
        return invalid("at least one Frobenius level is needed");
    }
    check_caps(levels, m, caps)?;
    let l = levels;
    let m32 = m as u32;
    let pi = p as i64;
    let mut out = Vec::new();
    if p == 2 {
        // slots a_0..a_L with a_0 pinned to zero
        let mut cost = vec![1u32; l + 1];
        cost[0] = 0;
        for a in weighted_compositions(&cost, m32) {
            let i: i64 = (1..=l).map(|n| a[n] as i64 * pow_i64(2, n as u32 - 1)).sum();
            out.push(ExponentTuple { a, b: None, bidegree: (i, m as i64 - i) });
        }
    } else {
        // slots a_0..a_L, b_0..b_L with a_0 = b_L = 0
        let mut cost = vec![2u32; l + 1];
        cost[0] = 0;
        cost.extend(std::iter::repeat_n(1u32, l));
        cost.push(0);
        for v in weighted_compositions(&cost, m32) {
            let (a, b) = v.split_at(l + 1);
            let i: i64 = (1..=l)
                .map(|n| a[n] as i64 * pow_i64(pi, n as u32) + b[n - 1] as i64 * pow_i64(pi, n as u32 - 1))
                .sum();
            out.push(ExponentTuple { a: a.to_vec(), b: Some(b.to_vec()), bidegree: (i, m as i64 - i) });
        }
    }
    out.sort();
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantPage {
    pub p: u64,
    pub s: u32,
    pub f: u32,
    pub m: u32,
    pub lambda: Weight,
    pub mu_set: WeightMultiset,
    /// Untwisted weights `γ` with multiplicities summed over all summands.
    pub gammas: WeightMultiset,
    /// The exact weight bound, when its hypotheses hold.
    pub exact_bound: Option<i64>,
    /// Weights `γ` with `b(γ)` equal to `exact_bound`.
    pub equality_hits: Vec<Weight>,
    pub tuples: usize,
}

impl InvariantPage {
    pub fn is_empty(&self) -> bool {
        self.gammas.is_empty()
    }
}

/// Why the exact bound does not apply, if it does not.
fn exact_hypotheses(
    rs: &RootSystem,
    p: u64,
    s: u32,
    f: u32,
    lambda: &Weight,
    mu_set: &WeightMultiset,
) -> Result<std::result::Result<(), String>> {
    if !lambda.is_dominant() {
        return Ok(Err(format!("λ = {lambda} is not dominant")));
    }
    if lambda.is_zero() {
        return Ok(Err("λ is zero".into()));
    }
    let t = t_invariant(b_of_weight(rs, lambda), p);
    if s < t {
        return Ok(Err(format!("s = {s} < t(λ) = {t}")));
    }
    let tm = t_invariant(b_invariant(rs, mu_set)?.value(), p);
    if f < tm {
        return Ok(Err(format!("f = {f} < t(μ) = {tm}")));
    }
    Ok(Ok(()))
}

/// `m − (s−t)` for `p = 2`, `min{m − (s−t+1)(p−2) + λ_{t−1}, m − (s−t)(p−2)}` otherwise.
pub fn exact_weight_bound(p: u64, s: u32, m: u32, d_lambda: u64) -> i64 {
    let t = t_invariant(d_lambda, p) as i64;
    let (s, m) = (s as i64, m as i64);
    if p == 2 {
        return m - (s - t);
    }
    let top = *p_adic_digits(d_lambda, p).digits.last().unwrap_or(&0) as i64;
    let q = p as i64 - 2;
    (m - (s - t + 1) * q + top).min(m - (s - t) * q)
}

struct PowerCache<'a> {
    u: WeightMultiset,
    caps: &'a Caps,
    cache: HashMap<(PowerKind, u32), WeightMultiset>,
}

impl PowerCache<'_> {
    fn get(&mut self, kind: PowerKind, n: u32) -> Result<&WeightMultiset> {
        if !self.cache.contains_key(&(kind, n)) {
            let ws = graded_power(kind, &self.u, n as usize, self.caps)?;
            self.cache.insert((kind, n), ws);
        }
        Ok(&self.cache[&(kind, n)])
    }
}

/// `T_{s+f}`-invariant weights of the E1 page for `H^m(B_{s+f}, λ + p^s μ)`,
/// `μ` ranging over `mu_set`.
#[allow(clippy::too_many_arguments)]
pub fn invariant_page(
    rs: &RootSystem,
    p: u64,
    s: u32,
    f: u32,
    lambda: &Weight,
    mu_set: &WeightMultiset,
    m: u32,
    caps: &Caps,
) -> Result<InvariantPage> {
    check_prime(p)?;
    rs.check_rank(lambda)?;
    for mu in mu_set.weights() {
        rs.check_rank(mu)?;
    }
    if mu_set.is_empty() {
        return invalid("μ_set must not be empty");
    }
    let levels = (s + f) as usize;
    let tuples = enumerate_tuples(p, levels, m as usize, caps)?;
    let pi = p as i64;
    let modulus = pow_i64(pi, s + f);
    let base: WeightMultiset = mu_set.iter().map(|(mu, k)| (lambda + &mu.scale(pow_i64(pi, s)), k.clone())).collect();
    let n_pos = rs.num_positive_roots() as u32;
    let mut powers = PowerCache { u: nilradical_dual_weights(rs), caps, cache: HashMap::new() };

    let mut gammas = WeightMultiset::new();
    for tuple in &tuples {
        let mut factors: Vec<(PowerKind, u32, u32)> = Vec::new();
        match &tuple.b {
            None => {
                for n in 1..=levels {
                    factors.push((PowerKind::Symmetric, tuple.a[n], n as u32 - 1));
                }
            }
            Some(b) => {
                for n in 1..=levels {
                    factors.push((PowerKind::Symmetric, tuple.a[n], n as u32));
                }
                for (n, &bn) in b.iter().enumerate().take(levels) {
                    factors.push((PowerKind::Exterior, bn, n as u32));
                }
            }
        }
        if factors.iter().any(|&(k, deg, _)| k == PowerKind::Exterior && deg > n_pos) {
            continue;
        }
        let mut cur = base.clone();
        for (kind, deg, twist) in factors {
            if deg == 0 {
                continue;
            }
            let power = powers.get(kind, deg)?;
            cur = combine(&cur, power, twist, p, caps)?;
        }
        for (w, k) in cur.iter() {
            if let Some(g) = w.div_exact(modulus) {
                gammas.insert(g, k.clone());
            }
        }
    }

    let exact_bound = match exact_hypotheses(rs, p, s, f, lambda, mu_set)? {
        Ok(()) => Some(exact_weight_bound(p, s, m, b_of_weight(rs, lambda))),
        Err(_) => None,
    };
    let equality_hits = match exact_bound {
        Some(bound) => gammas.weights().filter(|g| b_of_weight(rs, g) as i64 == bound).cloned().collect(),
        None => Vec::new(),
    };
    Ok(InvariantPage {
        p,
        s,
        f,
        m,
        lambda: lambda.clone(),
        mu_set: mu_set.clone(),
        gammas,
        exact_bound,
        equality_hits,
        tuples: tuples.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Exact,
    Rough,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundCheckReport {
    pub kind: BoundKind,
    /// Upper bound on `b(γ)`.
    #[serde(with = "rational_str")]
    pub bound: Rational,
    pub checked: usize,
    pub violations: Vec<Weight>,
    pub equality_hits: Vec<Weight>,
    /// Equality hits occur only when `f = t(μ)`.
    pub equality_consistent: bool,
    pub passed: bool,
}

/// Checks every `γ` of the page against the exact or rough weight bound.
pub fn check_weight_bounds(rs: &RootSystem, page: &InvariantPage, kind: BoundKind) -> Result<BoundCheckReport> {
    let p = page.p;
    let bound = match kind {
        BoundKind::Exact => {
            if let Err(why) = exact_hypotheses(rs, p, page.s, page.f, &page.lambda, &page.mu_set)? {
                return invalid(format!("exact bound does not apply: {why}"));
            }
            int(exact_weight_bound(p, page.s, page.m, b_of_weight(rs, &page.lambda)))
        }
        BoundKind::Rough => {
            let q = int(pow_i64(p as i64, page.s + page.f));
            let b_mu = int(b_invariant(rs, &page.mu_set)?.value() as i64);
            let b_lambda = int(b_of_weight(rs, &page.lambda) as i64);
            (int(pow_i64(p as i64, page.s)) * b_mu + b_lambda) / q + int(page.m as i64)
        }
    };
    let mut violations = Vec::new();
    let mut equality_hits = Vec::new();
    for g in page.gammas.weights() {
        let b = int(b_of_weight(rs, g) as i64);
        if b > bound {
            violations.push(g.clone());
        } else if b == bound {
            equality_hits.push(g.clone());
        }
    }
    let equality_consistent = match kind {
        BoundKind::Exact => {
            let t_mu = t_invariant(b_invariant(rs, &page.mu_set)?.value(), p);
            equality_hits.is_empty() || page.f == t_mu
        }
        BoundKind::Rough => true,
    };
    let passed = violations.is_empty() && equality_consistent;
    Ok(BoundCheckReport {
        kind,
        bound,
        checked: page.gammas.len(),
        violations,
        equality_hits,
        equality_consistent,
        passed,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantThreshold {
    pub variant: BsVariant,
    #[serde(with = "rational_str")]
    pub s_threshold: Rational,
    pub met: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VanishReport {
    pub p: u64,
    pub s: u32,
    pub m: u32,
    pub lambda: Weight,
    pub d: u64,
    pub thresholds: Vec<VariantThreshold>,
    pub page: WeightMultiset,
    /// No threshold is met while the page is non-empty.
    pub consistent: bool,
}

/// Compares the `B_s`-vanishing thresholds with the page of `H^m(B_s, λ)`.
pub fn check_bs_vanishing(
    rs: &RootSystem,
    p: u64,
    lambda: &Weight,
    s: u32,
    m: u32,
    caps: &Caps,
) -> Result<VanishReport> {
    check_prime(p)?;
    rs.check_rank(lambda)?;
    let d = rs.highest_root().pair(lambda);
    if d <= 0 {
        return invalid(format!("⟨λ, α̃^∨⟩ = {d} must be positive"));
    }
    if s == 0 {
        return invalid("s must be at least 1");
    }
    let d = d as u64;
    let thresholds = variants_for(p)
        .iter()
        .map(|&variant| {
            let s_threshold = bs_vanish_threshold(d, p, m as u64, variant)?;
            let met = int(s as i64) >= s_threshold;
            Ok(VariantThreshold { variant, s_threshold, met })
        })
        .collect::<Result<Vec<_>>>()?;
    let page = invariant_page(rs, p, s, 0, lambda, &WeightMultiset::trivial(rs.rank()), m, caps)?.gammas;
    let consistent = page.is_empty() || thresholds.iter().all(|t| !t.met);
    Ok(VanishReport { p, s, m, lambda: lambda.clone(), d, thresholds, page, consistent })
}

/// Whether `(2^k − 1)·2^{k−1}`, `k = s + f`, has exactly `k` binary ones.
pub fn dyadic_sharpness(s: u32, f: u32) -> Result<bool> {
    let k = s + f;
    if k == 0 {
        return invalid("s + f must be at least 1");
    }
    if 2 * k > 128 {
        return Err(Error::ResourceCap { what: "binary width", requested: (2 * k) as u128, cap: 128 });
    }
    let n: u128 = ((1u128 << k) - 1) << (k - 1);
    Ok(n.count_ones() == k)
}
