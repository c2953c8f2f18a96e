//! Size invariants of weights and modules: `b(M)`, `t(M)`, `p`-adic digits,
//! and the per-type constants `c`, `t`, `c(λ)`, `d(λ)`, `t_p(λ)`.

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{ceil_log, is_prime, max_rational, p_part, rational_str, Rational};
use crate::error::{invalid, Error, Result};
use crate::modchar::WeightMultiset;
use crate::rootsys::{Family, RootSystem, Weight};

/// `⟨λ, α^∨⟩` for a root `α` given by its weight.
pub fn pair_with_coroot(rs: &RootSystem, lambda: &Weight, alpha: &Weight) -> Result<i64> {
    rs.coroot_pairing(lambda, alpha)
}

/// Both readings of `b(M)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BInvariant {
    /// `max ⟨σ, β^∨⟩` over weights `σ` and all long roots `β`.
    pub long_root_max: u64,
    /// `max ⟨σ, α̃^∨⟩` over weights `σ`.
    pub highest_root_max: i64,
    pub agree: bool,
}

impl BInvariant {
    pub fn value(&self) -> u64 {
        self.long_root_max
    }
}

pub fn b_invariant(rs: &RootSystem, weights: &WeightMultiset) -> Result<BInvariant> {
    if weights.is_empty() {
        return invalid("b(M) of an empty multiset");
    }
    let mut long_root_max = 0i64;
    let mut highest_root_max = i64::MIN;
    let hr = rs.highest_root();
    for sigma in weights.weights() {
        rs.check_rank(sigma)?;
        for beta in rs.long_positive_roots() {
            // negative long roots contribute -⟨σ, β^∨⟩
            long_root_max = long_root_max.max(beta.pair(sigma).abs());
        }
        highest_root_max = highest_root_max.max(hr.pair(sigma));
    }
    let long_root_max = long_root_max as u64;
    Ok(BInvariant { long_root_max, highest_root_max, agree: highest_root_max == long_root_max as i64 })
}

/// `b(λ)` for a single weight.
pub fn b_of_weight(rs: &RootSystem, lambda: &Weight) -> u64 {
    rs.long_positive_roots().map(|beta| beta.pair(lambda).unsigned_abs()).max().unwrap_or(0)
}

/// `t = ⌈log_p(b+1)⌉`, the number of base-`p` digits of `b`.
pub fn t_invariant(b: u64, p: u64) -> u32 {
    ceil_log(p, b + 1)
}

/// Base-`p` expansion, least significant digit first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PAdicDigits {
    pub base: u64,
    pub digits: Vec<u64>,
    pub value: u64,
}

impl PAdicDigits {
    /// Digit `n`, zero beyond the expansion.
    pub fn digit(&self, n: usize) -> u64 {
        self.digits.get(n).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }
}

pub fn p_adic_digits(n: u64, p: u64) -> PAdicDigits {
    let mut digits = Vec::new();
    let mut rest = n;
    while rest > 0 {
        digits.push(rest % p);
        rest /= p;
    }
    PAdicDigits { base: p, digits, value: n }
}

/// `(c, t)`: the largest coefficient of `α̃` in simple roots, and the exponent
/// of `X(T)/ℤΦ`.
pub fn structural_constants(rs: &RootSystem) -> (i64, u64) {
    let c = *rs.highest_root().coeffs.iter().max().expect("rank >= 1");
    (c, rs.fundamental_group().exponent())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaStats {
    /// Largest root-lattice coordinate of `λ`.
    #[serde(with = "rational_str")]
    pub c_lambda: Rational,
    /// `⟨λ, α̃^∨⟩`.
    pub d_lambda: i64,
    /// `p`-part of the order of `λ` in `X(T)/ℤΦ`.
    pub t_p_lambda: u64,
    pub order_in_fundamental_group: u64,
}

/// `d(λ)` read off the root coordinates `m_i` of `λ` by type.
fn d_from_root_coords(rs: &RootSystem, m: &[Rational]) -> Rational {
    let n = rs.rank();
    match rs.family() {
        Family::C | Family::F => m[0].clone(),
        Family::E if n == 7 => m[0].clone(),
        Family::E if n == 8 => m[7].clone(),
        Family::B | Family::D | Family::E | Family::G => m[1].clone(),
        Family::A if n == 1 => &m[0] * Rational::from_integer(2.into()),
        Family::A => &m[0] + &m[n - 1],
    }
}

pub fn lambda_stats(rs: &RootSystem, lambda: &Weight, p: u64) -> Result<LambdaStats> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return invalid(format!("{lambda} is not dominant"));
    }
    if !is_prime(p) {
        return invalid(format!("{p} is not prime"));
    }
    let coords = rs.root_coords(lambda);
    let c_lambda = max_rational(&coords).unwrap_or_else(Rational::zero);
    let d_lambda = rs.highest_root().pair(lambda);
    let by_type = d_from_root_coords(rs, &coords);
    if by_type != Rational::from_integer(d_lambda.into()) {
        return Err(Error::Contradiction(format!(
            "d({lambda}) = {d_lambda} but the coordinate formula gives {by_type}"
        )));
    }
    let order = rs.fundamental_group().order_of(lambda);
    Ok(LambdaStats { c_lambda, d_lambda, t_p_lambda: p_part(p, order), order_in_fundamental_group: order })
}

/// Module-level `c(M)`, `d(M)` and the largest `t_p` over the weights of `M`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleStats {
    #[serde(with = "rational_str")]
    pub c_module: Rational,
    pub d_module: i64,
    pub t_p_max: u64,
}

/// Like [`lambda_stats`] but maximized over every weight of `M`; the
/// non-dominant weights are measured through their dominant representatives.
pub fn module_stats(rs: &RootSystem, weights: &WeightMultiset, p: u64) -> Result<ModuleStats> {
    if weights.is_empty() {
        return invalid("statistics of an empty multiset");
    }
    let mut c_num = i64::MIN;
    let mut d_module = i64::MIN;
    let mut t_p_max = 1;
    let mut dominants = BTreeSet::new();
    for w in weights.weights() {
        // c is taken on the weight itself, which may have negative coordinates
        c_num = c_num.max(rs.root_coords_scaled(w).into_iter().max().unwrap_or(0));
        d_module = d_module.max(rs.highest_root().pair(w));
        dominants.insert(rs.dominant_representative(w));
    }
    for dom in &dominants {
        t_p_max = t_p_max.max(lambda_stats(rs, dom, p)?.t_p_lambda);
    }
    let c_module = Rational::new(c_num.into(), rs.root_denominator().into());
    Ok(ModuleStats { c_module, d_module, t_p_max })
}

/// `t(M)` for a multiset at prime `p`.
pub fn t_of_module(rs: &RootSystem, weights: &WeightMultiset, p: u64) -> Result<u32> {
    Ok(t_invariant(b_invariant(rs, weights)?.value(), p))
}
