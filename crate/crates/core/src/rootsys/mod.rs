//! Irreducible root systems with exact arithmetic.
//!
//! Simple roots follow the Bourbaki labelling. Weights are stored in the
//! fundamental-weight basis and the Cartan matrix is laid out so that row `i`
//! holds the fundamental coordinates of the simple root `α_i`, i.e.
//! `cartan[i][j] = ⟨α_i, α_j^∨⟩`.

mod dynkin;
mod snf;
mod weight;

use std::collections::{HashMap, HashSet, VecDeque};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{lcm_all, Rational};
use crate::config::Caps;
use crate::error::{invalid, Result};

pub use dynkin::{CartanType, Family};
pub use snf::{smith_normal_form, SmithForm};
pub use weight::Weight;

/// A positive root together with the data needed to pair against its coroot.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Fundamental-weight coordinates.
    pub weight: Weight,
    /// Coefficients in the simple-root basis.
    pub coeffs: Vec<i64>,
    /// `⟨α, α⟩`, with short roots normalized to 2.
    pub norm: i64,
    /// Coefficients of `α^∨` in the simple-coroot basis; `⟨λ, α^∨⟩` is the dot
    /// product of these with the fundamental coordinates of `λ`.
    pub coroot_coeffs: Vec<i64>,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn pair(&self, lambda: &Weight) -> i64 {
        self.coroot_coeffs.iter().zip(lambda.coords()).map(|(a, b)| a * b).sum()
    }
}

/// The weight lattice modulo the root lattice, via the Smith form of the
/// Cartan matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FundamentalGroup {
    /// Elementary divisors of the Cartan matrix, including the trivial ones.
    pub elementary_divisors: Vec<i64>,
    transform: Vec<Vec<i64>>,
}

impl FundamentalGroup {
    fn from_cartan(cartan: &[Vec<i64>]) -> Self {
        let SmithForm { diagonal, column_transform } = smith_normal_form(cartan);
        FundamentalGroup { elementary_divisors: diagonal, transform: column_transform }
    }

    /// Orders of the cyclic factors; `[1]` for the trivial group.
    pub fn invariants(&self) -> Vec<u64> {
        let nontrivial: Vec<u64> = self.elementary_divisors.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
        if nontrivial.is_empty() {
            vec![1]
        } else {
            nontrivial
        }
    }

    pub fn order(&self) -> u64 {
        self.invariants().iter().product()
    }

    /// Exponent of the group: the lcm of its invariants.
    pub fn exponent(&self) -> u64 {
        lcm_all(self.invariants())
    }

    /// Order of the image of `λ` in the quotient.
    pub fn order_of(&self, lambda: &Weight) -> u64 {
        let n = self.elementary_divisors.len();
        let y: Vec<i64> = (0..n).map(|j| (0..n).map(|i| lambda.coords()[i] * self.transform[i][j]).sum()).collect();
        lcm_all(self.elementary_divisors.iter().zip(&y).map(|(&d, &yj)| (d / d.gcd(&yj)) as u64))
    }
}

#[derive(Debug, Clone)]
pub struct RootSystem {
    cartan_type: CartanType,
    cartan: Vec<Vec<i64>>,
    simple_norms: Vec<i64>,
    simple_roots: Vec<Weight>,
    positive: Vec<Root>,
    index: HashMap<Weight, usize>,
    highest_root: usize,
    highest_short_root: usize,
    inverse_cartan: Vec<Vec<Rational>>,
    // inverse_cartan · root_denominator, integral
    inverse_scaled: Vec<Vec<i64>>,
    root_denominator: i64,
    // ⟨ω_i, ω_j⟩ · gram_scale, integral
    weight_gram: Vec<Vec<i64>>,
    gram_scale: i64,
    longest_word: Vec<usize>,
    fundamental_group: FundamentalGroup,
}

/// Builds the root system of the given family and rank with default caps.
pub fn build_root_system(family: Family, rank: usize) -> Result<RootSystem> {
    RootSystem::new(CartanType::new(family, rank)?)
}

impl RootSystem {
    pub fn new(t: CartanType) -> Result<Self> {
        Self::with_caps(t, &Caps::default())
    }

    pub fn with_caps(t: CartanType, caps: &Caps) -> Result<Self> {
        if t.family.is_classical() && t.rank > caps.max_classical_rank {
            return invalid(format!("{t}: classical rank limited to {} by configuration", caps.max_classical_rank));
        }
        let n = t.rank;
        let (norms, edges) = dynkin::diagram(t);

        let mut gram = vec![vec![0i64; n]; n];
        for i in 0..n {
            gram[i][i] = norms[i];
        }
        for &(i, j) in &edges {
            let off = -norms[i].max(norms[j]) / 2;
            gram[i][j] = off;
            gram[j][i] = off;
        }
        let cartan: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| 2 * gram[i][j] / norms[j]).collect()).collect();

        let positive = generate_positive_roots(&cartan, &gram, &norms);
        let index = positive.iter().enumerate().map(|(k, r)| (r.weight.clone(), k)).collect();
        let max_height = |pred: &dyn Fn(&Root) -> bool| {
            (0..positive.len())
                .filter(|&k| pred(&positive[k]))
                .max_by_key(|&k| positive[k].height())
                .expect("non-empty")
        };
        let min_norm = *norms.iter().min().unwrap();
        let highest_root = max_height(&|_| true);
        let highest_short_root = max_height(&|r| r.norm == min_norm);

        let inverse_cartan = invert(&cartan);
        let root_denominator =
            inverse_cartan.iter().flatten().map(|q| q.denom().to_i64().unwrap()).fold(1i64, |a, d| a.lcm(&d));
        let inverse_scaled = inverse_cartan
            .iter()
            .map(|row| {
                row.iter().map(|q| (q * BigInt::from(root_denominator)).to_integer().to_i64().unwrap()).collect()
            })
            .collect();
        let gram_q: Vec<Vec<Rational>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| &inverse_cartan[j][i] * BigRational::new(BigInt::from(norms[i]), BigInt::from(2)))
                    .collect()
            })
            .collect();
        let gram_scale = gram_q.iter().flatten().map(|q| q.denom().to_i64().unwrap()).fold(1i64, |a, d| a.lcm(&d));
        let weight_gram = gram_q
            .iter()
            .map(|row| {
                row.iter()
                    .map(|q| (q * BigRational::from_integer(BigInt::from(gram_scale))).to_integer().to_i64().unwrap())
                    .collect()
            })
            .collect();

        let simple_roots = cartan.iter().map(|row| Weight::new(row.clone())).collect();
        let fundamental_group = FundamentalGroup::from_cartan(&cartan);

        let mut rs = RootSystem {
            cartan_type: t,
            cartan,
            simple_norms: norms,
            simple_roots,
            positive,
            index,
            highest_root,
            highest_short_root,
            inverse_cartan,
            inverse_scaled,
            root_denominator,
            weight_gram,
            gram_scale,
            longest_word: Vec::new(),
            fundamental_group,
        };
        rs.longest_word = rs.compute_longest_word();
        Ok(rs)
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn family(&self) -> Family {
        self.cartan_type.family
    }

    pub fn rank(&self) -> usize {
        self.cartan_type.rank
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn simple_roots(&self) -> &[Weight] {
        &self.simple_roots
    }

    pub fn simple_root_norms(&self) -> &[i64] {
        &self.simple_norms
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn positive_root_weights(&self) -> Vec<Weight> {
        self.positive.iter().map(|r| r.weight.clone()).collect()
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive.len()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive[self.highest_root]
    }

    pub fn highest_short_root(&self) -> &Root {
        &self.positive[self.highest_short_root]
    }

    pub fn long_norm(&self) -> i64 {
        *self.simple_norms.iter().max().unwrap()
    }

    pub fn is_simply_laced(&self) -> bool {
        self.simple_norms.iter().all(|&n| n == 2)
    }

    /// Positive long roots. In simply-laced types every root counts as long.
    pub fn long_positive_roots(&self) -> impl Iterator<Item = &Root> {
        let long = self.long_norm();
        self.positive.iter().filter(move |r| r.norm == long)
    }

    pub fn rho(&self) -> Weight {
        Weight::new(vec![1; self.rank()])
    }

    pub fn coxeter_number(&self) -> i64 {
        self.highest_short_root().pair(&self.rho()) + 1
    }

    pub fn dual_coxeter_number(&self) -> i64 {
        self.highest_root().pair(&self.rho()) + 1
    }

    pub fn fundamental_group(&self) -> &FundamentalGroup {
        &self.fundamental_group
    }

    pub fn fundamental_group_invariants(&self) -> Vec<u64> {
        self.fundamental_group.invariants()
    }

    pub fn zero(&self) -> Weight {
        Weight::zero(self.rank())
    }

    pub fn fundamental_weight(&self, i: usize) -> Weight {
        Weight::fundamental(self.rank(), i)
    }

    pub fn check_rank(&self, lambda: &Weight) -> Result<()> {
        if lambda.rank() != self.rank() {
            return invalid(format!(
                "weight {lambda} has {} coordinates, {} needs {}",
                lambda.rank(),
                self.cartan_type,
                self.rank()
            ));
        }
        Ok(())
    }

    /// Coordinates of `λ` in the simple-root basis, `λ · C^{-1}`.
    pub fn root_coords(&self, lambda: &Weight) -> Vec<Rational> {
        let n = self.rank();
        (0..n)
            .map(|j| {
                (0..n)
                    .filter(|&i| lambda.coords()[i] != 0)
                    .map(|i| &self.inverse_cartan[i][j] * BigInt::from(lambda.coords()[i]))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .collect()
    }

    /// [`Self::root_coords`] as integer numerators over the common
    /// denominator [`Self::root_denominator`].
    pub fn root_coords_scaled(&self, lambda: &Weight) -> Vec<i64> {
        let n = self.rank();
        (0..n).map(|j| (0..n).map(|i| lambda.coords()[i] * self.inverse_scaled[i][j]).sum()).collect()
    }

    pub fn root_denominator(&self) -> i64 {
        self.root_denominator
    }

    /// Inverse of [`Self::root_coords`]; `None` if the result is not integral.
    pub fn weight_from_root_coords(&self, coeffs: &[Rational]) -> Option<Weight> {
        let n = self.rank();
        let coords: Option<Vec<i64>> = (0..n)
            .map(|j| {
                let x: Rational =
                    (0..n).map(|i| &coeffs[i] * BigInt::from(self.cartan[i][j])).fold(Rational::zero(), |a, b| a + b);
                x.is_integer().then(|| x.to_integer().to_i64()).flatten()
            })
            .collect();
        coords.map(Weight::new)
    }

    /// `⟨λ, μ⟩ · gram_scale()`, an integer.
    pub fn inner_scaled(&self, lambda: &Weight, mu: &Weight) -> i64 {
        let mut acc = 0;
        for (i, &a) in lambda.coords().iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in mu.coords().iter().enumerate() {
                acc += a * b * self.weight_gram[i][j];
            }
        }
        acc
    }

    pub fn gram_scale(&self) -> i64 {
        self.gram_scale
    }

    pub fn inner(&self, lambda: &Weight, mu: &Weight) -> Rational {
        BigRational::new(BigInt::from(self.inner_scaled(lambda, mu)), BigInt::from(self.gram_scale))
    }

    /// Looks up `α` among all roots (positive and negative). Returns the
    /// positive root and the sign.
    pub fn find_root(&self, alpha: &Weight) -> Option<(&Root, i64)> {
        if let Some(&k) = self.index.get(alpha) {
            return Some((&self.positive[k], 1));
        }
        self.index.get(&-alpha).map(|&k| (&self.positive[k], -1))
    }

    pub fn is_root(&self, alpha: &Weight) -> bool {
        self.find_root(alpha).is_some()
    }

    /// Simple reflection `s_i`.
    pub fn reflect(&self, lambda: &Weight, i: usize) -> Weight {
        let k = lambda.coords()[i];
        if k == 0 {
            return lambda.clone();
        }
        Weight::new(lambda.coords().iter().zip(&self.cartan[i]).map(|(c, a)| c - k * a).collect())
    }

    /// The unique dominant weight in the Weyl orbit of `λ`.
    pub fn dominant_representative(&self, lambda: &Weight) -> Weight {
        let mut w = lambda.clone();
        while let Some(i) = w.coords().iter().position(|&c| c < 0) {
            w = self.reflect(&w, i);
        }
        w
    }

    fn compute_longest_word(&self) -> Vec<usize> {
        let mut v = self.rho();
        let mut word = Vec::new();
        while let Some(i) = v.coords().iter().position(|&c| c > 0) {
            v = self.reflect(&v, i);
            word.push(i);
        }
        debug_assert_eq!(v, -self.rho());
        word
    }

    /// Reduced word for the longest element, as the order in which simple
    /// reflections are applied.
    pub fn longest_word(&self) -> &[usize] {
        &self.longest_word
    }

    pub fn apply_longest(&self, lambda: &Weight) -> Weight {
        self.longest_word.iter().fold(lambda.clone(), |w, &i| self.reflect(&w, i))
    }

    /// `λ* = -w_0 λ`.
    pub fn dual_weight(&self, lambda: &Weight) -> Weight {
        -self.apply_longest(lambda)
    }

    /// `μ ≤ λ` in the dominance order: `λ - μ` is a non-negative integral
    /// combination of simple roots.
    pub fn dominance_leq(&self, mu: &Weight, lambda: &Weight) -> bool {
        self.root_coords(&(lambda - mu)).iter().all(|c| c.is_integer() && !c.is_negative())
    }

    /// The full Weyl orbit of `λ`, sorted.
    pub fn orbit(&self, lambda: &Weight) -> Vec<Weight> {
        let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
        let mut queue = VecDeque::from([lambda.clone()]);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank() {
                if w.coords()[i] != 0 {
                    let r = self.reflect(&w, i);
                    if seen.insert(r.clone()) {
                        queue.push_back(r);
                    }
                }
            }
        }
        let mut out: Vec<Weight> = seen.into_iter().collect();
        out.sort();
        out
    }

    /// Pairing `⟨λ, α^∨⟩` for an arbitrary root `α` given by its weight.
    pub fn coroot_pairing(&self, lambda: &Weight, alpha: &Weight) -> Result<i64> {
        self.check_rank(lambda)?;
        self.check_rank(alpha)?;
        match self.find_root(alpha) {
            Some((root, sign)) => Ok(sign * root.pair(lambda)),
            None => invalid(format!("{alpha} is not a root of {}", self.cartan_type)),
        }
    }

    /// Weyl dimension formula for the irreducible character of highest
    /// weight `λ` (dominant).
    pub fn weyl_dimension(&self, lambda: &Weight) -> num_bigint::BigUint {
        let shifted = lambda + &self.rho();
        let rho = self.rho();
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for r in &self.positive {
            num *= r.pair(&shifted);
            den *= r.pair(&rho);
        }
        let q = num / den;
        q.to_biguint().expect("dimension is positive")
    }
}

fn generate_positive_roots(cartan: &[Vec<i64>], gram: &[Vec<i64>], norms: &[i64]) -> Vec<Root> {
    let n = cartan.len();
    let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
    let mut known: HashSet<Vec<i64>> = (0..n).map(unit).collect();
    let mut all: Vec<Vec<i64>> = (0..n).map(unit).collect();
    let mut level: Vec<Vec<i64>> = all.clone();
    while !level.is_empty() {
        let mut next = Vec::new();
        for beta in &level {
            for i in 0..n {
                // ⟨β, α_i^∨⟩
                let pairing: i64 = (0..n).map(|j| beta[j] * cartan[j][i]).sum();
                let mut down = 0;
                let mut probe = beta.clone();
                loop {
                    probe[i] -= 1;
                    if known.contains(&probe) {
                        down += 1;
                    } else {
                        break;
                    }
                }
                if down - pairing > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if known.insert(up.clone()) {
                        next.push(up.clone());
                        all.push(up);
                    }
                }
            }
        }
        level = next;
    }
    all.sort_by(|a, b| a.iter().sum::<i64>().cmp(&b.iter().sum::<i64>()).then_with(|| b.cmp(a)));

    all.into_iter()
        .map(|coeffs| {
            let weight: Vec<i64> = (0..n).map(|j| (0..n).map(|i| coeffs[i] * cartan[i][j]).sum()).collect();
            let norm: i64 = (0..n).map(|i| (0..n).map(|j| coeffs[i] * coeffs[j] * gram[i][j]).sum::<i64>()).sum();
            let coroot_coeffs = (0..n)
                .map(|j| {
                    let x = coeffs[j] * norms[j];
                    debug_assert_eq!(x % norm, 0);
                    x / norm
                })
                .collect();
            Root { weight: Weight::new(weight), coeffs, norm, coroot_coeffs }
        })
        .collect()
}

fn invert(a: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    let n = a.len();
    let mut m: Vec<Vec<Rational>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter()
                .map(|&x| Rational::from_integer(BigInt::from(x)))
                .chain((0..n).map(|j| Rational::from_integer(BigInt::from(i64::from(i == j)))))
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero()).expect("Cartan matrix is invertible");
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    *x -= &factor * y;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n..].to_vec()).collect()
}

#[cfg(test)]
mod tests;
