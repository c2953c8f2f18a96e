//! Characters as weight multisets.
//!
//! Covers induced modules `H^0(λ)` (Freudenthal recursion on dominant
//! weights, then Weyl-orbit expansion), the weights of `𝔲*`, symmetric and
//! exterior powers, and Frobenius-twisted tensor products.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::pow_i64;
use crate::config::Caps;
use crate::error::{invalid, Error, Result};
use crate::rootsys::{RootSystem, Weight};

/// Finite map weight → positive multiplicity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "Vec<MultisetEntry>", try_from = "Vec<MultisetEntry>")]
pub struct WeightMultiset {
    entries: BTreeMap<Weight, BigUint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultisetEntry {
    pub weight: Weight,
    pub multiplicity: BigUint,
}

impl From<WeightMultiset> for Vec<MultisetEntry> {
    fn from(ws: WeightMultiset) -> Self {
        ws.entries.into_iter().map(|(weight, multiplicity)| MultisetEntry { weight, multiplicity }).collect()
    }
}

impl TryFrom<Vec<MultisetEntry>> for WeightMultiset {
    type Error = String;

    fn try_from(v: Vec<MultisetEntry>) -> std::result::Result<Self, String> {
        let mut ws = WeightMultiset::new();
        for e in v {
            ws.insert(e.weight, e.multiplicity);
        }
        Ok(ws)
    }
}

impl WeightMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    /// `{λ ↦ 1}`.
    pub fn singleton(w: Weight) -> Self {
        let mut ws = Self::new();
        ws.insert(w, BigUint::one());
        ws
    }

    /// The trivial module `{0 ↦ 1}`.
    pub fn trivial(rank: usize) -> Self {
        Self::singleton(Weight::zero(rank))
    }

    /// Adds `m` to the multiplicity of `w`. Zero multiplicities are dropped.
    pub fn insert(&mut self, w: Weight, m: BigUint) {
        if m.is_zero() {
            return;
        }
        *self.entries.entry(w).or_default() += m;
    }

    pub fn multiplicity(&self, w: &Weight) -> BigUint {
        self.entries.get(w).cloned().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Weight, &BigUint)> {
        self.entries.iter()
    }

    pub fn weights(&self) -> impl Iterator<Item = &Weight> {
        self.entries.keys()
    }

    pub fn contains(&self, w: &Weight) -> bool {
        self.entries.contains_key(w)
    }

    /// Number of distinct weights.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_dimension(&self) -> BigUint {
        self.entries.values().sum()
    }

    /// Weights scaled by `k` (a Frobenius twist when `k = p^r`).
    pub fn scaled(&self, k: i64) -> WeightMultiset {
        WeightMultiset { entries: self.entries.iter().map(|(w, m)| (w.scale(k), m.clone())).collect() }
    }

    /// Union with multiplicities added.
    pub fn merge(&mut self, other: &WeightMultiset) {
        for (w, m) in &other.entries {
            self.insert(w.clone(), m.clone());
        }
    }

    pub fn is_weyl_stable(&self, rs: &RootSystem) -> bool {
        self.entries.iter().all(|(w, m)| (0..rs.rank()).all(|i| self.entries.get(&rs.reflect(w, i)) == Some(m)))
    }
}

impl FromIterator<(Weight, BigUint)> for WeightMultiset {
    fn from_iter<I: IntoIterator<Item = (Weight, BigUint)>>(iter: I) -> Self {
        let mut ws = WeightMultiset::new();
        for (w, m) in iter {
            ws.insert(w, m);
        }
        ws
    }
}

fn cap_error(what: &'static str, requested: usize, cap: usize) -> Error {
    Error::ResourceCap { what, requested: requested as u128, cap: cap as u128 }
}

/// Dominant weights `μ ≤ λ`, reached by subtracting positive roots while
/// staying dominant.
fn dominant_weights_below(rs: &RootSystem, lambda: &Weight) -> Vec<Weight> {
    let mut seen: HashSet<Weight> = HashSet::from([lambda.clone()]);
    let mut queue = VecDeque::from([lambda.clone()]);
    while let Some(mu) = queue.pop_front() {
        for root in rs.positive_roots() {
            let nu = &mu - &root.weight;
            if nu.is_dominant() && seen.insert(nu.clone()) {
                queue.push_back(nu);
            }
        }
    }
    seen.into_iter().collect()
}

/// Multiplicities of the dominant weights of `H^0(λ)` by Freudenthal's formula.
pub fn dominant_multiplicities(rs: &RootSystem, lambda: &Weight) -> Result<BTreeMap<Weight, BigUint>> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return invalid(format!("{lambda} is not dominant"));
    }
    let mut dominant = dominant_weights_below(rs, lambda);
    let depth = |mu: &Weight| -> BigInt { rs.root_coords(&(lambda - mu)).iter().map(|c| c.to_integer()).sum() };
    dominant.sort_by_cached_key(|mu| (depth(mu), mu.clone()));

    let rho = rs.rho();
    let top = {
        let v = lambda + &rho;
        rs.inner_scaled(&v, &v)
    };
    let mut mult: HashMap<Weight, BigInt> = HashMap::new();
    mult.insert(lambda.clone(), BigInt::one());
    for mu in dominant.iter().skip(1) {
        let mut rhs = BigInt::zero();
        for root in rs.positive_roots() {
            let mut nu = mu + &root.weight;
            loop {
                let rep = rs.dominant_representative(&nu);
                let Some(m) = mult.get(&rep) else { break };
                rhs += m * BigInt::from(rs.inner_scaled(&nu, &root.weight));
                nu += &root.weight;
            }
        }
        rhs *= 2;
        let shifted = mu + &rho;
        let denom = top - rs.inner_scaled(&shifted, &shifted);
        debug_assert!(denom > 0);
        let (q, r) = (&rhs / denom, &rhs % denom);
        if !r.is_zero() {
            return Err(Error::Contradiction(format!("Freudenthal quotient at {mu} is not integral")));
        }
        mult.insert(mu.clone(), q);
    }
    Ok(mult.into_iter().filter(|(_, m)| *m > BigInt::zero()).map(|(w, m)| (w, m.to_biguint().unwrap())).collect())
}

/// Character of `H^0(λ)` for dominant `λ`.
pub fn weyl_character(rs: &RootSystem, lambda: &Weight, caps: &Caps) -> Result<WeightMultiset> {
    rs.check_rank(lambda)?;
    if !lambda.is_dominant() {
        return invalid(format!("weyl_character needs a dominant weight, got {lambda}"));
    }
    let dim = rs.weyl_dimension(lambda);
    if dim > BigUint::from(caps.max_dimension) {
        return Err(Error::ResourceCap {
            what: "module dimension",
            requested: dim.to_u128().unwrap_or(u128::MAX),
            cap: caps.max_dimension as u128,
        });
    }
    let dom = dominant_multiplicities(rs, lambda)?;
    let mut ws = WeightMultiset::new();
    for (mu, m) in dom {
        for w in rs.orbit(&mu) {
            ws.insert(w, m.clone());
        }
        if ws.len() > caps.max_entries {
            return Err(cap_error("multiset entries", ws.len(), caps.max_entries));
        }
    }
    Ok(ws)
}

/// Weights of `𝔲*`: each positive root once.
pub fn nilradical_dual_weights(rs: &RootSystem) -> WeightMultiset {
    rs.positive_roots().iter().map(|r| (r.weight.clone(), BigUint::one())).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerKind {
    Symmetric,
    Exterior,
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// `n`-th symmetric or exterior power of the module with character `ws`.
///
/// Dynamic programming over the entries of `ws`: an entry of weight `w` and
/// multiplicity `m` spans an `m`-dimensional weight space, whose `k`-th power
/// has dimension `C(m+k-1, k)` (symmetric) or `C(m, k)` (exterior) at `k·w`.
pub fn graded_power(kind: PowerKind, ws: &WeightMultiset, n: usize, caps: &Caps) -> Result<WeightMultiset> {
    let rank = match ws.weights().next() {
        Some(w) => w.rank(),
        None => {
            return Ok(if n == 0 { WeightMultiset::singleton(Weight::zero(0)) } else { WeightMultiset::new() });
        }
    };
    let mut layers: Vec<BTreeMap<Weight, BigUint>> = vec![BTreeMap::new(); n + 1];
    layers[0].insert(Weight::zero(rank), BigUint::one());
    for (w, m) in ws.iter() {
        let m = m.to_u64().expect("multiplicity fits in u64 for powers");
        let kmax = match kind {
            PowerKind::Symmetric => n as u64,
            PowerKind::Exterior => m.min(n as u64),
        };
        let coef = |k: u64| match kind {
            PowerKind::Symmetric => binomial(m + k - 1, k),
            PowerKind::Exterior => binomial(m, k),
        };
        let shifts: Vec<(Weight, BigUint)> = (0..=kmax).map(|k| (w.scale(k as i64), coef(k))).collect();
        let mut next: Vec<BTreeMap<Weight, BigUint>> = vec![BTreeMap::new(); n + 1];
        for (d, layer) in layers.iter().enumerate() {
            for (base, bm) in layer {
                for (k, (shift, c)) in shifts.iter().enumerate() {
                    if d + k > n {
                        break;
                    }
                    *next[d + k].entry(base + shift).or_default() += bm * c;
                }
            }
        }
        for layer in &next {
            if layer.len() > caps.max_entries {
                return Err(cap_error("multiset entries", layer.len(), caps.max_entries));
            }
        }
        layers = next;
    }
    Ok(WeightMultiset { entries: layers.swap_remove(n) })
}

/// Tensor product of `ws1` with `ws2` twisted `twist2` times:
/// `{σ + p^twist2 · τ ↦ m1 m2}`.
pub fn combine(ws1: &WeightMultiset, ws2: &WeightMultiset, twist2: u32, p: u64, caps: &Caps) -> Result<WeightMultiset> {
    let scale = pow_i64(p as i64, twist2);
    let mut out = WeightMultiset::new();
    for (tau, m2) in ws2.iter() {
        let shift = tau.scale(scale);
        for (sigma, m1) in ws1.iter() {
            out.insert(sigma + &shift, m1 * m2);
        }
        if out.len() > caps.max_entries {
            return Err(cap_error("multiset entries", out.len(), caps.max_entries));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::CartanType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::new(s.parse::<CartanType>().unwrap()).unwrap()
    }

    fn w(c: &[i64]) -> Weight {
        Weight::new(c.to_vec())
    }

    fn caps() -> Caps {
        Caps::default()
    }

    #[test]
    fn a1_character_of_three() {
        let a1 = rs("A1");
        let ch = weyl_character(&a1, &w(&[3]), &caps()).unwrap();
        let expected: WeightMultiset = [3, 1, -1, -3].iter().map(|&c| (w(&[c]), BigUint::one())).collect();
        assert_eq!(ch, expected);
    }

    #[test]
    fn a2_adjoint() {
        let a2 = rs("A2");
        let ch = weyl_character(&a2, &w(&[1, 1]), &caps()).unwrap();
        assert_eq!(ch.total_dimension(), BigUint::from(8u32));
        assert_eq!(ch.multiplicity(&w(&[0, 0])), BigUint::from(2u32));
        assert_eq!(ch.multiplicity(&w(&[1, 1])), BigUint::one());
    }

    #[test]
    fn trivial_character() {
        for t in ["A1", "B2", "G2", "E6"] {
            let r = rs(t);
            assert_eq!(weyl_character(&r, &r.zero(), &caps()).unwrap(), WeightMultiset::trivial(r.rank()));
        }
    }

    #[test]
    fn rejects_non_dominant_and_caps() {
        let a2 = rs("A2");
        assert!(matches!(weyl_character(&a2, &w(&[1, -1]), &caps()), Err(Error::InvalidInput(_))));
        let small = Caps { max_dimension: 7, ..Caps::default() };
        assert!(matches!(weyl_character(&a2, &w(&[1, 1]), &small), Err(Error::ResourceCap { .. })));
    }

    #[test]
    fn known_dimensions() {
        // adjoint representations have dimension rank + 2|Φ+|
        for t in ["B3", "C3", "D4", "G2", "F4", "E6", "E7", "E8"] {
            let r = rs(t);
            let adj = r.highest_root().weight.clone();
            let ch = weyl_character(&r, &adj, &caps()).unwrap();
            assert_eq!(ch.total_dimension(), BigUint::from(r.rank() + 2 * r.num_positive_roots()), "{t}");
            assert_eq!(ch.multiplicity(&r.zero()), BigUint::from(r.rank()), "{t}");
        }
    }

    #[test]
    fn freudenthal_matches_weyl_dimension_for_fundamentals() {
        for t in CartanType::all_up_to(4) {
            let r = RootSystem::new(t).unwrap();
            for i in 0..r.rank() {
                let lam = r.fundamental_weight(i);
                let ch = weyl_character(&r, &lam, &caps()).unwrap();
                assert_eq!(ch.total_dimension(), r.weyl_dimension(&lam), "{t} ω{}", i + 1);
                assert!(ch.is_weyl_stable(&r), "{t} ω{}", i + 1);
                assert_eq!(ch.multiplicity(&lam), BigUint::one());
            }
        }
    }

    #[test]
    fn nilradical_sizes() {
        assert_eq!(nilradical_dual_weights(&rs("A1")).len(), 1);
        let a2 = nilradical_dual_weights(&rs("A2"));
        assert_eq!(a2.len(), 3);
        assert!(a2.contains(&w(&[2, -1])) && a2.contains(&w(&[-1, 2])) && a2.contains(&w(&[1, 1])));
        assert_eq!(nilradical_dual_weights(&rs("G2")).len(), 6);
    }

    #[test]
    fn power_examples() {
        let a1 = rs("A1");
        let u1 = nilradical_dual_weights(&a1);
        assert_eq!(graded_power(PowerKind::Symmetric, &u1, 3, &caps()).unwrap(), WeightMultiset::singleton(w(&[6])));
        let a2 = rs("A2");
        let u2 = nilradical_dual_weights(&a2);
        let top = graded_power(PowerKind::Exterior, &u2, 3, &caps()).unwrap();
        assert_eq!(top, WeightMultiset::singleton(a2.rho().scale(2)));
        assert_eq!(graded_power(PowerKind::Exterior, &u2, 0, &caps()).unwrap(), WeightMultiset::trivial(2));
        assert!(graded_power(PowerKind::Exterior, &u2, 4, &caps()).unwrap().is_empty());
    }

    #[test]
    fn combine_examples() {
        let a1 = rs("A1");
        let u1 = nilradical_dual_weights(&a1);
        let triv = WeightMultiset::trivial(1);
        assert_eq!(combine(&u1, &triv, 3, 5, &caps()).unwrap(), u1);
        assert_eq!(combine(&u1, &u1, 1, 3, &caps()).unwrap(), WeightMultiset::singleton(w(&[8])));

        let a2 = rs("A2");
        let u2 = nilradical_dual_weights(&a2);
        let sq = combine(&u2, &u2, 0, 2, &caps()).unwrap();
        assert_eq!(sq.total_dimension(), BigUint::from(9u32));
        // α1 + α2 = (1,1): only α1⊗α2 and α2⊗α1
        assert_eq!(sq.multiplicity(&w(&[1, 1])), BigUint::from(2u32));
    }

    #[test]
    fn combine_respects_entry_cap() {
        let a2 = rs("A2");
        let u2 = nilradical_dual_weights(&a2);
        let tiny = Caps { max_entries: 2, ..Caps::default() };
        assert!(matches!(combine(&u2, &u2, 1, 3, &tiny), Err(Error::ResourceCap { .. })));
        assert!(matches!(graded_power(PowerKind::Symmetric, &u2, 3, &tiny), Err(Error::ResourceCap { .. })));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn power_dimensions_are_binomial(n in 0usize..6, t in prop::sample::select(vec!["A2", "B2", "G2", "A3"])) {
                let r = rs(t);
                let u = nilradical_dual_weights(&r);
                let d = r.num_positive_roots() as u64;
                let sym = graded_power(PowerKind::Symmetric, &u, n, &caps()).unwrap();
                let ext = graded_power(PowerKind::Exterior, &u, n, &caps()).unwrap();
                prop_assert_eq!(sym.total_dimension(), binomial(n as u64 + d - 1, n as u64));
                prop_assert_eq!(ext.total_dimension(), binomial(d, n as u64));
            }

            #[test]
            fn twists_compose(r1 in 0u32..3, r2 in 0u32..3, p in prop::sample::select(vec![2u64, 3, 5])) {
                let a2 = rs("A2");
                let u = nilradical_dual_weights(&a2);
                let ch = weyl_character(&a2, &w(&[1, 0]), &caps()).unwrap();
                let triv = WeightMultiset::trivial(2);
                // (u ⊗ ch^(r1))^(r2)-style composition: twisting ch by r1 then r2
                let once = combine(&triv, &ch, r1, p, &caps()).unwrap();
                let twice = combine(&u, &once, r2, p, &caps()).unwrap();
                let direct = combine(&u, &ch, r1 + r2, p, &caps()).unwrap();
                prop_assert_eq!(twice, direct);
            }

            #[test]
            fn combine_is_associative(r in 0u32..3) {
                let b2 = rs("B2");
                let u = nilradical_dual_weights(&b2);
                let ch = weyl_character(&b2, &w(&[0, 1]), &caps()).unwrap();
                let left = combine(&combine(&u, &ch, 0, 3, &caps()).unwrap(), &u, r, 3, &caps()).unwrap();
                let right = combine(&u, &combine(&ch, &u, r, 3, &caps()).unwrap(), 0, 3, &caps()).unwrap();
                prop_assert_eq!(left, right);
            }
        }
    }
}
