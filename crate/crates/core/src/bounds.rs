//! Closed-form thresholds: `B_s`-vanishing, stability constants, the
//! numerical lemma behind `G`-vanishing, finite-group vanishing ranges,
//! generic-cohomology thresholds and the comparison against the older
//! `(e, f)` bounds.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{
    ceil, ceil_log, floor_i64, floor_log, floor_log_rational, int, is_prime, opt_rational_str, pow_big, rational_str,
    Rational,
};
use crate::error::{invalid, Error, Result};
use crate::modchar::WeightMultiset;
use crate::rootsys::{CartanType, Family, RootSystem};
use crate::weightcomb::{b_invariant, module_stats, p_adic_digits, structural_constants, t_invariant};

/// Which result a threshold comes from. The serialized names are the stable
/// identifiers used in reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ThresholdTag {
    #[serde(rename = "P241a")]
    BsVanishingEven,
    #[serde(rename = "P241b")]
    BsVanishingOdd,
    #[serde(rename = "P241c")]
    BsVanishingOddTopDigit,
    #[serde(rename = "P311")]
    BVanishing,
    #[serde(rename = "T321")]
    GExtVanishing,
    #[serde(rename = "T511")]
    StabilityConstant,
    #[serde(rename = "T521")]
    GoodFiltrationStability,
    #[serde(rename = "P621")]
    TwistedExtVanishing,
    #[serde(rename = "T711")]
    FiniteGroupVanishing,
    #[serde(rename = "T811")]
    Generic,
    #[serde(rename = "T821")]
    GenericDegreeOne,
    #[serde(rename = "T831")]
    GenericRankOne,
    #[serde(rename = "CPSVDK")]
    PriorGeneric,
}

impl ThresholdTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ThresholdTag::BsVanishingEven => "P241a",
            ThresholdTag::BsVanishingOdd => "P241b",
            ThresholdTag::BsVanishingOddTopDigit => "P241c",
            ThresholdTag::BVanishing => "P311",
            ThresholdTag::GExtVanishing => "T321",
            ThresholdTag::StabilityConstant => "T511",
            ThresholdTag::GoodFiltrationStability => "T521",
            ThresholdTag::TwistedExtVanishing => "P621",
            ThresholdTag::FiniteGroupVanishing => "T711",
            ThresholdTag::Generic => "T811",
            ThresholdTag::GenericDegreeOne => "T821",
            ThresholdTag::GenericRankOne => "T831",
            ThresholdTag::PriorGeneric => "CPSVDK",
        }
    }
}

impl fmt::Display for ThresholdTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The inputs a report was computed from.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct InputsEcho {
    pub p: u64,
    pub m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cartan_type: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_module: Option<u64>,
    /// Further named inputs, rationals written as `a/b`.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdReport {
    pub theorem_tag: ThresholdTag,
    #[serde(with = "opt_rational_str")]
    pub e: Option<Rational>,
    pub f: Option<i64>,
    #[serde(with = "rational_str")]
    pub s_min: Rational,
    pub r_min: Option<i64>,
    pub conditions: Vec<String>,
    pub inputs_echo: InputsEcho,
    /// Every candidate that was evaluated, when this report is a selection.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub considered: Vec<ThresholdReport>,
}

impl ThresholdReport {
    fn new(tag: ThresholdTag, e: Rational, f: i64, r_min: i64, inputs: InputsEcho) -> Self {
        ThresholdReport {
            theorem_tag: tag,
            s_min: e.clone(),
            e: Some(e),
            f: Some(f),
            r_min: Some(r_min),
            conditions: Vec::new(),
            inputs_echo: inputs,
            considered: Vec::new(),
        }
    }

    fn with_condition(mut self, c: impl Into<String>) -> Self {
        self.conditions.push(c.into());
        self
    }

    /// Smallest integer `s` allowed by the report.
    pub fn s_min_integer(&self) -> i64 {
        crate::arith::ceil_i64(&self.s_min)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BsVariant {
    A,
    B,
    C,
}

impl std::str::FromStr for BsVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "a" => Ok(BsVariant::A),
            "b" => Ok(BsVariant::B),
            "c" => Ok(BsVariant::C),
            other => invalid(format!("unknown variant {other:?}, expected a, b or c")),
        }
    }
}

/// Variants applicable to a prime: `a` for `p = 2`, `b` and `c` otherwise.
pub fn variants_for(p: u64) -> &'static [BsVariant] {
    if p == 2 {
        &[BsVariant::A]
    } else {
        &[BsVariant::B, BsVariant::C]
    }
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        invalid(format!("{p} is not prime"))
    }
}

fn check_variant(p: u64, variant: BsVariant) -> Result<()> {
    match (p == 2, variant) {
        (true, BsVariant::A) | (false, BsVariant::B | BsVariant::C) => Ok(()),
        (true, v) => invalid(format!("variant {v:?} needs an odd prime")),
        (false, _) => invalid("variant a needs p = 2"),
    }
}

/// Smallest `s` (as a rational) for which `H^m(B_s, λ) = 0` is guaranteed,
/// where `d = ⟨λ, α̃^∨⟩ ≥ 1`.
pub fn bs_vanish_threshold(d: u64, p: u64, m: u64, variant: BsVariant) -> Result<Rational> {
    check_prime(p)?;
    check_variant(p, variant)?;
    if d == 0 {
        return invalid("the threshold needs ⟨λ, α̃^∨⟩ ≥ 1");
    }
    let t = int(i64::from(ceil_log(p, d + 1)));
    let m = int(m as i64);
    Ok(match variant {
        BsVariant::A => m + t,
        BsVariant::B => m / int(p as i64 - 2) + t,
        BsVariant::C => {
            let digits = p_adic_digits(d, p);
            let top = *digits.digits.last().expect("d >= 1 has digits");
            let q = int(p as i64 - 2);
            m / &q + t + (int(top as i64) / q - Rational::one())
        }
    })
}

/// `H^m(B_s, λ) = 0` by the given variant.
pub fn bs_vanishing_holds(d: u64, p: u64, s: u64, m: u64, variant: BsVariant) -> Result<bool> {
    Ok(int(s as i64) >= bs_vanish_threshold(d, p, m, variant)?)
}

/// `Ext^m_G(M^{(s)}, H^0(λ)) = 0` for dominant `λ ≠ 0` with `d = ⟨λ, α̃^∨⟩`.
/// The same condition gives `H^m(B, λ − p^s μ) = 0`.
pub fn g_ext_vanishing_holds(d: u64, p: u64, s: u64, m: u64) -> Result<bool> {
    let variant = if p == 2 { BsVariant::A } else { BsVariant::B };
    bs_vanishing_holds(d, p, s, m, variant)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StabilityConstants {
    /// `H^m(G, M^{(s)}) ≅ H^m(G, M^{(s+1)})` for `s ≥ C`.
    #[serde(with = "rational_str")]
    pub c: Rational,
    /// The bound `F(m)` valid when `H^n(G_1, k)^{(-1)}` has a good filtration for `n ≤ m`.
    #[serde(with = "rational_str")]
    pub f: Rational,
    pub notes: Vec<String>,
}

pub fn stability_constants(rs: &RootSystem, p: u64, m: u64) -> Result<StabilityConstants> {
    check_prime(p)?;
    let hv = rs.dual_coxeter_number() as u64;
    let mr = int(m as i64);
    let c = if p == 2 {
        &mr + int(i64::from(ceil_log(2, 2 * (hv - 1) + 1))) - Rational::one()
    } else {
        &mr / int(p as i64 - 2) + int(i64::from(ceil_log(p, 2 * (p - 1) * (hv - 1) + 1))) - Rational::one()
    };
    let f = match (p, m) {
        (2, _) => mr.clone(),
        (_, 0 | 1) => Rational::zero(),
        _ => &mr / int(p as i64 - 2),
    };
    let mut notes = vec!["F(m) assumes H^n(G_1,k)^(-1) has a good filtration for n <= m".to_string()];
    let h = rs.coxeter_number() as u64;
    if p != 2 && p + 1 >= h {
        notes.push(format!("p >= h-1 = {}: the good filtration holds, so s >= m/(p-2) suffices", h - 1));
    }
    if m <= 2 {
        let unconditional = match (p, m) {
            (2, _) => format!("s >= {m} suffices without a filtration hypothesis"),
            (_, 0 | 1) => "s >= 0 suffices without a filtration hypothesis".to_string(),
            _ => format!("s >= 2/{} suffices without a filtration hypothesis", p - 2),
        };
        notes.push(unconditional);
    }
    Ok(StabilityConstants { c, f, notes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LemmaPart {
    A,
    B,
    C,
}

/// Parts of the numerical lemma that apply at `p`.
pub fn lemma_parts_for(p: u64) -> &'static [LemmaPart] {
    if p == 2 {
        &[LemmaPart::A]
    } else {
        &[LemmaPart::B, LemmaPart::C]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub hypothesis_holds: bool,
    pub conclusion_holds: bool,
}

impl LemmaOutcome {
    pub fn is_counterexample(&self) -> bool {
        self.hypothesis_holds && !self.conclusion_holds
    }
}

/// Evaluates `p^{t-1} ≤ (p^{s+f-1} − p^s)/(p^{s+f} − 1) + p^{s+f}/(p^{s+f} − 1) · k`
/// (and its variants) exactly; the conclusion is `s ≥ t`.
pub fn exponent_lemma(p: u64, s: u32, f: u32, t: u32, part: LemmaPart) -> Result<LemmaOutcome> {
    check_prime(p)?;
    match (p == 2, part) {
        (true, LemmaPart::A) | (false, LemmaPart::B | LemmaPart::C) => {}
        _ => return invalid(format!("part {part:?} does not apply at p = {p}")),
    }
    if s == 0 || f == 0 || t == 0 {
        return invalid("s, f and t must be at least 1");
    }
    let q = Rational::from_integer(pow_big(p, s + f));
    let ps = Rational::from_integer(pow_big(p, s));
    let denom = &q - Rational::one();
    let sr = int(s as i64);
    let pm2 = int(p as i64 - 2);
    let rhs = match part {
        LemmaPart::A | LemmaPart::B => {
            let k = if part == LemmaPart::A { sr } else { sr * pm2 };
            (Rational::from_integer(pow_big(p, s + f - 1)) - &ps) / &denom + &q / &denom * k
        }
        LemmaPart::C => (&q - &ps) / &denom + &q / &denom * (sr * pm2 - Rational::one()),
    };
    let lhs = Rational::from_integer(pow_big(p, t - 1));
    Ok(LemmaOutcome { hypothesis_holds: lhs <= rhs, conclusion_holds: s >= t })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaScan {
    pub primes: Vec<u64>,
    pub max: u32,
    pub evaluations: usize,
    pub hypotheses_met: usize,
    pub counterexamples: Vec<LemmaCounterexample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaCounterexample {
    pub p: u64,
    pub s: u32,
    pub f: u32,
    pub t: u32,
    pub part: LemmaPart,
}

/// Evaluates every applicable part over `s, f, t ∈ [1, max]` for each prime.
pub fn scan_exponent_lemma(primes: &[u64], max: u32) -> Result<LemmaScan> {
    let mut scan =
        LemmaScan { primes: primes.to_vec(), max, evaluations: 0, hypotheses_met: 0, counterexamples: vec![] };
    for &p in primes {
        for &part in lemma_parts_for(p) {
            for s in 1..=max {
                for f in 1..=max {
                    for t in 1..=max {
                        let out = exponent_lemma(p, s, f, t, part)?;
                        scan.evaluations += 1;
                        scan.hypotheses_met += usize::from(out.hypothesis_holds);
                        if out.is_counterexample() {
                            scan.counterexamples.push(LemmaCounterexample { p, s, f, t, part });
                        }
                    }
                }
            }
        }
    }
    Ok(scan)
}

/// `Ext^m_G(V(λ)^{(s+f)}, M^{(s)} ⊗ H^0(λ)) = 0` for every dominant `λ ≠ 0`.
pub fn twisted_ext_vanishing_holds(p: u64, m: u64, s: u64, f: u64, b_module: u64) -> Result<bool> {
    check_prime(p)?;
    let t = u64::from(t_invariant(b_module, p));
    if p == 2 {
        return Ok(s >= m && f > t);
    }
    let e = int(m as i64) / int(p as i64 - 2);
    let floor_e = floor_i64(&e) as u64;
    Ok(int(s as i64) >= e && s + f > floor_e + t)
}

pub fn twisted_ext_report(p: u64, m: u64, b_module: u64) -> Result<ThresholdReport> {
    check_prime(p)?;
    let t = i64::from(t_invariant(b_module, p));
    let inputs = InputsEcho { p, m, b_module: Some(b_module), ..Default::default() };
    Ok(if p == 2 {
        ThresholdReport::new(ThresholdTag::TwistedExtVanishing, int(m as i64), t + 1, m as i64 + t + 1, inputs)
            .with_condition(format!("s >= {m}"))
            .with_condition(format!("f >= {}", t + 1))
    } else {
        let e = int(m as i64) / int(p as i64 - 2);
        let r = floor_i64(&e) + t + 1;
        ThresholdReport::new(ThresholdTag::TwistedExtVanishing, e.clone(), t, r, inputs)
            .with_condition(format!("s >= {}", crate::arith::rational_to_string(&e)))
            .with_condition(format!("s + f >= {r}"))
    })
}

/// `H^m(G(F_q), k) = 0` for `0 < m <` the returned value, `q = p^r`.
pub fn finite_group_vanishing_range(p: u64, r: u64) -> Result<u64> {
    check_prime(p)?;
    if r == 0 {
        return invalid("r must be at least 1");
    }
    Ok(if p == 2 { r } else { r * (p - 2) })
}

/// The vanishing range re-derived from [`twisted_ext_vanishing_holds`] at `M = k`:
/// the least `m` for which no split `s + f = r` gives vanishing.
pub fn vanishing_range_from_twisted_ext(p: u64, r: u64) -> Result<u64> {
    let mut m = 0;
    while (0..=r).any(|s| twisted_ext_vanishing_holds(p, m, s, r - s, 0).unwrap_or(false)) {
        m += 1;
    }
    Ok(m)
}

pub fn finite_group_report(p: u64, r: u64) -> Result<ThresholdReport> {
    let top = finite_group_vanishing_range(p, r)?;
    Ok(ThresholdReport {
        theorem_tag: ThresholdTag::FiniteGroupVanishing,
        e: None,
        f: None,
        s_min: Rational::zero(),
        r_min: Some(r as i64),
        conditions: vec![format!("H^m(G(F_q),k)=0 for 0<m<{top}")],
        inputs_echo: InputsEcho { p, m: top, ..Default::default() },
        considered: vec![],
    })
}

fn generic_inputs(rs: &RootSystem, p: u64, m: u64, b_module: u64) -> InputsEcho {
    InputsEcho { p, m, cartan_type: Some(rs.cartan_type().to_string()), b_module: Some(b_module), ..Default::default() }
}

/// Every generic-cohomology threshold that applies to `(Φ, p, m)`.
pub fn generic_candidates(rs: &RootSystem, p: u64, m: u64, b_module: u64) -> Result<Vec<ThresholdReport>> {
    check_prime(p)?;
    let f = i64::from(t_invariant(b_module, p));
    let inputs = generic_inputs(rs, p, m, b_module);
    let is_a1 = rs.cartan_type() == CartanType { family: Family::A, rank: 1 };
    let mut out = Vec::new();

    let e = if p == 2 { int(m as i64) } else { int(m as i64) / int(p as i64 - 2) };
    let r = floor_i64(&e) + f + 1;
    out.push(ThresholdReport::new(ThresholdTag::Generic, e, f, r, inputs.clone()).with_condition("any type, m >= 0"));

    if m == 1 && p != 2 {
        let mut rep = ThresholdReport::new(ThresholdTag::GenericDegreeOne, Rational::zero(), f, f + 1, inputs.clone())
            .with_condition("m = 1, p odd");
        if is_a1 && p == 3 {
            rep.r_min = Some((f + 1).max(2));
            rep = rep.with_condition("type A1 with p = 3 also needs r >= 2");
        }
        out.push(rep);
    }

    if is_a1 && p != 2 {
        let rep = if p >= 5 {
            let e = ceil(&(int(m as i64 - 1) / int(p as i64 - 2))).max(0.into());
            let e = Rational::from_integer(e);
            let r = floor_i64(&e) + f + 1;
            ThresholdReport::new(ThresholdTag::GenericRankOne, e, f, r, inputs.clone())
                .with_condition("type A1, p >= 5: e = ceil((m-1)/(p-2))")
        } else {
            let s = int((m as i64 - 1).max(0));
            let r = m as i64 + 1 + i64::from(floor_log(3, b_module + 1));
            ThresholdReport::new(ThresholdTag::GenericRankOne, s, f, r, inputs.clone())
                .with_condition("type A1, p = 3: s >= m-1, r >= m+1+floor(log3(b(M)+1))")
        };
        out.push(rep);
    }
    Ok(out)
}

/// Picks the strongest candidate: one that is no worse in both the integer
/// `s` bound and `r_min` than every other, smallest `e` among those; otherwise
/// the smallest `r_min`, then smallest `s`.
fn select_strongest(candidates: &[ThresholdReport]) -> usize {
    let key = |c: &ThresholdReport| (c.s_min_integer(), c.r_min.unwrap_or(i64::MAX));
    let dominant: Vec<usize> = (0..candidates.len())
        .filter(|&i| {
            let (si, ri) = key(&candidates[i]);
            candidates.iter().all(|c| {
                let (s, r) = key(c);
                si <= s && ri <= r
            })
        })
        .collect();
    if let Some(&best) = dominant.iter().min_by(|&&a, &&b| candidates[a].s_min.cmp(&candidates[b].s_min)) {
        return best;
    }
    (0..candidates.len())
        .min_by_key(|&i| {
            let (s, r) = key(&candidates[i]);
            (r, s)
        })
        .expect("at least one candidate")
}

/// Generic-cohomology threshold: `H^m(G(F_q), M) ≅ H^m(G, M^{(s)})` for
/// `s ≥ s_min` and `r ≥ r_min`.
pub fn generic_thresholds(rs: &RootSystem, p: u64, m: u64, b_module: u64) -> Result<ThresholdReport> {
    let candidates = generic_candidates(rs, p, m, b_module)?;
    let best = select_strongest(&candidates);
    let mut report = candidates[best].clone();
    report.conditions.push(format!(
        "selected from {}",
        candidates.iter().map(|c| c.theorem_tag.as_str()).collect::<Vec<_>>().join(", ")
    ));
    report.considered = candidates;
    Ok(report)
}

/// The older generic-cohomology bounds, with `f` already shifted down by one
/// so that `r ≥ ⌊e⌋ + f + 1`; the unshifted value is kept as `raw_f`.
pub fn cpsvdk_thresholds(rs: &RootSystem, p: u64, m: u64, c_module: &Rational, tp_max: u64) -> Result<ThresholdReport> {
    check_prime(p)?;
    if c_module < &Rational::zero() {
        return invalid("c(M) must be non-negative");
    }
    let (c, t) = structural_constants(rs);
    let (t, mi) = (t as i64, m as i64);
    let x = int(t) * c_module + Rational::one();
    let f = i64::from(floor_log_rational(p, &x)) + 1;
    let e = if p == 2 {
        (c * t * mi - 1).max(0)
    } else {
        let q = p as i64 - 1;
        let first = (c * t * mi - 1).div_euclid(q);
        let second = (c * tp_max as i64 * (mi - 1) - 1).div_euclid(q) + 1;
        first.max(second).max(0)
    };
    let mut inputs = generic_inputs(rs, p, m, 0);
    inputs.b_module = None;
    inputs.extra.insert("c".into(), c.to_string());
    inputs.extra.insert("t".into(), t.to_string());
    inputs.extra.insert("c_module".into(), crate::arith::rational_to_string(c_module));
    inputs.extra.insert("tp_max".into(), tp_max.to_string());
    inputs.extra.insert("raw_f".into(), (f + 1).to_string());
    Ok(ThresholdReport::new(ThresholdTag::PriorGeneric, int(e), f, e + f + 1, inputs)
        .with_condition("t_p taken as the maximum over the weights of M"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub uniform: ThresholdReport,
    pub cpsvdk: ThresholdReport,
    /// `cpsvdk.f − uniform.f`.
    pub f_delta: i64,
    /// `cpsvdk.e − uniform.e`.
    #[serde(with = "rational_str")]
    pub e_delta: Rational,
    /// Odd `p` with `m = 1`, or type `A1`.
    pub exception_flag: bool,
}

/// Both generic thresholds for the module with character `module`.
/// A negative `f_delta` is reported as a contradiction.
pub fn compare_thresholds(rs: &RootSystem, p: u64, m: u64, module: &WeightMultiset) -> Result<ComparisonReport> {
    let b = b_invariant(rs, module)?.value();
    let stats = module_stats(rs, module, p)?;
    let uniform = generic_thresholds(rs, p, m, b)?;
    let mut cpsvdk = cpsvdk_thresholds(rs, p, m, &stats.c_module, stats.t_p_max)?;
    cpsvdk.inputs_echo.b_module = Some(b);
    cpsvdk.inputs_echo.extra.insert("d_module".into(), stats.d_module.to_string());
    let f_delta = cpsvdk.f.unwrap() - uniform.f.unwrap();
    let e_delta = cpsvdk.e.clone().unwrap() - uniform.e.clone().unwrap();
    let is_a1 = rs.cartan_type() == CartanType { family: Family::A, rank: 1 };
    let report = ComparisonReport { uniform, cpsvdk, f_delta, e_delta, exception_flag: (p != 2 && m == 1) || is_a1 };
    if f_delta < 0 {
        return Err(Error::Contradiction(format!(
            "{} p={p} m={m}: the uniform f exceeds the older f by {}",
            rs.cartan_type(),
            -f_delta
        )));
    }
    Ok(report)
}
