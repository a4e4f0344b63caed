//! Black-box hidden functions γ: D_N → R with exact evaluation counting.
//!
//! A hidden function is constant and distinct on the left cosets of a hidden
//! subgroup H. Labels are the canonical coset representatives pushed through
//! a seeded pseudorandom permutation of [0, 2N), so solvers cannot exploit
//! label structure, yet every oracle is reproducible from its seed.
//!
//! Two access paths exist and are counted separately:
//! * [`DihedralOracle::evaluate`] is the black-box query the solvers are
//!   charged for;
//! * [`DihedralOracle::peek`] is a table read used by simulation backends
//!   (the circuit applies γ to every superposed input) and by promise
//!   verification; it is tallied as simulation cost only.
//!
//! The hidden subgroup itself is stored for the benefit of the test harness
//! and is never consulted by solver code paths.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Write};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{DihedralGroup, GroupElement, Subgroup};
use crate::rng::SplitMix64;

/// Largest N for which the full 2N-entry label table is precomputed.
/// Above this, labels are derived on demand from the coset structure.
const TABLE_LIMIT_N: u64 = 1 << 16;

/// An opaque oracle output. Comparable for equality only.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LabelValue(u64);

impl LabelValue {
    pub fn raw(self) -> u64 {
        self.0
    }
}

/// Seeded pseudorandom permutation of [0, domain) built from a four-round
/// Feistel network with cycle walking. Bijective by construction, so
/// distinct coset representatives always receive distinct labels.
#[derive(Clone, Debug)]
struct FeistelPrp {
    domain: u64,
    half_bits: u32,
    keys: [u64; 4],
}

impl FeistelPrp {
    fn new(domain: u64, seed: u64) -> Self {
        assert!(domain >= 1);
        let bits = 64 - (domain - 1).max(1).leading_zeros();
        let half_bits = bits.div_ceil(2).max(1);
        let mut rng = SplitMix64::new(seed);
        let keys = [
            rng.next_u64(),
            rng.next_u64(),
            rng.next_u64(),
            rng.next_u64(),
        ];
        Self {
            domain,
            half_bits,
            keys,
        }
    }

    fn mix(x: u64) -> u64 {
        let mut z = x;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    fn round(&self, value: u64) -> u64 {
        let mask = (1u64 << self.half_bits) - 1;
        let mut left = value >> self.half_bits;
        let mut right = value & mask;
        for key in self.keys {
            let f = Self::mix(right ^ key) & mask;
            let next_left = right;
            right = left ^ f;
            left = next_left;
        }
        (left << self.half_bits) | right
    }

    fn apply(&self, value: u64) -> u64 {
        debug_assert!(value < self.domain);
        let mut out = self.round(value);
        while out >= self.domain {
            out = self.round(out);
        }
        out
    }
}

enum LabelSource {
    Table(Vec<u64>),
    /// Coset representative computed on demand, then permuted.
    Lazy(FeistelPrp),
}

struct OracleCore {
    group: DihedralGroup,
    hidden: Option<Subgroup>,
    labels: LabelSource,
    evals: AtomicU64,
    sim_reads: AtomicU64,
}

impl OracleCore {
    fn raw_label(&self, g: GroupElement) -> u64 {
        match &self.labels {
            LabelSource::Table(table) => table[g.index(self.group)],
            LabelSource::Lazy(prp) => {
                let hidden = self
                    .hidden
                    .as_ref()
                    .expect("lazy oracle keeps its subgroup");
                let rep = hidden.coset_representative(g);
                prp.apply(rep.index(self.group) as u64)
            }
        }
    }

    fn evaluate(&self, g: GroupElement) -> LabelValue {
        self.evals.fetch_add(1, Ordering::Relaxed);
        LabelValue(self.raw_label(g))
    }

    fn peek(&self, g: GroupElement) -> LabelValue {
        self.sim_reads.fetch_add(1, Ordering::Relaxed);
        LabelValue(self.raw_label(g))
    }
}

/// Shared interface of the dihedral black boxes the sampler and solvers
/// consume: the root function on D_N and its quotient views on D_M.
pub trait DihedralOracle: Sync {
    fn group(&self) -> DihedralGroup;

    /// Black-box query; increments the evaluation counter by one.
    fn evaluate(&self, g: GroupElement) -> LabelValue;

    /// Simulation-side table read. Counted as simulation cost, not as a
    /// black-box evaluation.
    fn peek(&self, g: GroupElement) -> LabelValue;

    /// Charges `count` black-box evaluations without reading the table.
    /// Sampling backends use this to bill one evaluation per experiment shot.
    fn charge_evaluations(&self, count: u64);

    fn eval_count(&self) -> u64;

    fn sim_reads(&self) -> u64;
}

/// A hidden function γ: D_N → R fulfilling the subgroup promise.
#[derive(Clone)]
pub struct HiddenFunction {
    core: Arc<OracleCore>,
}

impl HiddenFunction {
    /// Builds γ for the hidden subgroup `hidden`, with labels permuted by
    /// `label_seed`. Rejects element sets that are not subgroups.
    pub fn build(group: DihedralGroup, hidden: &Subgroup, label_seed: u64) -> Result<Self> {
        Self::build_inner(group, hidden, label_seed, group.n() > TABLE_LIMIT_N)
    }

    #[cfg(test)]
    pub(crate) fn build_forced_lazy(
        group: DihedralGroup,
        hidden: &Subgroup,
        label_seed: u64,
    ) -> Result<Self> {
        Self::build_inner(group, hidden, label_seed, true)
    }

    fn build_inner(
        group: DihedralGroup,
        hidden: &Subgroup,
        label_seed: u64,
        lazy: bool,
    ) -> Result<Self> {
        if hidden.parent() != group {
            return Err(Error::NotClosed);
        }
        // Re-verify closure; the promise is meaningless for a non-subgroup.
        if !hidden.contains(group.identity()) {
            return Err(Error::NotClosed);
        }
        for &x in hidden.elements() {
            for &y in hidden.elements() {
                if !hidden.contains(group.multiply(x, y)) {
                    return Err(Error::NotClosed);
                }
            }
        }
        let prp = FeistelPrp::new(group.order(), label_seed);
        let labels = if lazy {
            LabelSource::Lazy(prp)
        } else {
            let table = group
                .elements()
                .map(|g| prp.apply(hidden.coset_representative(g).index(group) as u64))
                .collect();
            LabelSource::Table(table)
        };
        Ok(Self {
            core: Arc::new(OracleCore {
                group,
                hidden: Some(hidden.clone()),
                labels,
                evals: AtomicU64::new(0),
                sim_reads: AtomicU64::new(0),
            }),
        })
    }

    /// Wraps a raw label table (for example one read back from a dump).
    /// No ground truth is attached.
    pub fn from_table(group: DihedralGroup, table: Vec<u64>) -> Result<Self> {
        if table.len() as u64 != group.order() {
            return Err(Error::BadDump(format!(
                "expected {} labels, got {}",
                group.order(),
                table.len()
            )));
        }
        Ok(Self {
            core: Arc::new(OracleCore {
                group,
                hidden: None,
                labels: LabelSource::Table(table),
                evals: AtomicU64::new(0),
                sim_reads: AtomicU64::new(0),
            }),
        })
    }

    /// The hidden subgroup, for test assertions and harness scoring only.
    pub fn ground_truth(&self) -> Option<&Subgroup> {
        self.core.hidden.as_ref()
    }

    /// The restriction γ₁(x) = γ(x, 0) to the rotation subgroup Z_N.
    /// Evaluations count against this function's counter.
    pub fn restrict_to_cyclic(&self) -> CyclicFunction {
        CyclicFunction {
            core: Arc::clone(&self.core),
        }
    }

    /// Views γ as a function γ₂ on D_M where
    /// M = min{1 ≤ j ≤ N | (j,0) ∈ X₁}, or M = N for trivial X₁.
    /// `x1` must consist of rotations only. Evaluations delegate to the
    /// parent counter.
    pub fn quotient(&self, x1: &Subgroup) -> Result<QuotientFunction> {
        if !x1.is_rotation_only() {
            return Err(Error::ReflectionInRotations);
        }
        let m = x1
            .elements()
            .iter()
            .filter(|g| g.a() > 0)
            .map(|g| g.a())
            .min()
            .unwrap_or(self.core.group.n());
        Ok(QuotientFunction {
            core: Arc::clone(&self.core),
            m,
        })
    }

    /// True iff γ is constant on each left coset of `h` and distinct across
    /// cosets. Reads the table without charging evaluations.
    pub fn verify_promise(&self, h: &Subgroup) -> bool {
        verify_dihedral_promise(self, h)
    }
}

impl DihedralOracle for HiddenFunction {
    fn group(&self) -> DihedralGroup {
        self.core.group
    }

    fn evaluate(&self, g: GroupElement) -> LabelValue {
        self.core.evaluate(g)
    }

    fn peek(&self, g: GroupElement) -> LabelValue {
        self.core.peek(g)
    }

    fn charge_evaluations(&self, count: u64) {
        self.core.evals.fetch_add(count, Ordering::Relaxed);
    }

    fn eval_count(&self) -> u64 {
        self.core.evals.load(Ordering::Relaxed)
    }

    fn sim_reads(&self) -> u64 {
        self.core.sim_reads.load(Ordering::Relaxed)
    }
}

/// γ restricted to the rotations, as a function on Z_N.
#[derive(Clone)]
pub struct CyclicFunction {
    core: Arc<OracleCore>,
}

impl CyclicFunction {
    pub fn n(&self) -> u64 {
        self.core.group.n()
    }

    pub fn evaluate(&self, x: u64) -> LabelValue {
        self.core.evaluate(self.core.group.element(x as i64, 0))
    }

    pub fn peek(&self, x: u64) -> LabelValue {
        self.core.peek(self.core.group.element(x as i64, 0))
    }

    pub fn charge_evaluations(&self, count: u64) {
        self.core.evals.fetch_add(count, Ordering::Relaxed);
    }

    pub fn eval_count(&self) -> u64 {
        self.core.evals.load(Ordering::Relaxed)
    }

    /// Canonical generator d of the true hidden subgroup of γ₁, i.e. of
    /// H ∩ (Z_N × {0}): the smallest positive rotation amount, or 0 when the
    /// intersection is trivial. Test harness only.
    pub fn ground_truth_generator(&self) -> Option<u64> {
        self.core.hidden.as_ref().map(|h| {
            h.elements()
                .iter()
                .filter(|g| g.is_rotation() && g.a() > 0)
                .map(|g| g.a())
                .min()
                .unwrap_or(0)
        })
    }
}

/// γ considered as a function on the quotient D_M, evaluated through the
/// section (j, b) with 0 ≤ j < M.
#[derive(Clone)]
pub struct QuotientFunction {
    core: Arc<OracleCore>,
    m: u64,
}

impl QuotientFunction {
    pub fn m(&self) -> u64 {
        self.m
    }
}

impl DihedralOracle for QuotientFunction {
    fn group(&self) -> DihedralGroup {
        DihedralGroup::new(self.m)
    }

    fn evaluate(&self, g: GroupElement) -> LabelValue {
        debug_assert!(g.a() < self.m);
        self.core
            .evaluate(self.core.group.element(g.a() as i64, g.b()))
    }

    fn peek(&self, g: GroupElement) -> LabelValue {
        debug_assert!(g.a() < self.m);
        self.core.peek(self.core.group.element(g.a() as i64, g.b()))
    }

    fn charge_evaluations(&self, count: u64) {
        self.core.evals.fetch_add(count, Ordering::Relaxed);
    }

    fn eval_count(&self) -> u64 {
        self.core.evals.load(Ordering::Relaxed)
    }

    fn sim_reads(&self) -> u64 {
        self.core.sim_reads.load(Ordering::Relaxed)
    }
}

/// Checks the subgroup promise of any dihedral oracle against `h` by reading
/// the whole table: constant on each left coset of `h`, distinct across
/// cosets. Does not change the evaluation count.
pub fn verify_dihedral_promise<O: DihedralOracle>(f: &O, h: &Subgroup) -> bool {
    let group = f.group();
    if h.parent() != group {
        return false;
    }
    let mut label_of_coset: BTreeMap<GroupElement, LabelValue> = BTreeMap::new();
    let mut coset_of_label: HashMap<LabelValue, GroupElement> = HashMap::new();
    for g in group.elements() {
        let rep = h.coset_representative(g);
        let label = f.peek(g);
        match label_of_coset.get(&rep) {
            Some(&seen) if seen != label => return false,
            Some(_) => {}
            None => {
                label_of_coset.insert(rep, label);
            }
        }
        match coset_of_label.get(&label) {
            Some(&seen) if seen != rep => return false,
            Some(_) => {}
            None => {
                coset_of_label.insert(label, rep);
            }
        }
    }
    true
}

/// Cyclic analogue: γ₁ constant and distinct on cosets of ⟨d⟩ ≤ Z_N.
pub fn verify_cyclic_promise(f: &CyclicFunction, d: u64) -> bool {
    let n = f.n();
    let step = if d == 0 { n } else { d };
    let mut label_of_coset: BTreeMap<u64, LabelValue> = BTreeMap::new();
    let mut coset_of_label: HashMap<LabelValue, u64> = HashMap::new();
    for x in 0..n {
        let rep = x % step;
        let label = f.peek(x);
        match label_of_coset.get(&rep) {
            Some(&seen) if seen != label => return false,
            Some(_) => {}
            None => {
                label_of_coset.insert(rep, label);
            }
        }
        match coset_of_label.get(&label) {
            Some(&seen) if seen != rep => return false,
            Some(_) => {}
            None => {
                coset_of_label.insert(label, rep);
            }
        }
    }
    true
}

/// Writes the `dihedral-oracle v1` dump: a header line, then one line
/// `a b label` per element in (b, a)-lexicographic order.
pub fn write_oracle_dump<O: DihedralOracle, W: Write>(f: &O, out: &mut W) -> Result<()> {
    let group = f.group();
    writeln!(out, "dihedral-oracle v1 N={}", group.n())?;
    for g in group.elements() {
        writeln!(out, "{} {} {}", g.a(), g.b(), f.peek(g).raw())?;
    }
    Ok(())
}

/// Reads a dump produced by [`write_oracle_dump`] back into a replayable
/// oracle (with no attached ground truth).
pub fn read_oracle_dump<R: BufRead>(input: R) -> Result<HiddenFunction> {
    let mut lines = input.lines();
    let header = lines
        .next()
        .ok_or_else(|| Error::BadDump("empty file".into()))??;
    let n: u64 = header
        .strip_prefix("dihedral-oracle v1 N=")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::BadDump(format!("bad header: {header}")))?;
    if n == 0 {
        return Err(Error::BadDump("N must be positive".into()));
    }
    let group = DihedralGroup::new(n);
    let mut table = vec![0u64; group.order() as usize];
    let mut filled = vec![false; table.len()];
    for line in lines {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let parse = |p: Option<&str>| -> Result<u64> {
            p.and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::BadDump(format!("bad line: {line}")))
        };
        let a = parse(parts.next())?;
        let b = parse(parts.next())?;
        let label = parse(parts.next())?;
        if a >= n || b > 1 {
            return Err(Error::BadDump(format!("element out of range: {line}")));
        }
        let idx = (b * n + a) as usize;
        table[idx] = label;
        filled[idx] = true;
    }
    if !filled.iter().all(|&f| f) {
        return Err(Error::BadDump("missing elements".into()));
    }
    HiddenFunction::from_table(group, table)
}
