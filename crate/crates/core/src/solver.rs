//! Whittaker-vector search, constructive descent, nilpotency probes,
//! bounded submodule membership and the lemma-verification harness.
//!
//! Search spaces are truncated but defect computations are exact, so the
//! solver is sound (no spurious Whittaker vectors from discarded terms) and
//! complete within the truncation.

use std::collections::{BTreeMap, VecDeque};

use num::traits::Zero;

use crate::algebra::Generator;
use crate::error::{Error, Result};
use crate::linalg::{ColumnSpace, InsertOutcome};
use crate::modules::{
    act, basis_enumerate, defect, BasisIndex, ModuleSpec, ModuleVector, WhittakerMap,
};
use crate::partitions::{enumerate_pairs, Partition, Pseudopartition};
use crate::rational::{rat, Rational};

/// Truncation bounds for the solver's search spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Cap on `|lambda + mu|`.
    pub degree: u32,
    /// Cap on `lambda(0)`.
    pub l0: u32,
    /// Cap on `|t|` (universal modules only).
    pub zdeg: u32,
    /// Cap on the operator index for saturation probes.
    pub gen_index: u32,
}

impl Default for Bounds {
    fn default() -> Bounds {
        Bounds {
            degree: 3,
            l0: 3,
            zdeg: 2,
            gen_index: 6,
        }
    }
}

/// A basis of the exact solution space
/// `{ v in the truncated span : defect(L1, v) = defect(L2, v) = defect(I1, v) = 0 }`.
///
/// The three operators suffice because `psi` vanishes on `[n+, n+]` and
/// `L_1, L_2, I_1` generate `n+`. Defects are computed exactly, never
/// truncated, so every returned vector is a genuine Whittaker vector.
pub fn whittaker_solve(spec: &ModuleSpec, bounds: &Bounds) -> Vec<ModuleVector> {
    let basis = basis_enumerate(spec, bounds.degree, bounds.l0, bounds.zdeg);
    let ops = [Generator::L(1), Generator::L(2), Generator::I(1)];
    let mut space: ColumnSpace<(u8, BasisIndex)> = ColumnSpace::new();
    let mut solutions = Vec::new();
    for (j, idx) in basis.iter().enumerate() {
        let v = ModuleVector::basis(spec.clone(), idx.clone());
        let mut column: BTreeMap<(u8, BasisIndex), Rational> = BTreeMap::new();
        for (op_slot, &op) in ops.iter().enumerate() {
            for (out_idx, c) in defect(op, &v).terms() {
                column.insert((op_slot as u8, out_idx.clone()), c.clone());
            }
        }
        if let InsertOutcome::Dependent(combo) = space.insert(j, &column) {
            let mut sol = ModuleVector::zero(spec.clone());
            for (k, c) in combo {
                sol.add_term(basis[k].clone(), c);
            }
            solutions.push(sol);
        }
    }
    solutions
}

/// Snapshot of the descent case analysis for the current vector: the top
/// degree `N`, the index pairs attaining it, and the minimal positive part
/// index `k` over those pairs.
#[derive(Debug, Clone)]
pub struct DescentState {
    pub current: ModuleVector,
    pub n: u64,
    pub lambda_n: Vec<(Pseudopartition, Partition)>,
    pub k: Option<u32>,
    pub trace: Vec<Generator>,
}

impl DescentState {
    fn analyze(v: &ModuleVector, trace: Vec<Generator>) -> DescentState {
        let n = v.maxdeg().unwrap_or(0);
        let lambda_n: Vec<(Pseudopartition, Partition)> = v
            .terms()
            .filter(|(i, _)| i.degree() == n)
            .map(|(i, _)| (i.lambda.clone(), i.mu.clone()))
            .collect();
        let k = lambda_n
            .iter()
            .filter_map(|(lambda, mu)| {
                let lk = lambda.min_positive_part();
                let mk = mu.min_part();
                match (lk, mk) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (Some(a), None) => Some(a),
                    (None, Some(b)) => Some(b),
                    (None, None) => None,
                }
            })
            .min();
        DescentState {
            current: v.clone(),
            n,
            lambda_n,
            k,
            trace,
        }
    }

    /// The operator the proof's case split would apply next: `I_{k+1}` when
    /// some top term has `lambda(k) != 0`, else `L_{k+1}`; for pure
    /// `L_0`-polynomials (degree 0), `I_1`.
    fn primary_operator(&self) -> Generator {
        match self.k {
            None => Generator::I(1),
            Some(k) => {
                let lambda_hit = self
                    .lambda_n
                    .iter()
                    .any(|(lambda, _)| lambda.multiplicity(k) != 0);
                if lambda_hit {
                    Generator::I(k as i64 + 1)
                } else {
                    Generator::L(k as i64 + 1)
                }
            }
        }
    }
}

/// Well-founded descent measure. The top-degree stratum leads: killing an
/// `I` factor of a term like `L_0^a I_{-1}^b w` parks the `L_0` power in a
/// lower stratum, so a plain `(maxdeg, max_l0)` pair would not decrease;
/// ordering by the stratum's own `L_0` height and size first does.
type Measure = (u64, u32, usize, u32, usize);

fn measure(v: &ModuleVector) -> Measure {
    let n = v.maxdeg().unwrap_or(0);
    let top_l0 = v
        .terms()
        .filter(|(i, _)| i.degree() == n)
        .map(|(i, _)| i.lambda.zeros())
        .max()
        .unwrap_or(0);
    let top_count = v.terms().filter(|(i, _)| i.degree() == n).count();
    (n, top_l0, top_count, v.max_l0().unwrap_or(0), v.len())
}

/// Constructive descent: repeatedly apply dot-action operators chosen by the
/// case analysis until only a multiple of the cyclic vector remains. Each
/// accepted step strictly decreases the well-founded measure
/// `(maxdeg, top-stratum L_0 height, top-stratum size, max_l0, term count)`;
/// when the primary choice fails to, every `E_n` with `n <= maxdeg + 2` is
/// tried (`I` before `L`, smaller index first) before giving up.
pub fn descend(v: &ModuleVector) -> Result<(Vec<Generator>, Rational)> {
    if v.is_zero() {
        return Err(Error::Usage("descend requires a nonzero vector".into()));
    }
    if v.spec().is_universal() {
        return Err(Error::Usage(
            "descend operates on a reduced module".into(),
        ));
    }
    if v.spec().psi().i1().is_zero() {
        return Err(Error::DescentNeedsPsiI1);
    }

    let mut state = DescentState::analyze(v, Vec::new());
    loop {
        if let Some(c) = state.current.as_cyclic_multiple() {
            return Ok((state.trace, c));
        }
        let before = measure(&state.current);
        let max_n = state.n as i64 + 2;
        let primary = state.primary_operator();
        let mut candidates = vec![primary];
        for n in 1..=max_n {
            candidates.push(Generator::I(n));
        }
        for n in 1..=max_n {
            candidates.push(Generator::L(n));
        }
        candidates.dedup();

        let mut accepted = None;
        let mut all_zero = true;
        for op in candidates {
            let next = defect(op, &state.current);
            if next.is_zero() {
                continue;
            }
            all_zero = false;
            if measure(&next) < before {
                accepted = Some((op, next));
                break;
            }
        }
        match accepted {
            Some((op, next)) => {
                let mut trace = state.trace;
                trace.push(op);
                state = DescentState::analyze(&next, trace);
            }
            None => {
                let text = crate::expr::format_vector(&state.current);
                return Err(if all_zero {
                    // every defect vanishes, so this is a Whittaker vector;
                    // it is not a multiple of w, which contradicts the
                    // uniqueness statement the descent realizes
                    Error::WhittakerCounterexample(text)
                } else {
                    Error::DescentStuck {
                        vector: text,
                        max_index: max_n,
                    }
                });
            }
        }
    }
}

/// Smallest `K <= cap` with `defect(g, .)^K v = 0`.
pub fn nilpotency_index(g: Generator, v: &ModuleVector, cap: u32) -> Result<u32> {
    if g.index() <= 0 || g.is_central() {
        return Err(Error::Usage(format!(
            "nilpotency probe needs a positive-index generator, got {g}"
        )));
    }
    if cap == 0 {
        return Err(Error::Usage("nilpotency cap must be at least 1".into()));
    }
    let mut cur = v.clone();
    for k in 1..=cap {
        cur = defect(g, &cur);
        if cur.is_zero() {
            return Ok(k);
        }
    }
    Err(Error::CapExhausted {
        generator: g.to_string(),
        cap,
    })
}

/// One spanning vector of the saturated span: `ops` applied left to right to
/// `gens[generator]` (so `ops = [a, b]` denotes `a (b gens[i])`).
#[derive(Debug, Clone)]
pub struct SpanVector {
    pub ops: Vec<Generator>,
    pub generator: usize,
    pub vector: ModuleVector,
}

/// A witness term: `coeff` times the span vector `span`.
#[derive(Debug, Clone)]
pub struct WitnessTerm {
    pub coeff: Rational,
    pub span: usize,
}

/// Outcome of the bounded membership probe.
#[derive(Debug, Clone)]
pub enum Membership {
    /// The target equals the witnessed combination of [`SpanVector`]s.
    Member(Vec<WitnessTerm>),
    /// Not reachable inside the caps; says nothing beyond them.
    UnknownWithinBounds,
}

/// Result of a membership probe, with the spanning set found by saturation.
pub struct MembershipReport {
    pub spanning: Vec<SpanVector>,
    pub outcome: Membership,
}

/// Saturate `span(gens)` under `act(E_n, .)` for `|n| <= gen_index` and
/// decide membership of `target` by exact rank computation. Products with a
/// term above the degree or `L_0` caps halt that branch (they are never
/// truncated into the space).
pub fn submodule_membership(
    target: &ModuleVector,
    gens: &[ModuleVector],
    bounds: &Bounds,
) -> Result<MembershipReport> {
    if gens.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    let spec = gens[0].spec().clone();
    if spec.is_universal() {
        return Err(Error::Usage(
            "membership probes operate on a reduced module".into(),
        ));
    }
    if gens.iter().any(|g| g.spec() != &spec) || target.spec() != &spec {
        return Err(Error::SpecMismatch);
    }
    let within = |v: &ModuleVector| {
        v.maxdeg().unwrap_or(0) <= bounds.degree as u64
            && v.max_l0().unwrap_or(0) <= bounds.l0
    };
    if !gens.iter().all(within) {
        return Err(Error::Usage(
            "a generator already exceeds the degree bounds".into(),
        ));
    }

    let mut ops = Vec::new();
    for n in -(bounds.gen_index as i64)..=bounds.gen_index as i64 {
        ops.push(Generator::L(n));
        if n != 0 {
            // I_0 and the z_i act by scalars; they never enlarge the span
            ops.push(Generator::I(n));
        }
    }

    let mut space: ColumnSpace<BasisIndex> = ColumnSpace::new();
    let mut spanning: Vec<SpanVector> = Vec::new();
    let mut queue: VecDeque<usize> = VecDeque::new();

    let try_insert = |space: &mut ColumnSpace<BasisIndex>,
                          spanning: &mut Vec<SpanVector>,
                          queue: &mut VecDeque<usize>,
                          sv: SpanVector| {
        let column: BTreeMap<BasisIndex, Rational> = sv
            .vector
            .terms()
            .map(|(i, c)| (i.clone(), c.clone()))
            .collect();
        let label = spanning.len();
        if let InsertOutcome::Independent = space.insert(label, &column) {
            spanning.push(sv);
            queue.push_back(label);
        }
    };

    for (i, g) in gens.iter().enumerate() {
        if g.is_zero() {
            continue;
        }
        try_insert(
            &mut space,
            &mut spanning,
            &mut queue,
            SpanVector {
                ops: Vec::new(),
                generator: i,
                vector: g.clone(),
            },
        );
    }

    while let Some(si) = queue.pop_front() {
        for &op in &ops {
            let next = act(op, &spanning[si].vector);
            if next.is_zero() || !within(&next) {
                continue;
            }
            let mut ops_chain = vec![op];
            ops_chain.extend_from_slice(&spanning[si].ops);
            let generator = spanning[si].generator;
            try_insert(
                &mut space,
                &mut spanning,
                &mut queue,
                SpanVector {
                    ops: ops_chain,
                    generator,
                    vector: next,
                },
            );
        }
    }

    let column: BTreeMap<BasisIndex, Rational> = target
        .terms()
        .map(|(i, c)| (i.clone(), c.clone()))
        .collect();
    let outcome = match space.express(&column) {
        Some(combo) => Membership::Member(
            combo
                .into_iter()
                .map(|(span, coeff)| WitnessTerm { coeff, span })
                .collect(),
        ),
        None => Membership::UnknownWithinBounds,
    };
    Ok(MembershipReport { spanning, outcome })
}

/// Instance ranges for the lemma harness. Each lemma reads the fields it
/// needs: `a_max`/`k_max` bound the power-word family, `m_max` the operator
/// index, `deg_max`/`l0_max` the basis enumeration.
#[derive(Debug, Clone, Copy)]
pub struct LemmaRanges {
    pub a_max: u32,
    pub k_max: u32,
    pub m_max: u32,
    pub deg_max: u32,
    pub l0_max: u32,
}

impl Default for LemmaRanges {
    fn default() -> LemmaRanges {
        LemmaRanges {
            a_max: 3,
            k_max: 3,
            m_max: 6,
            deg_max: 4,
            l0_max: 2,
        }
    }
}

/// One failed instance.
#[derive(Debug, Clone)]
pub struct Failure {
    pub parameters: String,
    pub expected: String,
    pub got: String,
}

/// Outcome of a lemma verification run.
#[derive(Debug, Clone)]
pub struct Report {
    pub lemma_id: String,
    pub instances: u64,
    pub failures: Vec<Failure>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

pub const LEMMA_IDS: [&str; 9] = [
    "3.1", "3.2i", "3.2ii", "3.2iii", "3.3i", "3.3ii", "3.3iii", "4.2i", "4.2ii",
];

/// Check one of the degree-bound lemmas on every instance in range,
/// computing the left side exactly through the modules layer, extracting the
/// claimed leading term and bounding the residual.
pub fn verify_lemma(psi: &WhittakerMap, id: &str, ranges: &LemmaRanges) -> Result<Report> {
    let spec = ModuleSpec::universal(psi.clone())?;
    let mut harness = Harness {
        spec,
        instances: 0,
        failures: Vec::new(),
    };
    match id {
        "3.1" => harness.lemma_3_1(ranges),
        "3.2i" => harness.lemma_3_2_i(ranges),
        "3.2ii" => harness.lemma_3_2_ii(ranges),
        "3.2iii" => harness.lemma_3_2_iii(ranges),
        "3.3i" => harness.lemma_3_3_i(ranges),
        "3.3ii" => harness.lemma_3_3_ii(ranges),
        "3.3iii" => harness.lemma_3_3_iii(ranges),
        "4.2i" => harness.lemma_4_2_i(ranges),
        "4.2ii" => harness.lemma_4_2_ii(ranges),
        _ => return Err(Error::UnknownLemma(id.to_string())),
    }
    Ok(Report {
        lemma_id: id.to_string(),
        instances: harness.instances,
        failures: harness.failures,
    })
}

struct Harness {
    spec: ModuleSpec,
    instances: u64,
    failures: Vec<Failure>,
}

fn maxdeg_i(v: &ModuleVector) -> i64 {
    v.maxdeg().map(|d| d as i64).unwrap_or(i64::MIN)
}

fn max_l0_i(v: &ModuleVector) -> i64 {
    v.max_l0().map(|d| d as i64).unwrap_or(i64::MIN)
}

impl Harness {
    fn basis(&self, idx: BasisIndex) -> ModuleVector {
        ModuleVector::basis(self.spec.clone(), idx)
    }

    fn fail(&mut self, parameters: String, expected: String, got: String) {
        self.failures.push(Failure {
            parameters,
            expected,
            got,
        });
    }

    /// Check the leading coefficient at `lead` and strip it off; on mismatch
    /// records a failure and returns `None`.
    fn split_leading(
        &mut self,
        params: &str,
        value: &ModuleVector,
        lead: &BasisIndex,
        expected: &Rational,
    ) -> Option<ModuleVector> {
        let got = value.coefficient(lead);
        if &got != expected {
            self.fail(
                params.to_string(),
                format!("leading coefficient {expected}"),
                format!("{got}"),
            );
            return None;
        }
        let mut rest = value.clone();
        rest.add_term(lead.clone(), -expected.clone());
        Some(rest)
    }

    /// `[L_{k+2}, L_{-k}^a] w = v - a(2k+2) psi(L_2) L_{-k}^{a-1} w` with
    /// `maxdeg(v) < k(a-1)` for `k > 0` and `max_l0(v) < a - 1` for `k = 0`.
    fn lemma_3_1(&mut self, r: &LemmaRanges) {
        let psi_l2 = self.spec.psi().l2().clone();
        for a in 1..=r.a_max {
            for k in 0..=r.k_max {
                self.instances += 1;
                let params = format!("a={a}, k={k}");
                let idx = power_index(k, a);
                let lhs = defect(Generator::L(k as i64 + 2), &self.basis(idx));
                let coeff = rat(-(a as i64) * (2 * k as i64 + 2)) * &psi_l2;
                let lead = power_index(k, a - 1);
                let Some(residual) = self.split_leading(&params, &lhs, &lead, &coeff) else {
                    continue;
                };
                if k > 0 {
                    let bound = k as i64 * (a as i64 - 1);
                    if maxdeg_i(&residual) >= bound {
                        self.fail(
                            params,
                            format!("maxdeg(residual) < {bound}"),
                            format!("{}", maxdeg_i(&residual)),
                        );
                    }
                } else {
                    let bound = a as i64 - 1;
                    if max_l0_i(&residual) >= bound {
                        self.fail(
                            params,
                            format!("max_l0(residual) < {bound}"),
                            format!("{}", max_l0_i(&residual)),
                        );
                    }
                }
            }
        }
    }

    /// `maxdeg([I_m, L_{-lambda} I_{-mu}] w) <= |lambda + mu| - m + 1`.
    fn lemma_3_2_i(&mut self, r: &LemmaRanges) {
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let deg = (lambda.size() + mu.size()) as i64;
            for m in 1..=r.m_max as i64 {
                self.instances += 1;
                let v = self.basis(pair_index(&lambda, &mu));
                let lhs = defect(Generator::I(m), &v);
                let bound = deg - m + 1;
                if maxdeg_i(&lhs) > bound {
                    self.fail(
                        format!("lambda={lambda:?}, mu={mu:?}, m={m}"),
                        format!("maxdeg <= {bound}"),
                        format!("{}", maxdeg_i(&lhs)),
                    );
                }
            }
        }
    }

    /// `[I_{k+1}, L_{-k}^a I_{-mu}] w = v - a(k+1) psi(I_1) I_{-mu} L_{-k}^{a-1} w`.
    ///
    /// Residual bound: every term has degree `< |lambda + mu| - k`, except
    /// that for `k = 0` terms of full degree are allowed when their `L_0`
    /// exponent is `< a - 1`.
    fn lemma_3_2_ii(&mut self, r: &LemmaRanges) {
        let psi_i1 = self.spec.psi().i1().clone();
        for k in 0..=r.deg_max {
            // lambda = (k^a): for k = 0 the L_0 cap limits a, else the degree does
            let a_hi = r.deg_max.checked_div(k).unwrap_or(r.l0_max);
            for a in 1..=a_hi {
                for mu_size in 0..=(r.deg_max - a * k) {
                    for mu in crate::partitions::partitions_of(mu_size) {
                        self.instances += 1;
                        let params = format!("a={a}, k={k}, mu={mu:?}");
                        let mut idx = power_index(k, a);
                        idx.mu = mu.clone();
                        let total = idx.degree() as i64;
                        let lhs = defect(Generator::I(k as i64 + 1), &self.basis(idx));
                        let coeff = rat(-(a as i64) * (k as i64 + 1)) * &psi_i1;
                        let mut lead = power_index(k, a - 1);
                        lead.mu = mu.clone();
                        let Some(residual) = self.split_leading(&params, &lhs, &lead, &coeff)
                        else {
                            continue;
                        };
                        self.check_residual_split(&params, &residual, total - k as i64, k, a as i64 - 1);
                    }
                }
            }
        }
    }

    /// `[I_{k+1}, L_{-lambda} I_{-mu}] w = v - (k+1) lambda(k) psi(I_1)
    /// L_{-lambda'} I_{-mu} w` for `k` the minimal part of `lambda`.
    fn lemma_3_2_iii(&mut self, r: &LemmaRanges) {
        let psi_i1 = self.spec.psi().i1().clone();
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let Some(k) = lambda.min_part() else {
                continue; // needs lambda != 0
            };
            self.instances += 1;
            let params = format!("lambda={lambda:?}, mu={mu:?}, k={k}");
            let idx = pair_index(&lambda, &mu);
            let total = idx.degree() as i64;
            let mult = lambda.multiplicity(k);
            let lhs = defect(Generator::I(k as i64 + 1), &self.basis(idx));
            let coeff = rat(-(k as i64 + 1) * mult as i64) * &psi_i1;
            let mut shrunk = lambda.clone();
            shrunk.remove_part(k);
            let lead = pair_index(&shrunk, &mu);
            let Some(residual) = self.split_leading(&params, &lhs, &lead, &coeff) else {
                continue;
            };
            self.check_residual_split(&params, &residual, total - k as i64, k, mult as i64 - 1);
        }
    }

    /// Shared residual check for the two leading-term lemmas: for `k > 0`
    /// the whole residual must drop below `deg_bound`; for `k = 0` a term of
    /// full degree is fine as long as its `L_0` exponent is below
    /// `l0_bound`.
    fn check_residual_split(
        &mut self,
        params: &str,
        residual: &ModuleVector,
        deg_bound: i64,
        k: u32,
        l0_bound: i64,
    ) {
        for (idx, _) in residual.terms() {
            let deg = idx.degree() as i64;
            let ok = if k > 0 {
                deg < deg_bound
            } else {
                deg < deg_bound || (idx.lambda.zeros() as i64) < l0_bound
            };
            if !ok {
                self.fail(
                    params.to_string(),
                    if k > 0 {
                        format!("residual degree < {deg_bound}")
                    } else {
                        format!("residual degree < {deg_bound} or L_0 exponent < {l0_bound}")
                    },
                    format!("term of degree {deg}, L_0 exponent {}", idx.lambda.zeros()),
                );
                return;
            }
        }
    }

    /// `maxdeg([L_m, L_{-lambda} I_{-mu}] w) <= |lambda + mu| - m + 2`.
    fn lemma_3_3_i(&mut self, r: &LemmaRanges) {
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let deg = (lambda.size() + mu.size()) as i64;
            for m in 1..=r.m_max as i64 {
                self.instances += 1;
                let v = self.basis(pair_index(&lambda, &mu));
                let lhs = defect(Generator::L(m), &v);
                let bound = deg - m + 2;
                if maxdeg_i(&lhs) > bound {
                    self.fail(
                        format!("lambda={lambda:?}, mu={mu:?}, m={m}"),
                        format!("maxdeg <= {bound}"),
                        format!("{}", maxdeg_i(&lhs)),
                    );
                }
            }
        }
    }

    /// If `lambda` and `mu` have no parts `<= k`, then
    /// `maxdeg([L_{k+1}, L_{-lambda} I_{-mu}] w) <= |lambda + mu| - k - 1`.
    fn lemma_3_3_ii(&mut self, r: &LemmaRanges) {
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            for k in 0..=r.k_max {
                let lambda_clear =
                    lambda.zeros() == 0 && lambda.min_positive_part().is_none_or(|p| p > k);
                let mu_clear = mu.min_part().is_none_or(|p| p > k);
                if !lambda_clear || !mu_clear {
                    continue;
                }
                self.instances += 1;
                let deg = (lambda.size() + mu.size()) as i64;
                let v = self.basis(pair_index(&lambda, &mu));
                let lhs = defect(Generator::L(k as i64 + 1), &v);
                let bound = deg - k as i64 - 1;
                if maxdeg_i(&lhs) > bound {
                    self.fail(
                        format!("lambda={lambda:?}, mu={mu:?}, k={k}"),
                        format!("maxdeg <= {bound}"),
                        format!("{}", maxdeg_i(&lhs)),
                    );
                }
            }
        }
    }

    /// If `lambda` has no parts `<= k` and `k` is the minimal part of `mu`,
    /// then `[L_{k+1}, L_{-lambda} I_{-mu}] w = v - k psi(I_1) mu(k)
    /// L_{-lambda} I_{-mu'} w` with `maxdeg(v) < |lambda + mu| - k`.
    fn lemma_3_3_iii(&mut self, r: &LemmaRanges) {
        let psi_i1 = self.spec.psi().i1().clone();
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let Some(k) = mu.min_part() else {
                continue;
            };
            let lambda_clear =
                lambda.zeros() == 0 && lambda.min_positive_part().is_none_or(|p| p > k);
            if !lambda_clear {
                continue;
            }
            self.instances += 1;
            let params = format!("lambda={lambda:?}, mu={mu:?}, k={k}");
            let idx = pair_index(&lambda, &mu);
            let total = idx.degree() as i64;
            let mult = mu.multiplicity(k);
            let lhs = defect(Generator::L(k as i64 + 1), &self.basis(idx));
            let coeff = rat(-(k as i64) * mult as i64) * &psi_i1;
            let mut shrunk = mu.clone();
            shrunk.remove_part(k);
            let lead = pair_index(&lambda, &shrunk);
            let Some(residual) = self.split_leading(&params, &lhs, &lead, &coeff) else {
                continue;
            };
            let bound = total - k as i64;
            if maxdeg_i(&residual) >= bound {
                self.fail(
                    params,
                    format!("maxdeg(residual) < {bound}"),
                    format!("{}", maxdeg_i(&residual)),
                );
            }
        }
    }

    /// Dot-action confinement: every term of `E_n . (L_{-lambda} I_{-mu} w)`
    /// satisfies `|lambda' + mu'| + lambda'(0) <= |lambda + mu| + lambda(0)`.
    fn lemma_4_2_i(&mut self, r: &LemmaRanges) {
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let budget = lambda.size() + mu.size() + lambda.zeros() as u64;
            let v = self.basis(pair_index(&lambda, &mu));
            for n in 1..=r.m_max as i64 {
                for g in [Generator::L(n), Generator::I(n)] {
                    self.instances += 1;
                    let lhs = defect(g, &v);
                    for (idx, _) in lhs.terms() {
                        let got = idx.degree() + idx.lambda.zeros() as u64;
                        if got > budget {
                            self.fail(
                                format!("lambda={lambda:?}, mu={mu:?}, op={g}"),
                                format!("degree + L_0 exponent <= {budget}"),
                                format!("{got}"),
                            );
                            break;
                        }
                    }
                }
            }
        }
    }

    /// Dot-action vanishing: `E_n . (L_{-lambda} I_{-mu} w) = 0` whenever
    /// `n > |lambda + mu| + 2`.
    fn lemma_4_2_ii(&mut self, r: &LemmaRanges) {
        for (lambda, mu) in enumerate_pairs(r.deg_max, r.l0_max) {
            let deg = (lambda.size() + mu.size()) as i64;
            let v = self.basis(pair_index(&lambda, &mu));
            for n in 1..=r.m_max.max(8) as i64 {
                if n <= deg + 2 {
                    continue;
                }
                for g in [Generator::L(n), Generator::I(n)] {
                    self.instances += 1;
                    let lhs = defect(g, &v);
                    if !lhs.is_zero() {
                        self.fail(
                            format!("lambda={lambda:?}, mu={mu:?}, op={g}"),
                            "zero defect".to_string(),
                            crate::expr::format_vector(&lhs),
                        );
                    }
                }
            }
        }
    }
}

/// `lambda = (k^a)` as a basis index (for `k = 0` this is `L_0^a`).
fn power_index(k: u32, a: u32) -> BasisIndex {
    let mut lambda = Pseudopartition::new();
    lambda.add_part(k, a);
    BasisIndex {
        t: [0; 4],
        lambda,
        mu: Partition::new(),
    }
}

fn pair_index(lambda: &Pseudopartition, mu: &Partition) -> BasisIndex {
    BasisIndex {
        t: [0; 4],
        lambda: lambda.clone(),
        mu: mu.clone(),
    }
}
