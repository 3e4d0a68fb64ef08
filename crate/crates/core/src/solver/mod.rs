//! Exact solvers for the four covering numbers.
//!
//! Each variant runs an iterative-deepening search on its objective: guest
//! count for global, layer count for union, per-vertex load for local and
//! folded. A refuted depth is a proved lower bound; the first certificate
//! closes the gap from above, so a finished run is exact and carries a
//! verified `Cover`. Runs that blow the budget report the bracket they
//! reached instead.
//!
//! Three engines split the work:
//!  - classes closed under edge deletion reduce injective covers to edge
//!    partitions ([`partition`]);
//!  - other classes get their guest images enumerated up front and searched
//!    as a set-cover problem ([`candidates`]);
//!  - the folded variant splits host vertices into copies and asks the split
//!    graph to be a disjoint union of members ([`folded`]).

mod bounds;
mod candidates;
mod folded;
pub mod naive;
mod partition;

pub use bounds::{lower_bound_unique_copies, BoundError, BoundTrace, UniqueCopiesBound};

use std::time::{Duration, Instant};

use crate::classes::{GuestClass, Strategy};
use crate::cover::{verify_cover, Claims, Cover, Variant};
use crate::graph::Graph;

#[derive(Debug, Clone)]
pub struct SolveBudget {
    /// Search nodes across all deepening rounds.
    pub node_limit: u64,
    pub time_limit: Duration,
    /// Cap on copies of one host vertex in folded search; `None` means the
    /// current objective s, which loses nothing. A smaller cap cuts the
    /// search off early: values above it come back undecided.
    pub multiplicity_cap: Option<usize>,
    /// Let one host edge be realized by several guest edges in folded
    /// search. Classes that cannot shed surplus edges get this switched on
    /// automatically (capped, and reported in the notes).
    pub edge_repetition: bool,
    pub repetition_cap: usize,
}

impl Default for SolveBudget {
    fn default() -> Self {
        SolveBudget {
            node_limit: 10_000_000,
            time_limit: Duration::from_secs(60),
            multiplicity_cap: None,
            edge_repetition: false,
            repetition_cap: 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Exact(usize),
    /// The budget ran out: the value is at least `lower`; `upper` is filled
    /// when some cover was found before the search stopped.
    Undecided { lower: usize, upper: Option<usize> },
}

#[derive(Debug, Clone)]
pub struct SolveResult {
    pub variant: Variant,
    pub outcome: SolveOutcome,
    pub certificate: Option<Cover>,
    /// One line per deepening event: counting bounds, refuted depths, the
    /// closing certificate.
    pub proof: String,
    pub notes: Vec<String>,
    pub stats: SearchStats,
}

impl SolveResult {
    pub fn exact_value(&self) -> Option<usize> {
        match self.outcome {
            SolveOutcome::Exact(v) => Some(v),
            SolveOutcome::Undecided { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("budget rejected: {0}")]
    BadBudget(&'static str),
    #[error("no member of class {class:?} can cover host edge ({0}, {1}): no cover exists", .edge.0, .edge.1)]
    NoCover { class: String, edge: (usize, usize) },
    #[error("class {class:?} has no {variant} solver: {why}")]
    Unsupported {
        class: String,
        variant: Variant,
        why: String,
    },
}

/// Solve one variant exactly, or bracket it within the budget.
pub fn solve(
    host: &Graph,
    class: &GuestClass,
    variant: Variant,
    budget: &SolveBudget,
) -> Result<SolveResult, SolveError> {
    check_budget(budget)?;
    let start = Instant::now();
    if host.m() == 0 {
        // Nothing to cover; the empty cover achieves 0 everywhere.
        let cover = Cover {
            host: host.clone(),
            guests: Vec::new(),
            claims: Claims {
                class_name: class.name().to_string(),
                injective: true,
                locality: 0,
                globality: 0,
                union_layers: match variant {
                    Variant::Union => Some(Vec::new()),
                    _ => None,
                },
            },
        };
        debug_assert!(verify_cover(&cover, class).valid);
        return Ok(SolveResult {
            variant,
            outcome: SolveOutcome::Exact(0),
            certificate: Some(cover),
            proof: format!("{variant} covering number 0: the host has no edges"),
            notes: Vec::new(),
            stats: SearchStats { nodes: 0, elapsed: start.elapsed() },
        });
    }
    match variant {
        Variant::Folded => folded::drive(host, class, budget, start),
        _ => match class.strategy() {
            Strategy::EdgeMonotone => partition::drive(host, class, variant, budget, start),
            Strategy::Candidates(kind) => {
                candidates::drive(host, class, variant, kind, budget, start)
            }
        },
    }
}

#[derive(Debug, Clone)]
pub struct ChainReport {
    /// One result per variant, in chain order: global, union, local, folded.
    pub results: Vec<(Variant, SolveResult)>,
    /// No decided pair violates global >= union >= local >= folded.
    pub chain_ok: bool,
    pub verdict: String,
}

/// Solve all four variants and check the chain on every decided pair.
pub fn chain_check(
    host: &Graph,
    class: &GuestClass,
    budget: &SolveBudget,
) -> Result<ChainReport, SolveError> {
    let mut results = Vec::new();
    for v in Variant::ALL {
        results.push((v, solve(host, class, v, budget)?));
    }
    let decided: Vec<(Variant, usize)> = results
        .iter()
        .filter_map(|(v, r)| r.exact_value().map(|k| (*v, k)))
        .collect();
    let mut chain_ok = true;
    let mut violation = String::new();
    for w in decided.windows(2) {
        if w[0].1 < w[1].1 {
            chain_ok = false;
            violation = format!(
                "; CHAIN VIOLATION: {} {} < {} {}",
                w[0].0, w[0].1, w[1].0, w[1].1
            );
            break;
        }
    }
    let parts: Vec<String> = results
        .iter()
        .map(|(v, r)| match r.outcome {
            SolveOutcome::Exact(k) => format!("{v} {k}"),
            SolveOutcome::Undecided { lower, upper } => match upper {
                Some(u) => format!("{v} undecided in [{lower}, {u}]"),
                None => format!("{v} undecided (>= {lower})"),
            },
        })
        .collect();
    let verdict = format!(
        "{}{}",
        parts.join(", "),
        if chain_ok { "; chain holds on decided values" } else { violation.as_str() }
    );
    Ok(ChainReport { results, chain_ok, verdict })
}

fn check_budget(b: &SolveBudget) -> Result<(), SolveError> {
    if b.node_limit == 0 {
        return Err(SolveError::BadBudget("node_limit must be positive"));
    }
    if b.time_limit.is_zero() {
        return Err(SolveError::BadBudget("time_limit must be positive"));
    }
    if b.multiplicity_cap == Some(0) {
        return Err(SolveError::BadBudget("multiplicity_cap must be positive"));
    }
    if b.repetition_cap == 0 {
        return Err(SolveError::BadBudget("repetition_cap must be positive"));
    }
    Ok(())
}

/// Shared budget meter. Sticky: once dead, every tick fails.
pub(crate) struct Ticker {
    nodes: u64,
    node_limit: u64,
    deadline: Instant,
    dead: bool,
}

impl Ticker {
    pub(crate) fn new(budget: &SolveBudget) -> Ticker {
        Ticker {
            nodes: 0,
            node_limit: budget.node_limit,
            deadline: Instant::now() + budget.time_limit,
            dead: false,
        }
    }

    /// Count one search node; false once the budget is gone. The clock is
    /// polled every 4096 nodes.
    pub(crate) fn tick(&mut self) -> bool {
        if self.dead {
            return false;
        }
        self.nodes += 1;
        if self.nodes >= self.node_limit
            || (self.nodes & 0xfff == 0 && Instant::now() >= self.deadline)
        {
            self.dead = true;
            return false;
        }
        true
    }

    /// Absorb work done by a helper with its own counter.
    pub(crate) fn charge(&mut self, n: u64) {
        self.nodes = self.nodes.saturating_add(n);
        if self.nodes >= self.node_limit {
            self.dead = true;
        }
    }

    pub(crate) fn remaining(&self) -> u64 {
        self.node_limit.saturating_sub(self.nodes)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes
    }
}

/// What one fixed-depth search round concluded.
pub(crate) enum Search {
    Found(Cover),
    Refuted,
    Exhausted,
}

/// Counting floor on per-vertex load: one guest visit covers at most
/// max_member_degree distinct edges at a host vertex, so a vertex of degree
/// d needs ceil(d / D) visits. Valid for the local and folded objectives.
pub(crate) fn degree_floor(host: &Graph, class: &GuestClass, proof: &mut Vec<String>) -> usize {
    let d = match class.max_member_degree() {
        Some(d) if d > 0 => d,
        _ => return 1,
    };
    let mut best = 1;
    let mut at = None;
    for v in 0..host.n() {
        let need = host.degree(v).div_ceil(d);
        if need > best {
            best = need;
            at = Some(v);
        }
    }
    if let Some(v) = at {
        proof.push(format!(
            "counting bound: vertex {v} has degree {} and a guest covers at most {d} of its edges, so the objective is at least {best}",
            host.degree(v)
        ));
    }
    best
}

/// Assemble an exact result; the certificate is re-verified on the spot.
#[allow(clippy::too_many_arguments)]
pub(crate) fn certified(
    variant: Variant,
    value: usize,
    cover: Cover,
    class: &GuestClass,
    proof: Vec<String>,
    notes: Vec<String>,
    ticker: &Ticker,
    start: Instant,
) -> SolveResult {
    let rep = verify_cover(&cover, class);
    debug_assert!(rep.valid, "solver certificate failed verification: {:?}", rep.diagnostics);
    let achieved = match variant {
        Variant::Global | Variant::Union => rep.achieved_globality,
        Variant::Local | Variant::Folded => rep.achieved_locality,
    };
    debug_assert_eq!(achieved, value, "certificate objective drifted from the search depth");
    SolveResult {
        variant,
        outcome: SolveOutcome::Exact(value),
        certificate: Some(cover),
        proof: proof.join("\n"),
        notes,
        stats: SearchStats { nodes: ticker.nodes(), elapsed: start.elapsed() },
    }
}

pub(crate) fn undecided(
    variant: Variant,
    lower: usize,
    upper: Option<usize>,
    proof: Vec<String>,
    notes: Vec<String>,
    ticker: &Ticker,
    start: Instant,
) -> SolveResult {
    SolveResult {
        variant,
        outcome: SolveOutcome::Undecided { lower, upper },
        certificate: None,
        proof: proof.join("\n"),
        notes,
        stats: SearchStats { nodes: ticker.nodes(), elapsed: start.elapsed() },
    }
}

#[cfg(test)]
mod tests;
