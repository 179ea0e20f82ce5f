//! Hill climbing over generator lists for small `max_i μ(F_i)/μ(F)`.
//!
//! Restart `r` draws from ChaCha8 seeded with `seed_from_u64(seed)` on
//! stream `r`. A restart starts from `1..=d` uniform non-empty generators,
//! then proposes one move per budget step (add, remove or replace a
//! generator, or toggle `∅` under [`EmptySetPolicy::Free`]) and keeps it
//! when the score does not get worse. Scores order feasible families
//! before infeasible ones, then by objective. The best family over all
//! restarts wins, ties broken by membership table.

use std::cmp::Ordering;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cube::{CubePoint, MeasureTable, SetFamily};
use crate::error::{Error, Result};
use crate::explore::union_closure;
use crate::rational::{serde_fraction, Rational};
use crate::verify::weighted_frankl_ratio;
use crate::weights::WeightVector;

/// Whether `∅` is added to every candidate, never added, or toggled by the
/// search.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmptySetPolicy {
    Always,
    Never,
    #[default]
    Free,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    /// Proposed moves per restart.
    pub budget: u64,
    pub restarts: u64,
    pub empty_set: EmptySetPolicy,
    /// Only families with `μ(F) ≥ q_max` count as feasible.
    pub constrained: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            budget: 1000,
            restarts: 4,
            empty_set: EmptySetPolicy::Free,
            constrained: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SearchResult {
    pub family: SetFamily,
    pub generators: Vec<CubePoint>,
    #[serde(with = "serde_fraction")]
    pub objective: Rational,
    pub feasible: bool,
    pub seed: u64,
    /// Restart that produced the result.
    pub restart: u64,
    /// Accepted moves in that restart.
    pub moves: u64,
    /// Families evaluated over all restarts.
    pub evaluations: u64,
}

#[derive(Debug, Clone)]
struct State {
    generators: Vec<CubePoint>,
    with_empty: bool,
    family: SetFamily,
    objective: Rational,
    feasible: bool,
}

impl State {
    fn score_cmp(&self, other: &State) -> Ordering {
        other
            .feasible
            .cmp(&self.feasible)
            .then_with(|| self.objective.cmp(&other.objective))
    }
}

struct Context<'a> {
    dim: usize,
    table: &'a MeasureTable,
    q_max: Rational,
    constrained: bool,
}

impl Context<'_> {
    fn evaluate(&self, generators: Vec<CubePoint>, with_empty: bool) -> State {
        let mut family = union_closure(self.dim, &generators).expect("generators are valid");
        if with_empty {
            family.insert(CubePoint::EMPTY).expect("valid point");
        }
        let objective = weighted_frankl_ratio(&family, self.table)
            .expect("dimensions checked")
            .expect("interior weights give a nonempty family positive measure");
        let feasible = !self.constrained
            || self.table.family(&family).expect("dimensions checked") >= self.q_max;
        State {
            generators,
            with_empty,
            family,
            objective,
            feasible,
        }
    }

    fn random_point(&self, rng: &mut ChaCha8Rng) -> CubePoint {
        CubePoint::from_mask(rng.random_range(1..1u32 << self.dim))
    }
}

struct RestartOutcome {
    state: State,
    restart: u64,
    moves: u64,
    evaluations: u64,
}

fn run_restart(ctx: &Context<'_>, config: &SearchConfig, seed: u64, restart: u64) -> RestartOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(restart);
    let count = rng.random_range(1..=ctx.dim);
    let generators: Vec<CubePoint> = (0..count).map(|_| ctx.random_point(&mut rng)).collect();
    let with_empty = match config.empty_set {
        EmptySetPolicy::Always => true,
        EmptySetPolicy::Never => false,
        EmptySetPolicy::Free => rng.random_bool(0.5),
    };
    let mut current = ctx.evaluate(generators, with_empty);
    let mut evaluations = 1;
    let mut moves = 0;
    let move_kinds = if config.empty_set == EmptySetPolicy::Free { 4 } else { 3 };
    for _ in 0..config.budget {
        let mut generators = current.generators.clone();
        let mut with_empty = current.with_empty;
        match rng.random_range(0..move_kinds) {
            0 => generators.push(ctx.random_point(&mut rng)),
            1 if generators.len() > 1 => {
                let i = rng.random_range(0..generators.len());
                generators.remove(i);
            }
            1 | 2 => {
                let i = rng.random_range(0..generators.len());
                generators[i] = ctx.random_point(&mut rng);
            }
            _ => with_empty = !with_empty,
        }
        let candidate = ctx.evaluate(generators, with_empty);
        evaluations += 1;
        if candidate.score_cmp(&current) != Ordering::Greater {
            current = candidate;
            moves += 1;
        }
    }
    RestartOutcome {
        state: current,
        restart,
        moves,
        evaluations,
    }
}

/// Searches union-closed families with a non-empty member for a small
/// largest weighted element frequency.
pub fn search_min_ratio(
    dim: usize,
    w: &WeightVector,
    config: &SearchConfig,
    seed: u64,
) -> Result<SearchResult> {
    if dim != w.dim() {
        return Err(Error::DimensionMismatch {
            expected: dim,
            found: w.dim(),
        });
    }
    w.require_interior()?;
    if config.restarts == 0 {
        return Err(Error::InvalidArgument("at least one restart is required".into()));
    }
    let table = MeasureTable::new(w);
    let ctx = Context {
        dim,
        table: &table,
        q_max: w.q_max(),
        constrained: config.constrained,
    };
    let outcomes: Vec<RestartOutcome> = (0..config.restarts)
        .into_par_iter()
        .map(|r| run_restart(&ctx, config, seed, r))
        .collect();
    let evaluations = outcomes.iter().map(|o| o.evaluations).sum();
    let best = outcomes
        .into_iter()
        .min_by(|a, b| {
            a.state
                .score_cmp(&b.state)
                .then_with(|| a.state.family.cmp(&b.state.family))
                .then_with(|| a.restart.cmp(&b.restart))
        })
        .expect("at least one restart");
    Ok(SearchResult {
        family: best.state.family,
        generators: best.state.generators,
        objective: best.state.objective,
        feasible: best.state.feasible,
        seed,
        restart: best.restart,
        moves: best.moves,
        evaluations,
    })
}
