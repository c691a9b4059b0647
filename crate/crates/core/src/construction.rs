//! Random feasible timetables for the initial harmony memory.
//!
//! Lectures are scheduled one at a time. The next course is the one with the
//! fewest periods still open to it (saturation degree), ties going to the
//! course with the largest weighted conflict degree, then to the RNG. Each
//! lecture lands on a uniformly random feasible slot. A dead end (a course
//! with lectures left but no open period) throws the attempt away and starts
//! again from a fresh stream.

use std::collections::HashSet;

use rand::Rng;
use thiserror::Error;

use crate::cost::evaluate;
use crate::instance::CourseId;
use crate::memory::{HarmonyMemory, Member};
use crate::params::HsaParams;
use crate::problem::Problem;
use crate::rng::{derive_seed, rng_from_seed, SearchRng};
use crate::timetable::Timetable;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CourseState {
    pub course: CourseId,
    pub unscheduled: usize,
    pub available_periods: usize,
    pub conflict_degree: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructionError {
    #[error("no feasible timetable after {attempts} attempt(s)")]
    DeadEnd { attempts: usize },
    #[error("no feasible timetable found for the harmony memory")]
    NoFeasible,
}

/// Picks the course to schedule next, or `None` when nothing is left.
/// The choice depends only on the set of states, never on their order.
pub fn next_course(states: &[CourseState], rng: &mut SearchRng) -> Option<CourseId> {
    let key = |s: &CourseState| (s.available_periods, std::cmp::Reverse(s.conflict_degree));
    let best = states.iter().filter(|s| s.unscheduled > 0).map(key).min()?;
    let mut tied: Vec<CourseId> = states
        .iter()
        .filter(|s| s.unscheduled > 0 && key(s) == best)
        .map(|s| s.course)
        .collect();
    tied.sort_unstable();
    Some(if tied.len() == 1 {
        tied[0]
    } else {
        tied[rng.gen_range(0..tied.len())]
    })
}

/// Whether some free, suitable room is left for `course` in `period`.
pub fn period_open(tt: &Timetable, problem: &Problem, course: CourseId, period: usize) -> bool {
    let dims = problem.dims;
    !tt.period_blocked(problem, course, period)
        && (0..dims.rooms).any(|r| {
            let slot = dims.slot(r, period);
            tt.course_at(slot).is_none() && problem.matrices.slot_available(course, slot)
        })
}

/// Full recount of the periods still open to `course`.
pub fn available_period_count(tt: &Timetable, problem: &Problem, course: CourseId) -> usize {
    (0..problem.dims.periods())
        .filter(|&p| period_open(tt, problem, course, p))
        .count()
}

/// Feasible slots for a lecture of `course`, ascending.
pub fn feasible_slots(tt: &Timetable, problem: &Problem, course: CourseId) -> Vec<usize> {
    (0..problem.dims.slots())
        .filter(|&s| tt.is_feasible_placement(problem, course, s))
        .collect()
}

/// Incrementally maintained saturation data for one construction attempt.
pub(crate) struct Saturation {
    pub(crate) states: Vec<CourseState>,
    open: Vec<bool>,
    periods: usize,
}

impl Saturation {
    pub(crate) fn new(tt: &Timetable, problem: &Problem) -> Self {
        let periods = problem.dims.periods();
        let mut open = vec![false; problem.num_courses() * periods];
        let states = (0..problem.num_courses())
            .map(|c| {
                let mut count = 0;
                for p in 0..periods {
                    let o = period_open(tt, problem, c, p);
                    open[c * periods + p] = o;
                    count += o as usize;
                }
                CourseState {
                    course: c,
                    unscheduled: problem.lectures(c) - tt.scheduled(c),
                    available_periods: count,
                    conflict_degree: problem.matrices.conflict_degree(c),
                }
            })
            .collect();
        Saturation {
            states,
            open,
            periods,
        }
    }

    /// Refreshes every course's openness at `period` after a placement there.
    pub(crate) fn placed(
        &mut self,
        tt: &Timetable,
        problem: &Problem,
        course: CourseId,
        period: usize,
    ) {
        self.states[course].unscheduled -= 1;
        for c in 0..self.states.len() {
            let idx = c * self.periods + period;
            if !self.open[idx] {
                continue;
            }
            if !period_open(tt, problem, c, period) {
                self.open[idx] = false;
                self.states[c].available_periods -= 1;
            }
        }
    }
}

fn construct_once(problem: &Problem, rng: &mut SearchRng) -> Option<Timetable> {
    let mut tt = Timetable::new(problem);
    let mut sat = Saturation::new(&tt, problem);
    let dims = problem.dims;
    let mut candidates = Vec::with_capacity(dims.slots());
    while let Some(course) = next_course(&sat.states, rng) {
        if sat.states[course].available_periods == 0 {
            return None;
        }
        candidates.clear();
        for p in 0..dims.periods() {
            if !sat.open[course * sat.periods + p] {
                continue;
            }
            for r in 0..dims.rooms {
                let slot = dims.slot(r, p);
                if tt.course_at(slot).is_none() && problem.matrices.slot_available(course, slot) {
                    candidates.push(slot);
                }
            }
        }
        let slot = candidates[rng.gen_range(0..candidates.len())];
        tt.place_unchecked(problem, course, slot);
        sat.placed(&tt, problem, course, dims.period_of(slot));
    }
    Some(tt)
}

/// Builds one complete feasible timetable, restarting up to `max_attempts`
/// times. Attempt `k` draws from the stream derived from `(seed, k)`.
pub fn construct_feasible(
    problem: &Problem,
    seed: u64,
    max_attempts: usize,
) -> Result<Timetable, ConstructionError> {
    for attempt in 0..max_attempts {
        let mut rng = rng_from_seed(derive_seed(seed, &[attempt as u64]));
        if let Some(tt) = construct_once(problem, &mut rng) {
            return Ok(tt);
        }
    }
    Err(ConstructionError::DeadEnd {
        attempts: max_attempts,
    })
}

/// Fills a harmony memory with up to `hms` distinct feasible timetables,
/// sorted by total penalty.
///
/// Members are built independently (in parallel under `Exec::Parallel`).
/// Duplicates are rebuilt from a later stream, at most
/// `construction_attempts` rounds; members that still fail are left out and
/// show up as the memory's shortfall.
pub fn fill_memory(
    problem: &Problem,
    params: &HsaParams,
) -> Result<HarmonyMemory, ConstructionError> {
    let mut members: Vec<(usize, Member)> = Vec::with_capacity(params.hms);
    let mut seen: HashSet<Vec<i32>> = HashSet::with_capacity(params.hms);
    let mut pending: Vec<usize> = (0..params.hms).collect();
    let mut round = 0u64;
    while !pending.is_empty() && (round as usize) < params.construction_attempts.max(1) {
        let built = params.exec.map(pending.len(), |i| {
            let seed = derive_seed(params.seed, &[0xC0, pending[i] as u64, round]);
            construct_feasible(problem, seed, params.construction_attempts)
        });
        let mut retry = Vec::new();
        for (idx, result) in pending.iter().zip(built) {
            if let Ok(tt) = result {
                if seen.insert(tt.slots().to_vec()) {
                    let cost = evaluate(&tt, problem, &params.weights);
                    members.push((
                        *idx,
                        Member {
                            timetable: tt,
                            cost,
                        },
                    ));
                } else {
                    retry.push(*idx);
                }
            }
        }
        pending = retry;
        round += 1;
    }
    if members.is_empty() {
        return Err(ConstructionError::NoFeasible);
    }
    members.sort_by_key(|(idx, _)| *idx);
    Ok(HarmonyMemory::new(
        members.into_iter().map(|(_, m)| m).collect(),
        params.hms,
    ))
}
