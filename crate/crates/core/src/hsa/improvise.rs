//! Building one new harmony: memory consideration column by column, random
//! consideration for whatever is left, one-level backtracking repair, then
//! pitch adjustment of the memory-considered lectures.

use rand::seq::SliceRandom;
use rand::Rng;

use super::pitch::{apply_pitch, select_pitch_procedure};
use crate::construction::feasible_slots;
use crate::instance::CourseId;
use crate::memory::HarmonyMemory;
use crate::params::HsaParams;
use crate::problem::Problem;
use crate::rng::SearchRng;
use crate::timetable::{Timetable, EMPTY};

/// Repair ran out of iterations; the improvisation has to start over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RepairFailed;

/// Most frequent value of column `slot` across the memory, [`EMPTY`]
/// included. Frequency ties go to the course with the fewest available
/// periods, then the largest conflict degree, then the RNG. `EMPTY` loses
/// every tie against a course.
pub fn memory_consideration(
    hm: &HarmonyMemory,
    slot: usize,
    problem: &Problem,
    rng: &mut SearchRng,
) -> i32 {
    let mut counts: Vec<(i32, usize)> = Vec::new();
    for m in hm.members() {
        let v = m.timetable.slots()[slot];
        match counts.iter_mut().find(|(x, _)| *x == v) {
            Some((_, n)) => *n += 1,
            None => counts.push((v, 1)),
        }
    }
    let top = counts
        .iter()
        .map(|&(_, n)| n)
        .max()
        .expect("empty harmony memory");
    let mut tied: Vec<i32> = counts
        .iter()
        .filter(|&&(_, n)| n == top)
        .map(|&(v, _)| v)
        .collect();
    if tied.len() == 1 {
        return tied[0];
    }
    tied.retain(|&v| v != EMPTY);
    if tied.len() == 1 {
        return tied[0];
    }
    let m = &problem.matrices;
    let key = |v: i32| {
        (
            m.available_periods(v as CourseId),
            std::cmp::Reverse(m.conflict_degree(v as CourseId)),
        )
    };
    let best = tied.iter().map(|&v| key(v)).min().expect("non-empty tie");
    tied.retain(|&v| key(v) == best);
    tied.sort_unstable();
    tied[rng.gen_range(0..tied.len())]
}

/// One-level backtracking repair.
///
/// Each iteration takes a random unscheduled lecture. It goes straight into a
/// free feasible slot when one exists; otherwise it takes a slot whose only
/// obstacle is the lecture sitting there, and that lecture joins the
/// unscheduled list. Lectures with neither option go back on the list.
pub fn repair(
    tt: &mut Timetable,
    unscheduled: &mut Vec<CourseId>,
    problem: &Problem,
    cap: usize,
    rng: &mut SearchRng,
) -> Result<(), RepairFailed> {
    let dims = problem.dims;
    let m = &problem.matrices;
    let mut iterations = 0;
    while !unscheduled.is_empty() {
        if iterations >= cap {
            return Err(RepairFailed);
        }
        iterations += 1;
        let course = unscheduled.swap_remove(rng.gen_range(0..unscheduled.len()));

        let free = feasible_slots(tt, problem, course);
        if let Some(&slot) = free.choose(rng) {
            tt.place(problem, course, slot)
                .expect("free slot checked feasible");
            continue;
        }

        let mut evictable = Vec::new();
        for period in 0..dims.periods() {
            if m.unavailable(course, period) {
                continue;
            }
            let mut clash = None;
            let mut clashes = 0;
            for room in 0..dims.rooms {
                let slot = dims.slot(room, period);
                if let Some(other) = tt.course_at(slot) {
                    if other == course || m.conflicts(course, other) {
                        clashes += 1;
                        clash = Some((slot, other));
                    }
                }
            }
            match (clashes, clash) {
                (0, _) => evictable.extend(
                    (0..dims.rooms)
                        .map(|r| dims.slot(r, period))
                        .filter(|&s| tt.course_at(s).is_some() && m.slot_available(course, s)),
                ),
                (1, Some((slot, other))) if other != course && m.slot_available(course, slot) => {
                    evictable.push(slot)
                }
                _ => {}
            }
        }
        match evictable.choose(rng) {
            Some(&slot) => {
                let evicted = tt.remove(problem, slot).expect("evicting an occupied slot");
                tt.place(problem, course, slot)
                    .expect("eviction frees the slot");
                unscheduled.push(evicted);
            }
            None => unscheduled.push(course),
        }
    }
    Ok(())
}

/// Improvises a complete feasible timetable, or reports that repair failed.
pub fn improvise(
    hm: &HarmonyMemory,
    problem: &Problem,
    params: &HsaParams,
    rng: &mut SearchRng,
) -> Result<Timetable, RepairFailed> {
    let mut tt = Timetable::new(problem);
    let mut remaining: Vec<usize> = (0..problem.num_courses())
        .map(|c| problem.lectures(c))
        .collect();
    let mut from_memory: Vec<(usize, CourseId)> = Vec::new();

    for slot in 0..problem.dims.slots() {
        if rng.gen::<f64>() >= params.hmcr {
            continue;
        }
        let v = memory_consideration(hm, slot, problem, rng);
        if v == EMPTY {
            continue;
        }
        let course = v as CourseId;
        if remaining[course] > 0 && tt.is_feasible_placement(problem, course, slot) {
            tt.place_unchecked(problem, course, slot);
            remaining[course] -= 1;
            from_memory.push((slot, course));
        }
    }

    let mut pool: Vec<CourseId> = remaining
        .iter()
        .enumerate()
        .flat_map(|(c, &n)| std::iter::repeat_n(c, n))
        .collect();
    pool.shuffle(rng);
    let mut unscheduled = Vec::new();
    for course in pool {
        let slots = feasible_slots(&tt, problem, course);
        match slots.choose(rng) {
            Some(&slot) => tt.place_unchecked(problem, course, slot),
            None => unscheduled.push(course),
        }
    }
    if !unscheduled.is_empty() {
        let cap = params.repair_cap_for(problem.total_lectures());
        repair(&mut tt, &mut unscheduled, problem, cap, rng)?;
    }

    for (slot, course) in from_memory {
        let u: f64 = rng.gen();
        if tt.course_at(slot) == Some(course) {
            apply_pitch(
                &mut tt,
                problem,
                slot,
                select_pitch_procedure(u, params.par),
                rng,
            );
        }
    }
    Ok(tt)
}
